from collections import Counter
from fractions import Fraction
from math import gcd

import pytest

from qstar.algnum import IntPolynomial
from qstar.cm import (
    ClassPolynomial,
    QuadForm,
    class_number,
    class_polynomial,
    genus_character_vector,
    identify_cm,
    one_class_per_genus,
    reduced_forms,
)
from qstar.errors import InputError


def valid_discriminants(lo: int, hi: int = 3):
    """Negative discriminants from -lo up to -hi (0 or 1 mod 4)."""
    for absd in range(hi, lo + 1):
        if -absd % 4 in (0, 1):
            yield -absd


# -- reduced forms ------------------------------------------------------


def test_reduced_forms_examples():
    assert [(f.a, f.b, f.c) for f in reduced_forms(-67)] == [(1, 1, 17)]
    assert [(f.a, f.b, f.c) for f in reduced_forms(-35)] == [(1, 1, 9), (3, 1, 3)]
    assert [(f.a, f.b, f.c) for f in reduced_forms(-3)] == [(1, 1, 1)]


def test_class_number_known_values():
    known = {
        -3: 1, -4: 1, -7: 1, -8: 1, -11: 1, -12: 1, -16: 1, -19: 1,
        -20: 2, -23: 3, -27: 1, -28: 1, -32: 2, -35: 2, -43: 1,
        -47: 5, -67: 1, -71: 7, -83: 3, -99: 2, -148: 2, -163: 1,
        -332: 9, -372: 4, -5460: 16,
    }
    for D, h in known.items():
        assert class_number(D) == h, D


def test_reduced_forms_rejects_invalid_discriminant():
    for D in (5, 0, -1, -2, -6):
        with pytest.raises(InputError):
            reduced_forms(D)


def test_quadform_validation():
    QuadForm(2, -1, 3)  # interior form: negative b allowed
    with pytest.raises(InputError):
        QuadForm(-1, 0, 1)  # not positive definite
    with pytest.raises(InputError):
        QuadForm(1, 3, 1)  # discriminant 5 >= 0
    with pytest.raises(InputError):
        QuadForm(2, 2, 2)  # imprimitive
    with pytest.raises(InputError):
        QuadForm(1, -1, 1)  # boundary |b| = a needs b >= 0
    with pytest.raises(InputError):
        QuadForm(2, -1, 2)  # boundary a = c needs b >= 0
    with pytest.raises(InputError):
        QuadForm(3, 4, 5)  # |b| > a


def brute_forms(D):
    """Independent enumeration: b outer, then a | (b*b - D)/4 with bounds."""
    out = set()
    for b in range(-isqrt_upper(D), isqrt_upper(D) + 1):
        if (b - D) % 2:
            continue
        num = b * b - D
        if num % 4:
            continue
        prod = num // 4  # a * c
        for a in range(max(1, abs(b)), prod + 1):
            if a * a > prod:
                break
            if prod % a:
                continue
            c = prod // a
            if abs(b) > a or c < a:
                continue
            if b < 0 and (abs(b) == a or a == c):
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            out.add((a, b, c))
    return out


def isqrt_upper(D):
    from math import isqrt

    return isqrt(-D) + 1


def test_reduced_forms_match_independent_rescan():
    for D in valid_discriminants(300):
        got = [(f.a, f.b, f.c) for f in reduced_forms(D)]
        assert sorted(got) == got  # deterministic order
        assert len(set(got)) == len(got)
        assert set(got) == brute_forms(D), D
        for f in reduced_forms(D):
            assert f.discriminant == D


# -- genus characters ---------------------------------------------------


def test_principal_form_characters_trivial():
    for D in valid_discriminants(400):
        principal = reduced_forms(D)[0]
        assert principal.a == 1
        assert all(v == 1 for v in genus_character_vector(principal)), D


def test_genus_fibers_have_equal_size():
    # every genus is a coset of the principal genus, hence the same size
    for D in valid_discriminants(400):
        counts = Counter(
            genus_character_vector(f) for f in reduced_forms(D)
        ).values()
        assert len(set(counts)) == 1, D


def test_one_class_per_genus_examples():
    assert one_class_per_genus(-5460) is True
    assert one_class_per_genus(-3) is True
    assert one_class_per_genus(-23) is False


def test_one_class_per_genus_matches_ambiguous_form_oracle():
    # exponent <= 2 iff every class is its own inverse, and a reduced form
    # is its class inverse exactly when b = 0, b = a, or a = c
    for D in valid_discriminants(2000):
        by_ambiguous = all(
            f.b == 0 or f.b == f.a or f.a == f.c for f in reduced_forms(D)
        )
        assert one_class_per_genus(D) == by_ambiguous, D


# every CM discriminant reported by the bundled result tables (one cell
# normalized in data/cm_tables.json: a printed -332 with h = 9 cannot match
# its degree-4 field, the intended order is -372)
TABLE_DISCRIMINANTS = (
    -3, -4, -7, -8, -11, -12, -15, -16, -19, -20, -24, -27, -28, -35, -36,
    -40, -43, -48, -51, -52, -60, -67, -72, -75, -84, -88, -91, -99, -100,
    -112, -115, -120, -123, -132, -147, -148, -163, -168, -180, -195, -228,
    -232, -235, -240, -267, -280, -332, -340, -372, -420, -435, -483, -520,
    -532, -595, -627, -660, -708, -1155, -1320, -1380, -1435, -1540, -1848,
    -1995, -5460,
)


def test_tabulated_discriminants_have_one_class_per_genus():
    for D in TABLE_DISCRIMINANTS:
        if D == -332:  # the normalized cell; kept to pin its class number
            assert class_number(D) == 9
            assert not one_class_per_genus(D)
            continue
        assert one_class_per_genus(D), D


# -- class polynomials --------------------------------------------------

# j-invariants of the thirteen one-class discriminants
SINGLETON_J = {
    -3: 0,
    -4: 12**3,
    -7: -(15**3),
    -8: 20**3,
    -11: -(32**3),
    -12: 2 * 30**3,
    -16: 66**3,
    -19: -(96**3),
    -27: -3 * 160**3,
    -28: 255**3,
    -43: -(960**3),
    -67: -(5280**3),
    -163: -(640320**3),
}


def test_class_polynomial_linear_values():
    for D, j in SINGLETON_J.items():
        cp = class_polynomial(D)
        assert isinstance(cp, ClassPolynomial)
        assert cp.certified and cp.discriminant == D
        assert cp.poly == IntPolynomial((-j, 1)), D


def surd_quadratic(d, scalar, base, unit=None):
    """x**2 - tr*x + nm for j = scalar * (u + v sqrt(d))**3 * unit."""

    def mul(p, q):
        return (p[0] * q[0] + p[1] * q[1] * d, p[0] * q[1] + p[1] * q[0])

    b = tuple(map(Fraction, base))
    cube = mul(mul(b, b), b)
    if unit is not None:
        cube = mul(cube, tuple(map(Fraction, unit)))
    u, v = (Fraction(scalar) * w for w in cube)
    tr, nm = 2 * u, u * u - d * v * v
    assert tr.denominator == 1 and nm.denominator == 1
    return IntPolynomial((int(nm), -int(tr), 1))


# class-number-two discriminants with their quadratic-surd j-invariants
QUADRATIC_J = [
    # (D, d, scalar, base, unit): j = scalar * (base . (1, sqrt d))**3 * unit
    (-15, 5, Fraction(-27, 8), (25, 9), (Fraction(-1, 2), Fraction(1, 2))),
    (-20, 5, 8, (25, 13), None),
    (-24, 2, 12**3, (9, 7), (-1, 1)),
    (-35, 5, -(16**3), (15, 7), None),
    (-40, 5, 6**3, (65, 27), None),
    (-51, 17, -(48**3), (37, 9), (-4, 1)),
    (-52, 13, 30**3, (31, 9), None),
    (-60, 5, 3**3, (470, 213), (Fraction(1, 2), Fraction(1, 2))),
    (-91, 13, 48**3, (-227, 63), None),
    (-100, 5, 6**3, (2927, 1323), None),
    (-115, 5, -(48**3), (785, 351), None),
    (-148, 37, 60**3, (2837, 468), None),
    (-232, 29, 30**3, (140989, 26163), None),
    (-235, 5, 528**3, (-8875, 3969), None),
]


def test_class_polynomial_quadratic_values():
    assert class_polynomial(-35).poly == IntPolynomial(
        (-134217728000, 117964800, 1)
    )
    for D, d, scalar, base, unit in QUADRATIC_J:
        assert class_polynomial(D).poly == surd_quadratic(
            d, scalar, base, unit
        ), D


def test_class_polynomial_cubic_value():
    assert class_polynomial(-23).poly == IntPolynomial(
        (12771880859375, -5151296875, 3491750, 1)
    )


def test_class_polynomial_shape():
    for D in (-39, -56, -120, -372):
        cp = class_polynomial(D)
        assert cp.poly.degree == class_number(D)
        assert cp.poly.is_monic()
        assert cp.certified


def test_class_polynomial_two_precision_identity():
    for D, scale in [(-71, 256), (-95, 300), (-120, 200), (-420, 400)]:
        assert class_polynomial(D, scale).poly == class_polynomial(D, 2 * scale).poly


def test_class_polynomial_rejects_invalid():
    for D in (4, 0, -2, -5):
        with pytest.raises(InputError):
            class_polynomial(D)


# -- CM identification --------------------------------------------------


def test_identify_cm_examples():
    assert identify_cm(IntPolynomial((884736000, 1))) == -43
    assert identify_cm(IntPolynomial((-54000, 1))) == -12
    assert identify_cm(IntPolynomial((-1, 1))) is None
    assert identify_cm(IntPolynomial((0, 1))) == -3
    assert identify_cm(IntPolynomial((-1728, 1))) == -4


def test_identify_cm_near_misses():
    assert identify_cm(IntPolynomial((884736001, 1))) is None
    assert identify_cm(IntPolynomial((0, -54000, 1))) is None  # x(x - 54000)
    assert identify_cm(IntPolynomial((-134217728000, 117964801, 1))) is None


def test_identify_cm_rejects_invalid():
    with pytest.raises(InputError):
        identify_cm(IntPolynomial((1, 2)))  # not monic
    with pytest.raises(InputError):
        identify_cm(IntPolynomial((7,)))  # degree 0
    with pytest.raises(InputError):
        identify_cm(IntPolynomial((0,) * 17 + (1,)))  # degree 17


def test_identify_cm_roundtrip():
    for D in valid_discriminants(600):
        if class_number(D) > 4:
            continue
        assert identify_cm(class_polynomial(D).poly) == D, D


# -- bundled CM table ----------------------------------------------------


def _cm_table_rows():
    from qstar.fixtures import load_cm_table

    for level, rows in sorted(load_cm_table().items()):
        yield from rows


def test_cm_table_covers_all_levels():
    from qstar.fixtures import fixture_levels, load_cm_table

    table = load_cm_table()
    assert sorted(table) == fixture_levels()
    assert sum(len(rows) for rows in table.values()) == 273


def test_cm_table_row_shapes():
    for r in _cm_table_rows():
        if r.cm:
            assert len(r.discriminants) == len(r.j_values) >= 1
            assert all(d < 0 and d % 4 in (0, 1) for d in r.discriminants)
        else:
            assert r.discriminants == ()
            assert len(r.j_values) == 1
        if r.as_printed:
            assert r.anomaly


def test_cm_table_one_infinity_row_per_level():
    from qstar.fixtures import load_cm_table

    for level, rows in load_cm_table().items():
        kinds = [r.point.kind for r in rows]
        assert kinds.count("infinity_minus") == 1
        assert "infinity_plus" not in kinds


def test_cm_table_single_as_printed_row():
    flagged = [r for r in _cm_table_rows() if r.as_printed]
    assert len(flagged) == 1
    (r,) = flagged
    assert (r.level, r.discriminants) == (93, (-3, -12))
    assert r.j_values == (Fraction(0), Fraction(-12288000))


def test_cm_table_level_67_values():
    from qstar.fixtures import cm_rows

    got = {}
    for r in cm_rows(67):
        key = "inf" if r.point.kind != "affine" else (r.point.x, r.point.y)
        got[key] = (r.discriminants[0], r.j_values[0])
    assert got["inf"] == (-11, -(32**3))
    assert got[(Fraction(-1), Fraction(7))] == (-28, 255**3)
    assert got[(Fraction(-1), Fraction(-7))] == (-67, -(5280**3))
    assert got[(Fraction(0), Fraction(3))] == (-27, -3 * 160**3)
    assert got[(Fraction(0), Fraction(-3))] == (-3, 0)
    assert got[(Fraction(1), Fraction(1))] == (-8, 20**3)
    assert got[(Fraction(1), Fraction(-1))] == (-7, -(15**3))
    assert got[(Fraction(2), Fraction(1))] == (-43, -(960**3))
    assert got[(Fraction(2), Fraction(-1))] == (-12, 2 * 30**3)


def test_cm_table_rational_j_matches_class_polynomial():
    seen: dict = {}
    for r in _cm_table_rows():
        if r.as_printed:
            continue
        for d, v in zip(r.discriminants, r.j_values):
            if isinstance(v, Fraction):
                seen.setdefault(d, set()).add(v)
    for d, vals in sorted(seen.items()):
        assert len(vals) == 1, d
        assert class_polynomial(d).poly(vals.pop()) == 0, d


def test_cm_table_surd_j_matches_class_polynomial():
    from qstar.algnum import QuadraticSurd

    seen: dict = {}
    for r in _cm_table_rows():
        for d, v in zip(r.discriminants, r.j_values):
            if isinstance(v, QuadraticSurd):
                seen.setdefault(d, set()).add((v.a, v.b, v.d))
    for d, vals in sorted(seen.items()):
        assert len(vals) == 1, d
        a, b, rad = vals.pop()
        # h(D) = 2 here, so H_D = (x - s)(x - conj s) exactly
        trace, norm = 2 * a, a * a - rad * b * b
        hd = class_polynomial(d).poly
        assert [Fraction(c) for c in hd.coeffs] == [norm, -trace, 1], d


def test_cm_table_field_cells_match_class_number():
    seen: dict = {}
    for r in _cm_table_rows():
        for d, v in zip(r.discriminants, r.j_values):
            if isinstance(v, tuple):
                seen.setdefault(d, set()).add(v)
    assert seen[-5460] == {(3, 5, 7, 13)}
    assert seen[-1435] == {(5, 41)}
    assert seen[-532] == {(7, 19)}
    for d, vals in sorted(seen.items()):
        assert len(vals) == 1, d
        gens = vals.pop()
        assert all(g > 1 for g in gens), d
        assert class_number(d) == 2 ** len(gens), d


def test_cm_table_discriminants_one_class_per_genus():
    ds = sorted({d for r in _cm_table_rows() for d in r.discriminants})
    assert len(ds) > 60
    for d in ds:
        assert one_class_per_genus(d), d


def test_cm_table_anomaly_flags():
    flagged = [r for r in _cm_table_rows() if r.anomaly]
    assert len(flagged) == 33
    by_level = Counter(r.level for r in flagged)
    # the re-keyed level carries a note on every shifted row
    assert by_level[170] == 10
    assert by_level[67] == 1 and by_level[390] == 1
