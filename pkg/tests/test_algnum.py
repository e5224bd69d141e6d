"""Exact factorization, surds, and multiquadratic field identification."""

import random
from fractions import Fraction
from math import gcd, lcm

import pytest
import sympy

from qstar.algnum import (
    IntPolynomial,
    MultiQuadElement,
    QuadraticSurd,
    discriminant,
    factor_rational,
    field_label,
    identify_multiquadratic,
    is_probable_prime,
    poly_str,
    quadratic_surd_roots,
    squarefree_kernel,
    v4_quartic_subfields,
)
from qstar.errors import FactorizationError, InputError

F = Fraction
P = IntPolynomial


def minpoly_of(element):
    """Minimal polynomial of a multiquadratic element with distinct conjugates.

    Expands the full conjugate product exactly, so it doubles as an
    independent check of the algebra itself.
    """
    gens = element.generators
    poly = [MultiQuadElement.rational(1, gens)]
    for sigma in range(1 << element.k):
        conj = element.conjugate(sigma)
        new = [MultiQuadElement.rational(0, gens) for _ in range(len(poly) + 1)]
        for i, c in enumerate(poly):
            new[i + 1] = new[i + 1] + c
            new[i] = new[i] - c * conj
        poly = new
    coeffs = [c.rational_value() for c in poly]
    den = lcm(*[c.denominator for c in coeffs])
    return P(tuple(int(c * den) for c in coeffs))


def radical_span(gens):
    """The set of squarefree kernels generated by a radicand list under products."""
    span = {1}
    for g in gens:
        d = squarefree_kernel(g)[0]
        span |= {squarefree_kernel(d * s)[0] for s in span}
    return frozenset(span)


# --- integer utilities -------------------------------------------------------


def test_squarefree_kernel_anchors():
    assert squarefree_kernel(12) == (3, 2)
    assert squarefree_kernel(-720) == (-5, 12)
    assert squarefree_kernel(1) == (1, 1)
    assert squarefree_kernel(-1) == (-1, 1)
    with pytest.raises(InputError):
        squarefree_kernel(0)


def test_squarefree_kernel_random():
    rng = random.Random(414243)
    for _ in range(200):
        n = rng.randint(1, 10**9) * rng.choice([1, -1])
        d, e = squarefree_kernel(n)
        assert d * e * e == n
        assert all(d % (p * p) for p in range(2, 200))


def test_squarefree_kernel_perfect_square_shortcut():
    # huge square cofactor resolves without any factoring
    big = (2**127 - 1) * (2**89 - 1)
    d, e = squarefree_kernel(3 * big * big, budget=10)
    assert (d, e) == (3, big)


def test_squarefree_kernel_budget_exhaustion():
    semiprime = (2**127 - 1) * (2**89 - 1)
    with pytest.raises(FactorizationError):
        squarefree_kernel(semiprime, budget=100)


def test_probable_prime_vs_oracle():
    rng = random.Random(515253)
    for _ in range(300):
        n = rng.randint(2, 10**12)
        assert is_probable_prime(n) == sympy.isprime(n)
    assert is_probable_prime(2**127 - 1)
    assert not is_probable_prime(2**128 - 1)


# --- IntPolynomial basics ----------------------------------------------------


def test_polynomial_construction():
    p = P((1, 0, 3))
    assert p.degree == 2 and p.leading == 3
    assert p(2) == 13
    assert P((5, 4, 0, 0)).coeffs == (5, 4)  # trailing zeros trimmed
    with pytest.raises(InputError):
        P((0, 0))


def test_poly_str():
    assert poly_str(P((1, -6, 0, 1))) == "x^3 - 6*x + 1"
    assert poly_str(P((-2, 1)), "z") == "z - 2"
    assert poly_str(P((7,))) == "7"


def test_discriminant_anchors():
    assert discriminant(P((3, 5, 1))) == 25 - 12
    assert discriminant(P((7, 2, 0, 1))) == -4 * 2**3 - 27 * 49
    assert discriminant(P((1, -2, 1))) == 0
    assert discriminant(P((4, 3))) == 1


def test_discriminant_vs_oracle():
    rng = random.Random(616263)
    x = sympy.symbols("x")
    for _ in range(30):
        deg = rng.randint(2, 6)
        coeffs = [rng.randint(-9, 9) for _ in range(deg)] + [rng.randint(1, 5)]
        p = P(tuple(coeffs))
        expected = sympy.discriminant(sympy.Poly(list(reversed(p.coeffs)), x))
        assert discriminant(p) == int(expected)


# --- factorization -----------------------------------------------------------


def test_factor_quadratic_square():
    fs = factor_rational(P((1073741824, 65536, 1)))
    assert fs == [(P((32768, 1)), 2)]


def test_factor_x4_minus_1():
    fs = factor_rational(P((-1, 0, 0, 0, 1)))
    assert fs == [(P((-1, 1)), 1), (P((1, 1)), 1), (P((1, 0, 1)), 1)]


def test_factor_irreducible_huge_quadratic():
    fs = factor_rational(P((-134217728000, 117964800, 1)))
    assert len(fs) == 1 and fs[0][0].degree == 2 and fs[0][1] == 1


def test_factor_strips_content_and_x_powers():
    fs = factor_rational(P((0, 0, -6, 0, 6)))  # 6x^2(x^2 - 1)
    assert fs == [(P((-1, 1)), 1), (P((0, 1)), 2), (P((1, 1)), 1)]


def test_factor_roundtrip_random():
    rng = random.Random(717273)
    x = sympy.symbols("x")
    for _ in range(60):
        f = [rng.randint(1, 3)]
        total = 0
        for _ in range(rng.randint(1, 3)):
            d = rng.randint(1, 4)
            if total + d > 12:
                break
            c = [rng.randint(-9, 9) for _ in range(d)] + [rng.choice([1, 1, 2, -1])]
            if all(v == 0 for v in c[:-1]):
                c[0] = rng.randint(1, 5)
            g = list(P(tuple(c)).coeffs)
            acc = [0] * (len(f) + len(g) - 1)
            for i, u in enumerate(f):
                for j, v in enumerate(g):
                    acc[i + j] += u * v
            f = acc
            total += d
        p = P(tuple(f))
        if p.degree < 1:
            continue
        mine = sorted((g.coeffs, m) for g, m in factor_rational(p))
        theirs = []
        for fac, m in sympy.factor_list(sympy.Poly(list(reversed(p.coeffs)), x))[1]:
            co = [int(v) for v in reversed(sympy.Poly(fac, x).all_coeffs())]
            if len(co) == 1:
                continue
            if co[-1] < 0:
                co = [-v for v in co]
            theirs.append((tuple(co), int(m)))
        assert mine == sorted(theirs)


def test_factor_deterministic_order():
    p = P((-1, 0, 0, 0, 1)) * P((1, 1, 1, 1, 1, 1, 1))
    first = factor_rational(p)
    second = factor_rational(p)
    assert first == second
    degrees = [g.degree for g, _ in first]
    assert degrees == sorted(degrees)


def test_factor_rejects_constant():
    with pytest.raises(InputError):
        factor_rational(P((3,)))


# --- quadratic surds ---------------------------------------------------------


def test_surd_validation():
    with pytest.raises(InputError):
        QuadraticSurd(F(1), F(1), 1)
    with pytest.raises(InputError):
        QuadraticSurd(F(1), F(1), 12)
    with pytest.raises(InputError):
        QuadraticSurd(F(1), F(0), 5)


def test_surd_roots_sqrt2():
    r1, r2 = quadratic_surd_roots(P((-2, 0, 1)))
    assert (r1.a, r1.b, r1.d) == (0, 1, 2)
    assert (r2.a, r2.b, r2.d) == (0, -1, 2)
    assert str(r1) == "0 + 1*sqrt(2)"


def test_surd_roots_huge_class_polynomial_root():
    r1, _ = quadratic_surd_roots(P((-134217728000, 117964800, 1)))
    assert (r1.a, r1.b, r1.d) == (-58982400, 26378240, 5)


def test_surd_roots_reject_square_discriminant():
    with pytest.raises(InputError):
        quadratic_surd_roots(P((-4, 0, 1)))


def test_surd_roots_satisfy_polynomial():
    rng = random.Random(818283)
    for _ in range(40):
        a, b, c = rng.randint(1, 9), rng.randint(-9, 9), rng.randint(-9, 9)
        q = P((c, b, a))
        try:
            r1, r2 = quadratic_surd_roots(q)
        except InputError:
            continue
        for r in (r1, r2):
            # a*r^2 + b*r + c == 0 split into rational and sqrt(d) parts
            rat = a * (r.a * r.a + r.b * r.b * r.d) + b * r.a + c
            irr = 2 * a * r.a * r.b + b * r.b
            assert rat == 0 and irr == 0


# --- the multiquadratic algebra ----------------------------------------------


def test_element_validation():
    with pytest.raises(InputError):
        MultiQuadElement((2, 3, 6), (F(0),) * 8)  # dependent: 2*3*6 is a square
    with pytest.raises(InputError):
        MultiQuadElement((4,), (F(0), F(1)))
    with pytest.raises(InputError):
        MultiQuadElement((2,), (F(0),))


def test_element_arithmetic_matches_numerics():
    import mpmath

    rng = random.Random(919293)
    for _ in range(20):
        gens = (2, -3, 7)
        a = MultiQuadElement(gens, tuple(F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(8)))
        b = MultiQuadElement(gens, tuple(F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(8)))
        with mpmath.workprec(160):
            for expr, num in (
                (a * b, a.evaluate() * b.evaluate()),
                (a + b, a.evaluate() + b.evaluate()),
                (a - b, a.evaluate() - b.evaluate()),
            ):
                assert abs(expr.evaluate() - num) < 1e-25


def test_conjugation_is_multiplicative():
    gens = (2, 5, -7)
    rng = random.Random(101112)
    a = MultiQuadElement(gens, tuple(F(rng.randint(-5, 5)) for _ in range(8)))
    b = MultiQuadElement(gens, tuple(F(rng.randint(-5, 5)) for _ in range(8)))
    for mask in range(8):
        assert (a * b).conjugate(mask) == a.conjugate(mask) * b.conjugate(mask)


def test_element_str_and_label():
    e = MultiQuadElement((2, 3), (F(1, 2), F(-1), F(0), F(3)))
    assert str(e) == "1/2 - sqrt(2) + 3*sqrt(6)"
    assert field_label((2, 3)) == "Q(sqrt(2),sqrt(3))"
    assert field_label(()) == "Q"


# --- identification ----------------------------------------------------------


def test_identify_sqrt2_plus_sqrt3():
    theta = identify_multiquadratic(P((1, 0, -10, 0, 1)))
    assert theta.generators == (2, 3)
    assert theta.coords == (F(0), F(1), F(1), F(0))


def test_identify_canonical_under_root_choice():
    # -sqrt(2)-sqrt(3) has the same minimal polynomial; answer is canonical
    theta = identify_multiquadratic(P((1, 0, -10, 0, 1)))
    again = identify_multiquadratic(P((1, 0, -10, 0, 1)))
    assert theta == again
    assert theta.coords[1] > 0


def test_identify_mixed_signature_quartic():
    # minimal polynomial of sqrt(17) + sqrt(-95)
    theta = identify_multiquadratic(P((12544, 0, 156, 0, 1)))
    assert theta.generators == (17, -95)
    assert theta.coords == (F(0), F(1), F(1), F(0))


def test_identify_degree2_delegates_to_surd():
    theta = identify_multiquadratic(P((-134217728000, 117964800, 1)))
    assert theta.generators == (5,)
    assert theta.coords == (F(-58982400), F(26378240))


def test_identify_non_monic_quartic():
    # (sqrt(2) + sqrt(3))/2 has minimal polynomial 16x^4 - 40x^2 + 1
    theta = identify_multiquadratic(P((1, 0, -40, 0, 16)))
    assert theta.generators == (2, 3)
    assert theta.coords == (F(0), F(1, 2), F(1, 2), F(0))


def test_identify_rejects_non_multiquadratic():
    assert identify_multiquadratic(P((1, 1, 1, 1, 1))) is None  # cyclic quartic
    assert identify_multiquadratic(P((-2, 0, 0, 0, 1))) is None  # dihedral
    assert identify_multiquadratic(P((-2,) + (0,) * 7 + (1,))) is None
    with pytest.raises(InputError):
        identify_multiquadratic(P((1, 1, 1, 1, 1, 1, 1)))  # degree 6


def test_identify_degree8_sum():
    g = minpoly_of(MultiQuadElement((2, 3, 5), (F(0), F(1), F(1), F(0), F(1), F(0), F(0), F(0))))
    assert g.coeffs == (576, 0, -960, 0, 352, 0, -40, 0, 1)
    theta = identify_multiquadratic(g)
    assert theta.generators == (2, 3, 5)
    assert [m for m, c in enumerate(theta.coords) if c] == [1, 2, 4]


def test_identify_degree16_sum():
    coords = [F(0)] * 16
    for i in range(4):
        coords[1 << i] = F(1)
    g = minpoly_of(MultiQuadElement((3, 5, 7, 11), tuple(coords)))
    theta = identify_multiquadratic(g)
    assert theta.generators == (3, 5, 7, 11)
    assert theta.coords == tuple(coords)


def test_identify_roundtrip_random():
    rng = random.Random(131415)
    pool = [-1, 2, -2, 3, 5, -7, 13, -11, 17]
    for _ in range(15):
        k = rng.randint(2, 3)
        gens = tuple(rng.sample(pool, k))
        try:
            element = MultiQuadElement(
                gens,
                tuple(F(rng.randint(-6, 6), rng.choice([1, 1, 2])) for _ in range(1 << k)),
            )
        except InputError:
            continue
        # need all conjugates distinct for the product to be the minimal polynomial
        conjs = {element.conjugate(m).coords for m in range(1 << k)}
        if len(conjs) != 1 << k:
            continue
        g = minpoly_of(element)
        theta = identify_multiquadratic(g)
        assert theta is not None
        # distinct conjugates mean the element generates the whole field
        assert radical_span(theta.generators) == radical_span(gens)
        # same element up to conjugacy: its minimal polynomial must match
        assert minpoly_of(theta).coeffs == g.coeffs


def test_identify_huge_coordinates():
    element = MultiQuadElement(
        (5, 13),
        (F(-140608000), F(123456789, 2), F(-987654321, 2), F(55555555)),
    )
    g = minpoly_of(element)
    theta = identify_multiquadratic(g)
    assert theta is not None
    assert theta.generators == (5, 13)
    assert minpoly_of(theta).coeffs == g.coeffs


# --- Klein-four quartic subfields ---------------------------------------------


def test_v4_anchor_pairs():
    assert v4_quartic_subfields(P((12544, 0, 156, 0, 1))) == (17, -95)
    assert v4_quartic_subfields(P((1, 0, -10, 0, 1))) == (2, 3)
    assert v4_quartic_subfields(P((1, 0, -40, 0, 16))) == (2, 3)


def test_v4_rejects_other_groups():
    assert v4_quartic_subfields(P((1, 1, 0, 0, 1))) is None  # S4
    assert v4_quartic_subfields(P((1, 1, 1, 1, 1))) is None  # C4
    assert v4_quartic_subfields(P((-2, 0, 0, 0, 1))) is None  # D4
    with pytest.raises(InputError):
        v4_quartic_subfields(P((1, 1, 1)))


def test_v4_agrees_with_identification():
    rng = random.Random(161718)
    pool = [2, 3, 5, -7, 13, -11, 17, -95, 21]
    for _ in range(12):
        gens = tuple(rng.sample(pool, 2))
        try:
            element = MultiQuadElement(
                gens, tuple(F(rng.randint(-4, 4)) for _ in range(4))
            )
        except InputError:
            continue
        if len({element.conjugate(m).coords for m in range(4)}) != 4:
            continue
        g = minpoly_of(element)
        pair = v4_quartic_subfields(g)
        assert pair is not None
        assert radical_span(pair) == radical_span(gens)
        theta = identify_multiquadratic(g)
        assert theta is not None and radical_span(theta.generators) == radical_span(gens)
