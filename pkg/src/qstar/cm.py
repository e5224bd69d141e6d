"""Binary quadratic forms, genus theory, class polynomials, CM detection.

Implements classical reduction theory for negative discriminants (including
non-fundamental ones), the exponent-two test via genus characters, certified
evaluation of the class polynomial H_D through fixed-point complex arithmetic
with explicit error bounds, and the inverse lookup from a candidate minimal
polynomial of a j-invariant back to its CM discriminant.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from .arith import FixedComplex, FixedReal, exp_complex, pi, sqrt_fixed
from .errors import InputError, PrecisionCapError, PrecisionError
from .algnum import IntPolynomial
from .series import j_expansion

_log = logging.getLogger(__name__)

__all__ = [
    "QuadForm",
    "ClassPolynomial",
    "reduced_forms",
    "class_number",
    "one_class_per_genus",
    "genus_character_vector",
    "class_polynomial",
    "identify_cm",
]

_DEFAULT_PRECISION_CAP = 1 << 22


def _precision_cap() -> int:
    raw = os.environ.get("QSTAR_PRECISION_CAP")
    return int(raw) if raw else _DEFAULT_PRECISION_CAP


# ---------------------------------------------------------------------------
# reduced forms


@dataclass(frozen=True)
class QuadForm:
    """A reduced primitive positive-definite binary quadratic form."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0:
            raise InputError("form must be positive definite (a > 0)")
        if self.discriminant >= 0:
            raise InputError("form discriminant must be negative")
        if gcd(gcd(self.a, self.b), self.c) != 1:
            raise InputError("form must be primitive")
        if not (abs(self.b) <= self.a <= self.c):
            raise InputError("form is not reduced")
        if self.b < 0 and (abs(self.b) == self.a or self.a == self.c):
            raise InputError("boundary form must take b >= 0")

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


def _validate_discriminant(D: int):
    if D >= 0:
        raise InputError("discriminant must be negative")
    if D % 4 not in (0, 1):
        raise InputError("discriminant must be 0 or 1 mod 4")


@lru_cache(maxsize=None)
def _reduced_forms(D: int) -> tuple:
    _validate_discriminant(D)
    out = []
    amax = isqrt(-D // 3)
    for a in range(1, amax + 1):
        for b in range(-a, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and (b == -a or a == c):
                continue  # boundary forms are normalized to b >= 0
            if gcd(gcd(a, b), c) != 1:
                continue
            out.append(QuadForm(a, b, c))
    out.sort(key=lambda f: (f.a, f.b, f.c))
    return tuple(out)


def reduced_forms(D: int) -> list:
    """All reduced primitive forms of discriminant D; the count is h(D)."""
    return list(_reduced_forms(D))


def class_number(D: int) -> int:
    return len(_reduced_forms(D))


# ---------------------------------------------------------------------------
# genus characters


def _legendre(r: int, p: int) -> int:
    v = pow(r % p, (p - 1) // 2, p)
    return 1 if v == 1 else -1


def _delta(r: int) -> int:
    return -1 if (r - 1) // 2 % 2 else 1


def _epsilon(r: int) -> int:
    return -1 if (r * r - 1) // 8 % 2 else 1


def _odd_prime_divisors(n: int) -> list:
    out = []
    n = abs(n)
    while n % 2 == 0:
        n //= 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 2
    if n > 1:
        out.append(n)
    return out


def _assigned_characters(D: int) -> list:
    """Character evaluators assigned to discriminant D, in canonical order."""
    chars = [(lambda r, p=p: _legendre(r, p)) for p in _odd_prime_divisors(D)]
    if D % 4 == 0:
        n = -D // 4
        if n % 4 == 1 or n % 8 == 4:
            chars.append(_delta)
        elif n % 8 == 2:
            chars.append(lambda r: _delta(r) * _epsilon(r))
        elif n % 8 == 6:
            chars.append(_epsilon)
        elif n % 8 == 0:
            chars.append(_delta)
            chars.append(_epsilon)
        # n % 4 == 3: the odd-prime characters already separate the genera
    return chars


def _represented_coprime(form: QuadForm, D: int) -> int:
    """A value of the form coprime to 2D, built by CRT over the primes of 2D.

    Per prime p one of (1,0), (0,1), (1,1) evaluates to a unit mod p: a and c
    cannot both vanish at an odd p | D (that would force p | b, contradicting
    primitivity), and when both are even, b is odd so a+b+c is a unit mod 2.
    """
    primes = [2] + _odd_prime_divisors(D)
    x, y, mod = 0, 0, 1
    for p in primes:
        if form.a % p:
            xr, yr = 1, 0
        elif form.c % p:
            xr, yr = 0, 1
        else:
            xr, yr = 1, 1
        inv = pow(mod, -1, p)
        x += mod * ((xr - x) * inv % p)
        y += mod * ((yr - y) * inv % p)
        mod *= p
    r = form.a * x * x + form.b * x * y + form.c * y * y
    assert gcd(r, 2 * D) == 1
    return r


def genus_character_vector(form: QuadForm) -> tuple:
    """The form's values under the assigned characters of its discriminant."""
    D = form.discriminant
    r = _represented_coprime(form, D)
    return tuple(chi(r) for chi in _assigned_characters(D))


def one_class_per_genus(D: int) -> bool:
    """True iff the form class group of D has exponent <= 2.

    Each genus is a coset of the principal genus, so classes land in the same
    genus exactly when their assigned character vectors agree; the vectors are
    pairwise distinct precisely when every genus holds one class.
    """
    forms = _reduced_forms(D)
    vectors = {genus_character_vector(f) for f in forms}
    return len(vectors) == len(forms)


# ---------------------------------------------------------------------------
# class polynomials


@dataclass(frozen=True)
class ClassPolynomial:
    discriminant: int
    poly: IntPolynomial
    certified: bool


def _truncation_length(scale: int, qbits: int) -> int:
    """Terms of the j-series needed so the dropped tail is below one ulp.

    Uses |q| <= 2**-qbits and the coefficient bound c_n <= e^{4 pi sqrt n}
    <= 2**(19 isqrt(n) + 19); the dropped tail is then geometric with ratio
    <= 2**-4, so requiring the first dropped term below 2**-(scale+3) leaves
    the whole tail under 2**-scale.
    """
    T = max(32, (scale + 80) // qbits)
    while 19 * isqrt(T + 1) + 19 + 4 - qbits * (T + 1) > -(scale + 3):
        T += max(1, T // 8)
    return T


def _j_at_form(form: QuadForm, D: int, scale: int, coeffs: list, qbits_min: int):
    """Certified fixed-point j((-b + i sqrt|D|)/(2a)) via the truncated series."""
    a, b = form.a, form.b
    # 2 pi i tau = -pi sqrt|D|/a + i * (-pi b / a)
    root = sqrt_fixed(FixedReal.from_int(-D, scale))
    p = pi(scale)
    re = (p * root).div_int(-a)
    im = p.mul_int(-b).div_int(a)
    z = FixedComplex(re, im)
    q = exp_complex(z)
    qinv = exp_complex(-z)
    # certified |q| < 2**-qbits from the computed value
    qbits = scale - max(q.re.abs_upper(), q.im.abs_upper()).bit_length() - 1
    if qbits < qbits_min:
        raise PrecisionCapError("q magnitude bound failed; scale too small")
    total = FixedComplex.from_int(coeffs[-1], scale)
    for c in reversed(coeffs[:-1]):
        total = total * q + FixedComplex.from_int(c, scale)
    total = total + qinv
    # account for the dropped series tail: below one ulp by construction
    return FixedComplex(
        FixedReal(total.re.man, scale, total.re.err + 1),
        FixedReal(total.im.man, scale, total.im.err + 1),
    )


def _poly_mul_linear(coeffs: list, root: FixedComplex, scale: int) -> list:
    """Multiply a fixed-point-coefficient polynomial by (x - root)."""
    zero = FixedComplex.from_int(0, scale)
    out = [zero] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i + 1] = out[i + 1] + c
        out[i] = out[i] - c * root
    return out


def _default_scale(D: int, h: int) -> int:
    return 128 + math.ceil(1.2 * math.pi * math.sqrt(-D) * h / math.log(2))


def class_polynomial(D: int, scale_bits: int = None) -> ClassPolynomial:
    """The monic integer polynomial whose roots are the j-invariants of D.

    Every coefficient is produced with a certified error bound below 1/2 and
    rounded to the unique integer inside the bound; on failure the working
    scale doubles, up to the hard cap (QSTAR_PRECISION_CAP overrides it).
    """
    forms = _reduced_forms(D)
    scale = scale_bits if scale_bits else _default_scale(D, len(forms))
    cap = _precision_cap()
    while True:
        try:
            return _class_polynomial_at(D, forms, scale)
        except (PrecisionError, OverflowError):
            scale *= 2
            if scale > cap:
                raise PrecisionCapError(
                    f"class polynomial for D={D} uncertified at the "
                    f"{cap}-bit precision cap"
                )


def _class_polynomial_at(D: int, forms: tuple, scale: int) -> ClassPolynomial:
    # the worst |q| over the forms governs how many series terms are needed;
    # Im tau >= sqrt(3)/2 gives the floor qbits >= pi*sqrt(3)/ln2 - 1 > 6
    amax = max(f.a for f in forms)
    qbits_min = max(6, int(math.pi * math.sqrt(-D) / (amax * math.log(2))) - 2)
    terms = _truncation_length(scale, qbits_min)
    series = j_expansion(_round_up(terms + 1, 256))
    coeffs = [int(series.coeff(n)) for n in range(0, terms + 1)]
    poly = [FixedComplex.from_int(1, scale)]
    for form in forms:
        jval = _j_at_form(form, D, scale, coeffs, qbits_min)
        poly = _poly_mul_linear(poly, jval, scale)
    out = []
    for coeff in poly:
        n = coeff.re.contains_integer()
        if n is None or coeff.im.contains_integer() != 0:
            raise PrecisionCapError("coefficient failed integer certification")
        out.append(n)
    assert out[-1] == 1
    return ClassPolynomial(D, IntPolynomial(tuple(out)), True)


def _round_up(n: int, unit: int) -> int:
    return ((n + unit - 1) // unit) * unit


@lru_cache(maxsize=256)
def _class_polynomial_default(D: int) -> ClassPolynomial:
    return class_polynomial(D)


# ---------------------------------------------------------------------------
# CM identification


def identify_cm(g: IntPolynomial):
    """The CM discriminant whose class polynomial equals g, or None.

    Scans candidate discriminants with matching class number inside a window
    sized from the largest-root estimate log|j| ~ pi sqrt|D| (widened by a
    factor of four), cheapest filters first; a candidate survives only by
    exact polynomial equality. One-class-per-genus candidates are tried
    first, then the rest.
    """
    if not 1 <= g.degree <= 16:
        raise InputError("CM lookup supports degree 1 through 16")
    if not g.is_monic():
        raise InputError("CM lookup needs a monic polynomial")
    deg = g.degree
    # Fujiwara upper bound on the largest root of a monic polynomial
    log_root = math.log(2) + max(
        math.log(abs(c)) / (deg - i) if c else 0.0
        for i, c in enumerate(g.coeffs[:-1])
    )
    window = int(4 * (max(log_root, 0.0) / math.pi) ** 2) + 64
    log_c0 = math.log(abs(g.coeffs[0])) if g.coeffs[0] else None
    candidates = []
    for absd in range(3, window + 1):
        if -absd % 4 not in (0, 1):
            continue
        forms = _reduced_forms(-absd)
        if len(forms) != deg:
            continue
        if not _constant_size_plausible(log_c0, -absd, forms):
            continue
        candidates.append((-absd, one_class_per_genus(-absd)))
    candidates.sort(key=lambda t: (not t[1], -t[0]))
    matches = [D for D, _ in candidates if _class_polynomial_default(D).poly == g]
    if not matches:
        return None
    if len(matches) > 1:
        _log.warning(
            "class polynomial matched several discriminants %s; keeping %d",
            matches,
            max(matches),
        )
    return max(matches)  # smallest |D| on (theoretically impossible) ties


def _constant_size_plausible(log_c0, D: int, forms: tuple) -> bool:
    """Cheap float screen: |H_D(0)| is about exp(pi sqrt|D| sum 1/a)."""
    if log_c0 is None:
        # constant term 0 means j = 0 is a root: only D = -3 qualifies
        return D == -3
    upper = sum(
        max(math.pi * math.sqrt(-D) / f.a, 6.7) + 2.0 for f in forms
    )
    lower = math.pi * math.sqrt(-D) - 40.0
    return lower <= log_c0 <= upper
