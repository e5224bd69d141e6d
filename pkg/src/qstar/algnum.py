"""Exact polynomial factorization over Q and number-field identification.

Splits integer polynomials (degree <= 16 in this application) into irreducible
factors, presents quadratic roots as exact surds a + b*sqrt(d), and recognizes
when the splitting field of a factor is multiquadratic Q(sqrt(d1),...,sqrt(dk)),
returning an exact element of that field whose conjugates are the roots.

Numeric steps (root finding, rational reconstruction) are heuristic helpers
only; every returned identification is certified by exact expansion inside the
multiquadratic algebra, so low precision can only miss an answer, never
produce a wrong one.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional

import mpmath

from .errors import FactorizationError, InputError

Rational = Fraction

__all__ = [
    "IntPolynomial",
    "QuadraticSurd",
    "MultiQuadElement",
    "factor_rational",
    "quadratic_surd_roots",
    "v4_quartic_subfields",
    "identify_multiquadratic",
    "discriminant",
    "squarefree_kernel",
    "is_probable_prime",
    "field_label",
    "poly_str",
]


# ---------------------------------------------------------------------------
# integer utilities: primality, factoring, squarefree kernels


def _small_primes(bound=100_000):
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return [i for i in range(bound + 1) if sieve[i]]


_SMALL_PRIMES: Optional[list] = None


def _primes():
    global _SMALL_PRIMES
    if _SMALL_PRIMES is None:
        _SMALL_PRIMES = _small_primes()
    return _SMALL_PRIMES


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, 64 seeded rounds above."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def witness(a):
        x = pow(a, d, n)
        if x in (1, n - 1):
            return False
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                return False
        return True

    if n < 3317044064679887385961981:
        bases = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    else:
        rng = random.Random(n & ((1 << 64) - 1))
        bases = tuple(rng.randrange(2, n - 1) for _ in range(64))
    return not any(witness(a) for a in bases)


def _brent_rho(n: int, budget: list) -> int:
    """A nontrivial factor of odd composite n; budget-limited iteration."""
    rng = random.Random(n % (1 << 62) ^ 0x9E3779B9)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                steps = min(m, r - k)
                budget[0] -= steps
                if budget[0] <= 0:
                    raise FactorizationError(
                        f"integer factoring budget exhausted on a "
                        f"{n.bit_length()}-bit cofactor"
                    )
                for _ in range(steps):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
                budget[0] -= 1
                if budget[0] <= 0:
                    raise FactorizationError("integer factoring budget exhausted")
        if g != n:
            return g


def _factor_into_primes(n: int, budget: list, out: dict):
    """Accumulate the prime factorization of n >= 1 into out (prime -> exp)."""
    if n == 1:
        return
    if is_probable_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = isqrt(n)
    if r * r == n:
        tmp: dict = {}
        _factor_into_primes(r, budget, tmp)
        for p, e in tmp.items():
            out[p] = out.get(p, 0) + 2 * e
        return
    d = _brent_rho(n, budget)
    _factor_into_primes(d, budget, out)
    _factor_into_primes(n // d, budget, out)


def squarefree_kernel(n: int, budget: int = 6_000_000) -> tuple:
    """Write n = d * e**2 with d squarefree; d carries the sign of n.

    Small primes are stripped by trial division; a remaining perfect-square
    cofactor needs no further factoring; anything else is factored with
    Pollard's rho under an iteration budget. Budget exhaustion raises
    FactorizationError rather than returning an uncertified kernel.
    """
    if n == 0:
        raise InputError("squarefree kernel of 0 is undefined")
    sign = -1 if n < 0 else 1
    n = abs(n)
    d, e = 1, 1
    for p in _primes():
        if p * p > n:
            break
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            if k % 2:
                d *= p
            e *= p ** (k // 2)
    if n > 1:
        if is_probable_prime(n):
            d *= n
        else:
            r = isqrt(n)
            if r * r == n:
                e *= r
            else:
                fac: dict = {}
                _factor_into_primes(n, [budget], fac)
                for p, k in fac.items():
                    if k % 2:
                        d *= p
                    e *= p ** (k // 2)
    return sign * d, e


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


# ---------------------------------------------------------------------------
# dense integer polynomial helpers (coefficient lists, constant term first)


def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _zadd(a, b):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _zneg(a):
    return [-x for x in a]


def _zmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _zscale(a, c):
    return _trim([x * c for x in a]) if c else []


def _zderiv(a):
    return _trim([i * a[i] for i in range(1, len(a))])


def _zeval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _content(a) -> int:
    g = 0
    for x in a:
        g = gcd(g, x)
    return g or 1


def _primitive(a):
    """(content carrying the leading sign, primitive positive-lead part)."""
    if not a:
        return 0, []
    g = _content(a)
    if a[-1] < 0:
        g = -g
    return g, [x // g for x in a]


def _qdiv_exact(a, b):
    """Exact quotient a / b of integer polynomials; raises if not exact."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(x) for x in a]
    q = [Fraction(0)] * (len(a) - len(b) + 1) if len(a) >= len(b) else []
    lead = Fraction(b[-1])
    while len(rem) >= len(b):
        sh = len(rem) - len(b)
        c = rem[-1] / lead
        q[sh] = c
        for i, x in enumerate(b):
            rem[sh + i] -= c * x
        del rem[-1]
        while rem and rem[-1] == 0:
            rem.pop()
    if any(rem):
        raise InputError("polynomial division was not exact")
    out = []
    for c in q:
        if c.denominator != 1:
            raise InputError("polynomial quotient not integral")
        out.append(c.numerator)
    return _trim(out)


def _pseudo_rem(a, b):
    """lc(b)^(deg a - deg b + 1) * a reduced mod b, over Z."""
    a = list(a)
    d = len(a) - len(b)
    lead = b[-1]
    for _ in range(d + 1):
        if len(a) < len(b):
            a = _zscale(a, lead)
            continue
        sh = len(a) - len(b)
        top = a[-1]
        a = _zscale(a, lead)
        for i, x in enumerate(b):
            a[sh + i] -= top * x
        del a[-1]
        _trim(a)
    return a


def _zgcd_poly(a, b):
    """Primitive gcd of integer polynomials (primitive PRS)."""
    _, a = _primitive(list(a))
    _, b = _primitive(list(b))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b)
        _, r = _primitive(r)
        a, b = b, r
    return a


# ---------------------------------------------------------------------------
# IntPolynomial


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial; coefficients constant-term first."""

    coeffs: tuple

    def __post_init__(self):
        c = _trim([int(x) for x in self.coeffs])
        if not c:
            raise InputError("the zero polynomial is not allowed here")
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_coeffs(cls, seq) -> "IntPolynomial":
        return cls(tuple(seq))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return self.leading == 1

    def __call__(self, x):
        return _zeval(self.coeffs, x)

    def primitive(self) -> tuple:
        c, p = _primitive(list(self.coeffs))
        return c, IntPolynomial(tuple(p))

    def __mul__(self, other):
        if isinstance(other, IntPolynomial):
            return IntPolynomial(tuple(_zmul(list(self.coeffs), list(other.coeffs))))
        return NotImplemented

    def __str__(self):
        return poly_str(self)


def poly_str(p: IntPolynomial, var: str = "x") -> str:
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        if i == 0:
            term = str(abs(c))
        else:
            xs = var if i == 1 else f"{var}^{i}"
            term = xs if abs(c) == 1 else f"{abs(c)}*{xs}"
        if not parts:
            parts.append(("-" if c < 0 else "") + term)
        else:
            parts.append(("- " if c < 0 else "+ ") + term)
    return " ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# resultant / discriminant (Bareiss fraction-free elimination)


def _bareiss_det(m):
    n = len(m)
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _resultant(a, b) -> int:
    n, m = len(a) - 1, len(b) - 1
    size = n + m
    if size <= 0:
        return 1
    rows = []
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        rows.append(row)
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(b)):
            row[i + j] = c
        rows.append(row)
    return _bareiss_det(rows)


def discriminant(p: IntPolynomial) -> int:
    """disc(p) = (-1)^(n(n-1)/2) Res(p, p') / lc(p), exact."""
    if p.degree < 1:
        raise InputError("discriminant needs degree >= 1")
    if p.degree == 1:
        return 1
    a = list(p.coeffs)
    res = _resultant(a, _zderiv(a))
    n = p.degree
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    q, r = divmod(sign * res, p.leading)
    assert r == 0
    return q


# ---------------------------------------------------------------------------
# polynomial arithmetic mod a prime p (lists of ints in [0, p))


def _pm_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pm_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pm_trim(out)


def _pm_divmod(a, b, p):
    a = a[:]
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        sh = len(a) - len(b)
        if c:
            q[sh] = c
            for i, x in enumerate(b):
                a[sh + i] = (a[sh + i] - c * x) % p
        del a[-1]
        _pm_trim(a)
    return q, a


def _pm_gcd(a, b, p):
    a, b = a[:], b[:]
    while b:
        _, r = _pm_divmod(a, b, p)
        a, b = b, r
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [x * inv % p for x in a]
    return a


def _pm_pow(base, e, mod, p):
    result = [1]
    base = _pm_divmod(base, mod, p)[1] if len(base) >= len(mod) else base[:]
    while e:
        if e & 1:
            result = _pm_divmod(_pm_mul(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = _pm_divmod(_pm_mul(base, base, p), mod, p)[1]
    return result


def _pm_sub(a, b, p):
    return _pm_trim([(x - y) % p for x, y in itertools.zip_longest(a, b, fillvalue=0)])


def _pm_xgcd(a, b, p):
    """(g monic, s, t) with s*a + t*b = g in F_p[x]."""
    r0, r1 = a[:], b[:]
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _pm_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _pm_sub(s0, _pm_mul(q, s1, p), p)
        t0, t1 = t1, _pm_sub(t0, _pm_mul(q, t1, p), p)
    inv = pow(r0[-1], p - 2, p)
    return (
        [x * inv % p for x in r0],
        [x * inv % p for x in s0],
        [x * inv % p for x in t0],
    )


def _equal_degree_split(f, d, p, rng):
    """Cantor-Zassenhaus: monic squarefree f mod p, all factors of degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    e = (p**d - 1) // 2
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        _pm_trim(a)
        if len(a) < 2:
            continue
        g = _pm_gcd(f, a, p)
        if 0 < len(g) - 1 < n:
            w = g
        else:
            b = _pm_pow(a, e, f, p)
            if not b:
                continue
            b = b[:]
            b[0] = (b[0] - 1) % p
            _pm_trim(b)
            if not b:
                continue
            w = _pm_gcd(f, b, p)
            if not (0 < len(w) - 1 < n):
                continue
        q, r = _pm_divmod(f, w, p)
        assert not r
        return _equal_degree_split(w, d, p, rng) + _equal_degree_split(q, d, p, rng)


def _factor_mod_p(f, p, rng):
    """Monic squarefree f mod p -> list of monic irreducible factors."""
    out = []
    h = [0, 1]  # x
    v = f[:]
    d = 0
    while len(v) - 1 > 2 * d:
        d += 1
        h = _pm_pow(h, p, v, p)
        hx = _pm_sub(h, [0, 1], p)
        g = _pm_gcd(v, hx, p) if hx else v[:]
        if len(g) > 1:
            out.extend(_equal_degree_split(g, d, p, rng))
            v, r = _pm_divmod(v, g, p)
            assert not r
            if len(v) > 1:
                h = _pm_divmod(h, v, p)[1]
    if len(v) > 1:
        out.append(v)
    return out


# ---------------------------------------------------------------------------
# Hensel lifting to a power of p


def _mod_poly(a, m):
    return _pm_trim([x % m for x in a])


def _centered(a, m):
    half = m // 2
    return _pm_trim([x - m if x > half else x for x in (y % m for y in a)])


def _mm_mul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % m
    return _pm_trim(out)


def _mm_sub(a, b, m):
    return _pm_trim([(x - y) % m for x, y in itertools.zip_longest(a, b, fillvalue=0)])


def _mm_add(a, b, m):
    return _pm_trim([(x + y) % m for x, y in itertools.zip_longest(a, b, fillvalue=0)])


def _mm_divmod_monic(a, b, m):
    assert b[-1] == 1
    a = [x % m for x in a]
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = a[-1] % m
        sh = len(a) - len(b)
        if c:
            q[sh] = c
            for i, x in enumerate(b):
                a[sh + i] = (a[sh + i] - c * x) % m
        del a[-1]
        _pm_trim(a)
    return _pm_trim(q), a


def _hensel_step(f, g, h, s, t, m):
    """One quadratic lift step: f = g*h and s*g + t*h = 1 from mod m to mod m^2."""
    m2 = m * m
    e = _mm_sub(_mod_poly(f, m2), _mm_mul(g, h, m2), m2)
    dg = _mm_divmod_monic(_mm_mul(t, e, m2), g, m2)[1]
    num = _mm_sub(e, _mm_mul(h, dg, m2), m2)
    dh, rem = _mm_divmod_monic(num, g, m2)
    assert not rem, "inexact Hensel quotient"
    g2 = _mm_add(g, dg, m2)
    h2 = _mm_add(h, dh, m2)
    b = _mm_sub(_mm_add(_mm_mul(s, g2, m2), _mm_mul(t, h2, m2), m2), [1], m2)
    sb = _mm_mul(s, b, m2)
    q, sb_mod = _mm_divmod_monic(sb, h2, m2)
    s2 = _mm_sub(s, sb_mod, m2)
    t2 = _mm_sub(_mm_sub(t, _mm_mul(t, b, m2), m2), _mm_mul(q, g2, m2), m2)
    return g2, h2, s2, t2


def _final_modulus(p, target):
    m = p
    while m < target:
        m *= m
    return m


def _hensel_pair(f, g, h, p, target):
    """Lift f = g*h from mod p to the final modulus >= target."""
    _, s, t = _pm_xgcd(g, h, p)
    m = p
    while m < target:
        g, h, s, t = _hensel_step(f, g, h, s, t, m)
        m *= m
    return g, h, m


def _hensel_tree(f, locals_, p, target):
    """Lift the full mod-p factor list of monic f to the final modulus."""
    if len(locals_) == 1:
        return [_mod_poly(f, _final_modulus(p, target))]
    half = len(locals_) // 2
    left, right = locals_[:half], locals_[half:]
    g0 = [1]
    for u in left:
        g0 = _pm_mul(g0, u, p)
    h0 = [1]
    for u in right:
        h0 = _pm_mul(h0, u, p)
    g, h, _ = _hensel_pair(f, g0, h0, p, target)
    return _hensel_tree(g, left, p, target) + _hensel_tree(h, right, p, target)


# ---------------------------------------------------------------------------
# Zassenhaus factorization over Z


def _mignotte_bound(f) -> int:
    n = len(f) - 1
    norm2 = isqrt(sum(c * c for c in f)) + 1
    return (1 << n) * norm2


def _choose_prime(f) -> int:
    """Smallest p > 16 with p not dividing lc and f squarefree mod p."""
    lead = f[-1]
    for p in _primes():
        if p <= 16 or lead % p == 0:
            continue
        fp = _mod_poly(f, p)
        deriv = _pm_trim([i * fp[i] % p for i in range(1, len(fp))])
        if not deriv:
            continue
        if len(_pm_gcd(fp, deriv, p)) == 1:
            return p
    raise FactorizationError("no usable prime below the sieve bound")  # pragma: no cover


def _monicize(f):
    """(monic F with F(y) = lc^(n-1) * f(y/lc), lc)."""
    lead = f[-1]
    n = len(f) - 1
    out = [c * lead ** (n - 1 - i) for i, c in enumerate(f[:-1])]
    out.append(1)
    return out, lead


def _demonicize(g, lead):
    """Undo y = lc*x on a monic factor; primitive positive-lead part."""
    out = [c * lead**i for i, c in enumerate(g)]
    _, prim = _primitive(out)
    return prim


def _factor_squarefree_monic(f) -> list:
    """Monic squarefree integer polynomial -> list of monic irreducible factors."""
    if len(f) - 1 <= 1:
        return [f]
    p = _choose_prime(f)
    rng = random.Random(p * 0x9E3779B9 ^ len(f))
    locals_ = sorted(_factor_mod_p(_mod_poly(f, p), p, rng))
    if len(locals_) == 1:
        return [f]
    bound = 2 * _mignotte_bound(f) + 1
    m = _final_modulus(p, bound)
    lifted = _hensel_tree(_mod_poly(f, m), locals_, p, bound)
    max_coeff = _mignotte_bound(f)
    out = []
    remaining = list(range(len(lifted)))
    current = f
    size = 1
    while 2 * size <= len(remaining):
        found = False
        for combo in itertools.combinations(remaining, size):
            cand = [1]
            for i in combo:
                cand = _mm_mul(cand, lifted[i], m)
            cand = _centered(cand, m)
            if not cand or cand[0] == 0 or current[0] % cand[0]:
                continue
            if any(abs(c) > max_coeff for c in cand):
                continue
            try:
                quo = _qdiv_exact(current, cand)
            except InputError:
                continue
            out.append(cand)
            current = quo
            remaining = [i for i in remaining if i not in combo]
            found = True
            break
        if not found:
            size += 1
    if len(current) > 1:
        out.append(current)
    return out


def _yun_squarefree(f) -> list:
    """[(primitive squarefree factor, multiplicity)] for primitive f."""
    fp = _zderiv(f)
    g = _zgcd_poly(f, fp)
    if len(g) <= 1:
        return [(f, 1)]
    out = []
    w = _qdiv_exact(f, g)
    y = _qdiv_exact(fp, g)
    i = 1
    while len(w) > 1:
        z = _zadd(y, _zneg(_zderiv(w)))
        h = _zgcd_poly(w, z) if z else w[:]
        if len(h) > 1:
            out.append((h, i))
        w = _qdiv_exact(w, h)
        if not z:
            break
        y = _qdiv_exact(z, h)
        i += 1
    return out


def factor_rational(p: IntPolynomial) -> list:
    """Irreducible factorization over Q: [(factor, multiplicity)], sorted.

    Factors are primitive with positive leading coefficient; their product
    with multiplicities equals p up to rational content. Deterministic order:
    by (degree, coefficient tuple).
    """
    if p.degree < 1:
        raise InputError("factorization needs degree >= 1")
    _, prim = p.primitive()
    work = list(prim.coeffs)
    result: dict = {}
    v = 0
    while work[0] == 0:  # strip powers of x up front
        work = work[1:]
        v += 1
    if v:
        result[(0, 1)] = v
    if len(work) > 1:
        for sq, mult in _yun_squarefree(work):
            if len(sq) == 2:
                _, lin = _primitive(sq)
                key = tuple(lin)
                result[key] = result.get(key, 0) + mult
                continue
            monic, lead = _monicize(sq)
            for g in _factor_squarefree_monic(monic):
                key = tuple(_demonicize(g, lead))
                result[key] = result.get(key, 0) + mult
    items = [(IntPolynomial(k), mult) for k, mult in result.items()]
    items.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    check = [1]
    for fac, mult in items:
        for _ in range(mult):
            check = _zmul(check, list(fac.coeffs))
    _, check = _primitive(check)
    assert check == list(prim.coeffs), "factor product mismatch"
    return items


# ---------------------------------------------------------------------------
# quadratic surds


@dataclass(frozen=True)
class QuadraticSurd:
    """The exact value a + b*sqrt(d) with d squarefree, d not in {0, 1}."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.d in (0, 1):
            raise InputError("surd radicand must not be 0 or 1")
        if squarefree_kernel(self.d)[1] != 1:
            raise InputError("surd radicand must be squarefree")
        if self.b == 0:
            raise InputError("degenerate surd (b = 0) is just a rational")

    def conjugate(self) -> "QuadraticSurd":
        return QuadraticSurd(self.a, -self.b, self.d)

    def __str__(self):
        if self.b < 0:
            return f"{self.a} - {-self.b}*sqrt({self.d})"
        return f"{self.a} + {self.b}*sqrt({self.d})"


def quadratic_surd_roots(q: IntPolynomial) -> tuple:
    """Roots of an irreducible integer quadratic as conjugate exact surds.

    Returns the pair (-B +- e*sqrt(d))/(2A), positive-b representative first.
    A perfect-square discriminant (reducible input) is an error.
    """
    if q.degree != 2:
        raise InputError("quadratic_surd_roots needs degree exactly 2")
    c, b, a = q.coeffs
    delta = b * b - 4 * a * c
    if _is_square(delta):
        raise InputError("discriminant is a perfect square; split the factor instead")
    d, e = squarefree_kernel(delta)
    ra = Fraction(-b, 2 * a)
    rb = abs(Fraction(e, 2 * a))
    first = QuadraticSurd(ra, rb, d)
    return first, first.conjugate()


# ---------------------------------------------------------------------------
# the multiquadratic algebra


def _independent(gens) -> bool:
    """No nonempty subset of gens has a perfect-square product."""
    for mask in range(1, 1 << len(gens)):
        prod = 1
        for i, g in enumerate(gens):
            if mask >> i & 1:
                prod *= g
        if _is_square(prod):
            return False
    return True


@dataclass(frozen=True)
class MultiQuadElement:
    """An exact element of Q(sqrt(d1), ..., sqrt(dk)).

    coords[S] is the coordinate of prod_{i in S} sqrt(d_i) for the bitmask S.
    Generators are squarefree, multiplicatively independent integers (no
    nonempty subset product is a square), so coordinates are unique and the
    2^k conjugates are exactly the independent sign flips of the generators.
    """

    generators: tuple
    coords: tuple

    def __post_init__(self):
        gens = tuple(int(g) for g in self.generators)
        coords = tuple(Fraction(c) for c in self.coords)
        if len(coords) != 1 << len(gens):
            raise InputError("coordinate count must be 2^k")
        for g in gens:
            if g in (0, 1):
                raise InputError("radicand 0 or 1 in generator list")
            if squarefree_kernel(g)[1] != 1:
                raise InputError(f"generator {g} is not squarefree")
        if not _independent(gens):
            raise InputError("generators are multiplicatively dependent")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "coords", coords)

    @property
    def k(self) -> int:
        return len(self.generators)

    @classmethod
    def rational(cls, value, generators) -> "MultiQuadElement":
        coords = [Fraction(0)] * (1 << len(generators))
        coords[0] = Fraction(value)
        return cls(tuple(generators), tuple(coords))

    def _same_field(self, other):
        if self.generators != other.generators:
            raise InputError("elements use different field presentations")

    def __add__(self, other):
        self._same_field(other)
        return MultiQuadElement(
            self.generators, tuple(x + y for x, y in zip(self.coords, other.coords))
        )

    def __sub__(self, other):
        self._same_field(other)
        return MultiQuadElement(
            self.generators, tuple(x - y for x, y in zip(self.coords, other.coords))
        )

    def __neg__(self):
        return MultiQuadElement(self.generators, tuple(-x for x in self.coords))

    def scale(self, c) -> "MultiQuadElement":
        c = Fraction(c)
        return MultiQuadElement(self.generators, tuple(x * c for x in self.coords))

    def __mul__(self, other):
        self._same_field(other)
        n = 1 << self.k
        out = [Fraction(0)] * n
        for s, cs in enumerate(self.coords):
            if not cs:
                continue
            for t, ct in enumerate(other.coords):
                if not ct:
                    continue
                common = s & t
                factor = 1
                for i in range(self.k):
                    if common >> i & 1:
                        factor *= self.generators[i]
                out[s ^ t] += cs * ct * factor
        return MultiQuadElement(self.generators, tuple(out))

    def conjugate(self, mask: int) -> "MultiQuadElement":
        """Apply sqrt(d_i) -> -sqrt(d_i) for each generator i in the bitmask."""
        return MultiQuadElement(
            self.generators,
            tuple(
                -c if bin(s & mask).count("1") % 2 else c
                for s, c in enumerate(self.coords)
            ),
        )

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise InputError("element is irrational")
        return self.coords[0]

    def evaluate(self, prec: int = 128):
        """Numeric value as an mpmath complex at about prec bits."""
        with mpmath.workprec(prec + 16):
            total = mpmath.mpc(0)
            roots = [mpmath.sqrt(mpmath.mpc(g)) for g in self.generators]
            for s, c in enumerate(self.coords):
                if not c:
                    continue
                term = mpmath.mpc(c.numerator) / c.denominator
                for i in range(self.k):
                    if s >> i & 1:
                        term *= roots[i]
                total += term
            return total

    def __str__(self):
        parts = []
        for s, c in enumerate(self.coords):
            if c == 0:
                continue
            if s == 0:
                parts.append(str(c))
                continue
            rad = 1
            for i in range(self.k):
                if s >> i & 1:
                    rad *= self.generators[i]
            if abs(c) == 1:
                parts.append(("-" if c < 0 else "") + f"sqrt({rad})")
            else:
                parts.append(f"{c}*sqrt({rad})")
        if not parts:
            return "0"
        text = parts[0]
        for t in parts[1:]:
            text += (" - " + t[1:]) if t.startswith("-") else (" + " + t)
        return text


def field_label(generators) -> str:
    """Render Q(sqrt(d1),...,sqrt(dk)); an empty generator list means Q."""
    if not generators:
        return "Q"
    return "Q(" + ",".join(f"sqrt({g})" for g in generators) + ")"


# ---------------------------------------------------------------------------
# multiquadratic identification


def _round_rational(x, den: int, tol) -> Optional[Fraction]:
    """Nearest rational with denominator dividing den, if within tol*(1+|x|).

    Rounding against a known denominator divisor avoids the junk answers a
    continued-fraction search produces for irrational or under-resolved
    values: the candidate is accepted only when it sits inside the relative
    tolerance band around the numeric value.
    """
    ival = int(mpmath.nint(x * den))
    cand = Fraction(ival, den)
    back = mpmath.mpf(cand.numerator) / cand.denominator
    if abs(x - back) <= tol * (1 + abs(x)):
        return cand
    return None


def _numeric_roots(g: IntPolynomial, prec: int):
    with mpmath.workprec(prec + 64):
        coeffs = [mpmath.mpf(c) for c in reversed(g.coeffs)]
        try:
            roots, err = mpmath.polyroots(
                coeffs, maxsteps=200, extraprec=prec // 2, error=True
            )
        except mpmath.libmp.NoConvergence:
            return None
        top = max(abs(r) for r in roots) + 1
        if err > mpmath.mpf(2) ** (-(prec // 2)) * top:
            return None
        return [mpmath.mpc(r) for r in roots]


def _harvest_radicands(roots, prec, lead):
    """Balanced sign splits of the roots whose signed sum squares to a rational.

    Returns {squarefree radicand: signs tuple}. Root 0 is pinned to the plus
    half, which kills the global sign flip. Denominators of the squared sums
    divide lead**2 (lead * root is an algebraic integer), so candidates are
    found by direct rounding.

    Several signings can square into the same rational line (any signing
    orthogonal to the other radical components does), but only the true group
    character has full correlation with the roots, so for each radicand the
    signing with the largest |v^2| is kept.
    """
    n = len(roots)
    den = lead * lead
    found = {}
    with mpmath.workprec(prec + 64):
        tol = mpmath.mpf(2) ** (-(prec // 3))
        for plus in itertools.combinations(range(1, n), n // 2 - 1):
            pos = frozenset((0,) + plus)
            v = mpmath.mpc(0)
            for i in range(n):
                v = v + roots[i] if i in pos else v - roots[i]
            v2 = v * v
            if abs(v2.imag) > tol * (1 + abs(v2)):
                continue
            q = _round_rational(v2.real, den, tol)
            if q is None or q == 0:
                continue
            try:
                d, _ = squarefree_kernel(q.numerator * q.denominator)
            except FactorizationError:
                continue
            if d in (0, 1):
                continue
            if d not in found or abs(q) > found[d][0]:
                found[d] = (abs(q), tuple(1 if i in pos else -1 for i in range(n)))
    return {d: signs for d, (_, signs) in found.items()}


def _greedy_generators(radicands, k):
    """Greedy F2-independent pick: smallest |d| first, positive on ties."""
    chosen = []
    for d in sorted(radicands, key=lambda d: (abs(d), d < 0)):
        if _independent(chosen + [d]):
            chosen.append(d)
            if len(chosen) == k:
                return chosen
    return None


def _certified(theta: MultiQuadElement, g: IntPolynomial) -> bool:
    """Exact check: prod over conjugates of (x - theta^sigma) equals g / lc."""
    k = theta.k
    gens = theta.generators
    poly = [MultiQuadElement.rational(1, gens)]
    for sigma in range(1 << k):
        conj = theta.conjugate(sigma)
        new = [MultiQuadElement.rational(0, gens) for _ in range(len(poly) + 1)]
        for i, c in enumerate(poly):
            new[i + 1] = new[i + 1] + c
            new[i] = new[i] - c * conj
        poly = new
    if len(poly) != g.degree + 1:
        return False
    lead = g.leading
    for i, c in enumerate(poly):
        if not c.is_rational() or c.rational_value() != Fraction(g.coeffs[i], lead):
            return False
    return True


def _canonical_flips(theta: MultiQuadElement) -> MultiQuadElement:
    """Deterministic representative among the generator sign flips."""
    best = theta
    for mask in range(1, 1 << theta.k):
        cand = theta.conjugate(mask)
        if cand.coords > best.coords:
            best = cand
    return best


def identify_multiquadratic(g: IntPolynomial) -> Optional[MultiQuadElement]:
    """Exact multiquadratic presentation of a root of g, if one exists.

    g must be irreducible of degree 2, 4, 8, or 16 (any leading coefficient).
    On success the returned element's 2^k sign-flip conjugates are exactly
    the roots of g, certified by expanding the conjugate product in the exact
    algebra. Returns None when no certified presentation is found — a
    non-multiquadratic splitting field, numeric failure at every precision,
    or factoring-budget exhaustion while extracting radicands.
    """
    deg = g.degree
    if deg not in (2, 4, 8, 16):
        raise InputError("degree must be 2, 4, 8, or 16")
    if deg == 2:
        try:
            root, _ = quadratic_surd_roots(g)
        except (InputError, FactorizationError):
            return None
        theta = MultiQuadElement((root.d,), (root.a, root.b))
        return theta if _certified(theta, g) else None
    k = deg.bit_length() - 1
    floor = _min_identify_prec(g)
    prec = 256
    prev_sig = None
    stable = 0
    while prec <= (1 << 15):
        theta, sig = _attempt_identify(g, k, prec)
        if theta is not None:
            return theta
        if sig == prev_sig:
            stable += 1
        else:
            stable = 0
        prev_sig = sig
        # only a stabilized failure above the coefficient-size floor is
        # conclusive; below it the reconstructions cannot have resolved yet
        if stable >= 2 and prec >= floor:
            return None
        prec *= 2
    return None


def _min_identify_prec(g: IntPolynomial) -> int:
    """Bits needed before failed reconstructions are meaningful.

    Root sums square to rationals with denominator lead**2 and magnitude
    bounded through the Cauchy root bound, so below this precision a true
    answer may simply not have resolved yet.
    """
    lead = abs(g.leading)
    root_bound = 1 + max(abs(c) for c in g.coeffs) // lead
    int_bits = 2 * lead.bit_length() + 2 * (
        g.degree.bit_length() + root_bound.bit_length()
    )
    # the relative tolerance 2^-(prec/3) must clear the rounding-grid spacing
    # before a failed rounding can be trusted, hence the factor of three
    return 3 * int_bits + 128


def _attempt_identify(g, k, prec):
    """One fixed-precision try: (certified element or None, failure signature)."""
    roots = _numeric_roots(g, prec)
    if roots is None:
        return None, ("roots",)
    harvest = _harvest_radicands(roots, prec, abs(g.leading))
    if len(harvest) < k:
        return None, ("harvest", tuple(sorted(harvest)))
    gens = _greedy_generators(list(harvest), k)
    if gens is None:
        return None, ("dependent", tuple(sorted(harvest)))
    # the per-generator signings label each root with a coset vector in F2^k
    gen_signs = [harvest[d] for d in gens]
    n = 1 << k
    labels = [
        sum((1 - gen_signs[i][j]) // 2 << i for i in range(k)) for j in range(n)
    ]
    if len(set(labels)) != n:
        return None, ("labels", tuple(gens), tuple(labels))
    # character sums recover every coordinate; the trace gives the rational one
    coords = [Fraction(0)] * n
    coords[0] = Fraction(-g.coeffs[g.degree - 1], n * g.leading)
    cden = n * abs(g.leading)
    with mpmath.workprec(prec + 64):
        radicals = [mpmath.sqrt(mpmath.mpc(d)) for d in gens]
        tol = mpmath.mpf(2) ** (-(prec // 3))
        for mask in range(1, n):
            v = mpmath.mpc(0)
            for j in range(n):
                if bin(mask & labels[j]).count("1") % 2:
                    v -= roots[j]
                else:
                    v += roots[j]
            r = mpmath.mpc(1)
            for i in range(k):
                if mask >> i & 1:
                    r *= radicals[i]
            c = v / (n * r)
            if abs(c.imag) > tol * (1 + abs(c)):
                return None, ("complex-coord", tuple(gens), mask)
            q = _round_rational(c.real, cden, tol)
            if q is None:
                return None, ("coord", tuple(gens), mask)
            coords[mask] = q
    try:
        theta = MultiQuadElement(tuple(gens), tuple(coords))
    except InputError:
        return None, ("element", tuple(gens))
    if not _certified(theta, g):
        return None, ("uncertified", tuple(gens), tuple(coords))
    return _canonical_flips(theta), ()


# ---------------------------------------------------------------------------
# biquadratic quartic detection via the resolvent cubic


def v4_quartic_subfields(q: IntPolynomial) -> Optional[tuple]:
    """Generators (d1, d2) of the quadratic subfields of a Klein-four quartic.

    An irreducible quartic has Galois group (Z/2)^2 exactly when its resolvent
    cubic splits completely over Q; the quadratic subfields are then read off
    the rational resolvent roots through the discriminants (u-u')^2 and
    (v-v')^2 of the induced conjugate-quadratic splittings. Returns None when
    not biquadratic. Generator order: smallest |d| first, positive on ties.
    """
    if q.degree != 4:
        raise InputError("v4_quartic_subfields needs degree exactly 4")
    monic, _ = _monicize(list(q.coeffs))
    s_c, r_c, q_c, p_c, _one = monic
    resolvent = IntPolynomial(
        (
            -(p_c * p_c * s_c - 4 * q_c * s_c + r_c * r_c),
            p_c * r_c - 4 * s_c,
            -q_c,
            1,
        )
    )
    roots = []
    for fac, mult in factor_rational(resolvent):
        if fac.degree != 1:
            return None
        a0, a1 = fac.coeffs
        if abs(a1) != 1:
            return None
        roots.extend([-a0 * a1] * mult)
    radicands = set()
    for theta in roots:
        for delta in (p_c * p_c - 4 * (q_c - theta), theta * theta - 4 * s_c):
            if delta != 0 and not _is_square(delta):
                radicands.add(squarefree_kernel(delta)[0])
    gens = _greedy_generators(radicands, 2)
    if gens is None:
        return None
    return gens[0], gens[1]
