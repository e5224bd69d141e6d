"""Genus-2 sextic models y**2 = f(x) and their function-field generators.

A curve is y**2 = x**6 + a5*x**5 + ... + a0 with rational a_i and squarefree
right-hand side.  Being monic of even degree it carries two rational points
over the singular point at infinity, told apart by the sign of y/x**3: the
branch with limit +1 (``INF_PLUS``) and its image under the hyperelliptic
involution (``INF_MINUS``).

The generators f3, f4, f5 have poles only at INF_PLUS, of orders 3, 4, 5,
vanish at INF_MINUS, and every function regular outside INF_PLUS with pole
order n >= 3 is a combination of the monomials f5*f3^k, f4*f3^k, f3^(k+1);
``monomial_for_order`` names the unique monomial of each pole order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from ._backend import search_sextic
from .errors import InputError

Rational = Fraction


# ---------------------------------------------------------------------------
# small dense polynomial helpers over Fraction (low-to-high coefficient lists)


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_add(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return _poly_trim(out)


def _poly_scale(a, c):
    c = Fraction(c)
    return _poly_trim([x * c for x in a])


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _poly_trim(out)


def _poly_eval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_derivative(p):
    return _poly_trim([i * c for i, c in enumerate(p)][1:])


def _poly_mod(a, b):
    """Remainder of a by b over Q (b nonzero)."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        q = a[-1] / lb
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        _poly_trim(a)
        if not a:
            break
    return a


def _poly_gcd_is_constant(a, b) -> bool:
    a, b = list(a), list(b)
    while b:
        a, b = b, _poly_mod(a, b)
    return len(a) == 1


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SexticCurve:
    """y**2 = x**6 + a5 x**5 + a4 x**4 + a3 x**3 + a2 x**2 + a1 x + a0."""

    a0: Rational
    a1: Rational
    a2: Rational
    a3: Rational
    a4: Rational
    a5: Rational

    def __post_init__(self):
        for name in ("a0", "a1", "a2", "a3", "a4", "a5"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        f = self.f_coeffs()
        if not _poly_gcd_is_constant(f, _poly_derivative(f)):
            raise InputError("sextic has a repeated root; the curve is singular")

    @classmethod
    def from_coeffs(cls, coeffs) -> "SexticCurve":
        """coeffs = (a0, ..., a5), constant term first."""
        return cls(*[Fraction(c) for c in coeffs])

    def f_coeffs(self):
        """[a0, ..., a5, 1], constant term first."""
        return [self.a0, self.a1, self.a2, self.a3, self.a4, self.a5, Fraction(1)]

    def f_at(self, x) -> Rational:
        return _poly_eval(self.f_coeffs(), Fraction(x))

    def point(self, x, y) -> "CurvePoint":
        """Validated affine point."""
        x, y = Fraction(x), Fraction(y)
        if y * y != self.f_at(x):
            raise InputError(f"({x}, {y}) does not lie on the curve")
        return CurvePoint(kind="affine", x=x, y=y)

    def __str__(self):
        names = ["", "x", "x^2", "x^3", "x^4", "x^5"]
        terms = ["x^6"]
        for i in range(5, -1, -1):
            c = getattr(self, f"a{i}")
            if c:
                s = "+ " if c > 0 else "- "
                mag = abs(c)
                if mag == 1 and i > 0:
                    terms.append(s + names[i])
                else:
                    terms.append(s + (f"{mag}{names[i]}" if i else f"{mag}"))
        return "y^2 = " + " ".join(terms)


@dataclass(frozen=True)
class CurvePoint:
    kind: str  # "affine" | "infinity_plus" | "infinity_minus"
    x: Optional[Rational] = None
    y: Optional[Rational] = None

    def __post_init__(self):
        if self.kind not in ("affine", "infinity_plus", "infinity_minus"):
            raise InputError(f"unknown point kind {self.kind!r}")
        if self.kind == "affine" and (self.x is None or self.y is None):
            raise InputError("affine point needs both coordinates")

    @property
    def is_affine(self) -> bool:
        return self.kind == "affine"

    def __str__(self):
        if self.kind == "infinity_plus":
            return "inf+"
        if self.kind == "infinity_minus":
            return "inf-"
        return f"({self.x}, {self.y})"


INF_PLUS = CurvePoint(kind="infinity_plus")
INF_MINUS = CurvePoint(kind="infinity_minus")


def involution(p: CurvePoint) -> CurvePoint:
    """The hyperelliptic involution w: (x, y) -> (x, -y), inf+ <-> inf-."""
    if p.kind == "infinity_plus":
        return INF_MINUS
    if p.kind == "infinity_minus":
        return INF_PLUS
    return CurvePoint(kind="affine", x=p.x, y=-p.y)


@dataclass(frozen=True)
class XYPoly:
    """p(x) + q(x)*y with rational coefficients (low-to-high tuples)."""

    p: tuple
    q: tuple

    @classmethod
    def make(cls, p, q=()) -> "XYPoly":
        return cls(tuple(_poly_trim([Fraction(c) for c in p])),
                   tuple(_poly_trim([Fraction(c) for c in q])))

    def involute(self) -> "XYPoly":
        return XYPoly(self.p, tuple(-c for c in self.q))

    def __add__(self, other: "XYPoly") -> "XYPoly":
        return XYPoly(
            tuple(_poly_add(list(self.p), list(other.p))),
            tuple(_poly_add(list(self.q), list(other.q))),
        )

    def __sub__(self, other: "XYPoly") -> "XYPoly":
        return self + XYPoly(
            tuple(-c for c in other.p), tuple(-c for c in other.q)
        )

    def mul(self, other: "XYPoly", curve: SexticCurve) -> "XYPoly":
        """Product reduced by y**2 = f(x) on the given curve."""
        pp = _poly_mul(list(self.p), list(other.p))
        qq = _poly_mul(list(self.q), list(other.q))
        pq = _poly_add(
            _poly_mul(list(self.p), list(other.q)),
            _poly_mul(list(self.q), list(other.p)),
        )
        pp = _poly_add(pp, _poly_mul(qq, curve.f_coeffs()))
        return XYPoly(tuple(pp), tuple(pq))

    def mul_x(self) -> "XYPoly":
        return XYPoly(
            (Fraction(0),) + self.p if self.p else (),
            (Fraction(0),) + self.q if self.q else (),
        )

    def add_constant(self, c) -> "XYPoly":
        p = list(self.p) if self.p else [Fraction(0)]
        p = _poly_add(p, [Fraction(c)])
        return XYPoly(tuple(p), self.q)

    def evaluate(self, x, y) -> Rational:
        return _poly_eval(list(self.p), x) + _poly_eval(list(self.q), x) * y

    def evaluate_series(self, xs, ys):
        """Value on Laurent series coordinates (xs, ys)."""
        from .series import LaurentSeries

        # Horner in xs; precision is driven by the series operations
        def horner(coeffs):
            acc = None
            for c in reversed(coeffs):
                if acc is None:
                    acc = LaurentSeries.from_fraction(c, xs.prec - xs.val)
                else:
                    acc = acc * xs
                    acc = acc + LaurentSeries.from_fraction(c, acc.prec)
            return acc

        total = None
        if self.p:
            total = horner(self.p)
        if self.q:
            qy = horner(self.q) * ys
            total = qy if total is None else total + qy
        if total is None:
            total = LaurentSeries.zero(xs.prec)
        return total


@dataclass(frozen=True)
class FGenerators:
    f3: XYPoly
    f4: XYPoly
    f5: XYPoly
    k4: Rational  # f4 = x*f3 + k4
    k5: Rational  # f5 = x*f4 + k5


def rr_generators(curve: SexticCurve) -> FGenerators:
    """The pole-order 3, 4, 5 generators at INF_PLUS, by their closed forms."""
    a0, a1, a2, a3, a4, a5 = (
        curve.a0,
        curve.a1,
        curve.a2,
        curve.a3,
        curve.a4,
        curve.a5,
    )
    f3 = XYPoly.make(
        [
            Fraction(8 * a3 - 4 * a4 * a5 + a5**3, 32),
            Fraction(4 * a4 - a5**2, 16),
            Fraction(a5, 4),
            Fraction(1, 2),
        ],
        [Fraction(1, 2)],
    )
    k4 = Fraction(64 * a2 - 16 * a4**2 - 32 * a3 * a5 + 24 * a4 * a5**2 - 5 * a5**4, 256)
    f4 = f3.mul_x().add_constant(k4)
    k5 = Fraction(
        128 * a1
        - 64 * a3 * a4
        - 64 * a2 * a5
        + 48 * a4**2 * a5
        + 48 * a3 * a5**2
        - 40 * a4 * a5**3
        + 7 * a5**5,
        512,
    )
    f5 = f4.mul_x().add_constant(k5)
    return FGenerators(f3=f3, f4=f4, f5=f5, k4=k4, k5=k5)


def evaluate_f(gens: FGenerators, p: CurvePoint):
    """(f3, f4, f5) at a point; the generators vanish at INF_MINUS."""
    if p.kind == "infinity_plus":
        raise InputError("f3, f4, f5 have their pole at inf+")
    if p.kind == "infinity_minus":
        return (Fraction(0), Fraction(0), Fraction(0))
    return (
        gens.f3.evaluate(p.x, p.y),
        gens.f4.evaluate(p.x, p.y),
        gens.f5.evaluate(p.x, p.y),
    )


@dataclass(frozen=True, order=True)
class Monomial:
    """gen * f3**k where gen is one of f3, f4, f5."""

    gen: str
    k: int

    def __post_init__(self):
        if self.gen not in ("f3", "f4", "f5"):
            raise InputError(f"unknown generator {self.gen!r}")
        if self.k < 0:
            raise InputError("negative f3 power")

    @property
    def pole_order(self) -> int:
        base = {"f3": 3, "f4": 4, "f5": 5}[self.gen]
        return base + 3 * self.k

    def __str__(self):
        if self.gen == "f3":
            return "f3" if self.k == 0 else f"f3^{self.k + 1}"
        return f"{self.gen}" + (f"*f3^{self.k}" if self.k else "")


def monomial_for_order(n: int) -> Monomial:
    """The unique basis monomial with pole order exactly n (n >= 3).

    Orders 1 and 2 are gaps: no function has such a pole there.
    """
    if n < 3:
        raise InputError(f"no basis monomial of pole order {n}")
    r = n % 3
    if r == 0:
        return Monomial("f3", n // 3 - 1)
    if r == 1:
        return Monomial("f4", (n - 4) // 3)
    return Monomial("f5", (n - 5) // 3)


def search_points(curve: SexticCurve, height_bound: int) -> list:
    """All rational points with x = u/v in lowest terms, max(|u|, v) <= bound.

    Returns both points at infinity first, then affine points ordered by
    (v, u), each nonzero-y solution contributing the +y then the -y point.
    """
    if height_bound < 1:
        raise InputError("height bound must be >= 1")
    coeffs = curve.f_coeffs()
    den_lcm = 1
    for c in coeffs:
        den_lcm = den_lcm // gcd(den_lcm, c.denominator) * c.denominator
    scale = den_lcm * den_lcm
    int_coeffs = tuple(int(c * scale) for c in coeffs)
    out = [INF_PLUS, INF_MINUS]
    for u, v, s in search_sextic(int_coeffs, height_bound):
        x = Fraction(u, v)
        y = Fraction(s, den_lcm * v**3)
        if s == 0:
            out.append(CurvePoint(kind="affine", x=x, y=Fraction(0)))
        else:
            out.append(CurvePoint(kind="affine", x=x, y=y))
            out.append(CurvePoint(kind="affine", x=x, y=-y))
    return out
