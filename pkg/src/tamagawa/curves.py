"""Weierstrass models over Q: invariants, coordinate changes, reduction mod l,
and exhaustive point arithmetic over small prime fields (the brute-force
oracle for residue-field torsion)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

from .padic import _is_prime

__all__ = [
    "SingularCurveError",
    "WeierstrassCurve",
    "Transformation",
    "transform",
    "FiniteFieldPoint",
    "FiniteFieldCurve",
    "enumerate_points_mod",
    "count_p_torsion_mod",
    "parse_ainvs",
]

ENUMERATION_CAP = 10**5


class SingularCurveError(ValueError):
    """Discriminant zero: not an elliptic curve."""


def _to_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q.

    Coefficients are Fractions internally so coordinate changes stay exact;
    curves produced by :meth:`from_input` (and the CLI) are always integral.
    """

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def __post_init__(self) -> None:
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, _to_fraction(getattr(self, name)))
        if self.discriminant == 0:
            raise SingularCurveError("singular curve: discriminant is zero")
        # standard identities, cheap self-check
        b2, b4, b6, b8 = self.b_invariants
        assert 4 * b8 == b2 * b6 - b4 * b4
        assert 1728 * self.discriminant == self.c4**3 - self.c6**2

    # -- construction ------------------------------------------------------

    @classmethod
    def from_input(cls, a1, a2, a3, a4, a6) -> "WeierstrassCurve":
        """Accepts rational coefficients; rescales (u = lcm of denominators,
        a_i -> u^i a_i) to an integral model before constructing."""
        from math import lcm

        ai = [Fraction(a) for a in (a1, a2, a3, a4, a6)]
        weights = (1, 2, 3, 4, 6)
        u = 1
        for a in ai:
            u = lcm(u, a.denominator)
        scaled = [a * Fraction(u) ** w for a, w in zip(ai, weights)]
        assert all(a.denominator == 1 for a in scaled)
        return cls(*scaled)

    @property
    def ainvs(self) -> tuple[Fraction, Fraction, Fraction, Fraction, Fraction]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.ainvs)

    def integer_ainvs(self) -> tuple[int, int, int, int, int]:
        if not self.is_integral:
            raise ValueError("model is not integral")
        return tuple(int(a) for a in self.ainvs)  # type: ignore[return-value]

    # -- invariants ----------------------------------------------------------

    @property
    def b_invariants(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def c4(self) -> Fraction:
        b2, b4, _, _ = self.b_invariants
        return b2 * b2 - 24 * b4

    @property
    def c6(self) -> Fraction:
        b2, b4, b6, _ = self.b_invariants
        return -(b2**3) + 36 * b2 * b4 - 216 * b6

    @property
    def discriminant(self) -> Fraction:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def j_invariant(self) -> Fraction:
        return self.c4**3 / self.discriminant

    def invariants(self) -> dict[str, Fraction]:
        b2, b4, b6, b8 = self.b_invariants
        return {
            "b2": b2, "b4": b4, "b6": b6, "b8": b8,
            "c4": self.c4, "c6": self.c6,
            "disc": self.discriminant, "j": self.j_invariant,
        }

    def __str__(self) -> str:
        return "E(" + ",".join(str(a) for a in self.ainvs) + ")"


class Transformation(NamedTuple):
    """Coordinate change x = u^2 x' + r, y = u^3 y' + u^2 s x' + t."""

    u: Fraction
    r: Fraction
    s: Fraction
    t: Fraction

    @classmethod
    def identity(cls) -> "Transformation":
        return cls(Fraction(1), Fraction(0), Fraction(0), Fraction(0))

    def compose(self, other: "Transformation") -> "Transformation":
        """self followed by other (other acts on the primed coordinates)."""
        u1, r1, s1, t1 = self
        u2, r2, s2, t2 = (Fraction(v) for v in other)
        return Transformation(
            u1 * u2,
            r1 + u1 * u1 * r2,
            s1 + u1 * s2,
            t1 + u1 * u1 * s1 * r2 + u1**3 * t2,
        )


def transform(curve: WeierstrassCurve, tr: Transformation | tuple) -> WeierstrassCurve:
    """The same curve in new coordinates; disc scales by u^-12, j is unchanged."""
    u, r, s, t = (Fraction(v) for v in tr)
    if u == 0:
        raise ValueError("degenerate transformation: u = 0")
    a1, a2, a3, a4, a6 = curve.ainvs
    na1 = (a1 + 2 * s) / u
    na2 = (a2 - s * a1 + 3 * r - s * s) / u**2
    na3 = (a3 + r * a1 + 2 * t) / u**3
    na4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u**4
    na6 = (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) / u**6
    return WeierstrassCurve(na1, na2, na3, na4, na6)


def parse_ainvs(text: str) -> WeierstrassCurve:
    """Parse the shared curve input format: five comma-separated integers."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 5:
        raise ValueError(f"expected 5 comma-separated integers, got {len(parts)}")
    try:
        ai = [int(p) for p in parts]
    except ValueError as exc:
        raise ValueError(f"invalid curve coefficients {text!r}") from exc
    return WeierstrassCurve(*ai)


# ---------------------------------------------------------------------------
# Reduction mod l and the finite-field oracle


class FiniteFieldPoint(NamedTuple):
    """Point on the reduction mod l; x is None for the point at infinity."""

    x: int | None
    y: int | None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self) -> str:
        return "O" if self.is_infinity else f"({self.x},{self.y})"


INFINITY = FiniteFieldPoint(None, None)


class FiniteFieldCurve:
    """Reduction of an integral model mod an odd prime of good reduction,
    with the affine group law (complete case analysis, no projective formulas)."""

    def __init__(self, curve: WeierstrassCurve, ell: int):
        if not curve.is_integral:
            raise ValueError("reduction requires an integral model")
        if not _is_prime(ell) or ell == 2:
            raise ValueError("odd prime required")
        if curve.discriminant.numerator % ell == 0:
            raise SingularCurveError(f"reduction is singular at {ell}")
        if ell > ENUMERATION_CAP:
            raise ValueError("prime too large for enumeration")
        self.ell = ell
        a1, a2, a3, a4, a6 = curve.integer_ainvs()
        self.a = tuple(a % ell for a in (a1, a2, a3, a4, a6))

    def on_curve(self, pt: FiniteFieldPoint) -> bool:
        if pt.is_infinity:
            return True
        a1, a2, a3, a4, a6 = self.a
        x, y = pt
        lhs = (y * y + a1 * x * y + a3 * y) % self.ell
        rhs = (x**3 + a2 * x * x + a4 * x + a6) % self.ell
        return lhs == rhs

    def negate(self, pt: FiniteFieldPoint) -> FiniteFieldPoint:
        if pt.is_infinity:
            return pt
        a1, _, a3, _, _ = self.a
        x, y = pt
        return FiniteFieldPoint(x, (-y - a1 * x - a3) % self.ell)

    def add(self, p: FiniteFieldPoint, q: FiniteFieldPoint) -> FiniteFieldPoint:
        ell = self.ell
        a1, a2, a3, a4, _ = self.a
        if p.is_infinity:
            return q
        if q.is_infinity:
            return p
        x1, y1 = p
        x2, y2 = q
        if x1 == x2 and (y1 + y2 + a1 * x2 + a3) % ell == 0:
            return INFINITY
        if x1 == x2:
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) * pow(2 * y1 + a1 * x1 + a3, -1, ell) % ell
        else:
            lam = (y2 - y1) * pow(x2 - x1, -1, ell) % ell
        x3 = (lam * lam + a1 * lam - a2 - x1 - x2) % ell
        y3 = (lam * (x1 - x3) - y1 - a1 * x3 - a3) % ell
        return FiniteFieldPoint(x3, y3)

    def multiply(self, n: int, pt: FiniteFieldPoint) -> FiniteFieldPoint:
        if n < 0:
            return self.multiply(-n, self.negate(pt))
        acc = INFINITY
        while n:
            if n & 1:
                acc = self.add(acc, pt)
            pt = self.add(pt, pt)
            n >>= 1
        return acc

    def points(self) -> Iterator[FiniteFieldPoint]:
        """All points, infinity first.  Uses a square table: for odd l the
        y-quadratic is solved by completing the square."""
        ell = self.ell
        a1, a2, a3, a4, a6 = self.a
        yield INFINITY
        sqrt_table: dict[int, list[int]] = {}
        for y in range(ell):
            sqrt_table.setdefault(y * y % ell, []).append(y)
        inv2 = pow(2, -1, ell)
        for x in range(ell):
            # (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
            rhs = (
                4 * x**3
                + (a1 * a1 + 4 * a2) * x * x
                + 2 * (2 * a4 + a1 * a3) * x
                + (a3 * a3 + 4 * a6)
            ) % ell
            for w in sqrt_table.get(rhs, ()):
                y = (w - a1 * x - a3) * inv2 % ell
                yield FiniteFieldPoint(x, y)

    def order(self) -> int:
        n = sum(1 for _ in self.points())
        # Hasse bound sanity invariant
        assert (n - (self.ell + 1)) ** 2 <= 4 * self.ell, "Hasse bound violated"
        return n


def enumerate_points_mod(curve: WeierstrassCurve, ell: int) -> list[FiniteFieldPoint]:
    """Full point list of the reduction mod l (good odd l <= cap), infinity included."""
    red = FiniteFieldCurve(curve, ell)
    pts = list(red.points())
    assert (len(pts) - (ell + 1)) ** 2 <= 4 * ell, "Hasse bound violated"
    return pts


def count_p_torsion_mod(curve: WeierstrassCurve, ell: int, p: int) -> int:
    """#{P in E~(F_l) : [p]P = O} by scalar multiplication over the full list."""
    red = FiniteFieldCurve(curve, ell)
    count = 0
    for pt in red.points():
        if red.multiply(p, pt).is_infinity:
            count += 1
    assert count in (1, p, p * p), f"p-torsion count {count} outside {{1,p,p^2}}"
    return count
