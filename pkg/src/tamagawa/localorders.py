"""Per-place orders of the local objects attached to E[p]: the p-torsion
subgroup of E(K_v), the image of the local Kummer map, the component-group
p-part, and the relaxed/restricted local condition subgroups, for K = Q and
v ranging over the real place and the finite primes.

Division polynomials locate the p-torsion x-coordinates; l-adic root
counting plus the local square test decide which of them carry points over
Q_l.  The remaining orders follow from the exact sequences tying the local
conditions to the component group; the divisibility they force is checked
and a violation reported as inconsistent data rather than papered over.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import WeierstrassCurve
from .padic import (
    IntegerPolynomial,
    PadicContext,
    find_roots_padic,
    value_is_square_at_root,
)
from .tate import LocalData, phi_p_part_order, tate_local

__all__ = [
    "Place",
    "LocalSelmerOrders",
    "InconsistentLocalData",
    "division_polynomial",
    "local_torsion_order",
    "local_kummer_order",
    "assemble_local_orders",
]

SUPPORTED_P = (3, 5, 7)


class InconsistentLocalData(RuntimeError):
    """Computed local orders violate a forced divisibility; indicates a bug
    in the torsion count or the reduction data, never valid output."""


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q: the real archimedean place or a finite prime."""

    sort_key: int  # -1 for the real place, else the prime
    prime: int | None

    @classmethod
    def real(cls) -> "Place":
        return cls(-1, None)

    @classmethod
    def finite(cls, ell: int) -> "Place":
        return cls(ell, ell)

    @property
    def is_real(self) -> bool:
        return self.prime is None

    def serialize(self) -> str | int:
        return "real" if self.is_real else self.prime

    def __str__(self) -> str:
        return "oo" if self.is_real else str(self.prime)


@dataclass(frozen=True)
class LocalSelmerOrders:
    """The six local orders at one place."""

    place: Place
    torsion_order: int  # #E(K_v)[p]
    kummer_order: int  # #E(K_v)/pE(K_v) = local Selmer order
    phi_p: int  # #Phi(k_v)[p]
    relaxed_order: int  # unramified-in-the-torsor-sense condition
    restricted_order: int  # kernel-of-component-map condition
    tt_p: int  # p-torsion of the Tamagawa torsor group

    def __post_init__(self) -> None:
        assert self.relaxed_order == self.kummer_order * self.phi_p
        assert self.restricted_order * self.phi_p == self.kummer_order
        assert self.tt_p == self.phi_p
        assert self.restricted_order <= self.kummer_order <= self.relaxed_order
        assert self.relaxed_order * self.restricted_order == self.kummer_order**2

    def serialize(self) -> dict:
        return {
            "place": self.place.serialize(),
            "torsion": self.torsion_order,
            "kummer": self.kummer_order,
            "phi_p": self.phi_p,
            "relaxed": self.relaxed_order,
            "restricted": self.restricted_order,
            "tt_p": self.tt_p,
        }


def division_polynomial(curve: WeierstrassCurve, p: int) -> IntegerPolynomial:
    """The p-division polynomial in x for p in {3, 5, 7}; its roots are
    exactly the x-coordinates of the nonzero p-torsion points."""
    if p not in SUPPORTED_P:
        raise ValueError(f"p exceeds desk-scale cap: {p} not in {SUPPORTED_P}")
    if not curve.is_integral:
        raise ValueError("integral model required")
    b2, b4, b6, b8 = (int(b) for b in curve.b_invariants)
    x = IntegerPolynomial([0, 1])
    one = IntegerPolynomial([1])
    psi3 = 3 * x**4 + b2 * x**3 + 3 * b4 * x**2 + 3 * b6 * x + b8 * one
    if p == 3:
        psi = psi3
    else:
        # F = (2y + a1 x + a3)^2 and omega4 = psi4 / psi2 are polynomials in x
        F = 4 * x**3 + b2 * x**2 + 2 * b4 * x + b6 * one
        omega4 = (
            2 * x**6
            + b2 * x**5
            + 5 * b4 * x**4
            + 10 * b6 * x**3
            + 10 * b8 * x**2
            + (b2 * b8 - b4 * b6) * x
            + (b4 * b8 - b6 * b6) * one
        )
        psi5 = omega4 * F**2 - psi3**3
        if p == 5:
            psi = psi5
        else:
            psi = psi5 * psi3**3 - F**2 * omega4**3
    assert psi.degree == (p * p - 1) // 2
    assert psi.coeffs[-1] == p
    return psi


def _y_squareness_poly(curve: WeierstrassCurve) -> IntegerPolynomial:
    """(2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6: a point with this
    x-coordinate is rational over Q_l iff the right side is a square there."""
    b2, b4, b6, _ = (int(b) for b in curve.b_invariants)
    x = IntegerPolynomial([0, 1])
    return 4 * x**3 + b2 * x**2 + 2 * b4 * x + b6 * IntegerPolynomial([1])


def local_torsion_order(
    curve: WeierstrassCurve,
    place: Place,
    p: int,
    *,
    local_data: LocalData | None = None,
) -> int:
    """#E(K_v)[p] for odd p, always one of 1, p, p^2.

    Real place: the p-torsion of the circle group contributes p and the
    component group is 2-torsion, so the count is p.  Finite place l: count
    the roots x of the p-division polynomial in Q_l whose y-quadratic has a
    root in Q_l; each such x carries exactly two points (odd p rules out the
    self-symmetric y).
    """
    if p not in SUPPORTED_P:
        raise ValueError(f"p exceeds desk-scale cap: {p} not in {SUPPORTED_P}")
    if place.is_real:
        return p
    ell = place.prime
    model = (local_data or tate_local(curve, ell)).minimal_model
    psi = division_polynomial(model, p)
    g = _y_squareness_poly(model)
    ctx = PadicContext(ell)
    valid = 0
    for root in find_roots_padic(psi, ctx):
        if value_is_square_at_root(g, root):
            valid += 1
    count = 1 + 2 * valid
    assert count in (1, p, p * p), f"torsion count {count} outside {{1, p, p^2}}"
    return count


def local_kummer_order(curve: WeierstrassCurve, place: Place, p: int, torsion_order: int) -> int:
    """#E(K_v)/pE(K_v).  Real place: 1 (odd p divides nothing there).
    Finite l != p: equals the torsion order.  l = p: an extra factor p
    (the local Euler-characteristic factor |p|_v^{-1} over Q_p)."""
    if place.is_real:
        return 1
    if place.prime == p:
        return p * torsion_order
    return torsion_order


def assemble_local_orders(
    curve: WeierstrassCurve,
    place: Place,
    p: int,
    *,
    local_data: LocalData | None = None,
) -> LocalSelmerOrders:
    """All six local orders at one place.

    The component-group p-part feeds the torsor group by duality (tt = phi_p
    for an elliptic curve, which is self-dual), the relaxed order is the
    Kummer order times tt, and the restricted order divides the Kummer order
    by the mod-p component image; that division must be exact.
    """
    if p not in SUPPORTED_P:
        raise ValueError(f"p exceeds desk-scale cap: {p} not in {SUPPORTED_P}")
    if place.is_real:
        return LocalSelmerOrders(place, p, 1, 1, 1, 1, 1)
    ell = place.prime
    data = local_data or tate_local(curve, ell)
    torsion = local_torsion_order(curve, place, p, local_data=data)
    kummer = local_kummer_order(curve, place, p, torsion)
    phi_p = phi_p_part_order(data, p)
    tt_p = phi_p
    relaxed = kummer * tt_p
    if kummer % phi_p != 0:
        raise InconsistentLocalData(
            f"inconsistent local data at {ell}: phi_p = {phi_p} does not divide "
            f"the Kummer order {kummer}"
        )
    restricted = kummer // phi_p
    return LocalSelmerOrders(place, torsion, kummer, phi_p, relaxed, restricted, tt_p)
