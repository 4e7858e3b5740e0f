"""Per-place order computations: division polynomials, local torsion, the
six-order assembly and its forced identities."""

import pytest

from tamagawa.curves import FiniteFieldCurve, FiniteFieldPoint, WeierstrassCurve, count_p_torsion_mod
from tamagawa.localorders import (
    InconsistentLocalData,
    Place,
    assemble_local_orders,
    division_polynomial,
    local_kummer_order,
    local_torsion_order,
)
from tamagawa.padic import IntegerPolynomial
from tamagawa.tate import FiniteAbelianGroup, KodairaType, LocalData, tate_local


def test_division_polynomial_short_model():
    # y^2 = x^3 + ax + b: psi_3 = 3x^4 + 6ax^2 + 12bx - a^2
    for a, b in [(2, 3), (-1, 0), (0, 1), (5, -7)]:
        try:
            E = WeierstrassCurve(0, 0, 0, a, b)
        except Exception:
            continue
        assert division_polynomial(E, 3) == IntegerPolynomial([-a * a, 12 * b, 6 * a, 0, 3])


@pytest.mark.parametrize("p", [3, 5, 7])
def test_division_polynomial_degree_and_lead(p):
    E = WeierstrassCurve(1, 0, 1, 4, -6)
    psi = division_polynomial(E, p)
    assert psi.degree == (p * p - 1) // 2
    assert psi.coeffs[-1] == p


def test_division_polynomial_cap():
    E = WeierstrassCurve(0, 0, 0, 1, 0)
    with pytest.raises(ValueError, match="cap"):
        division_polynomial(E, 11)


def test_three_torsion_root_matches_group_law_oracle():
    # (0, 0) has order 3 on y^2 + y = x^3; x = 0 must be a division-poly root
    E = WeierstrassCurve(0, 0, 1, 0, 0)
    psi = division_polynomial(E, 3)
    assert psi(0) == 0
    red = FiniteFieldCurve(E, 7)
    pt = FiniteFieldPoint(0, 0)
    assert red.on_curve(pt)
    assert red.multiply(3, pt).is_infinity
    assert not red.multiply(2, pt).is_infinity


def test_local_torsion_real_place():
    E = WeierstrassCurve(0, 0, 0, 1, 0)
    for p in (3, 5, 7):
        assert local_torsion_order(E, Place.real(), p) == p


def test_local_torsion_finite_examples():
    E1 = WeierstrassCurve(0, 0, 0, 1, 0)
    assert local_torsion_order(E1, Place.finite(7), 3) == 1
    assert local_torsion_order(E1, Place.finite(7), 3) == count_p_torsion_mod(E1, 7, 3)
    E2 = WeierstrassCurve(0, 0, 1, 0, 0)
    assert local_torsion_order(E2, Place.finite(5), 3) == 3
    assert local_torsion_order(E2, Place.finite(5), 3) == count_p_torsion_mod(E2, 5, 3)
    # full p-torsion over Q_11 on the Tate curve side
    E3 = WeierstrassCurve(0, -1, 1, -10, -20)
    assert local_torsion_order(E3, Place.finite(11), 5) == 25


def test_local_kummer_rules():
    E = WeierstrassCurve(0, 0, 0, 1, 0)
    assert local_kummer_order(E, Place.real(), 3, 3) == 1
    assert local_kummer_order(E, Place.finite(7), 3, 1) == 1
    assert local_kummer_order(E, Place.finite(3), 3, 1) == 3
    assert local_kummer_order(E, Place.finite(5), 5, 5) == 25


def test_assemble_good_reduction_away_from_p():
    E = WeierstrassCurve(0, 0, 0, 1, 0)
    o = assemble_local_orders(E, Place.finite(7), 3)
    t = o.torsion_order
    assert (o.torsion_order, o.kummer_order, o.phi_p, o.relaxed_order, o.restricted_order, o.tt_p) == (t, t, 1, t, t, 1)


def test_assemble_real_place():
    E = WeierstrassCurve(0, 0, 0, 1, 0)
    o = assemble_local_orders(E, Place.real(), 3)
    assert (o.torsion_order, o.kummer_order, o.phi_p, o.relaxed_order, o.restricted_order, o.tt_p) == (3, 1, 1, 1, 1, 1)


def test_assemble_split_multiplicative_11a1():
    E = WeierstrassCurve(0, -1, 1, -10, -20)
    o = assemble_local_orders(E, Place.finite(11), 5)
    assert o.kummer_order == 25
    assert o.phi_p == 5
    assert o.relaxed_order == 125
    assert o.restricted_order == 5
    assert o.tt_p == 5


def test_assemble_at_p_gains_kummer_factor():
    E = WeierstrassCurve(0, 0, 0, 1, 0)
    o = assemble_local_orders(E, Place.finite(3), 3)
    assert o.kummer_order == 3 * o.torsion_order


def test_local_identity_chain(corpus):
    from tamagawa.euler import build_S, local_data_for_bad_primes

    for rec in corpus[:12]:
        E = rec.curve()
        bad = local_data_for_bad_primes(E)
        for p in (3, 5):
            for place in build_S(E, p, bad_data=bad):
                o = assemble_local_orders(
                    E, place, p,
                    local_data=None if place.is_real else bad.get(place.prime),
                )
                assert o.relaxed_order == o.kummer_order * o.phi_p
                assert o.kummer_order == o.restricted_order * o.phi_p
                assert o.relaxed_order * o.restricted_order == o.kummer_order**2
                assert o.restricted_order <= o.kummer_order <= o.relaxed_order


def test_phi_p_via_independent_route(corpus):
    """Eq-style identity with phi_p recomputed from the raw Tamagawa number
    rather than the invariant factors."""
    for rec in corpus[:15]:
        E = rec.curve()
        for row in rec.local_data:
            data = tate_local(E, row.prime)
            for p in (3, 5, 7):
                o = assemble_local_orders(E, Place.finite(row.prime), p, local_data=data)
                c_route = p if data.c % p == 0 else 1
                assert o.relaxed_order // o.kummer_order == c_route


def test_inconsistent_local_data_detected():
    # torsion at a good prime is 1, so a fabricated nontrivial Phi[p] cannot
    # divide the Kummer order and must be flagged
    E = WeierstrassCurve(0, 0, 0, 1, 0)
    honest = tate_local(E, 7)
    fake = LocalData(
        prime=7,
        minimal_model=honest.minimal_model,
        transformation=honest.transformation,
        vdelta=4,
        kodaira=KodairaType("IV"),
        f=2,
        c=3,
        phi_geometric=FiniteAbelianGroup((3,)),
        phi_arithmetic=FiniteAbelianGroup((3,)),
        split=None,
        m=3,
    )
    with pytest.raises(InconsistentLocalData, match="inconsistent local data"):
        assemble_local_orders(E, Place.finite(7), 3, local_data=fake)


def test_place_ordering_and_serialization():
    places = [Place.finite(11), Place.real(), Place.finite(3)]
    assert sorted(places) == [Place.real(), Place.finite(3), Place.finite(11)]
    assert Place.real().serialize() == "real"
    assert Place.finite(3).serialize() == 3
    assert str(Place.real()) == "oo"
