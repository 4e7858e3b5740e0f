"""Reduction-type machine: Kodaira types, conductor exponents, Tamagawa
numbers, component groups, minimality."""

from fractions import Fraction

import pytest

from tamagawa.curves import Transformation, WeierstrassCurve, transform
from tamagawa.tate import (
    FiniteAbelianGroup,
    KodairaType,
    is_split_multiplicative,
    phi_p_part_order,
    tate_local,
)


def test_good_reduction():
    E = WeierstrassCurve(0, 0, 0, 0, 1)
    data = tate_local(E, 5)
    assert data.kodaira == KodairaType("I0")
    assert (data.f, data.c, data.m) == (0, 1, 1)
    assert data.phi_geometric.order == 1 and data.phi_arithmetic.order == 1


def test_split_multiplicative_11a1():
    E = WeierstrassCurve(0, -1, 1, -10, -20)
    data = tate_local(E, 11)
    assert data.kodaira == KodairaType("In", 5)
    assert (data.f, data.c, data.m) == (1, 5, 5)
    assert data.split is True
    assert data.phi_arithmetic.factors == (5,)
    assert is_split_multiplicative(data)


def test_additive_small_prime_cases():
    # conductor-27 curve y^2 + y = x^3
    data = tate_local(WeierstrassCurve(0, 0, 1, 0, 0), 3)
    assert data.kodaira == KodairaType("II")
    assert (data.f, data.c) == (3, 1)
    # y^2 = x^3 + 1 at 2 and 3
    E = WeierstrassCurve(0, 0, 0, 0, 1)
    d2, d3 = tate_local(E, 2), tate_local(E, 3)
    assert d2.kodaira == KodairaType("IV") and (d2.f, d2.c) == (2, 3)
    assert d3.kodaira == KodairaType("III") and (d3.f, d3.c) == (2, 2)
    assert d2.phi_arithmetic.factors == (3,)


def test_nonsplit_multiplicative():
    # y^2 + xy = x^3 - 36x + 10 has nonsplit I2 at 5 (from the corpus search)
    E = WeierstrassCurve(1, 0, 0, -36, 10)
    data = tate_local(E, 5)
    assert data.kodaira == KodairaType("In", 2)
    assert data.split is False
    assert data.c == 2 and data.phi_arithmetic.factors == (2,)
    assert data.phi_geometric.factors == (2,)


def test_split_accessor_rejects_additive():
    data = tate_local(WeierstrassCurve(0, 0, 1, 0, 0), 3)
    with pytest.raises(ValueError, match="not multiplicative"):
        is_split_multiplicative(data)


def test_ogg_formula_everywhere(corpus):
    for rec in corpus:
        E = rec.curve()
        for row in rec.local_data:
            data = tate_local(E, row.prime)
            assert data.vdelta == data.f + data.m - 1, (rec.label, row.prime)


def test_minimality_idempotence(corpus):
    for rec in corpus[:20]:
        E = rec.curve()
        for row in rec.local_data:
            data = tate_local(E, row.prime)
            again = tate_local(data.minimal_model, row.prime)
            assert again.kodaira == data.kodaira
            assert (again.vdelta, again.f, again.c, again.m) == (data.vdelta, data.f, data.c, data.m)
            assert again.transformation == Transformation.identity() or again.minimal_model.ainvs == data.minimal_model.ainvs


def test_type_valuation_consistency(corpus):
    from tamagawa.padic import valuation

    for rec in corpus:
        E = rec.curve()
        for row in rec.local_data:
            data = tate_local(E, row.prime)
            vc4 = valuation(data.minimal_model.c4, row.prime) if data.minimal_model.c4 != 0 else 10**9
            if data.kodaira.is_multiplicative:
                assert vc4 == 0 and data.vdelta == data.kodaira.n
            else:
                assert vc4 >= 1


def test_component_group_consistency(corpus):
    for rec in corpus:
        E = rec.curve()
        for row in rec.local_data:
            data = tate_local(E, row.prime)
            assert data.c == data.phi_arithmetic.order
            assert data.phi_arithmetic.embeds_in(data.phi_geometric)
            assert data.phi_geometric.order % data.c == 0


def test_nonminimal_input_is_restarted():
    E = WeierstrassCurve(0, -1, 1, -10, -20)
    blown = transform(E, (Fraction(1, 11), 0, 0, 0))  # valuations shifted up by 12
    assert blown.is_integral
    data = tate_local(blown, 11)
    assert data.kodaira == KodairaType("In", 5)
    assert data.vdelta == 5 and data.c == 5
    # recorded transformation carries the input model to the minimal one
    assert transform(blown, data.transformation).ainvs == data.minimal_model.ainvs
    assert data.transformation.u == 11


def test_phi_p_part_order():
    E = WeierstrassCurve(0, -1, 1, -10, -20)
    data = tate_local(E, 11)
    assert phi_p_part_order(data, 5) == 5
    assert phi_p_part_order(data, 3) == 1
    good = tate_local(E, 7)
    assert phi_p_part_order(good, 3) == 1
    iv = tate_local(WeierstrassCurve(0, 0, 0, 0, 1), 2)  # IV with c = 3
    assert phi_p_part_order(iv, 3) == 3
    with pytest.raises(ValueError, match="odd p"):
        phi_p_part_order(data, 2)


def test_kodaira_serialization_roundtrip():
    for kod in [KodairaType("I0"), KodairaType("In", 5), KodairaType("II*"),
                KodairaType("In*", 3), KodairaType("IV")]:
        assert KodairaType.deserialize(kod.serialize()) == kod
    assert KodairaType("In", 5).serialize() == "In:5"
    assert KodairaType("In*", 3).serialize() == "In*:3"
    assert str(KodairaType("In", 5)) == "I5"
    assert str(KodairaType("In*", 3)) == "I3*"
    with pytest.raises(ValueError):
        KodairaType("In")  # needs n >= 1
    with pytest.raises(ValueError):
        KodairaType("V")


def test_localdata_serialization():
    data = tate_local(WeierstrassCurve(0, -1, 1, -10, -20), 11)
    rec = data.serialize()
    assert rec == {
        "prime": 11, "kodaira": "In:5", "vdelta": 5, "f": 1, "c": 5,
        "phi_geom": [5], "phi_arith": [5], "split": True, "m": 5,
    }


def test_finite_abelian_group():
    g = FiniteAbelianGroup((2, 4))
    assert g.order == 8 and g.exponent == 4
    assert g.p_torsion_order(2) == 4
    assert g.mod_p_quotient_order(2) == 4
    assert g.p_torsion_order(3) == 1
    assert FiniteAbelianGroup((2,)).embeds_in(g)
    assert not FiniteAbelianGroup((4,)).embeds_in(FiniteAbelianGroup((2, 2)))  # exponent blocks
    with pytest.raises(ValueError):
        FiniteAbelianGroup((3, 2))
    with pytest.raises(ValueError):
        FiniteAbelianGroup((1,))
    assert FiniteAbelianGroup(()).order == 1


def test_tate_rejects_bad_input():
    E = WeierstrassCurve(0, 0, 0, 0, 1)
    with pytest.raises(ValueError, match="prime"):
        tate_local(E, 6)
    frac = transform(E, (2, 0, 0, 0))
    with pytest.raises(ValueError, match="integral"):
        tate_local(frac, 5)
