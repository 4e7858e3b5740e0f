"""Weierstrass models: invariants, transformations, finite-field oracle."""

import random
from fractions import Fraction

import pytest

from tamagawa.curves import (
    INFINITY,
    FiniteFieldCurve,
    SingularCurveError,
    Transformation,
    WeierstrassCurve,
    count_p_torsion_mod,
    enumerate_points_mod,
    parse_ainvs,
    transform,
)


def test_invariants_examples():
    E = WeierstrassCurve(0, 0, 0, 0, 1)  # y^2 = x^3 + 1
    # short-model formula as an independent evaluation
    assert E.discriminant == -16 * (4 * 0**3 + 27 * 1**2) == -432
    assert E.j_invariant == 0
    E2 = WeierstrassCurve(0, 0, 0, -1, 0)  # y^2 = x^3 - x
    assert E2.discriminant == -16 * (4 * (-1) ** 3) == 64
    assert E2.j_invariant == 1728
    E3 = WeierstrassCurve(0, -1, 1, -10, -20)
    assert E3.discriminant == -(11**5)


def test_standard_identities_hold():
    rng = random.Random(10)
    for _ in range(100):
        try:
            E = WeierstrassCurve(*(rng.randint(-9, 9) for _ in range(5)))
        except SingularCurveError:
            continue
        b2, b4, b6, b8 = E.b_invariants
        assert 4 * b8 == b2 * b6 - b4 * b4
        assert 1728 * E.discriminant == E.c4**3 - E.c6**2


def test_singular_rejected():
    with pytest.raises(SingularCurveError):
        WeierstrassCurve(0, 0, 0, 0, 0)


def test_transform_identity_and_scaling():
    E = WeierstrassCurve(0, 0, 0, 0, 1)
    same = transform(E, Transformation.identity())
    assert same.ainvs == E.ainvs
    halved = transform(E, (2, 0, 0, 0))
    assert halved.discriminant == Fraction(-432, 4096)
    assert halved.j_invariant == E.j_invariant
    with pytest.raises(ValueError, match="degenerate"):
        transform(E, (0, 0, 0, 0))


def test_j_invariance_under_random_transformations():
    rng = random.Random(11)
    for _ in range(100):
        try:
            E = WeierstrassCurve(*(rng.randint(-5, 5) for _ in range(5)))
        except SingularCurveError:
            continue
        u = Fraction(rng.randint(1, 6), rng.randint(1, 6))
        r, s, t = (Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3))
        E2 = transform(E, (u, r, s, t))
        assert E2.j_invariant == E.j_invariant
        assert E2.discriminant == E.discriminant / u**12


def test_transformation_composition():
    E = WeierstrassCurve(1, 0, 1, 4, -6)
    t1 = Transformation(Fraction(1), Fraction(2), Fraction(1), Fraction(-3))
    t2 = Transformation(Fraction(2), Fraction(-1), Fraction(0), Fraction(5))
    assert transform(transform(E, t1), t2).ainvs == transform(E, t1.compose(t2)).ainvs


def test_from_input_clears_denominators():
    E = WeierstrassCurve.from_input(Fraction(1, 2), 0, 0, Fraction(3, 4), 1)
    assert E.is_integral
    # same curve up to the rescaling transformation: j must agree
    raw = WeierstrassCurve.from_input(1, 0, 0, 3, 1)  # sanity: integral passthrough
    assert raw.ainvs == (1, 0, 0, 3, 1)
    direct_j = transform(E, (4, 0, 0, 0)).j_invariant
    assert E.j_invariant == direct_j


def test_parse_ainvs():
    E = parse_ainvs("0,-1,1,-10,-20")
    assert E.integer_ainvs() == (0, -1, 1, -10, -20)
    with pytest.raises(ValueError):
        parse_ainvs("1,2,3")
    with pytest.raises(ValueError):
        parse_ainvs("a,b,c,d,e")
    with pytest.raises(SingularCurveError):
        parse_ainvs("0,0,0,0,0")


def test_enumeration_counts():
    E = WeierstrassCurve(0, 0, 0, 1, 0)  # y^2 = x^3 + x
    assert len(enumerate_points_mod(E, 5)) == 4
    assert len(enumerate_points_mod(E, 7)) == 8


def test_enumeration_rejects_bad_input():
    E = WeierstrassCurve(0, -1, 1, -10, -20)  # disc = -11^5
    with pytest.raises(SingularCurveError, match="singular"):
        enumerate_points_mod(E, 11)
    with pytest.raises(ValueError, match="odd prime"):
        enumerate_points_mod(E, 2)
    with pytest.raises(ValueError, match="odd prime"):
        enumerate_points_mod(E, 4)
    with pytest.raises(ValueError, match="too large"):
        enumerate_points_mod(E, 100003)


def test_hasse_bound_on_samples():
    rng = random.Random(12)
    primes = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43]
    for _ in range(60):
        try:
            E = WeierstrassCurve(*(rng.randint(-6, 6) for _ in range(5)))
        except SingularCurveError:
            continue
        ell = rng.choice(primes)
        if int(E.discriminant) % ell == 0:
            continue
        n = len(enumerate_points_mod(E, ell))
        assert (n - (ell + 1)) ** 2 <= 4 * ell


def test_group_law_axioms_spot_checks():
    rng = random.Random(13)
    for ell in (5, 13, 41, 97):
        E = WeierstrassCurve(1, 0, 1, 4, -6)
        if int(E.discriminant) % ell == 0:
            continue
        red = FiniteFieldCurve(E, ell)
        pts = list(red.points())
        for _ in range(25):
            P, Q, R = (rng.choice(pts) for _ in range(3))
            assert red.add(red.add(P, Q), R) == red.add(P, red.add(Q, R))
            assert red.add(P, INFINITY) == P
            assert red.add(P, red.negate(P)).is_infinity
            assert red.on_curve(red.add(P, Q))


def test_count_p_torsion_examples():
    E1 = WeierstrassCurve(0, 0, 0, 1, 0)
    assert count_p_torsion_mod(E1, 7, 3) == 1
    E2 = WeierstrassCurve(0, 0, 1, 0, 0)  # y^2 + y = x^3, full 3-torsion at 7
    assert count_p_torsion_mod(E2, 7, 3) == 9
    assert count_p_torsion_mod(E2, 5, 3) == 3  # 5 != 1 (mod 3) excludes p^2


def test_p_torsion_divides_group_order_and_weil_constraint():
    rng = random.Random(14)
    primes = [5, 7, 11, 13, 17, 19, 23, 29]
    for _ in range(60):
        try:
            E = WeierstrassCurve(*(rng.randint(-5, 5) for _ in range(5)))
        except SingularCurveError:
            continue
        ell = rng.choice(primes)
        p = rng.choice([3, 5, 7])
        if int(E.discriminant) % ell == 0:
            continue
        n = len(enumerate_points_mod(E, ell))
        t = count_p_torsion_mod(E, ell, p)
        assert t in (1, p, p * p)
        assert n % t == 0
        if t == p * p:
            assert (ell - 1) % p == 0  # Weil pairing forces mu_p into F_l
