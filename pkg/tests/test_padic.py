"""Arithmetic substrate: valuations, local square tests, l-adic root counting."""

import random
from fractions import Fraction

import pytest
from sympy import Poly, Symbol, discriminant

from tamagawa.padic import (
    IntegerPolynomial,
    PadicContext,
    PrecisionExhausted,
    count_roots_padic,
    find_roots_padic,
    is_square_local,
    valuation,
)

SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]


def test_valuation_examples():
    assert valuation(12, 2) == 2
    assert valuation(1, 7) == 0
    assert valuation(-405, 3) == 4
    assert valuation(Fraction(5, 8), 2) == -3


def test_valuation_of_zero_rejected():
    with pytest.raises(ValueError, match="valuation of zero"):
        valuation(0, 5)


def test_valuation_requires_prime():
    with pytest.raises(ValueError):
        valuation(10, 6)


def test_valuation_additive_on_products():
    rng = random.Random(1)
    for _ in range(500):
        ell = rng.choice(SMALL_PRIMES)
        x = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6)) * rng.choice([1, -1])
        y = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6)) * rng.choice([1, -1])
        assert valuation(x * y, ell) == valuation(x, ell) + valuation(y, ell)


def test_square_examples():
    assert is_square_local(4, 5)
    assert not is_square_local(5, 5)
    assert is_square_local(2, 7)  # 3^2 = 9 = 2 (mod 7)
    assert is_square_local(17, 2)  # 17 = 1 (mod 8), even valuation
    assert not is_square_local(3, 2)
    assert not is_square_local(2, 2)


def test_squares_are_squares():
    rng = random.Random(2)
    for _ in range(500):
        ell = rng.choice(SMALL_PRIMES)
        x = Fraction(rng.randint(1, 10**5), rng.randint(1, 10**5)) * rng.choice([1, -1])
        assert is_square_local(x * x, ell)


def test_count_roots_examples():
    assert count_roots_padic(IntegerPolynomial([-1, 0, 1]), PadicContext(3)) == 2
    assert count_roots_padic(IntegerPolynomial([-3, 0, 1]), PadicContext(3)) == 0
    assert count_roots_padic(IntegerPolynomial([1, 0, 1]), PadicContext(5)) == 2


def test_count_roots_rejects_degenerate():
    with pytest.raises(ValueError, match="constant"):
        count_roots_padic(IntegerPolynomial([]), PadicContext(5))
    with pytest.raises(ValueError, match="constant"):
        count_roots_padic(IntegerPolynomial([3]), PadicContext(5))


def test_negative_valuation_roots():
    # 25x^2 - 1 has the two roots +-1/5 in Q_5, neither integral
    f = IntegerPolynomial([-1, 0, 25])
    roots = find_roots_padic(f, PadicContext(5))
    assert len(roots) == 2
    assert sorted(r.valuation() for r in roots) == [-1, -1]
    for r in roots:
        val = f(r.approx(6))
        assert val == 0 or valuation(val, 5) >= 5  # f(x_hat) ~ 0 to the certified depth


def test_mixed_valuation_root_set():
    # (5x - 1)(x - 5)(x - 1): roots 1/5, 5, 1 all lie in Q_5
    f = IntegerPolynomial([-1, 5]) * IntegerPolynomial([-5, 1]) * IntegerPolynomial([-1, 1])
    roots = find_roots_padic(f, PadicContext(5))
    assert sorted(r.valuation() for r in roots) == [-1, 0, 1]


def _random_constructed_poly(rng: random.Random, ell: int):
    """Product of linear factors with known Q_l roots times a mod-l
    irreducible quadratic (hence without Q_l roots)."""
    roots = set()
    f = IntegerPolynomial([1])
    for _ in range(rng.randint(0, 3)):
        num = rng.randint(-30, 30)
        den = rng.choice([1, 1, ell])  # occasional negative-valuation root
        if den != 1 and num % ell == 0:
            num += 1
        f = f * IntegerPolynomial([-num, den])
        roots.add(Fraction(num, den))
    while True:
        b, c = rng.randint(0, ell - 1), rng.randint(1, ell - 1)
        disc = (b * b - 4 * c) % ell
        if pow(disc, (ell - 1) // 2, ell) == ell - 1:  # nonresidue: irreducible
            f = f * IntegerPolynomial([c, b, 1])
            break
    return f, roots


def test_count_roots_constructed_oracle():
    rng = random.Random(3)
    for _ in range(200):
        ell = rng.choice([3, 5, 7])
        f, roots = _random_constructed_poly(rng, ell)
        assert count_roots_padic(f, PadicContext(ell)) == len(roots)


def _brute_integral_root_count(coeffs, ell, M):
    """Hensel-witness enumeration modulo l^M: each residue r with
    v(f(r)) > 2 v(f'(r)) owns a unique root; Newton-settle to dedupe."""
    f = IntegerPolynomial(coeffs)
    fp = f.derivative()
    mod = ell**M
    keys = set()
    for r in range(mod):
        fr = f(r) % mod
        fpr = fp(r) % mod
        k = M if fpr == 0 else valuation(fpr, ell)
        vfr = M if fr == 0 else valuation(fr, ell)
        if vfr > 2 * k:
            t = r
            for _ in range(M + 2):
                u = fp(t)
                ku = valuation(u, ell) if u else M
                step = (f(t) // ell**ku) * pow(u // ell**ku, -1, mod) % mod
                t = (t - step) % mod
            keys.add(t % mod)
    return len(keys)


def test_count_roots_vs_brute_oracle():
    # soundness of the brute side needs v_l(disc) small; filter accordingly
    rng = random.Random(4)
    x = Symbol("x")
    params = {3: (6, 2), 5: (5, 2), 7: (4, 1)}
    checked = 0
    while checked < 120:
        ell = rng.choice([3, 5, 7])
        M, dmax = params[ell]
        deg = rng.choice([3, 4])
        coeffs = [rng.randint(-60, 60) for _ in range(deg)] + [rng.randint(1, 60)]
        disc = discriminant(Poly(list(reversed(coeffs)), x))
        if disc == 0 or (int(disc) != 0 and valuation(int(disc), ell) > dmax):
            continue
        f = IntegerPolynomial(coeffs)
        mine = sum(1 for r in find_roots_padic(f, PadicContext(ell)) if r.shift == 0)
        brute = _brute_integral_root_count(coeffs, ell, M)
        assert mine == brute, (coeffs, ell, mine, brute)
        checked += 1


def test_root_multiplicity_distinct_count():
    rng = random.Random(5)
    for _ in range(50):
        ell = rng.choice([3, 5, 7])
        f, roots = _random_constructed_poly(rng, ell)
        r = rng.randint(31, 60)  # outside the constructed root range
        g = f * IntegerPolynomial([-r, 1])
        assert count_roots_padic(g, PadicContext(ell)) == count_roots_padic(f, PadicContext(ell)) + 1
        # repeating an existing factor must not change the distinct count
        h = g * IntegerPolynomial([-r, 1])
        assert count_roots_padic(h, PadicContext(ell)) == count_roots_padic(g, PadicContext(ell))


def test_precision_context_validation():
    with pytest.raises(ValueError):
        PadicContext(4)
    with pytest.raises(ValueError):
        PadicContext(5, precision=-1)


def test_precision_ceiling_reports_undecided():
    # roots congruent to high depth force deep lift-and-split recursion;
    # a tiny ceiling must produce "undecided", never a wrong count
    f = IntegerPolynomial([-1, 1]) * IntegerPolynomial([-1 - 3**8, 1])
    with pytest.raises(PrecisionExhausted, match="undecided at precision"):
        count_roots_padic(f, PadicContext(3, precision=2, max_precision=2))
    assert count_roots_padic(f, PadicContext(3)) == 2  # default budget decides


def test_padic_root_refinement_is_consistent():
    f = IntegerPolynomial([-2, 0, 1])  # sqrt(2) in Q_7
    roots = find_roots_padic(f, PadicContext(7))
    assert len(roots) == 2
    for r in roots:
        a8, a16 = r.approx(8), r.approx(16)
        assert valuation(a8 - a16, 7) >= 8 if a8 != a16 else True
        assert valuation(f(a16), 7) >= 16
