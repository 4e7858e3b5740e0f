#!/usr/bin/env python3
"""Rebuild the committed oracle fixtures under tests/fixtures/.

The fixture values are derived independently of the package code paths:

* primes >= 5: a valuation-table classifier on (v(c4), v(c6), v(disc)) with
  the classical residue criteria for the Tamagawa number, including the
  alternating-quadratic loop for the In* family;
* multiplicative reduction at any prime: node analysis from first
  principles (tangent-cone discriminant for the split test);
* additive reduction at 2 and 3: the conductor exponent carried by the
  curve label plus the component-count bookkeeping pins the type; the few
  cases whose Tamagawa number is not forced by the type carry hand-checked
  table entries;
* torsion: complete integral-point enumeration on the scaled model
  (y-coordinate squares dividing the discriminant) with exact rational
  group arithmetic, cross-checked against reduction counts.

Synthetic curves from the everywhere-semistable-friendly family
y^2 + xy = x^3 + a4 x + a6 are searched by congruence seeding to cover
every Kodaira family, split and nonsplit multiplicative reduction, and the
Tamagawa-number variants at primes >= 5.

Usage: python3 scripts/make_fixtures.py [--out tests/fixtures]
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from math import prod
from pathlib import Path

from sympy import Poly, Symbol, factorint
from sympy.ntheory.residue_ntheory import sqrt_mod

INF = 10**9


# ---------------------------------------------------------------------------
# basic arithmetic helpers (independent of the package on purpose)


def vl(n: int, ell: int) -> int:
    if n == 0:
        return INF
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def legendre(a: int, ell: int) -> int:
    a %= ell
    if a == 0:
        return 0
    return 1 if pow(a, (ell - 1) // 2, ell) == 1 else -1


def b_invariants(a):
    a1, a2, a3, a4, a6 = a
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def c_invariants(a):
    b2, b4, b6, _ = b_invariants(a)
    return b2 * b2 - 24 * b4, -(b2**3) + 36 * b2 * b4 - 216 * b6


def discriminant(a):
    b2, b4, b6, b8 = b_invariants(a)
    return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


# ---------------------------------------------------------------------------
# multiplicative reduction at any prime: node analysis


def singular_x(a, ell):
    """x-coordinate of the singular point of the reduction (v(disc) > 0)."""
    b2, b4, b6, _ = b_invariants(a)
    if ell <= 13:
        a1, a2, a3, a4, a6 = a
        for x0 in range(ell):
            for y0 in range(ell):
                on = (y0 * y0 + a1 * x0 * y0 + a3 * y0 - x0**3 - a2 * x0 * x0 - a4 * x0 - a6) % ell
                fx = (a1 * y0 - 3 * x0 * x0 - 2 * a2 * x0 - a4) % ell
                fy = (2 * y0 + a1 * x0 + a3) % ell
                if on == 0 and fx == 0 and fy == 0:
                    return x0
        raise AssertionError("no singular point found")
    # multiple root of 4x^3 + b2 x^2 + 2 b4 x + b6 via a tiny F_l Euclid
    g = [b6 % ell, (2 * b4) % ell, b2 % ell, 4]
    gp = [(2 * b4) % ell, (2 * b2) % ell, 12 % ell]

    def pmod(u, v):
        u = u[:]
        while u and u[-1] % ell == 0:
            u.pop()
        vv = v[:]
        while vv and vv[-1] % ell == 0:
            vv.pop()
        inv = pow(vv[-1], -1, ell)
        while len(u) >= len(vv):
            coef = u[-1] * inv % ell
            sh = len(u) - len(vv)
            for i, c in enumerate(vv):
                u[i + sh] = (u[i + sh] - coef * c) % ell
            while u and u[-1] % ell == 0:
                u.pop()
        return u

    x, y = g, gp
    while any(c % ell for c in y):
        x, y = y, pmod(x, y)
    x = [c % ell for c in x]
    while x and x[-1] == 0:
        x.pop()
    if len(x) == 2:
        return (-x[0] * pow(x[1], -1, ell)) % ell
    if len(x) == 3:
        return (-x[1] * pow(2 * x[2], -1, ell)) % ell
    raise AssertionError(f"unexpected gcd degree {len(x) - 1}")


def multiplicative_row(a, ell):
    """(kodaira, f, c, split) for a prime with v(c4) = 0 < v(disc)."""
    n = vl(discriminant(a), ell)
    a1, a2 = a[0], a[1]
    x0 = singular_x(a, ell)
    if ell == 2:
        assert a1 % 2 == 1, "node at 2 needs odd a1"
        split = (x0 + a2) % 2 == 0
    else:
        split = legendre(a1 * a1 + 4 * a2 + 12 * x0, ell) == 1
    c = n if split else (2 if n % 2 == 0 else 1)
    return f"In:{n}", 1, c, split


# ---------------------------------------------------------------------------
# primes >= 5: valuation-table classifier


def _instar_c(a_, b_, ell, n):
    """Tamagawa number of In* (n >= 1) at l >= 5 on y^2 = x^3 + a_ x + b_
    with v(a_) = 2, v(b_) = 3: alternating separability probes."""
    abar = (a_ // ell**2) % ell
    bbar = (b_ // ell**3) % ell
    alpha = (-3 * bbar * pow(2 * abar, -1, ell)) % ell
    r = ell * alpha
    A2, A4, A6 = 3 * r, a_ + 3 * r * r, b_ + a_ * r + r**3
    q = 2
    while True:
        # Y-stage (a3 = 0): Y^2 = A6/l^(2q); separable iff v(A6) == 2q
        v6 = vl(A6, ell)
        assert v6 >= 2 * q
        if v6 == 2 * q:
            found = 2 * q - 3
            c = 4 if legendre(A6 // ell ** (2 * q), ell) == 1 else 2
            break
        a21 = A2 // ell
        assert a21 % ell != 0
        assert vl(A4, ell) >= q + 1
        a4q1 = A4 // ell ** (q + 1)
        a62q1 = A6 // ell ** (2 * q + 1)
        disc = (a4q1 * a4q1 - 4 * a21 * a62q1) % ell
        if disc != 0:
            found = 2 * q - 2
            c = 4 if legendre(disc, ell) == 1 else 2
            break
        x0 = (-a4q1 * pow(2 * a21, -1, ell)) % ell
        rr = ell**q * x0
        A6 = A6 + A4 * rr + A2 * rr * rr + rr**3
        A4 = A4 + 2 * A2 * rr + 3 * rr * rr
        A2 = A2 + 3 * rr
        q += 1
        assert q < 80
    assert found == n, f"In* loop found n={found}, expected {n}"
    return c


def classify_ge5(a, ell):
    """(kodaira, f, c, split) at a prime >= 5 from the minimal valuations of
    (c4, c6, disc) plus the classical residue criteria."""
    assert ell >= 5
    c4, c6 = c_invariants(a)
    d = discriminant(a)
    v4, v6, vd = vl(c4, ell), vl(c6, ell), vl(d, ell)
    k = min(v4 // 4, v6 // 6, vd // 12)
    if k > 0:
        c4 = c4 // ell ** (4 * k) if c4 else 0
        c6 = c6 // ell ** (6 * k) if c6 else 0
        d //= ell ** (12 * k)
        v4, v6, vd = vl(c4, ell), vl(c6, ell), vl(d, ell)
    if vd == 0:
        return "I0", 0, 1, None
    if v4 == 0:
        n = vd
        split = legendre((-c6) % ell, ell) == 1
        c = n if split else (2 if n % 2 == 0 else 1)
        return f"In:{n}", 1, c, split
    a_, b_ = -27 * c4, -54 * c6  # same valuations, short model
    if vd == 2:
        return "II", 2, 1, None
    if vd == 3:
        return "III", 2, 2, None
    if vd == 4:
        assert v6 == 2
        c = 3 if legendre((b_ // ell**2) % ell, ell) == 1 else 1
        return "IV", 2, c, None
    if vd == 6:
        assert v4 >= 2 and v6 >= 3
        abar, bbar = (a_ // ell**2) % ell, (b_ // ell**3) % ell
        assert (-4 * abar**3 - 27 * bbar * bbar) % ell != 0, "I0* cubic must be separable"
        roots = sum(1 for t in range(ell) if (t**3 + abar * t + bbar) % ell == 0)
        return "I0*", 2, 1 + roots, None
    if v4 == 2 and vd >= 7:
        assert v6 == 3
        n = vd - 6
        return f"In*:{n}", 2, _instar_c(a_, b_, ell, n), None
    if vd == 8:
        assert v4 >= 3 and v6 == 4
        c = 3 if legendre((b_ // ell**4) % ell, ell) == 1 else 1
        return "IV*", 2, c, None
    if vd == 9:
        assert v4 == 3
        return "III*", 2, 2, None
    if vd == 10:
        assert v4 >= 4 and v6 == 5
        return "II*", 2, 1, None
    raise AssertionError(f"unclassifiable valuations v4={v4} v6={v6} vd={vd} at {ell}")


# ---------------------------------------------------------------------------
# additive reduction at 2 and 3: conductor-anchored bookkeeping

# (label, prime) -> (kodaira, c): types whose Tamagawa number is not forced;
# values hand-checked by running the step analysis on paper.
HAND_CHECKED = {
    ("27a1", 3): ("IV*", 3),
    ("27a4", 3): ("IV", 1),
    ("36a1", 2): ("IV", 3),
    ("32a3", 2): ("I0*", 1),
}

_M_TO_TYPE = {1: "II", 2: "III", 3: "IV", 5: "I0*", 7: "IV*", 8: "III*", 9: "II*"}
_FORCED_C = {"II": 1, "III": 2, "III*": 2, "II*": 1}


def small_additive_row(label, a, ell, f_label):
    """(kodaira, f, c, None) at l in {2, 3} for a globally minimal model,
    anchored by the conductor exponent from the label."""
    c4, _ = c_invariants(a)
    d = discriminant(a)
    vd = vl(d, ell)
    m = vd - f_label + 1
    v4 = vl(c4, ell)
    vj = 3 * v4 - vd if c4 else INF  # v(j) = v(c4^3) - v(disc)
    if vj < 0:
        kod = f"In*:{-vj}"
        assert m == 5 + (-vj), f"{label}@{ell}: m={m} inconsistent with In*"
    else:
        assert m in _M_TO_TYPE, f"{label}@{ell}: impossible component count m={m}"
        kod = _M_TO_TYPE[m]
    if kod in _FORCED_C:
        return kod, f_label, _FORCED_C[kod], None
    if (label, ell) in HAND_CHECKED:
        hk, hc = HAND_CHECKED[(label, ell)]
        assert hk == kod, f"{label}@{ell}: hand table says {hk}, bookkeeping says {kod}"
        return kod, f_label, hc, None
    raise LookupError(f"{label}@{ell}: type {kod} has unforced c and no hand-checked entry")


# ---------------------------------------------------------------------------
# torsion: complete integral-point enumeration on the scaled model


def _rational_cubic_integer_roots(A: int, C: int) -> list[int]:
    x = Symbol("x")
    roots = []
    for fac, _ in Poly(x**3 + A * x + C, x).factor_list()[1]:
        if fac.degree() == 1:
            c1, c0 = (int(v) for v in fac.all_coeffs())
            if c0 % c1 == 0:
                roots.append(-c0 // c1)
    return roots


def _ec_add(P, Q, A):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2 and y1 == -y2:
        return None
    if P == Q:
        lam = Fraction(3 * x1 * x1 + A, 2 * y1)
    else:
        lam = Fraction(y2 - y1, x2 - x1)
    x3 = lam * lam - x1 - x2
    return (x3, lam * (x1 - x3) - y1)


def torsion_structure(a) -> list[int]:
    """Invariant factors of E(Q)_tors via integral-point enumeration on
    Y^2 = X^3 + A X + B (A = -27 c4, B = -54 c6), where torsion points are
    integral and Y = 0 or Y^2 divides the discriminant."""
    c4, c6 = c_invariants(a)
    A, B = -27 * c4, -54 * c6
    disc = 6**12 * discriminant(a)
    ys = {0}
    fac = factorint(abs(disc))
    half = [(p, e // 2) for p, e in fac.items() if e >= 2]
    stack = [(1, 0)]
    while stack:
        y, i = stack.pop()
        if i == len(half):
            ys.add(y)
            continue
        p, emax = half[i]
        pk = 1
        for _ in range(emax + 1):
            stack.append((y * pk, i + 1))
            pk *= p
    points = set()
    for y in sorted(ys):
        for X in _rational_cubic_integer_roots(A, B - y * y):
            for yy in ({0} if y == 0 else {y, -y}):
                points.add((X, yy))
    torsion_pts = []
    orders = []
    for P in sorted(points):
        acc = P
        order = None
        for k in range(2, 17):
            acc = _ec_add(acc, P, A)
            if acc is None:
                order = k
                break
        if order is not None and order <= 12:
            torsion_pts.append(P)
            orders.append(order)
    total = len(torsion_pts) + 1
    if total == 1:
        return []
    exponent = max(orders)
    assert total % exponent == 0 and total // exponent in (1, 2), (total, exponent)
    if total == exponent:
        return [exponent]
    return [total // exponent, exponent]


def count_points_mod(a, q) -> int:
    a1, a2, a3, a4, a6 = a
    n = 1
    for x in range(q):
        rhs = (4 * x**3 + (a1 * a1 + 4 * a2) * x * x + 2 * (2 * a4 + a1 * a3) * x + (a3 * a3 + 4 * a6)) % q
        n += 1 + legendre(rhs, q)
    return n


# ---------------------------------------------------------------------------
# record assembly


def derive_record(label, a, conductor_hint=None, source="derived-table"):
    d = discriminant(a)
    assert d != 0, f"{label}: singular"
    c4, _ = c_invariants(a)
    bad = sorted(int(q) for q in factorint(abs(d)))
    rows = []
    for ell in bad:
        if vl(c4, ell) == 0:
            kod, f, c, split = multiplicative_row(a, ell)
        elif ell >= 5:
            kod, f, c, split = classify_ge5(a, ell)
            if kod == "I0":
                continue  # the model was non-minimal here; good reduction
        else:
            if conductor_hint is None:
                raise LookupError(f"{label}@{ell}: additive at a small prime needs a conductor anchor")
            f_label = vl(conductor_hint, ell)
            # a non-minimal model at 2/3 could fool the bookkeeping; this
            # family of inputs is globally minimal (checked via the conductor)
            kod, f, c, split = small_additive_row(label, a, ell, f_label)
        if kod != "I0":
            rows.append({"prime": ell, "kodaira": kod, "f": f, "c": c, "split": split})
    conductor = prod(r["prime"] ** r["f"] for r in rows)
    if conductor_hint is not None:
        assert conductor == conductor_hint, f"{label}: derived conductor {conductor} != {conductor_hint}"
    tors = torsion_structure(a)
    total = prod(tors) if tors else 1
    screens = 0
    q = 3
    while screens < 3 and q < 200:
        if all(q % r["prime"] for r in rows) and abs(d) % q != 0 and q not in (2,):
            if _isprime(q):
                assert count_points_mod(a, q) % total == 0, f"{label}: torsion {total} fails reduction check at {q}"
                screens += 1
        q += 2
    return {
        "label": label,
        "ainvs": list(a),
        "conductor": conductor,
        "local_data": rows,
        "torsion_structure": tors,
        "extras": {"source": source},
    }


def _isprime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# ---------------------------------------------------------------------------
# the published corpus (Cremona labels; conductor embedded in the label)

FAMOUS = [
    ("11a1", (0, -1, 1, -10, -20)),
    ("11a2", (0, -1, 1, -7820, -263580)),
    ("11a3", (0, -1, 1, 0, 0)),
    ("14a1", (1, 0, 1, 4, -6)),
    ("15a1", (1, 1, 1, -10, -10)),
    ("17a1", (1, -1, 1, -1, -14)),
    ("19a1", (0, 1, 1, -9, -15)),
    ("26b1", (1, -1, 1, -3, 3)),
    ("27a1", (0, 0, 1, 0, -7)),
    ("27a3", (0, 0, 1, 0, 0)),
    ("27a4", (0, 0, 1, -30, 63)),
    ("32a3", (0, 0, 0, -11, -14)),
    ("36a1", (0, 0, 0, 0, 1)),
    ("37a1", (0, 0, 1, -1, 0)),
    ("37b1", (0, 1, 1, -23, -50)),
    ("43a1", (0, 1, 1, 0, 0)),
    ("49a1", (1, -1, 0, -2, -1)),
    ("49a2", (1, -1, 0, -37, -78)),
    ("53a1", (1, -1, 1, 0, 0)),
    ("61a1", (1, 0, 0, -2, 1)),
    ("79a1", (1, 1, 1, -2, 0)),
    ("83a1", (1, 1, 1, 1, 0)),
    ("121b1", (0, -1, 1, -7, 10)),
    ("256a1", (0, 1, 0, -3, 1)),
    ("361a1", (0, 0, 1, -38, 90)),
    ("389a1", (0, 1, 1, -2, 0)),
    ("1849a1", (0, 0, 1, -860, 9707)),
    ("4489a1", (0, 0, 1, -7370, 243528)),
    ("5077a1", (0, 0, 1, -7, 6)),
    ("26569a1", (0, 0, 1, -2174420, 1234136692)),
]


def label_conductor(label: str) -> int:
    m = re.match(r"^(\d+)[a-z]", label)
    assert m, f"cannot read conductor from label {label}"
    return int(m.group(1))


# ---------------------------------------------------------------------------
# synthetic search in the everywhere-2,3-semistable family
# y^2 + xy = x^3 + a4 x + a6:  c4 = 1 - 48 a4 (odd, prime to 3),
# c6 = -1 + 72 a4 - 864 a6, disc = a4^2 - a6 - 64 a4^3 + 72 a4 a6 - 432 a6^2


def fam_disc(a4, a6):
    return a4 * a4 - a6 - 64 * a4**3 + 72 * a4 * a6 - 432 * a6 * a6


def fam(a4, a6):
    return (1, 0, 0, a4, a6)


def find_multiplicative(ell, n, want_split):
    """Solve disc == 0 mod l^n (quadratic in a6, Newton lifting) and pick a
    representative with the requested splitting behaviour."""
    for a4 in range(-40, 41):
        if (1 - 48 * a4) % ell == 0:
            continue
        q2, q1, q0 = -432, 72 * a4 - 1, a4 * a4 - 64 * a4**3
        for rho in range(ell):
            if (q2 * rho * rho + q1 * rho + q0) % ell != 0:
                continue
            if (2 * q2 * rho + q1) % ell == 0:
                continue  # need a simple root for lifting
            x = rho
            mod = ell
            while mod < ell**n:
                mod *= ell
                fx = (q2 * x * x + q1 * x + q0) % mod
                dfx = (2 * q2 * x + q1) % mod
                x = (x - fx * pow(dfx, -1, mod)) % mod
            for j in (0, 1, -1, 2, -2):
                a6 = x + ell**n * j
                d = fam_disc(a4, a6)
                if d == 0 or vl(d, ell) != n:
                    continue
                a = fam(a4, a6)
                kod, f, c, split = multiplicative_row(a, ell)
                if split == want_split:
                    return a
    raise AssertionError(f"no I{n} ({'split' if want_split else 'nonsplit'}) curve found at {ell}")


def find_additive(ell, kind, want_c):
    """Congruence-seeded search for the additive families at l >= 5."""
    inv48 = pow(48, -1, ell**8)
    # v(c4) >= v4min via a4 = inv48 mod l^v4min
    specs = {
        "II": (1, 1),
        "III": (1, 2),
        "IV": (2, 2),
        "I0*": (2, 3),
        "In*": (2, 3),
        "IV*": (3, 4),
        "III*": (3, 5),
        "II*": (4, 5),
    }
    v4min, v6target = specs[kind if not kind.startswith("In*") else "In*"]
    n_star = int(kind[4:]) if kind.startswith("In*:") else None
    base4 = inv48 % ell**v4min
    inv864 = pow(864, -1, ell ** (v6target + 3))
    for i in range(-6, 7):
        a4 = base4 + i * ell**v4min
        # c6 = -1 + 72 a4 - 864 a6 == 0 mod l^v6target
        base6 = ((72 * a4 - 1) * inv864) % ell**v6target
        for j in range(-40, 41):
            a6 = base6 + j * ell**v6target
            a = fam(a4, a6)
            if discriminant(a) == 0:
                continue
            kod, f, c, split = classify_ge5(a, ell)
            target = kind if n_star is None else f"In*:{n_star}"
            if kod == target and (want_c is None or c == want_c):
                return a
    raise AssertionError(f"no {kind} curve with c={want_c} found at {ell}")


def find_instar(ell, n, want_c):
    """In* (n >= 1) needs v(c4^3 - c6^2) = v(1728 disc) = 6 + n: engineer the
    cancellation with a square root of the unit part of c4^3."""
    inv48 = pow(48, -1, ell ** (n + 8))
    inv864 = pow(864, -1, ell ** (n + 8))
    for i in range(1, 400):
        a4 = (inv48 % ell**2) + i * ell**2
        c4 = 1 - 48 * a4
        if vl(c4, ell) != 2:
            continue
        u = c4**3 // ell**6
        if legendre(u % ell, ell) != 1:
            continue
        w = sqrt_mod(u % ell**n, ell**n, all_roots=False) if n > 1 else sqrt_mod(u % ell, ell)
        if w is None:
            continue
        for wsign in (w, (-w) % ell**n if n > 1 else (-w) % ell):
            # c6 = l^3 * W with W = wsign mod l^n gives v(c4^3 - c6^2) >= 6 + n
            for j in range(0, 8):
                W = wsign + j * ell**n
                c6_target = ell**3 * W
                # c6 = -1 + 72 a4 - 864 a6  =>  solve for a6 mod l^(n+5)
                modk = ell ** (n + 5)
                a6 = ((72 * a4 - 1 - c6_target) * inv864) % modk
                for shift in (0, -modk):
                    a = fam(a4, a6 + shift)
                    if discriminant(a) == 0:
                        continue
                    kod, f, c, split = classify_ge5(a, ell)
                    if kod == f"In*:{n}" and (want_c is None or c == want_c):
                        return a
    raise AssertionError(f"no In*({n}) with c={want_c} at {ell}")


SYNTHETIC_TARGETS = [
    # multiplicative coverage at 5 (split for p | n contributors), 7, 11
    ("syn-5-i1n", lambda: find_multiplicative(5, 1, False)),
    ("syn-5-i2n", lambda: find_multiplicative(5, 2, False)),
    ("syn-5-i3s", lambda: find_multiplicative(5, 3, True)),
    ("syn-5-i4n", lambda: find_multiplicative(5, 4, False)),
    ("syn-5-i5s", lambda: find_multiplicative(5, 5, True)),
    ("syn-5-i6s", lambda: find_multiplicative(5, 6, True)),
    ("syn-5-i7n", lambda: find_multiplicative(5, 7, False)),
    ("syn-5-i8n", lambda: find_multiplicative(5, 8, False)),
    ("syn-5-i9s", lambda: find_multiplicative(5, 9, True)),
    ("syn-5-i10s", lambda: find_multiplicative(5, 10, True)),
    ("syn-7-i3n", lambda: find_multiplicative(7, 3, False)),
    ("syn-11-i7s", lambda: find_multiplicative(11, 7, True)),
    # additive coverage at 5 and 7 with both Tamagawa variants
    ("syn-5-ii", lambda: find_additive(5, "II", 1)),
    ("syn-5-iii", lambda: find_additive(5, "III", 2)),
    ("syn-5-iv-c1", lambda: find_additive(5, "IV", 1)),
    ("syn-5-iv-c3", lambda: find_additive(5, "IV", 3)),
    ("syn-5-i0s-c1", lambda: find_additive(5, "I0*", 1)),
    ("syn-5-i0s-c2", lambda: find_additive(5, "I0*", 2)),
    ("syn-5-i0s-c4", lambda: find_additive(5, "I0*", 4)),
    ("syn-5-i1s-c2", lambda: find_instar(5, 1, 2)),
    ("syn-5-i1s-c4", lambda: find_instar(5, 1, 4)),
    ("syn-5-i2s-c2", lambda: find_instar(5, 2, 2)),
    ("syn-5-i2s-c4", lambda: find_instar(5, 2, 4)),
    ("syn-5-i3s-star", lambda: find_instar(5, 3, None)),
    ("syn-5-i4s-star", lambda: find_instar(5, 4, None)),
    ("syn-5-ivstar-c1", lambda: find_additive(5, "IV*", 1)),
    ("syn-5-ivstar-c3", lambda: find_additive(5, "IV*", 3)),
    ("syn-5-iiistar", lambda: find_additive(5, "III*", 2)),
    ("syn-5-iistar", lambda: find_additive(5, "II*", 1)),
    ("syn-7-ii", lambda: find_additive(7, "II", 1)),
    ("syn-7-iv-c3", lambda: find_additive(7, "IV", 3)),
    ("syn-7-i1s-c2", lambda: find_instar(7, 1, 2)),
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="tests/fixtures")
    args = parser.parse_args()
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)

    records = []
    for label, a in FAMOUS:
        try:
            rec = derive_record(label, a, conductor_hint=label_conductor(label))
        except (AssertionError, LookupError) as exc:
            print(f"REJECT {label}: {exc}", file=sys.stderr)
            continue
        records.append(rec)
        print(f"ok {label}: N={rec['conductor']} "
              + " ".join(f"{r['prime']}:{r['kodaira']}/f{r['f']}/c{r['c']}" for r in rec["local_data"]))

    for label, finder in SYNTHETIC_TARGETS:
        a = finder()
        rec = derive_record(label, a, source="synthetic")
        records.append(rec)
        print(f"ok {label}: ainvs={rec['ainvs']} N={rec['conductor']} "
              + " ".join(f"{r['prime']}:{r['kodaira']}/f{r['f']}/c{r['c']}" for r in rec["local_data"]))

    labels = [r["label"] for r in records]
    assert len(labels) == len(set(labels))
    for rec in records:
        path = outdir / f"{rec['label']}.json"
        path.write_text(json.dumps(rec, indent=2, sort_keys=False) + "\n")
    (outdir / "corpus.json").write_text(json.dumps({"labels": labels}, indent=2) + "\n")
    print(f"\nwrote {len(records)} fixtures to {outdir}")

    # coverage summary
    seen = {}
    for rec in records:
        for row in rec["local_data"]:
            fam_key = row["kodaira"].split(":")[0]
            seen.setdefault(fam_key, set()).add((row["c"], row.get("split")))
    for k in sorted(seen):
        print(f"  {k}: variants {sorted(seen[k])}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
