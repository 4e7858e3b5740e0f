"""Exact l-adic arithmetic: valuations, local square tests, and root counting.

Everything here is integer/Fraction arithmetic; no floating point.  Root
counting over Q_l works on integer polynomials via the Newton polygon
(for negative-valuation roots) plus recursive lift-and-split with Hensel's
lemma (for integral roots).  Results are certified: an answer is returned
only when every residue-class decision is Hensel-stable, otherwise the
precision budget is escalated and, at the hard cap, ``PrecisionExhausted``
is raised.  A wrong count is never returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "PrecisionExhausted",
    "PadicContext",
    "IntegerPolynomial",
    "PadicRoot",
    "valuation",
    "is_square_local",
    "legendre_symbol",
    "count_roots_padic",
    "find_roots_padic",
]

# Hard ceiling on working precision (base-l digits), per the escalation policy:
# start at 20*deg, double on undecided classes, give up here.
PRECISION_HARD_CAP = 2048


class PrecisionExhausted(Exception):
    """Raised when a decision is still unstable at the precision ceiling."""

    def __init__(self, precision: int, message: str = "undecided at precision") -> None:
        self.precision = precision
        super().__init__(f"{message} {precision}")


@dataclass(frozen=True)
class PadicContext:
    """Working context for computations in Q_l carried modulo l^N."""

    ell: int
    precision: int = 0  # 0 means "auto": 20 * deg(f)
    max_precision: int = PRECISION_HARD_CAP

    def __post_init__(self) -> None:
        if self.ell < 2 or not _is_prime(self.ell):
            raise ValueError(f"l must be prime, got {self.ell}")
        if self.precision < 0 or self.max_precision < 1:
            raise ValueError("precision must be >= 1 (or 0 for auto)")


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin, exact for every 64-bit input and
    # overwhelmingly reliable beyond; inputs here are prime moduli.
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _int_valuation(n: int, ell: int) -> int:
    assert n != 0
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def valuation(x: int | Fraction, ell: int) -> int:
    """l-adic valuation of a nonzero rational; additive on products."""
    if not _is_prime(ell):
        raise ValueError(f"l must be prime, got {ell}")
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero undefined")
    return _int_valuation(x.numerator, ell) - _int_valuation(x.denominator, ell)


def legendre_symbol(a: int, ell: int) -> int:
    """(a/l) for an odd prime l: 0 if l | a, 1 for residues, -1 otherwise."""
    assert ell % 2 == 1
    a %= ell
    if a == 0:
        return 0
    r = pow(a, (ell - 1) // 2, ell)
    return 1 if r == 1 else -1


def _unit_residue(x: Fraction, ell: int, modulus: int) -> int:
    """The l-adic unit part of x reduced mod ``modulus`` (a power of l)."""
    v = valuation(x, ell)
    num, den = x.numerator, x.denominator
    if v > 0:
        num //= ell**v
    elif v < 0:
        den //= ell ** (-v)
    return num * pow(den, -1, modulus) % modulus


def is_square_local(x: int | Fraction, ell: int) -> bool:
    """True iff the nonzero rational x is a square in Q_l.

    Odd l: even valuation and the unit part a quadratic residue mod l.
    l = 2: even valuation and the unit part congruent to 1 mod 8.
    """
    x = Fraction(x)
    if x == 0:
        raise ValueError("x must be nonzero")
    if not _is_prime(ell):
        raise ValueError(f"l must be prime, got {ell}")
    if valuation(x, ell) % 2 != 0:
        return False
    if ell == 2:
        return _unit_residue(x, 2, 8) == 1
    return legendre_symbol(_unit_residue(x, ell, ell), ell) == 1


# ---------------------------------------------------------------------------
# Integer polynomials


class IntegerPolynomial:
    """Dense univariate polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]) -> None:
        cs = list(int(c) for c in coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntegerPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntegerPolynomial({list(self.coeffs)})"

    def __call__(self, x: int | Fraction):
        acc: int | Fraction = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntegerPolynomial([a[i] + (b[i] if i < len(b) else 0) for i in range(len(a))])

    def __sub__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        return self + IntegerPolynomial([-c for c in other.coeffs])

    def __mul__(self, other: "IntegerPolynomial | int") -> "IntegerPolynomial":
        if isinstance(other, int):
            return IntegerPolynomial([c * other for c in self.coeffs])
        if self.is_zero or other.is_zero:
            return IntegerPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntegerPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntegerPolynomial":
        assert n >= 0
        result = IntegerPolynomial([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> "IntegerPolynomial":
        return IntegerPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def content(self) -> int:
        from math import gcd

        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive_part(self) -> "IntegerPolynomial":
        g = self.content()
        if g in (0, 1):
            return self
        return IntegerPolynomial([c // g for c in self.coeffs])

    def strip_prime_content(self, ell: int) -> "IntegerPolynomial":
        """Divide out the largest power of l dividing every coefficient."""
        assert not self.is_zero
        e = min(_int_valuation(c, ell) for c in self.coeffs if c != 0)
        if e == 0:
            return self
        q = ell**e
        return IntegerPolynomial([c // q for c in self.coeffs])

    def compose_affine(self, scale: int, offset: int) -> "IntegerPolynomial":
        """f(scale*x + offset), exact."""
        arg = IntegerPolynomial([offset, scale])
        acc = IntegerPolynomial([])
        for c in reversed(self.coeffs):
            acc = acc * arg + IntegerPolynomial([c])
        return acc

    def reverse_scale(self, ell: int, s: int) -> "IntegerPolynomial":
        """l^(s*deg) * f(x / l^s): coefficient a_i picks up l^(s*(deg-i))."""
        d = self.degree
        return IntegerPolynomial([c * ell ** (s * (d - i)) for i, c in enumerate(self.coeffs)])

    def squarefree_part(self) -> "IntegerPolynomial":
        """f / gcd(f, f'), primitive over Z; same root set, all roots simple."""
        if self.degree <= 1:
            return self.primitive_part()
        g = _rational_poly_gcd(self.coeffs, self.derivative().coeffs)
        if len(g) == 1:  # gcd is constant: already squarefree
            return self.primitive_part()
        q = _rational_poly_divide_exact(self.coeffs, g)
        return _clear_denominators(q)


def _rational_poly_gcd(a: Sequence[int], b: Sequence[int]) -> list[Fraction]:
    """Monic gcd over Q, as a Fraction coefficient list."""
    fa = [Fraction(c) for c in a]
    fb = [Fraction(c) for c in b]
    while any(fb):
        fa, fb = fb, _poly_mod(fa, fb)
    lead = fa[-1]
    return [c / lead for c in fa]


def _poly_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = a[:]
    while a and a[-1] == 0:
        a.pop()
    bb = b[:]
    while bb and bb[-1] == 0:
        bb.pop()
    while len(a) >= len(bb):
        coef = a[-1] / bb[-1]
        shift = len(a) - len(bb)
        for i, c in enumerate(bb):
            a[i + shift] -= coef * c
        while a and a[-1] == 0:
            a.pop()
        if not a:
            break
    return a


def _rational_poly_divide_exact(a: Sequence[int], b: list[Fraction]) -> list[Fraction]:
    """a / b over Q; remainder is asserted to vanish."""
    ra = [Fraction(c) for c in a]
    q = [Fraction(0)] * (len(ra) - len(b) + 1)
    while len(ra) >= len(b) and any(ra):
        coef = ra[-1] / b[-1]
        shift = len(ra) - len(b)
        q[shift] = coef
        for i, c in enumerate(b):
            ra[i + shift] -= coef * c
        while ra and ra[-1] == 0:
            ra.pop()
    assert not any(ra), "exact division expected"
    return q


def _clear_denominators(q: list[Fraction]) -> IntegerPolynomial:
    from math import lcm

    den = 1
    for c in q:
        den = lcm(den, c.denominator)
    return IntegerPolynomial([int(c * den) for c in q]).primitive_part()


# ---------------------------------------------------------------------------
# Roots in Q_l


@dataclass
class PadicRoot:
    """A certified root of f in Q_l.

    The root is x = (offset + scale * t) / l^shift where t is the unique
    zero of ``witness`` in the residue class t0 + l*Z_l, certified simple
    (witness'(t0) is an l-adic unit).  ``approx(A)`` refines by Hensel
    lifting and returns a rational x_hat with v(x - x_hat) >= A.
    """

    ell: int
    witness: IntegerPolynomial
    t0: int
    scale: int  # power of l accumulated by lift-and-split recursion
    offset: int
    shift: int  # s >= 0: the root is (integral root)/l^s
    _cache: tuple[int, int] = field(default=(0, 0), repr=False)  # (modulus_exp, lifted t)

    def approx(self, digits: int) -> Fraction:
        need = digits + self.shift
        if need < 1:
            need = 1
        t = self._lift(need)
        x_int = (self.offset + self.scale * t) % self.ell**need
        return Fraction(x_int, self.ell**self.shift)

    def valuation(self, max_digits: int = 256) -> int | None:
        """Exact v_l(x).  None means the root is exactly 0."""
        if self.shift > 0:
            return -self.shift  # integral part is a unit by construction
        z = Fraction(-self.offset, self.scale)
        if z.denominator == 1 and z % self.ell == self.t0 % self.ell and self.witness(int(z)) == 0:
            return None  # x == 0 exactly
        digits = 4
        while digits <= max_digits:
            m = self.ell**digits
            res = (self.offset + self.scale * self._lift(digits)) % m
            if res != 0:
                return _int_valuation(res, self.ell)
            digits *= 2
        raise PrecisionExhausted(max_digits)

    def _lift(self, k: int) -> int:
        exp, t = self._cache
        if exp >= k:
            return t % self.ell**k
        if exp == 0:
            exp, t = 1, self.t0 % self.ell
        f, fp = self.witness, self.witness.derivative()
        while exp < k:
            exp = min(2 * exp, k)
            m = self.ell**exp
            ft = f(t) % m
            fpt = fp(t) % m
            assert fpt % self.ell != 0, "witness root must be simple"
            t = (t - ft * pow(fpt, -1, m)) % m
        self._cache = (exp, t)
        return t


def _residue_roots(f: IntegerPolynomial, ell: int) -> list[int]:
    """Roots of f mod l.  Brute force for small l, gcd with x^l - x otherwise."""
    cs = [c % ell for c in f.coeffs]
    if ell <= 3000:
        out = []
        for r in range(ell):
            acc = 0
            for c in reversed(cs):
                acc = (acc * r + c) % ell
            if acc == 0:
                out.append(r)
        return out
    # x^l mod f via repeated squaring over F_l, then gcd picks the split part.
    g = _gcd_with_frobenius(cs, ell)
    return _linear_roots_mod(g, ell)


def _poly_mod_ell(a: list[int], b: list[int], ell: int) -> list[int]:
    a = [c % ell for c in a]
    while a and a[-1] == 0:
        a.pop()
    binv = pow(b[-1], -1, ell)
    while len(a) >= len(b):
        coef = a[-1] * binv % ell
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + shift] = (a[i + shift] - coef * c) % ell
        while a and a[-1] == 0:
            a.pop()
    return a


def _poly_mulmod_ell(a: list[int], b: list[int], mod: list[int], ell: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % ell
    return _poly_mod_ell(out, mod, ell)


def _poly_gcd_mod_ell(a: list[int], b: list[int], ell: int) -> list[int]:
    a = [c % ell for c in a]
    b = [c % ell for c in b]
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    while b:
        a, b = b, _poly_mod_ell(a, b, ell)
    if a:
        inv = pow(a[-1], -1, ell)
        a = [c * inv % ell for c in a]
    return a


def _gcd_with_frobenius(cs: list[int], ell: int) -> list[int]:
    """gcd(f, x^l - x) over F_l: the product of the distinct linear factors."""
    f = [c % ell for c in cs]
    while f and f[-1] == 0:
        f.pop()
    if len(f) <= 1:
        return []  # nonzero constant mod l: no residue roots
    if len(f) == 2:
        return [c * pow(f[-1], -1, ell) % ell for c in f]
    # x^l mod f
    xp = [0, 1]
    result = [1]
    e = ell
    while e:
        if e & 1:
            result = _poly_mulmod_ell(result, xp, f, ell)
        xp = _poly_mulmod_ell(xp, xp, f, ell)
        e >>= 1
    # result = x^l mod f; subtract x
    while len(result) < 2:
        result.append(0)
    result[1] = (result[1] - 1) % ell
    return _poly_gcd_mod_ell(f, result, ell)


def _linear_roots_mod(g: list[int], ell: int) -> list[int]:
    """Roots of a product of distinct linear factors over F_l (degree <= 3 here
    in practice); splits by gcd with (x + c)^((l-1)/2) - 1 for deterministic c."""
    deg = len(g) - 1
    if deg <= 0:
        return []
    if deg == 1:
        return [(-g[0] * pow(g[1], -1, ell)) % ell]
    roots: list[int] = []
    stack = [g]
    shift = 0
    while stack:
        h = stack.pop()
        d = len(h) - 1
        if d == 0:
            continue
        if d == 1:
            roots.append((-h[0] * pow(h[1], -1, ell)) % ell)
            continue
        # split h using gcd with (x + shift)^((l-1)/2) - 1
        base = [shift % ell, 1]
        acc = [1]
        e = (ell - 1) // 2
        b = base
        while e:
            if e & 1:
                acc = _poly_mulmod_ell(acc, b, h, ell)
            b = _poly_mulmod_ell(b, b, h, ell)
            e >>= 1
        if acc:
            acc[0] = (acc[0] - 1) % ell
        g1 = _poly_gcd_mod_ell(h, acc, ell)
        shift += 1
        if 0 < len(g1) - 1 < d:
            g2 = _poly_divide_mod_ell(h, g1, ell)
            stack.extend([g1, g2])
        else:
            stack.append(h)  # retry with the next shift
        assert shift < 4 * ell + 64, "root splitting failed to converge"
    return sorted(roots)


def _poly_divide_mod_ell(a: list[int], b: list[int], ell: int) -> list[int]:
    a = [c % ell for c in a]
    q = [0] * (len(a) - len(b) + 1)
    binv = pow(b[-1], -1, ell)
    while len(a) >= len(b) and any(a):
        coef = a[-1] * binv % ell
        shift = len(a) - len(b)
        q[shift] = coef
        for i, c in enumerate(b):
            a[i + shift] = (a[i + shift] - coef * c) % ell
        while a and a[-1] == 0:
            a.pop()
    return q


def _integral_root_certs(
    f: IntegerPolynomial,
    ell: int,
    budget: int,
    skip_zero_residue: bool = False,
) -> list[tuple[IntegerPolynomial, int, int, int]]:
    """Certificates (witness, t0, scale, offset) for the distinct roots of f
    in Z_l.  f must be squarefree and l-primitive.  Recursion: a residue with
    a simple reduction is Hensel-certified; a singular residue is refined by
    substituting x = r + l*t and recursing on the l-primitive part.
    """
    if budget <= 0:
        raise PrecisionExhausted(budget if budget > 0 else 0)
    certs: list[tuple[IntegerPolynomial, int, int, int]] = []
    fp = f.derivative()
    for r in _residue_roots(f, ell):
        if skip_zero_residue and r == 0:
            continue
        if fp(r) % ell != 0:
            certs.append((f, r, 1, 0))
        else:
            g = f.compose_affine(ell, r).strip_prime_content(ell)
            for witness, t0, scale, offset in _integral_root_certs(g, ell, budget - 1):
                certs.append((witness, t0, scale * ell, r + ell * offset))
    return certs


def _newton_polygon_positive_slopes(f: IntegerPolynomial, ell: int) -> list[int]:
    """Positive integer slopes of the Newton polygon of f; a slope s means
    candidate roots of valuation -s."""
    pts = [(i, _int_valuation(c, ell)) for i, c in enumerate(f.coeffs) if c != 0]
    # lower convex hull, left to right
    hull: list[tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    slopes = set()
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        num, den = y2 - y1, x2 - x1  # roots on this segment have valuation -num/den
        if num > 0 and num % den == 0:
            slopes.add(num // den)
    return sorted(slopes)


def find_roots_padic(f: IntegerPolynomial, ctx: PadicContext) -> list[PadicRoot]:
    """All distinct roots of f in Q_l (not just Z_l), as certified PadicRoots."""
    if f.is_zero or f.degree == 0:
        raise ValueError("zero or constant polynomial has no well-defined root count")
    ell = ctx.ell
    f0 = f.primitive_part().squarefree_part().strip_prime_content(ell)
    budget = ctx.precision if ctx.precision else 20 * max(1, f0.degree)
    while True:
        try:
            return _find_roots_with_budget(f0, ell, budget)
        except PrecisionExhausted:
            if budget >= ctx.max_precision:
                raise PrecisionExhausted(budget)
            budget = min(2 * budget, ctx.max_precision)


def _find_roots_with_budget(f0: IntegerPolynomial, ell: int, budget: int) -> list[PadicRoot]:
    roots: list[PadicRoot] = []
    for witness, t0, scale, offset in _integral_root_certs(f0, ell, budget):
        roots.append(PadicRoot(ell, witness, t0, scale, offset, 0))
    for s in _newton_polygon_positive_slopes(f0, ell):
        g = f0.reverse_scale(ell, s).strip_prime_content(ell)
        for witness, t0, scale, offset in _integral_root_certs(g, ell, budget, skip_zero_residue=True):
            roots.append(PadicRoot(ell, witness, t0, scale, offset, s))
    return roots


def count_roots_padic(f: IntegerPolynomial, ctx: PadicContext) -> int:
    """Exact number of distinct roots of f in Q_l."""
    return len(find_roots_padic(f, ctx))


def value_is_square_at_root(
    h: IntegerPolynomial,
    root: PadicRoot,
    max_precision: int = PRECISION_HARD_CAP,
) -> bool:
    """Decide whether h(x) is a square in Q_l for a certified root x.

    Requires h(x) != 0 (guaranteed by callers: the torsion-x polynomial and
    the y-quadratic discriminant share no root for odd torsion orders).
    Evaluates h at rational approximations of x and stops as soon as the
    valuation and unit part of h(x) are certified stable; escalates the
    approximation precision otherwise.
    """
    ell = root.ell
    s = root.shift
    # v(h(x) - h(x_hat)) >= A + min_i (v(c_i) - (i-1)*s) when v(x - x_hat) >= A
    slack = min(
        (_int_valuation(c, ell) if c != 0 else 10**9) - (i - 1) * s
        for i, c in enumerate(h.coeffs)
        if i >= 1
    )
    margin = 3 if ell == 2 else 1
    digits = max(8, 4 * s + 8)
    while digits <= max_precision:
        x_hat = root.approx(digits)
        val = h(x_hat)
        if val != 0:
            v = valuation(val, ell)
            if v + margin <= digits + slack:
                if v % 2 != 0:
                    return False
                if ell == 2:
                    return _unit_residue(val, 2, 8) == 1
                return legendre_symbol(_unit_residue(val, ell, ell), ell) == 1
        digits *= 2
    raise PrecisionExhausted(max_precision)
