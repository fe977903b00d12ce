"""Exact integer-polynomial kernel.

Dense polynomials over Z are represented as tuples of Python ints, constant
term first, with no trailing zeros (the zero polynomial is the empty tuple).
Everything here is exact: arbitrary-precision integers, Fractions where
rational intermediates are unavoidable, and arithmetic in Z[sqrt(q)] for sign
tests against the interval endpoints +-2*sqrt(q).  No floating point.

The `IntPoly` class is a thin immutable wrapper used at API boundaries; the
tuple-level functions are the hot path.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence


# ---------------------------------------------------------------------------
# tuple-level polynomial arithmetic
# ---------------------------------------------------------------------------

def trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def deg(f: Sequence[int]) -> int:
    """Degree; the zero polynomial has degree -1."""
    return len(f) - 1


def lc(f: Sequence[int]) -> int:
    return f[-1] if f else 0


def padd(f, g):
    n = max(len(f), len(g))
    return trim((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)
                for i in range(n))


def psub(f, g):
    n = max(len(f), len(g))
    return trim((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)
                for i in range(n))


def pneg(f):
    return tuple(-c for c in f)


def pscale(f, k: int):
    if k == 0:
        return ()
    return tuple(c * k for c in f)


def pmul(f, g):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return tuple(out)


def ppow(f, n: int):
    result = (1,)
    base = f
    while n:
        if n & 1:
            result = pmul(result, base)
        base = pmul(base, base)
        n >>= 1
    return result


def pderiv(f):
    return tuple(i * f[i] for i in range(1, len(f)))


def peval(f, x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def peval_frac(f, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def pdivmod_exact(f, g):
    """Quotient and remainder of f by g when g is monic (or divides exactly
    coefficient-wise at each step).  Raises if a division is not exact."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    q = [0] * max(len(f) - len(g) + 1, 0)
    r = list(f)
    dg, lg = deg(g), lc(g)
    while len(r) >= len(g) and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(g):
            break
        t, rem = divmod(r[-1], lg)
        if rem:
            raise ValueError("non-exact polynomial division over Z")
        shift = len(r) - len(g)
        q[shift] = t
        for i in range(len(g)):
            r[shift + i] -= t * g[i]
    return trim(q), trim(r)


def content(f) -> int:
    c = 0
    for a in f:
        c = gcd(c, abs(a))
        if c == 1:
            return 1
    return c


def primitive_part(f):
    c = content(f)
    if c <= 1:
        return trim(f)
    return tuple(a // c for a in f)


def pseudo_rem(f, g):
    """prem(f, g) = lc(g)^(deg f - deg g + 1) * f  mod g, computed over Z."""
    df, dg = deg(f), deg(g)
    if dg < 0:
        raise ZeroDivisionError
    if df < dg:
        return trim(f)
    l = lc(g)
    r = list(f)
    e = df - dg + 1
    while True:
        while r and r[-1] == 0:
            r.pop()
        dr = len(r) - 1
        if dr < dg:
            break
        t = r[-1]
        shift = dr - dg
        r = [c * l for c in r]
        for i in range(dg + 1):
            r[shift + i] -= t * g[i]
        e -= 1
    if e > 0:
        m = l ** e
        r = [c * m for c in r]
    return trim(r)


def zgcd(f, g):
    """Primitive gcd over Z (positive leading coefficient), via primitive PRS."""
    a, b = primitive_part(f), primitive_part(g)
    if not a:
        return b if lc(b) >= 0 else pneg(b)
    if not b:
        return a if lc(a) >= 0 else pneg(a)
    if deg(a) < deg(b):
        a, b = b, a
    ca = gcd(content(f), content(g))
    while b:
        r = pseudo_rem(a, b)
        a, b = b, primitive_part(r)
    if lc(a) < 0:
        a = pneg(a)
    if ca > 1:
        a = pscale(a, ca)
    return a


def squarefree_part(f):
    """f / gcd(f, f'), made primitive with positive leading coefficient."""
    if deg(f) <= 0:
        return trim(f)
    g = zgcd(f, pderiv(f))
    if deg(g) == 0:
        out = primitive_part(f)
    else:
        # exact division over Q, result has rational coeffs cleared to Z
        out = _exact_div_q(f, g)
        out = primitive_part(out)
    return out if lc(out) >= 0 else pneg(out)


def _exact_div_q(f, g):
    """f // g over Q assuming g | f in Q[x]; returns integer tuple after
    clearing the (necessarily trivial, post-primitivization) denominator."""
    fq = [Fraction(c) for c in f]
    dg, lg = deg(g), Fraction(lc(g))
    q = [Fraction(0)] * (len(f) - len(g) + 1)
    r = fq
    while len(r) >= len(g) and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(g):
            break
        t = r[-1] / lg
        shift = len(r) - len(g)
        q[shift] = t
        for i in range(len(g)):
            r[shift + i] -= t * g[i]
    if any(r):
        raise ValueError("non-exact division")
    den = 1
    for c in q:
        den = den * c.denominator // gcd(den, c.denominator)
    return trim(int(c * den) for c in q)


# ---------------------------------------------------------------------------
# resultant and discriminant (subresultant PRS)
# ---------------------------------------------------------------------------

def resultant(f, g) -> int:
    """Res(f, g) = lc(f)^deg(g) * prod g(alpha_i) over the roots of f.

    Computed by the subresultant polynomial remainder sequence, exactly.
    """
    f, g = trim(f), trim(g)
    if not f or not g:
        raise ValueError("resultant of the zero polynomial is undefined")
    if deg(f) == 0:
        return lc(f) ** deg(g)
    if deg(g) == 0:
        return lc(g) ** deg(f)

    s = 1
    if deg(f) < deg(g):
        f, g = g, f
        if deg(f) & 1 and deg(g) & 1:
            s = -s
    cf, cg = content(f), content(g)
    t = cf ** deg(g) * cg ** deg(f)
    a = tuple(c // cf for c in f)
    b = tuple(c // cg for c in g)

    gg, h = 1, 1
    while True:
        da, db = deg(a), deg(b)
        delta = da - db
        if da & 1 and db & 1:
            s = -s
        r = pseudo_rem(a, b)
        a = b
        denom = gg * h ** delta
        b = tuple(c // denom for c in r)
        gg = lc(a)
        h = gg ** delta // h ** (delta - 1) if delta >= 1 else h ** (1 - delta) * gg ** delta
        if not b:
            return 0
        if deg(b) == 0:
            break

    da = deg(a)
    num = lc(b) ** da
    res = num // (h ** (da - 1)) if da >= 1 else num
    return s * t * res


def discriminant(f) -> int:
    """Disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f)."""
    f = trim(f)
    d = deg(f)
    if d < 1:
        raise ValueError("discriminant requires degree >= 1")
    if d == 1:
        return 1
    fp = pderiv(f)
    if not fp:
        return 0
    r = resultant(f, fp)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    val, rem = divmod(sign * r, lc(f))
    assert rem == 0
    return val


# ---------------------------------------------------------------------------
# Z[sqrt(q)]: exact endpoint arithmetic
# ---------------------------------------------------------------------------

class SqrtQInt:
    """u + v*sqrt(q) with exact sign determination.

    When q is a perfect square the sqrt(q) part is folded into u so that
    v == 0 structurally.
    """

    __slots__ = ("u", "v", "q")

    def __init__(self, u: int, v: int, q: int):
        if q < 0:
            raise ValueError("q must be nonnegative")
        r = isqrt(q)
        if r * r == q:
            u, v = u + v * r, 0
        self.u, self.v, self.q = u, v, q

    def __add__(self, other):
        if isinstance(other, int):
            return SqrtQInt(self.u + other, self.v, self.q)
        return SqrtQInt(self.u + other.u, self.v + other.v, self.q)

    __radd__ = __add__

    def __neg__(self):
        return SqrtQInt(-self.u, -self.v, self.q)

    def __sub__(self, other):
        return self + (-other if isinstance(other, SqrtQInt) else -other)

    def __mul__(self, other):
        if isinstance(other, int):
            return SqrtQInt(self.u * other, self.v * other, self.q)
        assert self.q == other.q
        return SqrtQInt(self.u * other.u + self.v * other.v * self.q,
                        self.u * other.v + self.v * other.u, self.q)

    __rmul__ = __mul__

    def sign(self) -> int:
        u, v = self.u, self.v
        if v == 0:
            return (u > 0) - (u < 0)
        if u == 0:
            return (v > 0) - (v < 0)
        if u > 0 and v > 0:
            return 1
        if u < 0 and v < 0:
            return -1
        # mixed signs: compare u^2 against v^2 q
        diff = u * u - v * v * self.q
        if u > 0:  # v < 0: positive iff u > |v| sqrt(q)
            return (diff > 0) - (diff < 0)
        return (diff < 0) - (diff > 0)

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def __eq__(self, other):
        return (self - other).is_zero() if isinstance(other, SqrtQInt) \
            else (self.v == 0 and self.u == other)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __hash__(self):
        return hash((self.u, self.v, self.q))

    def __repr__(self):
        return f"SqrtQInt({self.u} + {self.v}*sqrt({self.q}))"


def peval_sqrtq(f, x: SqrtQInt) -> SqrtQInt:
    acc = SqrtQInt(0, 0, x.q)
    for c in reversed(f):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# Sturm sequences with exact endpoint signs
# ---------------------------------------------------------------------------

def sturm_chain(f):
    """Sturm chain of f over Z.  Each element is a positive integer multiple
    of the rational canonical Sturm chain entry, so sign behavior is exact."""
    chain = [trim(f)]
    d = pderiv(f)
    if d:
        chain.append(d)
    while deg(chain[-1]) > 0:
        a, b = chain[-2], chain[-1]
        delta = deg(a) - deg(b) + 1
        r = pseudo_rem(a, b)
        if not r:
            break
        # prem multiplies by lc(b)^delta; keep the -remainder sign convention
        if lc(b) < 0 and delta % 2 == 1:
            nxt = r
        else:
            nxt = pneg(r)
        nxt = primitive_part(nxt) if content(nxt) > 1 else nxt
        chain.append(nxt)
    return chain


def _sign_changes(signs) -> int:
    changes, prev = 0, 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            changes += 1
        prev = s
    return changes


def sturm_count_open(chain, lo: SqrtQInt, hi: SqrtQInt) -> int:
    """Number of distinct real roots in (lo, hi] by Sturm's theorem."""
    va = _sign_changes([peval_sqrtq(p, lo).sign() for p in chain])
    vb = _sign_changes([peval_sqrtq(p, hi).sign() for p in chain])
    return va - vb


def sturm_count_at_infinity(chain) -> int:
    """Number of distinct real roots on all of R."""
    at_pinf = _sign_changes([(lc(p) > 0) - (lc(p) < 0) for p in chain])
    at_minf = _sign_changes([((-1) ** deg(p)) * ((lc(p) > 0) - (lc(p) < 0))
                             for p in chain])
    return at_minf - at_pinf


def sturm_roots_in_interval(f, lo: SqrtQInt, hi: SqrtQInt) -> int:
    """Exact count of distinct real roots of f in the *closed* [lo, hi]."""
    f = trim(f)
    if deg(f) <= 0:
        return 0
    if (hi - lo).sign() < 0:
        raise ValueError("empty interval: lo > hi")
    sf = squarefree_part(f)
    if deg(sf) == 0:
        return 0
    chain = sturm_chain(sf)
    count = sturm_count_open(chain, lo, hi)
    if peval_sqrtq(sf, lo).is_zero():
        count += 1
    return count


def all_roots_real_in(f, lo: SqrtQInt, hi: SqrtQInt) -> bool:
    """True iff every complex root of f is real and lies in [lo, hi]."""
    f = trim(f)
    if deg(f) <= 0:
        return True
    sf = squarefree_part(f)
    return sturm_roots_in_interval(sf, lo, hi) == deg(sf)


# ---------------------------------------------------------------------------
# Newton power sums
# ---------------------------------------------------------------------------

def power_sums(f, n: int) -> list[int]:
    """[s_0, ..., s_n] for monic f, via Newton's identities.

    s_k = sum of alpha_i^k over the roots with multiplicity; s_0 = deg f.
    """
    f = trim(f)
    d = deg(f)
    if d < 0 or lc(f) != 1:
        raise ValueError("power sums require a monic polynomial")
    # write f = x^d + a_1 x^{d-1} + ... + a_d; Newton's identities read
    #   s_k + a_1 s_{k-1} + ... + a_{k-1} s_1 + k a_k = 0        (k <= d)
    #   s_k + a_1 s_{k-1} + ... + a_d s_{k-d}       = 0          (k >  d)
    a = [f[d - i] for i in range(d + 1)]  # a[0] = 1
    s = [d]
    for k in range(1, n + 1):
        acc = -k * a[k] if k <= d else 0
        for i in range(1, min(k, d + 1)):
            if k - i >= 1:
                acc -= a[i] * s[k - i]
        s.append(acc)
    return s


def poly_from_power_sums(s: Sequence[int], d: int):
    """Monic degree-d integer polynomial with prescribed power sums s_1..s_d.

    Raises ValueError if the reconstructed coefficients are not integers.
    """
    if len(s) < d + 1:
        raise ValueError("need s_0..s_d")
    # invert the same recurrence: a_k = -(s_k + sum_{i<k} a_i s_{k-i}) / k
    a = [Fraction(1)]
    for k in range(1, d + 1):
        acc = Fraction(s[k])
        for i in range(1, k):
            acc += a[i] * s[k - i]
        a.append(-acc / k)
    out = [0] * (d + 1)
    out[d] = 1
    for i in range(1, d + 1):
        if a[i].denominator != 1:
            raise ValueError("power-sum sequence does not yield integer coefficients")
        out[d - i] = int(a[i])
    return trim(out)


# ---------------------------------------------------------------------------
# IntPoly wrapper
# ---------------------------------------------------------------------------

class IntPoly:
    """Immutable dense integer polynomial (constant term first)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        c = trim(int(x) for x in coeffs)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, *a):
        raise AttributeError("IntPoly is immutable")

    @property
    def degree(self) -> int:
        return deg(self.coeffs)

    def __call__(self, x):
        if isinstance(x, SqrtQInt):
            return peval_sqrtq(self.coeffs, x)
        if isinstance(x, Fraction):
            return peval_frac(self.coeffs, x)
        return peval(self.coeffs, x)

    def __mul__(self, other):
        return IntPoly(pmul(self.coeffs, other.coeffs))

    def __add__(self, other):
        return IntPoly(padd(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return IntPoly(psub(self.coeffs, other.coeffs))

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"
