"""Enumeration of Weil q-polynomials of degree 2g.

P(T) = T^2g + a1 T^(2g-1) + ... + a_2g with the functional-equation symmetry
a_{2g-i} = q^(g-i) a_i corresponds to a real counterpart
Q(T) = T^g + b1 T^(g-1) + ... + bg via P(T) = T^g Q(T + q/T);
P is a Weil polynomial exactly when Q has all roots real in [-2 sqrt q, 2 sqrt q].

The search runs over b1, ..., bg.  At level i the (g-i)-th derivative of Q is
a degree-i integer polynomial whose constant term is (g-i)! * b_i; by Rolle,
it must itself have all roots real in the interval, and the set of b_i
passing that test is a contiguous integer range.  We bracket the range with
exact power-sum and endpoint bounds, probe a central candidate, and locate
the two boundaries by bisection; every accepted coefficient is certified by
an exact Sturm count.  No floating point anywhere.
"""

from __future__ import annotations

from math import comb, factorial, isqrt
from typing import Iterator, Optional, Sequence

from .intpoly import (SqrtQInt, all_roots_real_in, deg, peval_sqrtq, trim)


# ---------------------------------------------------------------------------
# prime powers and context
# ---------------------------------------------------------------------------

def prime_power(q: int) -> tuple[int, int]:
    """q = p^a -> (p, a); raises for q that is not a prime power (q >= 2)."""
    if q < 2:
        raise ValueError("q must be >= 2")
    m = q
    p = None
    d = 2
    while d * d <= m:
        if m % d == 0:
            p = d
            while m % d == 0:
                m //= d
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            break
        d += 1
    if p is None:
        p = q
    a = 0
    m = q
    while m > 1:
        m //= p
        a += 1
    return p, a


class WeilPoly:
    """A degree-2g Weil q-polynomial candidate with its (g, q, p, a) context.

    coeffs holds the full 2g+1 integers, constant term first, so
    coeffs[2g] == 1 and coeffs[0] == q^g.
    """

    __slots__ = ("g", "q", "p", "a", "coeffs")

    def __init__(self, g: int, q: int, coeffs: Sequence[int]):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != 2 * g + 1 or coeffs[-1] != 1:
            raise ValueError("need a monic polynomial of degree 2g")
        for i in range(g + 1):
            if coeffs[i] != q ** (g - i) * coeffs[2 * g - i]:
                raise ValueError("functional-equation symmetry violated")
        if q == 1:
            p, a = 1, 1  # oracle mode
        else:
            p, a = prime_power(q)
        self.g, self.q, self.p, self.a = g, q, p, a
        self.coeffs = coeffs

    @classmethod
    def from_a(cls, g: int, q: int, a_coeffs: Sequence[int]) -> "WeilPoly":
        """Build from the g free coefficients a1..ag."""
        if len(a_coeffs) != g:
            raise ValueError("need exactly g coefficients")
        full = [0] * (2 * g + 1)
        full[2 * g] = 1
        for i, ai in enumerate(a_coeffs, start=1):
            full[2 * g - i] = int(ai)
        for i in range(g):
            full[i] = q ** (g - i) * full[2 * g - i]
        return cls(g, q, full)

    @property
    def a_coeffs(self) -> tuple[int, ...]:
        """a1..ag."""
        return tuple(self.coeffs[2 * self.g - i] for i in range(1, self.g + 1))

    @property
    def b_coeffs(self) -> tuple[int, ...]:
        return a_to_b(self.g, self.q, self.a_coeffs)

    def __eq__(self, other):
        return (isinstance(other, WeilPoly)
                and (self.g, self.q, self.coeffs) == (other.g, other.q, other.coeffs))

    def __hash__(self):
        return hash((self.g, self.q, self.coeffs))

    def __repr__(self):
        return f"WeilPoly(g={self.g}, q={self.q}, a={list(self.a_coeffs)})"


# ---------------------------------------------------------------------------
# a <-> b coefficient transforms
# ---------------------------------------------------------------------------

def b_to_a(g: int, q: int, b: Sequence[int]) -> tuple[int, ...]:
    """a_i = sum_k b_{i-2k} C(g-i+2k, k) q^k  (b_0 = 1)."""
    out = []
    for i in range(1, len(b) + 1):
        acc = 0
        for k in range(0, i // 2 + 1):
            j = i - 2 * k
            bj = 1 if j == 0 else b[j - 1]
            acc += bj * comb(g - i + 2 * k, k) * q ** k
        out.append(acc)
    return tuple(out)


def a_to_b(g: int, q: int, a: Sequence[int]) -> tuple[int, ...]:
    b: list[int] = []
    for i in range(1, len(a) + 1):
        acc = a[i - 1]
        for k in range(1, i // 2 + 1):
            j = i - 2 * k
            bj = 1 if j == 0 else b[j - 1]
            acc -= bj * comb(g - i + 2 * k, k) * q ** k
        b.append(acc)
    return tuple(b)


def real_weil_poly(g: int, q: int, b: Sequence[int]) -> tuple[int, ...]:
    """Q(T) = T^g + b1 T^(g-1) + ... + bg, constant term first."""
    out = [0] * (g + 1)
    out[g] = 1
    for i, bi in enumerate(b, start=1):
        out[g - i] = bi
    return tuple(out)


def weil_from_b(g: int, q: int, b: Sequence[int]) -> WeilPoly:
    return WeilPoly.from_a(g, q, b_to_a(g, q, b))


# ---------------------------------------------------------------------------
# search nodes
# ---------------------------------------------------------------------------

class SearchNode:
    """A prefix b1..bi with cached power sums of the (eventual) g real roots."""

    __slots__ = ("g", "q", "b", "s")

    def __init__(self, g: int, q: int, b: tuple[int, ...] = (),
                 s: Optional[tuple[int, ...]] = None):
        self.g, self.q, self.b = g, q, tuple(b)
        if s is None:
            s = _power_sums_from_b(self.b)
        self.s = s

    def child(self, bi: int) -> "SearchNode":
        b = self.b + (bi,)
        i = len(b)
        sk = -(i * bi + sum(b[j - 1] * self.s[i - j] for j in range(1, i)))
        return SearchNode(self.g, self.q, b, self.s + (sk,))

    @property
    def level(self) -> int:
        return len(self.b)

    def derivative_poly(self) -> tuple[int, ...]:
        """F_i = Q^{(g-i)} given the prefix, a degree-i integer polynomial."""
        g, i = self.g, len(self.b)
        coeffs = [0] * (i + 1)
        for j in range(0, i + 1):
            bj = 1 if j == 0 else self.b[j - 1]
            coeffs[i - j] = bj * factorial(g - j) // factorial(i - j)
        return trim(coeffs)


def _power_sums_from_b(b: tuple[int, ...]) -> tuple[int, ...]:
    s: list[int] = [0]  # s[0] unused placeholder; power sums of the g roots
    for k in range(1, len(b) + 1):
        s.append(-(k * b[k - 1] + sum(b[j - 1] * s[k - j] for j in range(1, k))))
    return tuple(s)


# ---------------------------------------------------------------------------
# pruning criteria (each is a *necessary* condition; fail = subtree empty)
# ---------------------------------------------------------------------------

def prune_power_sums(node: SearchNode) -> bool:
    """Power sums of the degree-2g polynomial (traces of Frobenius iterates)
    satisfy |s_i| <= 2g q^(i/2); compared by squaring."""
    g, q = node.g, node.q
    a = b_to_a(g, q, node.b)
    s: list[int] = [0]
    for k in range(1, node.level + 1):
        sk = -(k * a[k - 1] + sum(a[j - 1] * s[k - j] for j in range(1, k)))
        s.append(sk)
        if sk * sk > 4 * g * g * q ** k:
            return False
    return True


def prune_descartes(node: SearchNode) -> bool:
    """All coefficients of F(x + 2 sqrt q) and of (-1)^i F(-2 sqrt q - x)
    must be nonnegative (roots confined to [-2 sqrt q, 2 sqrt q])."""
    q = node.q
    f = node.derivative_poly()
    m = SqrtQInt(0, 2, q)
    return (_shift_coeffs_nonneg(f, m, q)
            and _shift_coeffs_nonneg(_negate_var(f), m, q))


def _negate_var(f):
    return trim((-c if i & 1 else c) for i, c in enumerate(f))


def _shift_coeffs_nonneg(f, m: SqrtQInt, q: int) -> bool:
    """Check all coefficients of +-f(x + m) >= 0 (sign fixed so lead > 0)."""
    # synthetic Taylor shift in Z[sqrt q]
    work = [SqrtQInt(c, 0, q) for c in f]
    n = len(work) - 1
    if n < 0:
        return True
    if work[-1].sign() < 0:
        work = [-w for w in work]
    for j in range(n):
        for k in range(n - 1, j - 1, -1):
            work[k] = work[k] + m * work[k + 1]
    return all(w.sign() >= 0 for w in work)


def _hankel_minors_ok(s: Sequence[int], kmax: int) -> bool:
    """Leading principal minors of (s_{i+j})_{0<=i,j<=k} nonnegative for all
    k <= kmax, by fraction-free Gaussian elimination (Bareiss)."""
    for k in range(kmax + 1):
        n = k + 1
        mat = [[s[i + j] for j in range(n)] for i in range(n)]
        sign = 1
        prev = 1
        singular = False
        for col in range(n - 1):
            if mat[col][col] == 0:
                swap = next((r for r in range(col + 1, n) if mat[r][col] != 0), None)
                if swap is None:
                    singular = True
                    break
                mat[col], mat[swap] = mat[swap], mat[col]
                sign = -sign
            for r in range(col + 1, n):
                for c in range(col + 1, n):
                    mat[r][c] = (mat[r][c] * mat[col][col] - mat[r][col] * mat[col][c]) // prev
                mat[r][col] = 0
            prev = mat[col][col]
        det = 0 if singular else sign * mat[n - 1][n - 1]
        if det < 0:
            return False
    return True


def prune_hamburger(node: SearchNode) -> bool:
    """Hankel matrix of power sums must be positive semidefinite; we check
    the leading principal minors that are available at this prefix."""
    s = (node.g,) + node.s[1:]
    kmax = (node.level) // 2
    return _hankel_minors_ok(s, kmax)


def prune_hausdorff(node: SearchNode, i_max: Optional[int] = None,
                    j_max: Optional[int] = None) -> bool:
    """sum over roots of (2 sqrt q - x)^i (2 sqrt q + x)^j >= 0 for all
    i + j up to the available power sums (and at most 2g)."""
    g, q = node.g, node.q
    avail = node.level
    cap = min(avail, 2 * g)
    imax = cap if i_max is None else min(i_max, cap)
    jmax = cap if j_max is None else min(j_max, cap)
    s = (g,) + node.s[1:]
    for i in range(imax + 1):
        for j in range(jmax + 1):
            if i + j > cap or i + j == 0:
                continue
            acc = SqrtQInt(0, 0, q)
            for u in range(i + 1):
                for v in range(j + 1):
                    e = i + j - u - v
                    sign = -1 if u & 1 else 1
                    c = sign * comb(i, u) * comb(j, v) * (1 << e) * s[u + v]
                    if e % 2 == 0:
                        acc = acc + SqrtQInt(c * q ** (e // 2), 0, q)
                    else:
                        acc = acc + SqrtQInt(0, c * q ** (e // 2), q)
            if acc.sign() < 0:
                return False
    return True


# ---------------------------------------------------------------------------
# the Rolle interval: valid values of the next coefficient
# ---------------------------------------------------------------------------

def _rolle_ok(node: SearchNode, bi: int) -> bool:
    child = SearchNode(node.g, node.q, node.b + (bi,))
    f = child.derivative_poly()
    q = node.q
    return all_roots_real_in(f, SqrtQInt(0, -2, q), SqrtQInt(0, 2, q))


def coefficient_range(node: SearchNode) -> tuple[int, int] | None:
    """The closed integer interval of b_{i+1} values whose extended prefix
    passes the Rolle condition, or None when empty."""
    g, q = node.g, node.q
    i = node.level + 1

    if i == 1:
        # root of the linear derivative is -b1/g; inside the interval iff
        # b1^2 <= 4 g^2 q
        m = isqrt(4 * g * g * q)
        return (-m, m)

    # bracket: the real-root power sum s_i = -(i b_i + K) is bounded by
    # g (2 sqrt q)^i in absolute value
    K = sum(node.b[j - 1] * node.s[i - j] for j in range(1, i))
    sbound = isqrt(g * g * 4 ** i * q ** i)
    lo = _ceil_div(-(K + sbound), i)
    hi = _floor_div(-K + sbound, i)

    # endpoint sign constraints, exact in Z[sqrt q]:
    # F(2 sqrt q) >= 0 and (-1)^i F(-2 sqrt q) >= 0, where the b_i term
    # contributes (g-i)! * b_i to the constant coefficient.
    base = SearchNode(g, q, node.b + (0,)).derivative_poly()
    w = factorial(g - i)
    mp = SqrtQInt(0, 2, q)
    mn = SqrtQInt(0, -2, q)
    vp = peval_sqrtq(base, mp)           # F_0(M);  F_b(M) = vp + w*b
    vn = peval_sqrtq(base, mn)
    # F_b(M) >= 0  ->  b >= -vp / w  (lower bound)
    lo = max(lo, _ceil_neg_div_sqrtq(vp, w))
    if i % 2 == 0:
        lo = max(lo, _ceil_neg_div_sqrtq(vn, w))
    else:
        hi = min(hi, _floor_neg_div_sqrtq(vn, w))
    if lo > hi:
        return None

    # probe a central candidate; the valid set is contiguous, so expand
    # outward to hit it, then bisect the two boundaries
    center = min(max(_round_div(-K, i), lo), hi)
    probe = None
    if _rolle_ok(node, center):
        probe = center
    else:
        step = 1
        while probe is None and (center - step >= lo or center + step <= hi):
            if center + step <= hi and _rolle_ok(node, center + step):
                probe = center + step
            elif center - step >= lo and _rolle_ok(node, center - step):
                probe = center - step
            step += 1
    if probe is None:
        return None

    # rightmost valid in [probe, hi]
    lo_v, hi_v = probe, hi
    while lo_v < hi_v:
        mid = (lo_v + hi_v + 1) // 2
        if _rolle_ok(node, mid):
            lo_v = mid
        else:
            hi_v = mid - 1
    right = lo_v
    # leftmost valid in [lo, probe]
    lo_v, hi_v = lo, probe
    while lo_v < hi_v:
        mid = (lo_v + hi_v) // 2
        if _rolle_ok(node, mid):
            hi_v = mid
        else:
            lo_v = mid + 1
    left = lo_v
    return (left, right)


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _floor_div(a: int, b: int) -> int:
    return a // b


def _round_div(a: int, b: int) -> int:
    return (2 * a + b) // (2 * b)


def _ceil_neg_div_sqrtq(v: SqrtQInt, w: int) -> int:
    """Smallest integer b with v + w*b >= 0, i.e. ceil(-v/w), w > 0."""
    lo, hi = -1, 1
    while (v + w * lo).sign() >= 0:
        lo *= 2
    while (v + w * hi).sign() < 0:
        hi *= 2
    # invariant: lo fails, hi passes
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if (v + w * mid).sign() >= 0:
            hi = mid
        else:
            lo = mid
    return hi


def _floor_neg_div_sqrtq(v: SqrtQInt, w: int) -> int:
    """Largest integer b with (-1)-side constraint v + w*b <= 0: floor(-v/w)."""
    lo, hi = -1, 1
    while (v + w * hi).sign() <= 0:
        hi *= 2
    while (v + w * lo).sign() > 0:
        lo *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if (v + w * mid).sign() <= 0:
            lo = mid
        else:
            hi = mid
    return lo


# ---------------------------------------------------------------------------
# the full Weil test and the enumerator
# ---------------------------------------------------------------------------

def is_weil_polynomial(g: int, q: int, coeffs: Sequence[int]) -> bool:
    """True iff coeffs (constant first, length 2g+1) is a monic degree-2g
    polynomial satisfying the functional equation whose real counterpart has
    all g roots in [-2 sqrt q, 2 sqrt q]."""
    coeffs = tuple(coeffs)
    if len(coeffs) != 2 * g + 1 or coeffs[-1] != 1:
        return False
    for i in range(g + 1):
        if coeffs[i] != q ** (g - i) * coeffs[2 * g - i]:
            return False
    a = tuple(coeffs[2 * g - i] for i in range(1, g + 1))
    b = a_to_b(g, q, a)
    Q = real_weil_poly(g, q, b)
    return all_roots_real_in(Q, SqrtQInt(0, -2, q), SqrtQInt(0, 2, q))


def _enumerate_from(node: SearchNode, use_extra_prunes: bool) -> Iterator[tuple[int, ...]]:
    g = node.g
    rng = coefficient_range(node)
    if rng is None:
        return
    for bi in range(rng[0], rng[1] + 1):
        child = node.child(bi)
        if use_extra_prunes:
            if not prune_power_sums(child):
                continue
            if not prune_descartes(child):
                continue
            if not prune_hamburger(child):
                continue
            if not prune_hausdorff(child):
                continue
        if child.level == g:
            yield child.b
        else:
            yield from _enumerate_from(child, use_extra_prunes)


def enumerate_weil_b(g: int, q: int, b1_range: Optional[tuple[int, int]] = None,
                     use_extra_prunes: bool = True) -> Iterator[tuple[int, ...]]:
    """Yield the b-coefficient tuples of every Weil q-polynomial of degree 2g,
    in lexicographic order of (a1..ag) (equivalently of (b1..bg))."""
    if g < 1:
        raise ValueError("g must be >= 1")
    if q >= 2:
        prime_power(q)  # raises for invalid q
    elif q != 1:
        raise ValueError("q must be a prime power (or 1 in oracle mode)")
    root_node = SearchNode(g, q)
    rng = coefficient_range(root_node)
    if rng is None:
        return
    lo, hi = rng
    if b1_range is not None:
        lo, hi = max(lo, b1_range[0]), min(hi, b1_range[1])
    for b1 in range(lo, hi + 1):
        node = root_node.child(b1)
        if g == 1:
            out = node.b
            assert is_weil_polynomial(g, q, weil_from_b(g, q, out).coeffs)
            yield out
        else:
            for b in _enumerate_from(node, use_extra_prunes):
                yield b


def enumerate_weil(g: int, q: int,
                   filters: Optional[Sequence] = None) -> Iterator[WeilPoly]:
    """Stream every Weil q-polynomial of degree 2g (lex order on a1..ag).

    Each emitted leaf is re-verified with is_weil_polynomial; prunes are
    necessary conditions only.
    """
    for b in enumerate_weil_b(g, q):
        P = weil_from_b(g, q, b)
        if not is_weil_polynomial(g, q, P.coeffs):
            raise AssertionError(f"enumerator emitted a non-Weil polynomial: {P}")
        if filters and not all(f(P) for f in filters):
            continue
        yield P


def top_level_range(g: int, q: int) -> tuple[int, int]:
    """The b1 (= a1) range, used to partition parallel enumeration."""
    m = isqrt(4 * g * g * q)
    return (-m, m)
