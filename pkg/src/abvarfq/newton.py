"""Normalized Newton polygons of Weil q-polynomials.

The polygon of P(T) = T^2g + a1 T^(2g-1) + ... + a_2g is the lower convex
hull of the points (i, ord_p(a_i)/ord_p(q)); it runs from (0,0) to (2g, g),
changes slope only at integer abscissae, and has lattice vertices arranged
symmetrically about the center.  Slopes are exact Fractions; the 2g slopes
(one per unit interval) classify the class: ordinary (g zeros), almost
ordinary, supersingular (all 1/2), with p-rank = multiplicity of slope 0.

Also implements the poset of "eligible" polygons in dimension g: the partial
order by lying on-or-below, the elevation (count of lattice points (i,j)
with 1 <= i <= g strictly below the polygon), and the chain-raising step
that bumps elevation by exactly one.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .weil import WeilPoly


class NewtonPolygon:
    """Stored as the tuple of 2g+1 heights at integer abscissae (Fractions)."""

    __slots__ = ("g", "heights")

    def __init__(self, g: int, heights: Sequence):
        heights = tuple(Fraction(h) for h in heights)
        if len(heights) != 2 * g + 1:
            raise ValueError("need 2g+1 heights")
        self.g = g
        self.heights = heights

    @property
    def slopes(self) -> tuple[Fraction, ...]:
        h = self.heights
        return tuple(h[i + 1] - h[i] for i in range(2 * self.g))

    @property
    def vertices(self) -> tuple[tuple[int, Fraction], ...]:
        """Breakpoints (including endpoints)."""
        h = self.heights
        n = 2 * self.g
        out = [(0, h[0])]
        for i in range(1, n):
            if h[i] - h[i - 1] != h[i + 1] - h[i]:
                out.append((i, h[i]))
        out.append((n, h[n]))
        return tuple(out)

    def __eq__(self, other):
        return (isinstance(other, NewtonPolygon)
                and (self.g, self.heights) == (other.g, other.heights))

    def __hash__(self):
        return hash((self.g, self.heights))

    def __repr__(self):
        return f"NewtonPolygon(g={self.g}, slopes={[str(s) for s in self.slopes]})"


def _ord(n: int, p: int) -> Optional[int]:
    """ord_p(n), None for n = 0 (treated as +infinity, point omitted)."""
    if n == 0:
        return None
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _lower_hull_heights(points: list[tuple[int, Fraction]], n: int) -> tuple:
    """Lower convex hull of the given points, returned as heights at 0..n.
    Assumes points at abscissae 0 and n are present."""
    pts = sorted(points)
    hull: list[tuple[int, Fraction]] = []
    for x, y in pts:
        if hull and hull[-1][0] == x:
            if y >= hull[-1][1]:
                continue
            hull.pop()
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # keep only left turns (strict convexity downward)
            if (y2 - y1) * (x - x2) >= (y - y2) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append((x, y))
    heights = []
    seg = 0
    for x in range(n + 1):
        while seg + 1 < len(hull) and hull[seg + 1][0] <= x:
            seg += 1
        if hull[seg][0] == x:
            heights.append(hull[seg][1])
        else:
            (x1, y1), (x2, y2) = hull[seg], hull[seg + 1]
            heights.append(y1 + Fraction(y2 - y1, x2 - x1) * (x - x1))
    return tuple(heights)


def newton_polygon(P: WeilPoly) -> NewtonPolygon:
    g, p, a = P.g, P.p, P.a
    n = 2 * g
    pts: list[tuple[int, Fraction]] = []
    for i in range(n + 1):
        c = P.coeffs[n - i]  # coefficient of T^(2g-i), i.e. a_i
        o = _ord(c, p)
        if o is not None:
            pts.append((i, Fraction(o, a)))
    return NewtonPolygon(g, _lower_hull_heights(pts, n))


def p_rank(N: NewtonPolygon) -> int:
    return sum(1 for s in N.slopes if s == 0)


def is_ordinary(N: NewtonPolygon) -> bool:
    return p_rank(N) == N.g


def is_almost_ordinary(N: NewtonPolygon) -> bool:
    g = N.g
    expect = (Fraction(0),) * (g - 1) + (Fraction(1, 2),) * 2 + (Fraction(1),) * (g - 1)
    return N.slopes == expect


def is_supersingular(N: NewtonPolygon) -> bool:
    return all(s == Fraction(1, 2) for s in N.slopes)


def ordinary_polygon(g: int) -> NewtonPolygon:
    return NewtonPolygon(g, [Fraction(0)] * (g + 1)
                         + [Fraction(i) for i in range(1, g + 1)])


def supersingular_polygon(g: int) -> NewtonPolygon:
    return NewtonPolygon(g, [Fraction(i, 2) for i in range(2 * g + 1)])


def is_eligible(N: NewtonPolygon, g: int) -> bool:
    """Endpoints (0,0) and (2g,g); convex; nonnegative; vertices at lattice
    points; symmetric under (i,j) -> (2g-i, j+g-i), i.e. the slope multiset
    is invariant under s -> 1-s."""
    if N.g != g or len(N.heights) != 2 * g + 1:
        return False
    h = N.heights
    if h[0] != 0 or h[2 * g] != g:
        return False
    if any(v < 0 for v in h):
        return False
    slopes = [h[i + 1] - h[i] for i in range(2 * g)]
    if any(slopes[i] > slopes[i + 1] for i in range(2 * g - 1)):
        return False
    for x, y in N.vertices:
        if y.denominator != 1:
            return False
    return all(h[2 * g - i] == h[i] + g - i for i in range(2 * g + 1))


def elevation(N: NewtonPolygon) -> int:
    """Lattice points (i,j), 1 <= i <= g, 0 <= j, strictly below the polygon."""
    total = 0
    for i in range(1, N.g + 1):
        hi = N.heights[i]
        # j = 0, 1, ..., ceil(hi)-1
        total += (hi.numerator + hi.denominator - 1) // hi.denominator
    return total


def polygon_le(N: NewtonPolygon, M: NewtonPolygon) -> bool:
    """N <= M iff M lies on or above N everywhere."""
    return all(a <= b for a, b in zip(N.heights, M.heights))


def raise_one(N: NewtonPolygon, M: NewtonPolygon) -> NewtonPolygon:
    """Given eligible N < M, return an eligible N'' with N < N'' <= M and
    elevation(N'') = elevation(N) + 1: drop the leftmost vertex pair of N
    strictly below M and take the lower hull of the remaining lattice points
    on or above N."""
    g = N.g
    if not (polygon_le(N, M) and N != M):
        raise ValueError("need N < M")
    drop = None
    for x, y in N.vertices:
        if 1 <= x <= g and y < M.heights[x]:
            drop = (x, int(y))
            break
    if drop is None:
        raise ValueError("no vertex of N lies strictly below M")
    mirror = (2 * g - drop[0], g - drop[0] + drop[1])
    pts = []
    for x in range(2 * g + 1):
        lo = N.heights[x]
        jmin = (lo.numerator + lo.denominator - 1) // lo.denominator
        for j in range(jmin, g + 1):
            if (x, j) != drop and (x, j) != mirror:
                pts.append((x, Fraction(j)))
    return NewtonPolygon(g, _lower_hull_heights(pts, 2 * g))


def eligible_polygons(g: int) -> list[NewtonPolygon]:
    """All eligible polygons in dimension g, by exhaustive search over
    nondecreasing slope multisets (denominators up to 2g)."""
    cands = sorted({Fraction(n, d)
                    for d in range(1, 2 * g + 1) for n in range(0, d + 1)})
    out: list[NewtonPolygon] = []
    seen: set = set()

    def build(idx: int, remaining: int, acc: list[Fraction]):
        if remaining == 0:
            heights = [Fraction(0)]
            for s in acc:
                heights.append(heights[-1] + s)
            if heights[-1] != g:
                return
            cand = NewtonPolygon(g, heights)
            if is_eligible(cand, g) and cand.heights not in seen:
                seen.add(cand.heights)
                out.append(cand)
            return
        if idx >= len(cands):
            return
        for k in range(0, remaining + 1):
            build(idx + 1, remaining - k, acc + [cands[idx]] * k)

    build(0, 2 * g, [])
    return out
