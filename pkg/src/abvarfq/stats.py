"""Statistics over enumerated isogeny classes.

Volume predictions, the isogeny Sato-Tate density (exact piecewise
polynomials for g <= 4, seeded Monte Carlo for g >= 5), moments, normalized
point-count error distributions, extremal classes, log-log fits, Newton
stratum ratios, p-rank coverage, and polynomial-discriminant identities.
CSV and gnuplot emission lives at the bottom.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .config import DENSITY_MC_SAMPLES, FACTOR_SEED
from .intpoly import discriminant, resultant
from .weil import WeilPoly


# ---------------------------------------------------------------------------
# volume prediction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VolumePrediction:
    rational: Fraction      # the factor in front of q^{g(g+1)/4}
    value: float            # full prediction
    ordinary: float         # prediction times phi(q)/q


def _phi_over_q(q: int) -> Fraction:
    from .weil import prime_power
    p, _ = prime_power(q)
    return Fraction(p - 1, p)


def dipippo_howe_volume(g: int, q: int) -> VolumePrediction:
    """(2^g / g!) prod_{i=1}^g (2i/(2i-1))^{g+1-i} * q^{g(g+1)/4}."""
    r = Fraction(2 ** g, math.factorial(g))
    for i in range(1, g + 1):
        r *= Fraction(2 * i, 2 * i - 1) ** (g + 1 - i)
    value = float(r) * q ** (g * (g + 1) / 4)
    return VolumePrediction(r, value, value * float(_phi_over_q(q)))


# ---------------------------------------------------------------------------
# isogeny Sato-Tate density
# ---------------------------------------------------------------------------

def _poly_pow(base: Sequence[Fraction], k: int) -> list[Fraction]:
    out = [Fraction(1)]
    for _ in range(k):
        new = [Fraction(0)] * (len(out) + len(base) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(base):
                new[i + j] += a * b
        out = new
    return out


def _scaled(poly, scalar: Fraction) -> tuple:
    return tuple(scalar * c for c in poly)


# pieces on the nonnegative half-line: (lo, hi, coefficients constant-first)
_CLOSED_FORMS = {
    1: [(0, 2, (Fraction(1, 4),))],
    2: [(0, 4, _scaled(_poly_pow((Fraction(4), Fraction(-1)), 2),
                       Fraction(3, 2 ** 7)))],
    3: [(0, 2, _scaled((Fraction(816), Fraction(0), Fraction(-200),
                        Fraction(0), Fraction(15)), Fraction(3, 2 ** 13))),
        (2, 6, _scaled(_poly_pow((Fraction(6), Fraction(-1)), 5),
                       Fraction(3, 2 ** 15)))],
    4: [(0, 4, _scaled((Fraction(24117248), Fraction(0), Fraction(-7077888),
                        Fraction(0), Fraction(1548288), Fraction(-516096),
                        Fraction(64512), Fraction(-2304), Fraction(-72),
                        Fraction(-1)), Fraction(5, 3 * 2 ** 27))),
        (4, 8, _scaled(_poly_pow((Fraction(8), Fraction(-1)), 9),
                       Fraction(5, 3 * 2 ** 27)))],
}


class DensityModel:
    """The isogeny Sato-Tate density f_g on [-2g, 2g]: exact piecewise
    polynomial for g <= 4, seeded Monte Carlo estimator for g >= 5."""

    def __init__(self, g: int, mc_samples: Optional[int] = None,
                 seed: Optional[int] = None):
        self.g = g
        self.pieces = _CLOSED_FORMS.get(g)
        self.mc_samples = mc_samples or DENSITY_MC_SAMPLES
        self.seed = FACTOR_SEED if seed is None else seed
        self._mc_cache = None

    # -- exact path ---------------------------------------------------------

    def value(self, x: float):
        ax = abs(x)
        if ax > 2 * self.g:
            return 0.0
        if self.pieces is not None:
            return float(self._exact_value(Fraction(ax).limit_denominator(10 ** 12)))
        return self._mc_value(ax)

    def _exact_value(self, ax: Fraction) -> Fraction:
        for lo, hi, coeffs in self.pieces:
            if lo <= ax <= hi:
                acc = Fraction(0)
                for c in reversed(coeffs):
                    acc = acc * ax + c
                return acc
        return Fraction(0)

    def moment(self, r: int):
        """Integral of x^r f_g(x); exact Fraction for g <= 4, (estimate,
        standard error) pair for g >= 5."""
        if self.pieces is not None:
            if r % 2 == 1:
                return Fraction(0)
            total = Fraction(0)
            for lo, hi, coeffs in self.pieces:
                for k, c in enumerate(coeffs):
                    n = k + r + 1
                    total += c * (Fraction(hi) ** n - Fraction(lo) ** n) / n
            return 2 * total
        return self._mc_moment(r)

    def cdf(self, x: float) -> float:
        """Exact CDF for g <= 4 (used by the KS statistic)."""
        assert self.pieces is not None, "CDF needs the closed form"
        xf = Fraction(x).limit_denominator(10 ** 12)
        ax = abs(xf)
        half = Fraction(0)   # integral of f over [0, ax]
        for lo, hi, coeffs in self.pieces:
            a, b = Fraction(lo), min(Fraction(hi), ax)
            if b <= a:
                continue
            for k, c in enumerate(coeffs):
                n = k + 1
                half += c * (b ** n - a ** n) / n
        return float(Fraction(1, 2) + half if xf >= 0 else Fraction(1, 2) - half)

    # -- Monte Carlo path ---------------------------------------------------

    def _mc_sample(self):
        if self._mc_cache is None:
            rng = random.Random(self.seed)
            g = self.g
            sums, weights = [], []
            for _ in range(self.mc_samples):
                r = sorted(rng.uniform(-2.0, 2.0) for _ in range(g))
                v = 1.0
                for i in range(g):
                    for j in range(i + 1, g):
                        v *= (r[j] - r[i])
                sums.append(math.fsum(r))
                weights.append(v)
            self._mc_cache = (sums, weights)
        return self._mc_cache

    def _mc_moment(self, r: int):
        sums, weights = self._mc_sample()
        nb = 20
        size = len(sums) // nb
        ests = []
        for b in range(nb):
            s = slice(b * size, (b + 1) * size)
            num = math.fsum(w * x ** r for x, w in zip(sums[s], weights[s]))
            den = math.fsum(weights[s])
            ests.append(num / den)
        mean = math.fsum(ests) / nb
        var = math.fsum((e - mean) ** 2 for e in ests) / (nb - 1)
        return mean, math.sqrt(var / nb)

    def _mc_value(self, ax: float, bandwidth: Optional[float] = None) -> float:
        sums, weights = self._mc_sample()
        wtot = math.fsum(weights)
        if bandwidth is None:
            # Silverman's rule with the weighted standard deviation
            mean = math.fsum(w * x for x, w in zip(sums, weights)) / wtot
            var = math.fsum(w * (x - mean) ** 2
                            for x, w in zip(sums, weights)) / wtot
            bandwidth = 1.06 * math.sqrt(var) * len(sums) ** (-0.2)
        inv = 1.0 / bandwidth
        # evaluate at +-ax and average, so the estimate is exactly even
        points = (ax, -ax) if ax else (ax,)
        acc = 0.0
        for s in points:
            for x, w in zip(sums, weights):
                u = (s - x) * inv
                if abs(u) < 8:
                    acc += w * math.exp(-0.5 * u * u)
        acc /= len(points)
        return acc / (wtot * bandwidth * math.sqrt(2 * math.pi))


def sato_tate_density(g: int, x: float):
    return DensityModel(g).value(x)


def density_moment(g: int, r: int):
    return DensityModel(g).moment(r)


def gaussian_moment_prediction(m2: float, r: int) -> float:
    assert r % 2 == 0
    df = 1
    for k in range(r - 1, 0, -2):
        df *= k
    return m2 ** (r // 2) * df


# ---------------------------------------------------------------------------
# empirical error distribution
# ---------------------------------------------------------------------------

def normalized_errors(classes: Iterable[WeilPoly]) -> list[float]:
    """E = (#A(F_q) - q^g) / q^(g - 1/2) for each class."""
    out = []
    for P in classes:
        count = _eval_at_one(P)
        out.append((count - P.q ** P.g) / P.q ** (P.g - 0.5))
    return out


def _eval_at_one(P: WeilPoly) -> int:
    return sum(P.coeffs)


def histogram(values: Sequence[float], bins: int, lo: float, hi: float):
    counts = [0] * bins
    width = (hi - lo) / bins
    for v in values:
        i = int((v - lo) / width)
        if 0 <= i < bins:
            counts[i] += 1
        elif v == hi:
            counts[-1] += 1
    return [(lo + i * width, lo + (i + 1) * width, c)
            for i, c in enumerate(counts)]


def ks_distance(values: Sequence[float], model: DensityModel) -> float:
    xs = sorted(values)
    n = len(xs)
    worst = 0.0
    for i, x in enumerate(xs):
        c = model.cdf(x)
        worst = max(worst, abs((i + 1) / n - c), abs(i / n - c))
    return worst


def empirical_error_distribution(classes: Sequence[WeilPoly], bins: int = 40):
    """Histogram of E plus the KS distance to the density model."""
    gs = {P.g for P in classes}
    qs = {P.q for P in classes}
    assert len(gs) == 1 and len(qs) == 1, "classes must share (g, q)"
    g = gs.pop()
    E = normalized_errors(classes)
    model = DensityModel(g)
    # the limiting support is [-2g, 2g] but lower-order point-count terms
    # push finite-q values outside it; widen the range to keep every class
    lo = min(-2.0 * g, min(E))
    hi = max(2.0 * g, max(E)) + 1e-9
    hist = histogram(E, bins, lo, hi)
    ks = ks_distance(E, model) if model.pieces is not None else None
    return hist, ks


# ---------------------------------------------------------------------------
# extremes
# ---------------------------------------------------------------------------

def extremes(classes: Sequence[WeilPoly]):
    """(min count, argmin classes, max count, argmax classes), and whether
    the unique max/min polynomials are mirror images P_max(T) = P_min(-T)."""
    counts = [(_eval_at_one(P), P) for P in classes]
    mn = min(c for c, _ in counts)
    mx = max(c for c, _ in counts)
    mins = [P for c, P in counts if c == mn]
    maxs = [P for c, P in counts if c == mx]
    mirror = False
    if len(mins) == 1 and len(maxs) == 1:
        flipped = tuple(c if i % 2 == 0 else -c
                        for i, c in enumerate(maxs[0].coeffs))
        mirror = flipped == mins[0].coeffs
    return mn, mins, mx, maxs, mirror


def simple_extremes(classes: Sequence[WeilPoly]):
    from .hondatate import is_simple
    return extremes([P for P in classes if is_simple(P)])


# ---------------------------------------------------------------------------
# fits, strata, coverage
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FitResult:
    a: float
    b: float
    residual: float


def loglog_fit(points: Sequence[tuple[int, int]]) -> FitResult:
    """Least squares for log N = a log q + b over (q, N) points."""
    xs = [math.log(q) for q, _ in points]
    ys = [math.log(n) for _, n in points]
    n = len(xs)
    sx, sy = math.fsum(xs), math.fsum(ys)
    sxx = math.fsum(x * x for x in xs)
    sxy = math.fsum(x * y for x, y in zip(xs, ys))
    a = (n * sxy - sx * sy) / (n * sxx - sx * sx)
    b = (sy - a * sx) / n
    res = math.fsum((y - a * x - b) ** 2 for x, y in zip(xs, ys))
    return FitResult(a, b, res)


def newton_stratum_ratio(classes: Sequence[WeilPoly], P0) -> float:
    """log_q( N(g, q, P0) / N(g, q) ) with N(g,q,P0) counting classes whose
    polygon lies on or above P0."""
    from .newton import newton_polygon, polygon_le
    q = classes[0].q
    hits = sum(1 for P in classes if polygon_le(P0, newton_polygon(P)))
    return math.log(hits / len(classes)) / math.log(q)


def prank_coverage(classes: Sequence[WeilPoly]) -> dict[int, bool]:
    """Which p-ranks 0..g are attained by simple classes."""
    from .hondatate import is_simple
    from .newton import newton_polygon, p_rank
    g = classes[0].g
    seen = {f: False for f in range(g + 1)}
    for P in classes:
        if is_simple(P):
            seen[p_rank(newton_polygon(P))] = True
    return seen


def rank_prank_exclusions(pairs: Iterable[tuple[int, int]], g: int):
    """pairs of (angle rank delta, p-rank) -> excluded p-ranks per delta."""
    attained: dict[int, set] = {}
    for delta, f in pairs:
        attained.setdefault(delta, set()).add(f)
    return {delta: sorted(set(range(g + 1)) - fs)
            for delta, fs in sorted(attained.items())}


# ---------------------------------------------------------------------------
# discriminants
# ---------------------------------------------------------------------------

def disc_identity_ok(P: WeilPoly) -> bool:
    """Disc(P) = q^{g(g-1)} Disc(Q)^2 prod(beta_i^2 - 4q) with Q the real
    counterpart and beta_i its roots (the product is Res(Q, T^2 - 4q))."""
    from .weil import a_to_b, real_weil_poly
    Q = real_weil_poly(P.g, P.q, a_to_b(P.g, P.q, P.a_coeffs))
    lhs = discriminant(P.coeffs)
    prod = resultant(Q, (-4 * P.q, 0, 1))
    rhs = P.q ** (P.g * (P.g - 1)) * discriminant(Q) ** 2 * prod
    return lhs == rhs


def normalized_rd(P: WeilPoly) -> float:
    """|Disc(P)|^(1/2g) / (2g q^((2g-1)/2))."""
    d = abs(discriminant(P.coeffs))
    return d ** (1 / (2 * P.g)) / (2 * P.g * P.q ** ((2 * P.g - 1) / 2))


def disc_histogram(classes: Sequence[WeilPoly], bins: int = 40):
    vals = []
    for P in classes:
        assert disc_identity_ok(P)
        vals.append(normalized_rd(P))
    return histogram(vals, bins, 0.0, 1.0)


# ---------------------------------------------------------------------------
# CSV / gnuplot emission
# ---------------------------------------------------------------------------

def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence]):
    import csv
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow(row)


def write_plt(path: str, csv_path: str, title: str, xlabel: str, ylabel: str,
              style: str = "boxes"):
    with open(path, "w") as fh:
        fh.write(
            "set datafile separator ','\n"
            f"set title '{title}'\n"
            f"set xlabel '{xlabel}'\n"
            f"set ylabel '{ylabel}'\n"
            "set key off\n"
            f"plot '{csv_path}' every ::1 using 1:2 with {style}\n")
