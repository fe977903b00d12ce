"""Point counts over extensions, base change, primitivity, and twists.

For a class with characteristic polynomial P (monic, degree 2g) and
L-polynomial L(T) = T^2g P(1/T):
  #A(F_{q^r}) = prod (1 - alpha_i^r) = Res(L(T), T^r - 1) = P_r(1),
  L(T)/((1-T)(1-qT)) = exp(sum c_n T^n / n)  gives the virtual curve counts
  c_n = q^n + 1 - s_n  (s_n = power sums of Frobenius).
Base change P_r(T) = prod (T - alpha_i^r) is computed by two independent
exact methods (power-sum transform; resultant interpolation) and asserted
equal.  Twist detection finds roots of unity among root ratios via the
cyclotomic part of Res_z(Q(z), P(Tz)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm
from typing import Iterable, Optional, Sequence

from .config import DEFAULT_MIN_HORIZON, GEOM_SIMPLE_LCM_CAP, UNDECIDED
from .factor import cyclotomic_divisor_orders, factor_over_Z
from .intpoly import power_sums, poly_from_power_sums, resultant
from .weil import WeilPoly


def default_horizon(g: int) -> int:
    return max(2 * g, DEFAULT_MIN_HORIZON)


# ---------------------------------------------------------------------------
# counts
# ---------------------------------------------------------------------------

def l_polynomial(P: WeilPoly) -> tuple:
    """L(T) = T^2g P(1/T), constant term 1, constant-first tuple."""
    return tuple(reversed(P.coeffs))


def abvar_count(P: WeilPoly, r: int = 1) -> int:
    """#A(F_{q^r}), exact, via Res(L(T), T^r - 1)."""
    if r < 1:
        raise ValueError("r >= 1")
    L = l_polynomial(P)
    tr = tuple([-1] + [0] * (r - 1) + [1])
    return resultant(L, tr)


def frobenius_power_sums(P: WeilPoly, n: int) -> list[int]:
    """s_1..s_n for the 2g Frobenius eigenvalues."""
    return power_sums(P.coeffs, n)[1:]


def curve_counts(P: WeilPoly, R: Optional[int] = None) -> list[int]:
    """Virtual curve counts c_1..c_R: c_n = q^n + 1 - s_n, asserted against
    the logarithmic series of L(T)/((1-T)(1-qT))."""
    if R is None:
        R = default_horizon(P.g)
    s = frobenius_power_sums(P, R)
    counts = [P.q ** n + 1 - s[n - 1] for n in range(1, R + 1)]
    assert counts == _curve_counts_series(P, R)
    return counts


def _curve_counts_series(P: WeilPoly, R: int) -> list[int]:
    """c_n from exp(sum c_n T^n/n) = L(T)/((1-T)(1-qT)), by exact series
    logarithm over Q."""
    q = P.q
    L = l_polynomial(P)
    num = [Fraction(c) for c in L[:R + 1]] + [Fraction(0)] * max(0, R + 1 - len(L))
    # divide by (1-T)(1-qT) = 1 - (q+1)T + qT^2 as a power series
    den = [Fraction(1), Fraction(-(q + 1)), Fraction(q)]
    f = [Fraction(0)] * (R + 1)
    for n in range(R + 1):
        acc = num[n]
        for k in range(1, min(n, 2) + 1):
            acc -= den[k] * f[n - k]
        f[n] = acc
    # series log: (log f)' = f'/f; integrate
    dlog = [Fraction(0)] * R          # coefficient of T^n in (log f)', n=0..R-1
    for n in range(R):
        acc = Fraction(n + 1) * f[n + 1]
        for k in range(1, n + 1):
            acc -= dlog[n - k] * f[k]
        dlog[n] = acc
    out = []
    for n in range(1, R + 1):
        cn = dlog[n - 1]              # c_n = n * [T^n] log f / 1 ... = dlog[n-1]
        assert cn.denominator == 1
        out.append(int(cn))
    return out


# ---------------------------------------------------------------------------
# Jacobian obstructions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JacobianObstruction:
    kind: str                 # "negative_count" | "monotonicity" | "ihara"
    r: int
    m: int = 0                # for monotonicity: c_{m*r} < c_r
    footnote_form_violated: bool = False


def _ihara_violated(c: int, q: int, g: int) -> bool:
    """Standard genus-dependent Ihara bound, checked exactly:
    c > q + 1 + (sqrt((8q+1)g^2 + 4q(q-1)g) - g)/2."""
    t = 2 * (c - q - 1) + g
    if t <= 0:
        return False
    return t * t > (8 * q + 1) * g * g + 4 * q * (q - 1) * g


def _ihara_footnote_violated(c: int, q: int) -> bool:
    """The genus-free form c/q > (sqrt(8q+1) - 1)/2, checked exactly."""
    t = 2 * c + q
    if c <= 0:
        return False
    return t * t > q * q * (8 * q + 1)


def jacobian_obstructions(P: WeilPoly, R: Optional[int] = None) -> list[JacobianObstruction]:
    """Every violated necessary condition for P to contain a Jacobian; an
    empty list is not a positive certificate."""
    if R is None:
        R = default_horizon(P.g)
    c = curve_counts(P, R)
    out = []
    for r in range(1, R + 1):
        if c[r - 1] < 0:
            out.append(JacobianObstruction("negative_count", r))
    for r in range(1, R + 1):
        for m in range(2, R // r + 1):
            if c[m * r - 1] < c[r - 1]:
                out.append(JacobianObstruction("monotonicity", r, m))
    for r in range(1, R + 1):
        qr = P.q ** r
        if _ihara_violated(c[r - 1], qr, P.g):
            out.append(JacobianObstruction(
                "ihara", r,
                footnote_form_violated=_ihara_footnote_violated(c[r - 1], qr)))
    return out


# ---------------------------------------------------------------------------
# base change
# ---------------------------------------------------------------------------

def _lagrange_int(xs, ys) -> list[int]:
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for xi, yi in zip(xs, ys):
        basis = [Fraction(1)]
        denom = 1
        for xj in xs:
            if xj == xi:
                continue
            denom *= (xi - xj)
            new = [Fraction(0)] * (len(basis) + 1)
            for k, cc in enumerate(basis):
                new[k] += cc * (-xj)
                new[k + 1] += cc
            basis = new
        for k, cc in enumerate(basis):
            coeffs[k] += Fraction(yi, denom) * cc
    out = []
    for cc in coeffs:
        assert cc.denominator == 1
        out.append(int(cc))
    return out


def base_change(P: WeilPoly, r: int) -> WeilPoly:
    """P_r(T) = prod(T - alpha_i^r) over F_{q^r}; two methods, asserted equal."""
    if r < 1:
        raise ValueError("r >= 1")
    if r == 1:
        return P
    n = 2 * P.g
    # method 1: power sums s_k(P_r) = s_{rk}(P)
    s_big = power_sums(P.coeffs, r * n)
    via_ps = poly_from_power_sums(
        [n] + [s_big[r * k] for k in range(1, n + 1)], n)
    # method 2: Res_z(P(z), z^r - T), interpolated at integer T
    xs = list(range(-(n // 2), n - n // 2 + 1))
    ys = []
    for t in xs:
        g2 = tuple([-t] + [0] * (r - 1) + [1])
        ys.append(resultant(P.coeffs, g2))
    via_res = _lagrange_int(xs, ys)
    while via_res and via_res[-1] == 0:
        via_res.pop()
    if list(via_ps) != via_res:
        raise AssertionError("base-change methods disagree")
    return WeilPoly(P.g, P.q ** r, via_ps)


# ---------------------------------------------------------------------------
# primitivity
# ---------------------------------------------------------------------------

def is_primitive(P: WeilPoly, available_subfields: dict) -> tuple[bool, list[WeilPoly]]:
    """available_subfields maps each proper divisor d of a (q = p^a) to the
    iterable of classes over F_{p^d}.  Returns (primitive?, primitive models).
    """
    a = P.a
    models = []
    for d, classes in available_subfields.items():
        if d >= a or a % d != 0:
            continue
        for Q in classes:
            if base_change(Q, a // d).coeffs == P.coeffs:
                models.append(Q)
    return (len(models) == 0, models)


# ---------------------------------------------------------------------------
# twists
# ---------------------------------------------------------------------------

def _root_ratio_poly(P: WeilPoly, Q: WeilPoly) -> tuple:
    """Res_z(Q(z), P(Tz)): roots are alpha_i/beta_j (times the unit q^{g 2g}
    normalization), as an integer polynomial in T by interpolation."""
    n = 2 * P.g
    D = n * n
    xs = list(range(-(D // 2), D - D // 2 + 1))
    ys = []
    for t in xs:
        Pt = tuple(c * t ** i for i, c in enumerate(P.coeffs))
        ys.append(resultant(Q.coeffs, Pt))
    out = _lagrange_int(xs, ys)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def twist_candidates(P: WeilPoly, Q: WeilPoly):
    """lcm of the orders of cyclotomic polynomials dividing the root-ratio
    resultant: the degree at which any isogeny between twists must appear."""
    if (P.g, P.q) != (Q.g, Q.q):
        raise ValueError("need classes with the same g and q")
    ratio = _root_ratio_poly(P, Q)
    m = 1
    for n in cyclotomic_divisor_orders(ratio):
        m = lcm(m, n)
        if m > GEOM_SIMPLE_LCM_CAP:
            return UNDECIDED
    return m


def are_twists(P: WeilPoly, Q: WeilPoly):
    m = twist_candidates(P, Q)
    if m is UNDECIDED:
        return UNDECIDED
    return base_change(P, m).coeffs == base_change(Q, m).coeffs


def twist_classes(classes: Sequence[WeilPoly]) -> list[list[WeilPoly]]:
    """Partition into isogeny-twist orbits: cluster by cheap invariants
    (slope multiset, factor degree multiset, exponent multiset), then refine
    pairwise with are_twists."""
    from .hondatate import honda_tate_exponent
    from .newton import newton_polygon

    buckets: dict = {}
    for P in classes:
        fs = factor_over_Z(P.coeffs)
        key = (tuple(newton_polygon(P).slopes),
               tuple(sorted((len(h) - 1, m) for h, m in fs)),
               tuple(sorted(honda_tate_exponent(h, P.q) for h, _ in fs)))
        buckets.setdefault(key, []).append(P)
    out = []
    for group in buckets.values():
        reps: list[list[WeilPoly]] = []
        for P in group:
            for orbit in reps:
                if are_twists(P, orbit[0]) is True:
                    orbit.append(P)
                    break
            else:
                reps.append([P])
        out.extend(reps)
    return out
