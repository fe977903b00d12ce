"""Principal polarizability of an isogeny class, with an honest Unknown.

Decision cascade (each rule is definitive when it fires):
  1. g = 1: always principally polarizable.
  2. simple with g odd: yes.
  3. simple with totally real center (h = T -+ sqrt(q) or T^2 - q): yes.
  4. g = 2: a surface class is NOT principally polarizable exactly when
     a1^2 - a2 = q, a2 < 0, and every prime divisor of a2 is 1 mod 3.
  5. simple ordinary: N = the positive square root of N_{K/Q}(pi - q/pi)
     (an integer square; computed by resultants) satisfies
     N = a_g (mod q) for q > 2, or (mod 4) for q = 2, iff polarizable.
  6. non-simple with every factor class polarizable: yes.
  7. otherwise: unknown (the CM-ramification criteria are not implemented).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .hondatate import INVALID, decompose
from .intpoly import resultant
from .newton import is_ordinary, newton_polygon
from .weil import WeilPoly


@dataclass(frozen=True)
class PPVerdict:
    status: str   # "yes" | "no" | "unknown"
    rule: str     # g1 | g2_howe | odd_g_simple | totally_real | ordinary_norm
                  # | all_factors_pp | none

    def __post_init__(self):
        if self.status == "unknown":
            assert self.rule == "none"
        if self.status == "yes":
            assert self.rule != "none"


YES = "yes"
NO = "no"
UNKNOWN = "unknown"


def _totally_real_center(h: tuple) -> bool:
    """h = T -+ sqrt(q) (degree 1) or h = T^2 - q."""
    if len(h) == 2:
        return True
    return len(h) == 3 and h[1] == 0 and h[0] < 0


def _howe_surface_not_pp(P: WeilPoly) -> bool:
    a1, a2 = P.a_coeffs
    if a1 * a1 - a2 != P.q or a2 >= 0:
        return False
    m = -a2
    d = 2
    while d * d <= m:
        if m % d == 0:
            if d % 3 != 1:
                return False
            while m % d == 0:
                m //= d
        d += 1
    if m > 1 and m % 3 != 1:
        return False
    return True


def _ordinary_norm_test(P: WeilPoly) -> bool:
    """For a simple ordinary class P = h: compare the positive square root
    of N_{K/Q}(pi - q/pi) to the middle coefficient mod q (mod 4 at q=2)."""
    h = P.coeffs
    q = P.q
    d = len(h) - 1
    # N^2 = prod(alpha_i^2 - q) / prod(alpha_i) = Res(h, T^2 - q) / q^(d/2)
    res = resultant(h, (-q, 0, 1))
    norm, rem = divmod(res, q ** (d // 2))
    assert rem == 0
    norm = abs(norm)
    N = isqrt(norm)
    assert N * N == norm, "ordinary norm is not a perfect square"
    ag = P.coeffs[P.g]  # coefficient of T^g
    mod = 4 if q == 2 else q
    return (N - ag) % mod == 0


def is_principally_polarizable(P: WeilPoly, factors=None) -> PPVerdict:
    if factors is None:
        factors = decompose(P)
    if factors is INVALID:
        raise ValueError("not a valid isogeny class")
    if P.g == 1:
        return PPVerdict(YES, "g1")
    simple = len(factors) == 1 and factors[0].n == 1
    if simple:
        if P.g % 2 == 1:
            return PPVerdict(YES, "odd_g_simple")
        if _totally_real_center(factors[0].h):
            return PPVerdict(YES, "totally_real")
    if P.g == 2:
        if _howe_surface_not_pp(P):
            return PPVerdict(NO, "g2_howe")
        return PPVerdict(YES, "g2_howe")
    if simple and is_ordinary(newton_polygon(P)):
        if _ordinary_norm_test(P):
            return PPVerdict(YES, "ordinary_norm")
        return PPVerdict(NO, "ordinary_norm")
    if not simple:
        ok = True
        for f in factors:
            # the simple factor class has polynomial h^e
            hfull = f.h
            part = hfull
            for _ in range(f.e - 1):
                part = _polymul(part, hfull)
            sub = WeilPoly(f.dim, P.q, tuple(part))
            sub_factors = decompose(sub)
            v = is_principally_polarizable(sub, sub_factors)
            if v.status != YES:
                ok = False
                break
        if ok:
            return PPVerdict(YES, "all_factors_pp")
    return PPVerdict(UNKNOWN, "none")


def _polymul(u, v):
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                out[i + j] += a * b
    return out
