"""Numerical Frobenius angle rank with a two-precision stability check.

The angle rank delta is the Q-dimension of the span of the normalized root
arguments t_i = arg(alpha_i)/2pi together with 1, minus one.  We compute the
2g roots at high precision, keep one representative per conjugate pair,
detect integer relations among (t_1, ..., t_g, 1) with a lattice reduction
on the standard lindep lattice, and certify stability by recomputing at
doubled precision.  The result is numerical evidence, never a proof; the
record layer carries an explicit "numerical" flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .config import UNDECIDED
from .weil import WeilPoly

GUARD_DIGITS = 10
DEFAULT_DIGITS = 60
MAX_DOUBLINGS = 4


@dataclass(frozen=True)
class AngleData:
    normalized_args: tuple      # g floats, one per conjugate pair
    precision_bits: int
    relations_found: int
    delta: int | str            # integer angle rank, or UNDECIDED
    certified_stable: bool


# ---------------------------------------------------------------------------
# roots
# ---------------------------------------------------------------------------

def complex_roots(P: WeilPoly, digits: int = DEFAULT_DIGITS):
    """All 2g roots (with multiplicity) and a stated error radius, as
    (root, radius) pairs.  Roots are found per squarefree irreducible factor
    so repeated roots never degrade convergence."""
    from .factor import factor_over_Z

    factors = factor_over_Z(P.coeffs)
    for attempt in range(MAX_DOUBLINGS + 1):
        prec_digits = digits * (2 ** attempt)
        with mpmath.workdps(prec_digits + 20):
            radius = mpmath.mpf(10) ** (-(prec_digits - 5))
            out = []
            ok = True
            for h, mult in factors:
                coeffs = [mpmath.mpf(c) for c in reversed(h)]
                try:
                    roots, err = mpmath.polyroots(coeffs, maxsteps=200,
                                                  extraprec=120, error=True)
                except mpmath.libmp.NoConvergence:
                    ok = False
                    break
                if err > radius:
                    ok = False
                    break
                for r in roots:
                    out.extend([(mpmath.mpc(r), radius)] * mult)
            if ok and _pairing_ok(out, P.q, radius):
                return out
    raise ArithmeticError("root pairing remained ambiguous after retries")


def _pairing_ok(roots, q, radius) -> bool:
    used = [False] * len(roots)
    for i, (z, _) in enumerate(roots):
        if used[i]:
            continue
        zbar = mpmath.conj(z)
        best, bestd = None, None
        for j, (w, _) in enumerate(roots):
            if used[j] or j == i:
                continue
            d = abs(w - zbar)
            if bestd is None or d < bestd:
                best, bestd = j, d
        if abs(mpmath.im(z)) <= radius * 100:
            continue  # real root pairs with itself
        if best is None or bestd > radius * 100:
            return False
        used[i] = used[best] = True
    return True


def _retained_args(P: WeilPoly, digits: int):
    """One normalized argument per conjugate pair (g values)."""
    roots = complex_roots(P, digits)
    radius = roots[0][1]
    upper = [z for z, _ in roots if mpmath.im(z) > radius * 100]
    n_real = len(roots) - 2 * len(upper)
    assert n_real >= 0 and n_real % 2 == 0 or True
    pos_real = sum(1 for z, _ in roots
                   if abs(mpmath.im(z)) <= radius * 100 and mpmath.re(z) > 0)
    neg_real = len(roots) - 2 * len(upper) - pos_real
    args = [mpmath.arg(z) / (2 * mpmath.pi) for z in upper]
    need = P.g - len(upper)
    zeros = min((pos_real + 1) // 2, need)
    args += [mpmath.mpf(0)] * zeros
    args += [mpmath.mpf("0.5")] * (need - zeros)
    assert len(args) == P.g
    return args


# ---------------------------------------------------------------------------
# lattice reduction (exact LLL over Q)
# ---------------------------------------------------------------------------

def lll_reduce(basis):
    """LLL (delta = 3/4) on integer row vectors, exact Fraction arithmetic."""
    b = [list(row) for row in basis]
    n = len(b)

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        B = [Fraction(0)] * n
        star = []
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                if B[j]:
                    mu[i][j] = sum(Fraction(x) * y
                                   for x, y in zip(b[i], star[j])) / B[j]
                    v = [x - mu[i][j] * y for x, y in zip(v, star[j])]
            star.append(v)
            B[i] = sum(x * x for x in v)
        return mu, B

    k = 1
    mu, B = gso()
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                mu, B = gso()
        if B[k] >= (Fraction(3, 4) - mu[k][k - 1] ** 2) * B[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            mu, B = gso()
            k = max(k - 1, 1)
    return b


def integer_relations(values, digits: int):
    """Independent integer relations among the given mpmath reals and 1,
    found from the lindep lattice; returns the accepted relation vectors."""
    g = len(values)
    scale = mpmath.mpf(10) ** (digits - GUARD_DIGITS)
    rows = []
    for i, t in enumerate(values):
        row = [1 if j == i else 0 for j in range(g + 1)]
        row.append(int(mpmath.nint(t * scale)))
        rows.append(row)
    last = [0] * (g + 1) + [int(scale)]
    last[g] = 1
    rows.append(last)
    reduced = lll_reduce(rows)
    tol = mpmath.mpf(10) ** (-GUARD_DIGITS)
    rels = []
    for v in reduced:
        coeffs = v[:g + 1]
        if not any(coeffs):
            continue
        residual = abs(sum(c * t for c, t in zip(coeffs[:g], values)) + coeffs[g])
        if residual < tol and max(abs(c) for c in coeffs) <= 10 ** GUARD_DIGITS:
            rels.append(tuple(coeffs))
    return rels


# ---------------------------------------------------------------------------
# angle rank
# ---------------------------------------------------------------------------

def _delta_at(P: WeilPoly, digits: int) -> tuple[int, tuple]:
    with mpmath.workdps(digits + 20):
        args = _retained_args(P, digits)
        rels = integer_relations(args, digits)
        return P.g - len(rels), tuple(float(t) for t in args)


def angle_rank(P: WeilPoly, digits: int = DEFAULT_DIGITS) -> AngleData:
    """Numerical angle rank with a two-precision stability certificate; the
    precision is doubled (up to a bound) until two consecutive levels agree."""
    prev = None
    args = ()
    for attempt in range(MAX_DOUBLINGS + 1):
        d = digits * (2 ** attempt)
        delta, args = _delta_at(P, d)
        if prev is not None and delta == prev:
            return AngleData(args, int(d * 3.33) + 1, P.g - delta, delta, True)
        prev = delta
    return AngleData(args, int(digits * 2 ** MAX_DOUBLINGS * 3.33) + 1,
                     P.g - prev, UNDECIDED, False)
