"""Factorization of monic integer polynomials and cyclotomic-part extraction.

Zassenhaus style: Yun squarefree decomposition, factorization mod a good
prime, quadratic Hensel lifting to above the Mignotte bound, then subset
recombination (fine at degree <= 16, which covers everything we enumerate).

The cyclotomic part is found without factoring, by the gcd-with-transforms
method: iterated gcds with f(x^2), f(-x) images and Graeffe root-squaring.
A squarefree g with g | g(x^2) and g(0) != 0 has all roots closed under
squaring, hence all roots are roots of unity.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import gcd as igcd, isqrt

from . import gfp
from .config import FACTOR_DEGREE_CAP
from .intpoly import (content, deg, lc, padd, pdivmod_exact, pmul, pneg,
                      pscale, psub, squarefree_part, trim, zgcd, _exact_div_q,
                      pderiv)


# ---------------------------------------------------------------------------
# cyclotomic polynomials
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int):
    """Phi_n as a coefficient tuple (constant first)."""
    if n < 1:
        raise ValueError("n must be positive")
    f = tuple([-1] + [0] * (n - 1) + [1])  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            f, r = pdivmod_exact(f, cyclotomic_polynomial(d))
            assert not r
    return f


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    out, m = n, n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out -= out // m
    return out


def cyclotomic_order(f) -> int | None:
    """If f == Phi_n for some n, return n, else None."""
    f = trim(f)
    d = deg(f)
    if d < 1:
        return None
    # phi(n) = d bounds n <= largest n with phi(n) = d; scan a safe window
    n = 1
    bound = 1
    # all n with phi(n) <= d satisfy n <= d * 2^(number of odd prime factors)...
    # cheap sufficient bound: n <= 2 * d^2 + 2 covers every d >= 1
    for n in range(1, 2 * d * d + 3):
        if euler_phi(n) == d and cyclotomic_polynomial(n) == f:
            return n
    return None


def cyclotomic_divisor_orders(f) -> list[int]:
    """All n with Phi_n | f, by trial division.  Any such n has
    phi(n) <= deg f, so n <= 2 deg(f)^2 + 2 is a safe scan window; division
    by a monic polynomial stays in integer arithmetic throughout."""
    f = trim(f)
    d = deg(f)
    out = []
    for n in range(1, 2 * d * d + 3):
        if euler_phi(n) > d:
            continue
        _, r = pdivmod_exact(f, cyclotomic_polynomial(n))
        if not r:
            out.append(n)
    return out


# ---------------------------------------------------------------------------
# Yun squarefree decomposition over Z
# ---------------------------------------------------------------------------

def yun_squarefree(f):
    """Monic f -> list of (squarefree monic factor, multiplicity)."""
    f = trim(f)
    if deg(f) < 1:
        return []
    out = []
    g = zgcd(f, pderiv(f))
    if deg(g) == 0:
        return [(f, 1)]
    w = _exact_div_q(f, g)
    y = _exact_div_q(pderiv(f), g)
    z = psub(y, pderiv(w))
    i = 1
    while deg(w) > 0:
        h = zgcd(w, z)
        if deg(h) > 0:
            out.append((h, i))
            w = _exact_div_q(w, h)
            y = _exact_div_q(z, h)
        else:
            y = z
        z = psub(y, pderiv(w))
        i += 1
    return out


# ---------------------------------------------------------------------------
# Hensel lifting
# ---------------------------------------------------------------------------

def _symmetric(c, m):
    c %= m
    return c - m if 2 * c > m else c


def _mod_poly(f, m):
    return trim(c % m for c in f)


def _divmod_mod(f, g, m):
    """divmod of f by monic g, coefficients in Z/m."""
    r = list(c % m for c in f)
    dg = len(g) - 1
    q = [0] * max(len(r) - dg, 0)
    while True:
        while r and r[-1] % m == 0:
            r.pop()
        if len(r) - 1 < dg:
            break
        t = r[-1] % m
        shift = len(r) - 1 - dg
        q[shift] = t
        for i in range(dg + 1):
            r[shift + i] = (r[shift + i] - t * g[i]) % m
    return trim(c % m for c in q), trim(c % m for c in r)


def _mul_mod(f, g, m):
    return _mod_poly(pmul(f, g), m)


def hensel_step(f, g, h, s, t, m):
    """One quadratic step: from f = g h (mod m), s g + t h = 1 (mod m),
    with f, g, h monic, to the same data mod m^2."""
    m2 = m * m
    e = _mod_poly(psub(f, pmul(g, h)), m2)
    q, r = _divmod_mod(_mul_mod(s, e, m2), h, m2)
    g1 = _mod_poly(padd(padd(g, _mul_mod(t, e, m2)), _mul_mod(q, g, m2)), m2)
    h1 = _mod_poly(padd(h, r), m2)
    b = _mod_poly(psub(padd(_mul_mod(s, g1, m2), _mul_mod(t, h1, m2)), (1,)), m2)
    c, d = _divmod_mod(_mul_mod(s, b, m2), h1, m2)
    s1 = _mod_poly(psub(s, d), m2)
    t1 = _mod_poly(psub(psub(t, _mul_mod(t, b, m2)), _mul_mod(c, g1, m2)), m2)
    return g1, h1, s1, t1


def _bezout_mod_p(g, h, p):
    """s, t with s g + t h = 1 over F_p (g, h coprime)."""
    # extended Euclid over F_p
    r0, r1 = gfp.normalize(g, p), gfp.normalize(h, p)
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = gfp.divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, gfp.sub(s0, gfp.mul(q, s1, p), p)
        t0, t1 = t1, gfp.sub(t0, gfp.mul(q, t1, p), p)
    assert len(r0) == 1
    inv = pow(r0[0], p - 2, p)
    return gfp.scale(s0, inv, p), gfp.scale(t0, inv, p)


def hensel_lift_many(f, factors, p, target):
    """Lift monic f = prod(factors) (mod p) to modulus p^k >= target.
    Returns (lifted factors, modulus)."""
    if len(factors) == 1:
        m = p
        while m < target:
            m *= m
        return [_mod_poly(f, m)], m

    mid = len(factors) // 2
    gs, hs = factors[:mid], factors[mid:]
    g = (1,)
    for u in gs:
        g = gfp.mul(g, u, p)
    h = (1,)
    for u in hs:
        h = gfp.mul(h, u, p)
    s, t = _bezout_mod_p(g, h, p)
    m = p
    G, H, S, T = g, h, s, t
    while m < target:
        G, H, S, T = hensel_step(_mod_poly(f, m * m), G, H, S, T, m)
        m *= m
    left, _ = hensel_lift_many(G, gs, p, target)
    right, _ = hensel_lift_many(H, hs, p, target)
    return left + right, m


# ---------------------------------------------------------------------------
# Zassenhaus factorization over Z
# ---------------------------------------------------------------------------

def _mignotte_bound(f) -> int:
    n = deg(f)
    norm2 = isqrt(sum(c * c for c in f)) + 1
    return (1 << n) * norm2


def _is_prime(n: int) -> bool:
    if n < 4:
        return n > 1
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _choose_prime(f):
    p = 2
    while True:
        if lc(f) % p != 0:
            fp = gfp.normalize(f, p)
            if len(fp) - 1 == deg(f) and len(gfp.gcd(fp, gfp.deriv(fp, p), p)) == 1:
                return p
        p += 1
        while not _is_prime(p):
            p += 1


def _factor_squarefree(f):
    """Factor a monic squarefree integer polynomial into monic irreducibles."""
    n = deg(f)
    if n <= 1:
        return [f]
    p = _choose_prime(f)
    modular = [g for g, _ in gfp.factor(f, p)]
    if len(modular) == 1:
        return [f]
    bound = 2 * _mignotte_bound(f) + 1
    lifted, m = hensel_lift_many(f, modular, p, bound)

    result = []
    remaining = list(range(len(lifted)))
    current = f
    r = 1
    while 2 * r <= len(remaining):
        found = True
        while found and 2 * r <= len(remaining):
            found = False
            for subset in combinations(remaining, r):
                cand = (1,)
                for i in subset:
                    cand = _mul_mod(cand, lifted[i], m)
                cand = trim(_symmetric(c, m) for c in cand)
                # quick test: constant term must divide f's constant term
                if current[0] != 0 and cand[0] != 0 and current[0] % cand[0] != 0:
                    continue
                try:
                    quo, rem = pdivmod_exact(current, cand)
                except ValueError:
                    continue
                if not rem:
                    result.append(cand)
                    current = quo
                    remaining = [i for i in remaining if i not in subset]
                    found = True
                    break
        r += 1
    if deg(current) > 0:
        result.append(current)
    result.sort(key=lambda h: (deg(h), h))
    return result


def factor_over_Z(f):
    """Complete factorization of monic f into monic irreducibles over Z.

    Returns a sorted list of (factor, multiplicity).  Degree is capped (the
    cap covers dimension <= 8 Weil polynomials); beyond it we fail loudly.
    """
    f = trim(f)
    if deg(f) > FACTOR_DEGREE_CAP:
        raise ValueError(f"degree {deg(f)} exceeds factorization cap {FACTOR_DEGREE_CAP}")
    if deg(f) < 1:
        raise ValueError("cannot factor a constant")
    if lc(f) != 1:
        raise ValueError("factor_over_Z expects a monic polynomial")
    out = []
    # strip powers of x
    k = 0
    while f[0] == 0:
        f = f[1:]
        k += 1
    if k:
        out.append(((0, 1), k))
    for sf, mult in yun_squarefree(f):
        for irr in _factor_squarefree(sf):
            out.append((irr, mult))
    out.sort(key=lambda t: (deg(t[0]), t[0]))
    return out


# ---------------------------------------------------------------------------
# cyclotomic part (Beukers-Smyth transforms)
# ---------------------------------------------------------------------------

def _compose_x2(f):
    """f(x^2)."""
    out = [0] * (2 * len(f) - 1) if f else []
    for i, c in enumerate(f):
        out[2 * i] = c
    return trim(out)


def _compose_negx(f):
    return trim((-c if i & 1 else c) for i, c in enumerate(f))


def _graeffe(f):
    """Monic polynomial whose roots are the squares of the roots of f."""
    fneg = _compose_negx(f)
    prod = pmul(f, fneg)
    even = trim(prod[0::2])
    if lc(even) < 0:
        even = pneg(even)
    return even


def _squarefree_lcm(parts):
    """lcm of squarefree polynomials, as a squarefree polynomial."""
    out = (1,)
    for g in parts:
        if deg(g) < 1:
            continue
        d = zgcd(out, g)
        extra = _exact_div_q(g, d) if deg(d) > 0 else g
        out = pmul(out, extra)
    c = content(out)
    if c > 1:
        out = tuple(x // c for x in out)
    return out if lc(out) >= 0 else pneg(out)


def _square_closure(f):
    """Largest divisor g of squarefree f with g | g(x^2): all roots of g are
    roots of unity (roots closed under squaring, no zero root)."""
    g = f
    while deg(g) > 0:
        h = zgcd(g, _compose_x2(g))
        if deg(h) == deg(g):
            return g
        g = h
    return g


def cyclotomic_part(f):
    """Product of the distinct cyclotomic factors of f (multiplicity 1 each)."""
    f = trim(f)
    if deg(f) < 1:
        return (1,)
    sf = squarefree_part(f)
    while sf and sf[0] == 0:
        sf = sf[1:]
    sf = trim(sf)
    if deg(sf) < 1:
        return (1,)
    return _cyclo_sf(sf, _bitlen_bound(deg(f)))


def _bitlen_bound(d):
    # any cyclotomic factor has order n with phi(n) <= d, so n <= 2 d^2 + 2;
    # squaring reduces the 2-adic part, so log2 of that bounds recursion depth
    n = 2 * d * d + 2
    return n.bit_length()


def _cyclo_sf(f, depth):
    """Cyclotomic part of squarefree f with f(0) != 0."""
    if deg(f) < 1 or depth < 0:
        return (1,)
    parts = []
    # odd orders (and whatever even orders happen to be closed under squaring)
    parts.append(_square_closure(f))
    # orders n = 2 mod 4: Phi_n(x) = +-Phi_{n/2}(-x) with n/2 odd
    ftilde = _compose_negx(f)
    if lc(ftilde) < 0:
        ftilde = pneg(ftilde)
    b = _square_closure(ftilde)
    bneg = _compose_negx(b)
    if lc(bneg) < 0:
        bneg = pneg(bneg)
    parts.append(zgcd(f, bneg))
    # orders divisible by 4: Phi_n(x) = Phi_{n/2}(x^2); recurse on the
    # Graeffe transform (roots squared) and pull back through x -> x^2
    gr = _graeffe(f)
    gr_sf = squarefree_part(gr)
    while gr_sf and gr_sf[0] == 0:
        gr_sf = gr_sf[1:]
    if deg(gr_sf) >= 1:
        c = _cyclo_sf(trim(gr_sf), depth - 1)
        if deg(c) >= 1:
            parts.append(zgcd(f, _compose_x2(c)))
    out = _squarefree_lcm(parts)
    return out
