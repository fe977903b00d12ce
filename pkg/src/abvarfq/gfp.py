"""Dense polynomial arithmetic over the prime field F_p.

Polynomials are tuples of ints in [0, p), constant term first, no trailing
zeros.  Includes squarefree/distinct-degree/equal-degree factorization
(Cantor-Zassenhaus) with a deterministic seeded RNG so runs are reproducible.
"""

from __future__ import annotations

import random

from .config import FACTOR_SEED


def trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def normalize(f, p):
    return trim(c % p for c in f)


def add(f, g, p):
    n = max(len(f), len(g))
    return trim(((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p
                for i in range(n))


def sub(f, g, p):
    n = max(len(f), len(g))
    return trim(((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p
                for i in range(n))


def mul(f, g, p):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(c % p for c in out)


def scale(f, k, p):
    k %= p
    if k == 0:
        return ()
    return trim((c * k) % p for c in f)


def divmod_(f, g, p):
    if not g:
        raise ZeroDivisionError
    inv = pow(g[-1], p - 2, p)
    r = list(f)
    q = [0] * max(len(f) - len(g) + 1, 0)
    dg = len(g) - 1
    while len(r) >= len(g):
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(g):
            break
        t = (r[-1] * inv) % p
        shift = len(r) - len(g)
        q[shift] = t
        for i in range(dg + 1):
            r[shift + i] = (r[shift + i] - t * g[i]) % p
    return trim(q), trim(r)


def mod(f, g, p):
    return divmod_(f, g, p)[1]


def monic(f, p):
    if not f:
        return f
    if f[-1] == 1:
        return f
    return scale(f, pow(f[-1], p - 2, p), p)


def gcd(f, g, p):
    a, b = trim(f), trim(g)
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def pow_mod(f, e, m, p):
    """f^e mod m over F_p."""
    result = (1,)
    base = mod(f, m, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), m, p)
        base = mod(mul(base, base, p), m, p)
        e >>= 1
    return result


def deriv(f, p):
    return trim((i * f[i]) % p for i in range(1, len(f)))


def squarefree_decomposition(f, p):
    """Yield (squarefree factor, multiplicity), f monic.  Handles the
    p-th power collapse f(x) = g(x^p) = g(x)^p."""
    out = []
    f = monic(f, p)

    def rec(f, mult):
        if len(f) <= 1:
            return
        d = deriv(f, p)
        if not d:
            # f = g(x^p) = g(x)^p over the prime field (c^p = c), so recurse
            # on g with multiplicity scaled by p
            g = trim(f[0::p])
            rec(g, mult * p)
            return
        w = gcd(f, d, p)
        v, _ = divmod_(f, w, p)  # squarefree part at this level
        k = 1
        while len(v) > 1:
            h = gcd(v, w, p)
            piece, _ = divmod_(v, h, p)
            if len(piece) > 1:
                out.append((piece, mult * k))
            v = h
            w, _ = divmod_(w, h, p)
            k += 1
        if len(w) > 1:
            rec(w, mult)

    rec(f, 1)
    return out


def distinct_degree(f, p):
    """f monic squarefree -> list of (product of irreducible factors of degree d, d)."""
    out = []
    h = (0, 1)  # x
    xq = h
    f = monic(f, p)
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        xq = pow_mod(xq, p, f, p)
        g = gcd(f, sub(xq, (0, 1), p), p)
        if len(g) > 1:
            out.append((g, d))
            f, _ = divmod_(f, g, p)
            xq = mod(xq, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(f, d, p, rng):
    """Split monic squarefree f, all of whose irreducible factors have degree
    d, into those factors (Cantor-Zassenhaus)."""
    n = len(f) - 1
    if n == d:
        return [f]
    factors = [f]
    while any(len(g) - 1 > d for g in factors):
        g = next(g for g in factors if len(g) - 1 > d)
        r = trim(tuple(rng.randrange(p) for _ in range(len(g) - 1)))
        if len(r) <= 0:
            continue
        if p == 2:
            # additive trace map to F_2: T(r) = r + r^2 + ... + r^(2^(d-1)) mod g
            t = mod(r, g, p)
            acc = t
            for _ in range(d - 1):
                t = mod(mul(t, t, p), g, p)
                acc = add(acc, t, p)
            h = gcd(g, acc, p)
        else:
            e = (p ** d - 1) // 2
            h = gcd(g, sub(pow_mod(r, e, g, p), (1,), p), p)
        if 0 < len(h) - 1 < len(g) - 1:
            other, _ = divmod_(g, h, p)
            factors.remove(g)
            factors.extend([monic(h, p), monic(other, p)])
    return factors


def factor(f, p, seed=None):
    """Full factorization of f over F_p: list of (monic irreducible, mult)."""
    f = normalize(f, p)
    if len(f) <= 1:
        return []
    rng = random.Random(FACTOR_SEED if seed is None else seed)
    result = []
    fm = monic(f, p)  # the leading unit is dropped
    # strip powers of x
    k = 0
    while fm and fm[0] == 0:
        fm = fm[1:]
        k += 1
    if k:
        result.append(((0, 1), k))
    for sf, mult in squarefree_decomposition(fm, p):
        for prod, d in distinct_degree(sf, p):
            for irr in equal_degree(prod, d, p, rng):
                result.append((irr, mult))
    result.sort()
    return result


def is_irreducible(f, p):
    f = monic(normalize(f, p), p)
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    facs = factor(f, p)
    return len(facs) == 1 and facs[0][1] == 1
