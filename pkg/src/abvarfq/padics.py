"""Prime decomposition in Q[x]/(h) above a fixed rational prime p.

Everything here is exact: orders are Z-lattices in the power basis (integer
row matrix over a common denominator), the p-maximal order is reached by the
round-2 iteration (radical via the Frobenius kernel, then the multiplier
ring of p*O + rad), and primes above p come from splitting the etale algebra
O/pO / rad into field components by minimal-polynomial idempotents.
Valuations are computed by ideal-power membership, which is valid because
the order is p-maximal (hence locally Dedekind at p).

Output per prime: (e, f, v) with e the ramification index, f the residue
degree, and v the valuation of the image of x (so a root of h has valuation
v/e in the normalization where v_P(p) = e).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import gfp


# ---------------------------------------------------------------------------
# small exact linear algebra
# ---------------------------------------------------------------------------

def _frac_inv(M):
    """Inverse of a square integer/Fraction matrix, as Fractions."""
    n = len(M)
    A = [[Fraction(M[i][j]) for j in range(n)]
         + [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [v * inv for v in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [row[n:] for row in A]


def _fp_rref(rows, p):
    """Row-reduce over F_p; returns (rref rows, pivot columns)."""
    rows = [list(r) for r in rows]
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if rows[i][c] % p != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] % p != 0:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return [rows[i] for i in range(r)], pivots


def _fp_left_kernel(M, p, n):
    """Basis of {y in F_p^n : y M = 0} for an n-row matrix M."""
    cols = len(M[0]) if M and M[0] else 0
    # kernel of the transpose's row space: solve via rref of M^T augmented
    MT = [[M[i][j] % p for i in range(n)] for j in range(cols)]
    rref, pivots = _fp_rref(MT, p) if MT else ([], [])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        v = [0] * n
        v[fcol] = 1
        for row, pcol in zip(rref, pivots):
            v[pcol] = (-row[fcol]) % p
        basis.append(v)
    return basis


def _hnf(rows, n):
    """Row Hermite normal form (upper triangular, n x n) of the Z-span of
    the given integer rows, which must have full rank n."""
    work = [list(r) for r in rows if any(r)]
    basis = [None] * n
    for col in range(n):
        # reduce all rows to have zeros before `col` already (by induction);
        # combine rows with nonzero entry in col by gcd steps
        while True:
            live = [r for r in work if r[col] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda r: abs(r[col]))
            a = live[0]
            for r in live[1:]:
                t = r[col] // a[col]
                for j in range(col, n):
                    r[j] -= t * a[j]
            work = [r for r in work if any(r)]
        live = [r for r in work if r[col] != 0]
        if not live:
            raise ValueError("rows do not have full rank")
        row = live[0]
        if row[col] < 0:
            row = [-v for v in row]
        basis[col] = row
        work = [r for r in work if r is not live[0] and any(r)]
    # normalize entries above each pivot
    for col in range(n - 1, -1, -1):
        piv = basis[col][col]
        for r in range(col):
            t = basis[r][col] // piv
            if t:
                for j in range(col, n):
                    basis[r][j] -= t * basis[col][j]
    return basis


# ---------------------------------------------------------------------------
# orders
# ---------------------------------------------------------------------------

class _Order:
    """Z-lattice (1/d) * rowspan(M) in Q[x]/(h) that is a ring."""

    def __init__(self, h, M, d):
        self.h = h
        self.n = len(h) - 1
        g = d
        for row in M:
            for v in row:
                g = gcd_int(g, v)
        self.M = [[v // g for v in row] for row in M]
        self.d = d // g
        self.Minv = _frac_inv(self.M)
        self._xpow = _power_table(h)
        self._T = None

    def to_basis(self, vec):
        """Coordinates of a power-basis vector (ints or Fractions) in this
        order's basis; must be integral for ring elements."""
        n = self.n
        out = []
        for j in range(n):
            c = sum(Fraction(vec[i]) * self.Minv[i][j] for i in range(n)) * self.d
            assert c.denominator == 1
            out.append(int(c))
        return out

    def volume(self):
        det = 1
        MH = _hnf(self.M, self.n)
        for i in range(self.n):
            det *= MH[i][i]
        return Fraction(det, self.d ** self.n)

    def struct_constants(self):
        """T[i][j] = basis coordinates of b_i * b_j (integer vectors)."""
        if self._T is None:
            n = self.n
            T = []
            for i in range(n):
                Ti = []
                for j in range(n):
                    w = _polymulmod(self.M[i], self.M[j], self.h, self._xpow)
                    Ti.append(self.to_basis([Fraction(v, self.d * self.d)
                                             for v in w]))
                T.append(Ti)
            self._T = T
        return self._T

    def mul_coords(self, u, v, p=None):
        """Product of two elements given in basis coordinates."""
        T = self.struct_constants()
        n = self.n
        out = [0] * n
        for i in range(n):
            if u[i] == 0:
                continue
            for j in range(n):
                if v[j] == 0:
                    continue
                c = u[i] * v[j]
                t = T[i][j]
                for k in range(n):
                    out[k] += c * t[k]
        if p is not None:
            out = [c % p for c in out]
        return out


def gcd_int(a, b):
    from math import gcd
    return gcd(a, b)


def _power_table(h):
    """x^k mod h in the power basis, k = 0..2n-2 (h monic)."""
    n = len(h) - 1
    xp = [[1 if i == k else 0 for i in range(n)] for k in range(n)]
    for k in range(n, 2 * n - 1):
        prev = xp[k - 1]
        row = [0] + prev[:-1]
        top = prev[-1]
        if top:
            row = [row[i] - top * h[i] for i in range(n)]
        xp.append(row)
    return xp


def _polymulmod(u, v, h, xpow):
    n = len(h) - 1
    conv = [0] * (2 * n - 1)
    for i, a in enumerate(u):
        if a == 0:
            continue
        for j, b in enumerate(v):
            if b:
                conv[i + j] += a * b
    out = [0] * n
    for k, c in enumerate(conv):
        if c:
            row = xpow[k]
            for i in range(n):
                out[i] += c * row[i]
    return out


# ---------------------------------------------------------------------------
# radical and round-2 step
# ---------------------------------------------------------------------------

def _radical_basis(order: _Order, p: int):
    """F_p-basis of the radical of O/pO, as coordinate rows."""
    n = order.n
    r = 1
    while p ** r < n:
        r += 1
    # Frobenius y -> y^(p^r) is F_p-linear; build its matrix row by row
    rows = []
    for i in range(n):
        y = [1 if j == i else 0 for j in range(n)]
        acc = y
        for _ in range(r):
            # acc = acc^p by square-and-multiply on the exponent p
            result = None
            base = acc
            e = p
            while e:
                if e & 1:
                    result = base if result is None else order.mul_coords(result, base, p)
                e >>= 1
                if e:
                    base = order.mul_coords(base, base, p)
            acc = result
        rows.append(acc)
    return _fp_left_kernel(rows, p, n)


def _multiplier_ring(order: _Order, p: int, ideal_rows):
    """The order O' = {z : z I <= I} for I = Z-span of ideal_rows (in O-basis
    coordinates, containing pO), returned as a new _Order."""
    n = order.n
    U = _hnf(ideal_rows, n)
    Uinv = _frac_inv(U)
    # phi: (O/pO) -> prod_k I/pI, y -> y*u_k; kernel/p extends O
    bigrows = []
    for i in range(n):
        y = [1 if j == i else 0 for j in range(n)]
        row = []
        for k in range(n):
            prod = order.mul_coords(y, U[k])
            # coordinates of prod in the I-basis
            for j in range(n):
                c = sum(Fraction(prod[t]) * Uinv[t][j] for t in range(n))
                assert c.denominator == 1
                row.append(int(c) % p)
        bigrows.append(row)
    kernel = _fp_left_kernel(bigrows, p, n)
    if not kernel:
        return order
    new_rows = [[p * v for v in row] for row in order.M]
    for y in kernel:
        lift = [sum(y[i] * order.M[i][j] for i in range(n)) for j in range(n)]
        new_rows.append(lift)
    return _Order(order.h, _hnf(new_rows, n), order.d * p)


def p_maximal_order(h: tuple, p: int) -> _Order:
    """The p-maximal order of Q[x]/(h), h monic irreducible over Z."""
    n = len(h) - 1
    order = _Order(h, [[1 if j == i else 0 for j in range(n)] for i in range(n)], 1)
    while True:
        rad = _radical_basis(order, p)
        # the ideal pO + rad(O/pO), in O-basis coordinates
        rows = [[p if j == i else 0 for j in range(n)] for i in range(n)]
        for y in rad:
            rows.append(list(y))
        bigger = _multiplier_ring(order, p, rows)
        if bigger.volume() == order.volume():
            return order
        order = bigger


# ---------------------------------------------------------------------------
# splitting O/pO and prime ideals
# ---------------------------------------------------------------------------

def _fp_solve(A, b, p):
    """Solve A x = b over F_p (A: m x k, unique solution assumed)."""
    m, k = len(A), len(A[0])
    aug = [[A[i][j] % p for j in range(k)] + [b[i] % p] for i in range(m)]
    rref, pivots = _fp_rref(aug, p)
    x = [0] * k
    for row, c in zip(rref, pivots):
        if c == k:
            raise ValueError("inconsistent system")
        x[c] = row[k]
    return x


def _poly_eval_in_algebra(order, poly, alpha, ident, p):
    """poly(alpha) inside O/pO, poly constant-first over F_p."""
    out = [0] * order.n
    for c in reversed(poly):
        out = order.mul_coords(out, alpha, p)
        if c % p:
            out = [(a + c * e) % p for a, e in zip(out, ident)]
    return out


def _split_components(order, p, rad_rows):
    """Field components of (O/pO)/rad as lists of (basis rows, identity),
    everything in O/pO coordinates (representatives)."""
    n = order.n
    rad_rref, rad_piv = _fp_rref(rad_rows, p) if rad_rows else ([], [])

    def reduce_mod_rad(v):
        v = [c % p for c in v]
        for row, c in zip(rad_rref, rad_piv):
            if v[c]:
                f = v[c]
                v = [(a - f * b) % p for a, b in zip(v, row)]
        return v

    one = order.to_basis([1] + [0] * (n - 1))
    comp_basis = []
    taken = list(rad_rref)
    taken_piv = list(rad_piv)
    for i in range(n):
        e = [1 if j == i else 0 for j in range(n)]
        v = reduce_mod_rad(e)
        for row, c in zip(taken, taken_piv):
            if v[c]:
                f = v[c]
                v = [(a - f * b) % p for a, b in zip(v, row)]
        if any(v):
            lead = next(c for c in range(n) if v[c])
            inv = pow(v[lead], p - 2, p)
            v = [(a * inv) % p for a in v]
            taken.append(v)
            taken_piv.append(lead)
            comp_basis.append(v)

    import random
    rng = random.Random(0x5eed ^ p ^ n)

    stack = [(comp_basis, reduce_mod_rad(one))]
    fields = []
    while stack:
        basis, ident = stack.pop()
        m = len(basis)
        if m == 1:
            fields.append((basis, ident))
            continue
        split_done = False
        candidates = list(basis)
        for _ in range(8 * m):
            candidates.append(reduce_mod_rad(
                [sum(rng.randrange(p) * b[j] for b in basis) % p
                 for j in range(n)]))
        for alpha in candidates:
            mu = _minimal_poly_fp_quotient(order, alpha, ident, basis,
                                           reduce_mod_rad, p)
            facs = gfp.factor(mu, p)
            if len(facs) == 1 and facs[0][1] == 1:
                if len(facs[0][0]) - 1 == m:
                    fields.append((basis, ident))
                    split_done = True
                    break
                continue
            assert all(mult == 1 for _, mult in facs), "algebra not etale"
            for rho, _ in facs:
                g = _gfp_div_exact(mu, rho, p)
                ginv = _gfp_inverse_mod(g, rho, p)
                eps_poly = gfp.mul(g, ginv, p)
                eps = _poly_eval_in_algebra(order, eps_poly, alpha, ident, p)
                eps = reduce_mod_rad(eps)
                sub = []
                for b in basis:
                    w = reduce_mod_rad(order.mul_coords(eps, b, p))
                    sub.append(w)
                sub_rref, _ = _fp_rref(sub, p)
                sub_rref = [r for r in sub_rref if any(r)]
                stack.append((sub_rref, eps))
            split_done = True
            break
        assert split_done, "failed to split a non-field component"
    return fields


def _minimal_poly_fp_quotient(order, alpha, ident, basis, reduce_fn, p):
    """Minimal polynomial of alpha inside the subalgebra spanned by basis
    (with the given identity), all modulo the radical."""
    n = order.n
    powers = [list(ident)]
    while True:
        rows, _ = _fp_rref(powers, p)
        if len(rows) < len(powers) or not any(powers[-1]):
            k = len(powers) - 1
            A = [[powers[i][j] % p for i in range(k)] for j in range(n)]
            b = [powers[k][j] % p for j in range(n)]
            sol = _fp_solve(A, b, p)
            mu = tuple((-c) % p for c in sol) + (1,)
            return gfp.trim(mu)
        nxt = reduce_fn(order.mul_coords(powers[-1], alpha, p))
        powers.append(nxt)


def _gfp_div_exact(f, g, p):
    q, r = gfp.divmod_(gfp.normalize(f, p), gfp.normalize(g, p), p)
    assert not r
    return q


def _gfp_inverse_mod(f, m, p):
    """f^{-1} mod m over F_p."""
    r0, r1 = gfp.normalize(m, p), gfp.mod(f, m, p)
    t0, t1 = (), (1,)
    while r1:
        q, r = gfp.divmod_(r0, r1, p)
        r0, r1 = r1, r
        t0, t1 = t1, gfp.sub(t0, gfp.mul(q, t1, p), p)
    assert len(r0) == 1
    inv = pow(r0[0], p - 2, p)
    return gfp.scale(t0, inv, p)


# ---------------------------------------------------------------------------
# prime decomposition with valuations
# ---------------------------------------------------------------------------

def _ideal_product(order, A, B, p_bound=None):
    n = order.n
    rows = []
    for u in A:
        for v in B:
            rows.append(order.mul_coords(u, v))
    return _hnf(rows, n)


def _member(order, z, U_hnf, Uinv):
    n = order.n
    for j in range(n):
        c = sum(Fraction(z[t]) * Uinv[t][j] for t in range(n))
        if c.denominator != 1:
            return False
    return True


def _valuation(order, z, P_hnf, vmax=400):
    """v_P(z) by ideal-power membership (order must be p-maximal)."""
    Jk = [[1 if j == i else 0 for j in range(order.n)] for i in range(order.n)]
    v = 0
    while v <= vmax:
        Jk = _ideal_product(order, Jk, P_hnf)
        if not _member(order, z, Jk, _frac_inv(Jk)):
            return v
        v += 1
    raise ArithmeticError("valuation exceeded bound")


@lru_cache(maxsize=None)
def prime_decomposition(h: tuple, p: int) -> tuple:
    """Primes of Q[x]/(h) above p as a tuple of (e, f, v) with v the
    valuation of the class of x.  Requires h monic irreducible, h(0) != 0."""
    n = len(h) - 1
    if n == 1:
        # rational prime: e = f = 1, v = ord_p of the root -h[0]
        v, c = 0, -h[0]
        while c % p == 0:
            c //= p
            v += 1
        return ((1, 1, v),)
    order = p_maximal_order(h, p)
    rad = _radical_basis(order, p)
    fields = _split_components(order, p, rad)
    x_coords = order.to_basis([0, 1] + [0] * (n - 2))
    p_coords = order.to_basis([p] + [0] * (n - 1))
    out = []
    efsum = 0
    for basis, _ident in fields:
        f = len(basis)
        # P = pO + rad + (other components): the kernel of O/pO -> this field
        other = list(rad)
        for basis2, _id2 in fields:
            if basis2 is not basis:
                other.extend(basis2)
        # kernel of projection: vectors whose component here vanishes; build
        # as the span of rad + other components + (this field's maximal
        # ideal = 0 since it is a field) -- i.e. exactly rad + others
        rows = [[p if j == i else 0 for j in range(n)] for i in range(n)]
        rows.extend([list(v) for v in other])
        P = _hnf(rows, n)
        e = _valuation(order, p_coords, P, vmax=n + 1)
        v = _valuation(order, x_coords, P, vmax=(n + 1) * (e + 1))
        out.append((e, f, v))
        efsum += e * f
    assert efsum == n, "e*f does not sum to the degree"
    out.sort()
    return tuple(out)
