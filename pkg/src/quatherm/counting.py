"""Exhaustive and convolution-accelerated counting of congruent representations.

Counts

    N(B, A) = #{ u in M_{m,n}(O / Pi^(2*ell)) :
                 A[u] - B lies in the level-ell congruence set }

optionally restricted to primitive u (full rank over the residue field).
Everything is exact integer arithmetic on residues; numpy is used purely as a
vectorization layer, with deterministic chunked reduction.
"""

from __future__ import annotations

import numpy as np

from .quatring import HermMatrix, RingParams


class InfeasibleSizeError(RuntimeError):
    """Enumeration would exceed the configured operation budget."""


DEFAULT_BUDGET = 2**36

_CHUNK = 1 << 20


# -- coordinate-array quaternion arithmetic -----------------------------------
# A quaternion is a 4-tuple (a, b, c, d) of int64 scalars or ndarrays, reduced
# mod p^ell after every product.


def _qmul(x, y, p, e2, mod):
    a1, b1, c1, d1 = x
    a2, b2, c2, d2 = y
    a = (a1 * a2 + e2 * (b1 * b2) + p * (c1 * c2 - e2 * (d1 * d2))) % mod
    b = (a1 * b2 + b1 * a2 + p * (c1 * d2 - d1 * c2)) % mod
    c = (a1 * c2 - e2 * (b1 * d2) + c1 * a2 + e2 * (d1 * b2)) % mod
    d = (a1 * d2 - b1 * c2 + c1 * b2 + d1 * a2) % mod
    return a, b, c, d


def _qconj(x, mod):
    a, b, c, d = x
    return a, (-b) % mod, (-c) % mod, (-d) % mod


def _qadd(x, y, mod):
    return tuple((u + v) % mod for u, v in zip(x, y))


def _qnrd(x, p, e2, mod):
    a, b, c, d = x
    return (a * a - e2 * (b * b) - p * (c * c - e2 * (d * d))) % mod


def _decode_digits(idx, count, base):
    """Split an index array into `count` base-`base` digit arrays."""
    out = []
    rest = idx
    for _ in range(count):
        out.append(rest % base)
        rest = rest // base
    return out


def _entry_coords(m: HermMatrix):
    return [[m.entries[i][j].coords() for j in range(m.cols)] for i in range(m.rows)]


def _congruence_masks(coords, b_coords, p, ell, pl):
    """Boolean mask for one hermitian-difference entry set.

    coords/b_coords: dict (i, j) -> quaternion (i <= j).  Diagonal entries
    must vanish mod p^ell in the scalar coordinate; off-diagonal entries need
    a, b = 0 mod p^ell and c, d = 0 mod p^(ell-1).
    """
    pl1 = p ** (ell - 1)
    mask = None
    for (i, j), q in coords.items():
        bq = b_coords[(i, j)]
        if i == j:
            cond = (q[0] - bq[0]) % pl == 0
        else:
            cond = (
                ((q[0] - bq[0]) % pl == 0)
                & ((q[1] - bq[1]) % pl == 0)
                & ((q[2] - bq[2]) % pl1 == 0)
                & ((q[3] - bq[3]) % pl1 == 0)
            )
        mask = cond if mask is None else (mask & cond)
    return mask


def _estimate_ops(space: int, m: int, n: int) -> int:
    return space * 4 * m * n * max(m, 1)


def count_generic(b: HermMatrix, a: HermMatrix, primitive: bool = False,
                  budget: int = DEFAULT_BUDGET) -> int:
    """Direct enumeration over all of M_{m,n}(O/Pi^(2*ell)), chunked.

    Reference implementation: always correct, cost p^(4*ell*m*n).
    """
    pm = a.params
    if b.params != pm:
        raise ValueError("B and A must share ring parameters")
    p, ell, e2, pl = pm.p, pm.ell, pm.eps2, pm.modulus
    m, n = a.rows, b.rows
    space = pl ** (4 * m * n)
    if _estimate_ops(space, m, n) > budget:
        raise InfeasibleSizeError(
            f"direct enumeration needs ~{_estimate_ops(space, m, n):.3e} ops "
            f"(budget {budget:.3e})"
        )
    acoo = _entry_coords(a)
    bcoo = {(i, j): b.entries[i][j].coords() for i in range(n) for j in range(i, n)}

    total = 0
    for start in range(0, space, _CHUNK):
        stop = min(start + _CHUNK, space)
        idx = np.arange(start, stop, dtype=np.int64)
        digits = _decode_digits(idx, 4 * m * n, pl)
        # u[k][j] = quaternion in row k, column j
        u = [[tuple(digits[4 * (k * n + j) + t] for t in range(4)) for j in range(n)]
             for k in range(m)]
        # W = A @ u   (m x n)
        w = []
        for i in range(m):
            row = []
            for j in range(n):
                acc = (0, 0, 0, 0)
                for k in range(m):
                    acc = _qadd(acc, _qmul(acoo[i][k], u[k][j], p, e2, pl), pl)
                row.append(acc)
            w.append(row)
        # C = u* @ W  (n x n), upper triangle only
        cvals = {}
        for i in range(n):
            for j in range(i, n):
                acc = (0, 0, 0, 0)
                for k in range(m):
                    acc = _qadd(acc, _qmul(_qconj(u[k][i], pl), w[k][j], p, e2, pl), pl)
                cvals[(i, j)] = acc
        mask = _congruence_masks(cvals, bcoo, p, ell, pl)
        if primitive:
            mask = mask & _rank_mask(u, m, n, p, e2)
        total += int(np.count_nonzero(mask))
    return total


def _rank_mask(u, m, n, p, e2):
    """Full-residue-rank mask for n <= 2 over F_{p^2}."""
    e2p = e2 % p
    res = [[(u[k][j][0] % p, u[k][j][1] % p) for j in range(n)] for k in range(m)]
    if n == 1:
        mask = None
        for k in range(m):
            nz = (res[k][0][0] != 0) | (res[k][0][1] != 0)
            mask = nz if mask is None else (mask | nz)
        return mask
    if n == 2:
        # rank 2 iff some 2x2 minor is a unit of F_{p^2}
        mask = None
        for k1 in range(m):
            for k2 in range(k1 + 1, m):
                x, y = res[k1][0], res[k2][1]
                z, t = res[k2][0], res[k1][1]
                det_s = (x[0] * y[0] + e2p * x[1] * y[1] - z[0] * t[0] - e2p * z[1] * t[1]) % p
                det_t = (x[0] * y[1] + x[1] * y[0] - z[0] * t[1] - z[1] * t[0]) % p
                nz = (det_s != 0) | (det_t != 0)
                mask = nz if mask is None else (mask | nz)
        return mask
    raise NotImplementedError("vectorized rank mask implemented for n <= 2")


# -- convolution path: n = 1, diagonal A --------------------------------------


def nrd_histogram(params: RingParams, scale: int = 1, in_radical: bool = False):
    """Histogram over x of scale * Nrd(x) mod p^ell.

    x runs over O/Pi^(2*ell), or over the maximal ideal Pi/Pi^(2*ell) when
    in_radical is set (coordinates a, b then lie in p).
    """
    p, ell, e2, pl = params.p, params.ell, params.eps2, params.modulus
    if in_radical:
        ab_vals = np.arange(0, pl, dtype=np.int64)[: p ** (ell - 1)] * p
    else:
        ab_vals = np.arange(pl, dtype=np.int64)
    cd_vals = np.arange(pl, dtype=np.int64)
    a = ab_vals[:, None, None, None]
    b = ab_vals[None, :, None, None]
    c = cd_vals[None, None, :, None]
    d = cd_vals[None, None, None, :]
    nrd = (a * a - e2 * (b * b) - p * (c * c - e2 * (d * d))) % pl
    vals = (nrd * scale) % pl
    hist = np.bincount(vals.ravel(), minlength=pl)
    return [int(x) for x in hist]


def _cyclic_convolve(h1, h2, pl):
    out = [0] * pl
    for v1, c1 in enumerate(h1):
        if not c1:
            continue
        for v2, c2 in enumerate(h2):
            if c2:
                out[(v1 + v2) % pl] += c1 * c2
    return out


def count_diagonal_convolved(b_value: int, diag_scalars, params: RingParams,
                             primitive: bool = False) -> int:
    """Count columns u with sum_i a_i * Nrd(u_i) = b mod p^ell by histogram
    convolution; identical value to direct enumeration for diagonal targets.

    The primitive count subtracts the all-entries-in-the-radical subtotal.
    """
    pl = params.modulus
    hists = [nrd_histogram(params, scale=s % pl) for s in diag_scalars]
    acc = hists[0]
    for h in hists[1:]:
        acc = _cyclic_convolve(acc, h, pl)
    total = acc[b_value % pl]
    if not primitive:
        return total
    rhists = [nrd_histogram(params, scale=s % pl, in_radical=True) for s in diag_scalars]
    racc = rhists[0]
    for h in rhists[1:]:
        racc = _cyclic_convolve(racc, h, pl)
    return total - racc[b_value % pl]


# -- pairwise path: m = 2, n = 1, arbitrary hermitian A -----------------------


def count_column_pair(b_value: int, a: HermMatrix, primitive: bool = False) -> int:
    """Count u = (u1, u2)^T with A[u] = b mod p^ell; A is 2x2 hermitian.

    A[u] = alpha*Nrd(u1) + gamma*Nrd(u2) + Trd(u1* beta u2), with alpha, gamma
    the scalar diagonal entries and beta the (1,2) entry.  The u2 space is
    precomputed as vectors and u1 is scanned in a Python loop.
    """
    pm = a.params
    p, ell, e2, pl = pm.p, pm.ell, pm.eps2, pm.modulus
    alpha = a.entries[0][0].a
    gamma = a.entries[1][1].a
    beta = a.entries[0][1].coords()
    space = pl**4

    idx = np.arange(space, dtype=np.int64)
    u2 = tuple(_decode_digits(idx, 4, pl))
    nrd2 = (gamma * _qnrd(u2, p, e2, pl)) % pl
    unit2 = (u2[0] % p != 0) | (u2[1] % p != 0)

    target = b_value % pl
    total = 0
    for i1 in range(space):
        rest = i1
        a1 = rest % pl
        rest //= pl
        b1 = rest % pl
        rest //= pl
        c1 = rest % pl
        rest //= pl
        d1 = rest % pl
        q1 = (a1, b1, c1, d1)
        unit1 = (a1 % p != 0) or (b1 % p != 0)
        t = _qmul(_qconj(q1, pl), beta, p, e2, pl)
        # scalar coordinate of t * u2, doubled
        cross = (
            2 * (t[0] * u2[0] + e2 * (t[1] * u2[1]) + p * (t[2] * u2[2] - e2 * (t[3] * u2[3])))
        ) % pl
        val = (alpha * _qnrd(q1, p, e2, pl) + nrd2 + cross) % pl
        mask = val == target
        if primitive and not unit1:
            mask = mask & unit2
        total += int(np.count_nonzero(mask))
    return total


# -- column-pair path: m = n = 2 ----------------------------------------------


def count_matrix_pair(b: HermMatrix, a: HermMatrix, primitive: bool = False,
                      budget: int = DEFAULT_BUDGET) -> int:
    """Count 2x2 matrices u column by column: precompute per-column data for
    all p^(8*ell) columns, then scan column 1 against vectorized column 2."""
    pm = a.params
    if b.params != pm:
        raise ValueError("B and A must share ring parameters")
    p, ell, e2, pl = pm.p, pm.ell, pm.eps2, pm.modulus
    ncols = pl**8
    if ncols * ncols * 8 > budget:
        raise InfeasibleSizeError(
            f"column-pair enumeration needs ~{ncols * ncols * 8:.3e} ops"
        )
    pl1 = p ** (ell - 1)
    a00 = a.entries[0][0].coords()
    a01 = a.entries[0][1].coords()
    a10 = a.entries[1][0].coords()
    a11 = a.entries[1][1].coords()
    bdiag = (b.entries[0][0].a, b.entries[1][1].a)
    b01 = b.entries[0][1].coords()

    idx = np.arange(ncols, dtype=np.int64)
    digits = _decode_digits(idx, 8, pl)
    c1 = tuple(digits[0:4])   # top entry of the column
    c2 = tuple(digits[4:8])   # bottom entry of the column

    # y = A @ column  (2-vector of quaternions)
    y1 = _qadd(_qmul(a00, c1, p, e2, pl), _qmul(a01, c2, p, e2, pl), pl)
    y2 = _qadd(_qmul(a10, c1, p, e2, pl), _qmul(a11, c2, p, e2, pl), pl)

    # diagonal value  col* A col  (scalar coordinate)
    def _scalar_of_star_dot(x1, x2, w1, w2):
        s1 = _qmul(_qconj(x1, pl), w1, p, e2, pl)[0]
        s2 = _qmul(_qconj(x2, pl), w2, p, e2, pl)[0]
        return (s1 + s2) % pl

    dval = _scalar_of_star_dot(c1, c2, y1, y2)
    diag_ok = [(dval - bdiag[0]) % pl == 0, (dval - bdiag[1]) % pl == 0]

    res = (c1[0] % p, c1[1] % p, c2[0] % p, c2[1] % p)
    e2p = e2 % p

    total = 0
    cols_first = np.nonzero(diag_ok[0])[0]
    for j1 in cols_first:
        j1 = int(j1)
        q1 = tuple(int(t[j1]) for t in c1)
        q2 = tuple(int(t[j1]) for t in c2)
        k1 = _qconj(q1, pl)
        k2 = _qconj(q2, pl)
        # cross entry (1,2) of A[u]: conj(col1) . (A col2)
        cr = _qadd(
            _qmul(k1, y1, p, e2, pl),
            _qmul(k2, y2, p, e2, pl),
            pl,
        )
        mask = (
            ((cr[0] - b01[0]) % pl == 0)
            & ((cr[1] - b01[1]) % pl == 0)
            & ((cr[2] - b01[2]) % pl1 == 0)
            & ((cr[3] - b01[3]) % pl1 == 0)
            & diag_ok[1]
        )
        if primitive:
            r1 = (q1[0] % p, q1[1] % p, q2[0] % p, q2[1] % p)
            det_s = (
                r1[0] * res[2] + e2p * r1[1] * res[3]
                - res[0] * r1[2] - e2p * res[1] * r1[3]
            ) % p
            det_t = (
                r1[0] * res[3] + r1[1] * res[2]
                - res[0] * r1[3] - res[1] * r1[2]
            ) % p
            mask = mask & ((det_s != 0) | (det_t != 0))
        total += int(np.count_nonzero(mask))
    return total
