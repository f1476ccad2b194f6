"""Explicit spherical polynomials and their ingredients.

For an orbit label alpha the normalized spherical function is the symmetric
Laurent polynomial

    Psi(alpha) = (1 - q^-2)^n * c_odd(alpha) * q^<lam, z0> / w_n(q^-2)
                 * sum over permutations of
                   x^lam / prod_{l in I_odd} (x_l - q x_{l+1})
                   * prod_{i<j} (x_i - q x_j)(x_i - q^-2 x_j) / (x_i - x_j),

with lam the entrywise Gauss bracket [(alpha_i + 1)/2], I_odd the set of
first members of the odd pairs, and z0 = (-n+1, -n+3, ..., n-1).  The size-2
closed form, the main-term family, the one-dimensional Iwahori integral and
its finite oracle, and the truncated induction identity all live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import density
from .density import build_gram, check_orbit_label, count_reps, normalization_exponent
from .laurent import LaurentPoly, symmetric_sum
from .quatring import HermMatrix, QuatElem, QuatMatrix, RingParams
from .ratfunc import ONE, Q, RatFuncQ, ZERO, qpow, w_factor


# -- combinatorial ingredients ---------------------------------------------------


def lambda_alpha(alpha) -> tuple:
    """Entrywise Gauss bracket [(a + 1) / 2]; weakly decreasing."""
    alpha = check_orbit_label(alpha)
    return tuple((a + 1) // 2 for a in alpha)


@dataclass(frozen=True)
class OddData:
    indices: tuple      # 1-based first members of the odd pairs
    c_odd: RatFuncQ


def odd_data(alpha, n: int | None = None) -> OddData:
    """Pair equal odd entries left to right; the scalar carries
    (1 - 1/q)^k * q^(sum of n - 2l + 1 over first members l)."""
    alpha = check_orbit_label(alpha)
    if n is None:
        n = len(alpha)
    if n != len(alpha):
        raise ValueError("arity mismatch")
    idx = []
    i = 0
    while i < n:
        if alpha[i] % 2 != 0:
            if i + 1 >= n or alpha[i + 1] != alpha[i]:
                raise density.InvalidPartition("unpaired odd entry")
            idx.append(i + 1)   # 1-based
            i += 2
        else:
            i += 1
    if not idx:
        return OddData((), ONE)
    k = len(idx)
    expo = sum(n - 2 * l + 1 for l in idx)
    c = (ONE - qpow(-1)) ** k * qpow(expo)
    return OddData(tuple(idx), c)


def z_zero(n: int) -> tuple:
    """(-n+1, -n+3, ..., n-1)."""
    return tuple(-n - 1 + 2 * i for i in range(1, n + 1))


def gn_factor(n: int) -> LaurentPoly:
    """prod_{i<j} (x_j - q x_i), the polynomial normalizer."""
    out = LaurentPoly.constant(n, 1)
    for i in range(n):
        for j in range(i + 1, n):
            out = out * LaurentPoly.binomial(n, j, i, Q)
    return out


def _pair(lam, z) -> int:
    return sum(a * b for a, b in zip(lam, z))


# -- the explicit formula ----------------------------------------------------------


def main_term(alpha, n: int | None = None) -> LaurentPoly:
    """The symmetrized sum alone, without the scalar prefactor."""
    alpha = check_orbit_label(alpha)
    if n is None:
        n = len(alpha)
    lam = lambda_alpha(alpha)
    od = odd_data(alpha, n)
    num = []
    den = []
    for i in range(n):
        for j in range(i + 1, n):
            num.append((i, j, Q))
            num.append((i, j, qpow(-2)))
            den.append((i, j, ONE))
    for l in od.indices:
        den.append((l - 1, l, Q))
    return symmetric_sum(n, lam, num, den)


def psi_prefactor(alpha, n: int | None = None) -> RatFuncQ:
    alpha = check_orbit_label(alpha)
    if n is None:
        n = len(alpha)
    lam = lambda_alpha(alpha)
    od = odd_data(alpha, n)
    return (
        (ONE - qpow(-2)) ** n
        * od.c_odd
        * qpow(_pair(lam, z_zero(n)))
        / w_factor(n, qpow(-2))
    )


def psi_explicit(alpha, n: int | None = None) -> LaurentPoly:
    """Psi(alpha) as an exact symmetric Laurent polynomial."""
    alpha = check_orbit_label(alpha)
    if n is None:
        n = len(alpha)
    return main_term(alpha, n).scale(psi_prefactor(alpha, n))


def hl_variant(kind: str, lam, n: int) -> LaurentPoly:
    """Specialized Hall-Littlewood-type orbit sums for comparison.

    kind "GL": factor (x_i - x_j/q); "A": (x_i - x_j/q^2); "H": (x_i + x_j/q).
    """
    lam = tuple(lam)
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError("lambda must be weakly decreasing")
    cmap = {"GL": qpow(-1), "A": qpow(-2), "H": -qpow(-1)}
    if kind not in cmap:
        raise ValueError(f"unknown kind {kind!r}")
    num = []
    den = []
    for i in range(n):
        for j in range(i + 1, n):
            num.append((i, j, cmap[kind]))
            den.append((i, j, ONE))
    return symmetric_sum(n, lam, num, den)


# -- size 2 closed form -------------------------------------------------------------


def size2_closed(alpha):
    """The size-2 spherical function as (numerator, G_2) with omega = num / G_2.

    Even labels 2*lam use the two-term orbit sum; the equal odd pair
    (2e-1, 2e-1) is the pure monomial q(1 - 1/q) (x1 x2)^e.
    """
    alpha = check_orbit_label(alpha)
    if len(alpha) != 2:
        raise ValueError("size-2 labels only")
    g2 = gn_factor(2)
    if alpha[0] % 2 == 0 and alpha[1] % 2 == 0:
        lam = (alpha[0] // 2, alpha[1] // 2)
        s = symmetric_sum(2, lam, [(0, 1, qpow(-2)), (0, 1, Q)], [(0, 1, ONE)])
        pref = qpow(_pair(lam, z_zero(2))) / (ONE + qpow(-2))
        return s.scale(pref), g2
    # equal odd pair 2e - 1
    e = (alpha[0] + 1) // 2
    num = LaurentPoly.monomial(2, (e, e), Q * (ONE - qpow(-1)))
    return num, g2


# -- s/z change of variables ----------------------------------------------------------


def sz_convert(point, direction: str):
    """Affine bijection between the s and z parameters.

    s_i = -z_i + z_{i+1} - 2 for i < n and s_n = -z_n + n - 1; the origin in
    s corresponds to z_zero(n).
    """
    point = tuple(Fraction(x) for x in point)
    n = len(point)
    if direction == "s_to_z":
        z = [Fraction(0)] * n
        z[n - 1] = n - 1 - point[n - 1]
        for i in range(n - 2, -1, -1):
            z[i] = z[i + 1] - 2 - point[i]
        return tuple(z)
    if direction == "z_to_s":
        s = [Fraction(0)] * n
        for i in range(n - 1):
            s[i] = -point[i] + point[i + 1] - 2
        s[n - 1] = -point[n - 1] + n - 1
        return tuple(s)
    raise ValueError("direction must be 's_to_z' or 'z_to_s'")


# -- the one-dimensional Iwahori integral ------------------------------------------------


@dataclass(frozen=True)
class DeltaClosed:
    """delta as scalar * x^monomial / prod of (x_a - q x_b) factors (1-based a, b)."""

    scalar: RatFuncQ
    monomial: tuple
    den_pairs: tuple


def delta_closed(alpha, n: int | None = None) -> DeltaClosed:
    """Closed form of the Iwahori average of the relative-invariant weights.

    Equals c_odd(alpha) * q^(<lam, z0>) * x^(reversed lam) over the product of
    (x_{n-l+1} - q x_{n-l}) for l in I_odd; for even labels the denominator is
    empty and the value is a pure monomial.
    """
    alpha = check_orbit_label(alpha)
    if n is None:
        n = len(alpha)
    lam = lambda_alpha(alpha)
    od = odd_data(alpha, n)
    scalar = od.c_odd * qpow(_pair(lam, z_zero(n)))
    monomial = tuple(reversed(lam))
    pairs = tuple((n - l + 1, n - l) for l in od.indices)
    return DeltaClosed(scalar, monomial, pairs)


def delta_series_weights(alpha, vmax: int):
    """Valuation distribution of the closed delta for size 2.

    Returns (weights, tail, v2): weights maps the first-invariant valuation v
    to its exact volume in Q(q) for v < vmax, tail is the remaining mass, and
    v2 is the constant valuation of the full determinant invariant.
    """
    alpha = check_orbit_label(alpha)
    if len(alpha) != 2:
        raise ValueError("size-2 labels only")
    v2 = sum(alpha) // 2
    if alpha[0] % 2 == 0:
        v1 = alpha[1] // 2
        weights = {v1: ONE} if v1 < vmax else {}
        tail = ZERO if v1 < vmax else ONE
        return weights, tail, v2
    e = (alpha[0] + 1) // 2
    weights = {}
    # geometric ladder: mass (1 - 1/q) * q^(e - v) at each v >= e
    start = e
    mass_left = ONE
    for v in range(start, vmax):
        m = (ONE - qpow(-1)) * qpow(start - v)
        weights[v] = m
        mass_left = mass_left - m
    return weights, mass_left, v2


def delta_oracle(alpha, p: int, ell: int, eps2: int = 0):
    """Finite-level Iwahori enumeration for size 2.

    Runs the unipotent coordinate nu over the radical classes in the (1,2)
    slot, conjugates the antidiagonally flipped Gram representative, and
    tabulates the valuation of the upper-left scalar entry.  Valuations not
    resolved at this level are lumped into the tail.  Returns
    (weights: {v: Fraction}, tail: Fraction, v2: int).
    """
    alpha = check_orbit_label(alpha)
    if len(alpha) != 2:
        raise ValueError("size-2 labels only")
    if alpha[1] < 0:
        raise ValueError("shift to a nonnegative label first")
    params = RingParams(p, ell) if eps2 == 0 else RingParams(p, ell, eps2)
    pl = params.modulus
    g = build_gram(alpha, params)
    # antidiagonal flip j * G * j
    flipped = HermMatrix(
        [[g.entries[1][1], g.entries[1][0]], [g.entries[0][1], g.entries[0][0]]], params
    )
    counts = {}
    tail_count = 0
    total = 0
    # nu = [[1, w], [0, 1]] with w in the radical: a, b in p, c, d free
    pstep = params.p
    sub = pl // pstep
    for a in range(sub):
        for b in range(sub):
            for c in range(pl):
                for d in range(pl):
                    w = QuatElem(a * pstep, b * pstep, c, d, params)
                    nu = QuatMatrix(
                        [[QuatElem.one(params), w],
                         [QuatElem.zero(params), QuatElem.one(params)]],
                        params,
                    )
                    x = nu @ flipped @ nu.star()
                    top = x.entries[0][0]
                    if not top.is_scalar():
                        raise ArithmeticError("upper-left entry not scalar")
                    v = params.val_p(top.a)
                    total += 1
                    if v >= ell:
                        tail_count += 1
                    else:
                        counts[v] = counts.get(v, 0) + 1
    weights = {v: Fraction(c, total) for v, c in sorted(counts.items())}
    v2 = sum(alpha) // 2
    return weights, Fraction(tail_count, total), v2


# -- truncated induction identity ----------------------------------------------------


def omega_series_size2(alpha, order: int):
    """Series in t = q^(-s_1) of the size-2 spherical function at s_2 = 0.

    Substituting x_1 = t/q, x_2 = q into Psi / (x_2 - q x_1) and expanding
    1 / (q - t) geometrically gives exact Q(q) coefficients.
    """
    num, _ = size2_closed(alpha)
    # coefficients of t^k from the numerator under x1 = t/q, x2 = q
    num_t = {}
    for (e1, e2), c in num.terms.items():
        if e1 < 0:
            raise ValueError("nonnegative labels only for the series expansion")
        num_t[e1] = num_t.get(e1, ZERO) + c * qpow(e2 - e1)
    # 1 / (q - t) = sum_j t^j / q^(j+1)
    out = []
    for k in range(order + 1):
        acc = ZERO
        for j in range(0, k + 1):
            cnum = num_t.get(k - j)
            if cnum is not None:
                acc = acc + cnum * qpow(-(j + 1))
        out.append(acc)
    return out


def induction_rhs_coefficients(xi, order: int, p: int, ell: int = 2,
                               eps2: int = 0):
    """Coefficients of t^j, j <= order, of the density expansion

        (w_1 w_1 / w_2)(q^-2) * sum_j  mu_pr(<p^j>, pi^xi) / mu_j * t^j,

    with the numerator densities counted exhaustively at the given level and
    the self-densities from the closed formula.  Returns exact Fractions at
    q = p alongside the raw density table.
    """
    xi = check_orbit_label(xi)
    t2 = qpow(-2)
    front = w_factor(1, t2) * w_factor(1, t2) / w_factor(2, t2)
    params = RingParams(p, ell) if eps2 == 0 else RingParams(p, ell, eps2)
    amat = build_gram(xi, params)
    coeffs = []
    table = []
    for j in range(order + 1):
        bmat = build_gram((2 * j,), params)
        cnt = count_reps(bmat, amat, primitive=True)
        mu_pr = Fraction(cnt, p ** normalization_exponent(1, len(xi), ell))
        mu_self = density.density_self_closed((2 * j,)).eval_at(p)
        coeffs.append(front.eval_at(p) * mu_pr / mu_self)
        table.append((2 * j, mu_pr))
    return coeffs, table


def verify_induction(xi, order: int, p: int, ell: int = 2, eps2: int = 0):
    """Compare both sides of the truncated induction identity at q = p.

    Returns (ok, lhs, rhs, table).
    """
    lhs_sym = omega_series_size2(xi, order)
    lhs = [c.eval_at(p) for c in lhs_sym]
    rhs, table = induction_rhs_coefficients(xi, order, p, ell, eps2)
    return lhs == rhs, lhs, rhs, table
