"""Multivariate Laurent polynomials over Q(q) and the symmetrization engine.

The engine computes orbit sums

    sum over permutations of  x^mu * (product of binomials) / (product of binomials)

by clearing every denominator factor that occurs in any orbit term, expanding,
and dividing exactly once.  Exact-division failure means the template/exponent
pair does not produce a polynomial and is reported, never truncated.
"""

from __future__ import annotations

import itertools

from .ratfunc import ONE, RatFuncQ, ZERO


class NonExactDivision(ArithmeticError):
    """Orbit sum is not divisible by the cleared denominator."""


def _coerce_scalar(c) -> RatFuncQ:
    if isinstance(c, RatFuncQ):
        return c
    return RatFuncQ.const(c)


class LaurentPoly:
    """Laurent polynomial in n variables with RatFuncQ coefficients.

    terms: dict mapping exponent tuples (ints, possibly negative) to nonzero
    coefficients.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms = {}
        if terms:
            for e, c in terms.items():
                c = _coerce_scalar(c)
                if c:
                    self.terms[tuple(e)] = c

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(n: int) -> "LaurentPoly":
        return LaurentPoly(n)

    @staticmethod
    def constant(n: int, c) -> "LaurentPoly":
        return LaurentPoly(n, {tuple([0] * n): c})

    @staticmethod
    def monomial(n: int, expo, c=1) -> "LaurentPoly":
        return LaurentPoly(n, {tuple(expo): c})

    @staticmethod
    def variable(n: int, i: int) -> "LaurentPoly":
        e = [0] * n
        e[i] = 1
        return LaurentPoly(n, {tuple(e): ONE})

    @staticmethod
    def binomial(n: int, i: int, j: int, c) -> "LaurentPoly":
        """x_i - c * x_j  (0-based indices)."""
        ei = [0] * n
        ei[i] = 1
        ej = [0] * n
        ej[j] = 1
        return LaurentPoly(n, {tuple(ei): ONE, tuple(ej): -_coerce_scalar(c)})

    # -- ring structure ----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.n == other.n and self.terms == other.terms

    def copy(self) -> "LaurentPoly":
        out = LaurentPoly(self.n)
        out.terms = dict(self.terms)
        return out

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.n != other.n:
            raise ValueError("arity mismatch")
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        res = LaurentPoly(self.n)
        res.terms = out
        return res

    def __neg__(self) -> "LaurentPoly":
        res = LaurentPoly(self.n)
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, RatFuncQ)):
            return self.scale(other)
        if self.n != other.n:
            raise ValueError("arity mismatch")
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                s = c if s is None else s + c
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        res = LaurentPoly(self.n)
        res.terms = out
        return res

    __rmul__ = __mul__

    def scale(self, c) -> "LaurentPoly":
        c = _coerce_scalar(c)
        res = LaurentPoly(self.n)
        if c:
            res.terms = {e: cc * c for e, cc in self.terms.items()}
        return res

    def shift(self, expo) -> "LaurentPoly":
        """Multiply by the monomial x^expo."""
        expo = tuple(expo)
        res = LaurentPoly(self.n)
        res.terms = {tuple(a + b for a, b in zip(e, expo)): c for e, c in self.terms.items()}
        return res

    def translate_all(self, e: int) -> "LaurentPoly":
        """Multiply by (x_1 ... x_n)^e."""
        return self.shift([e] * self.n)

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = LaurentPoly.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- structure queries ---------------------------------------------------

    def permute(self, sigma) -> "LaurentPoly":
        """Apply x_i -> x_{sigma(i)} (sigma a tuple: position i maps to sigma[i])."""
        res = LaurentPoly(self.n)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * self.n
            for i, exp in enumerate(e):
                ne[sigma[i]] = exp
            out[tuple(ne)] = c
        res.terms = out
        return res

    def is_symmetric(self) -> bool:
        """Invariance under all adjacent transpositions."""
        for i in range(self.n - 1):
            sigma = list(range(self.n))
            sigma[i], sigma[i + 1] = sigma[i + 1], sigma[i]
            if self.permute(sigma) != self:
                return False
        return True

    def min_exponent(self) -> int:
        """Smallest exponent over all variables and terms (0 if empty)."""
        if not self.terms:
            return 0
        return min(min(e) for e in self.terms)

    def coefficient(self, expo) -> RatFuncQ:
        return self.terms.get(tuple(expo), ZERO)

    def specialize_q(self, q0):
        """Map to a dict exponent -> Fraction by evaluating coefficients at q = q0."""
        return {e: c.eval_at(q0) for e, c in self.terms.items()}

    def substitute(self, values: list) -> RatFuncQ:
        """Evaluate at x_i = values[i], each a RatFuncQ (exponents may be negative)."""
        acc = ZERO
        for e, c in self.terms.items():
            term = c
            for xi, ei in zip(values, e):
                term = term * xi**ei
            acc = acc + term
        return acc

    # -- exact division --------------------------------------------------------

    def divide_exact_binomial(self, i: int, j: int, c) -> "LaurentPoly":
        """Exact division by (x_i - c * x_j); raises NonExactDivision otherwise.

        Synthetic division viewing the polynomial in x_i, highest layer first.
        If f = (x_i - c x_j) * Q then the x_i-degrees of Q span exactly
        [min_deg_i(f), max_deg_i(f) - 1], so any content pushed below the
        bottom layer certifies non-divisibility.
        """
        if not self.terms:
            return LaurentPoly.zero(self.n)
        c = _coerce_scalar(c)
        by_deg = {}
        for e, coef in self.terms.items():
            by_deg.setdefault(e[i], {})[e] = coef
        dmin = min(by_deg)
        quo = {}
        while by_deg:
            d = max(by_deg)
            layer = {e: coef for e, coef in by_deg.pop(d).items() if coef}
            if not layer:
                continue
            if d <= dmin:
                raise NonExactDivision(f"not divisible by x_{i+1} - ({c}) x_{j+1}")
            lower = by_deg.setdefault(d - 1, {})
            for e, coef in layer.items():
                qe = list(e)
                qe[i] -= 1
                qe = tuple(qe)
                quo[qe] = quo.get(qe, ZERO) + coef
                # subtracting coef * x^qe * (x_i - c x_j) cancels this term
                # and pushes the x_j part one x_i-degree down
                re = list(qe)
                re[j] += 1
                re = tuple(re)
                prev = lower.get(re, ZERO) + coef * c
                if prev:
                    lower[re] = prev
                else:
                    lower.pop(re, None)
            if not lower:
                by_deg.pop(d - 1, None)
        res = LaurentPoly(self.n)
        res.terms = {e: q for e, q in quo.items() if q}
        return res

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"x{i+1}^{ei}" if ei != 1 else f"x{i+1}" for i, ei in enumerate(e) if ei
            )
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    __repr__ = __str__


def elementary_symmetric(n: int, k: int) -> LaurentPoly:
    """The k-th elementary symmetric polynomial in n variables."""
    if k == 0:
        return LaurentPoly.constant(n, 1)
    out = LaurentPoly.zero(n)
    for comb in itertools.combinations(range(n), k):
        e = [0] * n
        for i in comb:
            e[i] = 1
        out = out + LaurentPoly.monomial(n, e, 1)
    return out


# -- the orbit-sum engine ---------------------------------------------------------


def _canonical_factor(i: int, j: int, c: RatFuncQ):
    """Canonical key and sign for the binomial x_i - c x_j.

    Only the c == 1 case has an orientation ambiguity: x_j - x_i = -(x_i - x_j).
    """
    if c == ONE and i > j:
        return (j, i, c), -1
    return (i, j, c), 1


def symmetric_sum(n: int, mu, num_factors, den_factors, scalar=None) -> LaurentPoly:
    """Orbit sum of x^mu * prod(num) / prod(den) over all permutations.

    num_factors / den_factors: iterables of (i, j, c) triples standing for the
    binomial x_i - c*x_j (0-based indices, c coercible to Q(q)).  The result
    must be a Laurent polynomial; NonExactDivision signals a non-polynomial
    template.
    """
    mu = tuple(mu)
    if len(mu) != n:
        raise ValueError("exponent arity mismatch")
    num_factors = [(i, j, _coerce_scalar(c)) for (i, j, c) in num_factors]
    den_factors = [(i, j, _coerce_scalar(c)) for (i, j, c) in den_factors]

    # cancel denominator factors that occur verbatim in the numerator
    num_pool = list(num_factors)
    kept_den = []
    for f in den_factors:
        if f in num_pool:
            num_pool.remove(f)
        else:
            kept_den.append(f)
    num_factors, den_factors = num_pool, kept_den

    # catalogue of all denominator factors across the orbit
    lcm = {}
    per_sigma = []
    for sigma in itertools.permutations(range(n)):
        fac = {}
        sign = 1
        for (i, j, c) in den_factors:
            key, s = _canonical_factor(sigma[i], sigma[j], c)
            sign *= s
            fac[key] = fac.get(key, 0) + 1
        per_sigma.append((sigma, fac, sign))
        for key, mult in fac.items():
            if lcm.get(key, 0) < mult:
                lcm[key] = mult

    # the base term expands once; every orbit term is an exponent permutation
    base = LaurentPoly.monomial(n, mu, 1)
    for (i, j, c) in num_factors:
        base = base * LaurentPoly.binomial(n, i, j, c)

    total = LaurentPoly.zero(n)
    for sigma, fac, sign in per_sigma:
        term = base.permute(sigma)
        if sign < 0:
            term = -term
        for key, mult in lcm.items():
            extra = mult - fac.get(key, 0)
            for _ in range(extra):
                term = term * LaurentPoly.binomial(n, key[0], key[1], key[2])
        total = total + term

    for (i, j, c), mult in lcm.items():
        for _ in range(mult):
            total = total.divide_exact_binomial(i, j, c)
    if scalar is not None:
        total = total.scale(scalar)
    return total
