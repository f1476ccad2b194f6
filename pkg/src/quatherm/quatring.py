"""Arithmetic in finite quotients of the maximal order of the p-adic division
quaternion algebra.

The order is modeled on the basis {1, eps, Pi, Pi*eps} with the relations

    eps^2 = eps2   (a unit that is a quadratic nonresidue mod p),
    Pi^2  = p,
    Pi*eps = -eps*Pi,

and elements of the quotient by Pi^(2*ell) are coordinate 4-tuples mod p^ell.
The two-sided ideal generated by Pi satisfies

    Pi^(2r)   = {a, b, c, d in p^r},
    Pi^(2r+1) = {a, b in p^(r+1); c, d in p^r},

which is what the valuation predicate below tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class ParamMismatch(ValueError):
    """Operands from different quotient rings."""


class DimensionMismatch(ValueError):
    """Incompatible matrix shapes."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def smallest_nonresidue(p: int) -> int:
    """Smallest positive quadratic nonresidue mod an odd prime p."""
    residues = {pow(a, 2, p) for a in range(1, p)}
    for x in range(2, p):
        if x % p not in residues:
            return x
    raise ValueError(f"no nonresidue found mod {p}")


@dataclass(frozen=True)
class RingParams:
    """Quotient-ring data: odd prime p, level ell >= 1, and the unit eps2.

    eps2 defaults to the smallest positive nonresidue mod p.  All counting
    results are independent of this choice; the acceptance suite checks that
    for two choices at p = 5.
    """

    p: int
    ell: int
    eps2: int = field(default=0)

    def __post_init__(self):
        if not is_prime(self.p) or self.p == 2:
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.ell < 1:
            raise ValueError(f"level must be >= 1, got {self.ell}")
        if self.eps2 == 0:
            object.__setattr__(self, "eps2", smallest_nonresidue(self.p))
        e = self.eps2 % self.p
        residues = {pow(a, 2, self.p) for a in range(1, self.p)}
        if e == 0 or e in residues:
            raise ValueError(f"eps2 = {self.eps2} is not a nonresidue mod {self.p}")

    @property
    def modulus(self) -> int:
        return self.p**self.ell

    def val_p(self, x: int) -> int:
        """p-adic valuation of a residue mod p^ell, capped at ell."""
        x %= self.modulus
        if x == 0:
            return self.ell
        v = 0
        while x % self.p == 0:
            x //= self.p
            v += 1
        return v


class QuatElem:
    """Class of a + b*eps + c*Pi + d*Pi*eps in the quotient at level ell."""

    __slots__ = ("a", "b", "c", "d", "params")

    def __init__(self, a, b, c, d, params: RingParams):
        m = params.modulus
        self.a = a % m
        self.b = b % m
        self.c = c % m
        self.d = d % m
        self.params = params

    # -- constructors ---------------------------------------------------

    @staticmethod
    def scalar(v: int, params: RingParams) -> "QuatElem":
        return QuatElem(v, 0, 0, 0, params)

    @staticmethod
    def zero(params: RingParams) -> "QuatElem":
        return QuatElem(0, 0, 0, 0, params)

    @staticmethod
    def one(params: RingParams) -> "QuatElem":
        return QuatElem(1, 0, 0, 0, params)

    @staticmethod
    def eps(params: RingParams) -> "QuatElem":
        return QuatElem(0, 1, 0, 0, params)

    @staticmethod
    def pi(params: RingParams) -> "QuatElem":
        return QuatElem(0, 0, 1, 0, params)

    @staticmethod
    def pi_eps(params: RingParams) -> "QuatElem":
        return QuatElem(0, 0, 0, 1, params)

    # -- structure ------------------------------------------------------

    def coords(self):
        return (self.a, self.b, self.c, self.d)

    def _check(self, other: "QuatElem"):
        if self.params != other.params:
            raise ParamMismatch("operands live in different quotient rings")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuatElem)
            and self.params == other.params
            and self.coords() == other.coords()
        )

    def __hash__(self):
        return hash((self.coords(), self.params))

    def __bool__(self) -> bool:
        return any(self.coords())

    def __add__(self, other: "QuatElem") -> "QuatElem":
        self._check(other)
        return QuatElem(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d, self.params)

    def __neg__(self) -> "QuatElem":
        return QuatElem(-self.a, -self.b, -self.c, -self.d, self.params)

    def __sub__(self, other: "QuatElem") -> "QuatElem":
        return self + (-other)

    def __mul__(self, other: "QuatElem") -> "QuatElem":
        # Write x = alpha + Pi*beta with alpha, beta in the unramified
        # quadratic extension; then
        #   x*y = (alpha*gamma + p*conj(beta)*delta) + Pi*(conj(alpha)*delta + beta*gamma).
        self._check(other)
        pm = self.params
        m, e2, p = pm.modulus, pm.eps2, pm.p
        a1, b1, c1, d1 = self.coords()
        a2, b2, c2, d2 = other.coords()

        def kmul(s1, t1, s2, t2):
            return (s1 * s2 + e2 * t1 * t2) % m, (s1 * t2 + t1 * s2) % m

        u_s, u_t = kmul(a1, b1, a2, b2)
        v_s, v_t = kmul(c1, -d1, c2, d2)
        w_s, w_t = kmul(a1, -b1, c2, d2)
        x_s, x_t = kmul(c1, d1, a2, b2)
        return QuatElem(u_s + p * v_s, u_t + p * v_t, w_s + x_s, w_t + x_t, pm)

    def conj(self) -> "QuatElem":
        """Main involution a + b*eps + c*Pi + d*Pi*eps -> a - b*eps - c*Pi - d*Pi*eps."""
        return QuatElem(self.a, -self.b, -self.c, -self.d, self.params)

    def nrd(self) -> int:
        """Reduced norm a^2 - eps2*b^2 - p*(c^2 - eps2*d^2) mod p^ell."""
        pm = self.params
        return (
            self.a * self.a
            - pm.eps2 * self.b * self.b
            - pm.p * (self.c * self.c - pm.eps2 * self.d * self.d)
        ) % pm.modulus

    def trd(self) -> int:
        """Reduced trace 2a mod p^ell."""
        return (2 * self.a) % self.params.modulus

    def is_scalar(self) -> bool:
        return self.b == 0 and self.c == 0 and self.d == 0

    def pi_valuation(self):
        """Largest v < 2*ell with the element in Pi^v; None for the zero class.

        None means the class is indistinguishable from zero at this level;
        callers needing the exact valuation must raise ell.
        """
        pm = self.params
        va, vb = pm.val_p(self.a), pm.val_p(self.b)
        vc, vd = pm.val_p(self.c), pm.val_p(self.d)
        v = min(2 * va, 2 * vb, 2 * vc + 1, 2 * vd + 1)
        if v >= 2 * pm.ell:
            return None
        return v

    def residue_pair(self):
        """Image in the residue field F_{p^2}: (a mod p, b mod p)."""
        p = self.params.p
        return (self.a % p, self.b % p)

    def __repr__(self) -> str:
        return f"QuatElem{self.coords()}"


class QuatMatrix:
    """Matrix over the quotient ring, stored as a tuple of row tuples."""

    __slots__ = ("rows", "cols", "entries", "params")

    def __init__(self, entries, params: RingParams):
        rows = tuple(tuple(r) for r in entries)
        if not rows or not rows[0]:
            raise DimensionMismatch("empty matrix")
        ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
            for e in r:
                if e.params != params:
                    raise ParamMismatch("entry from a different quotient ring")
        self.rows = len(rows)
        self.cols = ncols
        self.entries = rows
        self.params = params

    @staticmethod
    def identity(n: int, params: RingParams) -> "QuatMatrix":
        one, zero = QuatElem.one(params), QuatElem.zero(params)
        return QuatMatrix(
            [[one if i == j else zero for j in range(n)] for i in range(n)], params
        )

    @staticmethod
    def diagonal(scalars, params: RingParams) -> "QuatMatrix":
        n = len(scalars)
        zero = QuatElem.zero(params)
        return QuatMatrix(
            [
                [QuatElem.scalar(scalars[i], params) if i == j else zero for j in range(n)]
                for i in range(n)
            ],
            params,
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuatMatrix)
            and self.params == other.params
            and self.entries == other.entries
        )

    def __matmul__(self, other: "QuatMatrix") -> "QuatMatrix":
        if self.params != other.params:
            raise ParamMismatch("matrices over different quotient rings")
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        zero = QuatElem.zero(self.params)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return QuatMatrix(out, self.params)

    def __add__(self, other: "QuatMatrix") -> "QuatMatrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch("matrix addition shape mismatch")
        return QuatMatrix(
            [
                [self.entries[i][j] + other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ],
            self.params,
        )

    def __sub__(self, other: "QuatMatrix") -> "QuatMatrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch("matrix subtraction shape mismatch")
        return QuatMatrix(
            [
                [self.entries[i][j] - other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ],
            self.params,
        )

    def star(self) -> "QuatMatrix":
        """Conjugate transpose under the main involution."""
        return QuatMatrix(
            [[self.entries[j][i].conj() for j in range(self.rows)] for i in range(self.cols)],
            self.params,
        )

    def is_hermitian(self) -> bool:
        if self.rows != self.cols:
            return False
        for i in range(self.rows):
            if not self.entries[i][i].is_scalar():
                return False
            for j in range(i + 1, self.cols):
                if self.entries[i][j] != self.entries[j][i].conj():
                    return False
        return True


class HermMatrix(QuatMatrix):
    """Square matrix fixed by the involution; diagonal entries are scalars."""

    def __init__(self, entries, params: RingParams):
        super().__init__(entries, params)
        if not self.is_hermitian():
            raise ValueError("matrix is not hermitian")

    @staticmethod
    def from_matrix(m: QuatMatrix) -> "HermMatrix":
        return HermMatrix(m.entries, m.params)


def herm_apply(a: HermMatrix, u: QuatMatrix) -> HermMatrix:
    """The form change A[u] = u* A u."""
    if a.rows != u.rows:
        raise DimensionMismatch("A[u] needs A m x m and u m x n")
    return HermMatrix.from_matrix(u.star() @ a @ u)


def residue_rank(u: QuatMatrix) -> int:
    """Rank of u over the residue field F_{p^2}.

    The matrix is primitive exactly when the rank equals its column count.
    """
    p = u.params.p
    e2 = u.params.eps2 % p

    def fmul(x, y):
        return ((x[0] * y[0] + e2 * x[1] * y[1]) % p, (x[0] * y[1] + x[1] * y[0]) % p)

    def finv(x):
        # (a + b*eps)^-1 = (a - b*eps)/(a^2 - e2*b^2); the norm is nonzero
        # for nonzero x because e2 is a nonresidue.
        n = (x[0] * x[0] - e2 * x[1] * x[1]) % p
        ninv = pow(n, p - 2, p)
        return ((x[0] * ninv) % p, (-x[1] * ninv) % p)

    mat = [[u.entries[i][j].residue_pair() for j in range(u.cols)] for i in range(u.rows)]
    rank = 0
    row = 0
    for col in range(u.cols):
        piv = None
        for r in range(row, u.rows):
            if mat[r][col] != (0, 0):
                piv = r
                break
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        inv = finv(mat[row][col])
        mat[row] = [fmul(inv, x) for x in mat[row]]
        for r in range(u.rows):
            if r != row and mat[r][col] != (0, 0):
                f = mat[r][col]
                mat[r] = [
                    (((x[0] - fmul(f, y)[0]) % p), ((x[1] - fmul(f, y)[1]) % p))
                    for x, y in zip(mat[r], mat[row])
                ]
        rank += 1
        row += 1
    return rank


def is_primitive(u: QuatMatrix) -> bool:
    return residue_rank(u) == u.cols


# -- reduced norm of square matrices -----------------------------------------
#
# The embedding of a single quaternion into 2x2 matrices over the unramified
# quadratic extension sends a + b*eps + c*Pi + d*Pi*eps to
#
#     [ a + b*eps   (c - d*eps)*p ]
#     [ c + d*eps    a - b*eps    ],
#
# and a matrix over the order goes to the 2n x 2n block matrix of images.
# The determinant is computed division-free over (Z/p^ell)[eps], a commutative
# ring with zero divisors; its eps-component vanishes identically.


def _phi_block(x: QuatElem):
    p = x.params.p
    a, b, c, d = x.coords()
    return [
        [(a, b), ((c * p) % x.params.modulus, (-d * p) % x.params.modulus)],
        [(c, d), (a, -b % x.params.modulus)],
    ]


def _det_permanent_expansion(mat, e2, p_mod):
    """Determinant by signed permutation expansion; fine for size <= 4."""
    n = len(mat)
    import itertools

    total = (0, 0)
    for perm in itertools.permutations(range(n)):
        # permutation sign via cycle decomposition
        visited = [False] * n
        s = 0
        for i in range(n):
            if visited[i]:
                continue
            cycle_len = 0
            j = i
            while not visited[j]:
                visited[j] = True
                j = perm[j]
                cycle_len += 1
            s += cycle_len - 1
        sign = -1 if s % 2 else 1
        prod = (1 % p_mod, 0)
        for i in range(n):
            x = mat[i][perm[i]]
            prod = (
                (prod[0] * x[0] + e2 * prod[1] * x[1]) % p_mod,
                (prod[0] * x[1] + prod[1] * x[0]) % p_mod,
            )
        total = ((total[0] + sign * prod[0]) % p_mod, (total[1] + sign * prod[1]) % p_mod)
    return total


def _det_berkowitz(mat, e2, p_mod):
    """Division-free determinant (Berkowitz), entries in (Z/p^ell)[eps]."""

    def add(x, y):
        return ((x[0] + y[0]) % p_mod, (x[1] + y[1]) % p_mod)

    def mul(x, y):
        return ((x[0] * y[0] + e2 * x[1] * y[1]) % p_mod, (x[0] * y[1] + x[1] * y[0]) % p_mod)

    def neg(x):
        return ((-x[0]) % p_mod, (-x[1]) % p_mod)

    n = len(mat)
    zero, one = (0, 0), (1 % p_mod, 0)
    # iteratively build the characteristic polynomial coefficient vector
    poly = [one, neg(mat[0][0])]
    for k in range(1, n):
        a = mat[k][k]
        row = [mat[k][j] for j in range(k)]
        col = [mat[i][k] for i in range(k)]
        sub = [[mat[i][j] for j in range(k)] for i in range(k)]
        # Toeplitz column: [1, -a, -(R col), -(R M col), ...]
        toep = [one, neg(a)]
        vec = col
        for _ in range(k):
            dot = zero
            for j in range(k):
                dot = add(dot, mul(row[j], vec[j]))
            toep.append(neg(dot))
            vec = [
                _dotrow(sub[i], vec, add, mul, zero) for i in range(k)
            ]
        newpoly = [zero] * (k + 2)
        for i, pc in enumerate(poly):
            for j, tc in enumerate(toep):
                if i + j <= k + 1:
                    newpoly[i + j] = add(newpoly[i + j], mul(pc, tc))
        poly = newpoly
    det = poly[n]
    if n % 2 == 1:
        det = neg(det)
    return det


def _dotrow(row, vec, add, mul, zero):
    acc = zero
    for x, y in zip(row, vec):
        acc = add(acc, mul(x, y))
    return acc


def matrix_nrd(a: QuatMatrix) -> int:
    """Reduced norm: determinant of the 2n x 2n split image, mod p^ell.

    Division-free (the base ring has zero divisors).  Signed permutation
    expansion for 2n <= 4, Berkowitz beyond.  The eps-component of the
    determinant vanishes identically; a nonzero one indicates corruption.
    """
    if a.rows != a.cols:
        raise DimensionMismatch("reduced norm needs a square matrix")
    pm = a.params
    n2 = 2 * a.rows
    big = [[None] * n2 for _ in range(n2)]
    for i in range(a.rows):
        for j in range(a.cols):
            blk = _phi_block(a.entries[i][j])
            big[2 * i][2 * j] = blk[0][0]
            big[2 * i][2 * j + 1] = blk[0][1]
            big[2 * i + 1][2 * j] = blk[1][0]
            big[2 * i + 1][2 * j + 1] = blk[1][1]
    if n2 <= 4:
        det = _det_permanent_expansion(big, pm.eps2, pm.modulus)
    else:
        det = _det_berkowitz(big, pm.eps2, pm.modulus)
    if det[1] % pm.modulus != 0:
        raise ArithmeticError("eps-component of reduced norm did not vanish")
    return det[0] % pm.modulus


def in_congruence(c: HermMatrix, ell: int | None = None) -> bool:
    """Whether the hermitian matrix lies in the congruence set at level ell:
    diagonal entries in p^ell, off-diagonal entries in Pi^(2*ell - 1)."""
    pm = c.params
    if ell is None:
        ell = pm.ell
    if ell > pm.ell:
        raise ValueError("congruence level exceeds ring level")
    pl = pm.p**ell
    for i in range(c.rows):
        if c.entries[i][i].a % pl != 0:
            return False
        for j in range(i + 1, c.cols):
            v = c.entries[i][j].pi_valuation()
            if v is not None and v < 2 * ell - 1:
                return False
    return True
