"""Exact linear algebra over Q and over prime fields F_p.

Row-vector convention throughout the package: a linear map f: K^n -> K^m
is an n x m matrix acting by v |-> v @ M, so row i is the image of the
i-th basis vector.  Subspaces are stored as reduced-echelon row bases,
which makes every basis choice canonical and every report reproducible.

Rational entries are `fractions.Fraction` (lowest terms, positive
denominator, guaranteed by Fraction itself).  Prime-field entries are
ints in [0, p); elimination over F_p runs on numpy integer arrays, which
stays in exact integer arithmetic.  For p <= 11 the storage dtype is
int8 (intermediates are bounded by (p-1)^2 + (p-1) < 128); matrix
products are contracted in int64.  The characteristic is capped at 2**31
so that per-entry products always fit in 64 bits; the shipped scenarios
only use p in {2, 3, 5}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

PRIME_CAP = 2**31


class LinAlgError(ValueError):
    pass


class MixedFieldError(LinAlgError):
    pass


class InducedMapError(LinAlgError):
    """Raised when induced_map preconditions fail; carries a witness vector."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """Ground field: Q (characteristic 0) or F_p for a prime p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0:
            if not _is_prime(p):
                raise LinAlgError(f"characteristic {p} is not prime")
            if p > PRIME_CAP:
                raise LinAlgError(f"characteristic {p} exceeds cap {PRIME_CAP}")

    @property
    def kind(self):
        return "rationals" if self.characteristic == 0 else "prime-field"

    @property
    def is_prime(self):
        return self.characteristic != 0

    @property
    def dtype(self):
        return np.int8 if self.characteristic <= 11 else np.int64

    def of(self, x):
        """Coerce an int / Fraction / 'a/b' string into a field scalar."""
        if self.is_prime:
            if isinstance(x, str):
                x = Fraction(x)
            if isinstance(x, Fraction):
                if x.denominator % self.characteristic == 0:
                    raise LinAlgError(f"{x} has no image in F_{self.characteristic}")
                inv = pow(x.denominator, self.characteristic - 2, self.characteristic)
                return (x.numerator * inv) % self.characteristic
            return int(x) % self.characteristic
        return Fraction(x)

    def zero(self):
        return 0 if self.is_prime else Fraction(0)

    def one(self):
        return 1 if self.is_prime else Fraction(1)

    def __repr__(self):
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"


QQ = Field(0)
GF2 = Field(2)
GF3 = Field(3)
GF5 = Field(5)


def field_by_name(name):
    name = name.lower()
    if name in ("q", "qq", "rationals"):
        return QQ
    if name.startswith("f"):
        return Field(int(name[1:]))
    raise LinAlgError(f"unknown field {name!r}")


# ---------------------------------------------------------------------------
# Matrix
# ---------------------------------------------------------------------------


class Matrix:
    """Dense exact matrix.  Treat instances as immutable."""

    __slots__ = ("field", "rows", "cols", "_a", "_q")

    def __init__(self, field, rows, cols, data):
        self.field = field
        self.rows = rows
        self.cols = cols
        if field.is_prime:
            p = field.characteristic
            a = np.asarray(data, dtype=np.int64).reshape(rows, cols)
            self._a = (a % p).astype(field.dtype)
            self._q = None
        else:
            self._a = None
            self._q = [[Fraction(x) for x in r] for r in data] if rows else []
            for r in self._q:
                if len(r) != cols:
                    raise LinAlgError("ragged matrix rows")

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_rows(cls, field, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise LinAlgError("cols required for empty matrix")
            cols = len(rows[0])
        return cls(field, len(rows), cols, rows)

    @classmethod
    def _wrap_fp(cls, field, a):
        m = cls.__new__(cls)
        m.field = field
        m.rows, m.cols = a.shape
        m._a = a.astype(field.dtype, copy=False)
        m._q = None
        return m

    @classmethod
    def zeros(cls, field, rows, cols):
        if field.is_prime:
            return cls._wrap_fp(field, np.zeros((rows, cols), dtype=field.dtype))
        return cls(field, rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field, n):
        if field.is_prime:
            return cls._wrap_fp(field, np.eye(n, dtype=field.dtype))
        return cls(field, n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    # -- access -------------------------------------------------------------
    def entry(self, i, j):
        if self.field.is_prime:
            return int(self._a[i, j])
        return self._q[i][j]

    def row(self, i):
        if self.field.is_prime:
            return [int(x) for x in self._a[i]]
        return list(self._q[i])

    def row_list(self):
        return [self.row(i) for i in range(self.rows)]

    def np(self):
        return self._a

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_zero(self):
        if self.rows == 0 or self.cols == 0:
            return True
        if self.field.is_prime:
            return not self._a.any()
        return all(x == 0 for r in self._q for x in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.field != other.field or self.shape != other.shape:
            return False
        if self.field.is_prime:
            return bool((self._a == other._a).all())
        return self._q == other._q

    def __repr__(self):
        return f"Matrix({self.field}, {self.rows}x{self.cols})"

    # -- arithmetic ---------------------------------------------------------
    def mul(self, other):
        """Composite map self then other: (v @ self) @ other."""
        if self.field != other.field:
            raise MixedFieldError("matrix product over mixed fields")
        if self.cols != other.rows:
            raise LinAlgError(f"shape mismatch {self.shape} @ {other.shape}")
        f = self.field
        if self.rows == 0 or other.cols == 0:
            return Matrix.zeros(f, self.rows, other.cols)
        if f.is_prime:
            return Matrix._wrap_fp(f, _matmul_fp(self._a, other._a, f.characteristic))
        out = []
        bt = other._q
        for r in self._q:
            row = [Fraction(0)] * other.cols
            for j, x in enumerate(r):
                if x:
                    brow = bt[j]
                    for k in range(other.cols):
                        if brow[k]:
                            row[k] += x * brow[k]
            out.append(row)
        return Matrix(f, self.rows, other.cols, out)

    def add(self, other):
        if self.field != other.field or self.shape != other.shape:
            raise LinAlgError("shape/field mismatch in add")
        if self.field.is_prime:
            p = self.field.characteristic
            return Matrix._wrap_fp(self.field,
                                   (self._a.astype(np.int64) + other._a) % p)
        return Matrix(self.field, self.rows, self.cols,
                      [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._q, other._q)])

    def scale(self, c):
        c = self.field.of(c)
        if self.field.is_prime:
            p = self.field.characteristic
            return Matrix._wrap_fp(self.field, (self._a.astype(np.int64) * c) % p)
        return Matrix(self.field, self.rows, self.cols, [[c * x for x in r] for r in self._q])

    def transpose(self):
        if self.field.is_prime:
            return Matrix._wrap_fp(self.field, self._a.T.copy())
        return Matrix(self.field, self.cols, self.rows,
                      [[self._q[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def stack(self, other):
        """Vertical stack (shared column count)."""
        if self.field != other.field or self.cols != other.cols:
            raise LinAlgError("stack mismatch")
        if self.field.is_prime:
            return Matrix._wrap_fp(self.field, np.vstack([self._a, other._a]))
        return Matrix(self.field, self.rows + other.rows, self.cols, self._q + other._q)

    def take_rows(self, idx):
        idx = list(idx)
        if self.field.is_prime:
            return Matrix._wrap_fp(self.field, self._a[idx].copy()
                                   if idx else np.zeros((0, self.cols), dtype=self.field.dtype))
        return Matrix(self.field, len(idx), self.cols, [self._q[i] for i in idx])

    def take_cols(self, idx):
        idx = list(idx)
        if self.field.is_prime:
            return Matrix._wrap_fp(self.field, self._a[:, idx].copy()
                                   if idx else np.zeros((self.rows, 0), dtype=self.field.dtype))
        return Matrix(self.field, self.rows, len(idx), [[r[j] for j in idx] for r in self._q])


def _matmul_fp(a, b, p):
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    n = a.shape[1]
    # residue products summed over the inner dimension stay below 2**53,
    # so float64 GEMM is exact and about two orders of magnitude faster
    # than integer contraction; fall back to chunked int64 for huge p
    if (p - 1) ** 2 * n < 2**53:
        c = np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
        return c % p
    a64 = a.astype(np.int64)
    b64 = b.astype(np.int64)
    step = max(1, (2**62) // max(1, (p - 1) ** 2) // max(n, 1))
    if step >= n:
        return (a64 @ b64) % p
    acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for i in range(0, n, step):
        acc = (acc + a64[:, i : i + step] @ b64[i : i + step]) % p
    return acc


# ---------------------------------------------------------------------------
# Reduced row echelon form
# ---------------------------------------------------------------------------


def _rref_fp(a, p):
    a = a % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        if inv != 1:
            a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        touch = np.nonzero(col)[0]
        if touch.size:
            a[touch] = (a[touch] - np.outer(col[touch], a[r])) % p
        pivots.append(c)
        r += 1
    return r, pivots, a


def _rref_q(rows, cols):
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(cols):
        if r == len(m):
            break
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        if inv != 1:
            m[r] = [x / inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return r, pivots, m


def rref(m):
    """Reduced row echelon form.  Returns (rank, pivot columns, echelon Matrix)."""
    if m.field.is_prime:
        rank_, pivots, a = _rref_fp(m._a.astype(m.field.dtype, copy=True), m.field.characteristic)
        return rank_, pivots, Matrix._wrap_fp(m.field, a)
    rank_, pivots, rows = _rref_q(m._q, m.cols)
    return rank_, pivots, Matrix(m.field, m.rows, m.cols, rows)


def rank(m):
    return rref(m)[0]


def nullspace(m):
    """Basis of {x in K^rows : x @ m = 0}, as a Subspace of K^rows."""
    f = m.field
    n = m.rows
    if n == 0:
        return Subspace.zero(f, 0)
    if m.cols == 0 or m.is_zero():
        return Subspace.full(f, n)
    rk, pivots, ech = rref(m.transpose())
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    if f.is_prime:
        p = f.characteristic
        B = np.zeros((len(free), n), dtype=f.dtype)
        for row_i, j in enumerate(free):
            B[row_i, j] = 1
        if pivots and free:
            B[:, pivots] = (-(ech._a[:rk][:, free].astype(np.int64)).T) % p
        return Subspace.from_matrix_rows(Matrix._wrap_fp(f, B))
    rows = []
    for j in free:
        v = [f.zero()] * n
        v[j] = f.one()
        for r_i, c in enumerate(pivots):
            e = ech.entry(r_i, j)
            if e:
                v[c] = -e
        rows.append(v)
    return Subspace.from_rows(f, rows, n)


def solve_rows(m, targets):
    """Solve x_i @ m = t_i for each target row; Matrix of solutions or None."""
    f = m.field
    if targets.cols != m.cols or targets.field != f:
        raise LinAlgError("solve_rows shape/field mismatch")
    n, c = m.rows, m.cols
    k = targets.rows
    mt = m.transpose()
    tt = targets.transpose()
    if f.is_prime:
        aug = np.hstack([mt._a, tt._a])
        rk, pivots, ech = _rref_fp(aug.astype(f.dtype, copy=True), f.characteristic)
        echm = Matrix._wrap_fp(f, ech)
    else:
        rows = [mt.row(i) + tt.row(i) for i in range(c)]
        rk, pivots, ech = _rref_q(rows, n + k)
        echm = Matrix(f, c, n + k, ech)
    for c_p in pivots:
        if c_p >= n:
            return None
    sols = []
    pivmap = {c_p: i for i, c_p in enumerate(pivots)}
    for j in range(k):
        x = [f.zero()] * n
        for c_p, r_i in pivmap.items():
            x[c_p] = echm.entry(r_i, n + j)
        sols.append(x)
    return Matrix.from_rows(f, sols, n) if sols else Matrix.zeros(f, 0, n)


def invert(m):
    """Inverse of a square invertible matrix (raises if singular)."""
    if m.rows != m.cols:
        raise LinAlgError("inverse of non-square matrix")
    inv = solve_rows(m, Matrix.identity(m.field, m.rows))
    if inv is None:
        raise LinAlgError("matrix is singular")
    return inv


# ---------------------------------------------------------------------------
# Subspace
# ---------------------------------------------------------------------------


class Subspace:
    """Subspace of K^ambient, basis rows in reduced echelon form.

    ``is_coordinate`` marks spans of standard basis vectors; those admit
    much cheaper reductions (column selection instead of elimination),
    which matters because filtration steps of bar complexes are exactly
    of this shape.
    """

    __slots__ = ("field", "ambient", "basis", "pivots", "is_coordinate")

    def __init__(self, field, ambient, basis, pivots, is_coordinate=False):
        self.field = field
        self.ambient = ambient
        self.basis = basis  # Matrix, rows = dim, RREF, no zero rows
        self.pivots = pivots
        self.is_coordinate = is_coordinate

    @classmethod
    def from_rows(cls, field, rows, ambient):
        m = Matrix.from_rows(field, rows, ambient) if rows else Matrix.zeros(field, 0, ambient)
        return cls.from_matrix_rows(m)

    @classmethod
    def from_matrix_rows(cls, m):
        rk, pivots, ech = rref(m)
        return cls(m.field, m.cols, ech.take_rows(range(rk)), pivots)

    @classmethod
    def zero(cls, field, ambient):
        return cls(field, ambient, Matrix.zeros(field, 0, ambient), [], is_coordinate=True)

    @classmethod
    def full(cls, field, ambient):
        return cls(field, ambient, Matrix.identity(field, ambient),
                   list(range(ambient)), is_coordinate=True)

    @classmethod
    def coordinate(cls, field, ambient, idx):
        """Span of the standard basis vectors with the given indices."""
        idx = sorted(idx)
        if field.is_prime:
            B = np.zeros((len(idx), ambient), dtype=field.dtype)
            for r_i, j in enumerate(idx):
                B[r_i, j] = 1
            return cls(field, ambient, Matrix._wrap_fp(field, B), idx, is_coordinate=True)
        rows = []
        for j in idx:
            v = [field.zero()] * ambient
            v[j] = field.one()
            rows.append(v)
        m = Matrix.from_rows(field, rows, ambient) if rows else Matrix.zeros(field, 0, ambient)
        return cls(field, ambient, m, idx, is_coordinate=True)

    @property
    def dim(self):
        return self.basis.rows

    def is_full(self):
        return self.dim == self.ambient

    def __eq__(self, other):
        return (self.field == other.field and self.ambient == other.ambient
                and self.basis == other.basis)

    def __repr__(self):
        return f"Subspace(dim {self.dim} of K^{self.ambient})"

    def _check_mate(self, other):
        if self.field != other.field:
            raise MixedFieldError("subspace ops over mixed fields")
        if self.ambient != other.ambient:
            raise LinAlgError(f"ambient mismatch {self.ambient} != {other.ambient}")

    # -- reduction against the echelon basis (vectorized) -------------------
    def reduce_matrix(self, m):
        """Residues of the rows of m after elimination by the basis."""
        if self.dim == 0 or m.rows == 0:
            return m
        if self.is_coordinate:
            # eliminating by standard vectors just zeroes their coordinates
            if self.field.is_prime:
                red = m._a.copy()
                red[:, self.pivots] = 0
                return Matrix._wrap_fp(self.field, red)
            pivset = set(self.pivots)
            rows = [[self.field.zero() if j in pivset else x for j, x in enumerate(r)]
                    for r in m._q]
            return Matrix(self.field, m.rows, m.cols, rows)
        if self.field.is_prime:
            p = self.field.characteristic
            coef = m._a[:, self.pivots]
            red = (m._a.astype(np.int64) - _matmul_fp(coef, self.basis._a, p)) % p
            return Matrix._wrap_fp(self.field, red)
        out = []
        for i in range(m.rows):
            v = list(m._q[i])
            for r_i, c in enumerate(self.pivots):
                if v[c]:
                    coefv = v[c]
                    brow = self.basis._q[r_i]
                    v = [x - coefv * y for x, y in zip(v, brow)]
            out.append(v)
        return Matrix(self.field, m.rows, m.cols, out)

    def reduce_vector(self, v):
        m = Matrix.from_rows(self.field, [list(v)], self.ambient)
        return self.reduce_matrix(m).row(0)

    def contains_matrix_rows(self, m):
        return self.reduce_matrix(m).is_zero()

    def contains_vector(self, v):
        return all(x == 0 for x in self.reduce_vector(v))

    def contains(self, other):
        self._check_mate(other)
        if other.dim == 0 or self.is_full():
            return True
        if other.dim > self.dim:
            return False
        return self.contains_matrix_rows(other.basis)

    def coords_in(self, m):
        """Coordinates of row vectors w.r.t. the echelon basis, or None.

        Because the basis is RREF, x = m[:, pivots] whenever m's rows lie in
        the subspace (checked).
        """
        if m.rows == 0:
            return Matrix.zeros(self.field, 0, self.dim)
        x = m.take_cols(self.pivots)
        if not self.reduce_matrix(m).is_zero():
            return None
        return x

    # -- lattice operations --------------------------------------------------
    def sum(self, other):
        self._check_mate(other)
        if self.dim == 0 or other.is_full():
            return other
        if other.dim == 0 or self.is_full():
            return self
        if other.is_coordinate and not self.is_coordinate:
            return other.sum(self)
        if self.is_coordinate:
            # residues of the other part already have zero entries on the
            # coordinate block, so after echelonizing them the union of the
            # two row sets is again a reduced echelon basis
            red = self.reduce_matrix(other.basis)
            rk, piv, ech = rref(red)
            rows = ech.take_rows(range(rk))
            merged = list(zip(self.pivots, range(self.dim), ("c",) * self.dim)) + \
                list(zip(piv, range(rk), ("g",) * rk))
            merged.sort()
            out_rows = []
            for (pcol, i, kind) in merged:
                out_rows.append(self.basis.row(i) if kind == "c" else rows.row(i))
            basis = Matrix.from_rows(self.field, out_rows, self.ambient) if out_rows \
                else Matrix.zeros(self.field, 0, self.ambient)
            return Subspace(self.field, self.ambient, basis,
                            [pcol for (pcol, _, _) in merged])
        return Subspace.from_matrix_rows(self.basis.stack(other.basis))

    def intersect(self, other):
        """Intersection via the kernel of the stacked system u A = v B.

        Implemented by eliminating other's basis against self and taking
        the kernel of the residue block (the echelon-reduced form of the
        same stacked system).
        """
        self._check_mate(other)
        if self.is_full():
            return other
        if other.is_full():
            return self
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient)
        # vectors of other supported inside self: reduce other's rows, kernel
        red = self.reduce_matrix(other.basis)
        ker = nullspace(red)
        if ker.dim == 0:
            return Subspace.zero(self.field, self.ambient)
        return Subspace.from_matrix_rows(ker.basis.mul(other.basis))

    def image(self, f_map):
        """Image subspace of this subspace under v |-> v @ f_map."""
        if self.dim == 0:
            return Subspace.zero(self.field, f_map.cols)
        if self.is_full():
            return Subspace.from_matrix_rows(f_map)
        return Subspace.from_matrix_rows(self.basis.mul(f_map))

    def quotient_projection(self):
        """Matrix K^ambient -> K^(ambient - dim) vanishing exactly here.

        Maps v to its residue after elimination, restricted to the
        non-pivot coordinates.
        """
        f = self.field
        n = self.ambient
        pivset = set(self.pivots)
        nonpiv = [j for j in range(n) if j not in pivset]
        if self.dim == 0:
            return Matrix.identity(f, n)
        ident = Matrix.identity(f, n)
        red = self.reduce_matrix(ident)
        return red.take_cols(nonpiv)


def subspace_sum(a, b):
    return a.sum(b)


def subspace_intersect(a, b):
    return a.intersect(b)


def subspace_contains(a, b):
    return a.contains(b)


def preimage(f_map, w):
    """{x : x @ f_map in w}: kernel of f_map composed with the projection mod w."""
    if w.ambient != f_map.cols:
        raise LinAlgError(f"preimage: codomain {f_map.cols} vs subspace ambient {w.ambient}")
    if w.field != f_map.field:
        raise MixedFieldError("preimage over mixed fields")
    if w.is_full():
        return Subspace.full(f_map.field, f_map.rows)
    if w.dim == 0:
        return nullspace(f_map)
    red = w.reduce_matrix(f_map)
    pivset = set(w.pivots)
    nonpiv = [j for j in range(w.ambient) if j not in pivset]
    return nullspace(red.take_cols(nonpiv))


# ---------------------------------------------------------------------------
# Subquotients and induced maps
# ---------------------------------------------------------------------------


class Subquotient:
    """V/W for subspaces W <= V of K^ambient, with canonical coset basis.

    Coset representatives are the echelon completion: the rows of V's
    echelon basis whose coordinates are not consumed by spanning W.
    """

    __slots__ = ("field", "ambient", "num", "den", "rep_idx", "_den_coords")

    def __init__(self, num, den):
        self.field = num.field
        self.ambient = num.ambient
        self.num = num
        self.den = den
        if den.dim:
            compress = {col: k for k, col in enumerate(num.pivots)}
            if num.is_coordinate and all(c in compress for c in den.pivots):
                # den is supported on num's coordinates, so its echelon basis
                # restricted to those columns is already an echelon basis
                coords = den.basis.take_cols(num.pivots)
                red = num.reduce_matrix(den.basis)
                if not red.is_zero():
                    raise LinAlgError("Subquotient: denominator not inside numerator")
                self._den_coords = Subspace(num.field, num.dim, coords,
                                            [compress[c] for c in den.pivots])
            else:
                coords = num.coords_in(den.basis)
                if coords is None:
                    raise LinAlgError("Subquotient: denominator not inside numerator")
                self._den_coords = Subspace.from_matrix_rows(coords)
            used = set(self._den_coords.pivots)
        else:
            self._den_coords = Subspace.zero(num.field, num.dim)
            used = set()
        self.rep_idx = [i for i in range(num.dim) if i not in used]

    @property
    def dim(self):
        return self.num.dim - self.den.dim

    def reps(self):
        """Matrix whose rows are the coset representative vectors."""
        return self.num.basis.take_rows(self.rep_idx)

    def coords(self, vectors):
        """Quotient coordinates of ambient row vectors (must lie in num)."""
        f = self.field
        if vectors.rows == 0:
            return Matrix.zeros(f, 0, self.dim)
        c = self.num.coords_in(vectors)
        if c is None:
            raise LinAlgError("vector outside numerator subspace")
        red = self._den_coords.reduce_matrix(c)
        return red.take_cols(self.rep_idx)

    def sub_image(self, subspace):
        """Image in the quotient of a subspace of num (Subspace of K^dim)."""
        if subspace.dim == 0:
            return Subspace.zero(self.field, self.dim)
        return Subspace.from_matrix_rows(self.coords(subspace.basis))


def induced_map(f_map, dom, cod):
    """Well-defined map V1/V2 -> W1/W2 induced by f (preconditions checked).

    dom and cod are (V1, V2) / (W1, W2) subspace pairs or Subquotients.
    Raises InducedMapError with a witness vector when f(V1) is not inside
    W1 or f(V2) is not inside W2.
    """
    sq_dom = dom if isinstance(dom, Subquotient) else Subquotient(dom[0], dom[1])
    sq_cod = cod if isinstance(cod, Subquotient) else Subquotient(cod[0], cod[1])
    if sq_dom.den.dim:
        den_img = sq_dom.den.basis.mul(f_map)
        red = sq_cod.den.reduce_matrix(den_img)
        if not red.is_zero():
            for i in range(red.rows):
                if any(x != 0 for x in red.row(i)):
                    raise InducedMapError("f does not map V2 into W2",
                                          witness=sq_dom.den.basis.row(i))
    reps = sq_dom.reps()
    if reps.rows == 0:
        return Matrix.zeros(f_map.field, 0, sq_cod.dim)
    imgs = reps.mul(f_map)
    chk = sq_cod.num.reduce_matrix(imgs)
    if not chk.is_zero():
        for i in range(chk.rows):
            if any(x != 0 for x in chk.row(i)):
                raise InducedMapError("f does not map V1 into W1", witness=reps.row(i))
    return sq_cod.coords(imgs)
