"""Graded spaces, cochain complexes, and (bi)filtered complexes.

Every complex lives in a finite degree window [0, n_max].  A complex may
be a *truncation* of an unbounded object (bar complexes are), which is
recorded in the ``truncated_above`` flag; the spectral-sequence engine
uses it to decide which page entries can be certified.  Filtrations are
descending, stored for every step s in [s_min, s_max + 1], with
F^{s_min} = C and F^{s_max+1} = 0.  The ``exhaustive`` / ``bounded``
flags record whether those end conditions hold for the modeled object
outside the stored window as well.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .linalg import (
    Matrix,
    Subquotient,
    Subspace,
    invert,
    nullspace,
)


class ComplexError(ValueError):
    pass


class GradedSpace:
    """Finite window of a graded vector space with ordered basis labels."""

    def __init__(self, field, n_max, dims, labels=None):
        self.field = field
        self.n_max = n_max
        self.dims = list(dims) + [0] * (n_max + 1 - len(dims))
        if len(self.dims) != n_max + 1 or any(d < 0 for d in self.dims):
            raise ComplexError("bad dimension vector")
        if labels is None:
            labels = [[f"e{n}_{i}" for i in range(d)] for n, d in enumerate(self.dims)]
        self.labels = labels
        for n, d in enumerate(self.dims):
            if len(self.labels[n]) != d or len(set(self.labels[n])) != d:
                raise ComplexError(f"labels in degree {n} not unique / wrong count")

    def dim(self, n):
        if 0 <= n <= self.n_max:
            return self.dims[n]
        return 0

    def total_dim(self):
        return sum(self.dims)

    def __repr__(self):
        return f"GradedSpace({self.field}, dims={self.dims})"


class CochainComplex:
    """Cochain complex in degrees [0, n_max]; d_n: C^n -> C^{n+1} raises degree."""

    def __init__(self, space, d, truncated_above=False, check=True):
        self.space = space
        self.field = space.field
        self.n_max = space.n_max
        self.d = d  # list of Matrix, d[n]: dims[n] x dims[n+1]; d[n_max] into 0
        if len(d) != self.n_max + 1:
            raise ComplexError("need one differential per degree (last one into 0)")
        for n, m in enumerate(d):
            want = (self.space.dim(n), self.space.dim(n + 1))
            if m.shape != want:
                raise ComplexError(f"d_{n} has shape {m.shape}, want {want}")
        self.truncated_above = truncated_above
        if check:
            for n in range(self.n_max):
                if not self.d[n].mul(self.d[n + 1]).is_zero():
                    raise ComplexError(f"d^2 != 0 at degree {n}")

    def dim(self, n):
        return self.space.dim(n)

    def diff(self, n):
        """d_n as a Matrix, zero map outside the window."""
        if 0 <= n <= self.n_max:
            return self.d[n]
        return Matrix.zeros(self.field, self.dim(n), self.dim(n + 1))

    def full(self, n):
        return Subspace.full(self.field, self.dim(n))

    def zero_sub(self, n):
        return Subspace.zero(self.field, self.dim(n))

    def shift(self, k):
        """C[k] with C[k]^n = C^{k+n} (k <= 0 pads below; only k >= 0 supported)."""
        if k < 0:
            raise ComplexError("negative shifts unsupported in the bounded window")
        dims = [self.dim(k + n) for n in range(self.n_max - k + 1)]
        labels = [self.space.labels[k + n] for n in range(self.n_max - k + 1)]
        sp = GradedSpace(self.field, self.n_max - k, dims, labels)
        d = [self.diff(k + n) for n in range(self.n_max - k + 1)]
        return CochainComplex(sp, d, truncated_above=self.truncated_above, check=False)


def cohomology(cx):
    """Cohomology with echelon-chosen cocycle representatives.

    Returns (GradedSpace of dims, list of representative Matrix per degree).
    """
    dims = []
    reps = []
    labels = []
    for n in range(cx.n_max + 1):
        cycles = nullspace(cx.diff(n))
        if n == 0:
            bdries = Subspace.zero(cx.field, cx.dim(n))
        else:
            bdries = Subspace.from_matrix_rows(cx.diff(n - 1))
        sq = Subquotient(cycles, bdries)
        dims.append(sq.dim)
        reps.append(sq.reps())
        labels.append([f"h{n}_{i}" for i in range(sq.dim)])
    space = GradedSpace(cx.field, cx.n_max, dims, labels)
    return space, reps


def cohomology_dims(cx):
    return cohomology(cx)[0].dims


class FilteredComplex:
    """Descending filtration by subcomplexes on a bounded cochain complex.

    ``exhaustive`` / ``bounded`` say whether F^s = C below s_min and
    F^s = 0 above s_max hold for the modeled object, not merely for the
    stored window.  When a construction truncates the filtration (bar
    complexes cut at a maximal word length) it can still be complete in
    low degrees; ``exhaustive_upto`` records the largest total degree
    for which indices below the window are trustworthy anyway.
    """

    def __init__(self, cx, s_min, s_max, steps, exhaustive=True, bounded=True,
                 exhaustive_upto=None, check=True):
        self.complex = cx
        self.field = cx.field
        self.s_min = s_min
        self.s_max = s_max
        # steps[(s, n)] = Subspace of C^n for s in [s_min, s_max + 1]
        self.steps = steps
        self.exhaustive = exhaustive
        self.bounded = bounded
        self.exhaustive_upto = exhaustive_upto
        if check:
            self.validate()

    def sub(self, s, n):
        """F^s C^n with clamping outside the stored window."""
        if n < 0 or n > self.complex.n_max:
            return Subspace.zero(self.field, 0)
        if s < self.s_min:
            return self.complex.full(n)
        if s > self.s_max:
            return self.complex.zero_sub(n)
        return self.steps[(s, n)]

    def known_index(self, s, degree=None):
        """Is F^s fully determined by the stored data (no truncation guess)?

        ``degree`` bounds the total degrees the caller consumes; passing it
        lets a word-length-truncated filtration stay certified in degrees
        where no dropped element can live.
        """
        if self.s_min <= s <= self.s_max + 1:
            return True
        if s < self.s_min:
            if self.exhaustive:
                return True
            return (degree is not None and self.exhaustive_upto is not None
                    and degree <= self.exhaustive_upto)
        return self.bounded

    def exhaustive_in_degree(self, n):
        return self.exhaustive or (self.exhaustive_upto is not None
                                   and n <= self.exhaustive_upto)

    def validate(self):
        cx = self.complex
        for n in range(cx.n_max + 1):
            full = cx.full(n)
            if self.sub(self.s_min, n).dim != full.dim:
                raise ComplexError(f"F^{self.s_min} C^{n} is not everything")
            if self.sub(self.s_max + 1, n).dim != 0:
                raise ComplexError(f"F^{self.s_max + 1} C^{n} is nonzero")
            for s in range(self.s_min, self.s_max + 1):
                lo, hi = self.sub(s + 1, n), self.sub(s, n)
                if not hi.contains(lo):
                    raise ComplexError(f"filtration not nested at (s={s}, n={n})")
            for s in range(self.s_min, self.s_max + 1):
                img = self.sub(s, n).image(cx.diff(n))
                if not self.sub(s, n + 1).contains(img):
                    raise ComplexError(f"filtration not d-stable at (s={s}, n={n})")

    def window(self):
        return (self.s_min, self.s_max)


class BifilteredComplex:
    """Two independent filtrations F and W on one complex."""

    def __init__(self, cx, filt_f, filt_w):
        if filt_f.complex is not cx or filt_w.complex is not cx:
            raise ComplexError("filtrations must live on the given complex")
        self.complex = cx
        self.field = cx.field
        self.F = filt_f
        self.W = filt_w


def one_step_filtration(cx):
    """The trivial filtration F^0 = C, F^1 = 0."""
    steps = {}
    for n in range(cx.n_max + 1):
        steps[(0, n)] = cx.full(n)
        steps[(1, n)] = cx.zero_sub(n)
    return FilteredComplex(cx, 0, 0, steps, check=False)


def gr(fc, s):
    """Associated graded piece F^s / F^{s+1} as a complex, with its subquotients.

    Returns (CochainComplex, list of Subquotient per degree).
    """
    cx = fc.complex
    sqs = []
    dims = []
    for n in range(cx.n_max + 1):
        sq = Subquotient(fc.sub(s, n), fc.sub(s + 1, n))
        sqs.append(sq)
        dims.append(sq.dim)
    d = []
    from .linalg import induced_map
    for n in range(cx.n_max + 1):
        if n == cx.n_max:
            d.append(Matrix.zeros(cx.field, dims[n], 0))
            continue
        d.append(induced_map(cx.diff(n), (sqs[n].num, sqs[n].den),
                             (sqs[n + 1].num, sqs[n + 1].den)))
    labels = [[f"gr{s}({n})_{i}" for i in range(dims[n])] for n in range(cx.n_max + 1)]
    sp = GradedSpace(cx.field, cx.n_max, dims, labels)
    gr_cx = CochainComplex(sp, d, truncated_above=cx.truncated_above, check=False)
    return gr_cx, sqs


def tensor(c1, c2, n_max=None):
    """Tensor product complex with the Koszul sign d(a@b) = da@b + (-1)^|a| a@db.

    Basis ordering in degree n: blocks (i, n - i) for i ascending, each block
    in row-major (c1 index major) order.  Truncation above n_max is recorded.
    """
    if c1.field != c2.field:
        raise ComplexError("tensor over mixed fields")
    field = c1.field
    nat = c1.n_max + c2.n_max
    if n_max is None:
        n_max = nat
    truncated = n_max < nat or c1.truncated_above or c2.truncated_above

    def block_index(n):
        # list of (i, j, offset) with i + j = n
        out = []
        off = 0
        for i in range(max(0, n - c2.n_max), min(n, c1.n_max) + 1):
            j = n - i
            out.append((i, j, off))
            off += c1.dim(i) * c2.dim(j)
        return out, off

    dims = []
    labels = []
    index = []
    for n in range(n_max + 1):
        blocks, total = block_index(n)
        index.append(blocks)
        dims.append(total)
        lab = []
        for (i, j, _) in blocks:
            for a in c1.space.labels[i]:
                for b in c2.space.labels[j]:
                    lab.append(f"{a}⊗{b}")
        labels.append(lab)

    d = []
    for n in range(n_max + 1):
        rows = []
        blocks, _ = block_index(n)
        nxt, total_next = block_index(n + 1) if n < n_max else ([], 0)
        pos_next = {(i, j): off for (i, j, off) in nxt}
        for (i, j, _) in blocks:
            d1 = c1.diff(i)
            d2 = c2.diff(j)
            for a in range(c1.dim(i)):
                for b in range(c2.dim(j)):
                    row = [field.zero()] * total_next
                    if (i + 1, j) in pos_next:
                        off = pos_next[(i + 1, j)]
                        for a2 in range(c1.dim(i + 1)):
                            v = d1.entry(a, a2)
                            if v:
                                row[off + a2 * c2.dim(j) + b] = v
                    if (i, j + 1) in pos_next:
                        off = pos_next[(i, j + 1)]
                        sgn = -1 if i % 2 else 1
                        for b2 in range(c2.dim(j + 1)):
                            v = d2.entry(b, b2)
                            if v:
                                val = v if sgn == 1 else -v
                                row[off + a * c2.dim(j + 1) + b2] = field.of(val)
                    rows.append(row)
        d.append(Matrix.from_rows(field, rows, total_next) if rows
                 else Matrix.zeros(field, 0, total_next))
    sp = GradedSpace(field, n_max, dims, labels)
    return CochainComplex(sp, d, truncated_above=truncated)


def unit_complex(field, n_max=0):
    """K concentrated in degree 0."""
    sp = GradedSpace(field, n_max, [1] + [0] * n_max, [["1"]] + [[] for _ in range(n_max)])
    d = [Matrix.zeros(field, sp.dim(n), sp.dim(n + 1)) for n in range(n_max + 1)]
    return CochainComplex(sp, d)


# ---------------------------------------------------------------------------
# Random instances (fuel for the property suites)
# ---------------------------------------------------------------------------


def _random_unit_triangular(field, levels, rng, dominate):
    """I + N with N supported where dominate(level_j, level_i) strictly holds."""
    n = len(levels)
    rows = [[field.one() if i == j else field.zero() for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j and dominate(levels[j], levels[i]):
                if rng.random() < 0.5:
                    if field.is_prime:
                        rows[i][j] = rng.randrange(field.characteristic)
                    else:
                        rows[i][j] = Fraction(rng.randrange(-2, 3))
    return Matrix.from_rows(field, rows, n)


def random_filtered_complex(seed, field=None, n_max=3, max_dim=3, s_max=2):
    """Random valid FilteredComplex with known cohomology.

    Construction: a direct sum of two-term complexes (x in degree n at
    filtration level s1 mapping to y in degree n+1 at level s2 >= s1) and
    singleton generators, twisted by a random filtration-preserving change
    of basis.  Returns (FilteredComplex, expected cohomology dims).
    """
    rng = random.Random(seed)
    if field is None:
        from .linalg import GF2, GF3, QQ
        field = rng.choice([QQ, GF2, GF3])
    gens = {n: [] for n in range(n_max + 1)}  # (level, kind, partner)
    expected_h = [0] * (n_max + 1)
    for n in range(n_max + 1):
        budget = rng.randrange(0, max_dim + 1)
        while len(gens[n]) < budget:
            if n < n_max and rng.random() < 0.55 and len(gens[n + 1]) < max_dim + 2:
                s1 = rng.randrange(0, s_max + 1)
                s2 = rng.randrange(s1, s_max + 1)
                i1 = len(gens[n])
                i2 = len(gens[n + 1])
                gens[n].append((s1, "pair", i2))
                gens[n + 1].append((s2, "target", i1))
            else:
                gens[n].append((rng.randrange(0, s_max + 1), "single", None))
                expected_h[n] += 1
    dims = [len(gens[n]) for n in range(n_max + 1)]
    d = []
    for n in range(n_max + 1):
        rows = []
        ncols = dims[n + 1] if n < n_max else 0
        for (lvl, kind, partner) in gens[n]:
            row = [field.zero()] * ncols
            if kind == "pair" and n < n_max:
                row[partner] = field.one()
            rows.append(row)
        d.append(Matrix.from_rows(field, rows, ncols) if rows else Matrix.zeros(field, 0, ncols))
    # twist by a filtration-preserving unit-triangular automorphism per degree
    g = []
    ginv = []
    for n in range(n_max + 1):
        levels = [lvl for (lvl, _, _) in gens[n]]
        t = _random_unit_triangular(field, levels, rng, lambda lj, li: lj > li)
        g.append(t)
        inv = invert(t)
        ginv.append(inv)
    d_twisted = []
    for n in range(n_max + 1):
        if n < n_max:
            d_twisted.append(ginv[n].mul(d[n]).mul(g[n + 1]))
        else:
            d_twisted.append(Matrix.zeros(field, dims[n], 0))
    labels = [[f"g{n}_{i}" for i in range(dims[n])] for n in range(n_max + 1)]
    sp = GradedSpace(field, n_max, dims, labels)
    cx = CochainComplex(sp, d_twisted)
    steps = {}
    for s in range(0, s_max + 2):
        for n in range(n_max + 1):
            rows = [g[n].row(i) for i, (lvl, _, _) in enumerate(gens[n]) if lvl >= s]
            steps[(s, n)] = Subspace.from_rows(field, rows, dims[n])
    fc = FilteredComplex(cx, 0, s_max, steps)
    return fc, expected_h

def random_bifiltered_complex(seed, field=None, n_max=3, max_dim=3, s_max=2, t_max=2):
    """Random valid BifilteredComplex (same construction, two level axes)."""
    rng = random.Random(seed + 10_000)
    if field is None:
        from .linalg import GF2, GF3, QQ
        field = rng.choice([QQ, GF2, GF3])
    gens = {n: [] for n in range(n_max + 1)}
    expected_h = [0] * (n_max + 1)
    for n in range(n_max + 1):
        budget = rng.randrange(0, max_dim + 1)
        while len(gens[n]) < budget:
            if n < n_max and rng.random() < 0.55 and len(gens[n + 1]) < max_dim + 2:
                s1 = rng.randrange(0, s_max + 1)
                t1 = rng.randrange(0, t_max + 1)
                s2 = rng.randrange(s1, s_max + 1)
                t2 = rng.randrange(t1, t_max + 1)
                i2 = len(gens[n + 1])
                gens[n].append(((s1, t1), "pair", i2))
                gens[n + 1].append(((s2, t2), "target", len(gens[n]) - 1))
            else:
                gens[n].append(((rng.randrange(0, s_max + 1), rng.randrange(0, t_max + 1)),
                                "single", None))
                expected_h[n] += 1
    dims = [len(gens[n]) for n in range(n_max + 1)]
    d = []
    for n in range(n_max + 1):
        ncols = dims[n + 1] if n < n_max else 0
        rows = []
        for (lvl, kind, partner) in gens[n]:
            row = [field.zero()] * ncols
            if kind == "pair" and n < n_max:
                row[partner] = field.one()
            rows.append(row)
        d.append(Matrix.from_rows(field, rows, ncols) if rows else Matrix.zeros(field, 0, ncols))
    def dominates(lj, li):
        return lj[0] >= li[0] and lj[1] >= li[1] and lj != li
    g, ginv = [], []
    for n in range(n_max + 1):
        levels = [lvl for (lvl, _, _) in gens[n]]
        t = _random_unit_triangular(field, levels, rng, dominates)
        g.append(t)
        ginv.append(invert(t))
    d_twisted = []
    for n in range(n_max + 1):
        if n < n_max:
            d_twisted.append(ginv[n].mul(d[n]).mul(g[n + 1]))
        else:
            d_twisted.append(Matrix.zeros(field, dims[n], 0))
    labels = [[f"g{n}_{i}" for i in range(dims[n])] for n in range(n_max + 1)]
    sp = GradedSpace(field, n_max, dims, labels)
    cx = CochainComplex(sp, d_twisted)
    steps_f, steps_w = {}, {}
    for n in range(n_max + 1):
        for s in range(0, s_max + 2):
            rows = [g[n].row(i) for i, (lvl, _, _) in enumerate(gens[n]) if lvl[0] >= s]
            steps_f[(s, n)] = Subspace.from_rows(field, rows, dims[n])
        for t in range(0, t_max + 2):
            rows = [g[n].row(i) for i, (lvl, _, _) in enumerate(gens[n]) if lvl[1] >= t]
            steps_w[(t, n)] = Subspace.from_rows(field, rows, dims[n])
    ff = FilteredComplex(cx, 0, s_max, steps_f)
    fw = FilteredComplex(cx, 0, t_max, steps_w)
    return BifilteredComplex(cx, ff, fw), expected_h

