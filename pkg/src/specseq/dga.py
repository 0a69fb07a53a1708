"""Finite-type differential graded algebras, modules, and morphisms.

All algebras live in a bounded degree window; products that would land
above the window are truncated to zero and the algebra is flagged
``truncated_above`` so downstream consumers know values past the window
are not modeled.  The builders cover the three kinds of models the
scenarios need: polynomial algebras on even generators (odd allowed in
characteristic 2), free graded-commutative algebras with a prescribed
differential on generators, and the normalized group cochain algebra of
Z/l over F_l (a genuinely non-formal cochain-level model).

One sign oracle serves this module, the tensor code, and the bar
construction: ``koszul_sign`` for transposing homogeneous factors and
``prefix_sign`` for operators acting at an interior position of a word.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .linalg import Matrix, field_by_name
from .complexes import CochainComplex, GradedSpace


class DGAError(ValueError):
    pass


# ---------------------------------------------------------------------------
# sign oracle
# ---------------------------------------------------------------------------


def koszul_sign(deg_a, deg_b):
    """Sign for moving a past b: (-1)^(|a||b|)."""
    return -1 if (deg_a % 2) and (deg_b % 2) else 1


def prefix_sign(degrees):
    """Sign for a degree-1 operator passing the listed (shifted) degrees."""
    return -1 if sum(degrees) % 2 else 1


# ---------------------------------------------------------------------------
# DGAlgebra
# ---------------------------------------------------------------------------


class DGAlgebra:
    """Degreewise-based DG algebra with multiplication structure constants.

    keys[n] is the ordered list of basis keys in degree n; mult_basis
    returns the structure constants of a product of basis elements as a
    sparse dict {index: coeff} in the target degree (empty past the
    window, which sets ``truncated_above``).
    """

    def __init__(self, field, n_max, keys, labels, mult_fn, d_matrices,
                 commutative=True, truncated_above=False, generators=None,
                 gen_degrees=None, name=""):
        self.field = field
        self.n_max = n_max
        self.keys = keys          # list per degree
        self.labels = labels      # list per degree
        self.index = [{k: i for i, k in enumerate(keys[n])} for n in range(n_max + 1)]
        self._mult_fn = mult_fn
        self._mult_cache = {}
        self.d = d_matrices
        self.commutative = commutative
        self.truncated_above = truncated_above
        self.generators = generators or []
        self.gen_degrees = gen_degrees or {}
        self.name = name
        if not keys[0]:
            raise DGAError("algebra must be connected with a unit in degree 0")
        self.unit = (0, 0)

    def dim(self, n):
        if 0 <= n <= self.n_max:
            return len(self.keys[n])
        return 0

    def dims(self):
        return [self.dim(n) for n in range(self.n_max + 1)]

    def augmentation(self, vec):
        """Augmentation of a degree-0 element (coefficient of the unit)."""
        return vec[0]

    def mult_basis(self, d1, i1, d2, i2):
        key = (d1, i1, d2, i2)
        got = self._mult_cache.get(key)
        if got is None:
            got = self._mult_fn(d1, i1, d2, i2)
            self._mult_cache[key] = got
        return got

    def el_mult(self, d1, v1, d2, v2):
        """Product of two degree-homogeneous elements given as coeff lists."""
        f = self.field
        n = d1 + d2
        out = [f.zero()] * self.dim(n)
        if n > self.n_max:
            return out
        for i1, c1 in enumerate(v1):
            if not c1:
                continue
            for i2, c2 in enumerate(v2):
                if not c2:
                    continue
                for j, c in self.mult_basis(d1, i1, d2, i2).items():
                    out[j] = f.of(out[j] + f.of(c1 * c2 * c)) if f.is_prime \
                        else out[j] + c1 * c2 * c
        return out

    def diff(self, n):
        if 0 <= n <= self.n_max:
            return self.d[n]
        return Matrix.zeros(self.field, 0, 0)

    def complex(self):
        sp = GradedSpace(self.field, self.n_max, self.dims(), [list(l) for l in self.labels])
        return CochainComplex(sp, list(self.d), truncated_above=self.truncated_above,
                              check=False)

    def cohomology_dims(self):
        from .complexes import cohomology_dims
        return cohomology_dims(self.complex())

    def label(self, n, i):
        return self.labels[n][i]

    def __repr__(self):
        return f"DGAlgebra({self.name or 'anonymous'}, {self.field}, n_max={self.n_max})"


# -- free graded-commutative monomials ---------------------------------------


def _monomials(gen_degrees, odd_mask, n_max, char2):
    """All exponent tuples of total degree <= n_max, graded-lex ordered."""
    out = {n: [] for n in range(n_max + 1)}

    def rec(i, remaining, current):
        if i == len(gen_degrees):
            out[n_max - remaining].append(tuple(current))
            return
        dmax = remaining // gen_degrees[i]
        if odd_mask[i] and not char2:
            dmax = min(dmax, 1)
        for e in range(dmax + 1):
            rec(i + 1, remaining - e * gen_degrees[i], current + [e])

    rec(0, n_max, [])
    for n in out:
        out[n].sort(reverse=True)  # graded-lex within fixed degree
    return [out[n] for n in range(n_max + 1)]


def _monomial_label(gens, expo):
    parts = []
    for (g, _), e in zip(gens, expo):
        if e == 1:
            parts.append(g)
        elif e > 1:
            parts.append(f"{g}^{e}")
    return "*".join(parts) if parts else "1"


def _free_mult_sign(gens_odd, alpha, beta):
    """Koszul sign for x^alpha * x^beta in the canonical generator order."""
    swaps = 0
    for i, bi in enumerate(beta):
        if not (gens_odd[i] and bi):
            continue
        odd_later = sum(a for j, a in enumerate(alpha) if j > i and gens_odd[j])
        swaps += bi * odd_later
    return -1 if swaps % 2 else 1


def _make_free_algebra(field, gens, n_max, name):
    """Shared constructor for polynomial_dga / free_cdga bases and products."""
    gen_degrees = [d for (_, d) in gens]
    odd_mask = [d % 2 == 1 for (_, d) in gens]
    char2 = field.characteristic == 2
    keys = _monomials(gen_degrees, odd_mask, n_max, char2)
    labels = [[_monomial_label(gens, e) for e in keys[n]] for n in range(n_max + 1)]
    index = [{k: i for i, k in enumerate(keys[n])} for n in range(n_max + 1)]

    def mult_fn(d1, i1, d2, i2):
        n = d1 + d2
        if n > n_max:
            return {}
        a = keys[d1][i1]
        b = keys[d2][i2]
        if not char2:
            for i in range(len(gens)):
                if odd_mask[i] and a[i] and b[i]:
                    return {}
        prod = tuple(x + y for x, y in zip(a, b))
        sgn = 1 if char2 else _free_mult_sign(odd_mask, a, b)
        j = index[n].get(prod)
        if j is None:
            return {}
        return {j: field.of(sgn)}

    return keys, labels, mult_fn, gen_degrees, odd_mask


def polynomial_dga(field, gens, n_max, name=""):
    """Polynomial algebra on the given (label, degree) generators, zero differential.

    Odd-degree generators are allowed only in characteristic 2 (where the
    free graded-commutative algebra is genuinely polynomial).
    """
    for (g, d) in gens:
        if d < 1:
            raise DGAError(f"generator {g} must have positive degree")
        if d % 2 == 1 and field.characteristic != 2:
            raise DGAError(f"odd-degree generator {g} needs characteristic 2")
    keys, labels, mult_fn, gen_degrees, _ = _make_free_algebra(field, gens, n_max, name)
    dims = [len(k) for k in keys]
    d_mats = [Matrix.zeros(field, dims[n], dims[n + 1] if n < n_max else 0)
              for n in range(n_max + 1)]
    return DGAlgebra(field, n_max, keys, labels, mult_fn, d_mats,
                     commutative=True, truncated_above=bool(gens),
                     generators=[g for g, _ in gens],
                     gen_degrees={g: d for g, d in gens},
                     name=name or "poly(" + ",".join(g for g, _ in gens) + ")")


def free_cdga(field, gens, diffs, n_max, name="", order="grlex"):
    """Free graded-commutative algebra with a derivation differential.

    ``diffs`` maps generator labels to polynomial strings (or monomial
    dicts) of one degree higher; unmapped generators are closed.  d^2 = 0
    is verified on generators, reporting the first failure.
    ``order`` ('grlex' or 'grevlex') only permutes the stored monomial
    bases; cohomology must not depend on it.
    """
    keys, labels, mult_fn, gen_degrees, odd_mask = _make_free_algebra(field, gens, n_max, name)
    if order == "grevlex":
        keys = [sorted(ks) for ks in keys]
        labels = [[_monomial_label(gens, e) for e in ks] for ks in keys]
        index = [{k: i for i, k in enumerate(keys[n])} for n in range(n_max + 1)]
        char2 = field.characteristic == 2

        def mult_fn(d1, i1, d2, i2, _index=index, _keys=keys):
            n = d1 + d2
            if n > n_max:
                return {}
            a = _keys[d1][i1]
            b = _keys[d2][i2]
            if not char2:
                for i in range(len(gens)):
                    if odd_mask[i] and a[i] and b[i]:
                        return {}
            prod = tuple(x + y for x, y in zip(a, b))
            sgn = 1 if char2 else _free_mult_sign(odd_mask, a, b)
            j = _index[n].get(prod)
            return {} if j is None else {j: field.of(sgn)}
    elif order != "grlex":
        raise DGAError(f"unknown monomial order {order!r}")

    index = [{k: i for i, k in enumerate(keys[n])} for n in range(n_max + 1)]
    gen_list = [g for g, _ in gens]
    parsed = {}
    for g, expr in (diffs or {}).items():
        if g not in gen_list:
            raise DGAError(f"differential assigned to unknown generator {g}")
        want = gen_degrees[gen_list.index(g)] + 1
        poly = expr if isinstance(expr, dict) else parse_polynomial(expr, gen_list)
        for mono in poly:
            deg = sum(e * gen_degrees[i] for i, e in enumerate(mono))
            if deg != want:
                raise DGAError(f"d({g}) must be homogeneous of degree {want}")
        parsed[g] = poly

    def el_of_poly(poly, deg):
        out = [field.zero()] * len(keys[deg])
        for mono, c in poly.items():
            j = index[deg].get(mono)
            if j is not None:
                out[j] = field.of(out[j] + field.of(c)) if field.is_prime else out[j] + field.of(c)
        return out

    # derivation on a monomial: split into an ordered letter sequence
    def d_of_key(n, key):
        out = [field.zero()] * (len(keys[n + 1]) if n + 1 <= n_max else 0)
        if n + 1 > n_max:
            return out
        letters = []
        for i, e in enumerate(key):
            letters.extend([i] * e)
        for pos, gi in enumerate(letters):
            g = gen_list[gi]
            if g not in parsed:
                continue
            pre_deg = sum(gen_degrees[letters[j]] for j in range(pos))
            sgn = prefix_sign([pre_deg])
            pre = tuple(letters[:pos].count(i) for i in range(len(gens)))
            suf = tuple(letters[pos + 1:].count(i) for i in range(len(gens)))
            pre_deg_total = sum(e * gen_degrees[i] for i, e in enumerate(pre))
            suf_deg = sum(e * gen_degrees[i] for i, e in enumerate(suf))
            dg_deg = gen_degrees[gi] + 1
            dg_vec = el_of_poly(parsed[g], dg_deg)
            # pre * dg * suf via basis products
            pre_idx = index[pre_deg_total].get(pre)
            suf_idx = index[suf_deg].get(suf)
            if pre_idx is None or suf_idx is None:
                continue
            mid = [field.zero()] * len(keys[pre_deg_total + dg_deg]) \
                if pre_deg_total + dg_deg <= n_max else None
            if mid is None:
                continue
            for j, c in enumerate(dg_vec):
                if not c:
                    continue
                for jj, cc in mult_fn(pre_deg_total, pre_idx, dg_deg, j).items():
                    mid[jj] = field.of(mid[jj] + field.of(cc * c)) if field.is_prime \
                        else mid[jj] + cc * c
            tot_deg = pre_deg_total + dg_deg + suf_deg
            if tot_deg > n_max:
                continue
            for j, c in enumerate(mid):
                if not c:
                    continue
                for jj, cc in mult_fn(pre_deg_total + dg_deg, j, suf_deg, suf_idx).items():
                    val = cc * c * (1 if sgn == 1 else -1)
                    out[jj] = field.of(out[jj] + field.of(val)) if field.is_prime \
                        else out[jj] + val
        return out

    d_mats = []
    for n in range(n_max + 1):
        rows = [d_of_key(n, k) for k in keys[n]]
        cols = len(keys[n + 1]) if n + 1 <= n_max else 0
        d_mats.append(Matrix.from_rows(field, rows, cols) if rows
                      else Matrix.zeros(field, 0, cols))
    finite = (field.characteristic != 2 and all(d % 2 == 1 for _, d in gens)
              and sum(d for _, d in gens) <= n_max)
    alg = DGAlgebra(field, n_max, keys, labels, mult_fn, d_mats,
                    commutative=True, truncated_above=not finite,
                    generators=gen_list,
                    gen_degrees={g: d for g, d in gens},
                    name=name or "free_cdga")
    # d^2 = 0 on generators (hence everywhere, by the derivation property)
    for g, d_gen in gens:
        if d_gen + 2 > n_max:
            continue
        gi = gen_list.index(g)
        mono = tuple(1 if i == gi else 0 for i in range(len(gens)))
        v = [field.zero()] * alg.dim(d_gen)
        v[index[d_gen][mono]] = field.one()
        m1 = Matrix.from_rows(field, [v], alg.dim(d_gen)).mul(alg.d[d_gen])
        m2 = m1.mul(alg.d[d_gen + 1])
        if not m2.is_zero():
            raise DGAError(f"d^2 != 0 on generator {g}")
    return alg


def polynomial_quotient_dga(field, gens, relations, n_max, name=""):
    """Quotient of a free graded-commutative algebra by a homogeneous ideal.

    Bases are echelon-chosen monomial cosets computed degreewise by the
    ideal-membership oracle (linear spans of generator multiples; the
    windows are small enough that no Groebner machinery is warranted).
    The result is complete (not truncated) when the quotient dies in the
    top max-generator-degree window, e.g. H(S^2) = K[s]/(s^2) or the
    cohomology of a flag manifold.
    """
    free = polynomial_dga(field, gens, n_max, name=f"{name}-ambient") \
        if all(d % 2 == 0 or field.characteristic == 2 for _, d in gens) \
        else free_cdga(field, gens, {}, n_max, name=f"{name}-ambient")
    gen_list = [g for g, _ in gens]
    rel_elems = []
    for rel in relations:
        poly = rel if isinstance(rel, dict) else parse_polynomial(rel, gen_list)
        degs = {sum(e * d for e, (_, d) in zip(mono, gens)) for mono in poly}
        if len(degs) != 1:
            raise DGAError(f"relation {rel!r} is not homogeneous")
        d = degs.pop()
        vec = [field.zero()] * free.dim(d)
        for mono, c in poly.items():
            j = free.index[d].get(mono)
            if j is None:
                raise DGAError(f"relation {rel!r} leaves the window")
            vec[j] = field.of(vec[j] + field.of(c)) if field.is_prime else vec[j] + field.of(c)
        rel_elems.append((d, vec))
    # degreewise ideal spans: span{rel * monomial}
    from .linalg import Subspace, Subquotient
    spans = []
    for d in range(n_max + 1):
        rows = []
        for (e, vec) in rel_elems:
            if e > d:
                continue
            for i in range(free.dim(d - e)):
                unit = [field.zero()] * free.dim(d - e)
                unit[i] = field.one()
                rows.append(free.el_mult(e, vec, d - e, unit))
        spans.append(Subspace.from_rows(field, rows, free.dim(d)))
    sqs = [Subquotient(Subspace.full(field, free.dim(d)), spans[d])
           for d in range(n_max + 1)]
    keys = [[("q", d, i) for i in range(sqs[d].dim)] for d in range(n_max + 1)]
    labels = []
    for d in range(n_max + 1):
        reps = sqs[d].reps()
        lab = []
        for i in range(reps.rows):
            terms = [(free.labels[d][j], reps.entry(i, j)) for j in range(reps.cols)
                     if reps.entry(i, j)]
            lab.append("+".join(t if c == field.one() else f"{c}*{t}" for t, c in terms)
                       or "0")
        labels.append(lab)

    def mult_fn(d1, i1, d2, i2):
        n = d1 + d2
        if n > n_max:
            return {}
        r1 = sqs[d1].reps().row(i1)
        r2 = sqs[d2].reps().row(i2)
        prod = free.el_mult(d1, r1, d2, r2)
        coords = sqs[n].coords(Matrix.from_rows(field, [prod], free.dim(n)))
        return {j: coords.entry(0, j) for j in range(coords.cols) if coords.entry(0, j)}

    dims = [sqs[d].dim for d in range(n_max + 1)]
    d_mats = [Matrix.zeros(field, dims[d], dims[d + 1] if d < n_max else 0)
              for d in range(n_max + 1)]
    top = max((d for _, d in gens), default=1)
    complete = all(dims[d] == 0 for d in range(max(1, n_max - top + 1), n_max + 1))
    alg = DGAlgebra(field, n_max, keys, labels, mult_fn, d_mats,
                    commutative=True, truncated_above=not complete,
                    generators=gen_list, gen_degrees={g: d for g, d in gens},
                    name=name or "quotient")
    alg.quotient_reps = sqs
    alg.ambient_free = free
    return alg


def quotient_element_of(alg, expr):
    """(degree, coset vector) of a polynomial expression in a quotient algebra."""
    free = alg.ambient_free
    poly = expr if isinstance(expr, dict) else parse_polynomial(expr, alg.generators)
    degs = {sum(e * free.gen_degrees[g] for e, g in zip(mono, alg.generators))
            for mono in poly if poly[mono]}
    if len(degs) > 1:
        raise DGAError(f"element {expr!r} not homogeneous")
    if not degs:
        return (0, [alg.field.zero()] * alg.dim(0))
    d = degs.pop()
    vec = [alg.field.zero()] * free.dim(d)
    f = alg.field
    for mono, c in poly.items():
        j = free.index[d].get(mono)
        if j is None:
            raise DGAError(f"element {expr!r} leaves the window")
        vec[j] = f.of(vec[j] + f.of(c)) if f.is_prime else vec[j] + f.of(c)
    coords = alg.quotient_reps[d].coords(Matrix.from_rows(f, [vec], free.dim(d)))
    return (d, coords.row(0))


def element_of(algebra, expr):
    """(degree, coefficient vector) of a homogeneous polynomial expression.

    Works for monomial-keyed free/polynomial algebras and for quotient
    algebras built by polynomial_quotient_dga.
    """
    if hasattr(algebra, "quotient_reps"):
        return quotient_element_of(algebra, expr)
    poly = expr if isinstance(expr, dict) else parse_polynomial(expr, algebra.generators)
    degs = set()
    for mono, c in poly.items():
        if not c:
            continue
        d = sum(e * algebra.gen_degrees[g] for e, g in zip(mono, algebra.generators))
        degs.add(d)
    if len(degs) > 1:
        raise DGAError(f"element {expr!r} is not homogeneous")
    if not degs:
        return (0, [algebra.field.zero()] * algebra.dim(0))
    d = degs.pop()
    vec = [algebra.field.zero()] * algebra.dim(d)
    f = algebra.field
    for mono, c in poly.items():
        j = algebra.index[d].get(mono)
        if j is None:
            raise DGAError(f"monomial of {expr!r} falls outside the algebra window")
        vec[j] = f.of(vec[j] + f.of(c)) if f.is_prime else vec[j] + f.of(c)
    return (d, vec)


def group_cochain_dga(ell, n_max, name=""):
    """Normalized group cochains of Z/ell with F_ell coefficients.

    Degree-n basis: indicator functions of tuples in ((Z/ell) - 0)^n, so
    the dimension is (ell-1)^n.  The cup product concatenates tuples and
    the differential is the standard normalized group-cohomology one.
    This algebra is a genuine cochain model of the classifying space:
    its product is not graded-commutative, and for odd ell the bar
    spectral sequence built on it has higher differentials.
    """
    field = field_by_name(f"f{ell}")
    keys = [list(itertools.product(range(1, ell), repeat=n)) for n in range(n_max + 1)]
    labels = [[("u(" + ",".join(map(str, k)) + ")") if k else "1" for k in keys[n]]
              for n in range(n_max + 1)]
    index = [{k: i for i, k in enumerate(keys[n])} for n in range(n_max + 1)]

    def mult_fn(d1, i1, d2, i2):
        n = d1 + d2
        if n > n_max:
            return {}
        return {index[n][keys[d1][i1] + keys[d2][i2]]: 1}

    def d_of_key(n, key):
        out = [0] * (len(keys[n + 1]) if n + 1 <= n_max else 0)
        if n + 1 > n_max:
            return out
        for args in keys[n + 1]:
            val = 0
            if args[1:] == key:
                val += 1
            for i in range(1, n + 1):
                merged = args[:i - 1] + ((args[i - 1] + args[i]) % ell,) + args[i + 1:]
                if 0 in merged:
                    continue
                if merged == key:
                    val += (-1) ** i
            if args[:-1] == key:
                val += (-1) ** (n + 1)
            val %= ell
            if val:
                out[index[n + 1][args]] = val
        return out

    d_mats = []
    for n in range(n_max + 1):
        rows = [d_of_key(n, k) for k in keys[n]]
        cols = len(keys[n + 1]) if n + 1 <= n_max else 0
        d_mats.append(Matrix.from_rows(field, rows, cols) if rows
                      else Matrix.zeros(field, 0, cols))
    return DGAlgebra(field, n_max, keys, labels, mult_fn, d_mats,
                     commutative=(ell == 2), truncated_above=True,
                     name=name or f"C(BZ/{ell})")


# ---------------------------------------------------------------------------
# Modules
# ---------------------------------------------------------------------------


class DGModule:
    """Left DG module over a DGAlgebra, degreewise based."""

    def __init__(self, algebra, n_max, keys, labels, action_fn, d_matrices, name="",
                 truncated_above=True):
        self.algebra = algebra
        self.field = algebra.field
        self.n_max = n_max
        self.keys = keys
        self.labels = labels
        self._action_fn = action_fn
        self._action_cache = {}
        self.d = d_matrices
        self.name = name
        self.truncated_above = truncated_above

    def dim(self, n):
        if 0 <= n <= self.n_max:
            return len(self.keys[n])
        return 0

    def dims(self):
        return [self.dim(n) for n in range(self.n_max + 1)]

    def diff(self, n):
        if 0 <= n <= self.n_max:
            return self.d[n]
        return Matrix.zeros(self.field, 0, 0)

    def act_basis(self, da, ia, dx, ix):
        """a_i . x_j as sparse dict {index: coeff} in degree da + dx."""
        key = (da, ia, dx, ix)
        got = self._action_cache.get(key)
        if got is None:
            got = self._action_fn(da, ia, dx, ix)
            self._action_cache[key] = got
        return got

    def complex(self):
        sp = GradedSpace(self.field, self.n_max, self.dims(), [list(l) for l in self.labels])
        return CochainComplex(sp, list(self.d), truncated_above=True, check=False)

    def label(self, n, i):
        return self.labels[n][i]

    def __repr__(self):
        return f"DGModule({self.name or 'anonymous'} over {self.algebra.name})"


def trivial_module(algebra, name="K"):
    """The ground field as a module through the augmentation."""
    field = algebra.field
    keys = [[()]] + [[] for _ in range(algebra.n_max)]
    labels = [["1"]] + [[] for _ in range(algebra.n_max)]

    def action_fn(da, ia, dx, ix):
        if da == 0 and ia == 0:
            return {0: 1}
        return {}

    d_mats = [Matrix.zeros(field, 1 if n == 0 else 0, 0) for n in range(algebra.n_max + 1)]
    return DGModule(algebra, algebra.n_max, keys, labels, action_fn, d_mats, name=name,
                    truncated_above=False)


def regular_module(algebra, name=None):
    """The algebra as a module over itself."""
    def action_fn(da, ia, dx, ix):
        return algebra.mult_basis(da, ia, dx, ix)

    return DGModule(algebra, algebra.n_max, [list(k) for k in algebra.keys],
                    [list(l) for l in algebra.labels], action_fn, list(algebra.d),
                    name=name or algebra.name, truncated_above=algebra.truncated_above)


def cohomology_dga(algebra, name=None):
    """The cohomology of a DG algebra as a zero-differential DGAlgebra.

    Bases are echelon-chosen cocycle representatives; products multiply
    representatives and project back to cohomology coordinates.  Returns
    (H, projections) where projections[n] maps degree-n cocycles to
    H-coordinates (a Subquotient).
    """
    from .linalg import Subquotient, Subspace, nullspace
    f = algebra.field
    sqs = []
    for n in range(algebra.n_max + 1):
        cycles = nullspace(algebra.diff(n))
        bd = Subspace.from_matrix_rows(algebra.diff(n - 1)) if n >= 1 else \
            Subspace.zero(f, algebra.dim(n))
        sqs.append(Subquotient(cycles, bd))
    keys = [[("h", n, i) for i in range(sqs[n].dim)] for n in range(algebra.n_max + 1)]
    labels = [[f"h{n}_{i}" for i in range(sqs[n].dim)] for n in range(algebra.n_max + 1)]

    def mult_fn(d1, i1, d2, i2):
        n = d1 + d2
        if n > algebra.n_max:
            return {}
        r1 = sqs[d1].reps().row(i1)
        r2 = sqs[d2].reps().row(i2)
        prod = algebra.el_mult(d1, r1, d2, r2)
        coords = sqs[n].coords(Matrix.from_rows(f, [prod], algebra.dim(n)))
        return {j: coords.entry(0, j) for j in range(coords.cols) if coords.entry(0, j)}

    dims = [sqs[n].dim for n in range(algebra.n_max + 1)]
    d_mats = [Matrix.zeros(f, dims[n], dims[n + 1] if n < algebra.n_max else 0)
              for n in range(algebra.n_max + 1)]
    h = DGAlgebra(f, algebra.n_max, keys, labels, mult_fn, d_mats,
                  commutative=algebra.commutative,
                  truncated_above=algebra.truncated_above,
                  name=name or f"H({algebra.name})")
    return h, sqs


def cohomology_morphism(phi, name=None):
    """The induced morphism on cohomology of a chain-level algebra morphism.

    A zero-differential source (already a cohomology algebra, possibly with
    generator data the analysis wants) is reused as-is.
    """
    f = phi.source.field
    src_zero = all(phi.source.d[n].is_zero() for n in range(phi.source.n_max))
    if src_zero:
        src_h = phi.source
        src_reps = None
    else:
        src_h, src_sqs = cohomology_dga(phi.source)
        src_reps = [src_sqs[n].reps() for n in range(phi.source.n_max + 1)]
    tgt_h, tgt_sqs = cohomology_dga(phi.target)
    mats = []
    for n in range(src_h.n_max + 1):
        reps = Matrix.identity(f, phi.source.dim(n)) if src_reps is None \
            else src_reps[n]
        if reps.rows == 0 or n > tgt_h.n_max:
            mats.append(Matrix.zeros(f, reps.rows, tgt_h.dim(n)))
            continue
        imgs = reps.mul(phi.matrices[n])
        mats.append(tgt_sqs[n].coords(imgs))
    return AlgebraMorphism(src_h, tgt_h, mats, name=name or f"H({phi.name})")


def module_with_trivial_action(algebra, space_algebra, name=None):
    """A second algebra's complex as a module with the augmentation action.

    This is the restriction along the zero map on positive degrees, the
    module structure of a fiber inclusion that kills the base classes.
    """
    def action_fn(da, ia, dx, ix):
        if da == 0 and ia == 0:
            return {ix: 1}
        return {}

    return DGModule(algebra, space_algebra.n_max,
                    [list(k) for k in space_algebra.keys],
                    [list(l) for l in space_algebra.labels],
                    action_fn, list(space_algebra.d),
                    name=name or f"{space_algebra.name} (trivial action)",
                    truncated_above=space_algebra.truncated_above)


def restrict_module(phi, name=None):
    """The target of an algebra morphism as a module over the source."""
    tgt = phi.target

    def action_fn(da, ia, dx, ix):
        f = tgt.field
        img = phi.apply_basis(da, ia)
        out = {}
        for j, c in img.items():
            for jj, cc in tgt.mult_basis(da, j, dx, ix).items():
                out[jj] = f.of(out.get(jj, 0) + f.of(c * cc)) if f.is_prime \
                    else out.get(jj, f.zero()) + c * cc
        return {k: v for k, v in out.items() if v}

    return DGModule(phi.source, tgt.n_max, [list(k) for k in tgt.keys],
                    [list(l) for l in tgt.labels], action_fn, list(tgt.d),
                    name=name or f"{tgt.name} via {phi.name}",
                    truncated_above=tgt.truncated_above)


# ---------------------------------------------------------------------------
# Morphisms
# ---------------------------------------------------------------------------


class AlgebraMorphism:
    """Degreewise matrices source -> target, multiplicative and d-compatible."""

    def __init__(self, source, target, matrices, name="f", check=True):
        self.source = source
        self.target = target
        self.matrices = matrices
        self.name = name
        if check:
            self.validate()

    @classmethod
    def from_generator_images(cls, source, target, images, name="f", check=True):
        """Extend generator images (polynomial strings or vectors) multiplicatively.

        The source must be a free/polynomial algebra whose keys are
        exponent tuples over source.generators.
        """
        field = target.field
        gen_list = source.generators
        img_vec = {}
        for g in gen_list:
            dg = source.gen_degrees[g]
            val = images.get(g, 0)
            if isinstance(val, (str, dict)):
                d_img, vec = element_of(target, val)
                if any(x != 0 for x in vec) and d_img != dg:
                    raise DGAError(f"image of {g} is not homogeneous of degree {dg}")
                if d_img != dg:
                    vec = [field.zero()] * target.dim(dg)
                img_vec[g] = vec
            elif isinstance(val, list):
                img_vec[g] = [field.of(x) for x in val]
            else:
                img_vec[g] = [field.zero()] * target.dim(dg)
        mats = []
        for n in range(source.n_max + 1):
            rows = []
            cols = target.dim(n)
            for key in source.keys[n]:
                # image of the monomial: ordered product of generator images
                cur_deg = 0
                cur = [field.one()]
                for gi, e in enumerate(key):
                    for _ in range(e):
                        g = gen_list[gi]
                        dg = source.gen_degrees[g]
                        cur = target.el_mult(cur_deg, cur, dg, img_vec[g])
                        cur_deg += dg
                if cur_deg != n:
                    raise DGAError("degree bookkeeping error in morphism extension")
                rows.append(cur if cols else [])
            mats.append(Matrix.from_rows(field, rows, cols) if rows
                        else Matrix.zeros(field, 0, cols))
        return cls(source, target, mats, name=name, check=check)

    def apply_basis(self, n, i):
        m = self.matrices[n]
        return {j: m.entry(i, j) for j in range(m.cols) if m.entry(i, j)}

    def apply(self, n, vec):
        return Matrix.from_rows(self.source.field, [vec], self.source.dim(n)) \
            .mul(self.matrices[n]).row(0)

    def validate(self, samples=200, seed=0):
        src, tgt = self.source, self.target
        if src.field != tgt.field:
            raise DGAError("morphism over mixed fields")
        # unit and augmentation
        img = self.apply_basis(0, 0)
        if img != {0: 1} and img != {0: tgt.field.one()}:
            raise DGAError("morphism does not preserve the unit")
        # commutes with differentials
        for n in range(min(src.n_max, tgt.n_max)):
            lhs = self.matrices[n].mul(tgt.diff(n))
            rhs = src.diff(n).mul(self.matrices[n + 1])
            if lhs != rhs:
                raise DGAError(f"morphism does not commute with d in degree {n}")
        # multiplicative on basis pairs (exhaustive within a sample budget)
        pairs = [(d1, i1, d2, i2)
                 for d1 in range(src.n_max + 1) for i1 in range(src.dim(d1))
                 for d2 in range(src.n_max + 1 - d1) for i2 in range(src.dim(d2))]
        if len(pairs) > samples:
            rng = random.Random(seed)
            pairs = rng.sample(pairs, samples)
        for (d1, i1, d2, i2) in pairs:
            n = d1 + d2
            if n > tgt.n_max:
                continue
            prod = [self.source.field.zero()] * src.dim(n)
            for j, c in src.mult_basis(d1, i1, d2, i2).items():
                prod[j] = c
            lhs = self.apply(n, prod)
            img1 = [tgt.field.zero()] * tgt.dim(d1)
            for j, c in self.apply_basis(d1, i1).items():
                img1[j] = c
            img2 = [tgt.field.zero()] * tgt.dim(d2)
            for j, c in self.apply_basis(d2, i2).items():
                img2[j] = c
            rhs = tgt.el_mult(d1, img1, d2, img2)
            if [tgt.field.of(x) for x in lhs] != [tgt.field.of(x) for x in rhs]:
                raise DGAError(f"morphism not multiplicative on ({d1},{i1})x({d2},{i2})")


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


def verify_dga(alg, seed=0, exhaustive_limit=200, sample=200):
    """Sampled (exhaustive for small algebras) structure checks; raises on failure."""
    f = alg.field
    # d^2 = 0
    for n in range(alg.n_max):
        if not alg.d[n].mul(alg.d[n + 1]).is_zero():
            raise DGAError(f"d^2 != 0 in degree {n}")
    # unit
    for n in range(alg.n_max + 1):
        for i in range(alg.dim(n)):
            if alg.mult_basis(0, 0, n, i) != {i: 1} and \
               alg.mult_basis(0, 0, n, i) != {i: f.one()}:
                raise DGAError(f"unit fails on left of ({n},{i})")
            if alg.mult_basis(n, i, 0, 0) != {i: 1} and \
               alg.mult_basis(n, i, 0, 0) != {i: f.one()}:
                raise DGAError(f"unit fails on right of ({n},{i})")
    total = sum(alg.dims())
    exhaustive = total <= exhaustive_limit
    rng = random.Random(seed)

    def basis_elements():
        return [(n, i) for n in range(alg.n_max + 1) for i in range(alg.dim(n))]

    els = basis_elements()
    pairs = [(a, b) for a in els for b in els if a[0] + b[0] <= alg.n_max]
    triples = [(a, b, c) for a in els for b in els for c in els
               if a[0] + b[0] + c[0] <= alg.n_max]
    if not exhaustive:
        pairs = rng.sample(pairs, min(sample, len(pairs)))
        triples = rng.sample(triples, min(sample, len(triples)))

    def vec_of(n, sparse):
        out = [f.zero()] * alg.dim(n)
        for j, c in sparse.items():
            out[j] = f.of(c)
        return out

    for (d1, i1), (d2, i2) in pairs:
        if alg.commutative:
            ab = alg.mult_basis(d1, i1, d2, i2)
            ba = alg.mult_basis(d2, i2, d1, i1)
            sgn = koszul_sign(d1, d2)
            want = {j: f.of(sgn * c) for j, c in ba.items() if f.of(sgn * c)}
            have = {j: f.of(c) for j, c in ab.items() if f.of(c)}
            if have != want:
                raise DGAError(f"graded commutativity fails on ({d1},{i1}),({d2},{i2})")
        # Leibniz: d(ab) = da.b + (-1)^{d1} a.db, checked inside the window
        n = d1 + d2
        if n + 1 <= alg.n_max:
            ab = vec_of(n, alg.mult_basis(d1, i1, d2, i2))
            dab = Matrix.from_rows(f, [ab], alg.dim(n)).mul(alg.d[n]).row(0) \
                if alg.dim(n) else [f.zero()] * alg.dim(n + 1)
            ea = [f.zero()] * alg.dim(d1)
            ea[i1] = f.one()
            da = Matrix.from_rows(f, [ea], alg.dim(d1)).mul(alg.d[d1]).row(0)
            eb = [f.zero()] * alg.dim(d2)
            eb[i2] = f.one()
            db = Matrix.from_rows(f, [eb], alg.dim(d2)).mul(alg.d[d2]).row(0)
            t1 = alg.el_mult(d1 + 1, da, d2, eb)
            t2 = alg.el_mult(d1, ea, d2 + 1, db)
            sgn = -1 if d1 % 2 else 1
            want = [f.of(x + (y if sgn == 1 else -y)) if f.is_prime
                    else x + (y if sgn == 1 else -y) for x, y in zip(t1, t2)]
            if [f.of(x) for x in dab] != [f.of(x) for x in want]:
                raise DGAError(f"Leibniz fails on ({d1},{i1}),({d2},{i2})")
    for (d1, i1), (d2, i2), (d3, i3) in triples:
        ab = vec_of(d1 + d2, alg.mult_basis(d1, i1, d2, i2))
        ec = [f.zero()] * alg.dim(d3)
        ec[i3] = f.one()
        lhs = alg.el_mult(d1 + d2, ab, d3, ec)
        bc = vec_of(d2 + d3, alg.mult_basis(d2, i2, d3, i3))
        ea = [f.zero()] * alg.dim(d1)
        ea[i1] = f.one()
        rhs = alg.el_mult(d1, ea, d2 + d3, bc)
        if [f.of(x) for x in lhs] != [f.of(x) for x in rhs]:
            raise DGAError(f"associativity fails on ({d1},{i1}),({d2},{i2}),({d3},{i3})")
    return True


def verify_module(mod, seed=0, sample=200):
    """Unit, associativity, and Leibniz checks for a DG module."""
    alg = mod.algebra
    f = mod.field
    for n in range(mod.n_max + 1):
        for i in range(mod.dim(n)):
            if mod.act_basis(0, 0, n, i) not in ({i: 1}, {i: f.one()}):
                raise DGAError(f"module unit fails at ({n},{i})")
    rng = random.Random(seed)
    els_a = [(n, i) for n in range(alg.n_max + 1) for i in range(alg.dim(n))]
    els_m = [(n, i) for n in range(mod.n_max + 1) for i in range(mod.dim(n))]
    triples = [(a, b, x) for a in els_a for b in els_a for x in els_m
               if a[0] + b[0] + x[0] <= mod.n_max]
    pairs = [(a, x) for a in els_a for x in els_m if a[0] + x[0] <= mod.n_max]
    if len(triples) > sample:
        triples = rng.sample(triples, sample)
    if len(pairs) > sample:
        pairs = rng.sample(pairs, sample)

    def act_vec(da, va, dx, vx):
        out = [f.zero()] * mod.dim(da + dx)
        for ia, c1 in enumerate(va):
            if not c1:
                continue
            for ix, c2 in enumerate(vx):
                if not c2:
                    continue
                for j, c in mod.act_basis(da, ia, dx, ix).items():
                    out[j] = f.of(out[j] + f.of(c1 * c2 * c)) if f.is_prime \
                        else out[j] + c1 * c2 * c
        return out

    for (d1, i1), (d2, i2), (dx, ix) in triples:
        bx = [f.zero()] * mod.dim(d2 + dx)
        for j, c in mod.act_basis(d2, i2, dx, ix).items():
            bx[j] = f.of(c)
        ea = [f.zero()] * alg.dim(d1)
        ea[i1] = f.one()
        lhs = act_vec(d1, ea, d2 + dx, bx)
        ab = [f.zero()] * alg.dim(d1 + d2)
        for j, c in alg.mult_basis(d1, i1, d2, i2).items():
            ab[j] = f.of(c)
        ex = [f.zero()] * mod.dim(dx)
        ex[ix] = f.one()
        rhs = act_vec(d1 + d2, ab, dx, ex)
        if [f.of(v) for v in lhs] != [f.of(v) for v in rhs]:
            raise DGAError(f"module associativity fails on ({d1},{i1}),({d2},{i2}),({dx},{ix})")
    for (da, ia), (dx, ix) in pairs:
        n = da + dx
        if n + 1 > mod.n_max:
            continue
        ax = [f.zero()] * mod.dim(n)
        for j, c in mod.act_basis(da, ia, dx, ix).items():
            ax[j] = f.of(c)
        dax = Matrix.from_rows(f, [ax], mod.dim(n)).mul(mod.d[n]).row(0) \
            if mod.dim(n) else [f.zero()] * mod.dim(n + 1)
        ea = [f.zero()] * alg.dim(da)
        ea[ia] = f.one()
        da_vec = Matrix.from_rows(f, [ea], alg.dim(da)).mul(alg.d[da]).row(0)
        ex = [f.zero()] * mod.dim(dx)
        ex[ix] = f.one()
        dx_vec = Matrix.from_rows(f, [ex], mod.dim(dx)).mul(mod.d[dx]).row(0)
        t1 = act_vec(da + 1, da_vec, dx, ex)
        t2 = act_vec(da, ea, dx + 1, dx_vec)
        sgn = -1 if da % 2 else 1
        want = [f.of(x + (y if sgn == 1 else -y)) if f.is_prime
                else x + (y if sgn == 1 else -y) for x, y in zip(t1, t2)]
        if [f.of(v) for v in dax] != want:
            raise DGAError(f"module Leibniz fails on ({da},{ia}),({dx},{ix})")
    return True


# ---------------------------------------------------------------------------
# Polynomial expression parser (scenario file format)
# ---------------------------------------------------------------------------


class ParseError(ValueError):
    pass


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j])))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_" or text[j] == "'"):
                j += 1
            tokens.append(("ident", text[i:j]))
            i = j
        elif ch in "+-*^()":
            tokens.append((ch, ch))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}")
    tokens.append(("end", None))
    return tokens


def parse_polynomial(text, generators):
    """Parse '+/-/*/^'-polynomials over the generator labels.

    Returns {exponent tuple: integer coefficient}.  Grammar:
        expr   := term (('+'|'-') term)*
        term   := factor ('*' factor)*
        factor := atom ('^' int)?
        atom   := int | ident | '(' expr ')' | '-' factor
    """
    gen_idx = {g: i for i, g in enumerate(generators)}
    tokens = _tokenize(text)
    pos = [0]

    def peek():
        return tokens[pos[0]]

    def eat(kind=None):
        tok = tokens[pos[0]]
        if kind and tok[0] != kind:
            raise ParseError(f"expected {kind}, got {tok}")
        pos[0] += 1
        return tok

    def mono_mul(m1, m2):
        out = {}
        for k1, c1 in m1.items():
            for k2, c2 in m2.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + c1 * c2
        return {k: c for k, c in out.items() if c}

    unit = tuple(0 for _ in generators)

    def atom():
        tok = peek()
        if tok[0] == "int":
            eat()
            return {unit: tok[1]}
        if tok[0] == "ident":
            eat()
            if tok[1] not in gen_idx:
                raise ParseError(f"unknown generator {tok[1]!r}")
            k = tuple(1 if i == gen_idx[tok[1]] else 0 for i in range(len(generators)))
            return {k: 1}
        if tok[0] == "(":
            eat()
            e = expr()
            eat(")")
            return e
        if tok[0] == "-":
            eat()
            return {k: -c for k, c in factor().items()}
        raise ParseError(f"unexpected token {tok}")

    def factor():
        base = atom()
        if peek()[0] == "^":
            eat()
            exp = eat("int")[1]
            out = {unit: 1}
            for _ in range(exp):
                out = mono_mul(out, base)
            return out
        return base

    def term():
        out = factor()
        while peek()[0] == "*":
            eat()
            out = mono_mul(out, factor())
        return out

    def expr():
        out = term()
        while peek()[0] in ("+", "-"):
            op = eat()[0]
            nxt = term()
            for k, c in nxt.items():
                out[k] = out.get(k, 0) + (c if op == "+" else -c)
            out = {k: c for k, c in out.items() if c}
        return out

    result = expr()
    eat("end")
    return result
