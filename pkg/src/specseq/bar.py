"""The normalized bar complex B(M, A, N) with its two filtrations.

Words m[a_1|...|a_k]n are graded by deg(m) + sum(deg(a_j) - 1) + deg(n);
letters come from the positive-degree part of a connected algebra (the
augmentation ideal), so the complex is normalized by construction.  The
complex is truncated by total degree (n_max) and word length (w_max) and
carries

  * the word-length filtration W^p = span{words with k <= -p}, and
  * a filtration F^s induced from a d- and action-stable filtration of N
    (trivial one-step when none is supplied).

Signs follow the package-wide convention (see dga.prefix_sign): with
shifted prefix degrees P_i = deg(m) + sum_{j<=i} (deg(a_j) - 1),

  d_int:  +(dm)[..]n,  (-1)^{P_{i-1}} m[..|da_i|..]n,  (-1)^{P_k} m[..](dn)
  d_ext:  (-1)^{1 + deg(m) + deg(a_1) - 1} (m.a_1)[a_2..]n
          (-1)^{P_i} m[..|a_i a_{i+1}|..]n
          (-1)^{P_k} m[a_1..a_{k-1}](a_k.n)

The construction recomputes d o d and refuses to hand out a complex for
which it is nonzero, so a sign regression cannot slip through.
"""

from __future__ import annotations

from .linalg import Matrix, Subspace
from .complexes import BifilteredComplex, CochainComplex, FilteredComplex, GradedSpace
from .dga import DGAError, trivial_module


class BarError(ValueError):
    pass


class BarWord:
    """m [a_1 | ... | a_k] n with cached total degree."""

    __slots__ = ("m", "letters", "n", "degree")

    def __init__(self, m, letters, n):
        self.m = m              # (deg, idx) in M
        self.letters = letters  # tuple of (deg, idx) in Abar
        self.n = n              # (deg, idx) in N
        self.degree = m[0] + sum(d - 1 for d, _ in letters) + n[0]

    @property
    def length(self):
        return len(self.letters)

    def key(self):
        return (self.m, self.letters, self.n)

    def __eq__(self, other):
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def label(self, algebra, module_m, module_n, show_m=False):
        inner = "[" + "|".join(algebra.label(d, i) for d, i in self.letters) + "]"
        out = f"{inner}⊗{module_n.label(*self.n)}"
        if show_m:
            out = f"{module_m.label(*self.m)}⊗{out}"
        return out


class RightModuleView:
    """Right-module structure used for the M factor of B(M, A, N).

    For the graded-commutative algebras in the scenarios the right regular
    action agrees with the left one up to the Koszul sign; the trivial
    module is symmetric.  A custom M can supply act_right directly.
    """

    def __init__(self, module, act_right=None):
        self.module = module
        self._act_right = act_right

    def act_right(self, dm, im, da, ia):
        """(m . a) as sparse dict in degree dm + da.

        Default: the Koszul flip of the left action, valid over the
        graded-commutative algebras the scenarios use.
        """
        if self._act_right is not None:
            return self._act_right(dm, im, da, ia)
        from .dga import koszul_sign
        f = self.module.field
        out = {}
        for j, c in self.module.act_basis(da, ia, dm, im).items():
            s = koszul_sign(dm, da)
            out[j] = f.of(s * c) if f.is_prime else f.of(s) * c
        return {k: v for k, v in out.items() if v}


def regular_right_module(algebra):
    """The algebra as a right module over itself (works noncommutatively)."""
    from .dga import regular_module

    def act_right(dm, im, da, ia):
        return algebra.mult_basis(dm, im, da, ia)

    return RightModuleView(regular_module(algebra), act_right)


class BarComplex:
    """Container: the bifiltered complex plus the word bookkeeping."""

    def __init__(self, bifiltered, words, index, algebra, module_m, module_n):
        self.bifiltered = bifiltered
        self.words = words      # per degree: list of BarWord
        self.index = index      # per degree: {word key: position}
        self.algebra = algebra
        self.module_m = module_m
        self.module_n = module_n

    @property
    def complex(self):
        return self.bifiltered.complex

    def word_position(self, word):
        return self.index[word.degree][word.key()]


def _letters(algebra, max_degree):
    out = []
    for d in range(1, min(algebra.n_max, max_degree) + 1):
        for i in range(algebra.dim(d)):
            out.append((d, i))
    return out


def build_bar(algebra, module_n, module_m=None, n_max=4, w_max=4,
              n_filtration=None, check=True):
    """Normalized bar complex of (M, A, N), truncated, with W and F filtrations.

    ``n_filtration`` is None (trivial), the string "degree" (filter N by
    basis degree: the K-minimal cell shadow), or a callable
    (deg, idx) -> level.  It must be d_N-stable and A-action-stable.
    Returns a BarComplex whose ``bifiltered`` field feeds the engine.
    """
    field = algebra.field
    if algebra.dim(0) != 1:
        raise BarError("bar construction needs a connected algebra")
    if algebra.n_max < n_max + 1:
        raise BarError(f"algebra window {algebra.n_max} too small; need {n_max + 1}")
    if isinstance(module_m, RightModuleView):
        m_view = module_m
    elif module_m is None:
        m_view = RightModuleView(trivial_module(algebra))
    else:
        if not algebra.commutative:
            raise BarError("supply a RightModuleView with an explicit right action "
                           "for modules over a noncommutative algebra")
        m_view = RightModuleView(module_m)
    m_mod = m_view.module
    if module_n.n_max < n_max or m_mod.n_max < n_max:
        raise BarError(f"module window too small; need {n_max}")

    letters = _letters(algebra, n_max + 1)

    # filtration level of N basis elements
    if n_filtration is None:
        level = lambda d, i: 0
        f_min, f_max = 0, 0
    elif n_filtration == "degree":
        level = lambda d, i: d
        f_min = 0
        f_max = max((d for d in range(module_n.n_max + 1) if module_n.dim(d)), default=0)
    elif callable(n_filtration):
        level = n_filtration
        levels = [level(d, i) for d in range(module_n.n_max + 1)
                  for i in range(module_n.dim(d))]
        f_min, f_max = (min(levels), max(levels)) if levels else (0, 0)
    else:
        raise BarError("n_filtration must be None, 'degree', or a callable")

    if n_filtration is not None:
        _check_filtration_stability(algebra, module_n, level, n_max)

    # enumerate words per degree, deterministically
    words = [[] for _ in range(n_max + 1)]
    m_basis = [(d, i) for d in range(m_mod.n_max + 1) for i in range(m_mod.dim(d))]
    n_basis = [(d, i) for d in range(module_n.n_max + 1) for i in range(module_n.dim(d))]

    def extend(prefix, shifted_sum, k, budget):
        if k == w_max:
            return
        for (d, i) in letters:
            add = d - 1
            if shifted_sum + add > budget:
                continue
            longer = prefix + ((d, i),)
            yield longer, shifted_sum + add
            yield from extend(longer, shifted_sum + add, k + 1, budget)

    for m in m_basis:
        for nf in n_basis:
            base = m[0] + nf[0]
            if base > n_max:
                continue
            word = BarWord(m, (), nf)
            words[word.degree].append(word)
            for (ls, sh) in extend((), 0, 0, n_max - base):
                words[base + sh].append(BarWord(m, ls, nf))

    sortkey = lambda w: (w.length, w.m, w.letters, w.n)
    for n in range(n_max + 1):
        words[n].sort(key=sortkey)
    index = [{w.key(): i for i, w in enumerate(ws)} for ws in words]
    dims = [len(ws) for ws in words]

    show_m = any(d > 0 and m_mod.dim(d) for d in range(m_mod.n_max + 1))
    labels = [[w.label(algebra, m_mod, module_n, show_m=show_m) for w in ws]
              for ws in words]

    # differential
    d_mats = []
    for n in range(n_max + 1):
        cols = dims[n + 1] if n + 1 <= n_max else 0
        rows = []
        for w in words[n]:
            row = [field.zero()] * cols
            if cols:
                for (wkey, coeff) in _bar_differential(w, algebra, m_view, module_n):
                    j = index[n + 1].get(wkey)
                    if j is None:
                        continue
                    row[j] = field.of(row[j] + field.of(coeff)) if field.is_prime \
                        else row[j] + coeff
            rows.append(row)
        d_mats.append(Matrix.from_rows(field, rows, cols) if rows
                      else Matrix.zeros(field, 0, cols))

    sp = GradedSpace(field, n_max, dims, labels)
    truncated = bool(letters) or m_mod.n_max > n_max or module_n.n_max > n_max
    cx = CochainComplex(sp, d_mats, truncated_above=truncated, check=False)
    if check:
        for n in range(n_max):
            if not d_mats[n].mul(d_mats[n + 1]).is_zero():
                raise BarError(f"bar differential does not square to zero at degree {n}"
                               " (sign convention bug)")

    # W filtration: W^p = words of length <= -p
    w_steps = {}
    for p in range(-w_max, 2):
        for n in range(n_max + 1):
            idxs = [i for i, w in enumerate(words[n]) if w.length <= -p]
            w_steps[(p, n)] = Subspace.coordinate(field, dims[n], idxs)
    delta = min((d - 1 for d, _ in letters), default=None)
    min_m = min((d for d in range(m_mod.n_max + 1) if m_mod.dim(d)), default=0)
    min_n = min((d for d in range(module_n.n_max + 1) if module_n.dim(d)), default=0)
    if delta is None:
        w_exhaustive = True
        upto = None
    else:
        first_missing = (w_max + 1) * delta + min_m + min_n
        w_exhaustive = first_missing > n_max
        upto = None if w_exhaustive else first_missing - 1
    filt_w = FilteredComplex(cx, -w_max, 0, w_steps, exhaustive=w_exhaustive,
                             bounded=True, exhaustive_upto=upto, check=False)

    # F filtration from the N-factor levels
    f_steps = {}
    for s in range(f_min, f_max + 2):
        for n in range(n_max + 1):
            idxs = [i for i, w in enumerate(words[n]) if level(*w.n) >= s]
            f_steps[(s, n)] = Subspace.coordinate(field, dims[n], idxs)
    filt_f = FilteredComplex(cx, f_min, f_max, f_steps, exhaustive=True,
                             bounded=True, check=False)

    bif = BifilteredComplex(cx, filt_f, filt_w)
    return BarComplex(bif, words, index, algebra, m_mod, module_n)


def _bar_differential(word, algebra, m_view, module_n):
    """Yield (target word key, coefficient) pairs of d(word)."""
    m_mod = m_view.module
    m, ls, nf = word.m, word.letters, word.n
    k = len(ls)
    shifts = [d - 1 for d, _ in ls]
    out = []

    def prefix(i):
        # P_i = deg(m) + sum of the first i shifted letter degrees
        return m[0] + sum(shifts[:i])

    def sgn(e):
        return -1 if e % 2 else 1

    # internal: M factor
    dm = m_mod.diff(m[0])
    for j in range(dm.cols):
        c = dm.entry(m[1], j)
        if c:
            out.append((((m[0] + 1, j), ls, nf), c))
    # internal: letters
    for i in range(k):
        d_a = algebra.diff(ls[i][0])
        s = sgn(prefix(i))
        for j in range(d_a.cols):
            c = d_a.entry(ls[i][1], j)
            if c:
                nl = ls[:i] + ((ls[i][0] + 1, j),) + ls[i + 1:]
                out.append(((m, nl, nf), s * c))
    # internal: N factor
    dn = module_n.diff(nf[0])
    s_n = sgn(prefix(k))
    for j in range(dn.cols):
        c = dn.entry(nf[1], j)
        if c:
            out.append(((m, ls, (nf[0] + 1, j)), s_n * c))
    # external: m . a_1
    if k >= 1:
        d1 = ls[0][0]
        s = sgn(1 + m[0] + (d1 - 1))
        for j, c in m_view.act_right(m[0], m[1], d1, ls[0][1]).items():
            out.append((((m[0] + d1, j), ls[1:], nf), s * c))
    # external: letter merges
    for i in range(1, k):
        da, ia = ls[i - 1]
        db, ib = ls[i]
        s = sgn(prefix(i))
        for j, c in algebra.mult_basis(da, ia, db, ib).items():
            nl = ls[:i - 1] + ((da + db, j),) + ls[i + 1:]
            out.append(((m, nl, nf), s * c))
    # external: a_k . n
    if k >= 1:
        da, ia = ls[-1]
        s = sgn(prefix(k))
        for j, c in module_n.act_basis(da, ia, nf[0], nf[1]).items():
            out.append(((m, ls[:-1], (da + nf[0], j)), s * c))
    return out


def _check_filtration_stability(algebra, module_n, level, n_max):
    """The N filtration must be d-stable and action-stable."""
    for d in range(min(module_n.n_max, n_max) + 1):
        mat = module_n.diff(d)
        for i in range(module_n.dim(d)):
            for j in range(mat.cols):
                if mat.entry(i, j) and level(d + 1, j) < level(d, i):
                    raise BarError(f"N filtration not d-stable at ({d},{i})")
    for da in range(1, min(algebra.n_max, n_max + 1) + 1):
        for ia in range(algebra.dim(da)):
            for d in range(min(module_n.n_max, n_max) + 1):
                if da + d > module_n.n_max:
                    continue
                for i in range(module_n.dim(d)):
                    for j, c in module_n.act_basis(da, ia, d, i).items():
                        if c and level(da + d, j) < level(d, i):
                            raise BarError("N filtration not action-stable at "
                                           f"a=({da},{ia}), x=({d},{i})")


def em_model(z_model, y_module, cell_filtration=None, n_max=4, w_max=4, check=True):
    """Bifiltered bar complex B(K, C(Z)-model, C(Y)-model) for the quartet.

    The W spectral sequence of the result is the Eilenberg-Moore spectral
    sequence of the principal fibration, the F spectral sequence the
    Leray-Serre one for the supplied cell filtration of Y (trivial
    filtration when Y carries none).
    """
    try:
        bar = build_bar(z_model, y_module, module_m=None, n_max=n_max, w_max=w_max,
                        n_filtration=cell_filtration, check=check)
    except DGAError as exc:
        raise BarError(str(exc)) from exc
    return bar
