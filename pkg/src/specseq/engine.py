"""Spectral sequences of (bi)filtered cochain complexes.

For a descending filtration F on a bounded complex C the engine computes

    Z_r^{p,q} = { x in F^p C^{p+q} : dx in F^{p+r} C^{p+q+1} }

and the pages

    E_r^{p,q} = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2}),

the convention of Godement / EGA III for which E_0 is the associated
graded and E_1 its cohomology.  The differential d_r on page r is the
map induced by d on coset representatives, computed through checked
induced maps, so ill-defined differentials raise instead of producing
silent garbage.

Certification: a page entry is trusted only if every filtration index it
consumes is known (inside the stored window, or beyond it when the
filtration is flagged exhaustive/bounded) and no total degree it touches
reaches past a degree-truncated window.  Entries outside the certified
region are still reported, flagged uncertified.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field as dc_field

from .linalg import (Matrix, Subquotient, Subspace, induced_map, nullspace,
                     preimage, rref)
from .complexes import (
    CochainComplex,
    FilteredComplex,
    GradedSpace,
    cohomology_dims,
)


class EngineError(ValueError):
    pass


@dataclass
class PageEntry:
    p: int
    q: int
    dim: int
    certified: bool
    subquotient: Subquotient
    labels: list = dc_field(default_factory=list)


@dataclass
class Page:
    r: int
    entries: dict  # (p, q) -> PageEntry
    differentials: dict  # (p, q) -> Matrix (source entry coords -> target entry coords)

    def dim(self, p, q):
        e = self.entries.get((p, q))
        return e.dim if e else 0

    def certified(self, p, q):
        e = self.entries.get((p, q))
        return e.certified if e else True

    def d_rank(self, p, q):
        m = self.differentials.get((p, q))
        if m is None or m.rows == 0 or m.cols == 0:
            return 0
        return rref(m)[0]

    def nonzero_differentials(self):
        out = []
        for (p, q), m in sorted(self.differentials.items()):
            rk = self.d_rank(p, q)
            if rk:
                out.append(((p, q), (p + self.r, q - self.r + 1), rk))
        return out


@dataclass
class Degeneration:
    page: int
    certified: bool


class SpectralSequence:
    """Computed pages 0..r_max of the spectral sequence of a FilteredComplex."""

    def __init__(self, fc, r_max, name=""):
        if r_max < 0:
            raise EngineError("r_max must be nonnegative")
        self.fc = fc
        self.field = fc.field
        self.r_max = r_max
        self.name = name
        self.pages = []
        self._z_cache = {}
        self._compute()
        if self.pages[0].entries and not any(
                e.certified for page in self.pages for e in page.entries.values()):
            warnings.warn("window too small to certify any page entry; "
                          "raise the bounds", stacklevel=3)
        self.abutment = self._abutment()
        self.degeneration = degeneration_page(self)

    # -- plumbing ------------------------------------------------------------
    def _z(self, r, p, n):
        """Z_r^{p, n-p} as a subspace of C^n (r >= -1; clamped outside)."""
        cx = self.fc.complex
        if n < 0 or n > cx.n_max:
            return Subspace.zero(self.field, cx.dim(n) if 0 <= n <= cx.n_max else 0)
        key = (r, p, n)
        got = self._z_cache.get(key)
        if got is not None:
            return got
        fp = self.fc.sub(p, n)
        if r <= 0:
            # dx in F^{p+r} is automatic for r <= 0 by d-stability
            out = fp
        else:
            target = self.fc.sub(p + r, n + 1)
            if target.is_full():
                out = fp
            else:
                pre = preimage(cx.diff(n), target)
                out = fp.intersect(pre)
        self._z_cache[key] = out
        return out

    def entry_spaces(self, r, p, n):
        """(numerator, denominator) subspaces of C^n for E_r^{p, n-p}."""
        num = self._z(r, p, n)
        den_a = self._z(r - 1, p + 1, n)
        w = self._z(r - 1, p - r + 1, n - 1)
        den_b = w.image(self.fc.complex.diff(n - 1)) if n >= 1 else \
            Subspace.zero(self.field, self.fc.complex.dim(n))
        return num, den_a.sum(den_b)

    def certified_entry(self, r, p, n):
        fc = self.fc
        for i in range(p - r + 1, p + r + 1):
            if not fc.known_index(i, degree=n + 1):
                return False
        cx = fc.complex
        if cx.truncated_above and n + 1 > cx.n_max:
            return False
        return True

    def _compute(self):
        fc = self.fc
        cx = fc.complex
        p_range = range(fc.s_min, fc.s_max + 1)
        for r in range(self.r_max + 1):
            entries = {}
            for n in range(cx.n_max + 1):
                for p in p_range:
                    num, den = self.entry_spaces(r, p, n)
                    if not num.contains(den):
                        raise EngineError(f"E_{r} denominator escapes numerator at "
                                          f"(p={p}, n={n})")
                    sq = Subquotient(num, den)
                    if sq.dim == 0:
                        continue
                    q = n - p
                    entries[(p, q)] = PageEntry(
                        p, q, sq.dim, self.certified_entry(r, p, n), sq,
                        labels=[f"E{r}[{p},{q}]_{i}" for i in range(sq.dim)])
            diffs = {}
            for (p, q), ent in entries.items():
                n = p + q
                tgt = entries.get((p + r, q - r + 1))
                if tgt is None:
                    # target is zero; differential is the zero map
                    continue
                m = induced_map(cx.diff(n), ent.subquotient, tgt.subquotient)
                diffs[(p, q)] = m
            self.pages.append(Page(r, entries, diffs))

    def _abutment(self):
        """Total cohomology dims and the induced filtration dims on H^n."""
        cx = self.fc.complex
        h = cohomology_dims(cx)
        filt = {}
        for n in range(cx.n_max + 1):
            cycles = nullspace(cx.diff(n))
            bd = Subspace.from_matrix_rows(cx.diff(n - 1)) if n >= 1 else \
                Subspace.zero(self.field, cx.dim(n))
            hsq = Subquotient(cycles, bd)
            for s in range(self.fc.s_min, self.fc.s_max + 2):
                zs = cycles.intersect(self.fc.sub(s, n))
                filt[(s, n)] = hsq.sub_image(zs).dim
        return {"h_dims": h, "filtration_dims": filt}

    # -- reporting helpers -----------------------------------------------------
    def page(self, r):
        return self.pages[r]

    def entry_dims(self, r):
        return {pq: e.dim for pq, e in self.pages[r].entries.items()}

    def total_dims(self, r, certified_only=False):
        """Per total degree n, the sum of page-r entry dims."""
        out = {}
        for (p, q), e in self.pages[r].entries.items():
            if certified_only and not e.certified:
                continue
            out[p + q] = out.get(p + q, 0) + e.dim
        return out

    def degree_fully_certified(self, n, r):
        """All potentially nonzero entries on the degree-n diagonal certified."""
        if not self.fc.exhaustive_in_degree(n) or not self.fc.bounded:
            return False
        page = self.pages[r]
        for p in range(self.fc.s_min, self.fc.s_max + 1):
            ent = page.entries.get((p, n - p))
            if ent is not None and not ent.certified:
                return False
            if ent is None and not self.certified_entry(r, p, n):
                # a truncation-hidden entry could live here
                e0 = self.pages[0].entries.get((p, n - p))
                if e0 is not None:
                    return False
        return True


def compute_spectral_sequence(fc, r_max, name=""):
    return SpectralSequence(fc, r_max, name=name)


def degeneration_page(ss):
    """Smallest r <= r_max with all certified d_s = 0 for r <= s <= r_max.

    A differential counts as nonzero only when both its endpoints are
    certified at their page.  The certified flag reports whether the
    E_{r_max} totals already agree with the abutment totals on every
    fully certified total degree (truncation honesty: degeneration is
    always relative to r_max and the certified region).
    """
    r_max = ss.r_max
    smallest = r_max + 1
    for r in range(r_max, 0, -1):
        page = ss.pages[r]
        nonzero = False
        for (p, q), m in page.differentials.items():
            if page.d_rank(p, q) == 0:
                continue
            src = page.entries[(p, q)]
            tgt = page.entries.get((p + r, q - r + 1))
            if src.certified and tgt is not None and tgt.certified:
                nonzero = True
                break
        if nonzero:
            break
        smallest = r
    h = ss.abutment["h_dims"]
    totals = ss.total_dims(r_max)
    ok = True
    any_cert = False
    for n in range(ss.fc.complex.n_max + 1):
        if not ss.degree_fully_certified(n, r_max):
            continue
        if ss.fc.complex.truncated_above and n + 1 > ss.fc.complex.n_max:
            continue
        any_cert = True
        if totals.get(n, 0) != h[n]:
            ok = False
    return Degeneration(page=smallest, certified=ok and any_cert)


def decalage(fc):
    """Deligne's Dec F: (Dec F)^p C^n = Z_1^{p+n, -p} = {x in F^{p+n} : dx in F^{p+n+1}}."""
    cx = fc.complex
    p_min = fc.s_min - cx.n_max - 1
    p_max = fc.s_max
    steps = {}
    for n in range(cx.n_max + 1):
        for p in range(p_min, p_max + 2):
            fp = fc.sub(p + n, n)
            tgt = fc.sub(p + n + 1, n + 1)
            if tgt.is_full():
                steps[(p, n)] = fp
            else:
                steps[(p, n)] = fp.intersect(preimage(cx.diff(n), tgt))
    return FilteredComplex(cx, p_min, p_max, steps,
                           exhaustive=fc.exhaustive, bounded=fc.bounded,
                           exhaustive_upto=fc.exhaustive_upto, check=False)


def index_transform(p=None, q=None, s=None, t=None, u=None):
    """Translate (p, q) <-> (s, t, u) via s = p + n, t = p, u = -2p, n = p + q."""
    if p is not None and q is not None:
        n = p + q
        return (p + n, p, -2 * p)
    if s is not None and t is not None and u is not None:
        if u != -2 * t:
            raise EngineError(f"(s,t,u)=({s},{t},{u}) is not on the u = -2t slice")
        n = s + t + u
        return (t, n - t)
    raise EngineError("pass either (p, q) or (s, t, u)")


# ---------------------------------------------------------------------------
# Zassenhaus quartet for a bifiltered complex
# ---------------------------------------------------------------------------


@dataclass
class TriPage:
    """Common first page of the two prelude families, with both d_1 arrows."""

    entries: dict  # (s, t, u) -> dim
    certified: dict  # (s, t, u) -> bool
    d1_f: dict  # (s, t, u) -> rank of d1: (s,t,u) -> (s+1,t,u)
    d1_w: dict  # (s, t, u) -> rank of d1: (s,t,u) -> (s,t+1,u)

    def dim(self, s, t, u):
        return self.entries.get((s, t, u), 0)


@dataclass
class QuartetReport:
    tri: TriPage
    prelude_em: dict  # t -> SpectralSequence of (Gr_W^t B, F)
    prelude_ls: dict  # s -> SpectralSequence of (Gr_F^s B, W)
    ls: SpectralSequence
    em: SpectralSequence
    zassenhaus_ok: bool
    zassenhaus_failures: list
    prelude_em_abutment_ok: bool
    prelude_ls_abutment_ok: bool


def graded_piece_filtered(bif, axis, level):
    """Gr along one filtration as a FilteredComplex for the other filtration.

    axis='W': returns (Gr_W^level B, induced F) used by the prelude to the
    Eilenberg-Moore spectral sequence; axis='F' the other way around.
    """
    first = bif.W if axis == "W" else bif.F
    second = bif.F if axis == "W" else bif.W
    cx = bif.complex
    gr_cx, sqs = _graded_complex(cx, first, level)
    steps = {}
    for s in range(second.s_min, second.s_max + 2):
        for n in range(cx.n_max + 1):
            part = second.sub(s, n).intersect(first.sub(level, n))
            steps[(s, n)] = sqs[n].sub_image(part)
    return FilteredComplex(gr_cx, second.s_min, second.s_max, steps,
                           exhaustive=second.exhaustive, bounded=second.bounded,
                           exhaustive_upto=second.exhaustive_upto, check=False), sqs


def _graded_complex(cx, filt, level):
    sqs = []
    dims = []
    for n in range(cx.n_max + 1):
        sq = Subquotient(filt.sub(level, n), filt.sub(level + 1, n))
        sqs.append(sq)
        dims.append(sq.dim)
    d = []
    for n in range(cx.n_max + 1):
        if n == cx.n_max:
            d.append(Matrix.zeros(cx.field, dims[n], 0))
        else:
            d.append(induced_map(cx.diff(n), sqs[n], sqs[n + 1]))
    labels = [[f"gr({level})({n})_{i}" for i in range(dims[n])] for n in range(cx.n_max + 1)]
    sp = GradedSpace(cx.field, cx.n_max, dims, labels)
    return CochainComplex(sp, d, truncated_above=cx.truncated_above, check=False), sqs


def zassenhaus_dims(bif, s, t, n):
    """dims of Gr_F^s Gr_W^t B^n computed in both orders; returns (fw, wf).

    Gr_F^s Gr_W^t has numerator (F^s cap W^t) + W^{t+1} and denominator
    (F^{s+1} cap W^t) + W^{t+1} inside W^t / W^{t+1}; the other order
    swaps the roles of F and W.
    """
    F, W = bif.F, bif.W
    fs, fs1 = F.sub(s, n), F.sub(s + 1, n)
    wt, wt1 = W.sub(t, n), W.sub(t + 1, n)
    num_fw = fs.intersect(wt).sum(wt1).dim - fs1.intersect(wt).sum(wt1).dim
    num_wf = wt.intersect(fs).sum(fs1).dim - wt1.intersect(fs).sum(fs1).dim
    return num_fw, num_wf


def zassenhaus_quartet(bif, r_max, prelude_ls_levels=None, prelude_em_levels=None):
    """The full quartet: LS = E(F), EM = E(W), and the two prelude families."""
    cx = bif.complex
    F, W = bif.F, bif.W

    # (a) Zassenhaus commutation of the two associated gradeds, dimensionwise
    failures = []
    for n in range(cx.n_max + 1):
        for s in range(F.s_min, F.s_max + 1):
            for t in range(W.s_min, W.s_max + 1):
                fw, wf = zassenhaus_dims(bif, s, t, n)
                if fw != wf:
                    failures.append((s, t, n, fw, wf))
    zass_ok = not failures

    # (b) the two main spectral sequences
    ls = compute_spectral_sequence(F, r_max, name="LS")
    em = compute_spectral_sequence(W, r_max, name="EM")

    # (c) prelude families
    em_levels = prelude_em_levels if prelude_em_levels is not None else \
        range(W.s_min, W.s_max + 1)
    ls_levels = prelude_ls_levels if prelude_ls_levels is not None else \
        range(F.s_min, F.s_max + 1)
    prelude_em = {}
    for t in em_levels:
        if not (W.known_index(t) and W.known_index(t + 1)):
            continue
        fc_t, _ = graded_piece_filtered(bif, "W", t)
        prelude_em[t] = compute_spectral_sequence(fc_t, r_max, name=f"prelude-em[t={t}]")
    prelude_ls = {}
    for s in ls_levels:
        if not (F.known_index(s) and F.known_index(s + 1)):
            continue
        fc_s, _ = graded_piece_filtered(bif, "F", s)
        prelude_ls[s] = compute_spectral_sequence(fc_s, r_max, name=f"prelude-ls[s={s}]")

    # (d) tri-graded first page with both d1 differentials
    tri_entries, tri_cert, d1f, d1w = {}, {}, {}, {}
    for t, ss_t in prelude_em.items():
        page1 = ss_t.pages[1] if len(ss_t.pages) > 1 else None
        if page1 is None:
            continue
        for (s, q), ent in page1.entries.items():
            n = s + q
            u = n - s - t
            tri_entries[(s, t, u)] = ent.dim
            tri_cert[(s, t, u)] = ent.certified and em.pages[0].certified(t, n - t)
            rk = page1.d_rank(s, q)
            if rk:
                d1f[(s, t, u)] = rk
    for s, ss_s in prelude_ls.items():
        page1 = ss_s.pages[1] if len(ss_s.pages) > 1 else None
        if page1 is None:
            continue
        for (t, q), ent in page1.entries.items():
            n = t + q
            u = n - s - t
            rk = page1.d_rank(t, q)
            if rk:
                d1w[(s, t, u)] = rk
            # consistency of the two routes to the same tri-graded dims
            if (s, t, u) in tri_entries and tri_entries[(s, t, u)] != ent.dim:
                failures.append(("tri", s, t, u, tri_entries[(s, t, u)], ent.dim))
                zass_ok = False
            tri_entries.setdefault((s, t, u), ent.dim)
            tri_cert.setdefault((s, t, u), ent.certified)
    tri = TriPage(tri_entries, tri_cert, d1f, d1w)

    # (e) abutment identifications: prelude-EM[t] abuts to the EM E_1 row t,
    #     prelude-LS[s] abuts to the LS E_1 column s
    em_ok = _prelude_abuts(prelude_em, em)
    ls_ok = _prelude_abuts(prelude_ls, ls)

    return QuartetReport(tri, prelude_em, prelude_ls, ls, em,
                         zass_ok, failures, em_ok, ls_ok)


def _prelude_abuts(preludes, main):
    """Check per level: prelude abutment totals equal the main E_1 line dims."""
    ok = True
    for level, ss in preludes.items():
        h = ss.abutment["h_dims"]
        for n, hn in enumerate(h):
            main_ent = main.pages[1].entries.get((level, n - level))
            main_dim = main_ent.dim if main_ent else 0
            cert = main_ent.certified if main_ent else main.certified_entry(1, level, n)
            if not cert or not ss.degree_fully_certified(n, 0):
                continue
            if main.fc.complex.truncated_above and n + 1 > main.fc.complex.n_max:
                continue
            if hn != main_dim:
                ok = False
    return ok


# ---------------------------------------------------------------------------
# Decalage-style relation between the two spectral sequences
# ---------------------------------------------------------------------------


@dataclass
class DecalageRelation:
    hypothesis_met: bool
    prelude_em_pages: dict
    prelude_ls_pages: dict
    entries: list  # (p, q, dim_w, dim_f, equal) over certified bidegrees
    holds_on_common_support: bool
    holds_everywhere: bool
    note: str = ""


def check_decalage_relation(quartet):
    """Compare dim E_1^{p,n-p}(W) with dim E_1^{p+n,-p}(F) per bidegree.

    The comparison is evaluated only when both prelude families
    degenerate (their certified degeneration pages are <= 2, the page
    the comparison theorems guarantee); otherwise reports hypothesis not
    met.  `holds_on_common_support` ignores bidegrees where one side
    vanishes; `holds_everywhere` does not.
    """
    em, ls = quartet.em, quartet.ls
    em_pages = {t: ss.degeneration.page for t, ss in quartet.prelude_em.items()}
    ls_pages = {s: ss.degeneration.page for s, ss in quartet.prelude_ls.items()}
    hyp = all(p <= 2 for p in em_pages.values()) and all(p <= 2 for p in ls_pages.values())
    if not hyp:
        return DecalageRelation(False, em_pages, ls_pages, [], False, False,
                                note="hypothesis not met: a prelude fails to degenerate")
    entries = []
    common_ok = True
    all_ok = True
    page1_w = em.pages[1]
    page1_f = ls.pages[1]
    seen = set()
    for (p, q), ent in page1_w.entries.items():
        n = p + q
        s, tq = p + n, -p
        f_ent = page1_f.entries.get((s, tq))
        f_dim = f_ent.dim if f_ent else 0
        f_cert = f_ent.certified if f_ent else ls.certified_entry(1, s, n)
        if not ent.certified or not f_cert:
            continue
        eq = ent.dim == f_dim
        entries.append((p, q, ent.dim, f_dim, eq))
        seen.add((p, q))
        if not eq:
            all_ok = False
            if ent.dim > 0 and f_dim > 0:
                common_ok = False
    for (s, tq), f_ent in page1_f.entries.items():
        n = s + tq
        p = -tq
        q = n - p
        if (p, q) in seen:
            continue
        w_cert = em.certified_entry(1, p, n)
        if not f_ent.certified or not w_cert:
            continue
        entries.append((p, q, 0, f_ent.dim, f_ent.dim == 0))
        if f_ent.dim:
            all_ok = False
    return DecalageRelation(True, em_pages, ls_pages, sorted(entries),
                            common_ok, all_ok)
