"""Brute-force group cohomology oracle over F_2, shipped with the tests.

Computes H^n(G; F_2) for a finite 2-group G from a minimal free
resolution over the group algebra F_2[G], built degreewise by plain
kernel / radical-quotient linear algebra over F_2 (self-contained
gaussian elimination on numpy arrays; independent of the package's
linear algebra and of both Tor routes it is used to check).

A second, even more literal route computes H^n for small n from the
normalized bar cochains (functions on (G - e)^n), so the oracle can be
cross-validated against itself in low degrees.
"""

from __future__ import annotations

import itertools

import numpy as np


def _rref2(a):
    """Row echelon over F_2 in place; returns (rank, pivot columns)."""
    a %= 2
    rows, cols = a.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        col = a[:, c].copy()
        col[r] = 0
        touch = np.nonzero(col)[0]
        if touch.size:
            a[touch] ^= a[r]
        pivots.append(c)
        r += 1
    return r, pivots


def _rank2(a):
    if a.size == 0:
        return 0
    return _rref2(a.copy())[0]


def _nullspace2(a):
    """Rows spanning {x : x @ a = 0 (mod 2)}."""
    n = a.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=np.int8)
    at = a.T.copy()
    rk, pivots = _rref2(at)
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    out = np.zeros((len(free), n), dtype=np.int8)
    for row_i, j in enumerate(free):
        out[row_i, j] = 1
        for r_i, c in enumerate(pivots):
            out[row_i, c] = at[r_i, j] % 2
    return out


def d8_elements_and_table():
    """D8 = <r, s | r^4 = s^2 = e, s r s = r^-1> as (i, j) with r^i s^j."""
    elements = [(i, j) for j in range(2) for i in range(4)]
    index = {e: k for k, e in enumerate(elements)}

    def mul(a, b):
        (i1, j1), (i2, j2) = a, b
        i = (i1 + (i2 if j1 == 0 else -i2)) % 4
        return (i, (j1 + j2) % 2)

    table = [[index[mul(a, b)] for b in elements] for a in elements]
    return elements, table


def q8_elements_and_table():
    """Q8 = {+-1, +-i, +-j, +-k} with the quaternion relations."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    index = {n: k for k, n in enumerate(names)}

    base = {("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
            ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
            ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j"}

    def mul(a, b):
        sign = 1
        if a.startswith("-"):
            sign, a = -sign, a[1:]
        if b.startswith("-"):
            sign, b = -sign, b[1:]
        if a == "1":
            out = b
        elif b == "1":
            out = a
        else:
            out = base[(a, b)]
        if out.startswith("-"):
            sign, out = -sign, out[1:]
        return out if sign == 1 else ("-" + out if out != "1" else "-1")

    def norm(n):
        return n if n in index else "-" + n[1:]

    table = [[index[mul(a, b)] for b in names] for a in names]
    return names, table


def minimal_resolution_betti(table, n_max):
    """Betti numbers of the minimal F_2[G]-resolution of F_2: dims of H^n(G)."""
    order = len(table)
    # left multiplication matrices: row h of L[g] is e_{g h}
    left = []
    for g in range(order):
        m = np.zeros((order, order), dtype=np.int8)
        for h in range(order):
            m[h, table[g][h]] = 1
        left.append(m)

    def act(g, vecs, k):
        """g . (v_1, ..., v_k) blockwise on rows of shape (n, 8k)."""
        out = np.zeros_like(vecs)
        for blk in range(k):
            out[:, blk * order:(blk + 1) * order] = \
                vecs[:, blk * order:(blk + 1) * order] @ left[g]
        return out % 2

    # start: M = augmentation ideal inside A^1
    m_basis = np.zeros((order - 1, order), dtype=np.int8)
    for i in range(1, order):
        m_basis[i - 1, 0] = 1
        m_basis[i - 1, i] = 1
    k = 1
    betti = [1]
    for _ in range(n_max):
        rad_rows = []
        for g in range(1, order):
            gm = act(g, m_basis, k)
            rad_rows.append((gm + m_basis) % 2)
        rad = np.vstack(rad_rows) if rad_rows else np.zeros((0, order * k), dtype=np.int8)
        rk_m = _rank2(m_basis)
        rk_rad = _rank2(rad)
        b = rk_m - rk_rad
        betti.append(b)
        # minimal generators: rows of M independent modulo rad M
        stacked = np.vstack([rad, m_basis]).copy()
        rkr, _ = _rref2(stacked[: rad.shape[0]].copy()) if rad.shape[0] else (0, [])
        gens = []
        work = rad.copy()
        for row in m_basis:
            trial = np.vstack([work, row[None, :]])
            if _rank2(trial) > _rank2(work):
                gens.append(row)
                work = trial
            if len(gens) == b:
                break
        gens = np.array(gens, dtype=np.int8)
        # phi: A^b -> A^k sending e_i to gens[i]; kernel as F_2-subspace
        phi = np.zeros((b * order, k * order), dtype=np.int8)
        for i in range(b):
            for g in range(order):
                phi[i * order + g] = act(g, gens[i][None, :], k)[0]
        m_basis = _nullspace2(phi)
        k = b
    return betti


def bar_cochain_dims(table, n_max):
    """H^n(G; F_2) for n <= n_max via normalized bar cochains (slow route)."""
    order = len(table)
    nontriv = list(range(1, order))

    def tuples(n):
        return list(itertools.product(nontriv, repeat=n))

    def dmat(n):
        src = tuples(n)
        tgt = tuples(n + 1)
        tgt_index = {t: i for i, t in enumerate(tgt)}
        a = np.zeros((len(src), len(tgt)), dtype=np.int8)
        src_index = {t: i for i, t in enumerate(src)}
        for args in tgt:
            terms = []
            terms.append(args[1:])
            for i in range(1, n + 1):
                merged = args[:i - 1] + (table[args[i - 1]][args[i]],) + args[i + 1:]
                if 0 not in merged:
                    terms.append(merged)
            terms.append(args[:-1])
            for t in terms:
                if len(t) == n and 0 not in t:
                    a[src_index[t], tgt_index[args]] ^= 1
        return a

    dims = []
    mats = {n: dmat(n) for n in range(n_max + 1)}
    for n in range(n_max + 1):
        z = len(tuples(n)) - _rank2(mats[n])
        b = _rank2(mats[n - 1]) if n >= 1 else 0
        dims.append(z - b)
    return dims


def d8_cohomology_dims(n_max):
    _, table = d8_elements_and_table()
    return minimal_resolution_betti(table, n_max)


def q8_cohomology_dims(n_max):
    _, table = q8_elements_and_table()
    return minimal_resolution_betti(table, n_max)
