import pytest

from specseq.linalg import GF2, QQ, Matrix, Subspace
from specseq.complexes import (
    CochainComplex,
    FilteredComplex,
    GradedSpace,
    cohomology_dims,
    one_step_filtration,
    random_bifiltered_complex,
    random_filtered_complex,
)
from specseq.engine import (
    EngineError,
    check_decalage_relation,
    compute_spectral_sequence,
    decalage,
    index_transform,
    zassenhaus_quartet,
)


def interval_point_filtration():
    """Two-point/one-edge CW model of a point, skeletal filtration."""
    sp = GradedSpace(QQ, 1, [2, 1])
    d0 = Matrix.from_rows(QQ, [[-1], [1]])
    d1 = Matrix.zeros(QQ, 1, 0)
    cx = CochainComplex(sp, [d0, d1])
    steps = {
        (0, 0): cx.full(0), (0, 1): cx.full(1),
        (1, 0): cx.zero_sub(0), (1, 1): cx.full(1),
        (2, 0): cx.zero_sub(0), (2, 1): cx.zero_sub(1),
    }
    return FilteredComplex(cx, 0, 1, steps)


def sphere_skeletal(r_dim, field=QQ):
    dims = [1] + [0] * (r_dim - 1) + [1]
    sp = GradedSpace(field, r_dim, dims)
    d = [Matrix.zeros(field, sp.dim(n), sp.dim(n + 1)) for n in range(r_dim + 1)]
    cx = CochainComplex(sp, d)
    steps = {}
    for s in range(0, r_dim + 2):
        for n in range(r_dim + 1):
            if s <= n:
                steps[(s, n)] = cx.full(n)
            else:
                steps[(s, n)] = cx.zero_sub(n)
    return FilteredComplex(cx, 0, r_dim, steps)


def test_r_max_negative_rejected():
    fc, _ = random_filtered_complex(0)
    with pytest.raises(EngineError):
        compute_spectral_sequence(fc, -1)


def test_one_step_filtration_degenerates_at_1():
    for seed in range(5):
        fc, expected = random_filtered_complex(seed)
        triv = one_step_filtration(fc.complex)
        ss = compute_spectral_sequence(triv, 3)
        assert ss.degeneration.page <= 1
        assert ss.degeneration.certified
        # E_1 = H(C) concentrated in column 0
        for (p, q), e in ss.pages[1].entries.items():
            assert p == 0
            assert e.dim == expected[q]


def test_sphere_s3_skeletal():
    ss = compute_spectral_sequence(sphere_skeletal(3), 4)
    dims = ss.entry_dims(1)
    assert dims == {(0, 0): 1, (3, 0): 1}
    assert ss.degeneration.page <= 1 and ss.degeneration.certified


def test_interval_model_of_point():
    ss = compute_spectral_sequence(interval_point_filtration(), 3)
    assert ss.entry_dims(1) == {(0, 0): 2, (1, 0): 1}
    assert ss.pages[1].d_rank(0, 0) == 1
    assert ss.entry_dims(2) == {(0, 0): 1}
    assert ss.degeneration.page == 2


def test_e_infinity_totals_match_cohomology():
    for seed in range(40):
        fc, expected = random_filtered_complex(seed)
        r_max = fc.s_max + 2
        ss = compute_spectral_sequence(fc, r_max)
        totals = ss.total_dims(r_max)
        for n, hn in enumerate(expected):
            assert totals.get(n, 0) == hn


def test_page_dims_are_homology_of_previous():
    for seed in range(15):
        fc, _ = random_filtered_complex(seed)
        ss = compute_spectral_sequence(fc, 3)
        for r in range(0, 3):
            page = ss.pages[r]
            nxt = ss.pages[r + 1]
            for (p, q), ent in page.entries.items():
                out_rk = page.d_rank(p, q)
                in_rk = page.d_rank(p - r, q + r - 1)
                assert nxt.dim(p, q) == ent.dim - out_rk - in_rk


def test_euler_characteristic_constant_across_pages():
    for seed in range(20):
        fc, _ = random_filtered_complex(seed)
        ss = compute_spectral_sequence(fc, 3)
        chis = []
        for r in range(4):
            chi = sum((-1) ** (p + q) * e.dim for (p, q), e in ss.pages[r].entries.items())
            chis.append(chi)
        assert len(set(chis)) == 1


def test_decalage_zero_complex():
    sp = GradedSpace(QQ, 1, [0, 0])
    cx = CochainComplex(sp, [Matrix.zeros(QQ, 0, 0), Matrix.zeros(QQ, 0, 0)])
    fc = one_step_filtration(cx)
    dec = decalage(fc)
    ss = compute_spectral_sequence(dec, 2)
    assert ss.entry_dims(1) == {}


def test_decalage_acyclic_two_term():
    # C = (K -> K identity), trivial one-step filtration: Dec-filtered SS has E_1 = 0
    sp = GradedSpace(QQ, 1, [1, 1])
    cx = CochainComplex(sp, [Matrix.from_rows(QQ, [[1]]), Matrix.zeros(QQ, 1, 0)])
    fc = one_step_filtration(cx)
    dec = decalage(fc)
    dec.validate()
    ss = compute_spectral_sequence(dec, 2)
    assert ss.entry_dims(1) == {}


def test_deligne_decalage_identity():
    # dim E_r^{p,n-p}(Dec F) = dim E_{r+1}^{p+n,-p}(F) for r in {1,2,3}
    for seed in range(50):
        fc, _ = random_filtered_complex(seed, n_max=3, max_dim=3, s_max=2)
        dec = decalage(fc)
        ss_dec = compute_spectral_sequence(dec, 3)
        ss = compute_spectral_sequence(fc, 4)
        for r in (1, 2, 3):
            lhs = {}
            for (p, q), e in ss_dec.pages[r].entries.items():
                lhs[(p, q)] = e.dim
            rhs = {}
            for (a, b), e in ss.pages[r + 1].entries.items():
                # (a, b) = (p+n, -p) -> p = -b, n = a + b
                p = -b
                n = a + b
                rhs[(p, n - p)] = e.dim
            assert lhs == rhs, (seed, r, lhs, rhs)


def test_index_transform_examples():
    assert index_transform(p=0, q=5) == (5, 0, 0)
    assert index_transform(p=-1, q=2) == (0, -1, 2)
    assert index_transform(s=0, t=-1, u=2) == (-1, 2)
    import random
    rng = random.Random(0)
    for _ in range(1000):
        p, q = rng.randrange(-20, 21), rng.randrange(-20, 21)
        s, t, u = index_transform(p=p, q=q)
        assert index_transform(s=s, t=t, u=u) == (p, q)


def test_zassenhaus_quartet_random():
    for seed in range(12):
        bif, expected = random_bifiltered_complex(seed, n_max=3, max_dim=2)
        rep = zassenhaus_quartet(bif, 3)
        assert rep.zassenhaus_ok, rep.zassenhaus_failures
        assert rep.prelude_em_abutment_ok
        assert rep.prelude_ls_abutment_ok
        # both main sequences abut to H(B)
        for ss in (rep.ls, rep.em):
            totals = ss.total_dims(3)
            for n, hn in enumerate(expected):
                assert totals.get(n, 0) == hn


def test_quartet_trivial_w():
    # W trivial one-step: prelude-LS degenerates everywhere; LS = E(F)
    for seed in range(6):
        fc, _ = random_filtered_complex(seed)
        cx = fc.complex
        from specseq.complexes import BifilteredComplex, one_step_filtration
        bif = BifilteredComplex(cx, fc, one_step_filtration(cx))
        rep = zassenhaus_quartet(bif, 3)
        for s, ss in rep.prelude_ls.items():
            assert ss.degeneration.page <= 1
        ref = compute_spectral_sequence(fc, 3)
        for r in range(4):
            assert rep.ls.entry_dims(r) == ref.entry_dims(r)


def test_decalage_relation_trivial_filtrations():
    # both trivial: relation evaluated; holds on common support at (0,0)
    fc, _ = random_filtered_complex(3)
    cx = fc.complex
    from specseq.complexes import BifilteredComplex, one_step_filtration
    bif = BifilteredComplex(cx, one_step_filtration(cx), one_step_filtration(cx))
    rep = zassenhaus_quartet(bif, 3)
    rel = check_decalage_relation(rep)
    assert rel.hypothesis_met
    assert rel.holds_on_common_support


def test_composable_differentials_square_to_zero():
    # d_r composed with d_r vanishes wherever the squares are composable
    for seed in range(12):
        fc, _ = random_filtered_complex(seed)
        ss = compute_spectral_sequence(fc, 3)
        for r in range(1, 4):
            page = ss.pages[r]
            for (p, q), m1 in page.differentials.items():
                m2 = page.differentials.get((p + r, q - r + 1))
                if m2 is not None and m1.cols == m2.rows:
                    assert m1.mul(m2).is_zero(), (seed, r, p, q)


def test_index_transform_rejects_off_slice():
    with pytest.raises(EngineError):
        index_transform(s=1, t=1, u=3)
    with pytest.raises(EngineError):
        index_transform(p=1)
