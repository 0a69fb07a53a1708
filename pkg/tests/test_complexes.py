import pytest

from specseq.linalg import GF2, QQ, Matrix, Subspace
from specseq.complexes import (
    CochainComplex,
    ComplexError,
    FilteredComplex,
    GradedSpace,
    cohomology_dims,
    gr,
    one_step_filtration,
    random_bifiltered_complex,
    random_filtered_complex,
    tensor,
    unit_complex,
)


def two_term(field, mat_rows, n_max=1):
    """Complex K^a -> K^b concentrated in degrees 0, 1."""
    a = len(mat_rows)
    b = len(mat_rows[0]) if mat_rows and mat_rows[0] is not None else 0
    dims = [a, b] + [0] * (n_max - 1)
    sp = GradedSpace(field, n_max, dims)
    d = [Matrix.from_rows(field, mat_rows, b)]
    for n in range(1, n_max + 1):
        d.append(Matrix.zeros(field, sp.dim(n), sp.dim(n + 1)))
    return CochainComplex(sp, d)


def rp2_complex(field):
    # cellular cochain complex of RP^2: coboundaries 0 then 2
    sp = GradedSpace(field, 2, [1, 1, 1])
    d0 = Matrix.from_rows(field, [[0]])
    d1 = Matrix.from_rows(field, [[field.of(2)]])
    d2 = Matrix.zeros(field, 1, 0)
    return CochainComplex(sp, [d0, d1, d2])


def test_d_squared_checked():
    sp = GradedSpace(QQ, 2, [1, 1, 1])
    d0 = Matrix.from_rows(QQ, [[1]])
    d1 = Matrix.from_rows(QQ, [[1]])
    d2 = Matrix.zeros(QQ, 1, 0)
    with pytest.raises(ComplexError, match="degree 0"):
        CochainComplex(sp, [d0, d1, d2])


def test_cohomology_zero_differential():
    cx = two_term(QQ, [[0, 0], [0, 0]])
    assert cohomology_dims(cx) == [2, 2]


def test_cohomology_acyclic():
    cx = two_term(QQ, [[1]])
    assert cohomology_dims(cx) == [0, 0]


def test_cohomology_rp2():
    assert cohomology_dims(rp2_complex(GF2)) == [1, 1, 1]
    assert cohomology_dims(rp2_complex(QQ)) == [1, 0, 0]


def test_tensor_unit():
    cx = rp2_complex(GF2)
    t = tensor(cx, unit_complex(GF2, 0))
    assert [t.dim(n) for n in range(3)] == [1, 1, 1]
    assert cohomology_dims(t)[:3] == [1, 1, 1]


def test_tensor_torus():
    # H(S^1-model) (x) H(S^1-model): dims (1,2,1)
    s1 = two_term(QQ, [[0]])
    t = tensor(s1, s1)
    assert [t.dim(n) for n in range(3)] == [1, 2, 1]
    assert cohomology_dims(t) == [1, 2, 1]


def test_tensor_kunneth_random():
    import random
    rng = random.Random(0)
    for seed in range(12):
        fc1, _ = random_filtered_complex(seed, n_max=2, max_dim=2)
        fc2, _ = random_filtered_complex(seed + 100, field=fc1.complex.field,
                                         n_max=2, max_dim=2)
        c1, c2 = fc1.complex, fc2.complex
        t = tensor(c1, c2)
        h1 = cohomology_dims(c1)
        h2 = cohomology_dims(c2)
        ht = cohomology_dims(t)
        for n in range(t.n_max + 1):
            want = sum(h1[i] * h2[n - i] for i in range(len(h1)) if 0 <= n - i < len(h2))
            assert ht[n] == want


def test_tensor_associative_dims():
    a = rp2_complex(GF2)
    b = two_term(GF2, [[1, 0]])
    c = two_term(GF2, [[0], [1]])
    t1 = tensor(tensor(a, b), c)
    t2 = tensor(a, tensor(b, c))
    assert [t1.dim(n) for n in range(t1.n_max + 1)] == [t2.dim(n) for n in range(t2.n_max + 1)]
    assert cohomology_dims(t1) == cohomology_dims(t2)


def test_gr_one_step():
    cx = rp2_complex(QQ)
    fc = one_step_filtration(cx)
    g, _ = gr(fc, 0)
    assert [g.dim(n) for n in range(3)] == [1, 1, 1]
    assert cohomology_dims(g) == cohomology_dims(cx)


def test_gr_dims_sum():
    for seed in range(20):
        fc, _ = random_filtered_complex(seed)
        cx = fc.complex
        for n in range(cx.n_max + 1):
            total = sum(gr(fc, s)[0].dim(n) for s in range(fc.s_min, fc.s_max + 1))
            assert total == cx.dim(n)


def test_random_filtered_complex_valid():
    for seed in range(100):
        fc, expected = random_filtered_complex(seed)
        fc.validate()  # nesting, stability, ends
        assert cohomology_dims(fc.complex) == expected


def test_random_bifiltered_complex_valid():
    for seed in range(25):
        bif, expected = random_bifiltered_complex(seed)
        bif.F.validate()
        bif.W.validate()
        assert cohomology_dims(bif.complex) == expected


def test_filtration_invariant_violation_detected():
    cx = two_term(QQ, [[1]])
    steps = {(0, 0): cx.full(0), (0, 1): cx.full(1),
             (1, 0): cx.full(0), (1, 1): cx.zero_sub(1),
             (2, 0): cx.zero_sub(0), (2, 1): cx.zero_sub(1)}
    with pytest.raises(ComplexError, match="d-stable"):
        FilteredComplex(cx, 0, 1, steps)


def test_tensor_truncation_marker():
    a = rp2_complex(QQ)
    t_full = tensor(a, a)
    assert not t_full.truncated_above
    t_cut = tensor(a, a, n_max=2)
    assert t_cut.truncated_above
    assert t_cut.n_max == 2
