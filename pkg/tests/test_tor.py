import pytest

from specseq.linalg import GF2, QQ
from specseq.dga import (
    AlgebraMorphism,
    free_cdga,
    polynomial_dga,
    polynomial_quotient_dga,
    regular_module,
    restrict_module,
    trivial_module,
)
from specseq.tor import (
    TorError,
    analyze_morphism,
    check_freeness,
    element_of,
    is_regular_sequence,
    koszul_tor,
    steenrod_square,
    tor_via_bar,
    total_steenrod_square,
    vector_to_poly,
)


def test_tor_via_bar_polynomial_is_exterior():
    # Tor_{K[c_2]}(K, K): dims 1 at (0,0) and (1,2) only
    a = polynomial_dga(QQ, [("c", 2)], 10)
    t = tor_via_bar(a, trivial_module(a), k_max=4, q_max=8)
    nonzero = {kq for kq, d in t.entries.items() if d}
    assert nonzero == {(0, 0), (1, 2)}
    assert t.dim(0, 0) == 1 and t.dim(1, 2) == 1


def test_tor_via_bar_sphere_cohomology():
    # A = K[s]/(s^2) = H(S^2): Tor_p has dim 1 at (p, 2p) for all p in window
    a = polynomial_quotient_dga(QQ, [("s", 2)], ["s^2"], 6)
    assert not a.truncated_above
    t = tor_via_bar(a, trivial_module(a), k_max=4, q_max=9)
    for p in range(5):
        assert t.dim(p, 2 * p) == 1, (p, t.entries)
    assert sum(t.entries.values()) == 5


def test_tor_via_bar_free_module():
    # N = A free: Tor concentrated at (0, 0) ... (0, q) = dims of K (x)_A A = K
    a = polynomial_dga(QQ, [("c", 2)], 8)
    t = tor_via_bar(a, regular_module(a), k_max=3, q_max=6)
    nonzero = {kq for kq, d in t.entries.items() if d}
    assert nonzero == {(0, 0)}


def test_koszul_tor_free_module_case():
    # A = K[w_4], M = K[c_2] via w -> c^2: free module, Tor_0 at q in {0, 2}
    a = polynomial_dga(QQ, [("w", 4)], 12)
    cp = polynomial_dga(QQ, [("c", 2)], 12)
    phi = AlgebraMorphism.from_generator_images(a, cp, {"w": "c^2"})
    m = restrict_module(phi)
    t = koszul_tor(a, None, m, q_max=10)
    nonzero = {kq for kq, d in t.entries.items() if d}
    assert nonzero == {(0, 0), (0, 2)}


def test_koszul_tor_two_variables():
    # A = Q[t1, t2], M = K: exterior pattern dims 1,2,1 at (0,0), (1,2), (2,4)
    a = polynomial_dga(QQ, [("t1", 2), ("t2", 2)], 10)
    t = koszul_tor(a, None, trivial_module(a), q_max=8)
    assert t.dim(0, 0) == 1
    assert t.dim(1, 2) == 2
    assert t.dim(2, 4) == 1
    assert sum(t.entries.values()) == 4


def test_koszul_equals_bar():
    # dual-route equality on polynomial examples
    a = polynomial_dga(QQ, [("t1", 2), ("t2", 2)], 10)
    tb = tor_via_bar(a, trivial_module(a), k_max=3, q_max=8)
    tk = koszul_tor(a, None, trivial_module(a), k_max=3, q_max=8)
    for k in range(3):
        for q in range(9):
            if tb.certified.get((k, q), False) and tk.certified.get((k, q), False):
                assert tb.dim(k, q) == tk.dim(k, q), (k, q)


def test_is_regular_sequence_squares():
    a = polynomial_dga(GF2, [("x", 1), ("y", 1)], 8)
    verdicts = is_regular_sequence(a, ["x^2", "y^2"], 6)
    assert all(v.regular for v in verdicts)
    # honest oracle value: F2[x,y]/(x^2,y^2) has dims (1,2,1,0,...)
    assert verdicts[-1].quotient_dims[:5] == [1, 2, 1, 0, 0]


def test_is_regular_sequence_quillen_counterexample():
    # (xy, x^2 y + x y^2) is NOT regular: the second lies in (xy)
    a = polynomial_dga(GF2, [("x", 1), ("y", 1)], 8)
    verdicts = is_regular_sequence(a, ["x*y", "x^2*y+x*y^2"], 6)
    assert verdicts[0].regular
    assert not verdicts[1].regular
    assert verdicts[1].witness_degree == 3


def test_is_regular_sequence_empty():
    a = polynomial_dga(QQ, [("c", 2)], 6)
    verdicts = is_regular_sequence(a, [], 6)
    assert verdicts[-1].regular


def test_check_freeness_self():
    a = polynomial_dga(QQ, [("c", 2)], 8)
    v = check_freeness(a, ["c"], 8)
    assert v.free


def test_check_freeness_cp_over_hp():
    # R = image of K[w_4] inside K[c_2]: K[c] free on {1, c}
    cp = polynomial_dga(QQ, [("c", 2)], 10)
    v = check_freeness(cp, ["c^2"], 8)
    assert v.free
    assert v.quotient_dims[:4] == [1, 0, 1, 0]


def test_check_freeness_xy_inside_f2xy():
    a = polynomial_dga(GF2, [("x", 1), ("y", 1)], 10)
    v = check_freeness(a, ["x*y"], 8)
    assert v.free
    assert v.quotient_dims[:5] == [1, 2, 2, 2, 2]


def test_check_freeness_negative():
    # F2[x, y] is not free over the subalgebra generated by x^2 and xy
    a = polynomial_dga(GF2, [("x", 1), ("y", 1)], 10)
    v = check_freeness(a, ["x^2", "x*y"], 8)
    assert not v.free


def test_analyze_morphism_hopf_ndec():
    # K[w] -> K[c], w -> c^2: kernel 0, free; EM E_infty totals at 0 and 2;
    # LS transgression d_4 with degeneration page 5
    a = polynomial_dga(QQ, [("w", 4)], 10)
    cp = polynomial_dga(QQ, [("c", 2)], 10)
    phi = AlgebraMorphism.from_generator_images(a, cp, {"w": "c^2"})
    res = analyze_morphism(phi, 8)
    assert res.em_verdict == "degenerates-at-E2"
    assert all(d == 0 for d in res.kernel_dims)
    assert res.predicted_einf_totals[:4] == [1, 0, 1, 0]
    assert [g for g, d, _ in res.transgressions] == ["w"]
    assert res.ls_degeneration_page == 5


def test_analyze_morphism_hopf_e3():
    # K[c] -> H(S^2), c -> s: I = (c^2) regular; EM E_infty = Lambda(z_3);
    # LS d_2 transgression, degeneration page 3
    a = polynomial_dga(QQ, [("c", 2)], 10)
    s2 = polynomial_quotient_dga(QQ, [("s", 2)], ["s^2"], 6)
    phi = AlgebraMorphism.from_generator_images(a, s2, {"c": "s"})
    res = analyze_morphism(phi, 5)
    assert res.em_verdict == "degenerates-at-E2"
    assert res.predicted_einf_totals[:4] == [1, 0, 0, 1]
    assert res.ls_degeneration_page == 3


def test_total_steenrod_square_defining_case():
    a = polynomial_dga(GF2, [("x", 1), ("y", 1)], 10)
    total = total_steenrod_square(a, "x")
    assert vector_to_poly(a, 1, total[1]) == {(1, 0): 1}
    assert vector_to_poly(a, 2, total[2]) == {(2, 0): 1}


def test_sq1_of_xy():
    a = polynomial_dga(GF2, [("x", 1), ("y", 1)], 10)
    d, vec = steenrod_square(a, 1, "x*y")
    assert d == 3
    assert vector_to_poly(a, 3, vec) == {(2, 1): 1, (1, 2): 1}  # x^2 y + x y^2


def test_sq2sq1_vanishes_mod_q8_ideal():
    from specseq.tor import ideal_spans
    a = polynomial_dga(GF2, [("x", 1), ("y", 1)], 10)
    d1, v1 = steenrod_square(a, 1, "x^2+x*y+y^2")
    p1 = vector_to_poly(a, d1, v1)
    d2, v2 = steenrod_square(a, 2, p1)
    assert d2 == 5
    q2 = element_of(a, "x^2+x*y+y^2")
    q3 = element_of(a, "x^2*y+x*y^2")
    span5 = ideal_spans(a, [q2, q3], 5)[5]
    assert span5.contains_vector(v2)


def test_wrong_characteristic_rejected():
    a = polynomial_dga(QQ, [("c", 2)], 6)
    with pytest.raises(TorError):
        total_steenrod_square(a, "c")
