import pytest

from specseq.linalg import GF2, GF3, QQ
from specseq.dga import (
    AlgebraMorphism,
    DGAError,
    free_cdga,
    group_cochain_dga,
    koszul_sign,
    parse_polynomial,
    polynomial_dga,
    regular_module,
    restrict_module,
    trivial_module,
    verify_dga,
    verify_module,
)


def test_polynomial_cp_infinity():
    a = polynomial_dga(QQ, [("c", 2)], 8)
    assert a.dims() == [1, 0, 1, 0, 1, 0, 1, 0, 1]
    verify_dga(a)


def test_polynomial_two_gens_f2():
    a = polynomial_dga(GF2, [("x", 1), ("y", 1)], 6)
    assert a.dims() == [1, 2, 3, 4, 5, 6, 7]
    verify_dga(a)


def test_polynomial_two_even_gens():
    a = polynomial_dga(QQ, [("a", 2), ("b", 2)], 8)
    assert [a.dim(2 * k) for k in range(5)] == [1, 2, 3, 4, 5]
    verify_dga(a)


def test_polynomial_rejects_odd_in_char_zero():
    with pytest.raises(DGAError):
        polynomial_dga(QQ, [("x", 3)], 6)


def test_exterior_generator():
    a = free_cdga(QQ, [("x", 3)], {}, 6)
    assert a.dims()[:4] == [1, 0, 0, 1]
    assert a.dim(6) == 0  # x^2 = 0
    verify_dga(a)


def test_free_cdga_sphere_model():
    # (S(e2) (x) Lambda(y3), dy = e^2) has H = H(S^2; Q)
    a = free_cdga(QQ, [("e", 2), ("y", 3)], {"y": "e^2"}, 8)
    verify_dga(a)
    h = a.cohomology_dims()
    assert h[:6] == [1, 0, 1, 0, 0, 0]


def test_free_cdga_d_squared_rejected():
    # d(u) = a with d(a) = b forces d^2(u) = b != 0
    with pytest.raises(DGAError, match="d\\^2 != 0"):
        free_cdga(QQ, [("a", 2), ("b", 3), ("u", 1)], {"a": "b", "u": "a"}, 6)


def test_ustinovskii_model_h5():
    # S(a,b) (x) Lambda(u,v,t), du = a^2, dv = b^2, dt = a*b: dim H^5 = 2
    a = free_cdga(QQ, [("a", 2), ("b", 2), ("u", 3), ("v", 3), ("t", 3)],
                  {"u": "a^2", "v": "b^2", "t": "a*b"}, 7)
    verify_dga(a)
    h = a.cohomology_dims()
    assert h[5] == 2
    assert h[:4] == [1, 0, 2, 0]


def test_free_cdga_order_independence():
    kw = dict(field=QQ, gens=[("a", 2), ("b", 2), ("u", 3), ("v", 3), ("t", 3)],
              diffs={"u": "a^2", "v": "b^2", "t": "a*b"}, n_max=7)
    h1 = free_cdga(kw["field"], kw["gens"], kw["diffs"], kw["n_max"], order="grlex")
    h2 = free_cdga(kw["field"], kw["gens"], kw["diffs"], kw["n_max"], order="grevlex")
    assert h1.cohomology_dims() == h2.cohomology_dims()


def test_group_cochain_bz2():
    a = group_cochain_dga(2, 6)
    assert a.dims() == [1, 1, 1, 1, 1, 1, 1]
    verify_dga(a)
    assert a.cohomology_dims()[:6] == [1, 1, 1, 1, 1, 1]


def test_group_cochain_bz3():
    a = group_cochain_dga(3, 5)
    assert a.dims() == [1, 2, 4, 8, 16, 32]
    verify_dga(a)
    assert a.cohomology_dims()[:5] == [1, 1, 1, 1, 1]


def test_group_cochain_cup_product_is_concatenation_evaluation():
    a = group_cochain_dga(3, 4)
    # product of two degree-1 indicators evaluates as f(g1) g(g2)
    i1 = a.index[1][(1,)]
    i2 = a.index[1][(2,)]
    assert a.mult_basis(1, i1, 1, i2) == {a.index[2][(1, 2)]: 1}


def test_restrict_module_hp_to_cp():
    hp = polynomial_dga(QQ, [("w", 4)], 8)
    cp = polynomial_dga(QQ, [("c", 2)], 8)
    phi = AlgebraMorphism.from_generator_images(hp, cp, {"w": "c^2"}, name="w->c^2")
    m = restrict_module(phi)
    verify_module(m)
    # action of w on 1 is c^2
    assert m.act_basis(4, 0, 0, 0) == {cp.index[2 + 2][(2,)]: 1}


def test_trivial_and_regular_modules():
    a = polynomial_dga(GF3, [("y", 2)], 6)
    verify_module(trivial_module(a))
    verify_module(regular_module(a))


def test_module_over_noncommutative_cochains():
    a = group_cochain_dga(3, 4)
    verify_module(regular_module(a))


def test_morphism_identity():
    a = polynomial_dga(QQ, [("c", 2)], 6)
    phi = AlgebraMorphism.from_generator_images(a, a, {"c": "c"}, name="id")
    m = restrict_module(phi)
    # identity restriction is the regular module
    r = regular_module(a)
    for n in range(5):
        for i in range(a.dim(n)):
            assert m.act_basis(2, 0, n, i) == r.act_basis(2, 0, n, i)


def test_parse_polynomial():
    gens = ["x", "y"]
    assert parse_polynomial("x*y", gens) == {(1, 1): 1}
    assert parse_polynomial("x^2+x*y+y^2", gens) == {(2, 0): 1, (1, 1): 1, (0, 2): 1}
    assert parse_polynomial("2*x^2 - y^2", gens) == {(2, 0): 2, (0, 2): -1}
    assert parse_polynomial("(x+y)^2", gens) == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    with pytest.raises(Exception):
        parse_polynomial("z", gens)


def test_koszul_sign():
    assert koszul_sign(2, 3) == 1
    assert koszul_sign(3, 3) == -1
    assert koszul_sign(0, 5) == 1


def test_polynomial_quotient_verifies():
    from specseq.dga import polynomial_quotient_dga
    s2 = polynomial_quotient_dga(QQ, [("s", 2)], ["s^2"], 6)
    verify_dga(s2)
    flag = polynomial_quotient_dga(
        QQ, [("t1", 2), ("t2", 2)],
        ["-t1^2-t1*t2-t2^2", "-t1^2*t2-t1*t2^2"], 8, name="flag")
    verify_dga(flag)
    assert flag.dims()[:7] == [1, 0, 2, 0, 2, 0, 1]
    assert not flag.truncated_above


def test_cohomology_dga_products():
    from specseq.dga import cohomology_dga
    # H of the S^2 minimal model is H(S^2) with its truncated product
    model = free_cdga(QQ, [("e", 2), ("y", 3)], {"y": "e^2"}, 8)
    h, _ = cohomology_dga(model)
    assert h.dims()[:6] == [1, 0, 1, 0, 0, 0]
    verify_dga(h)
    assert h.mult_basis(2, 0, 2, 0) == {}  # the square of the area class dies


def test_module_with_trivial_action():
    from specseq.dga import module_with_trivial_action
    a = polynomial_dga(QQ, [("c", 2)], 6)
    b = free_cdga(QQ, [("x", 3)], {}, 6)
    m = module_with_trivial_action(a, b)
    verify_module(m)
    assert m.act_basis(2, 0, 3, 0) == {}
    assert m.act_basis(0, 0, 3, 0) == {0: 1}
