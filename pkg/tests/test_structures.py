from fractions import Fraction as F
from itertools import product

import pytest

from conftest import Elementwise, all_builders
from hombialg.linalg import DimensionError, LinMap
from hombialg.structures import (HomBialgebra, MorphismError, build_group_algebra, build_taft,
                                 coopposite, dual, from_tables, is_morphism, is_weak_morphism,
                                 morphism_failures, opposite, tensor_product, validate,
                                 yau_twist)

CHECKS = ["hom_associativity", "left_unit", "right_unit", "alpha_unit", "hom_coassociativity",
          "left_counit", "right_counit", "counit_alpha", "delta_multiplicative",
          "eps_multiplicative", "delta_unit", "eps_unit", "alpha_multiplicative",
          "alpha_comultiplicative"]


@pytest.mark.parametrize("name,B", all_builders(), ids=[n for n, _ in all_builders()])
def test_builders_validate(name, B):
    rep = validate(B)
    assert rep.names() == CHECKS
    assert rep.all_pass, [c.describe(B.basis) for c in rep.failures()]


@pytest.mark.parametrize("lam", [0, 1, 2, F(-3, 5)])
def test_taft_hom_associativity_elementwise(lam):
    # alpha(x)(yz) = (xy)alpha(z) evaluated one basis triple at a time
    E = Elementwise(build_taft(lam))
    for i, j, k in product(range(4), repeat=3):
        x, y, z = {i: 1}, {j: 1}, {k: 1}
        assert E.m(E.a(x), E.m(y, z)) == E.m(E.m(x, y), E.a(z))


def test_taft_products_by_hand():
    l = F(2)
    E = Elementwise(build_taft(l))
    one, g, x, gx = ({i: 1} for i in range(4))
    assert E.m(g, g) == one
    assert E.m(x, g) == {3: -l}
    assert E.m(g, x) == {3: l}
    assert E.m(x, x) == {}
    assert E.m(gx, g) == {2: -l}


def test_taft_coproduct_by_hand():
    E = Elementwise(build_taft(3))
    assert sorted(E.coproduct(2)) == [(3, 1, 2), (3, 2, 0)]
    assert sorted(E.coproduct(3)) == [(3, 0, 3), (3, 3, 1)]


@pytest.mark.parametrize("n,k", [(2, 1), (3, 2), (4, 3), (5, 2), (6, 5)])
def test_group_algebra_elementwise(n, k):
    E = Elementwise(build_group_algebra(n, k))
    for g, h in product(range(n), repeat=2):
        assert E.m({g: 1}, {h: 1}) == {(k * (g + h)) % n: 1}
        assert E.coproduct(g) == [(1, (k * g) % n, (k * g) % n)]


def test_group_algebra_rejects_bad_args():
    with pytest.raises(ValueError):
        build_group_algebra(3, 3)
    with pytest.raises(ValueError):
        build_group_algebra(0, 0)


def test_broken_associativity_reports_witness():
    B = build_taft(2)
    mu = B.mu + LinMap(4, 1, 2, [((1, 0 * 4 + 1), 1)])  # perturb mu(1 (x) g)
    bad = HomBialgebra(4, B.basis, mu, B.delta, B.eta, B.eps, B.alpha)
    rep = validate(bad)
    assert not rep.all_pass
    c = rep["hom_associativity"]
    assert not c.passed and c.witness is not None and c.lhs != c.rhs
    assert "FAIL" in c.describe(bad.basis)


def test_shape_mismatch():
    B = build_taft(1)
    with pytest.raises(DimensionError):
        HomBialgebra(4, B.basis, B.delta, B.mu, B.eta, B.eps, B.alpha)


def test_from_tables_roundtrip():
    B = build_taft(2)
    C = from_tables(4, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: 1},
                        (0, 2): {2: 2}, (0, 3): {3: 2}, (1, 2): {3: 2}, (1, 3): {2: 2},
                        (2, 0): {2: 2}, (2, 1): {3: -2}, (3, 0): {3: 2}, (3, 1): {2: -2}},
                    {0: {(0, 0): 1}, 1: {(1, 1): 1}, 2: {(2, 0): 2, (1, 2): 2},
                     3: {(3, 1): 2, (0, 3): 2}},
                    [1, 0, 0, 0], [1, 1, 0, 0], {0: {0: 1}, 1: {1: 1}, 2: {2: 2}, 3: {3: 2}})
    assert C.same_structure(B)


def test_taft_not_commutative_not_cocommutative():
    B = build_taft(2)
    assert not B.is_commutative() and not B.is_cocommutative()
    G = build_group_algebra(4, 1)
    assert G.is_commutative() and G.is_cocommutative()


# ---------------------------------------------------------------------------
# constructions

def taft_automorphism(t):
    """g -> g, x -> t x, gx -> t gx: a morphism of (T_2)_lambda for any t."""
    return LinMap(4, 1, 1, [((0, 0), 1), ((1, 1), 1), ((2, 2), t), ((3, 3), t)])


@pytest.mark.parametrize("t", [1, 2, F(1, 3), -1])
def test_yau_twist_by_diagonal_morphism(t):
    B = build_taft(2)
    beta = taft_automorphism(t)
    assert is_morphism(beta, B, B)
    T = yau_twist(B, beta)
    assert validate(T).all_pass
    assert T.alpha == beta @ B.alpha


def test_yau_twist_by_alpha_is_taft_power():
    # twisting (T_2)_l by its own alpha multiplies the x-part of every map by l
    B = build_taft(3)
    T = yau_twist(B, B.alpha)
    assert validate(T).all_pass
    assert T.alpha == B.alpha @ B.alpha


def test_yau_twist_rejects_non_morphism():
    B = build_taft(2)
    beta = LinMap(4, 1, 1, [((0, 0), 1), ((1, 1), 1), ((2, 3), 1), ((3, 2), 1)])
    assert morphism_failures(beta, B, B)
    with pytest.raises(MorphismError):
        yau_twist(B, beta)


def test_weak_morphism_differs():
    B = build_taft(2)
    zero = LinMap.zero_map(4, 1, 1)
    assert is_weak_morphism(zero, B, B)
    assert not is_morphism(zero, B, B)


@pytest.mark.parametrize("name,B", all_builders(), ids=[n for n, _ in all_builders()])
def test_dual_valid_and_involutive(name, B):
    D = dual(B)
    assert validate(D).all_pass
    assert dual(D).same_structure(B)


def test_dual_labels():
    assert dual(build_taft(1)).basis == ("1*", "g*", "x*", "gx*")


@pytest.mark.parametrize("lam", [1, 2])
def test_opposite_and_coopposite(lam):
    B = build_taft(lam)
    assert validate(opposite(B)).all_pass
    assert validate(coopposite(B)).all_pass


def test_tensor_product_valid():
    T = tensor_product(build_group_algebra(2, 1), build_taft(2))
    assert T.dim == 8
    assert validate(T).all_pass
    assert T.unit == (1,) + (0,) * 7


def test_tensor_product_elementwise():
    A, B = build_group_algebra(3, 2), build_group_algebra(2, 1)
    T = tensor_product(A, B)
    E = Elementwise(T)
    # (g (x) a)(h (x) b) = k(g+h) (x) (a+b)
    for g, a, h, b in product(range(3), range(2), range(3), range(2)):
        want = ((2 * (g + h)) % 3) * 2 + (a + b) % 2
        assert E.m({g * 2 + a: 1}, {h * 2 + b: 1}) == {want: 1}
