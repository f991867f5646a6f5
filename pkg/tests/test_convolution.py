import random
import warnings

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import Elementwise, all_builders
from hombialg.convolution import (ConvolutionContext, NonUniqueAntipodeWarning,
                                  antipode_properties, antipode_solutions, antipode_solve,
                                  convolve, involutive_check, is_antipode)
from hombialg.linalg import DimensionError, LinMap
from hombialg.structures import build_group_algebra, build_taft, dual

endo_entries = st.lists(st.integers(-3, 3), min_size=16, max_size=16)


@given(endo_entries, endo_entries, endo_entries, st.sampled_from([0, 1, 2, -1]))
def test_convolution_hom_associative(a, b, c, lam):
    B = build_taft(lam)
    ctx = ConvolutionContext.of(B)
    f, g, h = (LinMap.from_vec(4, 1, 1, v) for v in (a, b, c))
    assert (convolve(ctx, convolve(ctx, f, g), ctx.gamma(h))
            == convolve(ctx, ctx.gamma(f), convolve(ctx, g, h)))


@given(endo_entries)
def test_convolution_unit_up_to_twist(a):
    B = build_taft(2)
    ctx = ConvolutionContext.of(B)
    f = LinMap.from_vec(4, 1, 1, a)
    assert convolve(ctx, ctx.unit, f) == ctx.gamma(f) == convolve(ctx, f, ctx.unit)


def test_convolution_elementwise():
    # (f * g)(x) = sum f(x1) g(x2)
    B = build_taft(3)
    E = Elementwise(B)
    rng = random.Random(0)
    f = LinMap.from_vec(4, 1, 1, [rng.randint(-2, 2) for _ in range(16)])
    g = LinMap.from_vec(4, 1, 1, [rng.randint(-2, 2) for _ in range(16)])
    fg = convolve(ConvolutionContext.of(B), f, g)
    for x in range(4):
        want = {}
        for c, l, r in E.coproduct(x):
            for k, v in E.m(f.column(l), g.column(r)).items():
                want[k] = want.get(k, 0) + c * v
        assert fg.column(x) == {k: v for k, v in want.items() if v}


def test_convolution_shape_error():
    ctx = ConvolutionContext.of(build_taft(1))
    with pytest.raises(DimensionError):
        convolve(ctx, LinMap.identity_map(3), LinMap.identity_map(4))


@pytest.mark.parametrize("n", range(1, 7))
def test_group_antipode(n):
    B = build_group_algebra(n, 1 % n)
    S = antipode_solve(B)
    assert S == LinMap(n, 1, 1, [(((-g) % n, g), 1) for g in range(n)])
    rep = antipode_properties(B, S)
    assert rep.names()[:5] == ["anti_multiplicative", "anti_comultiplicative", "unit", "counit",
                               "commutes_with_alpha"]
    assert rep.all_pass


def test_sweedler_antipode():
    B = build_taft(1)
    S = antipode_solve(B)
    # S(1) = 1, S(g) = g, S(x) = -gx, S(gx) = x
    assert S.column(0) == {0: 1} and S.column(1) == {1: 1}
    assert S.column(2) == {3: -1} and S.column(3) == {2: 1}
    assert is_antipode(B, S)
    assert antipode_properties(B, S).all_pass
    # the Sweedler antipode has order four
    assert not involutive_check(B, S).passed
    assert (S @ S).column(2) == {2: -1}


@pytest.mark.parametrize("lam", [2, 3, -1])
def test_taft_antipode_regression(lam):
    B = build_taft(lam)
    S, free = antipode_solutions(B)
    assert free == 0
    assert S == antipode_solve(build_taft(1))
    assert is_antipode(B, S) and antipode_properties(B, S).all_pass


def test_no_antipode_when_equations_inconsistent():
    # with Delta = 0 the convolution side vanishes but eta eps does not
    B = build_group_algebra(1, 0)
    B0 = type(B)(1, B.basis, B.mu, B.delta.scale(0), B.eta, B.eps, B.alpha)
    assert antipode_solve(B0) is None


@pytest.mark.parametrize("B", [build_taft(0), build_group_algebra(3, 0)], ids=["taft0", "z3k0"])
def test_degenerate_twist_gives_family(B):
    S, free = antipode_solutions(B)
    assert S is not None and free > 0
    assert is_antipode(B, S)
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        antipode_solve(B)
    assert any(issubclass(x.category, NonUniqueAntipodeWarning) for x in w)


@pytest.mark.parametrize("name,B", all_builders(), ids=[n for n, _ in all_builders()])
def test_dual_antipode_is_transpose(name, B):
    S, free = antipode_solutions(B)
    Sd, free_d = antipode_solutions(dual(B))
    assert (S is None) == (Sd is None)
    if S is None:
        return
    assert free == free_d
    assert is_antipode(dual(B), S.transpose())
    if not free:
        assert Sd == S.transpose()
