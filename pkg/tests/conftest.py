import random
from fractions import Fraction as F

import pytest
from hypothesis import settings

from hombialg.linalg import LinMap
from hombialg.structures import build_group_algebra, build_taft

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

TAFT_LAMBDAS = [0, 1, 2, 3, -1, F(1, 2)]
GROUPS = [(2, 1), (3, 0), (3, 2), (4, 3), (4, 1)]


def all_builders():
    out = [(f"taft({l})", build_taft(l)) for l in TAFT_LAMBDAS]
    out += [(f"group({n},{k})", build_group_algebra(n, k)) for n, k in GROUPS]
    return out


@pytest.fixture(scope="session")
def taft2():
    return build_taft(2)


@pytest.fixture(scope="session")
def taft3():
    return build_taft(3)


@pytest.fixture(scope="session")
def z4():
    return build_group_algebra(4, 3)


# ---------------------------------------------------------------------------
# Element-level oracle: structure constants as plain dicts, evaluated on
# basis elements by hand-written Sweedler expansions.  Shares no code with
# the matrix machinery beyond reading table entries.

class Elementwise:
    def __init__(self, B):
        d = B.dim
        self.d = d
        self.mul = {}
        for (r, c), v in B.mu.items():
            self.mul.setdefault(divmod(c, d), {})[r] = v
        self.cop = {}
        for (r, c), v in B.delta.items():
            self.cop.setdefault(c, {})[divmod(r, d)] = v
        self.al = {}
        for (r, c), v in B.alpha.items():
            self.al.setdefault(c, {})[r] = v

    def m(self, x, y):
        """Product of two elements given as {index: coeff}."""
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.mul.get((i, j), {}).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: v for k, v in out.items() if v}

    def a(self, x, power=1):
        for _ in range(power):
            out = {}
            for i, v in x.items():
                for j, c in self.al.get(i, {}).items():
                    out[j] = out.get(j, 0) + v * c
            x = {k: v for k, v in out.items() if v}
        return x

    def coproduct(self, i):
        """Sweedler terms [(coeff, left index, right index)] of Delta(e_i)."""
        return [(c, l, r) for (l, r), c in self.cop.get(i, {}).items()]


def taft_z2_tables(lam, a, c):
    """The (f, g) pair from the worked Z^2 example, as maps.

    f : B (x) B -> B and g : B -> B (x) B in the basis e1..e4 (indices 0..3).
    """
    l = F(lam)
    f = {
        (0, 0): {0: a, 1: a}, (0, 1): {0: a, 1: a},
        (0, 2): {2: l * a, 3: l * a}, (0, 3): {2: l * a, 3: l * a},
        (1, 0): {0: a, 1: a}, (1, 1): {0: a, 1: -3 * a},
        (1, 2): {3: l * c, 2: -l * a}, (1, 3): {2: l * (2 * a - c), 3: -l * a},
        (2, 0): {2: l * a, 3: -l * a}, (2, 1): {2: -l * a, 3: -l * c},
        (3, 0): {3: l * a, 2: -l * a}, (3, 1): {2: -l * (2 * a - c), 3: -l * a},
    }
    g = {
        0: {(0, 0): -a, (0, 1): -a, (1, 0): -a, (1, 1): a},
        1: {(0, 0): -a, (0, 1): a, (1, 0): a, (1, 1): -a},
        2: {(0, 2): l * a, (1, 2): -l * a, (2, 0): -l * a, (2, 1): -l * a},
        3: {(0, 3): -l * a, (1, 3): -l * a, (3, 0): l * a, (3, 1): -l * a},
    }
    fm = LinMap.from_function(4, 1, 2, lambda idx: {(k,): v for k, v in f.get(idx, {}).items() if v})
    gm = LinMap.from_function(4, 2, 1, lambda idx: {k: v for k, v in g[idx[0]].items() if v})
    return fm, gm


def taft_b2_table(lam, c):
    """The B^2 table: only f(e2e3), f(e2e4), f(e3e2), f(e4e2) nonzero, g = 0."""
    l = F(lam)
    f = {(1, 2): {3: l * c}, (1, 3): {2: -l * c}, (2, 1): {3: -l * c}, (3, 1): {2: l * c}}
    fm = LinMap.from_function(4, 1, 2, lambda idx: {(k,): v for k, v in f.get(idx, {}).items() if v})
    return fm, LinMap.zero_map(4, 2, 1)


def random_cochain(B, p, q, rng, lo=-3, hi=3):
    from hombialg.cohomology import cochain_maps
    f = LinMap.zero_map(B.dim, p, q)
    for e in cochain_maps(B, p, q):
        x = rng.randint(lo, hi)
        if x:
            f = f + e.scale(x)
    return f


@pytest.fixture
def rng():
    return random.Random(20240601)
