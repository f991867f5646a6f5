"""Hom-bialgebras given by structure constants, axiom checks and constructions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import (DimensionError, LinMap, Matrix, flip_operator, mat_tensor,
                     multi_index, permutation_matrix, to_scalar)


class MorphismError(ValueError):
    """A map that was required to be a Hom-bialgebra morphism is not one."""


@dataclass(frozen=True)
class HomBialgebra:
    """``(B, mu, eta, Delta, eps, alpha)`` on a ``dim``-dimensional space.

    ``mu`` is ``d x d^2``, ``delta`` is ``d^2 x d``, ``eta`` is ``d x 1`` (its
    column is the unit element), ``eps`` is ``1 x d`` and ``alpha`` is ``d x d``.
    """

    dim: int
    basis: tuple[str, ...]
    mu: LinMap
    delta: LinMap
    eta: LinMap
    eps: LinMap
    alpha: LinMap
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        d = self.dim
        object.__setattr__(self, "basis", tuple(self.basis))
        if len(self.basis) != d:
            raise DimensionError(f"{len(self.basis)} basis labels for dimension {d}")
        want = {"mu": (1, 2), "delta": (2, 1), "eta": (1, 0), "eps": (0, 1), "alpha": (1, 1)}
        for name, (p, q) in want.items():
            m = getattr(self, name)
            if not isinstance(m, LinMap):
                m = LinMap.from_matrix(m, d, p, q)
                object.__setattr__(self, name, m)
            if (m.base_dim, m.cod_arity, m.dom_arity) != (d, p, q):
                raise DimensionError(f"{name} has shape {m.shape}, expected {(d ** p, d ** q)}")

    @property
    def unit(self) -> tuple[Fraction, ...]:
        return tuple(self.eta[i, 0] for i in range(self.dim))

    @property
    def counit(self) -> tuple[Fraction, ...]:
        return tuple(self.eps[0, i] for i in range(self.dim))

    def id(self, n: int = 1) -> LinMap:
        return LinMap.identity_map(self.dim, n)

    def alpha_power(self, n: int) -> LinMap:
        """``alpha^{(x)n}`` (tensor power of single copies)."""
        key = ("alpha_tensor", n)
        if key not in self._cache:
            self._cache[key] = (LinMap.identity_map(self.dim, 0) if n == 0
                                else mat_tensor(*([self.alpha] * n)))
        return self._cache[key]

    def alpha_iterate(self, k: int) -> LinMap:
        """``alpha o ... o alpha`` (k-fold composition, identity for k = 0)."""
        key = ("alpha_iter", k)
        if key not in self._cache:
            self._cache[key] = self.alpha.power(k)
        return self._cache[key]

    def tau(self, n: int = 2, i: int = 1, j: int = 2) -> LinMap:
        return flip_operator(self.dim, n, i, j)

    def is_commutative(self) -> bool:
        return self.mu @ self.tau() == self.mu

    def is_cocommutative(self) -> bool:
        return self.tau() @ self.delta == self.delta

    def same_structure(self, other: "HomBialgebra") -> bool:
        return all(getattr(self, k) == getattr(other, k)
                   for k in ("dim", "mu", "delta", "eta", "eps", "alpha"))


# ---------------------------------------------------------------------------
# axiom reports

@dataclass(frozen=True)
class AxiomCheck:
    name: str
    passed: bool
    witness: tuple | None = None       # input basis indices of the first failure
    lhs: dict | None = None            # {output indices: coefficient}
    rhs: dict | None = None

    def describe(self, labels=None) -> str:
        if self.passed:
            return f"{self.name}: pass"
        w = self.witness
        if labels and w is not None:
            w = " (x) ".join(labels[i] for i in w) if w else "1"
        return f"{self.name}: FAIL at {w}: lhs={_fmt(self.lhs)} rhs={_fmt(self.rhs)}"


def _fmt(vals):
    if not vals:
        return "0"
    return " + ".join(f"{v}*e{list(k)}" for k, v in sorted(vals.items()))


@dataclass(frozen=True)
class AxiomReport:
    checks: tuple[AxiomCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[AxiomCheck]:
        return [c for c in self.checks if not c.passed]

    def names(self):
        return [c.name for c in self.checks]


def compare_maps(name: str, lhs: Matrix, rhs: Matrix, dims=None) -> AxiomCheck:
    """Exact comparison reporting the first differing input basis tensor.

    ``dims`` is ``(d, out_arity, in_arity)`` for decoding indices; taken from
    the LinMap when omitted.
    """
    if lhs.shape != rhs.shape:
        raise DimensionError(f"{name}: comparing {lhs.shape} with {rhs.shape}")
    if lhs == rhs:
        return AxiomCheck(name, True)
    if dims is None:
        if isinstance(lhs, LinMap):
            dims = (lhs.base_dim, lhs.cod_arity, lhs.dom_arity)
        elif isinstance(rhs, LinMap):
            dims = (rhs.base_dim, rhs.cod_arity, rhs.dom_arity)
    diff = lhs - rhs
    c = min(c for (_, c), _ in diff.items())
    lcol, rcol = lhs.column(c), rhs.column(c)
    if dims is not None:
        d, p, q = dims
        key_out = lambda r: multi_index(r, d, p)
        witness = multi_index(c, d, q)
    else:
        key_out = lambda r: (r,)
        witness = (c,)
    return AxiomCheck(name, False, witness,
                      {key_out(r): v for r, v in sorted(lcol.items())},
                      {key_out(r): v for r, v in sorted(rcol.items())})


def validate(B: HomBialgebra) -> AxiomReport:
    """Check every Hom-bialgebra axiom as an exact matrix identity."""
    mu, delta, eta, eps, alpha = B.mu, B.delta, B.eta, B.eps, B.alpha
    I = B.id()
    one = LinMap.identity_map(B.dim, 0)
    t23 = flip_operator(B.dim, 4, 2, 3)
    checks = [
        compare_maps("hom_associativity", mu @ mat_tensor(alpha, mu), mu @ mat_tensor(mu, alpha)),
        compare_maps("left_unit", mu @ mat_tensor(eta, I), alpha),
        compare_maps("right_unit", mu @ mat_tensor(I, eta), alpha),
        compare_maps("alpha_unit", alpha @ eta, eta),
        compare_maps("hom_coassociativity", mat_tensor(delta, alpha) @ delta,
                     mat_tensor(alpha, delta) @ delta),
        compare_maps("left_counit", mat_tensor(eps, I) @ delta, alpha),
        compare_maps("right_counit", mat_tensor(I, eps) @ delta, alpha),
        compare_maps("counit_alpha", eps @ alpha, eps),
        compare_maps("delta_multiplicative", delta @ mu,
                     mat_tensor(mu, mu) @ t23 @ mat_tensor(delta, delta)),
        compare_maps("eps_multiplicative", eps @ mu, mat_tensor(eps, eps)),
        compare_maps("delta_unit", delta @ eta, mat_tensor(eta, eta)),
        compare_maps("eps_unit", eps @ eta, one),
        compare_maps("alpha_multiplicative", alpha @ mu, mu @ mat_tensor(alpha, alpha)),
        compare_maps("alpha_comultiplicative", delta @ alpha, mat_tensor(alpha, alpha) @ delta),
    ]
    return AxiomReport(tuple(checks))


# ---------------------------------------------------------------------------
# morphisms

def morphism_failures(f: Matrix, B: HomBialgebra, B2: HomBialgebra, weak=False) -> list[str]:
    if f.shape != (B2.dim, B.dim):
        raise DimensionError(f"map of shape {f.shape} between dimensions {B.dim} -> {B2.dim}")
    out = []
    if B2.mu @ mat_tensor(f, f) != f @ B.mu:
        out.append("mu' o (f (x) f) = f o mu")
    if mat_tensor(f, f) @ B.delta != B2.delta @ f:
        out.append("(f (x) f) o Delta = Delta' o f")
    if not weak:
        if f @ B.alpha != B2.alpha @ f:
            out.append("f o alpha = alpha' o f")
        if f @ B.eta != B2.eta:
            out.append("f o eta = eta'")
        if B2.eps @ f != B.eps:
            out.append("eps' o f = eps")
    return out


def is_morphism(f: Matrix, B: HomBialgebra, B2: HomBialgebra) -> bool:
    return not morphism_failures(f, B, B2)


def is_weak_morphism(f: Matrix, B: HomBialgebra, B2: HomBialgebra) -> bool:
    return not morphism_failures(f, B, B2, weak=True)


# ---------------------------------------------------------------------------
# builders

def from_tables(dim, mu, delta, eta, eps, alpha, basis=None) -> HomBialgebra:
    """Build from sparse tables.

    ``mu``: ``{(i, j): {k: c}}`` meaning mu(e_i (x) e_j) has coefficient c on e_k;
    ``delta``: ``{i: {(j, k): c}}``; ``alpha``: ``{i: {j: c}}``; ``eta``/``eps``:
    sequences of length ``dim``.
    """
    d = dim
    mu_m = LinMap(d, 1, 2, [((k, i * d + j), c) for (i, j), out in mu.items()
                             for k, c in out.items()])
    de_m = LinMap(d, 2, 1, [((j * d + k, i), c) for i, out in delta.items()
                             for (j, k), c in out.items()])
    al_m = LinMap(d, 1, 1, [((j, i), c) for i, out in alpha.items() for j, c in out.items()])
    eta_m = LinMap(d, 1, 0, [((i, 0), c) for i, c in enumerate(eta) if to_scalar(c)])
    eps_m = LinMap(d, 0, 1, [((0, i), c) for i, c in enumerate(eps) if to_scalar(c)])
    if basis is None:
        basis = [f"e{i + 1}" for i in range(d)]
    return HomBialgebra(d, tuple(basis), mu_m, de_m, eta_m, eps_m, al_m)


def build_taft(lam) -> HomBialgebra:
    """The Hom-type Taft-Sweedler bialgebra ``(T_2)_lambda``.

    Basis ``e1 = 1, e2 = g, e3 = x, e4 = gx`` (indices 0..3), twisted by
    ``alpha = diag(1, 1, lambda, lambda)``.
    """
    l = to_scalar(lam)
    e1, e2, e3, e4 = range(4)
    mu = {
        (e1, e1): {e1: 1}, (e1, e2): {e2: 1}, (e1, e3): {e3: l}, (e1, e4): {e4: l},
        (e2, e1): {e2: 1}, (e2, e2): {e1: 1}, (e2, e3): {e4: l}, (e2, e4): {e3: l},
        (e3, e1): {e3: l}, (e3, e2): {e4: -l},
        (e4, e1): {e4: l}, (e4, e2): {e3: -l},
    }
    delta = {
        e1: {(e1, e1): 1},
        e2: {(e2, e2): 1},
        e3: {(e3, e1): l, (e2, e3): l},
        e4: {(e4, e2): l, (e1, e4): l},
    }
    alpha = {e1: {e1: 1}, e2: {e2: 1}, e3: {e3: l}, e4: {e4: l}}
    return from_tables(4, mu, delta, [1, 0, 0, 0], [1, 1, 0, 0], alpha,
                       basis=["1", "g", "x", "gx"])


def build_group_algebra(n: int, k: int) -> HomBialgebra:
    """Group algebra of Z/n twisted by the endomorphism ``g -> k g``."""
    if n < 1 or not (0 <= k < n):
        raise ValueError(f"need n >= 1 and 0 <= k < n, got n={n}, k={k}")
    a = lambda g: (k * g) % n
    mu = {(g, h): {a((g + h) % n): 1} for g in range(n) for h in range(n)}
    delta = {g: {(a(g), a(g)): 1} for g in range(n)}
    alpha = {g: {a(g): 1} for g in range(n)}
    return from_tables(n, mu, delta, [1] + [0] * (n - 1), [1] * n, alpha,
                       basis=[f"g{g}" for g in range(n)])


# ---------------------------------------------------------------------------
# constructions

def yau_twist(B: HomBialgebra, beta: Matrix) -> HomBialgebra:
    """``B_beta = (B, beta o mu, beta o eta, Delta o beta, eps o beta, beta o alpha)``."""
    bad = morphism_failures(beta, B, B)
    if bad:
        raise MorphismError("twisting map is not a Hom-bialgebra morphism: " + "; ".join(bad))
    beta = LinMap.from_matrix(beta, B.dim, 1, 1)
    return HomBialgebra(B.dim, B.basis, beta @ B.mu, B.delta @ beta, beta @ B.eta,
                        B.eps @ beta, beta @ B.alpha)


def dual(B: HomBialgebra) -> HomBialgebra:
    """Linear dual in the dual basis: every structure map is transposed."""
    return HomBialgebra(B.dim, tuple(f"{b}*" for b in B.basis), B.delta.transpose(),
                        B.mu.transpose(), B.eps.transpose(), B.eta.transpose(),
                        B.alpha.transpose())


def _undual_labels(basis):
    return tuple(b[:-1] if b.endswith("**") else b for b in basis)


def opposite(B: HomBialgebra) -> HomBialgebra:
    return HomBialgebra(B.dim, B.basis, B.mu @ B.tau(), B.delta, B.eta, B.eps, B.alpha)


def coopposite(B: HomBialgebra) -> HomBialgebra:
    return HomBialgebra(B.dim, B.basis, B.mu, B.tau() @ B.delta, B.eta, B.eps, B.alpha)


def tensor_product(B1: HomBialgebra, B2: HomBialgebra) -> HomBialgebra:
    """``B1 (x) B2`` with componentwise structure and the middle-four shuffles."""
    d1, d2 = B1.dim, B2.dim
    d = d1 * d2
    # (B1 B2)(B1 B2) -> (B1 B1)(B2 B2)
    shuffle_in = permutation_matrix([d1, d2, d1, d2], [0, 2, 1, 3])
    shuffle_out = permutation_matrix([d1, d1, d2, d2], [0, 2, 1, 3])
    mu = LinMap.from_matrix(mat_tensor(B1.mu, B2.mu) @ shuffle_in, d, 1, 2)
    delta = LinMap.from_matrix(shuffle_out @ mat_tensor(B1.delta, B2.delta), d, 2, 1)
    eta = LinMap.from_matrix(mat_tensor(B1.eta, B2.eta), d, 1, 0)
    eps = LinMap.from_matrix(mat_tensor(B1.eps, B2.eps), d, 0, 1)
    alpha = LinMap.from_matrix(mat_tensor(B1.alpha, B2.alpha), d, 1, 1)
    basis = [f"{a}(x){b}" for a in B1.basis for b in B2.basis]
    return HomBialgebra(d, tuple(basis), mu, delta, eta, eps, alpha)


def builder_outputs(lambdas: Sequence = (0, 1, 2, 3, -1, Fraction(1, 2))):
    """Named examples used throughout the test-suite and scripts."""
    out = {f"taft({l})": build_taft(l) for l in lambdas}
    for n, k in [(2, 1), (3, 0), (3, 2), (4, 3), (4, 1)]:
        out[f"group({n},{k})"] = build_group_algebra(n, k)
    return out
