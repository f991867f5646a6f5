"""Convolution product on End(B) and the antipode as a linear system."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .linalg import DimensionError, LinMap, Matrix, kernel_basis, mat_tensor, solve_linear
from .structures import AxiomReport, HomBialgebra, compare_maps


class NonUniqueAntipodeWarning(UserWarning):
    pass


@dataclass(frozen=True)
class ConvolutionContext:
    """Algebra side ``(mu, eta, alpha_A)`` and coalgebra side ``(Delta, eps, beta_C)``."""
    mu: Matrix
    eta: Matrix
    alpha_A: Matrix
    delta: Matrix
    eps: Matrix
    beta_C: Matrix

    @classmethod
    def of(cls, B: HomBialgebra) -> "ConvolutionContext":
        return cls(B.mu, B.eta, B.alpha, B.delta, B.eps, B.alpha)

    @property
    def unit(self) -> Matrix:
        return self.eta @ self.eps

    def gamma(self, f: Matrix) -> Matrix:
        return self.alpha_A @ f @ self.beta_C

    def shape(self):
        return (self.alpha_A.rows, self.beta_C.rows)


def convolve(ctx: ConvolutionContext, f: Matrix, g: Matrix) -> Matrix:
    """``f * g = mu o (f (x) g) o Delta``."""
    if f.shape != ctx.shape() or g.shape != ctx.shape():
        raise DimensionError(f"convolving {f.shape} and {g.shape}, expected {ctx.shape()}")
    return ctx.mu @ mat_tensor(f, g) @ ctx.delta


def _antipode_system(B: HomBialgebra):
    """Rows: both equations ``mu (id (x) S) Delta = eta eps = mu (S (x) id) Delta``.

    Unknowns are the entries of S in row-major order, ``S[r, c]`` at ``r*d + c``.
    Each equation evaluated on e_x gives, for output coordinate k,
    ``sum_{i,j} Delta[(i,j), x] mu[k, (i, r)] S[r, j]`` (left version) and the
    mirror for the right version.
    """
    d = B.dim
    mu, de = B.mu, B.delta
    rows, rhs = [], []
    target = B.eta @ B.eps
    for side in ("left", "right"):
        for x in range(d):
            for k in range(d):
                row = {}
                for ij, c in de.column(x).items():
                    i, j = divmod(ij, d)
                    for r in range(d):
                        # S applied to the second (left eq.) or first (right eq.) leg
                        if side == "left":
                            m = mu[k, i * d + r]
                            var = r * d + j
                        else:
                            m = mu[k, r * d + j]
                            var = r * d + i
                        if m:
                            row[var] = row.get(var, 0) + c * m
                rows.append({v: a for v, a in row.items() if a})
                rhs.append(target[k, x])
    return Matrix.from_rows(d * d, rows), rhs


def antipode_solutions(B: HomBialgebra):
    """(particular solution or None, dimension of the solution space's direction)."""
    M, rhs = _antipode_system(B)
    x = solve_linear(M, rhs)
    if x is None:
        return None, 0
    return LinMap.from_vec(B.dim, 1, 1, x), kernel_basis(M).dim


def antipode_solve(B: HomBialgebra, warn: bool = True) -> LinMap | None:
    """Solve for S with ``mu (id (x) S) Delta = mu (S (x) id) Delta = eta eps``."""
    S, free = antipode_solutions(B)
    if S is not None and free and warn:
        warnings.warn(f"antipode equations have a {free}-dimensional family of solutions",
                      NonUniqueAntipodeWarning, stacklevel=2)
    return S


def is_antipode(B: HomBialgebra, S: Matrix) -> bool:
    ctx = ConvolutionContext.of(B)
    I = B.id()
    return convolve(ctx, I, S) == ctx.unit and convolve(ctx, S, I) == ctx.unit


def antipode_properties(B: HomBialgebra, S: Matrix) -> AxiomReport:
    tau = B.tau()
    S = LinMap.from_matrix(S, B.dim, 1, 1)
    checks = [
        compare_maps("anti_multiplicative", S @ B.mu, B.mu @ mat_tensor(S, S) @ tau),
        compare_maps("anti_comultiplicative", B.delta @ S, tau @ mat_tensor(S, S) @ B.delta),
        compare_maps("unit", S @ B.eta, B.eta),
        compare_maps("counit", B.eps @ S, B.eps),
        compare_maps("commutes_with_alpha", S @ B.alpha, B.alpha @ S),
    ]
    if B.is_commutative() or B.is_cocommutative():
        checks.append(compare_maps("involutive", S @ S, B.id()))
    return AxiomReport(tuple(checks))


def involutive_check(B: HomBialgebra, S: Matrix):
    """``S o S = id`` regardless of (co)commutativity."""
    S = LinMap.from_matrix(S, B.dim, 1, 1)
    return compare_maps("involutive", S @ S, B.id())
