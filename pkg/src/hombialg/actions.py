"""Tensor-power actions and coactions of B on B^{(x)n} and (co)module checks."""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import DimensionError, LinMap, Matrix, flip_operator, mat_tensor
from .structures import AxiomReport, HomBialgebra, compare_maps

KINDS = ("left_action", "right_action", "left_coaction", "right_coaction")


@dataclass(frozen=True)
class ActionMap:
    kind: str
    n: int
    map: LinMap

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown action kind {self.kind!r}")


def _check_n(n):
    if n < 1:
        raise ValueError(f"tensor power must be >= 1, got {n}")


def _cached(B, key, build):
    if key not in B._cache:
        B._cache[key] = build()
    return B._cache[key]


def left_action_power(B: HomBialgebra, n: int, balanced: bool = True) -> ActionMap:
    """``B (x) B^n -> B^n``: ``x (x) m1..mn -> x(1) m1 (x) x(2) (m2..mn)``.

    With ``balanced`` the first leg carries ``alpha^{n-2}``, so the iterated
    coproduct of x is the bracketing-independent one,
    ``alpha^{n-2}(x1) m1 (x) alpha^{n-3}(x21) m2 (x) ...``.  Without it the
    plain recursion ``(mu (x) lambda^{n-1}) o tau_23 o (Delta (x) id)`` is used.
    Both agree when alpha = id or n <= 2.
    """
    _check_n(n)
    return ActionMap("left_action", n, _left_action(B, n, balanced))


def _twist_left(B, m, k, pre):
    """``m o (alpha^k (x) id)`` (pre=True) or ``(alpha^k (x) id) o m``."""
    if k == 0:
        return m
    a = mat_tensor(B.alpha_iterate(k), B.id())
    return m @ a if pre else a @ m


def _twist_right(B, m, k, pre):
    if k == 0:
        return m
    a = mat_tensor(B.id(), B.alpha_iterate(k))
    return m @ a if pre else a @ m


def _left_action(B, n, balanced=True):
    def build():
        if n == 1:
            return B.mu
        first = _twist_left(B, B.mu, n - 2, True) if balanced else B.mu
        return (mat_tensor(first, _left_action(B, n - 1, balanced))
                @ flip_operator(B.dim, n + 2, 2, 3)
                @ mat_tensor(B.delta, B.id(n)))
    return _cached(B, ("lambda_l", n, balanced), build)


def right_action_power(B: HomBialgebra, n: int, balanced: bool = True) -> ActionMap:
    """``B^n (x) B -> B^n``: ``(m1..m_{n-1}) x(1) (x) mn x(2)``, mirror of the left one."""
    _check_n(n)
    return ActionMap("right_action", n, _right_action(B, n, balanced))


def _right_action(B, n, balanced=True):
    def build():
        if n == 1:
            return B.mu
        last = _twist_right(B, B.mu, n - 2, True) if balanced else B.mu
        return (mat_tensor(_right_action(B, n - 1, balanced), last)
                @ flip_operator(B.dim, n + 2, n, n + 1)
                @ mat_tensor(B.id(n), B.delta))
    return _cached(B, ("lambda_r", n, balanced), build)


def left_coaction_power(B: HomBialgebra, n: int, balanced: bool = True) -> ActionMap:
    """``B^n -> B (x) B^n``, multiplying the left legs of all coproducts.

    No twist is applied on the module slots.  With ``balanced`` the product of
    the legs is the bracketing-independent Hom-product
    ``alpha^{n-2}(x1) (alpha^{n-3}(y1) (...))``.
    """
    _check_n(n)
    return ActionMap("left_coaction", n, _left_coaction(B, n, balanced))


def _left_coaction(B, n, balanced=True):
    def build():
        if n == 1:
            return B.delta
        first = _twist_left(B, B.delta, n - 2, False) if balanced else B.delta
        return (mat_tensor(B.mu, B.id(n))
                @ flip_operator(B.dim, n + 2, 2, 3)
                @ mat_tensor(first, _left_coaction(B, n - 1, balanced)))
    return _cached(B, ("rho_l", n, balanced), build)


def right_coaction_power(B: HomBialgebra, n: int, balanced: bool = True) -> ActionMap:
    _check_n(n)
    return ActionMap("right_coaction", n, _right_coaction(B, n, balanced))


def _right_coaction(B, n, balanced=True):
    def build():
        if n == 1:
            return B.delta
        last = _twist_right(B, B.delta, n - 2, False) if balanced else B.delta
        return (mat_tensor(B.id(n), B.mu)
                @ flip_operator(B.dim, n + 2, n, n + 1)
                @ mat_tensor(_right_coaction(B, n - 1, balanced), last))
    return _cached(B, ("rho_r", n, balanced), build)


def _need_shape(name, m, shape):
    if m.shape != shape:
        raise DimensionError(f"{name} has shape {m.shape}, expected {shape}")


def validate_bimodule(lambda_l: Matrix, lambda_r: Matrix, alpha_A: Matrix, alpha_M: Matrix,
                      mu: Matrix, eta: Matrix) -> AxiomReport:
    """Left/right module axioms, their unit conditions and the bimodule compatibility."""
    a, m = alpha_A.shape[0], alpha_M.shape[0]
    _need_shape("alpha_A", alpha_A, (a, a))
    _need_shape("alpha_M", alpha_M, (m, m))
    _need_shape("mu", mu, (a, a * a))
    _need_shape("eta", eta, (a, 1))
    _need_shape("lambda_l", lambda_l, (m, a * m))
    _need_shape("lambda_r", lambda_r, (m, m * a))
    idM = Matrix.identity(m)
    checks = (
        compare_maps("left_action", lambda_l @ mat_tensor(alpha_A, lambda_l),
                     lambda_l @ mat_tensor(mu, alpha_M)),
        compare_maps("left_unit", lambda_l @ mat_tensor(eta, idM), alpha_M),
        compare_maps("left_alpha", alpha_M @ lambda_l, lambda_l @ mat_tensor(alpha_A, alpha_M)),
        compare_maps("right_action", lambda_r @ mat_tensor(lambda_r, alpha_A),
                     lambda_r @ mat_tensor(alpha_M, mu)),
        compare_maps("right_unit", lambda_r @ mat_tensor(idM, eta), alpha_M),
        compare_maps("right_alpha", alpha_M @ lambda_r, lambda_r @ mat_tensor(alpha_M, alpha_A)),
        compare_maps("bimodule_compatibility", lambda_r @ mat_tensor(lambda_l, alpha_A),
                     lambda_l @ mat_tensor(alpha_A, lambda_r)),
    )
    return AxiomReport(checks)


def validate_bicomodule(rho_l: Matrix, rho_r: Matrix, beta_C: Matrix, beta_M: Matrix,
                        delta: Matrix, eps: Matrix) -> AxiomReport:
    c, m = beta_C.shape[0], beta_M.shape[0]
    _need_shape("beta_C", beta_C, (c, c))
    _need_shape("beta_M", beta_M, (m, m))
    _need_shape("delta", delta, (c * c, c))
    _need_shape("eps", eps, (1, c))
    _need_shape("rho_l", rho_l, (c * m, m))
    _need_shape("rho_r", rho_r, (m * c, m))
    idM = Matrix.identity(m)
    checks = (
        compare_maps("left_coaction", mat_tensor(beta_C, rho_l) @ rho_l,
                     mat_tensor(delta, beta_M) @ rho_l),
        compare_maps("left_counit", mat_tensor(eps, idM) @ rho_l, beta_M),
        compare_maps("left_beta", rho_l @ beta_M, mat_tensor(beta_C, beta_M) @ rho_l),
        compare_maps("right_coaction", mat_tensor(rho_r, beta_C) @ rho_r,
                     mat_tensor(beta_M, delta) @ rho_r),
        compare_maps("right_counit", mat_tensor(idM, eps) @ rho_r, beta_M),
        compare_maps("right_beta", rho_r @ beta_M, mat_tensor(beta_M, beta_C) @ rho_r),
        compare_maps("bicomodule_compatibility", mat_tensor(beta_C, rho_r) @ rho_l,
                     mat_tensor(rho_l, beta_C) @ rho_r),
    )
    return AxiomReport(checks)


def power_bimodule_report(B: HomBialgebra, n: int, balanced=True) -> AxiomReport:
    return validate_bimodule(left_action_power(B, n, balanced).map,
                             right_action_power(B, n, balanced).map,
                             B.alpha, B.alpha_power(n), B.mu, B.eta)


def power_bicomodule_report(B: HomBialgebra, n: int, balanced=True) -> AxiomReport:
    return validate_bicomodule(left_coaction_power(B, n, balanced).map,
                               right_coaction_power(B, n, balanced).map,
                               B.alpha, B.alpha_power(n), B.delta, B.eps)
