"""Truncated formal deformations ``mu_t = sum mu_i t^i``, ``Delta_t = sum Delta_i t^i``.

The twist map, unit and counit are not deformed.  Everything is computed
modulo ``t^{N+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cohomology import (CochainVector, apply_delta_c, apply_delta_h, coboundary_witness,
                         cochain_maps, cochain_space_basis, is_alpha_commuting)
from .linalg import DimensionError, LinMap, Matrix, flip_operator, mat_tensor, rank, solve_linear
from .structures import HomBialgebra, MorphismError, morphism_failures, validate, yau_twist


class DeformationError(ValueError):
    pass


@dataclass(frozen=True)
class TruncatedDeformation:
    base: HomBialgebra
    mu_terms: tuple[LinMap, ...]
    delta_terms: tuple[LinMap, ...]

    def __post_init__(self):
        mus, des = tuple(self.mu_terms), tuple(self.delta_terms)
        object.__setattr__(self, "mu_terms", mus)
        object.__setattr__(self, "delta_terms", des)
        B = self.base
        if len(mus) != len(des) or not mus:
            raise DimensionError("need the same positive number of mu and Delta terms")
        if mus[0] != B.mu or des[0] != B.delta:
            raise DeformationError("order-0 terms must be the base structure")
        for s, (m, dl) in enumerate(zip(mus, des)):
            if m.shape != B.mu.shape or dl.shape != B.delta.shape:
                raise DimensionError(f"order {s}: wrong shapes {m.shape}, {dl.shape}")
            if not is_alpha_commuting(B, m, 1, 2):
                raise DeformationError(f"mu_{s} does not commute with alpha")
            if not is_alpha_commuting(B, dl, 2, 1):
                raise DeformationError(f"Delta_{s} does not commute with alpha")

    @property
    def order(self) -> int:
        return len(self.mu_terms) - 1

    @classmethod
    def from_terms(cls, base: HomBialgebra, mus: Sequence[Matrix], deltas: Sequence[Matrix]):
        """Build from the terms of order 1..N (order 0 is the base)."""
        d = base.dim
        mus = [LinMap.from_matrix(m, d, 1, 2) for m in mus]
        deltas = [LinMap.from_matrix(m, d, 2, 1) for m in deltas]
        return cls(base, (base.mu, *mus), (base.delta, *deltas))

    @classmethod
    def trivial(cls, base: HomBialgebra, order: int):
        d = base.dim
        return cls.from_terms(base, [LinMap.zero_map(d, 1, 2)] * order,
                              [LinMap.zero_map(d, 2, 1)] * order)

    def truncate(self, order: int) -> "TruncatedDeformation":
        if order > self.order:
            raise ValueError(f"cannot truncate order {self.order} to {order}")
        return TruncatedDeformation(self.base, self.mu_terms[:order + 1],
                                    self.delta_terms[:order + 1])

    def extend(self, mu: Matrix, delta: Matrix) -> "TruncatedDeformation":
        d = self.base.dim
        return TruncatedDeformation(self.base, self.mu_terms + (LinMap.from_matrix(mu, d, 1, 2),),
                                    self.delta_terms + (LinMap.from_matrix(delta, d, 2, 1),))

    def infinitesimal(self) -> CochainVector:
        """``(Delta_1, mu_1)`` as an element of the degree-2 total complex."""
        if self.order < 1:
            raise ValueError("order-0 deformation has no infinitesimal")
        return CochainVector.from_maps(2, [self.delta_terms[1], self.mu_terms[1]])

    def same_terms(self, other: "TruncatedDeformation") -> bool:
        return (self.base.same_structure(other.base) and self.mu_terms == other.mu_terms
                and self.delta_terms == other.delta_terms)


@dataclass(frozen=True)
class GaugeTransform:
    """``Phi_t = id + Phi_1 t + ... + Phi_N t^N``."""
    terms: tuple[LinMap, ...]

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise ValueError("empty gauge")
        d = terms[0].rows
        if terms[0] != Matrix.identity(d):
            raise ValueError("Phi_0 must be the identity")
        for i, t in enumerate(terms):
            if t.shape != (d, d):
                raise DimensionError(f"Phi_{i} has shape {t.shape}")

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    @property
    def dim(self) -> int:
        return self.terms[0].rows

    @classmethod
    def from_terms(cls, d: int, phis: Sequence[Matrix]) -> "GaugeTransform":
        return cls((LinMap.identity_map(d),) + tuple(LinMap.from_matrix(p, d, 1, 1) for p in phis))

    @classmethod
    def identity(cls, d: int, order: int) -> "GaugeTransform":
        return cls.from_terms(d, [LinMap.zero_map(d, 1, 1)] * order)

    def term(self, i) -> LinMap:
        return self.terms[i] if i <= self.order else LinMap.zero_map(self.dim, 1, 1)

    def truncate(self, order) -> "GaugeTransform":
        return GaugeTransform(tuple(self.term(i) for i in range(order + 1)))

    def inverse(self) -> "GaugeTransform":
        """Formal inverse: ``Psi_s = - sum_{i>=1} Phi_i Psi_{s-i}``."""
        psi = [self.terms[0]]
        for s in range(1, self.order + 1):
            acc = LinMap.zero_map(self.dim, 1, 1)
            for i in range(1, s + 1):
                acc = acc - self.terms[i] @ psi[s - i]
            psi.append(acc)
        return GaugeTransform(tuple(psi))

    def __mul__(self, other: "GaugeTransform") -> "GaugeTransform":
        """Series product ``self o other`` (apply ``other`` first)."""
        n = max(self.order, other.order)
        out = []
        for s in range(n + 1):
            acc = LinMap.zero_map(self.dim, 1, 1)
            for i in range(s + 1):
                acc = acc + self.term(i) @ other.term(s - i)
            out.append(acc)
        return GaugeTransform(tuple(out))

    def is_identity(self) -> bool:
        return all(t.is_zero() for t in self.terms[1:])


@dataclass(frozen=True)
class OrderResidual:
    order: int
    assoc: Matrix
    coassoc: Matrix
    compat: Matrix

    @property
    def assoc_ok(self):
        return self.assoc.is_zero()

    @property
    def coassoc_ok(self):
        return self.coassoc.is_zero()

    @property
    def compat_ok(self):
        return self.compat.is_zero()

    @property
    def ok(self):
        return self.assoc_ok and self.coassoc_ok and self.compat_ok


@dataclass(frozen=True)
class ResidualReport:
    orders: tuple[OrderResidual, ...]

    def __getitem__(self, s) -> OrderResidual:
        return self.orders[s]

    @property
    def all_ok(self) -> bool:
        return all(o.ok for o in self.orders)

    @property
    def valid_to(self) -> int:
        """Largest s such that every order up to s vanishes (-1 if order 0 fails)."""
        s = -1
        for o in self.orders:
            if not o.ok:
                break
            s = o.order
        return s


# ---------------------------------------------------------------------------
# residuals

def alpha_associator(mu_i: Matrix, mu_j: Matrix, alpha: Matrix) -> Matrix:
    """``mu_i o (alpha (x) mu_j) - mu_i o (mu_j (x) alpha)``."""
    d = alpha.rows
    if mu_i.shape != (d, d * d) or mu_j.shape != (d, d * d):
        raise DimensionError(f"associator of {mu_i.shape} and {mu_j.shape} with d={d}")
    return mu_i @ mat_tensor(alpha, mu_j) - mu_i @ mat_tensor(mu_j, alpha)


def alpha_coassociator(delta_i: Matrix, delta_j: Matrix, alpha: Matrix) -> Matrix:
    """``(Delta_j (x) alpha) o Delta_i - (alpha (x) Delta_j) o Delta_i``."""
    d = alpha.rows
    if delta_i.shape != (d * d, d) or delta_j.shape != (d * d, d):
        raise DimensionError(f"coassociator of {delta_i.shape} and {delta_j.shape} with d={d}")
    return mat_tensor(delta_j, alpha) @ delta_i - mat_tensor(alpha, delta_j) @ delta_i


def _order_residual(B, mus, des, s, skip_top=False):
    """Coefficient of t^s in the three deformation equations.

    With ``skip_top`` the terms of order s itself are treated as zero (this is
    the part that is quadratic in lower-order data).
    """
    d = B.dim
    lo = 1 if skip_top else 0
    hi = s - lo
    get_mu = lambda i: mus[i] if i < len(mus) else LinMap.zero_map(d, 1, 2)
    get_de = lambda i: des[i] if i < len(des) else LinMap.zero_map(d, 2, 1)
    A = Matrix.zeros(d, d ** 3)
    C = Matrix.zeros(d ** 3, d)
    P = Matrix.zeros(d ** 2, d ** 2)
    for i in range(lo, hi + 1):
        j = s - i
        A = A + alpha_associator(get_mu(i), get_mu(j), B.alpha)
        C = C + alpha_coassociator(get_de(i), get_de(j), B.alpha)
        P = P + get_de(i) @ get_mu(j)
    t23 = flip_operator(d, 4, 2, 3)
    # sum over i + j + k + r = s of (mu_i (x) mu_j) tau23 (Delta_k (x) Delta_r)
    mm = {}
    dd = {}
    for a in range(s + 1):
        for b in range(s + 1 - a):
            if skip_top and s in (a, b) and a + b == s:
                continue
            mm[a + b] = mm.get(a + b, Matrix.zeros(d ** 2, d ** 4)) + mat_tensor(get_mu(a), get_mu(b))
            dd[a + b] = dd.get(a + b, Matrix.zeros(d ** 4, d ** 2)) + mat_tensor(get_de(a), get_de(b))
    for u in range(s + 1):
        if u in mm and (s - u) in dd:
            P = P - mm[u] @ t23 @ dd[s - u]
    return A, C, P


def residuals(deform: TruncatedDeformation) -> ResidualReport:
    B = deform.base
    out = []
    for s in range(deform.order + 1):
        A, C, P = _order_residual(B, deform.mu_terms, deform.delta_terms, s)
        out.append(OrderResidual(s, A, C, P))
    return ResidualReport(tuple(out))


def is_valid(deform: TruncatedDeformation, order: int | None = None) -> bool:
    order = deform.order if order is None else order
    return residuals(deform.truncate(order)).all_ok


# ---------------------------------------------------------------------------
# obstructions

@dataclass(frozen=True)
class Obstruction:
    order: int
    cochain: CochainVector           # element of the degree-3 total complex
    witness: CochainVector | None    # (Delta_s, mu_s) in degree 2, if one exists

    @property
    def extendable(self) -> bool:
        return self.witness is not None


def obstruction(deform: TruncatedDeformation, s: int) -> Obstruction:
    """Obstruction to choosing the order-s terms on top of orders ``< s``.

    The order-s residual is ``L(mu_s, Delta_s) + Q`` with Q built from lower
    terms and ``L(mu, Delta) = (dH mu, -dC Delta, -(dC mu + dH Delta))``
    in (assoc, coassoc, compat).  So the residual vanishes exactly when
    ``total_delta(Delta_s, mu_s) = (-Q_coassoc, Q_compat, -Q_assoc)``.
    """
    if s < 1:
        raise ValueError("obstruction order must be >= 1")
    if deform.order < s - 1:
        raise DeformationError(f"need terms up to order {s - 1}, have {deform.order}")
    low = deform.truncate(s - 1)
    rep = residuals(low)
    if not rep.all_ok:
        raise DeformationError(f"deformation is not valid to order {s - 1} "
                               f"(fails at order {rep.valid_to + 1})")
    B = deform.base
    d = B.dim
    Qa, Qc, Qp = _order_residual(B, low.mu_terms, low.delta_terms, s, skip_top=True)
    omega = CochainVector.from_maps(3, [LinMap.from_matrix(-Qc, d, 3, 1),
                                        LinMap.from_matrix(Qp, d, 2, 2),
                                        LinMap.from_matrix(-Qa, d, 1, 3)])
    return Obstruction(s, omega, coboundary_witness(B, omega))


def extend_by_witness(deform: TruncatedDeformation, obs: Obstruction) -> TruncatedDeformation:
    if obs.witness is None:
        raise DeformationError(f"order-{obs.order} obstruction is not a coboundary")
    if deform.order != obs.order - 1:
        deform = deform.truncate(obs.order - 1)
    return deform.extend(obs.witness.component(1, 2), obs.witness.component(2, 1))


def integrate(deform: TruncatedDeformation, order: int) -> TruncatedDeformation:
    """Extend a valid deformation order by order using obstruction witnesses."""
    while deform.order < order:
        obs = obstruction(deform, deform.order + 1)
        deform = extend_by_witness(deform, obs)
    return deform


# ---------------------------------------------------------------------------
# gauge transformations

def _check_gauge(deform, phi):
    if phi.dim != deform.base.dim:
        raise DimensionError(f"gauge on dimension {phi.dim} for base of dimension {deform.base.dim}")
    if phi.order < deform.order:
        raise ValueError(f"gauge of order {phi.order} for deformation of order {deform.order}")
    a = deform.base.alpha
    for i, t in enumerate(phi.terms):
        if t @ a != a @ t:
            raise DeformationError(f"Phi_{i} does not commute with alpha")


def apply_gauge(deform: TruncatedDeformation, phi: GaugeTransform) -> TruncatedDeformation:
    """``mu' = Phi mu (Phi^-1 (x) Phi^-1)``, ``Delta' = (Phi (x) Phi) Delta Phi^-1``."""
    _check_gauge(deform, phi)
    N = deform.order
    B = deform.base
    d = B.dim
    phi = phi.truncate(N)
    psi = phi.inverse()
    # coefficients of Psi (x) Psi and Phi (x) Phi
    pp = [sum((mat_tensor(psi.term(a), psi.term(u - a)) for a in range(u + 1)),
              Matrix.zeros(d * d, d * d)) for u in range(N + 1)]
    ff = [sum((mat_tensor(phi.term(a), phi.term(u - a)) for a in range(u + 1)),
              Matrix.zeros(d * d, d * d)) for u in range(N + 1)]
    mus, des = [], []
    for s in range(N + 1):
        m = Matrix.zeros(d, d * d)
        dl = Matrix.zeros(d * d, d)
        for a in range(s + 1):
            for b in range(s + 1 - a):
                c = s - a - b
                m = m + phi.term(a) @ deform.mu_terms[b] @ pp[c]
                dl = dl + ff[a] @ deform.delta_terms[b] @ psi.term(c)
        mus.append(LinMap.from_matrix(m, d, 1, 2))
        des.append(LinMap.from_matrix(dl, d, 2, 1))
    return TruncatedDeformation(B, tuple(mus), tuple(des))


def are_equivalent_via(d1: TruncatedDeformation, d2: TruncatedDeformation,
                       phi: GaugeTransform) -> bool:
    """Check ``Phi_t mu_t = mu'_t (Phi_t (x) Phi_t)`` and the comultiplicative analogue."""
    return apply_gauge(d1, phi).same_terms(d2)


# ---------------------------------------------------------------------------
# unit and counit

def _unit_counit_conditions(B, mu, delta):
    """The four maps that must vanish: mu(x (x) 1), mu(1 (x) x), (eps (x) id)Delta, (id (x) eps)Delta."""
    I = B.id()
    return (mu @ mat_tensor(I, B.eta), mu @ mat_tensor(B.eta, I),
            mat_tensor(B.eps, I) @ delta, mat_tensor(I, B.eps) @ delta)


def check_unit_counit(deform: TruncatedDeformation) -> tuple[bool, ...]:
    """Entry s-1 tells whether order s preserves the unit and the counit."""
    B = deform.base
    return tuple(all(m.is_zero() for m in _unit_counit_conditions(B, mu, de))
                 for mu, de in zip(deform.mu_terms[1:], deform.delta_terms[1:]))


def _normalizing_stage(B, mu_s, delta_s):
    """alpha-commuting Phi with ``mu_s - dH Phi`` and ``Delta_s + dC Phi`` unit/counit preserving.

    Linear in Phi; solved in the basis of C^{1,1} with free variables set to 0.
    """
    basis = cochain_maps(B, 1, 1)
    rhs = []
    for m in _unit_counit_conditions(B, mu_s, delta_s):
        rhs.extend(m.vec())
    cols = []
    for e in basis:
        dh = apply_delta_h(B, e, 1, 1)
        dc = apply_delta_c(B, e, 1, 1)
        # conditions on (-dH e, +dC e)
        col = []
        for m in _unit_counit_conditions(B, -dh, dc):
            col.extend(m.vec())
        cols.append({i: x for i, x in enumerate(col) if x})
    M = Matrix.from_columns(len(rhs), cols)
    x = solve_linear(M, [-v for v in rhs])
    if x is None:
        return None
    phi = LinMap.zero_map(B.dim, 1, 1)
    for a, e in zip(x, basis):
        if a:
            phi = phi + e.scale(a)
    return phi


def normalize_unit(deform: TruncatedDeformation) -> tuple[TruncatedDeformation, GaugeTransform]:
    """Gauge a deformation into one whose terms kill the unit and the counit.

    Order by order, a stage gauge ``id + Phi_s t^s`` corrects the order-s terms
    (lower orders are untouched).  The returned gauge is the product of the
    stages, so ``apply_gauge(deform, gauge)`` reproduces the output.
    """
    B = deform.base
    if rank(B.alpha) != B.dim:
        raise DeformationError("normalization needs a surjective twisting map")
    N = deform.order
    d = B.dim
    total = GaugeTransform.identity(d, N)
    cur = deform
    for s in range(1, N + 1):
        phi = _normalizing_stage(B, cur.mu_terms[s], cur.delta_terms[s])
        if phi is None:
            raise DeformationError(f"no unit/counit normalizing gauge at order {s}")
        if phi.is_zero():
            continue
        stage = GaugeTransform.from_terms(
            d, [phi if i == s else LinMap.zero_map(d, 1, 1) for i in range(1, N + 1)])
        cur = apply_gauge(cur, stage)
        total = (stage * total).truncate(N)
    return cur, total


# ---------------------------------------------------------------------------
# twisting

def twist_deformation(deform: TruncatedDeformation, beta: Matrix) -> TruncatedDeformation:
    """Term-wise twist ``(beta o mu_t, Delta_t o beta)`` over ``yau_twist(base, beta)``."""
    B = deform.base
    d = B.dim
    bad = morphism_failures(beta, B, B)
    if bad:
        raise MorphismError("order 0: " + "; ".join(bad))
    bb = mat_tensor(beta, beta)
    for s in range(1, deform.order + 1):
        mu, de = deform.mu_terms[s], deform.delta_terms[s]
        if beta @ mu != mu @ bb:
            raise MorphismError(f"order {s}: beta o mu_{s} != mu_{s} o (beta (x) beta)")
        if de @ beta != bb @ de:
            raise MorphismError(f"order {s}: Delta_{s} o beta != (beta (x) beta) o Delta_{s}")
    Bb = yau_twist(B, beta)
    beta = LinMap.from_matrix(beta, d, 1, 1)
    return TruncatedDeformation(Bb, tuple(beta @ m for m in deform.mu_terms),
                                tuple(dl @ beta for dl in deform.delta_terms))
