"""The alpha-twisted Gerstenhaber-Schack bicomplex of a Hom-bialgebra.

A cochain in bidegree (p, q) is a map ``f : B^{(x)q} -> B^{(x)p}`` with
``f o alpha^{(x)q} = alpha^{(x)p} o f``.  The total complex in degree n is the
direct sum over ``p + q = n + 1`` ordered by increasing q, with differential
``delta_H + (-1)^q delta_C`` on the (p, q) summand.

Operators acting on cochains as vectors use the row-major vectorization of
``LinMap.vec``; total-complex vectors use coordinates in the kernel bases
returned by :func:`cochain_space_basis`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .actions import (_left_action, _left_coaction, _right_action, _right_coaction)
from .linalg import (ContainmentError, DimensionError, LinMap, Matrix, SubspaceBasis,
                     complete_basis, image_basis, kernel_basis, mat_tensor, quotient_dim,
                     solve_linear, span_basis, to_scalar)
from .structures import HomBialgebra


@dataclass(frozen=True)
class Cochain:
    p: int
    q: int
    map: LinMap

    def __post_init__(self):
        m = self.map
        if (m.cod_arity, m.dom_arity) != (self.p, self.q):
            raise DimensionError(f"map B^{m.dom_arity} -> B^{m.cod_arity} "
                                 f"given for bidegree ({self.p}, {self.q})")


@dataclass(frozen=True)
class CochainVector:
    n: int
    components: tuple[Cochain, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        want = bidegrees(self.n)
        got = [(c.p, c.q) for c in self.components]
        if got != want:
            raise DimensionError(f"degree {self.n} needs bidegrees {want}, got {got}")

    def component(self, p, q) -> LinMap:
        for c in self.components:
            if (c.p, c.q) == (p, q):
                return c.map
        raise KeyError((p, q))

    def is_zero(self) -> bool:
        return all(c.map.is_zero() for c in self.components)

    @classmethod
    def from_maps(cls, n: int, maps: Sequence[LinMap]) -> "CochainVector":
        return cls(n, tuple(Cochain(p, q, m) for (p, q), m in zip(bidegrees(n), maps)))

    @classmethod
    def zero(cls, B: HomBialgebra, n: int) -> "CochainVector":
        return cls.from_maps(n, [LinMap.zero_map(B.dim, p, q) for p, q in bidegrees(n)])


@dataclass(frozen=True)
class CohomologyReport:
    n: int
    dim_ambient: int
    dim_Z: int
    dim_B: int
    dim_H: int
    cocycle_basis: tuple[CochainVector, ...]
    coboundary_basis: tuple[CochainVector, ...]
    representatives: tuple[CochainVector, ...]


def bidegrees(n: int) -> list[tuple[int, int]]:
    if n < 1:
        raise ValueError(f"total degree must be >= 1, got {n}")
    return [(n + 1 - q, q) for q in range(1, n + 1)]


def _cached(B, key, build):
    if key not in B._cache:
        B._cache[key] = build()
    return B._cache[key]


def _check_pq(p, q):
    if p < 1 or q < 1:
        raise ValueError(f"bidegree must have p, q >= 1, got ({p}, {q})")


# ---------------------------------------------------------------------------
# cochain spaces

def commutation_operator(B: HomBialgebra, p: int, q: int) -> Matrix:
    """Matrix of ``vec F -> vec(F o alpha^q - alpha^p o F)``."""
    Aq, Ap = B.alpha_power(q), B.alpha_power(p)
    return (Matrix.identity(Ap.rows).kron(Aq.transpose())
            - Ap.kron(Matrix.identity(Aq.cols)))


def cochain_space_basis(B: HomBialgebra, p: int, q: int) -> SubspaceBasis:
    _check_pq(p, q)
    return _cached(B, ("cochains", p, q),
                   lambda: kernel_basis(commutation_operator(B, p, q)))


def is_alpha_commuting(B: HomBialgebra, f: Matrix, p: int, q: int) -> bool:
    return f @ B.alpha_power(q) == B.alpha_power(p) @ f


def cochain_maps(B: HomBialgebra, p: int, q: int) -> list[LinMap]:
    """The basis of C^{p,q} as maps."""
    return _cached(B, ("cochain_maps", p, q), lambda: [
        LinMap.from_vec(B.dim, p, q, v) for v in cochain_space_basis(B, p, q).vectors])


def cochain_dims(B: HomBialgebra, n: int) -> list[int]:
    return [cochain_space_basis(B, p, q).dim for p, q in bidegrees(n)]


# ---------------------------------------------------------------------------
# the two differentials, on single cochains

def _mu_slot(B, q, i):
    """``alpha^{(x)(i-1)} (x) mu (x) alpha^{(x)(q-i)} : B^{q+1} -> B^q``."""
    return _cached(B, ("mu_slot", q, i), lambda: mat_tensor(
        B.alpha_power(i - 1), B.mu, B.alpha_power(q - i)))


def _delta_slot(B, p, j):
    return _cached(B, ("delta_slot", p, j), lambda: mat_tensor(
        B.alpha_power(j - 1), B.delta, B.alpha_power(p - j)))


def apply_delta_h(B: HomBialgebra, f: LinMap, p: int, q: int) -> LinMap:
    """Hochschild-type coboundary ``C^{p,q} -> C^{p,q+1}``."""
    _check_pq(p, q)
    a = B.alpha_iterate(q - 1)
    out = _left_action(B, p) @ mat_tensor(a, f)
    for i in range(1, q + 1):
        term = f @ _mu_slot(B, q, i)
        out = out - term if i % 2 else out + term
    tail = _right_action(B, p) @ mat_tensor(f, a)
    return out + tail if q % 2 else out - tail


def apply_delta_c(B: HomBialgebra, f: LinMap, p: int, q: int) -> LinMap:
    """Cartier-type coboundary ``C^{p,q} -> C^{p+1,q}``."""
    _check_pq(p, q)
    a = B.alpha_iterate(p - 1)
    out = mat_tensor(a, f) @ _left_coaction(B, q)
    for j in range(1, p + 1):
        term = _delta_slot(B, p, j) @ f
        out = out - term if j % 2 else out + term
    tail = mat_tensor(f, a) @ _right_coaction(B, q)
    return out + tail if p % 2 else out - tail


def _operator_matrix(B, p, q, p2, q2, fn) -> LinMap:
    """Matrix of a linear operator on cochains, built column by column."""
    d = B.dim
    n_in = d ** (p + q)
    cols = []
    for k in range(n_in):
        f = LinMap.from_vec(d, p, q, {k: 1})
        cols.append(fn(f).vec_sparse())
    return LinMap.from_matrix(Matrix.from_columns(d ** (p2 + q2), cols),
                              d, p2 + q2, p + q)


def delta_h(B: HomBialgebra, p: int, q: int) -> LinMap:
    """``delta_H^{p,q}`` as a ``d^{p+q+1} x d^{p+q}`` matrix on vectorized maps."""
    _check_pq(p, q)
    return _cached(B, ("delta_h", p, q), lambda: _operator_matrix(
        B, p, q, p, q + 1, lambda f: apply_delta_h(B, f, p, q)))


def delta_c(B: HomBialgebra, p: int, q: int) -> LinMap:
    _check_pq(p, q)
    return _cached(B, ("delta_c", p, q), lambda: _operator_matrix(
        B, p, q, p + 1, q, lambda f: apply_delta_c(B, f, p, q)))


def vec_transpose(rows: int, cols: int) -> Matrix:
    """Permutation taking ``vec F`` to ``vec F^T`` for an ``rows x cols`` matrix F."""
    return Matrix(rows * cols, rows * cols,
                  [((c * rows + r, r * cols + c), 1) for r in range(rows) for c in range(cols)])


# ---------------------------------------------------------------------------
# face operators

def _check_face(i, k):
    if not 0 <= i <= k - 1:
        raise IndexError(f"face index {i} outside 0..{k - 1}")


def apply_face_d(B: HomBialgebra, i: int, f: LinMap, p: int, q: int) -> LinMap:
    _check_pq(p, q)
    _check_face(i, q)
    a = B.alpha_iterate(q - 1)
    out = f @ _mu_slot(B, q, i + 1)
    if i == 0:
        out = out - _left_action(B, p) @ mat_tensor(a, f)
    if i == q - 1:
        out = out - _right_action(B, p) @ mat_tensor(f, a)
    return out


def apply_face_s(B: HomBialgebra, i: int, g: LinMap, p: int, q: int) -> LinMap:
    _check_pq(p, q)
    _check_face(i, p)
    a = B.alpha_iterate(p - 1)
    out = _delta_slot(B, p, i + 1) @ g
    if i == 0:
        out = out - mat_tensor(a, g) @ _left_coaction(B, q)
    if i == p - 1:
        out = out - mat_tensor(g, a) @ _right_coaction(B, q)
    return out


def face_d(B: HomBialgebra, i: int, p: int, q: int) -> LinMap:
    """Face operator ``D_i^{p,q}`` as a matrix; for q = 1 both end corrections apply."""
    _check_pq(p, q)
    _check_face(i, q)
    return _operator_matrix(B, p, q, p, q + 1, lambda f: apply_face_d(B, i, f, p, q))


def face_s(B: HomBialgebra, i: int, p: int, q: int) -> LinMap:
    _check_pq(p, q)
    _check_face(i, p)
    return _operator_matrix(B, p, q, p + 1, q, lambda g: apply_face_s(B, i, g, p, q))


# ---------------------------------------------------------------------------
# total complex

def to_coordinates(B: HomBialgebra, v: CochainVector, check=True) -> tuple[Fraction, ...]:
    out = []
    for c in v.components:
        if check and not is_alpha_commuting(B, c.map, c.p, c.q):
            raise ValueError(f"component in bidegree ({c.p}, {c.q}) does not commute with alpha")
        out.extend(cochain_space_basis(B, c.p, c.q).coordinates(c.map.vec()))
    return tuple(out)


def from_coordinates(B: HomBialgebra, n: int, coords: Sequence) -> CochainVector:
    dims = cochain_dims(B, n)
    if len(coords) != sum(dims):
        raise DimensionError(f"{len(coords)} coordinates for total degree {n} of dim {sum(dims)}")
    maps, k = [], 0
    for (p, q), m in zip(bidegrees(n), dims):
        basis = cochain_maps(B, p, q)
        f = LinMap.zero_map(B.dim, p, q)
        for a, e in zip(coords[k:k + m], basis):
            if a:
                f = f + e.scale(a)
        maps.append(f)
        k += m
    return CochainVector.from_maps(n, maps)


def _total_delta_images(B, n):
    """For every basis cochain of each summand of degree n: its total image."""
    out = []
    for p, q in bidegrees(n):
        for f in cochain_maps(B, p, q):
            h = apply_delta_h(B, f, p, q)
            c = apply_delta_c(B, f, p, q)
            if q % 2:
                c = -c
            out.append({(p, q + 1): h, (p + 1, q): c})
    return out


def total_delta(B: HomBialgebra, n: int) -> Matrix:
    """Matrix of the total differential in alpha-commuting coordinates."""
    def build():
        targets = bidegrees(n + 1)
        offsets, k = {}, 0
        for (p, q), m in zip(targets, cochain_dims(B, n + 1)):
            offsets[(p, q)] = k
            k += m
        cols = []
        for images in _total_delta_images(B, n):
            col = {}
            for pq, g in images.items():
                basis = cochain_space_basis(B, *pq)
                off = offsets[pq]
                vs = g.vec_sparse()
                for j, c in enumerate(basis.coordinate_columns):
                    x = vs.get(c)
                    if x:
                        col[off + j] = x
            cols.append(col)
        return Matrix.from_columns(k, cols)
    return _cached(B, ("total_delta", n), build)


def apply_total_delta(B: HomBialgebra, v: CochainVector) -> CochainVector:
    n = v.n
    maps = {pq: LinMap.zero_map(B.dim, *pq) for pq in bidegrees(n + 1)}
    for c in v.components:
        maps[(c.p, c.q + 1)] = maps[(c.p, c.q + 1)] + apply_delta_h(B, c.map, c.p, c.q)
        dc = apply_delta_c(B, c.map, c.p, c.q)
        maps[(c.p + 1, c.q)] = maps[(c.p + 1, c.q)] + (-dc if c.q % 2 else dc)
    return CochainVector.from_maps(n + 1, [maps[pq] for pq in bidegrees(n + 1)])


def is_cocycle(B: HomBialgebra, v: CochainVector) -> bool:
    for c in v.components:
        if not is_alpha_commuting(B, c.map, c.p, c.q):
            raise ValueError(f"component in bidegree ({c.p}, {c.q}) does not commute with alpha")
    return apply_total_delta(B, v).is_zero()


def coboundary_witness(B: HomBialgebra, v: CochainVector) -> CochainVector | None:
    """Some h with ``total_delta(h) = v``, or None when v is not a coboundary."""
    coords = to_coordinates(B, v)
    if v.n == 1:
        return None if any(coords) else CochainVector.zero(B, 1)
    x = solve_linear(total_delta(B, v.n - 1), coords)
    return None if x is None else from_coordinates(B, v.n - 1, x)


def cohomology(B: HomBialgebra, n: int) -> CohomologyReport:
    D = total_delta(B, n)
    Z = kernel_basis(D)
    if n >= 2:
        Bn = image_basis(total_delta(B, n - 1))
    else:
        Bn = SubspaceBasis(D.cols, ())
    try:
        dim_H = quotient_dim(Z, Bn)
    except ContainmentError as e:
        raise ContainmentError(f"degree {n}: a coboundary is not a cocycle "
                               "(sign or twist inconsistency)", vector=e.vector) from None
    reps = complete_basis(Bn, Z)
    to_vec = lambda u: from_coordinates(B, n, u)
    return CohomologyReport(n, D.cols, Z.dim, Bn.dim, dim_H,
                            tuple(map(to_vec, Z.vectors)), tuple(map(to_vec, Bn.vectors)),
                            tuple(map(to_vec, reps)))


def cohomology_dims(B: HomBialgebra, n: int) -> dict:
    """Dimensions only (no representative bookkeeping)."""
    from .linalg import rank
    D = total_delta(B, n)
    z = D.cols - rank(D)
    b = rank(total_delta(B, n - 1)) if n >= 2 else 0
    return {"n": n, "dim_C": D.cols, "dim_Z": z, "dim_B": b, "dim_H": z - b}


def in_span(B: HomBialgebra, v: CochainVector, vectors: Sequence[CochainVector]) -> bool:
    from .linalg import subspace_membership
    amb = sum(cochain_dims(B, v.n))
    S = span_basis(amb, [to_coordinates(B, u) for u in vectors])
    return subspace_membership(S, to_coordinates(B, v))
