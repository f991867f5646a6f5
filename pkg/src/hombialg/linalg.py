"""Exact rational linear algebra on tensor powers of a finite-dimensional space.

Matrices are stored sparsely (row -> {col: Fraction}) but behave as dense
rational matrices: every entry is an exact ``Fraction`` and absent entries are
zero.  A :class:`LinMap` is a matrix that additionally remembers it represents
a map ``B^{(x)q} -> B^{(x)p}`` on a ``d``-dimensional space ``B``.

Tensor powers use lexicographic basis ordering with the leftmost slot most
significant, so ``e_i (x) e_j`` sits at index ``i*d + j`` (0-based).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod
from typing import Callable, Iterable, Iterator, Mapping, Sequence


class DimensionError(ValueError):
    """Raised when shapes of matrices or vectors do not fit together."""


class ContainmentError(ArithmeticError):
    """Raised when a subspace expected to contain another one does not."""

    def __init__(self, message, vector=None):
        super().__init__(message)
        self.vector = vector


# ---------------------------------------------------------------------------
# scalars

def to_scalar(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact Fraction.

    Floats are refused: nothing in this package is allowed to round.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or any(ch in s for ch in ".eE"):
            raise ValueError(f"not a rational literal: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def scalar_str(x: Fraction) -> str:
    """Serialize as ``"p"`` or ``"p/q"`` (lowest terms, positive denominator)."""
    x = to_scalar(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# index helpers

def multi_index(index: int, d: int, n: int) -> tuple[int, ...]:
    """Decode a flat index of ``B^{(x)n}`` into its slot indices."""
    out = []
    for _ in range(n):
        index, r = divmod(index, d)
        out.append(r)
    return tuple(reversed(out))


def flat_index(idx: Sequence[int], d: int) -> int:
    out = 0
    for i in idx:
        out = out * d + i
    return out


# ---------------------------------------------------------------------------
# matrices

class Matrix:
    """Exact rational matrix with sparse storage.

    Instances are treated as immutable; all operations return new objects.
    """

    __slots__ = ("rows", "cols", "_data", "_coldata", "_hash")

    def __init__(self, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise DimensionError(f"negative shape {rows}x{cols}")
        data: dict[int, dict[int, Fraction]] = {}
        if entries:
            items = entries.items() if isinstance(entries, Mapping) else entries
            for (r, c), v in items:
                v = to_scalar(v)
                if not (0 <= r < rows and 0 <= c < cols):
                    raise DimensionError(f"entry ({r}, {c}) outside {rows}x{cols}")
                if v:
                    row = data.setdefault(r, {})
                    v = row.get(c, 0) + v
                    if v:
                        row[c] = v
                    else:
                        del row[c]
                        if not row:
                            del data[r]
        self.rows = rows
        self.cols = cols
        self._data = data
        self._coldata = None
        self._hash = None

    @classmethod
    def _raw(cls, rows, cols, data):
        # trusted constructor: data already free of zeros and owned by us
        m = cls.__new__(cls)
        m.rows, m.cols, m._data = rows, cols, data
        m._coldata = None
        m._hash = None
        return m

    def _like(self, rows, cols, data):
        # subclasses override to keep extra shape information
        return Matrix._raw(rows, cols, data)

    # -- construction -----------------------------------------------------
    @classmethod
    def zeros(cls, rows, cols):
        return Matrix._raw(rows, cols, {})

    @classmethod
    def identity(cls, n):
        return Matrix._raw(n, n, {i: {i: Fraction(1)} for i in range(n)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        if any(len(r) != nc for r in rows):
            raise DimensionError("ragged dense matrix")
        return Matrix(nr, nc, (((i, j), v) for i, r in enumerate(rows)
                               for j, v in enumerate(r) if v))

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping[int, Fraction]]):
        data: dict[int, dict[int, Fraction]] = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v:
                    data.setdefault(r, {})[c] = v
        return Matrix._raw(nrows, len(columns), data)

    @classmethod
    def from_rows(cls, ncols: int, rows: Sequence[Mapping[int, Fraction]]):
        data = {r: {c: v for c, v in row.items() if v} for r, row in enumerate(rows)}
        return Matrix._raw(len(rows), ncols, {r: row for r, row in data.items() if row})

    # -- access -----------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, rc):
        r, c = rc
        return self._data.get(r, {}).get(c, Fraction(0))

    def items(self) -> Iterator[tuple[tuple[int, int], Fraction]]:
        for r, row in self._data.items():
            for c, v in row.items():
                yield (r, c), v

    def row(self, r) -> dict[int, Fraction]:
        return dict(self._data.get(r, {}))

    def column(self, c) -> dict[int, Fraction]:
        return dict(self._columns().get(c, {}))

    def _columns(self):
        if self._coldata is None:
            cols: dict[int, dict[int, Fraction]] = {}
            for r, row in self._data.items():
                for c, v in row.items():
                    cols.setdefault(c, {})[r] = v
            self._coldata = cols
        return self._coldata

    @property
    def nnz(self):
        return sum(len(r) for r in self._data.values())

    def is_zero(self):
        return not self._data

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.items():
            out[r][c] = v
        return out

    def vec(self) -> tuple[Fraction, ...]:
        """Row-major vectorization."""
        out = [Fraction(0)] * (self.rows * self.cols)
        for (r, c), v in self.items():
            out[r * self.cols + c] = v
        return tuple(out)

    def vec_sparse(self) -> dict[int, Fraction]:
        return {r * self.cols + c: v for (r, c), v in self.items()}

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols,
                               frozenset((rc, v) for rc, v in self.items())))
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({self.rows}x{self.cols}, nnz={self.nnz})"

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        data = {r: dict(row) for r, row in self._data.items()}
        for r, orow in other._data.items():
            row = data.setdefault(r, {})
            for c, v in orow.items():
                s = row.get(c, 0) + v
                if s:
                    row[c] = s
                else:
                    row.pop(c, None)
            if not row:
                del data[r]
        return self._like(self.rows, self.cols, data)

    def __neg__(self):
        return self._like(self.rows, self.cols,
                          {r: {c: -v for c, v in row.items()} for r, row in self._data.items()})

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self + (-other)

    def scale(self, s) -> "Matrix":
        s = to_scalar(s)
        if not s:
            return self._like(self.rows, self.cols, {})
        return self._like(self.rows, self.cols,
                          {r: {c: s * v for c, v in row.items()} for r, row in self._data.items()})

    def __mul__(self, s):
        if isinstance(s, Matrix):
            return NotImplemented
        return self.scale(s)

    __rmul__ = __mul__

    def __matmul__(self, other):
        return self.compose(other)

    def compose(self, f: "Matrix") -> "Matrix":
        """``self o f`` (apply ``f`` first)."""
        g = self
        if g.cols != f.rows:
            raise DimensionError(f"cannot compose {g.rows}x{g.cols} after {f.rows}x{f.cols}")
        gcols = g._columns()
        acc: dict[int, dict[int, Fraction]] = {}
        for k, frow in f._data.items():
            gcol = gcols.get(k)
            if not gcol:
                continue
            for c, fv in frow.items():
                for r, gv in gcol.items():
                    row = acc.get(r)
                    if row is None:
                        acc[r] = {c: gv * fv}
                    else:
                        row[c] = row.get(c, 0) + gv * fv
        data = {}
        for r, row in acc.items():
            row = {c: v for c, v in row.items() if v}
            if row:
                data[r] = row
        return _compose_like(g, f, data)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; ``(f (x) g)(x (x) y) = f(x) (x) g(y)``."""
        R2, C2 = other.rows, other.cols
        data: dict[int, dict[int, Fraction]] = {}
        for r1, row1 in self._data.items():
            for r2, row2 in other._data.items():
                row = {}
                for c1, v1 in row1.items():
                    base = c1 * C2
                    for c2, v2 in row2.items():
                        row[base + c2] = v1 * v2
                data[r1 * R2 + r2] = row
        return Matrix._raw(self.rows * R2, self.cols * C2, data)

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.cols, self.rows,
                           {c: dict(col) for c, col in self._columns().items()})

    @property
    def T(self):
        return self.transpose()

    def power(self, k: int) -> "Matrix":
        """Composition power; ``power(0)`` is the identity."""
        if self.rows != self.cols:
            raise DimensionError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative power")
        out = self._like(self.rows, self.cols, {i: {i: Fraction(1)} for i in range(self.rows)})
        base = self
        while k:
            if k & 1:
                out = out @ base
            k >>= 1
            if k:
                base = base @ base
        return out

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for {self.cols} columns")
        out = []
        for r in range(self.rows):
            row = self._data.get(r)
            out.append(sum((x * v[c] for c, x in row.items()), Fraction(0)) if row else Fraction(0))
        return tuple(out)


def _compose_like(g, f, data):
    if isinstance(g, LinMap) and isinstance(f, LinMap) and g.base_dim == f.base_dim:
        return LinMap._raw_map(g.base_dim, g.cod_arity, f.dom_arity, data)
    return Matrix._raw(g.rows, f.cols, data)


class LinMap(Matrix):
    """A linear map ``B^{(x)q} -> B^{(x)p}`` with ``dim B = d``.

    Shape is ``d**p x d**q``.  Arity 0 stands for the ground field, so a unit
    ``k -> B`` is a ``d x 1`` LinMap with ``dom_arity = 0``.
    """

    __slots__ = ("base_dim", "cod_arity", "dom_arity")

    def __init__(self, d: int, p: int, q: int, entries=None):
        if d < 1 or p < 0 or q < 0:
            raise DimensionError(f"bad arity data d={d}, p={p}, q={q}")
        super().__init__(d ** p, d ** q, entries)
        self.base_dim, self.cod_arity, self.dom_arity = d, p, q

    @classmethod
    def _raw_map(cls, d, p, q, data):
        m = Matrix._raw.__func__(cls, d ** p, d ** q, data)
        m.base_dim, m.cod_arity, m.dom_arity = d, p, q
        return m

    def _like(self, rows, cols, data):
        return LinMap._raw_map(self.base_dim, self.cod_arity, self.dom_arity, data)

    @classmethod
    def from_matrix(cls, m: Matrix, d: int, p: int, q: int) -> "LinMap":
        if m.shape != (d ** p, d ** q):
            raise DimensionError(f"{m.shape} is not the shape of a map B^{q} -> B^{p} with d={d}")
        return cls._raw_map(d, p, q, {r: dict(row) for r, row in m._data.items()})

    @classmethod
    def identity_map(cls, d: int, n: int = 1) -> "LinMap":
        return cls._raw_map(d, n, n, {i: {i: Fraction(1)} for i in range(d ** n)})

    @classmethod
    def zero_map(cls, d: int, p: int, q: int) -> "LinMap":
        return cls._raw_map(d, p, q, {})

    @classmethod
    def from_function(cls, d: int, p: int, q: int,
                      fn: Callable[[tuple[int, ...]], Mapping[tuple[int, ...], Fraction]]):
        """Build a map from its values on basis tensors.

        ``fn(idx)`` receives the slot indices of an input basis tensor and
        returns ``{output slot indices: coefficient}``.
        """
        entries = []
        for c, idx in enumerate(product(range(d), repeat=q)):
            for out, v in fn(idx).items():
                entries.append(((flat_index(out, d), c), v))
        return cls(d, p, q, entries)

    @classmethod
    def from_vec(cls, d: int, p: int, q: int, v) -> "LinMap":
        cols = d ** q
        items = v.items() if isinstance(v, Mapping) else enumerate(v)
        data: dict[int, dict[int, Fraction]] = {}
        for i, x in items:
            if x:
                r, c = divmod(i, cols)
                data.setdefault(r, {})[c] = to_scalar(x)
        return cls._raw_map(d, p, q, data)

    def tensor(self, other: "Matrix") -> "Matrix":
        return mat_tensor(self, other)

    def transpose(self) -> "LinMap":
        m = Matrix.transpose(self)
        return LinMap._raw_map(self.base_dim, self.dom_arity, self.cod_arity, m._data)

    def __repr__(self):
        return (f"LinMap(d={self.base_dim}, B^{self.dom_arity} -> B^{self.cod_arity}, "
                f"nnz={self.nnz})")


# ---------------------------------------------------------------------------
# subspace operations

def mat_compose(g: Matrix, f: Matrix) -> Matrix:
    """``g o f``; raises :class:`DimensionError` naming both shapes on mismatch."""
    return g.compose(f)


def mat_tensor(*maps: Matrix) -> Matrix:
    """Kronecker product of one or more maps (left factor most significant)."""
    if not maps:
        raise ValueError("need at least one factor")
    out = maps[0]
    for m in maps[1:]:
        out = Matrix.kron(out, m)
    if all(isinstance(m, LinMap) for m in maps) and len({m.base_dim for m in maps}) == 1:
        d = maps[0].base_dim
        return LinMap._raw_map(d, sum(m.cod_arity for m in maps),
                               sum(m.dom_arity for m in maps), out._data)
    return out


def tensor_power(f: Matrix, n: int) -> Matrix:
    if n == 0:
        if isinstance(f, LinMap):
            return LinMap.identity_map(f.base_dim, 0)
        return Matrix.identity(1)
    return mat_tensor(*([f] * n))


def permutation_matrix(dims: Sequence[int], perm: Sequence[int]) -> Matrix:
    """Map ``v_1 (x) ... (x) v_n  ->  v_{perm[0]} (x) ... (x) v_{perm[n-1]}``.

    ``dims[k]`` is the dimension of the k-th input factor; ``perm`` lists,
    for each output slot, which input slot (0-based) lands there.
    """
    n = len(dims)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm} is not a permutation of {n} slots")
    out_dims = [dims[k] for k in perm]
    data = {}
    for c, idx in enumerate(product(*(range(x) for x in dims))):
        out = [idx[k] for k in perm]
        r = 0
        for x, dim in zip(out, out_dims):
            r = r * dim + x
        data[r] = {c: Fraction(1)}
    total = prod(dims)
    return Matrix._raw(total, total, data)


def flip_operator(d: int, n: int, i: int, j: int) -> LinMap:
    """The flip swapping tensor slots ``i`` and ``j`` (1-based) of ``B^{(x)n}``."""
    if not (1 <= i < j <= n):
        raise ValueError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    perm = list(range(n))
    perm[i - 1], perm[j - 1] = perm[j - 1], perm[i - 1]
    m = permutation_matrix([d] * n, perm)
    return LinMap._raw_map(d, n, n, m._data)


# ---------------------------------------------------------------------------
# elimination

def _rref(rows: Iterable[Mapping[int, Fraction]]):
    """Reduced row echelon form of a list of sparse rows.

    Returns ``(pivots, prows)`` with ``prows[k]`` the reduced row whose
    leading entry (equal to 1) is at column ``pivots[k]``; sorted by pivot.
    The result is the unique RREF of the row space.
    """
    basis: dict[int, dict[int, Fraction]] = {}
    for row in rows:
        r = {c: to_scalar(v) for c, v in row.items() if v}
        if not r:
            continue
        for c in [c for c in r if c in basis]:
            f = r.get(c)
            if not f:
                continue
            for cc, v in basis[c].items():
                s = r.get(cc, 0) - f * v
                if s:
                    r[cc] = s
                else:
                    r.pop(cc, None)
        if not r:
            continue
        piv = min(r)
        inv = 1 / r[piv]
        if inv != 1:
            r = {c: v * inv for c, v in r.items()}
        for prow in basis.values():
            f = prow.get(piv)
            if f:
                for cc, v in r.items():
                    s = prow.get(cc, 0) - f * v
                    if s:
                        prow[cc] = s
                    else:
                        del prow[cc]
        basis[piv] = r
    pivots = sorted(basis)
    return pivots, [basis[p] for p in pivots]


def _rows_of(M) -> list[dict[int, Fraction]]:
    if isinstance(M, Matrix):
        return [M._data[r] for r in sorted(M._data)]
    return [{c: to_scalar(v) for c, v in enumerate(row) if v} for row in M]


@dataclass(frozen=True)
class SubspaceBasis:
    """Linearly independent vectors spanning a subspace of ``Q^ambient_dim``.

    ``coordinate_columns``, when set, are ambient positions such that every
    vector of the span is determined by its entries there, and the basis
    vectors restricted to those positions form the identity (this is how
    kernel bases come out of reduced row echelon form).
    """

    ambient_dim: int
    vectors: tuple[tuple[Fraction, ...], ...]
    coordinate_columns: tuple[int, ...] | None = None

    @property
    def dim(self):
        return len(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def coordinates(self, v: Sequence) -> tuple[Fraction, ...]:
        """Coordinates of ``v`` (assumed to lie in the span) in this basis."""
        if self.coordinate_columns is not None:
            return tuple(to_scalar(v[c]) for c in self.coordinate_columns)
        x = solve_linear(Matrix.from_columns(self.ambient_dim,
                                             [_sparse(u) for u in self.vectors]), v)
        if x is None:
            raise ContainmentError("vector is not in the span", vector=tuple(v))
        return x

    def combine(self, coords: Sequence) -> tuple[Fraction, ...]:
        if len(coords) != self.dim:
            raise DimensionError(f"{len(coords)} coordinates for a {self.dim}-dim basis")
        out = [Fraction(0)] * self.ambient_dim
        for a, u in zip(coords, self.vectors):
            if a:
                for i, x in enumerate(u):
                    if x:
                        out[i] += a * x
        return tuple(out)

    def matrix(self) -> Matrix:
        """Basis vectors as the columns of an ``ambient_dim x dim`` matrix."""
        return Matrix.from_columns(self.ambient_dim, [_sparse(u) for u in self.vectors])


def _sparse(v: Sequence) -> dict[int, Fraction]:
    return {i: to_scalar(x) for i, x in enumerate(v) if x}


def _dense(v: Mapping[int, Fraction], n: int) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * n
    for i, x in v.items():
        out[i] = x
    return tuple(out)


def rank(M) -> int:
    pivots, _ = _rref(_rows_of(M))
    return len(pivots)


def kernel_basis(M: Matrix) -> SubspaceBasis:
    """Null space basis, one vector per free column (in increasing order)."""
    pivots, prows = _rref(_rows_of(M))
    piv = set(pivots)
    free = [c for c in range(M.cols) if c not in piv]
    # column -> [(pivot, value)] for the free columns only
    by_col: dict[int, list[tuple[int, Fraction]]] = {}
    for p, row in zip(pivots, prows):
        for c, v in row.items():
            if c != p:
                by_col.setdefault(c, []).append((p, v))
    vectors = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for p, x in by_col.get(f, ()):
            v[p] = -x
        vectors.append(tuple(v))
    return SubspaceBasis(M.cols, tuple(vectors), tuple(free))


def image_basis(M: Matrix) -> SubspaceBasis:
    """Basis of the column space, in reduced echelon form."""
    pivots, prows = _rref(_rows_of(M.transpose()))
    return SubspaceBasis(M.rows, tuple(_dense(r, M.rows) for r in prows), tuple(pivots))


def span_basis(ambient_dim: int, vectors: Iterable[Sequence]) -> SubspaceBasis:
    """Echelon basis of the span of arbitrary vectors."""
    pivots, prows = _rref(_sparse(v) for v in vectors)
    return SubspaceBasis(ambient_dim, tuple(_dense(r, ambient_dim) for r in prows), tuple(pivots))


def solve_linear(M: Matrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """One solution of ``M x = b`` (free variables set to 0), or None."""
    if len(b) != M.rows:
        raise DimensionError(f"right-hand side of length {len(b)} for {M.rows} rows")
    n = M.cols
    rows = []
    for r in range(M.rows):
        row = dict(M._data.get(r, {}))
        if b[r]:
            row[n] = to_scalar(b[r])
        rows.append(row)
    pivots, prows = _rref(rows)
    if pivots and pivots[-1] == n:
        return None
    x = [Fraction(0)] * n
    for p, row in zip(pivots, prows):
        x[p] = row.get(n, Fraction(0))
    return tuple(x)


def subspace_membership(S: SubspaceBasis, v: Sequence) -> bool:
    if len(v) != S.ambient_dim:
        raise DimensionError(f"vector of length {len(v)} in ambient dimension {S.ambient_dim}")
    pivots, prows = _rref(_sparse(u) for u in S.vectors)
    r = _sparse(v)
    basis = dict(zip(pivots, prows))
    for c in sorted(c for c in r if c in basis):
        f = r.get(c)
        if f:
            for cc, x in basis[c].items():
                s = r.get(cc, 0) - f * x
                if s:
                    r[cc] = s
                else:
                    r.pop(cc, None)
    return not r


def quotient_dim(Z: SubspaceBasis, B: SubspaceBasis) -> int:
    """``dim Z - dim B`` after checking that span(B) lies in span(Z)."""
    if Z.ambient_dim != B.ambient_dim:
        raise DimensionError("subspaces live in different ambient spaces")
    for u in B.vectors:
        if not subspace_membership(Z, u):
            raise ContainmentError("coboundary-type vector outside the cocycle-type subspace",
                                   vector=u)
    return Z.dim - B.dim


def complete_basis(sub: SubspaceBasis, big: SubspaceBasis) -> list[tuple[Fraction, ...]]:
    """Vectors of ``big`` that extend ``sub`` to a basis of span(big).

    Greedy in the given order of ``big``, so the choice is deterministic.
    """
    pivots, prows = _rref(_sparse(u) for u in sub.vectors)
    basis = dict(zip(pivots, prows))
    chosen = []
    for u in big.vectors:
        r = _sparse(u)
        for c in sorted(c for c in r if c in basis):
            f = r.get(c)
            if f:
                for cc, x in basis[c].items():
                    s = r.get(cc, 0) - f * x
                    if s:
                        r[cc] = s
                    else:
                        r.pop(cc, None)
        if not r:
            continue
        piv = min(r)
        inv = 1 / r[piv]
        r = {c: x * inv for c, x in r.items()}
        for prow in basis.values():
            f = prow.get(piv)
            if f:
                for cc, x in r.items():
                    s = prow.get(cc, 0) - f * x
                    if s:
                        prow[cc] = s
                    else:
                        del prow[cc]
        basis[piv] = r
        chosen.append(u)
    return chosen


# ---------------------------------------------------------------------------
# fraction-free elimination

def bareiss_echelon(M) -> tuple[list[list[int]], list[int]]:
    """Fraction-free (Bareiss) row echelon form of a rational matrix.

    Rows are first scaled to integers; every intermediate division is exact.
    Returns the integer echelon rows and their pivot columns.
    """
    dense = M.to_dense() if isinstance(M, Matrix) else [[to_scalar(x) for x in r] for r in M]
    A = []
    for row in dense:
        den = 1
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
        A.append([int(x * den) for x in row])
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if A[i][c]), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        p = A[r][c]
        for i in range(r + 1, nrows):
            a = A[i][c]
            Ai, Ar = A[i], A[r]
            for j in range(c, ncols):
                Ai[j] = (p * Ai[j] - a * Ar[j]) // prev
        prev = p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def bareiss_rank(M) -> int:
    return len(bareiss_echelon(M)[1])


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
