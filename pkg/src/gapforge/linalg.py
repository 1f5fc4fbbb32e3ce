"""Dense exact linear algebra over finite fields.

Matrices and vectors store element indices in read-only int64 numpy
arrays.  Prime fields use modular arithmetic directly; extension fields
go through the dense op tables of their FieldSpec.  Everything here is a
pure function of immutable inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import DimensionMismatch, EnumerationCapExceeded, FieldMismatch
from .field import FieldSpec

DEFAULT_ENUMERATION_CAP = 1 << 22
DEFAULT_MAX_BLOCK_LEN = 1 << 20

# Upper bound on the number of int64 entries held by one enumeration chunk.
_CHUNK_ELEMS = 1 << 21


def _validated(field: FieldSpec, data, ndim: int) -> np.ndarray:
    arr = np.array(data, dtype=np.int64)
    if arr.ndim != ndim:
        raise DimensionMismatch(f"expected {ndim}-dimensional data, got shape {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= field.q):
        raise ValueError(f"entries must be element indices in [0, {field.q})")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class VectorFq:
    """Vector over a finite field; entries are element indices."""

    field: FieldSpec
    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", _validated(self.field, self.entries, 1))

    @property
    def length(self) -> int:
        return int(self.entries.shape[0])

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        return int(self.entries[i])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VectorFq)
            and self.field == other.field
            and np.array_equal(self.entries, other.entries)
        )

    def __repr__(self) -> str:
        return f"VectorFq({self.field!r}, {self.entries.tolist()})"


@dataclass(frozen=True, eq=False)
class MatrixFq:
    """Dense row-major matrix over a finite field."""

    field: FieldSpec
    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", _validated(self.field, self.entries, 2))

    @property
    def rows(self) -> int:
        return int(self.entries.shape[0])

    @property
    def cols(self) -> int:
        return int(self.entries.shape[1])

    @property
    def T(self) -> "MatrixFq":
        return MatrixFq(self.field, self.entries.T)

    def row(self, i: int) -> VectorFq:
        return VectorFq(self.field, self.entries[i])

    def col(self, j: int) -> VectorFq:
        return VectorFq(self.field, self.entries[:, j])

    def flatten(self) -> VectorFq:
        return VectorFq(self.field, self.entries.reshape(-1))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return int(self.entries[ij])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatrixFq)
            and self.field == other.field
            and self.entries.shape == other.entries.shape
            and np.array_equal(self.entries, other.entries)
        )

    def __matmul__(self, other):
        return matmul(self, other)

    def __repr__(self) -> str:
        return f"MatrixFq({self.field!r}, shape={self.entries.shape})"


def zeros_matrix(field: FieldSpec, rows: int, cols: int) -> MatrixFq:
    return MatrixFq(field, np.zeros((rows, cols), dtype=np.int64))


def identity_matrix(field: FieldSpec, n: int) -> MatrixFq:
    return MatrixFq(field, np.eye(n, dtype=np.int64))


def _same_field(a, b) -> FieldSpec:
    if a.field != b.field:
        raise FieldMismatch("operands belong to different fields")
    return a.field


def _mm(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product of index arrays; shapes (r, k) x (k, c)."""
    if field.base is None:
        return (a @ b) % field.p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        out = field.arr_add(out, field.arr_mul(a[:, k][:, None], b[k, :][None, :]))
    return out


def matmul(a, b):
    """Product over the common field.

    Accepts matrix*matrix, matrix*vector (column), vector*matrix (row)
    and vector*vector (scalar product, returned as a FieldElem index-0
    vector would be ambiguous so an int index is returned).
    """
    field = _same_field(a, b)
    if isinstance(a, MatrixFq) and isinstance(b, MatrixFq):
        if a.cols != b.rows:
            raise DimensionMismatch(f"{a.rows}x{a.cols} @ {b.rows}x{b.cols}")
        return MatrixFq(field, _mm(field, a.entries, b.entries))
    if isinstance(a, MatrixFq) and isinstance(b, VectorFq):
        if a.cols != b.length:
            raise DimensionMismatch(f"{a.rows}x{a.cols} @ vector of length {b.length}")
        return VectorFq(field, _mm(field, a.entries, b.entries[:, None])[:, 0])
    if isinstance(a, VectorFq) and isinstance(b, MatrixFq):
        if a.length != b.rows:
            raise DimensionMismatch(f"vector of length {a.length} @ {b.rows}x{b.cols}")
        return VectorFq(field, _mm(field, a.entries[None, :], b.entries)[0, :])
    if isinstance(a, VectorFq) and isinstance(b, VectorFq):
        if a.length != b.length:
            raise DimensionMismatch("dot product of unequal lengths")
        return int(_mm(field, a.entries[None, :], b.entries[:, None])[0, 0])
    raise TypeError("matmul expects MatrixFq/VectorFq operands")


def outer(u: VectorFq, v: VectorFq) -> MatrixFq:
    field = _same_field(u, v)
    return MatrixFq(field, field.arr_mul(u.entries[:, None], v.entries[None, :]))


def weight(x) -> int:
    """Hamming weight: the number of nonzero entries."""
    return int(np.count_nonzero(x.entries))


def kron(a, b):
    """Kronecker product; vectors flatten row-major (left factor major)."""
    field = _same_field(a, b)
    if isinstance(a, VectorFq) and isinstance(b, VectorFq):
        prod = field.arr_mul(a.entries[:, None], b.entries[None, :])
        return VectorFq(field, prod.reshape(-1))
    if isinstance(a, MatrixFq) and isinstance(b, MatrixFq):
        prod = field.arr_mul(
            a.entries[:, None, :, None], b.entries[None, :, None, :]
        )
        return MatrixFq(field, prod.reshape(a.rows * b.rows, a.cols * b.cols))
    raise TypeError("kron expects two vectors or two matrices")


# ----------------------------------------------------------------------
# Gaussian elimination


def _rref(field: FieldSpec, mat: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with deterministic pivoting.

    Pivots are chosen leftmost column first, topmost eligible row first,
    so the result (and everything derived from it) is reproducible.
    """
    r_mat = mat.astype(np.int64).copy()
    rows, cols = r_mat.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(r_mat[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            r_mat[[r, pr]] = r_mat[[pr, r]]
        pivot = int(r_mat[r, c])
        if pivot != 1:
            r_mat[r] = field.arr_mul(np.int64(field.inv_i(pivot)), r_mat[r])
        others = np.nonzero(r_mat[:, c])[0]
        others = others[others != r]
        if others.size:
            factors = r_mat[others, c][:, None]
            r_mat[others] = field.arr_sub(
                r_mat[others], field.arr_mul(factors, r_mat[r][None, :])
            )
        pivots.append(c)
        r += 1
    return r_mat, pivots


def rank(m: MatrixFq) -> int:
    _, pivots = _rref(m.field, m.entries)
    return len(pivots)


def nullspace_basis(m: MatrixFq) -> list[VectorFq]:
    """Basis of the right kernel, in reduced echelon form.

    One basis vector per free column, in ascending free-column order;
    each has a 1 in its own free coordinate and 0 in every other free
    coordinate.  Returns an empty list for a trivial kernel.
    """
    field = m.field
    red, pivots = _rref(field, m.entries)
    pivot_set = set(pivots)
    cols = m.cols
    basis = []
    for f in range(cols):
        if f in pivot_set:
            continue
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = field.neg_i(int(red[i, f]))
        basis.append(VectorFq(field, v))
    return basis


def upper_pairs(n: int) -> list[tuple[int, int]]:
    """Row-major scan of the upper triangle (i <= j) of an n-by-n matrix."""
    return [(i, j) for i in range(n) for j in range(i, n)]


def symmetric_solution_basis(
    constraints: Sequence[MatrixFq], n: int, field: FieldSpec | None = None
) -> list[MatrixFq]:
    """Basis of the symmetric matrices annihilated by all linear functionals.

    Each constraint matrix Q defines the functional X -> sum_ij Q[i,j] X[i,j].
    The n(n+1)/2 upper-triangle entries (row-major, X[i,j] = X[j,i]) are the
    unknowns; the basis comes from nullspace_basis of the stacked functional
    rows and is therefore deterministic.  The field may be omitted when at
    least one constraint is given.
    """
    if constraints:
        field = constraints[0].field
    if field is None:
        raise ValueError("field is required when the constraint list is empty")
    pairs = upper_pairs(n)
    k = len(pairs)
    rows = []
    for q_mat in constraints:
        if q_mat.rows != n or q_mat.cols != n:
            raise DimensionMismatch(f"constraint must be {n}x{n}, got {q_mat.rows}x{q_mat.cols}")
        if q_mat.field != field:
            raise FieldMismatch("constraints over different fields")
        row = np.zeros(k, dtype=np.int64)
        for idx, (i, j) in enumerate(pairs):
            if i == j:
                row[idx] = q_mat[i, i]
            else:
                row[idx] = field.add_i(q_mat[i, j], q_mat[j, i])
        rows.append(row)
    coeff = MatrixFq(field, np.array(rows, dtype=np.int64).reshape(len(rows), k))
    kernel = nullspace_basis(coeff)
    basis = []
    for vec in kernel:
        x = np.zeros((n, n), dtype=np.int64)
        for idx, (i, j) in enumerate(pairs):
            x[i, j] = vec[idx]
            x[j, i] = vec[idx]
        basis.append(MatrixFq(field, x))
    return basis


# ----------------------------------------------------------------------
# exhaustive span / coset enumeration


def index_digits(indices: np.ndarray, radix: int, dim: int) -> np.ndarray:
    """Little-endian radix digits of combination indices, shape (len, dim)."""
    if dim == 0:
        return np.zeros((indices.shape[0], 0), dtype=np.int64)
    powers = radix ** np.arange(dim, dtype=np.int64)
    return (indices[:, None] // powers[None, :]) % radix


def iter_combination_chunks(
    field: FieldSpec,
    basis: np.ndarray,
    *,
    radix: int | None = None,
    offset: np.ndarray | None = None,
    include_zero: bool = True,
    chunk: int | None = None,
) -> Iterator[tuple[int, np.ndarray]]:
    """Enumerate offset + sum_i c_i * basis[i] over all coefficient tuples.

    Coefficients range over [0, radix) per position, ordered by the
    little-endian integer index of the tuple, so combination index k has
    c_i = (k // radix**i) % radix.  Yields (start_index, rows) chunks.
    """
    dim, length = basis.shape
    if radix is None:
        radix = field.q
    total = radix**dim
    if chunk is None:
        chunk = max(1, _CHUNK_ELEMS // max(length, 1))
    start = 0 if include_zero else 1
    for s in range(start, total, chunk):
        e = min(s + chunk, total)
        idx = np.arange(s, e, dtype=np.int64)
        digits = index_digits(idx, radix, dim)
        if field.base is None:
            combos = digits @ basis
            if offset is not None:
                combos = combos + offset[None, :]
            combos %= field.p
        else:
            combos = np.zeros((idx.shape[0], length), dtype=np.int64)
            if offset is not None:
                combos = combos + offset[None, :]
            for i in range(dim):
                term = field.arr_mul(digits[:, i][:, None], basis[i][None, :])
                combos = field.arr_add(combos, term)
        yield s, combos


def check_enumeration_cap(radix: int, dim: int, cap: int | None) -> None:
    if cap is None:
        cap = DEFAULT_ENUMERATION_CAP
    if radix**dim > cap:
        raise EnumerationCapExceeded(
            f"{radix}**{dim} combinations exceed the enumeration cap {cap}"
        )
