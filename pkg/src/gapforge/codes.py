"""Linear code constructions and exact distance computation.

Generator matrices are N-by-n with full column rank, so columns are the
basis codewords and encoding is gen @ message.  Balancedness parameters
are kept as exact fractions; all thresholds downstream compare exactly,
never in floating point.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import ceil

import numpy as np

from .errors import DegreeTooLarge, EnumerationCapExceeded, FieldMismatch, SizeCap
from .field import FieldSpec, extension_field
from .linalg import (
    DEFAULT_ENUMERATION_CAP,
    DEFAULT_MAX_BLOCK_LEN,
    MatrixFq,
    VectorFq,
    _mm,
    iter_combination_chunks,
    kron,
    rank,
)


@dataclass(frozen=True, eq=False)
class LinearCode:
    """A linear code given by its generator matrix.

    d_claimed is a proven lower bound on the minimum distance (the exact
    distance whenever enumeration was feasible at construction).  When
    eps is set, every nonzero codeword weight lies in
    [d_claimed, (1 + eps) * d_claimed].
    """

    gen: MatrixFq
    d_claimed: int | None = None
    eps: Fraction | None = None
    message_field: FieldSpec = dc_field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.message_field is None:
            object.__setattr__(self, "message_field", self.gen.field)
        if self.message_field != self.gen.field and self.gen.field.base != self.message_field:
            raise FieldMismatch("message field must equal the code field or its base field")
        if rank(self.gen) != self.gen.cols:
            raise ValueError("generator matrix must have full column rank")
        if self.eps is not None:
            object.__setattr__(self, "eps", Fraction(self.eps))

    @property
    def field(self) -> FieldSpec:
        return self.gen.field

    @property
    def block_length(self) -> int:
        return self.gen.rows

    @property
    def dimension(self) -> int:
        return self.gen.cols

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearCode)
            and self.gen == other.gen
            and self.d_claimed == other.d_claimed
            and self.eps == other.eps
            and self.message_field == other.message_field
        )

    def __repr__(self) -> str:
        return (
            f"LinearCode(N={self.block_length}, n={self.dimension}, "
            f"d>={self.d_claimed}, eps={self.eps}, field={self.field!r})"
        )


def encode(code: LinearCode, message: VectorFq) -> VectorFq:
    """Encode a message vector; message symbols embed index-identically."""
    if message.field != code.message_field:
        raise FieldMismatch("message lies in the wrong field")
    if message.length != code.dimension:
        raise FieldMismatch(
            f"message length {message.length} != code dimension {code.dimension}"
        )
    out = _mm(code.field, code.gen.entries, message.entries[:, None])[:, 0]
    return VectorFq(code.field, out)


def hadamard(field: FieldSpec, m: int, *, max_len: int = DEFAULT_MAX_BLOCK_LEN) -> LinearCode:
    """Code of all linear functionals on F_q^m, evaluated at every point.

    Row a of the generator is the point a itself (in index order), so the
    codeword of x lists <a, x> over all a.  Every nonzero codeword has
    weight exactly (1 - 1/q) * q**m, hence eps = 0.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    q = field.q
    n_rows = q**m
    if n_rows > max_len:
        raise SizeCap(f"block length {n_rows} exceeds the limit {max_len}")
    idx = np.arange(n_rows, dtype=np.int64)
    gen = np.stack([(idx // q**i) % q for i in range(m)], axis=1)
    d = n_rows - n_rows // q
    return LinearCode(MatrixFq(field, gen), d_claimed=d, eps=Fraction(0))


def reed_solomon(
    base_field: FieldSpec, n: int, ext_degree: int, *, max_len: int = DEFAULT_MAX_BLOCK_LEN
) -> LinearCode:
    """Evaluation code of degree-(n-1) polynomials at all points of F_{q**m}.

    Messages are coefficient vectors over the base field F_q; codeword
    symbols live in the extension field.  A nonzero polynomial of degree
    below n has fewer than n roots, so the distance exceeds Q - n.
    """
    big = extension_field(base_field, ext_degree)
    q_big = big.q
    if n > q_big:
        raise DegreeTooLarge(f"dimension {n} exceeds the {q_big} evaluation points")
    if q_big > max_len:
        raise SizeCap(f"block length {q_big} exceeds the limit {max_len}")
    gen = np.empty((q_big, n), dtype=np.int64)
    for alpha in range(q_big):
        acc = 1
        for j in range(n):
            gen[alpha, j] = acc
            acc = big.mul_i(acc, alpha)
    return LinearCode(
        MatrixFq(big, gen),
        d_claimed=q_big - n + 1,
        eps=None,
        message_field=base_field,
    )


def balanced_code(
    field: FieldSpec,
    n: int,
    eps,
    *,
    cap: int = DEFAULT_ENUMERATION_CAP,
    max_len: int = DEFAULT_MAX_BLOCK_LEN,
) -> LinearCode:
    """Concatenated code whose nonzero weights all sit in a narrow band.

    Composes the evaluation code over F_{q**m} (m minimal with
    n <= eps * q**m) with the linear-functional code on F_q^m, giving
    block length N = q**(2m) and every nonzero codeword weight inside
    [(1 - eps)(1 - 1/q) N, (1 - 1/q) N].  The stored eps is 2 * eps,
    which bounds the weight band relative to the distance.
    """
    eps = Fraction(eps)
    if not 0 < eps <= Fraction(1, 2):
        raise ValueError(f"eps must lie in (0, 1/2], got {eps}")
    q = field.q
    m = 1
    while n > eps * q**m:
        m += 1
    big_q = q**m
    big_n = big_q * big_q
    if big_n > max_len:
        raise SizeCap(f"block length {big_n} exceeds the limit {max_len}")

    outer_code = reed_solomon(field, n, m, max_len=max_len)
    inner = hadamard(field, m, max_len=max_len)
    big = outer_code.field

    # Outer symbols appear in evaluation-point index order; each expands to
    # one inner block, itself in point index order.
    gen = np.empty((big_n, n), dtype=np.int64)
    for j in range(n):
        rs_col = outer_code.gen.entries[:, j]
        coords = np.stack([(rs_col // q**i) % q for i in range(m)], axis=1)
        blocks = _mm(field, inner.gen.entries, coords.T)
        gen[:, j] = blocks.T.reshape(-1)
    assert big.q == big_q

    lo = ceil(Fraction(1 - eps) * Fraction(q - 1, q) * big_n)
    code = LinearCode(MatrixFq(field, gen), d_claimed=int(lo), eps=2 * eps)
    if field.q**n <= cap:
        exact = min_distance_exhaustive(code, cap=cap)
        assert exact >= lo
        code = LinearCode(MatrixFq(field, gen), d_claimed=exact, eps=2 * eps)
    return code


def min_distance_exhaustive(
    code: LinearCode, *, cap: int = DEFAULT_ENUMERATION_CAP, chunk: int | None = None
) -> int:
    """Exact minimum distance by enumerating every nonzero message."""
    radix = code.message_field.q
    dim = code.dimension
    if radix**dim > cap:
        raise EnumerationCapExceeded(
            f"{radix}**{dim} messages exceed the enumeration cap {cap}"
        )
    basis = code.gen.entries.T
    best = None
    for _, combos in iter_combination_chunks(
        code.field, basis, radix=radix, include_zero=False, chunk=chunk
    ):
        w = int(np.count_nonzero(combos, axis=1).min())
        best = w if best is None else min(best, w)
    assert best is not None
    return best


def weight_profile(
    code: LinearCode, *, cap: int = DEFAULT_ENUMERATION_CAP, chunk: int | None = None
) -> Counter:
    """Multiset of nonzero-codeword weights, as a Counter."""
    radix = code.message_field.q
    dim = code.dimension
    if radix**dim > cap:
        raise EnumerationCapExceeded(
            f"{radix}**{dim} messages exceed the enumeration cap {cap}"
        )
    basis = code.gen.entries.T
    profile: Counter = Counter()
    for _, combos in iter_combination_chunks(
        code.field, basis, radix=radix, include_zero=False, chunk=chunk
    ):
        weights = np.count_nonzero(combos, axis=1)
        values, counts = np.unique(weights, return_counts=True)
        for v, c in zip(values.tolist(), counts.tolist()):
            profile[int(v)] += int(c)
    return profile


def check_balanced(code: LinearCode, *, cap: int = DEFAULT_ENUMERATION_CAP) -> bool:
    """Exhaustively confirm the weight band implied by d_claimed and eps."""
    if code.d_claimed is None or code.eps is None:
        raise ValueError("code carries no balancedness parameters")
    profile = weight_profile(code, cap=cap)
    lo = code.d_claimed
    hi = (1 + code.eps) * code.d_claimed
    return all(lo <= w <= hi for w in profile)


def tensor_square_basis(
    basis: list[VectorFq], *, max_len: int = DEFAULT_MAX_BLOCK_LEN
) -> list[VectorFq]:
    """Kronecker products of all ordered basis pairs (left index major).

    Spans the tensor square of the input span; its minimum distance is
    the square of the input minimum distance.
    """
    if not basis:
        return []
    length = basis[0].length
    if length * length > max_len:
        raise SizeCap(f"tensor square length {length * length} exceeds the limit {max_len}")
    return [kron(u, v) for u in basis for v in basis]
