"""Exact arithmetic in prime fields and their extensions.

A field is described by a :class:`FieldSpec`; elements are plain integer
indices in ``[0, q)``.  For the prime field F_p the index is the residue
itself.  For a degree-``m`` extension of a base field of order ``b`` the
index encodes the polynomial representative ``c_0 + c_1 x + ... +
c_{m-1} x^{m-1}`` as ``sum(c_i * b**i)``, so indices are positional
numerals in base ``b``.  The modulus is stored low degree first and is
always monic.

Op tables (dense q-by-q numpy arrays) back both scalar and array
arithmetic for extension fields; prime fields use modular arithmetic
directly.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import DegreeZero, DivisionByZero, FieldMismatch, NotPrime, SizeCap

# Largest field order for which dense op tables are materialized.  Array
# operations on larger extension fields are refused rather than degraded.
_TABLE_LIMIT = 2048


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A finite field F_q with q = (base order)**m.

    ``base`` is ``None`` exactly for prime fields, whose modulus is the
    canonical ``x`` (coefficients ``(0, 1)``).
    """

    p: int
    m: int
    modulus: tuple[int, ...]
    base: "FieldSpec | None"
    q: int

    # ------------------------------------------------------------------
    # digit encoding

    @property
    def base_order(self) -> int:
        return self.p if self.base is None else self.base.q

    def digits(self, index: int) -> tuple[int, ...]:
        """Coefficient vector (low degree first) of an element index."""
        b = self.base_order
        out = []
        for _ in range(self.m):
            index, r = divmod(index, b)
            out.append(r)
        return tuple(out)

    def from_digits(self, coeffs: Sequence[int]) -> int:
        b = self.base_order
        idx = 0
        for c in reversed(coeffs):
            idx = idx * b + c
        return idx

    # ------------------------------------------------------------------
    # scalar arithmetic on element indices

    def add_i(self, a: int, b: int) -> int:
        if self.base is None:
            return (a + b) % self.p
        if self.q <= _TABLE_LIMIT:
            return int(_tables(self).add[a, b])
        return self._raw_add(a, b)

    def sub_i(self, a: int, b: int) -> int:
        if self.base is None:
            return (a - b) % self.p
        if self.q <= _TABLE_LIMIT:
            return int(_tables(self).sub[a, b])
        return self._raw_add(a, self._raw_neg(b))

    def neg_i(self, a: int) -> int:
        if self.base is None:
            return (-a) % self.p
        if self.q <= _TABLE_LIMIT:
            return int(_tables(self).neg[a])
        return self._raw_neg(a)

    def mul_i(self, a: int, b: int) -> int:
        if self.base is None:
            return (a * b) % self.p
        if self.q <= _TABLE_LIMIT:
            return int(_tables(self).mul[a, b])
        return self._raw_mul(a, b)

    def inv_i(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.base is None:
            return pow(a, self.p - 2, self.p)
        if self.q <= _TABLE_LIMIT:
            return int(_tables(self).inv[a])
        return self._raw_pow(a, self.q - 2)

    def div_i(self, a: int, b: int) -> int:
        return self.mul_i(a, self.inv_i(b))

    def pow_i(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow_i(self.inv_i(a), -e)
        acc, sq = 1, a
        while e:
            if e & 1:
                acc = self.mul_i(acc, sq)
            sq = self.mul_i(sq, sq)
            e >>= 1
        return acc

    # ------------------------------------------------------------------
    # raw (table-free) arithmetic, used to build tables

    def _raw_add(self, a: int, b: int) -> int:
        if self.base is None:
            return (a + b) % self.p
        B = self.base
        return self.from_digits(
            tuple(B.add_i(x, y) for x, y in zip(self.digits(a), self.digits(b)))
        )

    def _raw_neg(self, a: int) -> int:
        if self.base is None:
            return (-a) % self.p
        B = self.base
        return self.from_digits(tuple(B.neg_i(x) for x in self.digits(a)))

    def _raw_mul(self, a: int, b: int) -> int:
        if self.base is None:
            return (a * b) % self.p
        B = self.base
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(da):
            if x == 0:
                continue
            for j, y in enumerate(db):
                if y == 0:
                    continue
                prod[i + j] = B.add_i(prod[i + j], B.mul_i(x, y))
        return self.from_digits(tuple(_poly_rem(B, prod, self.modulus)))

    def _raw_pow(self, a: int, e: int) -> int:
        acc, sq = 1, a
        while e:
            if e & 1:
                acc = self._raw_mul(acc, sq)
            sq = self._raw_mul(sq, sq)
            e >>= 1
        return acc

    # ------------------------------------------------------------------
    # vectorized arithmetic on int64 index arrays

    def arr_add(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.base is None:
            return (x + y) % self.p
        return _tables(self).add[x, y]

    def arr_sub(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.base is None:
            return (x - y) % self.p
        return _tables(self).sub[x, y]

    def arr_mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.base is None:
            return (x * y) % self.p
        return _tables(self).mul[x, y]

    def arr_neg(self, x: np.ndarray) -> np.ndarray:
        if self.base is None:
            return (-x) % self.p
        return _tables(self).neg[x]

    # ------------------------------------------------------------------
    # element helpers

    def elem(self, index: int) -> "FieldElem":
        return FieldElem(self, index)

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    def elements(self) -> Iterator["FieldElem"]:
        return (FieldElem(self, i) for i in range(self.q))

    def __repr__(self) -> str:
        if self.base is None:
            return f"F{self.q}"
        return f"F{self.q}(deg {self.m} over {self.base!r})"


@dataclass(frozen=True)
class FieldElem:
    """An element of a finite field, identified by its index."""

    spec: FieldSpec
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.spec.q:
            raise ValueError(f"index {self.index} outside [0, {self.spec.q})")

    def _check(self, other: "FieldElem") -> None:
        if not isinstance(other, FieldElem):
            raise TypeError(f"expected FieldElem, got {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatch("elements belong to different fields")

    def __add__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.spec, self.spec.add_i(self.index, other.index))

    def __sub__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.spec, self.spec.sub_i(self.index, other.index))

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.spec, self.spec.mul_i(self.index, other.index))

    def __truediv__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.spec, self.spec.div_i(self.index, other.index))

    def __neg__(self) -> "FieldElem":
        return FieldElem(self.spec, self.spec.neg_i(self.index))

    def inv(self) -> "FieldElem":
        return FieldElem(self.spec, self.spec.inv_i(self.index))

    def __pow__(self, e: int) -> "FieldElem":
        return FieldElem(self.spec, self.spec.pow_i(self.index, e))

    def __bool__(self) -> bool:
        return self.index != 0

    def __repr__(self) -> str:
        return f"<{self.index} in {self.spec!r}>"


class _Tables:
    __slots__ = ("add", "sub", "mul", "neg", "inv")

    def __init__(self, add, sub, mul, neg, inv):
        self.add = add
        self.sub = sub
        self.mul = mul
        self.neg = neg
        self.inv = inv


@functools.lru_cache(maxsize=None)
def _tables(spec: FieldSpec) -> _Tables:
    q = spec.q
    if q > _TABLE_LIMIT:
        raise SizeCap(f"field order {q} exceeds the op-table limit {_TABLE_LIMIT}")
    add = np.empty((q, q), dtype=np.int64)
    mul = np.empty((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(a, q):
            s = spec._raw_add(a, b)
            add[a, b] = s
            add[b, a] = s
            m = spec._raw_mul(a, b)
            mul[a, b] = m
            mul[b, a] = m
    neg = np.empty(q, dtype=np.int64)
    for a in range(q):
        neg[a] = int(np.nonzero(add[a] == 0)[0][0])
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
    sub = add[:, neg]
    return _Tables(add, sub, mul, neg, inv)


# ----------------------------------------------------------------------
# polynomial helpers over a base field (coefficient lists, low degree first)


def _poly_rem(base: FieldSpec, coeffs: Sequence[int], modulus: Sequence[int]) -> list[int]:
    """Remainder of coeffs modulo a monic polynomial over the base field."""
    deg = len(modulus) - 1
    rem = list(coeffs)
    if len(rem) < deg:
        rem += [0] * (deg - len(rem))
    for k in range(len(rem) - 1, deg - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        for i in range(deg + 1):
            if modulus[i]:
                rem[k - deg + i] = base.sub_i(rem[k - deg + i], base.mul_i(c, modulus[i]))
    return rem[:deg]


def _is_irreducible(base: FieldSpec, poly: tuple[int, ...]) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(base.q), repeat=d):
            divisor = tail + (1,)
            rem = _poly_rem(base, poly, divisor)
            if all(c == 0 for c in rem):
                return False
    return True


def _smallest_irreducible(base: FieldSpec, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m.

    Candidates are compared on their low-to-high coefficient list, so the
    constant coefficient is the most significant position.
    """
    for tail in itertools.product(range(base.q), repeat=m):
        poly = tail + (1,)
        if _is_irreducible(base, poly):
            return poly
    raise RuntimeError(f"no irreducible polynomial of degree {m} found")  # unreachable


# ----------------------------------------------------------------------
# constructors


@functools.lru_cache(maxsize=None)
def make_field(p: int, m: int) -> FieldSpec:
    """Field of order p**m over the prime p, with the canonical modulus.

    The modulus is the lexicographically smallest monic irreducible of
    degree m over F_p, which makes construction deterministic across runs.
    """
    if m < 1:
        raise DegreeZero(f"extension degree must be >= 1, got {m}")
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m == 1:
        return FieldSpec(p=p, m=1, modulus=(0, 1), base=None, q=p)
    base = make_field(p, 1)
    modulus = _smallest_irreducible(base, m)
    return FieldSpec(p=p, m=m, modulus=modulus, base=base, q=p**m)


@functools.lru_cache(maxsize=None)
def extension_field(base: FieldSpec, m: int) -> FieldSpec:
    """Degree-m extension of an arbitrary base field.

    Elements are polynomials over the base field, reduced modulo the
    lexicographically smallest monic irreducible of degree m.
    """
    if m < 1:
        raise DegreeZero(f"extension degree must be >= 1, got {m}")
    modulus = _smallest_irreducible(base, m)
    return FieldSpec(p=base.p, m=m, modulus=modulus, base=base, q=base.q**m)


def field_from_modulus(p: int, modulus: Sequence[int]) -> FieldSpec:
    """Rebuild a field over the prime p from an explicit monic modulus.

    Used when parsing field headers; the modulus is re-verified
    irreducible by trial division.
    """
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    mod = tuple(int(c) % p for c in modulus)
    m = len(mod) - 1
    if m < 1:
        raise DegreeZero("modulus must have degree >= 1")
    if mod[-1] != 1:
        raise ValueError(f"modulus must be monic, got {mod}")
    if m == 1:
        if mod != (0, 1):
            raise ValueError(f"prime fields use the canonical modulus x, got {mod}")
        return make_field(p, 1)
    base = make_field(p, 1)
    if not _is_irreducible(base, mod):
        raise ValueError(f"modulus {mod} is reducible over F_{p}")
    return FieldSpec(p=p, m=m, modulus=mod, base=base, q=p**m)


# ----------------------------------------------------------------------
# coordinates of extension elements over their base field


def to_coords(a: FieldElem) -> tuple[FieldElem, ...]:
    """Coefficient vector of an extension element in the polynomial basis.

    The map is linear over the base field and inverse to from_coords.
    """
    spec = a.spec
    if spec.base is None:
        raise FieldMismatch("element of a prime field has no extension coordinates")
    return tuple(spec.base.elem(c) for c in spec.digits(a.index))


def from_coords(spec: FieldSpec, coords: Sequence[FieldElem]) -> FieldElem:
    if spec.base is None:
        raise FieldMismatch("target field is not an extension")
    if len(coords) != spec.m:
        raise FieldMismatch(f"expected {spec.m} coordinates, got {len(coords)}")
    for c in coords:
        if c.spec != spec.base:
            raise FieldMismatch("coordinates must lie in the base field")
    return spec.elem(spec.from_digits(tuple(c.index for c in coords)))
