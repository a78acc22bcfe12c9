"""Dense exact matrices over Z_m.

Entries are stored row-major in a read-only numpy array. Small moduli use
``int64`` (every dot product fits); larger ones fall back to Python-int
object arrays so that arithmetic stays exact.

Matrix text format::

    n d
    a11 a12 ... a1d
    ...
    ad1 ad2 ... add

Entries are reduced mod n on ingest.
"""
from __future__ import annotations

import operator
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from .errors import (
    SHAPE_MISMATCH,
    ComponentMismatch,
    EmptyInput,
    NOT_SQUARE,
    MalformedInput,
    NotAUnit,
    ShapeMismatch,
)
from .zmod import Modulus, check_components, crt_weights, factor_modulus, inverse_mod

_INT64_MAX = 2**63 - 1


def _dtype_for(modulus: int, dim: int) -> Any:
    return np.int64 if (modulus - 1) ** 2 * max(dim, 1) <= _INT64_MAX else object


class MatZ:
    """Immutable square matrix over Z_modulus with canonical entries."""

    __slots__ = ("modulus", "entries")

    modulus: int
    entries: np.ndarray

    def __init__(self, modulus: int, rows: Sequence[Sequence[int]] | np.ndarray):
        if modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {modulus}")
        if isinstance(rows, np.ndarray) and rows.dtype.kind in "iu":
            if rows.ndim != 2 or rows.shape[0] != rows.shape[1] or rows.shape[0] < 1:
                raise ShapeMismatch(f"expected a non-empty square matrix, got {rows.shape}")
            self._set(modulus, rows % modulus)
            return
        try:
            reduced = [[operator.index(x) % modulus for x in row] for row in rows]
        except TypeError as exc:
            raise ShapeMismatch(f"matrix entries must be integers: {exc}") from exc
        d = len(reduced)
        if d < 1 or any(len(row) != d for row in reduced):
            raise ShapeMismatch(f"{NOT_SQUARE} (got {d} row(s))")
        arr = np.empty((d, d), dtype=_dtype_for(modulus, d))
        arr[...] = reduced
        self._set(modulus, arr)

    def _set(self, modulus: int, arr: np.ndarray) -> None:
        want = _dtype_for(modulus, arr.shape[0])
        if arr.dtype != want:
            arr = arr.astype(want)
        arr.setflags(write=False)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "entries", arr)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("MatZ is immutable")

    @classmethod
    def _wrap(cls, modulus: int, arr: np.ndarray, copy: bool = True) -> "MatZ":
        """Build from an array whose entries are already reduced.

        ``copy=False`` hands ownership of a freshly computed ``arr`` over.
        """
        obj = cls.__new__(cls)
        obj._set(modulus, np.array(arr, copy=True) if copy else arr)
        return obj

    # --- constructors ---
    @classmethod
    def zeros(cls, modulus: int, dim: int) -> "MatZ":
        return cls._wrap(modulus, np.zeros((dim, dim), dtype=_dtype_for(modulus, dim)))

    @classmethod
    def from_rows(cls, modulus: Any, rows: Any) -> "MatZ":
        """Strict constructor for untrusted input such as parsed JSON.

        Only genuine integers are accepted; floats, bools and strings raise
        :class:`MalformedInput` instead of being truncated.
        """
        if not _is_int(modulus):
            raise MalformedInput(f"modulus must be an integer, got {modulus!r}")
        if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
            raise MalformedInput("rows must be a list of lists of integers")
        bad = next((x for row in rows for x in row if not _is_int(x)), None)
        if bad is not None:
            raise MalformedInput(f"matrix entries must be integers, got {bad!r}")
        try:
            return cls(modulus, rows)
        except ValueError as exc:
            raise MalformedInput(str(exc)) from exc

    @classmethod
    def identity(cls, modulus: int, dim: int) -> "MatZ":
        return cls.scalar(modulus, dim, 1)

    @classmethod
    def scalar(cls, modulus: int, dim: int, c: int) -> "MatZ":
        return cls.diagonal(modulus, [c] * dim)

    @classmethod
    def diagonal(cls, modulus: int, values: Sequence[int]) -> "MatZ":
        if not values:
            raise EmptyInput("diagonal needs at least one entry")
        d = len(values)
        arr = np.zeros((d, d), dtype=_dtype_for(modulus, d))
        arr[np.arange(d), np.arange(d)] = [int(v) % modulus for v in values]
        return cls._wrap(modulus, arr, copy=False)

    # --- views ---
    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    def to_rows(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.entries]

    def is_zero(self) -> bool:
        return not self.entries.any()

    def reduce(self, modulus: int) -> "MatZ":
        """Image under Z_self.modulus -> Z_modulus (``modulus`` must divide)."""
        if self.modulus % modulus:
            raise ComponentMismatch(f"{modulus} does not divide {self.modulus}")
        if modulus == self.modulus:
            return self
        return MatZ._wrap(modulus, self.entries.astype(object) % modulus, copy=False)

    def lift(self, modulus: int) -> "MatZ":
        """Carry the canonical representatives to a multiple modulus."""
        if modulus % self.modulus:
            raise ComponentMismatch(f"{self.modulus} does not divide {modulus}")
        if modulus == self.modulus:
            return self
        return MatZ._wrap(modulus, self.entries.astype(object))

    # --- operators ---
    def __add__(self, other: "MatZ") -> "MatZ":
        return mat_add(self, other)

    def __sub__(self, other: "MatZ") -> "MatZ":
        return mat_sub(self, other)

    def __matmul__(self, other: "MatZ") -> "MatZ":
        return mat_mul(self, other)

    def __neg__(self) -> "MatZ":
        return MatZ._wrap(self.modulus, (-self.entries) % self.modulus, copy=False)

    def __pow__(self, e: int) -> "MatZ":
        return mat_pow(self, e)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatZ):
            return NotImplemented
        return (
            self.modulus == other.modulus
            and self.dim == other.dim
            and bool((self.entries == other.entries).all())
        )

    def __hash__(self) -> int:
        return hash((self.modulus, tuple(map(tuple, self.to_rows()))))

    def __repr__(self) -> str:
        return f"MatZ({self.modulus}, {self.to_rows()})"


def _is_int(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _check_same(a: MatZ, b: MatZ) -> None:
    if a.modulus != b.modulus or a.dim != b.dim:
        raise ShapeMismatch(
            f"{SHAPE_MISMATCH}: ({a.modulus}, {a.dim}) vs ({b.modulus}, {b.dim})"
        )


def mat_add(a: MatZ, b: MatZ) -> MatZ:
    _check_same(a, b)
    return MatZ._wrap(a.modulus, (a.entries + b.entries) % a.modulus, copy=False)


def mat_sub(a: MatZ, b: MatZ) -> MatZ:
    _check_same(a, b)
    return MatZ._wrap(a.modulus, (a.entries - b.entries) % a.modulus, copy=False)


def mat_mul(a: MatZ, b: MatZ) -> MatZ:
    _check_same(a, b)
    return MatZ._wrap(a.modulus, (a.entries @ b.entries) % a.modulus, copy=False)


def mat_scale(a: MatZ, c: int) -> MatZ:
    return MatZ._wrap(a.modulus, (a.entries * (c % a.modulus)) % a.modulus, copy=False)


def mat_pow(a: MatZ, e: int) -> MatZ:
    """``a**e`` by repeated squaring; ``a**0`` is the identity."""
    if e < 0:
        raise ValueError(f"exponent must be >= 0, got {e}")
    result = MatZ.identity(a.modulus, a.dim)
    base = a
    while e:
        if e & 1:
            result = mat_mul(result, base)
        e >>= 1
        if e:
            base = mat_mul(base, base)
    return result


# --- structural predicates ---
def is_tripotent(a: MatZ) -> bool:
    return mat_mul(mat_mul(a, a), a) == a


def is_idempotent(a: MatZ) -> bool:
    return mat_mul(a, a) == a


def is_nilpotent(a: MatZ) -> bool:
    """True iff ``a`` mod p is nilpotent for every prime p dividing the modulus.

    Raises
    ------
    UnsupportedModulus
        If the modulus is outside the 2-3-5 family.
    """
    mod = factor_modulus(a.modulus)
    return all(mat_pow(a.reduce(p), a.dim).is_zero() for p in mod.primes)


def nilpotency_ceiling(modulus: int, dim: int) -> int:
    """``dim * floor(log2 modulus)``: every nilpotent over Z_modulus has index at most this."""
    return dim * (modulus.bit_length() - 1)


def nilpotency_index(a: MatZ, bound: int) -> Optional[int]:
    """Least ``j`` in ``1..bound`` with ``a**j == 0``, or ``None``.

    The scan never runs past :func:`nilpotency_ceiling`, so an oversized
    ``bound`` costs nothing extra.
    """
    power = a
    for j in range(1, min(bound, nilpotency_ceiling(a.modulus, a.dim)) + 1):
        if power.is_zero():
            return j
        power = mat_mul(power, a)
    return None


def is_upper_triangular(a: MatZ) -> bool:
    return not np.any(np.tril(a.entries, -1))


def is_diagonal(a: MatZ) -> bool:
    return is_upper_triangular(a) and not np.any(np.triu(a.entries, 1))


# --- CRT at matrix level ---
def crt_split_matrix(a: MatZ, mod: Modulus) -> list[MatZ]:
    if a.modulus != mod.n:
        raise ComponentMismatch(f"matrix is mod {a.modulus}, expected mod {mod.n}")
    return [a.reduce(q) for q in mod.prime_powers]


def crt_combine_matrix(parts: Sequence[MatZ], mod: Modulus) -> MatZ:
    check_components([p.modulus for p in parts], mod)
    dims = {p.dim for p in parts}
    if len(dims) != 1:
        raise ShapeMismatch(f"component dimensions differ: {sorted(dims)}")
    if len(parts) == 1:
        return parts[0]
    total = sum(
        (p.entries.astype(object) * w for p, w in zip(parts, crt_weights(mod))),
        start=np.zeros((dims.pop(),) * 2, dtype=object),
    )
    return MatZ._wrap(mod.n, total % mod.n)


def direct_sum(blocks: Iterable[MatZ]) -> MatZ:
    """Block-diagonal matrix with ``blocks`` along the diagonal."""
    blocks = list(blocks)
    if not blocks:
        raise EmptyInput("direct_sum needs at least one block")
    modulus = blocks[0].modulus
    if any(b.modulus != modulus for b in blocks):
        raise ShapeMismatch("direct_sum blocks must share a modulus")
    if len(blocks) == 1:
        return blocks[0]
    size = sum(b.dim for b in blocks)
    out = np.zeros((size, size), dtype=_dtype_for(modulus, size))
    offset = 0
    for b in blocks:
        out[offset : offset + b.dim, offset : offset + b.dim] = b.entries
        offset += b.dim
    return MatZ._wrap(modulus, out, copy=False)


# --- inversion and determinants ---
def _invert_prime_power(a: MatZ, p: int) -> MatZ:
    m, n = a.modulus, a.dim
    work = np.concatenate(
        [a.entries.astype(object), np.identity(n, dtype=np.int64).astype(object)], axis=1
    )
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r, col] % p), None)
        if pivot is None:
            raise NotAUnit(f"matrix is singular mod {p} (column {col} has no unit pivot)")
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
        work[col] = work[col] * inverse_mod(work[col, col], m) % m
        for r in range(n):
            factor = work[r, col]
            if r != col and factor:
                work[r] = (work[r] - factor * work[col]) % m
    return MatZ._wrap(m, work[:, n:])


def invert_unit_matrix(a: MatZ) -> MatZ:
    """Exact inverse over Z_m using unit pivots.

    Composite moduli are handled component-wise through the CRT.

    Raises
    ------
    NotAUnit
        If ``det(a)`` vanishes mod some prime dividing the modulus.
    """
    mod = factor_modulus(a.modulus)
    if len(mod.components) == 1:
        return _invert_prime_power(a, mod.primes[0])
    parts = [
        _invert_prime_power(part, p)
        for part, p in zip(crt_split_matrix(a, mod), mod.primes)
    ]
    return crt_combine_matrix(parts, mod)


def det_mod_p(a: MatZ, p: int) -> int:
    """Determinant of ``a`` reduced mod the prime ``p``."""
    work = a.reduce(p).entries.astype(object)
    n = a.dim
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r, col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
            det = -det
        det = det * work[col, col] % p
        inv = inverse_mod(work[col, col], p)
        for r in range(col + 1, n):
            if work[r, col]:
                work[r] = (work[r] - work[r, col] * inv * work[col]) % p
    return det % p


# --- text format ---
def parse_matrix_text(text: str) -> MatZ:
    """Parse ``"n d"`` followed by ``d`` rows of ``d`` integers.

    A ``/`` is accepted as a row separator so one-line inputs such as
    ``"3 2 / 0 1 / 1 0"`` work.
    """
    lines = [ln.split() for ln in text.replace("/", "\n").splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise MalformedInput("first line must be 'n d'")
    try:
        n, d = (int(tok) for tok in lines[0])
        rows = [[int(tok) for tok in line] for line in lines[1:]]
    except ValueError as exc:
        raise MalformedInput(f"non-integer token: {exc}") from exc
    if n < 2 or d < 1:
        raise MalformedInput(f"need n >= 2 and d >= 1, got n={n}, d={d}")
    if len(rows) != d or any(len(r) != d for r in rows):
        raise MalformedInput(f"expected {d} rows of {d} integers")
    return MatZ(n, rows)


def format_matrix_text(a: MatZ) -> str:
    body = "\n".join(" ".join(str(x) for x in row) for row in a.to_rows())
    return f"{a.modulus} {a.dim}\n{body}\n"


__all__ = [
    "MatZ",
    "mat_add",
    "mat_sub",
    "mat_mul",
    "mat_scale",
    "mat_pow",
    "is_tripotent",
    "is_idempotent",
    "is_nilpotent",
    "nilpotency_index",
    "nilpotency_ceiling",
    "is_upper_triangular",
    "is_diagonal",
    "crt_split_matrix",
    "crt_combine_matrix",
    "direct_sum",
    "invert_unit_matrix",
    "det_mod_p",
    "parse_matrix_text",
    "format_matrix_text",
]
