"""Brute-force ground truth for small instances.

Everything here is a plain scan: tripotents are found by cubing every
candidate matrix, and nilpotency is tested by powering, never by the mod-p
criterion the main pipeline relies on. Candidates are enumerated in
lexicographic order of their row-major entries.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import BudgetExceeded
from .logging import get_logger
from .matz import MatZ, nilpotency_ceiling
from .settings import get_settings
from .zhou import Decomposition

logger = get_logger()

_CHUNK = 1 << 16
_INT64_MAX = 2**63 - 1


def _budget(budget: Optional[int]) -> int:
    return get_settings().oracle_budget if budget is None else budget


def _check_budget(modulus: int, dim: int, budget: Optional[int]) -> None:
    if modulus < 2 or dim < 1:
        raise ValueError(f"need modulus >= 2 and dim >= 1, got {modulus}, {dim}")
    limit = _budget(budget)
    candidates = modulus ** (dim * dim)
    if candidates > limit:
        raise BudgetExceeded(candidates, limit)


def _dtype(modulus: int, dim: int) -> type:
    return np.int64 if (modulus - 1) ** 2 * dim <= _INT64_MAX else object


def _batched_mul(a: np.ndarray, b: np.ndarray, modulus: int) -> np.ndarray:
    return np.matmul(a, b) % modulus


def _candidates(start: int, stop: int, modulus: int, dim: int) -> np.ndarray:
    """Matrices with lexicographic indices ``start..stop-1`` as a (B, d, d) stack."""
    size = dim * dim
    idx = np.array(range(start, stop), dtype=object)
    digits = np.empty((stop - start, size), dtype=_dtype(modulus, dim))
    for pos in range(size - 1, -1, -1):
        digits[:, pos] = idx % modulus
        idx = idx // modulus
    return digits.reshape(-1, dim, dim)


@lru_cache(maxsize=None)
def _tripotent_stack(modulus: int, dim: int) -> np.ndarray:
    total = modulus ** (dim * dim)
    found = []
    for start in range(0, total, _CHUNK):
        batch = _candidates(start, min(start + _CHUNK, total), modulus, dim)
        cube = _batched_mul(_batched_mul(batch, batch, modulus), batch, modulus)
        found.append(batch[(cube == batch).all(axis=(1, 2))])
    stack = np.concatenate(found)
    stack.setflags(write=False)
    logger.debug(
        "Enumerated %d tripotents out of %d candidates.",
        len(stack),
        total,
        extra={"modulus": modulus, "dim": dim, "stage": "oracle"},
    )
    return stack


def enumerate_tripotents(
    modulus: int, dim: int, budget: Optional[int] = None
) -> list[MatZ]:
    """Every ``M`` with ``M^3 = M`` in M_dim(Z_modulus), lexicographically.

    Raises
    ------
    BudgetExceeded
        If ``modulus^(dim^2)`` exceeds the budget.
    """
    _check_budget(modulus, dim, budget)
    return [MatZ._wrap(modulus, m) for m in _tripotent_stack(modulus, dim)]


def count_tripotents(modulus: int, dim: int, budget: Optional[int] = None) -> int:
    _check_budget(modulus, dim, budget)
    return len(_tripotent_stack(modulus, dim))


def nilpotency_bound(modulus: int, dim: int) -> int:
    """Powering depth used by the scan; see :func:`nilpotency_ceiling`."""
    return nilpotency_ceiling(modulus, dim)


def _nilpotent_mask(stack: np.ndarray, modulus: int, bound: int) -> np.ndarray:
    power = stack
    reached = 1
    while reached < bound:
        power = _batched_mul(power, power, modulus)
        reached *= 2
    return ~power.any(axis=(1, 2))


def oracle_decompose(a: MatZ, budget: Optional[int] = None) -> Optional[Decomposition]:
    """Lexicographically first ``(T1, T2)`` with ``a - T1 - T2`` nilpotent.

    Returns ``None`` when no pair exists. Works for any modulus.

    Raises
    ------
    BudgetExceeded
        If ``a.modulus^(a.dim^2)`` exceeds the budget.
    """
    m, d = a.modulus, a.dim
    _check_budget(m, d, budget)
    tripotents = _tripotent_stack(m, d)
    bound = nilpotency_bound(m, d)
    target = a.entries.astype(tripotents.dtype)
    for t1 in tripotents:
        rest = (target - t1 - tripotents) % m
        hits = np.flatnonzero(_nilpotent_mask(rest, m, bound))
        if hits.size:
            t2 = tripotents[hits[0]]
            return Decomposition(
                MatZ._wrap(m, t1),
                MatZ._wrap(m, t2),
                MatZ._wrap(m, rest[hits[0]]),
                m,
                bound,
            )
    logger.info("No decomposition found.", extra={"modulus": m, "dim": d, "stage": "oracle"})
    return None


__all__ = [
    "enumerate_tripotents",
    "count_tripotents",
    "oracle_decompose",
    "nilpotency_bound",
]
