"""Case tables splitting one companion block into ``E1 + E2 + W``.

``E1`` carries the block's last column with its bottom entry replaced by
``+1`` or ``-1``, ``E2`` is zero except possibly for the corner entry, and
``W`` is the subdiagonal shift. ``E1^2 = b * E1`` where ``b`` is the bottom
entry, so ``E1`` is tripotent whenever ``b = +-1``; over F_2 both ``E1`` and
``E2`` are idempotent.
"""
from __future__ import annotations

from typing import NamedTuple, Optional

import numpy as np

from .matz import MatZ
from .profiles import prime_profile
from .rcf import CompanionBlock


class CompanionSplit(NamedTuple):
    e1: MatZ
    e2: MatZ
    w: MatZ

    @property
    def idempotent(self) -> bool:
        """True when both parts are idempotent (characteristic 2)."""
        return self.w.modulus == 2

    @property
    def case(self) -> Optional[str]:
        """Case label read back from the (bottom, corner) entries, if any."""
        n = self.w.dim
        key = (int(self.e1.entries[n - 1, n - 1]), int(self.e2.entries[n - 1, n - 1]))
        cases = prime_profile(self.w.modulus)["companion_cases"].values()
        return next((label for label, *entries in cases if tuple(entries) == key), None)


def shift_matrix(p: int, n: int) -> MatZ:
    """Strict subdiagonal shift of size ``n`` over F_p."""
    return MatZ._wrap(p, np.eye(n, k=-1, dtype=np.int64), copy=False)


def case_label(block: CompanionBlock) -> str:
    """Roman-numeral case dispatched for ``block`` (by ``c_{n-1}``)."""
    return prime_profile(block.p)["companion_cases"][block.c[-1]][0]


def decompose_companion(block: CompanionBlock) -> CompanionSplit:
    """Split the companion matrix of ``block`` into two tripotents and a shift."""
    p, n = block.p, block.dim
    _, bottom, corner = prime_profile(p)["companion_cases"][block.c[-1]]

    e1 = np.zeros((n, n), dtype=np.int64)
    e1[:, n - 1] = block.c
    e1[n - 1, n - 1] = bottom

    e2 = np.zeros((n, n), dtype=np.int64)
    e2[n - 1, n - 1] = corner

    return CompanionSplit(
        MatZ._wrap(p, e1, copy=False), MatZ._wrap(p, e2, copy=False), shift_matrix(p, n)
    )


__all__ = ["CompanionSplit", "decompose_companion", "shift_matrix", "case_label"]
