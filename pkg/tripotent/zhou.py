"""Two tripotents plus a nilpotent: matrices over Z_n, scalars, T_s(Z_n).

Pipeline for a matrix ``A`` over Z_n, per prime-power component ``p^e``:

1. reduce the component mod p;
2. Frobenius form ``P * C * P^-1`` over F_p;
3. split each companion block with the case tables;
4. conjugate the assembled splits back: ``E_i = P * (+) E_i(block) * P^-1``;
5. lift ``E_i`` to Z_{p^e} (idempotent route at 2, Newton at 3 and 5);
6. the nilpotent part is whatever is left, ``A - T1 - T2``.

Components are recombined with the CRT. A block whose coefficients are all
zero is already nilpotent and contributes nothing to the tripotent parts.
"""
from __future__ import annotations

import asyncio
import time
from dataclasses import dataclass
from typing import Optional

from .certificates import Certificate
from .companion import CompanionSplit, decompose_companion, shift_matrix
from .errors import (
    NotUpperTriangular,
    ShapeMismatch,
    UnsupportedModulus,
    VerificationFailed,
)
from .lift import lift_for_prime
from .logging import get_logger
from .matz import (
    MatZ,
    crt_combine_matrix,
    crt_split_matrix,
    direct_sum,
    is_nilpotent,
    is_tripotent,
    is_upper_triangular,
    mat_mul,
    mat_pow,
    mat_sub,
    nilpotency_index,
)
from .profiles import prime_profile
from .rcf import CompanionBlock, frobenius_form
from .zmod import Modulus, Residue, crt_split, factor_modulus

logger = get_logger()


@dataclass(frozen=True)
class Decomposition:
    """``t1 + t2 + nil`` with ``t_i^3 = t_i`` and ``nil^bound = 0``."""

    t1: MatZ
    t2: MatZ
    nil: MatZ
    modulus: int
    nilpotency_index_bound: int

    @property
    def dim(self) -> int:
        return self.t1.dim

    def as_certificate(self, verified: bool) -> Certificate:
        return Certificate(
            modulus=self.modulus,
            dim=self.dim,
            t1=self.t1.to_rows(),
            t2=self.t2.to_rows(),
            nil=self.nil.to_rows(),
            nil_index_bound=self.nilpotency_index_bound,
            verified=verified,
        )


@dataclass(frozen=True)
class VerifyReport:
    sum_ok: bool
    t1_tripotent: bool
    t2_tripotent: bool
    n_nilpotent: bool
    observed_nil_index: Optional[int]

    @property
    def ok(self) -> bool:
        return self.sum_ok and self.t1_tripotent and self.t2_tripotent and self.n_nilpotent


def _split_block(block: CompanionBlock) -> CompanionSplit:
    if any(block.c):
        return decompose_companion(block)
    zero = MatZ.zeros(block.p, block.dim)
    return CompanionSplit(zero, zero, shift_matrix(block.p, block.dim))


def _conjugate(p_mat: MatZ, middle: MatZ, p_inv: MatZ) -> MatZ:
    return mat_mul(mat_mul(p_mat, middle), p_inv)


def _decompose_component(part: MatZ, p: int) -> tuple[MatZ, MatZ]:
    """Tripotent pair for one prime-power component ``part`` over Z_{p^e}."""
    start = time.perf_counter()
    form = frobenius_form(part.reduce(p))
    splits = [_split_block(b) for b in form.blocks]
    e1 = _conjugate(form.P, direct_sum(s.e1 for s in splits), form.Pinv)
    e2 = _conjugate(form.P, direct_sum(s.e2 for s in splits), form.Pinv)
    t1 = lift_for_prime(e1.lift(part.modulus), p)
    t2 = lift_for_prime(e2.lift(part.modulus), p)
    logger.debug(
        "Component decomposed with %d block(s).",
        len(splits),
        extra={
            "modulus": part.modulus,
            "dim": part.dim,
            "stage": "component",
            "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
        },
    )
    return t1, t2


def _assemble(
    a: MatZ, mod: Modulus, pairs: list[tuple[MatZ, MatZ]]
) -> Decomposition:
    t1 = crt_combine_matrix([t for t, _ in pairs], mod)
    t2 = crt_combine_matrix([t for _, t in pairs], mod)
    nil = mat_sub(mat_sub(a, t1), t2)
    return Decomposition(t1, t2, nil, mod.n, a.dim * mod.max_exponent)


def decompose_matrix(a: MatZ) -> Decomposition:
    """Write ``a`` as two tripotents plus a nilpotent over Z_n.

    Raises
    ------
    UnsupportedModulus
        If ``n`` is not of the form 2^k * 3^l * 5^m.
    """
    mod = factor_modulus(a.modulus)
    pairs = [
        _decompose_component(part, p)
        for part, p in zip(crt_split_matrix(a, mod), mod.primes)
    ]
    return _assemble(a, mod, pairs)


async def async_decompose_matrix(a: MatZ) -> Decomposition:
    """Same result as :func:`decompose_matrix`, components run concurrently."""
    mod = factor_modulus(a.modulus)
    pairs = await asyncio.gather(
        *(
            asyncio.to_thread(_decompose_component, part, p)
            for part, p in zip(crt_split_matrix(a, mod), mod.primes)
        )
    )
    return _assemble(a, mod, list(pairs))


def decompose_scalar(a: Residue) -> Decomposition:
    """Decompose an element of Z_n as a 1x1 matrix."""
    mod = factor_modulus(a.modulus)
    pairs = []
    for comp, (p, _, q) in zip(crt_split(a, mod), mod.components):
        r1, r2 = prime_profile(p)["scalar_pairs"][comp.value % p]
        pairs.append(
            (
                lift_for_prime(MatZ(q, [[r1]]), p),
                lift_for_prime(MatZ(q, [[r2]]), p),
            )
        )
    return _assemble(MatZ(mod.n, [[a.value]]), mod, pairs)


def decompose_triangular(a: MatZ) -> Decomposition:
    """Decompose an element of T_s(Z_n) with diagonal tripotents.

    Raises
    ------
    NotUpperTriangular
        If ``a`` has a nonzero entry below the diagonal.
    UnsupportedModulus
        If ``n`` is not of the form 2^k * 3^l * 5^m.
    """
    mod = factor_modulus(a.modulus)
    if not is_upper_triangular(a):
        raise NotUpperTriangular(f"matrix has entries below the diagonal: {a}")
    scalars = [decompose_scalar(Residue(int(x), mod.n)) for x in a.entries.diagonal()]
    t1 = MatZ.diagonal(mod.n, [int(d.t1.entries[0, 0]) for d in scalars])
    t2 = MatZ.diagonal(mod.n, [int(d.t2.entries[0, 0]) for d in scalars])
    nil = mat_sub(mat_sub(a, t1), t2)
    return Decomposition(t1, t2, nil, mod.n, a.dim * mod.max_exponent)


def _nilpotent_criterion(nil: MatZ) -> bool:
    try:
        return is_nilpotent(nil)
    except UnsupportedModulus:
        # Outside the family only the powering check in verify applies.
        return True


def verify(a: MatZ, d: Decomposition) -> VerifyReport:
    """Check a decomposition of ``a`` from scratch."""
    for m in (d.t1, d.t2, d.nil):
        if m.modulus != a.modulus or m.dim != a.dim or d.modulus != a.modulus:
            raise ShapeMismatch(
                f"decomposition is ({m.modulus}, {m.dim}), input is ({a.modulus}, {a.dim})"
            )
    observed = nilpotency_index(d.nil, d.nilpotency_index_bound)
    return VerifyReport(
        sum_ok=(d.t1 + d.t2 + d.nil) == a,
        t1_tripotent=is_tripotent(d.t1),
        t2_tripotent=is_tripotent(d.t2),
        n_nilpotent=observed is not None and _nilpotent_criterion(d.nil),
        observed_nil_index=observed,
    )


def certify(a: MatZ, d: Decomposition) -> Certificate:
    """Verify ``d`` and return its certificate.

    Raises
    ------
    VerificationFailed
        If any part of the report is false.
    """
    report = verify(a, d)
    if not report.ok:
        raise VerificationFailed(f"decomposition of {a} failed verification: {report}")
    return d.as_certificate(verified=True)


# --- element-level criteria ---
def quintic_criterion(n: int) -> bool:
    """True iff ``a - a^5`` is nilpotent in Z_n for every ``a``.

    Uses plain powering only, so it does not depend on the modulus gate.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    e = n.bit_length()
    return all(pow((a - pow(a, 5, n)) % n, e, n) == 0 for a in range(n))


def triangular_quintic_defect_nilpotent(a: MatZ) -> bool:
    """For ``a`` in T_s(Z_n): is ``a - a^5`` nilpotent?"""
    if not is_upper_triangular(a):
        raise NotUpperTriangular(f"matrix has entries below the diagonal: {a}")
    return is_nilpotent(mat_sub(a, mat_pow(a, 5)))


__all__ = [
    "Decomposition",
    "VerifyReport",
    "decompose_matrix",
    "async_decompose_matrix",
    "decompose_scalar",
    "decompose_triangular",
    "verify",
    "certify",
    "quintic_criterion",
    "triangular_quintic_defect_nilpotent",
]
