"""Lift idempotents mod 2 and tripotents mod p (p = 3, 5) to Z_{p^e}.

Both iterations converge quadratically in the p-adic filtration: after ``i``
rounds the defect (``E^2 - E`` or ``T^3 - T``) is divisible by ``p^(2^i)``,
so ``ceil(log2 e) + 1`` rounds reach an exact solution. The loop stops early
once the defect vanishes, so exact inputs come back unchanged. Every iterate
is a polynomial in the input, so all factors commute.
"""
from __future__ import annotations

from typing import Callable, Optional

from .errors import (
    InvariantViolation,
    JacobianNotUnit,
    NotAUnit,
    NotApproxIdempotent,
    NotApproxTripotent,
    UnsupportedModulus,
)
from .logging import get_logger
from .matz import (
    MatZ,
    invert_unit_matrix,
    is_idempotent,
    is_tripotent,
    mat_mul,
    mat_scale,
)
from .profiles import prime_profile
from .zmod import FAMILY_PRIMES, Modulus, factor_modulus

logger = get_logger()

StepHook = Callable[[int, MatZ], None]


def iteration_count(e: int) -> int:
    """``ceil(log2 e) + 1`` rounds for a target exponent ``e``."""
    return (e - 1).bit_length() + 1


def _prime_power(a: MatZ, p: int) -> Modulus:
    mod = factor_modulus(a.modulus)
    if mod.primes != (p,):
        raise UnsupportedModulus(
            a.modulus, message=f"lifting needs a power of {p}"
        )
    return mod


def lift_idempotent(e0: MatZ, on_step: Optional[StepHook] = None) -> MatZ:
    """Lift ``e0`` (idempotent mod 2) to an exact idempotent over Z_{2^k}.

    Raises
    ------
    NotApproxIdempotent
        If ``e0^2 != e0`` mod 2.
    """
    mod = _prime_power(e0, 2)
    if not is_idempotent(e0.reduce(2)):
        raise NotApproxIdempotent(f"input is not idempotent mod 2: {e0}")
    if e0.modulus == 2:
        return e0
    e = e0
    for i in range(1, iteration_count(mod.k) + 1):
        sq = mat_mul(e, e)
        if sq == e:
            break
        e = mat_scale(sq, 3) - mat_scale(mat_mul(sq, e), 2)
        if on_step is not None:
            on_step(i, e)
    if not is_idempotent(e) or e.reduce(2) != e0.reduce(2):
        raise InvariantViolation(f"idempotent lift failed to converge for {e0}")
    return e


def lift_tripotent(
    t0: MatZ, p: Optional[int] = None, on_step: Optional[StepHook] = None
) -> MatZ:
    """Lift ``t0`` (tripotent mod p, p odd) to an exact tripotent over Z_{p^e}.

    Newton step ``T <- T - (3T^2 - I)^-1 (T^3 - T)``; the Jacobian is a unit
    because ``T`` mod p is diagonalizable with eigenvalues in ``{0, 1, -1}``.

    Raises
    ------
    NotApproxTripotent
        If ``t0^3 != t0`` mod p.
    JacobianNotUnit
        If the Jacobian is singular (unreachable when the input is valid).
    """
    if p is None:
        p = factor_modulus(t0.modulus).primes[0]
    if p == 2:
        raise UnsupportedModulus(
            t0.modulus, message="tripotent lifting needs an odd prime"
        )
    mod = _prime_power(t0, p)
    if not is_tripotent(t0.reduce(p)):
        raise NotApproxTripotent(f"input is not tripotent mod {p}: {t0}")
    if t0.modulus == p:
        return t0
    eye = MatZ.identity(t0.modulus, t0.dim)
    t = t0
    for i in range(1, iteration_count(mod.exponents[FAMILY_PRIMES.index(p)]) + 1):
        sq = mat_mul(t, t)
        defect = mat_mul(sq, t) - t
        if defect.is_zero():
            break
        try:
            jac_inv = invert_unit_matrix(mat_scale(sq, 3) - eye)
        except NotAUnit as exc:
            raise JacobianNotUnit(f"3T^2 - I is singular mod {p}") from exc
        t = t - mat_mul(jac_inv, defect)
        if on_step is not None:
            on_step(i, t)
    if not is_tripotent(t) or t.reduce(p) != t0.reduce(p):
        raise InvariantViolation(f"tripotent lift failed to converge for {t0}")
    return t


def lift_for_prime(t0: MatZ, p: int) -> MatZ:
    """Dispatch on the prime's lift route (idempotent for 2, tripotent else)."""
    route = prime_profile(p)["lift"]
    lifted = lift_idempotent(t0) if route == "idempotent" else lift_tripotent(t0, p)
    logger.debug(
        "Lifted %s mod %d.",
        route,
        p,
        extra={"modulus": t0.modulus, "dim": t0.dim, "stage": "lift"},
    )
    return lifted


__all__ = ["lift_idempotent", "lift_tripotent", "lift_for_prime", "iteration_count"]
