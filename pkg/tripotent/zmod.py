"""Exact residue arithmetic over Z_n and CRT for n = 2^k * 3^l * 5^m.

Components are always ordered by ascending prime (2-part, 3-part, 5-part)
and absent primes are skipped, so ``crt_split`` of a residue mod 45 yields
two components (mod 9, mod 5).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

from .errors import ComponentMismatch, NotAUnit, UnsupportedModulus

FAMILY_PRIMES = (2, 3, 5)
MAX_MODULUS = 2**63


@dataclass(frozen=True)
class Modulus:
    """A modulus n = 2^k * 3^l * 5^m with its exponents."""

    n: int
    k: int
    l: int  # noqa: E741
    m: int

    def __post_init__(self) -> None:
        if 2**self.k * 3**self.l * 5**self.m != self.n or self.n < 2:
            raise ComponentMismatch(
                f"exponents ({self.k}, {self.l}, {self.m}) do not factor {self.n}"
            )

    @property
    def exponents(self) -> tuple[int, int, int]:
        return (self.k, self.l, self.m)

    @cached_property
    def components(self) -> tuple[tuple[int, int, int], ...]:
        """``(p, e, p**e)`` for each present prime, in ascending order."""
        return tuple(
            (p, e, p**e) for p, e in zip(FAMILY_PRIMES, self.exponents) if e > 0
        )

    @cached_property
    def prime_powers(self) -> tuple[int, ...]:
        return tuple(q for _, _, q in self.components)

    @cached_property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _, _ in self.components)

    @property
    def max_exponent(self) -> int:
        return max(self.exponents)


@dataclass(frozen=True)
class Residue:
    """Canonical representative of a class in Z_modulus."""

    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _check(self, other: "Residue") -> None:
        if other.modulus != self.modulus:
            raise ComponentMismatch(
                f"cannot mix residues mod {self.modulus} and mod {other.modulus}"
            )

    def __add__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value + other.value, self.modulus)

    def __sub__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value - other.value, self.modulus)

    def __mul__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value * other.value, self.modulus)

    def __neg__(self) -> "Residue":
        return Residue(-self.value, self.modulus)

    def __pow__(self, e: int) -> "Residue":
        base = self.value
        if e < 0:
            base, e = inverse_mod(base, self.modulus), -e
        return Residue(pow(base, e, self.modulus), self.modulus)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return f"{self.value} mod {self.modulus}"


def inverse_mod(a: int, m: int) -> int:
    """Inverse of ``a`` modulo ``m``; raises :class:`NotAUnit` if none exists."""
    try:
        return pow(a % m, -1, m)
    except ValueError:
        raise NotAUnit(f"{a % m} is not a unit mod {m}") from None


def _smallest_foreign_prime(n: int) -> int:
    d = 7
    while d * d <= n:
        if n % d == 0:
            return d
        d += 2
    return n


@lru_cache(maxsize=256)
def factor_modulus(n: int) -> Modulus:
    """Factor ``n`` as 2^k * 3^l * 5^m.

    Raises
    ------
    UnsupportedModulus
        If ``n`` has another prime factor, is below 2, or does not fit a
        64-bit machine word.
    """
    if n < 2:
        raise UnsupportedModulus(n, message="modulus must be at least 2")
    if n >= MAX_MODULUS:
        raise UnsupportedModulus(n, message="modulus must fit in 63 bits")
    exps = []
    rest = n
    for p in FAMILY_PRIMES:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        exps.append(e)
    if rest != 1:
        raise UnsupportedModulus(n, _smallest_foreign_prime(rest))
    return Modulus(n, *exps)


def crt_split(a: Residue, mod: Modulus) -> list[Residue]:
    """Reduce ``a`` modulo each prime-power component of ``mod``."""
    if a.modulus != mod.n:
        raise ComponentMismatch(f"residue is mod {a.modulus}, expected mod {mod.n}")
    return [Residue(a.value, q) for q in mod.prime_powers]


def crt_weights(mod: Modulus) -> tuple[int, ...]:
    """Idempotent basis e_i of Z_n with e_i = 1 mod q_i and 0 mod q_j, j != i."""
    weights = []
    for q in mod.prime_powers:
        cofactor = mod.n // q
        weights.append(cofactor * inverse_mod(cofactor, q) % mod.n)
    return tuple(weights)


def check_components(moduli: Sequence[int], mod: Modulus) -> None:
    if tuple(moduli) != mod.prime_powers:
        raise ComponentMismatch(
            f"component moduli {tuple(moduli)} do not match {mod.prime_powers} "
            f"for modulus {mod.n}"
        )


def crt_combine(components: Sequence[Residue], mod: Modulus) -> Residue:
    """Recombine per-component residues into the unique residue mod ``mod.n``."""
    check_components([c.modulus for c in components], mod)
    total = sum(c.value * w for c, w in zip(components, crt_weights(mod)))
    return Residue(total, mod.n)


__all__ = [
    "FAMILY_PRIMES",
    "Modulus",
    "Residue",
    "inverse_mod",
    "factor_modulus",
    "crt_split",
    "crt_combine",
    "crt_weights",
    "check_components",
]
