"""Rational (Frobenius) canonical form over F_2, F_3 and F_5.

``frobenius_form`` returns a similarity certificate ``A = P * C * P^-1`` where
``C`` is a direct sum of companion matrices. Each block comes from a Krylov
chain started at a maximal vector (one whose local minimal polynomial is the
minimal polynomial of the matrix), which always admits an invariant
complement; the complement is split off and the procedure recurses. The
blocks therefore appear as the invariant factors, largest first.

``char_poly`` is computed independently through Hessenberg reduction and is
only used as a cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    ComponentMismatch,
    DivisionByZeroPoly,
    EmptyInput,
    InvariantViolation,
    NotAUnit,
)
from .logging import get_logger
from .matz import MatZ, direct_sum, mat_mul
from .profiles import prime_profile
from .zmod import inverse_mod

logger = get_logger()


# --- polynomials over F_p ---
@dataclass(frozen=True)
class PolyFp:
    """Polynomial over F_p, coefficients lowest degree first, no trailing zeros."""

    p: int
    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        cs = [int(c) % self.p for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_coeffs(cls, p: int, coeffs: Sequence[int]) -> "PolyFp":
        return cls(p, tuple(coeffs))

    @classmethod
    def x(cls, p: int) -> "PolyFp":
        return cls(p, (0, 1))

    @classmethod
    def one(cls, p: int) -> "PolyFp":
        return cls(p, (1,))

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "PolyFp") -> "PolyFp":
        return poly_add(self, other)

    def __sub__(self, other: "PolyFp") -> "PolyFp":
        return poly_sub(self, other)

    def __mul__(self, other: "PolyFp") -> "PolyFp":
        return poly_mul(self, other)

    def __divmod__(self, other: "PolyFp") -> tuple["PolyFp", "PolyFp"]:
        return poly_divmod(self, other)

    def __str__(self) -> str:
        terms = []
        for k, c in reversed(list(enumerate(self.coeffs))):
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            coef = str(c) if (c != 1 or k == 0) else ""
            terms.append(f"{coef}{mono}")
        return " + ".join(terms) or "0"


def _same_field(f: PolyFp, g: PolyFp) -> int:
    if f.p != g.p:
        raise ComponentMismatch(f"polynomials over F_{f.p} and F_{g.p}")
    return f.p


def poly_add(f: PolyFp, g: PolyFp) -> PolyFp:
    p = _same_field(f, g)
    size = max(len(f.coeffs), len(g.coeffs))
    a = f.coeffs + (0,) * (size - len(f.coeffs))
    b = g.coeffs + (0,) * (size - len(g.coeffs))
    return PolyFp(p, tuple(x + y for x, y in zip(a, b)))


def poly_scale(f: PolyFp, c: int) -> PolyFp:
    return PolyFp(f.p, tuple(c * x for x in f.coeffs))


def poly_sub(f: PolyFp, g: PolyFp) -> PolyFp:
    return poly_add(f, poly_scale(g, -1))


def poly_mul(f: PolyFp, g: PolyFp) -> PolyFp:
    p = _same_field(f, g)
    if f.is_zero() or g.is_zero():
        return PolyFp(p)
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if a:
            for j, b in enumerate(g.coeffs):
                out[i + j] += a * b
    return PolyFp(p, tuple(out))


def poly_divmod(f: PolyFp, g: PolyFp) -> tuple[PolyFp, PolyFp]:
    """Return ``(q, r)`` with ``f = q*g + r`` and ``deg r < deg g``."""
    p = _same_field(f, g)
    if g.is_zero():
        raise DivisionByZeroPoly(f"cannot divide {f} by the zero polynomial")
    rem = list(f.coeffs)
    quot = [0] * max(len(rem) - len(g.coeffs) + 1, 0)
    inv = inverse_mod(g.leading, p)
    for shift in range(len(quot) - 1, -1, -1):
        c = rem[shift + g.degree] * inv % p
        quot[shift] = c
        if c:
            for j, b in enumerate(g.coeffs):
                rem[shift + j] = (rem[shift + j] - c * b) % p
    return PolyFp(p, tuple(quot)), PolyFp(p, tuple(rem))


def poly_monic(f: PolyFp) -> PolyFp:
    if f.is_zero():
        return f
    return poly_scale(f, inverse_mod(f.leading, f.p))


def poly_gcd(f: PolyFp, g: PolyFp) -> PolyFp:
    """Monic greatest common divisor (zero only when both inputs are zero)."""
    _same_field(f, g)
    while not g.is_zero():
        f, g = g, poly_divmod(f, g)[1]
    return poly_monic(f)


def poly_exact_div(f: PolyFp, g: PolyFp) -> PolyFp:
    q, r = poly_divmod(f, g)
    if not r.is_zero():
        raise InvariantViolation(f"{g} does not divide {f}")
    return q


def poly_divides(g: PolyFp, f: PolyFp) -> bool:
    return poly_divmod(f, g)[1].is_zero()


# --- companion blocks ---
@dataclass(frozen=True)
class CompanionBlock:
    """Companion matrix: 1s on the subdiagonal, last column ``(c_0..c_{n-1})``."""

    p: int
    c: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.c:
            raise EmptyInput("a companion block needs at least one coefficient")
        object.__setattr__(self, "c", tuple(int(x) % self.p for x in self.c))

    @property
    def dim(self) -> int:
        return len(self.c)

    def matrix(self) -> MatZ:
        n = self.dim
        arr = np.eye(n, k=-1, dtype=np.int64)
        arr[:, n - 1] = self.c
        return MatZ._wrap(self.p, arr, copy=False)

    def poly(self) -> PolyFp:
        """``x^n - c_{n-1} x^{n-1} - ... - c_0``."""
        return PolyFp(self.p, tuple(-ci for ci in self.c) + (1,))


@dataclass(frozen=True)
class FrobeniusForm:
    """Similarity certificate ``A = P * direct_sum(blocks) * Pinv`` over F_p."""

    P: MatZ
    Pinv: MatZ
    blocks: tuple[CompanionBlock, ...]

    def companion_matrix(self) -> MatZ:
        return direct_sum(b.matrix() for b in self.blocks)

    def reconstruct(self) -> MatZ:
        return mat_mul(mat_mul(self.P, self.companion_matrix()), self.Pinv)

    def block_polys(self) -> list[PolyFp]:
        return [b.poly() for b in self.blocks]


# --- characteristic polynomial (Hessenberg route) ---
def char_poly(a: MatZ) -> PolyFp:
    """Monic characteristic polynomial of ``a`` over F_p, p = ``a.modulus``."""
    p, n = a.modulus, a.dim
    h = a.to_rows()
    for m in range(1, n - 1):
        col = m - 1
        i = next((r for r in range(m, n) if h[r][col]), None)
        if i is None:
            continue
        if i != m:
            h[i], h[m] = h[m], h[i]
            for row in h:
                row[i], row[m] = row[m], row[i]
        inv = inverse_mod(h[m][col], p)
        for r in range(m + 1, n):
            u = h[r][col] * inv % p
            if not u:
                continue
            h[r] = [(x - u * y) % p for x, y in zip(h[r], h[m])]
            for row in h:
                row[m] = (row[m] + u * row[r]) % p

    polys = [PolyFp.one(p)]
    for m in range(1, n + 1):
        pm = poly_mul(PolyFp(p, (-h[m - 1][m - 1], 1)), polys[m - 1])
        t = 1
        for i in range(1, m):
            t = t * h[m - i][m - i - 1] % p
            pm = poly_sub(pm, poly_scale(polys[m - i - 1], t * h[m - i - 1][m - 1]))
        polys.append(pm)
    return polys[n]


# --- Krylov machinery over F_p (small primes, int64 is exact) ---
class _Echelon:
    """Incremental echelon basis that remembers how rows combine inserted vectors."""

    def __init__(self, p: int, n: int):
        self.p = p
        self.n = n
        self.rows: list[tuple[int, np.ndarray, np.ndarray]] = []

    def reduce(self, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Return ``(r, combo)`` with ``v = r + sum(combo[i] * inserted[i])``."""
        r = v % self.p
        combo = np.zeros(self.n, dtype=np.int64)
        for piv, vec, cmb in self.rows:
            f = r[piv]
            if f:
                r = (r - f * vec) % self.p
                combo = (combo + f * cmb) % self.p
        return r, combo

    def insert(self, r: np.ndarray, combo: np.ndarray) -> None:
        """Insert the vector whose reduction is ``(r, combo)``; ``r`` is nonzero."""
        piv = int(np.flatnonzero(r)[0])
        inv = inverse_mod(int(r[piv]), self.p)
        cmb = (-combo) % self.p
        cmb[len(self.rows)] = 1
        self.rows.append((piv, r * inv % self.p, cmb * inv % self.p))


def _krylov(a: np.ndarray, v: np.ndarray, p: int) -> tuple[list[np.ndarray], tuple[int, ...]]:
    """Krylov chain ``v, Av, ...`` and the coefficients of the first dependent power."""
    n = a.shape[0]
    ech = _Echelon(p, n)
    chain: list[np.ndarray] = []
    w = v % p
    while True:
        r, combo = ech.reduce(w)
        if not r.any():
            return chain, tuple(int(x) for x in combo[: len(chain)])
        ech.insert(r, combo)
        chain.append(w)
        w = a @ w % p


def _apply_poly(f: PolyFp, a: np.ndarray, v: np.ndarray) -> np.ndarray:
    r = np.zeros_like(v)
    for c in reversed(f.coeffs):
        r = (a @ r + c * v) % f.p
    return r


def _unit(n: int, i: int) -> np.ndarray:
    e = np.zeros(n, dtype=np.int64)
    e[i] = 1
    return e


def _vector_min_poly(a: np.ndarray, v: np.ndarray, p: int) -> PolyFp:
    _, c = _krylov(a, v, p)
    return CompanionBlock(p, c).poly() if c else PolyFp(p, (1,))


def _coprime_split(f: PolyFp, g: PolyFp) -> tuple[PolyFp, PolyFp]:
    """Coprime ``f' | f`` and ``g' | g`` with ``f' * g' = lcm(f, g)``."""
    s = poly_gcd(f, g)
    g1 = poly_exact_div(g, s)
    rest = g
    t = poly_gcd(rest, g1)
    while t.degree > 0:
        rest = poly_exact_div(rest, t)
        t = poly_gcd(rest, g1)
    g_part = poly_exact_div(g, rest)
    f_part = poly_exact_div(poly_mul(f, g1), g_part)
    return f_part, g_part


def _maximal_vector(a: np.ndarray, p: int) -> tuple[np.ndarray, PolyFp]:
    n = a.shape[0]
    v = _unit(n, 0)
    f = _vector_min_poly(a, v, p)
    for i in range(1, n):
        if f.degree == n:
            break
        e = _unit(n, i)
        g = _vector_min_poly(a, e, p)
        if poly_divides(g, f):
            continue
        f_part, g_part = _coprime_split(f, g)
        v = (
            _apply_poly(poly_exact_div(f, f_part), a, v)
            + _apply_poly(poly_exact_div(g, g_part), a, e)
        ) % p
        f = _vector_min_poly(a, v, p)
    return v, f


def _rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    r = m.copy() % p
    rows, cols = r.shape
    pivots: list[int] = []
    lead = 0
    for c in range(cols):
        if lead >= rows:
            break
        i = next((k for k in range(lead, rows) if r[k, c]), None)
        if i is None:
            continue
        r[[lead, i]] = r[[i, lead]]
        r[lead] = r[lead] * inverse_mod(int(r[lead, c]), p) % p
        for k in range(rows):
            if k != lead and r[k, c]:
                r[k] = (r[k] - r[k, c] * r[lead]) % p
        pivots.append(c)
        lead += 1
    return r, pivots


def _nullspace(m: np.ndarray, p: int) -> list[np.ndarray]:
    r, pivots = _rref(m, p)
    n = m.shape[1]
    basis = []
    for f in (j for j in range(n) if j not in pivots):
        x = _unit(n, f)
        for row, pc in enumerate(pivots):
            x[pc] = (-r[row, f]) % p
        basis.append(x)
    return basis


def _inverse(m: np.ndarray, p: int) -> np.ndarray:
    n = m.shape[0]
    r, pivots = _rref(np.concatenate([m, np.identity(n, dtype=np.int64)], axis=1), p)
    if pivots[:n] != list(range(n)):
        raise NotAUnit(f"basis matrix is singular mod {p}")
    return r[:, n:]


def _block_diag(top: int, rest: np.ndarray) -> np.ndarray:
    n = top + rest.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    out[:top, :top] = np.identity(top, dtype=np.int64)
    out[top:, top:] = rest
    return out


def _decompose(
    a: np.ndarray, p: int
) -> tuple[np.ndarray, np.ndarray, list[CompanionBlock]]:
    n = a.shape[0]
    v, _ = _maximal_vector(a, p)
    chain, c = _krylov(a, v, p)
    d = len(chain)
    block = CompanionBlock(p, c)
    k = np.stack(chain, axis=1)
    if d == n:
        return k, _inverse(k, p), [block]

    # Functional phi with phi(A^i v) = [i == d-1], read off an extended basis.
    ech = _Echelon(p, n)
    for w in chain:
        ech.insert(*ech.reduce(w))
    extras = []
    for i in range(n):
        r, combo = ech.reduce(_unit(n, i))
        if r.any():
            ech.insert(r, combo)
            extras.append(_unit(n, i))
    basis = np.concatenate([k, np.stack(extras, axis=1)], axis=1)
    phi = _inverse(basis, p)[d - 1]
    dual = [phi]
    for _ in range(d - 1):
        dual.append(dual[-1] @ a % p)
    complement = _nullspace(np.stack(dual), p)

    b2 = np.concatenate([k, np.stack(complement, axis=1)], axis=1)
    b2inv = _inverse(b2, p)
    reduced = b2inv @ a % p @ b2 % p
    if reduced[:d, d:].any() or reduced[d:, :d].any():
        raise InvariantViolation("complement of the Krylov chain is not invariant")
    sub_p, sub_pinv, sub_blocks = _decompose(reduced[d:, d:], p)
    big_p = b2 @ _block_diag(d, sub_p) % p
    big_pinv = _block_diag(d, sub_pinv) @ b2inv % p
    return big_p, big_pinv, [block, *sub_blocks]


def frobenius_form(a: MatZ) -> FrobeniusForm:
    """Similarity certificate reducing ``a`` over F_p to companion blocks.

    Raises
    ------
    UnsupportedModulus
        If ``a.modulus`` is not one of 2, 3, 5.
    """
    p = a.modulus
    prime_profile(p)
    big_p, big_pinv, blocks = _decompose(a.entries.astype(np.int64), p)
    form = FrobeniusForm(
        MatZ._wrap(p, big_p % p, copy=False),
        MatZ._wrap(p, big_pinv % p, copy=False),
        tuple(blocks),
    )
    if form.reconstruct() != a:
        raise InvariantViolation("Frobenius certificate does not reproduce the input")
    logger.debug(
        "Frobenius form computed with %d block(s).",
        len(blocks),
        extra={"modulus": p, "dim": a.dim, "stage": "rcf"},
    )
    return form


def min_poly(a: MatZ) -> PolyFp:
    """Minimal polynomial of ``a`` over F_p."""
    prime_profile(a.modulus)
    return _maximal_vector(a.entries.astype(np.int64), a.modulus)[1]


def local_min_poly(a: MatZ, v: Sequence[int]) -> PolyFp:
    """Monic generator of the annihilator of ``v`` under ``a``."""
    vec = np.array([int(x) for x in v], dtype=np.int64)
    return _vector_min_poly(a.entries.astype(np.int64), vec, a.modulus)


def poly_eval_matrix(f: PolyFp, a: MatZ) -> MatZ:
    """``f(a)`` by Horner's rule."""
    if f.p != a.modulus:
        raise ComponentMismatch(f"polynomial over F_{f.p}, matrix over Z_{a.modulus}")
    result = MatZ.zeros(a.modulus, a.dim)
    eye = MatZ.identity(a.modulus, a.dim)
    for c in reversed(f.coeffs):
        result = mat_mul(result, a) + MatZ._wrap(a.modulus, eye.entries * c % a.modulus)
    return result


__all__ = [
    "PolyFp",
    "CompanionBlock",
    "FrobeniusForm",
    "poly_add",
    "poly_sub",
    "poly_mul",
    "poly_scale",
    "poly_divmod",
    "poly_gcd",
    "poly_monic",
    "poly_divides",
    "char_poly",
    "frobenius_form",
    "min_poly",
    "local_min_poly",
    "poly_eval_matrix",
]
