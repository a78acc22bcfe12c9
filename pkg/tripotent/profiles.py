"""Per-prime metadata for the decomposition pipeline."""
from __future__ import annotations

from typing import Any, Dict

from .errors import UnsupportedModulus

# --- Prime profiles ---
# "companion_cases" maps the residue of c_{n-1} to the case label, the bottom
# entry of E1 and the corner entry of E2 (residues taken mod p, so -1 is p-1).
# "scalar_pairs" maps a residue mod p to a pair of tripotent residues summing
# to it.
PRIME_PROFILES: Dict[int, Dict[str, Any]] = {
    2: {
        "lift": "idempotent",
        "companion_cases": {0: ("I", 1, 1), 1: ("II", 1, 0)},
        "scalar_pairs": {0: (0, 0), 1: (1, 0)},
    },
    3: {
        "lift": "tripotent",
        "companion_cases": {0: ("I", 1, 2), 1: ("II", 1, 0), 2: ("III", 1, 1)},
        "scalar_pairs": {0: (0, 0), 1: (1, 0), 2: (1, 1)},
    },
    5: {
        "lift": "tripotent",
        "companion_cases": {
            0: ("I", 1, 4),
            1: ("II", 1, 0),
            4: ("III", 4, 0),
            2: ("IV", 1, 1),
            3: ("V", 4, 4),
        },
        "scalar_pairs": {0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (4, 4), 4: (4, 0)},
    },
}

SUPPORTED_PRIMES = tuple(sorted(PRIME_PROFILES))


def prime_profile(p: int) -> Dict[str, Any]:
    """Return the profile for ``p`` or raise :class:`UnsupportedModulus`."""
    profile = PRIME_PROFILES.get(p)
    if profile is None:
        raise UnsupportedModulus(p, p, "no decomposition profile for this prime")
    return profile


def prime_profiles_table(prime: int | None = None) -> str:
    """Return a markdown table of the case tables, optionally for one prime."""
    rows = []
    for p in SUPPORTED_PRIMES:
        if prime is not None and p != prime:
            continue
        cfg = PRIME_PROFILES[p]
        for residue, (case, bottom, corner) in sorted(cfg["companion_cases"].items()):
            t1, t2 = cfg["scalar_pairs"][residue]
            rows.append(
                f"| {p} | {cfg['lift']} | {residue} | {case} | {bottom} | {corner} "
                f"| ({t1}, {t2}) |"
            )
    if not rows:
        return "No primes match the given criteria."
    header = (
        "| Prime | Lift | c_{n-1} | Case | E1 bottom | E2 corner | Scalar pair |\n"
        "|---|---|---|---|---|---|---|"
    )
    return "\n".join([header, *rows])


__all__ = ["PRIME_PROFILES", "SUPPORTED_PRIMES", "prime_profile", "prime_profiles_table"]
