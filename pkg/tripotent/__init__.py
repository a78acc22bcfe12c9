"""Two tripotents plus a nilpotent: constructive decompositions over Z_n.

Covers square matrices over Z_n for n = 2^k * 3^l * 5^m, elements of Z_n and
upper-triangular matrices, with exhaustive oracles and JSON certificates.
"""
from .settings import Settings, get_settings, load_environment
from .profiles import PRIME_PROFILES, SUPPORTED_PRIMES, prime_profile, prime_profiles_table
from .zmod import Modulus, Residue, crt_combine, crt_split, factor_modulus, inverse_mod
from .matz import *  # noqa: F401,F403
from .rcf import CompanionBlock, FrobeniusForm, PolyFp, char_poly, frobenius_form, min_poly
from .companion import CompanionSplit, decompose_companion
from .lift import lift_for_prime, lift_idempotent, lift_tripotent
from .zhou import (
    Decomposition,
    VerifyReport,
    async_decompose_matrix,
    certify,
    decompose_matrix,
    decompose_scalar,
    decompose_triangular,
    quintic_criterion,
    triangular_quintic_defect_nilpotent,
    verify,
)
from .oracle import count_tripotents, enumerate_tripotents, oracle_decompose
from .certificates import Certificate, load_certificate, render_text, save_certificate
from .errors import *  # noqa: F401,F403
from .logging import *  # noqa: F401,F403
from . import matz as _matz, errors as _errors, logging as _logging

__all__ = [
    "Settings", "get_settings", "load_environment",
    "PRIME_PROFILES", "SUPPORTED_PRIMES", "prime_profile", "prime_profiles_table",
    "Modulus", "Residue", "crt_combine", "crt_split", "factor_modulus", "inverse_mod",
    "CompanionBlock", "FrobeniusForm", "PolyFp", "char_poly", "frobenius_form",
    "min_poly",
    "CompanionSplit", "decompose_companion",
    "lift_for_prime", "lift_idempotent", "lift_tripotent",
    "Decomposition", "VerifyReport", "async_decompose_matrix", "certify",
    "decompose_matrix", "decompose_scalar", "decompose_triangular",
    "quintic_criterion", "triangular_quintic_defect_nilpotent", "verify",
    "count_tripotents", "enumerate_tripotents", "oracle_decompose",
    "Certificate", "load_certificate", "render_text", "save_certificate",
    *_matz.__all__, *_errors.__all__, *_logging.__all__,
]
