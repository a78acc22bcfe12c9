"""Command-line front end.

Exit codes: 0 success, 1 selftest failure, 2 unsupported modulus,
3 malformed input, 4 verification failure, 5 oracle found nothing,
6 oracle budget exceeded, 7 certificate or output file error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Iterator, Optional

import numpy as np

from .certificates import Certificate, load_certificate, render_text, save_certificate
from .errors import (
    BudgetExceeded,
    CertificateError,
    InvariantViolation,
    MalformedInput,
    TripotentError,
    UnsupportedModulus,
)
from .logging import get_logger, set_log_level
from .matz import MatZ, format_matrix_text, parse_matrix_text
from .oracle import oracle_decompose
from .profiles import prime_profiles_table
from .settings import Settings, get_settings
from .zhou import (
    Decomposition,
    certify,
    decompose_matrix,
    decompose_scalar,
    decompose_triangular,
    quintic_criterion,
    verify,
)
from .zmod import Residue, factor_modulus

logger = get_logger()

EXIT_OK = 0
EXIT_SELFTEST_FAILED = 1
EXIT_UNSUPPORTED = 2
EXIT_MALFORMED = 3
EXIT_VERIFICATION = 4
EXIT_NOT_FOUND = 5
EXIT_BUDGET = 6
EXIT_CERTIFICATE = 7

DEFAULT_MODULI = (2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 30, 45, 60, 360)
# Random selftest cases are cross-checked by the oracle up to M_2(Z_6).
ORACLE_CROSSCHECK_LIMIT = 6**4


# --- input / output ---
def _read_source(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        return Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInput(f"cannot read {source}: {exc}") from exc


def read_matrix(source: str) -> MatZ:
    """Parse a matrix from a path or ``-``, in text or JSON form."""
    text = _read_source(source)
    if not text.lstrip().startswith("{"):
        return parse_matrix_text(text)
    try:
        payload = json.loads(text)
        modulus, rows = payload["modulus"], payload["rows"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise MalformedInput(f"invalid JSON matrix: {exc}") from exc
    return MatZ.from_rows(modulus, rows)


def _emit(cert: Certificate, args: argparse.Namespace) -> None:
    body = render_text(cert) if args.format == "text" else cert.to_json() + "\n"
    if args.out is not None:
        save_certificate(cert, args.out, overwrite=args.overwrite)
    sys.stdout.write(body)


def _certify_and_emit(a: MatZ, d: Decomposition, args: argparse.Namespace) -> int:
    _emit(certify(a, d), args)
    logger.info("Certificate emitted.", extra={"modulus": a.modulus, "dim": a.dim})
    return EXIT_OK


# --- subcommands ---
def cmd_decompose(args: argparse.Namespace) -> int:
    a = read_matrix(args.input)
    return _certify_and_emit(a, decompose_matrix(a), args)


def cmd_scalar(args: argparse.Namespace) -> int:
    d = decompose_scalar(Residue(args.a, args.n))
    return _certify_and_emit(MatZ(args.n, [[args.a]]), d, args)


def cmd_triangular(args: argparse.Namespace) -> int:
    a = read_matrix(args.input)
    return _certify_and_emit(a, decompose_triangular(a), args)


def cmd_oracle(args: argparse.Namespace) -> int:
    a = read_matrix(args.input)
    d = oracle_decompose(a, budget=args.budget)
    if d is None:
        print(f"no decomposition of this matrix over Z_{a.modulus}", file=sys.stderr)
        return EXIT_NOT_FOUND
    return _certify_and_emit(a, d, args)


def cmd_verify(args: argparse.Namespace) -> int:
    a = read_matrix(args.input)
    cert = load_certificate(args.certificate)
    if (cert.modulus, cert.dim) != (a.modulus, a.dim):
        raise CertificateError(
            f"certificate is for ({cert.modulus}, {cert.dim}), "
            f"input is ({a.modulus}, {a.dim})"
        )
    t1, t2, nil = cert.matrices()
    report = verify(a, Decomposition(t1, t2, nil, cert.modulus, cert.nil_index_bound))
    print(
        f"sum_ok={report.sum_ok} t1_tripotent={report.t1_tripotent} "
        f"t2_tripotent={report.t2_tripotent} n_nilpotent={report.n_nilpotent} "
        f"observed_nil_index={report.observed_nil_index}"
    )
    return EXIT_OK if report.ok else EXIT_VERIFICATION


def cmd_primes(args: argparse.Namespace) -> int:
    print(prime_profiles_table(args.prime))
    return EXIT_OK


def cmd_ring(args: argparse.Namespace) -> int:
    holds = quintic_criterion(args.n)
    print(f"Z_{args.n}: a - a^5 nilpotent for every a: {str(holds).lower()}")
    return EXIT_OK


def _parse_moduli(raw: Optional[str]) -> tuple[int, ...]:
    if not raw:
        return DEFAULT_MODULI
    try:
        moduli = tuple(int(tok) for tok in raw.replace(",", " ").split())
    except ValueError as exc:
        raise MalformedInput(f"--moduli expects integers: {raw}") from exc
    for n in moduli:
        factor_modulus(n)
    return moduli


def _case_passes(a: MatZ, budget: int, crosscheck: bool) -> bool:
    try:
        if not verify(a, decompose_matrix(a)).ok:
            return False
    except TripotentError:
        logger.exception("Decomposition raised.", extra={"modulus": a.modulus, "dim": a.dim})
        return False
    return not crosscheck or oracle_decompose(a, budget=budget) is not None


def cmd_selftest(args: argparse.Namespace) -> int:
    settings: Settings = args.settings
    seed = settings.selftest_seed if args.seed is None else args.seed
    count = settings.selftest_count if args.count is None else args.count
    max_dim = settings.selftest_max_dim if args.max_dim is None else args.max_dim
    budget = settings.oracle_budget if args.budget is None else args.budget
    moduli = _parse_moduli(args.moduli)
    rng = np.random.default_rng(seed)

    total = 0
    first_failure: Optional[MatZ] = None
    for m in moduli:
        dims = [max_dim] if args.exhaustive else list(range(1, max_dim + 1))
        for d in dims:
            if args.exhaustive:
                if m ** (d * d) > budget:
                    raise BudgetExceeded(m ** (d * d), budget)
                cases = _all_matrices(m, d)
            else:
                cases = (
                    MatZ(m, rng.integers(0, m, size=(d, d)).tolist()) for _ in range(count)
                )
            crosscheck = m ** (d * d) <= min(budget, ORACLE_CROSSCHECK_LIMIT)
            passed = seen = 0
            for a in cases:
                seen += 1
                if _case_passes(a, budget, crosscheck):
                    passed += 1
                elif first_failure is None:
                    first_failure = a
            total += seen
            print(f"modulus {m} dim {d}: {passed}/{seen} verified")

    if first_failure is not None:
        print("first failing input:")
        sys.stdout.write(format_matrix_text(first_failure))
        return EXIT_SELFTEST_FAILED
    print(f"all {total} cases verified")
    return EXIT_OK


def _all_matrices(m: int, d: int) -> Iterator[MatZ]:
    for index in range(m ** (d * d)):
        digits = []
        for _ in range(d * d):
            index, r = divmod(index, m)
            digits.append(r)
        digits.reverse()
        yield MatZ(m, [digits[i * d:(i + 1) * d] for i in range(d)])


# --- parser ---
def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tripotent",
        description="Decompose matrices over Z_n into two tripotents plus a nilpotent.",
    )
    parser.add_argument("--log-level", default=None, help="Override TRIPOTENT_LOG_LEVEL.")
    sub = parser.add_subparsers(dest="command", required=True)

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--format", choices=("json", "text"), default="json")
    output.add_argument("--out", type=Path, default=None, help="Also write the certificate here.")
    output.add_argument("--overwrite", action="store_true", help="Replace an existing --out file.")

    def add(
        name: str,
        handler: Callable[[argparse.Namespace], int],
        help_: str,
        parents: tuple[argparse.ArgumentParser, ...] = (),
    ) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_, parents=list(parents))
        p.set_defaults(handler=handler)
        return p

    p = add("decompose", cmd_decompose, "Decompose a matrix over Z_n.", (output,))
    p.add_argument("input", help="Matrix file, or - for stdin.")

    p = add("scalar", cmd_scalar, "Decompose an element of Z_n.", (output,))
    p.add_argument("n", type=int)
    p.add_argument("a", type=int)

    p = add("triangular", cmd_triangular, "Decompose an upper-triangular matrix.", (output,))
    p.add_argument("input", help="Matrix file, or - for stdin.")

    p = add("oracle", cmd_oracle, "Exhaustive search for a decomposition.", (output,))
    p.add_argument("input", help="Matrix file, or - for stdin.")
    p.add_argument("--budget", type=int, default=None)

    p = add("selftest", cmd_selftest, "Random and exhaustive verification suite.")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-dim", type=int, default=None)
    p.add_argument("--moduli", default=None, help="Comma-separated moduli.")
    p.add_argument("--count", type=int, default=None, help="Random cases per modulus and dim.")
    p.add_argument(
        "--exhaustive",
        action="store_true",
        help="Check every matrix of dimension --max-dim instead of sampling.",
    )
    p.add_argument("--budget", type=int, default=None)

    p = add("verify", cmd_verify, "Re-verify a saved certificate against its input.")
    p.add_argument("input")
    p.add_argument("certificate")

    p = add("primes", cmd_primes, "Print the per-prime case tables.")
    p.add_argument("--prime", type=int, default=None)

    p = add("ring", cmd_ring, "Check that a - a^5 is nilpotent for every a in Z_n.")
    p.add_argument("n", type=int)
    return parser


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, (CertificateError, OSError)):
        return EXIT_CERTIFICATE
    if isinstance(exc, UnsupportedModulus):
        return EXIT_UNSUPPORTED
    if isinstance(exc, InvariantViolation):
        return EXIT_VERIFICATION
    if isinstance(exc, BudgetExceeded):
        return EXIT_BUDGET
    return EXIT_MALFORMED


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        args.settings = get_settings()
        set_log_level(args.log_level or args.settings.log_level)
        return args.handler(args)
    except (TripotentError, ValueError, OSError) as exc:
        logger.error("%s failed: %s", args.command, exc)
        print(f"error: {exc}", file=sys.stderr)
        return _exit_code(exc)


if __name__ == "__main__":
    raise SystemExit(main())
