"""Decomposition certificates: JSON model, atomic persistence and text rendering.

Certificates serialize with the fixed field order
``modulus, dim, t1, t2, nil, nil_index_bound, verified``; matrices are
row-major integer arrays.
"""
from __future__ import annotations

import json
import os
from contextlib import suppress
from pathlib import Path
from typing import Union

from pydantic import BaseModel, ConfigDict, ValidationError

from .errors import CertificateError
from .logging import get_logger
from .matz import MatZ

logger = get_logger()


class Certificate(BaseModel):
    model_config = ConfigDict(strict=True)

    modulus: int
    dim: int
    t1: list[list[int]]
    t2: list[list[int]]
    nil: list[list[int]]
    nil_index_bound: int
    verified: bool

    def matrices(self) -> tuple[MatZ, MatZ, MatZ]:
        """Re-parse ``(t1, t2, nil)`` as matrices over Z_modulus."""
        try:
            return (
                MatZ.from_rows(self.modulus, self.t1),
                MatZ.from_rows(self.modulus, self.t2),
                MatZ.from_rows(self.modulus, self.nil),
            )
        except ValueError as exc:
            raise CertificateError(f"certificate matrices are malformed: {exc}") from exc

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)


def save_certificate(
    cert: Certificate, path: Union[str, Path], *, overwrite: bool = False
) -> Path:
    """Write ``cert`` as JSON to ``path`` atomically.

    Raises
    ------
    CertificateError
        If the file exists and ``overwrite`` is ``False``, or it cannot be
        written.
    """
    target = Path(path).expanduser().resolve()
    if target.exists() and not overwrite:
        raise CertificateError(
            f"Certificate already exists: {target}. Pass overwrite=True to replace."
        )
    tmp = target.with_suffix(target.suffix + ".tmp")
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        tmp.write_text(cert.to_json() + "\n", encoding="utf-8")
        os.replace(tmp, target)  # atomic
    except OSError as exc:
        with suppress(OSError):
            tmp.unlink()
        raise CertificateError(f"Cannot write certificate {target}: {exc}") from exc
    logger.info("Certificate written to %s.", target, extra={"modulus": cert.modulus, "dim": cert.dim})
    return target


def load_certificate(path: Union[str, Path]) -> Certificate:
    """Load a certificate written by :func:`save_certificate`.

    Raises
    ------
    CertificateError
        If the file is missing or does not hold a valid certificate.
    """
    source = Path(path).expanduser()
    if not source.exists():
        raise CertificateError(f"Certificate not found: {source}")
    try:
        return Certificate.model_validate(json.loads(source.read_text(encoding="utf-8")))
    except OSError as exc:
        raise CertificateError(f"Cannot read certificate {source}: {exc}") from exc
    except (json.JSONDecodeError, UnicodeDecodeError, ValidationError) as exc:
        raise CertificateError(f"Invalid certificate {source}: {exc}") from exc


def _render_matrix(name: str, rows: list[list[int]]) -> list[str]:
    width = max((len(str(x)) for row in rows for x in row), default=1)
    return [f"{name}:"] + ["  " + " ".join(str(x).rjust(width) for x in row) for row in rows]


def render_text(cert: Certificate) -> str:
    """Aligned plain-text rendering used by ``--format text``."""
    lines = [
        f"modulus: {cert.modulus}",
        f"dim: {cert.dim}",
        *_render_matrix("t1", cert.t1),
        *_render_matrix("t2", cert.t2),
        *_render_matrix("nil", cert.nil),
        f"nil_index_bound: {cert.nil_index_bound}",
        f"verified: {str(cert.verified).lower()}",
    ]
    return "\n".join(lines) + "\n"


__all__ = ["Certificate", "save_certificate", "load_certificate", "render_text"]
