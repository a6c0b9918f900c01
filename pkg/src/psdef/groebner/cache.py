"""Content-addressed on-disk cache for Groebner bases.

Keys hash the canonical serialization of the generators together with the
ring, order, truncation degree and engine version, so any change to inputs or
algorithms invalidates stale entries.  Files are the poly-core text format
with a small header and round-trip bit-exactly.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

from .. import __version__ as _engine_version
from ..poly import Polynomial, poly_from_line, poly_to_line
from .types import GroebnerBasis, IdealBasis

_FORMAT = "psdef-gb v1"


def basis_key(ideal: IdealBasis, truncation: int | None) -> str:
    h = hashlib.sha256()
    h.update(_engine_version.encode())
    h.update(f"|{ideal.domain}|{ideal.num_vars}|grevlex|{truncation}|".encode())
    for line in sorted(poly_to_line(g) for g in ideal.generators):
        h.update(line.encode())
        h.update(b"\n")
    return h.hexdigest()[:32]


def cache_path(cache_dir: Path | str, ideal: IdealBasis, truncation: int | None) -> Path:
    return Path(cache_dir) / f"{ideal.domain.lower()}-{basis_key(ideal, truncation)}.gb"


def save_basis(path: Path | str, basis: GroebnerBasis) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [
        f"# {_FORMAT}",
        f"engine={_engine_version}",
        f"domain={basis.domain}",
        f"num_vars={basis.num_vars}",
        "order=grevlex",
        f"truncation={basis.truncation_degree if basis.truncation_degree is not None else ''}",
        f"reduced={int(basis.reduced)}",
        f"partial={int(basis.partial)}",
        f"reason={basis.limit_reason or ''}",
        f"count={len(basis.basis)}",
    ]
    lines.extend(poly_to_line(p) for p in basis.basis)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_basis(path: Path | str) -> GroebnerBasis | None:
    path = Path(path)
    if not path.is_file():
        return None
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != f"# {_FORMAT}":
        return None
    header: dict[str, str] = {}
    body_at = None
    for i, line in enumerate(lines[1:], start=1):
        if "=" not in line:
            body_at = i
            break
        key, val = line.split("=", 1)
        header[key] = val
        if key == "count":
            body_at = i + 1
            break
    if header.get("engine") != _engine_version:
        return None
    domain = header["domain"]
    num_vars = int(header["num_vars"])
    trunc = header.get("truncation", "")
    count = int(header.get("count", 0))
    polys = [
        poly_from_line(line, domain, num_vars) for line in lines[body_at : body_at + count]
    ]
    return GroebnerBasis(
        domain=domain,
        num_vars=num_vars,
        basis=tuple(polys),
        truncation_degree=int(trunc) if trunc else None,
        reduced=header.get("reduced", "0") == "1",
        partial=header.get("partial", "0") == "1",
        limit_reason=header.get("reason") or None,
        meta={"cached": True},
    )


def load_cached(cache_dir, ideal: IdealBasis, truncation: int | None) -> GroebnerBasis | None:
    if cache_dir is None:
        return None
    return load_basis(cache_path(cache_dir, ideal, truncation))


def store_cached(cache_dir, ideal: IdealBasis, truncation: int | None, basis: GroebnerBasis) -> None:
    if cache_dir is None:
        return
    save_basis(cache_path(cache_dir, ideal, truncation), basis)
