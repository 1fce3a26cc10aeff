"""Matrix files and certificate records.

Matrix file: first line is the order d, followed by d rows of
whitespace-separated entries. Sign matrices use the integers 1 and -1;
general symmetric matrices (``general=True``) accept any decimal.

Certificate record: flat ``key = value`` lines followed by ``matrix:`` and the
matrix rows indented by two spaces. Reals are written with 17 significant
digits so that they read back bit-for-bit.
"""

from __future__ import annotations

import numpy as np

from . import __version__
from .errors import MatrixParseError
from .search import Certificate

SCHEMA = "projconst-certificate/1"
RECORD_DIGITS = 17
SCREEN_DIGITS = 12


def fmt(x: float, digits: int = RECORD_DIGITS) -> str:
    return format(float(x), f".{digits}g")


def _content_lines(text: str):
    lines = text.split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    return lines


def parse_matrix(text: str, general: bool = False) -> np.ndarray:
    """Parse a matrix file; sign matrices are validated (+1 diagonal, symmetric)."""
    lines = _content_lines(text)
    if not lines:
        raise MatrixParseError("empty input", 1)
    try:
        d = int(lines[0].strip())
    except ValueError:
        raise MatrixParseError(f"expected the matrix order, got {lines[0]!r}", 1) from None
    if d < 1:
        raise MatrixParseError("order must be positive", 1)
    if len(lines) - 1 != d:
        raise MatrixParseError(f"expected {d} rows, found {len(lines) - 1}", min(len(lines), d + 1) + 1)

    rows = []
    for k, line in enumerate(lines[1:], start=2):
        tokens = line.split()
        if len(tokens) != d:
            raise MatrixParseError(f"expected {d} entries, found {len(tokens)}", k)
        try:
            row = [float(t) for t in tokens] if general else [int(t) for t in tokens]
        except ValueError:
            raise MatrixParseError(f"bad entry in {line!r}", k) from None
        if not general:
            if any(v not in (1, -1) for v in row):
                raise MatrixParseError("sign matrix entries must be 1 or -1", k)
            if row[k - 2] != 1:
                raise MatrixParseError("diagonal of a sign matrix must be +1", k)
        rows.append(row)

    M = np.array(rows, dtype=float if general else np.int64)
    for i in range(d):
        for j in range(i):
            if M[i, j] != M[j, i]:
                raise MatrixParseError(f"entry ({i + 1},{j + 1}) differs from ({j + 1},{i + 1})", i + 2)
    return M


def format_matrix(M, indent: str = "", header: bool = True) -> str:
    M = np.asarray(M)
    if np.issubdtype(M.dtype, np.integer):
        cells = [[str(int(v)) for v in row] for row in M]
    else:
        cells = [[repr(float(v)) for v in row] for row in M]
    body = "".join(indent + " ".join(row) + "\n" for row in cells)
    return (f"{M.shape[0]}\n" if header else "") + body


def read_matrix_file(path: str, general: bool = False) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read(), general)


def _vec(values) -> str:
    return " ".join(fmt(v) for v in values)


def _flag(value: bool) -> str:
    return "true" if value else "false"


def format_certificate(cert: Certificate, seed: int | None = None) -> str:
    lines = [
        f"schema = {SCHEMA}",
        f"tool_version = {__version__}",
        f"mode = {cert.mode}",
        f"seed = {'none' if seed is None else seed}",
        f"n = {cert.n}",
        f"d = {cert.d}",
        f"value = {fmt(cert.value)}",
        f"weights = {_vec(cert.weights)}",
        f"spectrum = {_vec(cert.spectrum)}",
        f"sign_optimal = {_flag(cert.sign_optimal)}",
        f"orbit_symmetric = {_flag(cert.orbit_symmetric)}",
        f"uniform_shortcut_used = {_flag(cert.uniform_shortcut_used)}",
        "matrix:",
    ]
    return "\n".join(lines) + "\n" + format_matrix(cert.matrix, indent="  ", header=False)


def parse_certificate(text: str) -> tuple[Certificate, dict]:
    """Read a certificate record; returns the certificate and the metadata fields."""
    lines = _content_lines(text)
    fields: dict[str, str] = {}
    k = 0
    while k < len(lines) and lines[k].strip() != "matrix:":
        line = lines[k]
        if line.strip():
            if "=" not in line:
                raise MatrixParseError(f"expected 'key = value', got {line!r}", k + 1)
            key, value = line.split("=", 1)
            fields[key.strip()] = value.strip()
        k += 1
    if k == len(lines):
        raise MatrixParseError("missing 'matrix:' section", k + 1)
    if fields.get("schema") != SCHEMA:
        raise MatrixParseError(f"unknown schema {fields.get('schema')!r}", 1)
    try:
        n, d = int(fields["n"]), int(fields["d"])
        value = float(fields["value"])
        weights = np.array([float(t) for t in fields["weights"].split()])
        spectrum = np.array([float(t) for t in fields["spectrum"].split()])
        flags = {f: fields[f] == "true" for f in ("sign_optimal", "orbit_symmetric", "uniform_shortcut_used")}
    except (KeyError, ValueError) as exc:
        raise MatrixParseError(f"bad or missing field: {exc}") from None
    matrix_text = f"{d}\n" + "\n".join(lines[k + 1:]) + "\n"
    try:
        matrix = parse_matrix(matrix_text)
    except MatrixParseError as exc:
        raise MatrixParseError(f"in matrix section: {exc}") from None
    cert = Certificate(
        n=n, d=d, matrix=matrix, weights=weights, value=value, spectrum=spectrum,
        mode=fields.get("mode", "direct"), **flags,
    )
    meta = {key: fields[key] for key in ("schema", "tool_version", "mode", "seed") if key in fields}
    return cert, meta
