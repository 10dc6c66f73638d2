"""Matrix Market reader and writer for dense real matrices.

Reads "coordinate real general|symmetric" (densified, symmetric entries
mirrored) and "array real general".  Writes array format with 17
significant digits, which round-trips every double exactly.
"""
import numpy as np

from .errors import ParseError, UnsupportedFormatError
from .matrix import as_array

BANNER = "%%matrixmarket"


def _numbers(text, lineno, count, kind):
    parts = text.split()
    if len(parts) != count:
        raise ParseError(f"expected {count} fields, got {len(parts)}", lineno)
    try:
        return [kind(p) for p in parts]
    except ValueError:
        raise ParseError(f"cannot parse {text.strip()!r}", lineno) from None


def _parse_header(line):
    tokens = line.strip().split()
    if not tokens or tokens[0].lower() != BANNER:
        raise ParseError("missing %%MatrixMarket banner", 1)
    if len(tokens) != 5 or tokens[1].lower() != "matrix":
        raise ParseError("malformed header", 1)
    fmt, field, sym = (t.lower() for t in tokens[2:])
    if fmt not in ("coordinate", "array"):
        raise ParseError(f"unknown format {fmt!r}", 1)
    if field in ("pattern", "complex"):
        raise UnsupportedFormatError(f"{field} matrices are not supported")
    if field not in ("real", "integer", "double"):
        raise ParseError(f"unknown field {field!r}", 1)
    if fmt == "array" and sym != "general":
        raise UnsupportedFormatError(f"array {sym} is not supported")
    if sym not in ("general", "symmetric"):
        if sym in ("skew-symmetric", "hermitian"):
            raise UnsupportedFormatError(f"{sym} matrices are not supported")
        raise ParseError(f"unknown symmetry {sym!r}", 1)
    return fmt, sym


def mm_read(path):
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError("empty file", 1)
    fmt, sym = _parse_header(lines[0])

    # skip comments and blank lines, keep 1-based line numbers
    body = [(i + 1, s) for i, s in enumerate(lines)
            if i > 0 and s.strip() and not s.lstrip().startswith("%")]
    if not body:
        raise ParseError("missing size line", len(lines))
    lineno, size = body[0]
    entries = body[1:]

    if fmt == "array":
        m, n = _numbers(size, lineno, 2, int)
        if m < 0 or n < 0:
            raise ParseError("negative dimension", lineno)
        if len(entries) != m * n:
            where = entries[m * n][0] if len(entries) > m * n else len(lines)
            raise ParseError(f"expected {m * n} entries, got {len(entries)}", where)
        vals = [_numbers(s, ln, 1, float)[0] for ln, s in entries]
        return np.array(vals, dtype=np.float64).reshape((m, n), order="F")

    m, n, nnz = _numbers(size, lineno, 3, int)
    if m < 0 or n < 0 or nnz < 0:
        raise ParseError("negative size", lineno)
    if sym == "symmetric" and m != n:
        raise ParseError("symmetric matrix must be square", lineno)
    if len(entries) != nnz:
        where = entries[nnz][0] if len(entries) > nnz else len(lines)
        raise ParseError(f"expected {nnz} entries, got {len(entries)}", where)
    M = np.zeros((m, n), order="F")
    for ln, s in entries:
        parts = s.split()
        if len(parts) != 3:
            raise ParseError(f"expected 3 fields, got {len(parts)}", ln)
        try:
            i, j, v = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise ParseError(f"cannot parse {s.strip()!r}", ln) from None
        if not (1 <= i <= m and 1 <= j <= n):
            raise ParseError(f"index ({i}, {j}) out of range", ln)
        M[i - 1, j - 1] += v
        if sym == "symmetric" and i != j:
            M[j - 1, i - 1] += v
    return M


def mm_write(path, M, comment=None):
    M = as_array(M)
    if M.ndim != 2:
        raise ValueError("only matrices can be written")
    m, n = M.shape
    with open(path, "w", encoding="ascii") as fh:
        fh.write("%%MatrixMarket matrix array real general\n")
        if comment:
            for line in str(comment).splitlines():
                fh.write(f"% {line}\n")
        fh.write(f"{m} {n}\n")
        for v in M.ravel(order="F"):
            fh.write(f"{v:.17g}\n")
