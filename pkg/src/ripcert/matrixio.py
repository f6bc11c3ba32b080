"""Matrix text format and exact rational string handling.

File grammar: a header line ``M N`` followed by M rows of N whitespace
separated entries. An entry is an optional sign, digits, and an optional
``/digits`` denominator. Files describing integer matrices contain no ``/``.
Parsing and serialization are exact inverses of each other.
"""

from __future__ import annotations

import hashlib
import re
from fractions import Fraction

from .errors import ParseError
from .linalg import Entry, Matrix

_ENTRY_RE = re.compile(r"^[+-]?\d+(?:/(\d+))?$")
_POW_RE = re.compile(r"^1-2\^-(\d+)$")


def qstr(value: Entry) -> str:
    """Exact string form of a rational: ``p`` or ``p/q``. Never a decimal."""
    f = Fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(text: str) -> Fraction:
    """Exact rational from ``p``, ``p/q``, ``1-2^-T``, or a decimal/scientific literal.

    Every accepted form converts without rounding.
    """
    token = text.strip()
    power = _POW_RE.match(token)
    if power:
        return 1 - Fraction(1, 2 ** int(power.group(1)))
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed rational {token!r}", 1, 1) from exc


def parse_matrix(text: str) -> Matrix:
    """Parse matrix text exactly; raises :class:`ParseError` with line/column."""
    lines = text.splitlines()
    header_no = None
    for no, line in enumerate(lines, start=1):
        if line.strip():
            header_no = no
            break
    if header_no is None:
        raise ParseError("empty matrix file", 1, 1)

    header = list(re.finditer(r"\S+", lines[header_no - 1]))
    if len(header) != 2:
        raise ParseError("header must be exactly 'M N'", header_no, header[0].start() + 1 if header else 1)
    dims = []
    for tok in header:
        if not tok.group().isdigit() or int(tok.group()) < 1:
            raise ParseError(f"bad dimension {tok.group()!r}", header_no, tok.start() + 1)
        dims.append(int(tok.group()))
    m, n = dims

    rows: list[list[Entry]] = []
    for no in range(header_no + 1, len(lines) + 1):
        line = lines[no - 1]
        tokens = list(re.finditer(r"\S+", line))
        if not tokens:
            continue
        if len(rows) == m:
            raise ParseError(f"expected {m} rows, found extra data", no, tokens[0].start() + 1)
        if len(tokens) != n:
            where = tokens[min(len(tokens), n)].start() + 1 if len(tokens) > n else len(line) + 1
            raise ParseError(f"row {len(rows) + 1} has {len(tokens)} entries, expected {n}", no, where)
        row: list[Entry] = []
        for tok in tokens:
            match = _ENTRY_RE.match(tok.group())
            if not match:
                raise ParseError(f"malformed entry {tok.group()!r}", no, tok.start() + 1)
            if match.group(1) is None:
                row.append(int(tok.group()))
            else:
                if int(match.group(1)) == 0:
                    raise ParseError("zero denominator", no, tok.start() + 1)
                row.append(Fraction(tok.group()))
        rows.append(row)
    if len(rows) != m:
        raise ParseError(f"expected {m} rows, found {len(rows)}", len(lines), 1)
    return Matrix.from_rows(rows)


def serialize_matrix(matrix: Matrix) -> str:
    body = "\n".join(" ".join(qstr(v) for v in row) for row in matrix.data)
    return f"{matrix.rows} {matrix.cols}\n{body}\n"


def sha256_hex(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
