"""Text formats: brace files, group files, cocycle and witness JSON.

A brace file looks like::

    skewbrace v1 order=2
    0 1
    1 0

    0 1
    1 0
    # name=trivial C2

The dot table comes first, then a blank line, then the circle table, then
optional ``# key=value`` metadata lines. Writing a parsed canonical document
gives back the same bytes.
"""

from __future__ import annotations

import json
import re
from collections.abc import Sequence
from math import prod

import numpy as np

from .braces import SkewBrace, validate_brace
from .cohomology import CocyclePair, abelian_group
from .errors import ParseError, ValidationError
from .groups import GroupTable, validate_group
from .isoclinism import IsoclinismWitness

BRACE_MAGIC = "skewbrace v1"
GROUP_MAGIC = "skewgroup v1"
_HEADER = re.compile(r"^(skewbrace|skewgroup) v1 order=([0-9]+)$")


def _lines(data: bytes | str) -> list[str]:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    if text.endswith("\n"):
        text = text[:-1]
    return text.split("\n")


def _header(lines: list[str], magic: str) -> int:
    m = _HEADER.match(lines[0]) if lines else None
    if m is None or m.group(1) != magic.split()[0]:
        raise ParseError(1, 1, f"expected header '{magic} order=N'")
    n = int(m.group(2))
    if n < 1:
        raise ParseError(1, lines[0].index("=") + 2, "order must be positive")
    return n


def _row(line: str, lineno: int, n: int) -> list[int]:
    if line != line.strip() or "  " in line:
        raise ParseError(lineno, 1, "entries must be separated by single spaces")
    out = []
    col = 1
    for tok in line.split(" "):
        if len(out) == n:
            raise ParseError(lineno, col, f"expected {n} entries, got {len(line.split(' '))}")
        if not tok.isdigit():
            raise ParseError(lineno, col, f"expected a non-negative integer, got {tok!r}")
        v = int(tok)
        if v >= n:
            raise ParseError(lineno, col, f"entry {v} out of range for order {n}")
        out.append(v)
        col += len(tok) + 1
    if len(out) != n:
        raise ParseError(lineno, len(line) + 1, f"expected {n} entries, got {len(out)}")
    return out


def _table(lines: list[str], start: int, n: int) -> list[list[int]]:
    """Rows lines[start : start+n]; start is 0-based."""
    if len(lines) < start + n:
        raise ParseError(len(lines) + 1, 1, f"expected {n} table rows")
    return [_row(lines[start + i], start + i + 1, n) for i in range(n)]


def _check_identity(rows: list[list[int]], which: str, first_line: int) -> None:
    n = len(rows)
    ident = list(range(n))
    if rows[0] == ident and all(r[0] == i for i, r in enumerate(rows)):
        return
    e = next((i for i, r in enumerate(rows) if r == ident), None)
    hint = (
        f"; element {e} acts as the identity, renumber so that it is 0 (swap labels 0 and {e})"
        if e is not None
        else "; no row acts as the identity"
    )
    raise ParseError(first_line, 1, f"{which} table: identity must be element 0{hint}")


def _metadata(lines: list[str], start: int) -> dict[str, str]:
    meta: dict[str, str] = {}
    for i in range(start, len(lines)):
        line = lines[i]
        m = re.match(r"^# ([^=\s][^=]*)=(.*)$", line)
        if m is None:
            raise ParseError(i + 1, 1, "expected '# key=value' metadata")
        key = m.group(1)
        if key in meta:
            raise ParseError(i + 1, 3, f"duplicate metadata key {key!r}")
        meta[key] = m.group(2)
    return meta


def parse_brace_document(data: bytes | str) -> tuple[SkewBrace, dict[str, str]]:
    """Brace and metadata; raises ParseError or a ValidationError."""
    lines = _lines(data)
    n = _header(lines, BRACE_MAGIC)
    dot = _table(lines, 1, n)
    if len(lines) <= n + 1 or lines[n + 1] != "":
        raise ParseError(n + 2, 1, "expected a blank line between the tables")
    circ = _table(lines, n + 2, n)
    meta = _metadata(lines, 2 * n + 2)
    _check_identity(dot, "dot", 2)
    _check_identity(circ, "circ", n + 3)
    return validate_brace(dot, circ), meta


def parse_brace_file(data: bytes | str) -> SkewBrace:
    return parse_brace_document(data)[0]


def _format_table(M) -> list[str]:
    return [" ".join(str(int(x)) for x in row) for row in np.asarray(M).tolist()]


def write_brace_file(A: SkewBrace, meta: dict[str, str] | None = None) -> bytes:
    lines = [f"{BRACE_MAGIC} order={A.order}"]
    lines += _format_table(A.dot.mul)
    lines.append("")
    lines += _format_table(A.circ.mul)
    for k, v in (meta or {}).items():
        if "=" in k or "\n" in k or "\n" in v or not k.strip():
            raise ValueError(f"metadata key/value not representable: {k!r}={v!r}")
        lines.append(f"# {k}={v}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def read_brace(path: str) -> SkewBrace:
    with open(path, "rb") as fh:
        return parse_brace_file(fh.read())


def save_brace(path: str, A: SkewBrace, meta: dict[str, str] | None = None) -> None:
    with open(path, "wb") as fh:
        fh.write(write_brace_file(A, meta))


def parse_group_file(data: bytes | str) -> GroupTable:
    lines = _lines(data)
    n = _header(lines, GROUP_MAGIC)
    rows = _table(lines, 1, n)
    if len(lines) > n + 1:
        _metadata(lines, n + 1)
    _check_identity(rows, "group", 2)
    return validate_group(rows)


def write_group_file(G: GroupTable, meta: dict[str, str] | None = None) -> bytes:
    lines = [f"{GROUP_MAGIC} order={G.order}"] + _format_table(G.mul)
    lines += [f"# {k}={v}" for k, v in (meta or {}).items()]
    return ("\n".join(lines) + "\n").encode("utf-8")


# ----------------------------------------------------------------- JSON


def dumps(obj) -> str:
    """Deterministic JSON used for every machine-readable output."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def parse_coefficients(text: str) -> list[int]:
    """'Z/4 x Z/2' -> [4, 2]; 'Z/1' or '0' gives the trivial group."""
    text = text.strip()
    if text in ("0", "1", ""):
        return []
    out = []
    for part in re.split(r"\s*[x×*]\s*", text):
        m = re.fullmatch(r"(?:Z/|C)?([0-9]+)", part.strip())
        if m is None or int(m.group(1)) < 1:
            raise ParseError(1, 1, f"cannot read coefficient factor {part!r}")
        if int(m.group(1)) > 1:
            out.append(int(m.group(1)))
    return out


def _radix(factors: Sequence[int]) -> list[int]:
    # strides of the row-major product ⊕ Z/d
    return [prod(factors[i + 1 :]) for i in range(len(factors))]


def coefficient_coords(factors: Sequence[int]) -> np.ndarray:
    """coords[x] for x in abelian_group(factors)."""
    strides = _radix(factors)
    n = prod(factors)
    return np.array([[(x // s) % d for s, d in zip(strides, factors)] for x in range(n)], dtype=np.int64).reshape(
        n, len(factors)
    )


def cocycle_to_json(p: CocyclePair, factors: Sequence[int]) -> dict:
    """alpha and mu as |K|×|K| tables of coordinate vectors in ⊕ Z/factors."""
    coords = coefficient_coords(factors)
    return {
        "coefficients": list(factors),
        "order": p.K.order,
        "alpha": coords[p.alpha].tolist(),
        "mu": coords[p.mu].tolist(),
    }


def cocycle_from_json(d: dict, K: SkewBrace) -> CocyclePair:
    try:
        factors = [int(x) for x in d["coefficients"]]
        alpha = np.array(d["alpha"], dtype=np.int64)
        mu = np.array(d["mu"], dtype=np.int64)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(1, 1, f"malformed cocycle: {exc}") from exc
    if any(f < 2 for f in factors):
        raise ParseError(1, 1, "coefficient factors must be at least 2")
    r, k = len(factors), K.order
    for name, T in (("alpha", alpha), ("mu", mu)):
        if T.shape != (k, k, r) and not (r == 0 and T.size == 0):
            raise ParseError(1, 1, f"{name} must be a {k}x{k} table of length-{r} vectors")
    strides = np.array(_radix(factors), dtype=np.int64)
    fac = np.array(factors, dtype=np.int64)
    A = abelian_group(factors)

    def index(T):
        if r == 0:
            return np.zeros((k, k), dtype=np.int64)
        return ((T % fac) * strides).sum(axis=-1)

    return CocyclePair(K, A, index(alpha), index(mu))


def witness_to_json(w: IsoclinismWitness) -> dict:
    return w.to_json()


def witness_from_json(d: dict) -> IsoclinismWitness:
    return IsoclinismWitness.from_json(d)


__all__ = [
    "ParseError",
    "ValidationError",
    "cocycle_from_json",
    "coefficient_coords",
    "cocycle_to_json",
    "dumps",
    "parse_brace_document",
    "parse_brace_file",
    "parse_coefficients",
    "parse_group_file",
    "read_brace",
    "save_brace",
    "write_brace_file",
    "write_group_file",
    "witness_from_json",
    "witness_to_json",
]
