"""Text formats: Cayley-table files and adjacency exports.

Table file::

    3
    0 1 2
    1 2 0
    2 0 1
    labels: e a a2

The first line is the order n, then n rows of n whitespace-separated 0-based
indices, then an optional ``labels:`` line.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import ParseError


def parse_table_text(text: str, name: str = "") -> "FiniteGroup":  # noqa: F821
    from .groups import group_from_table

    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty table file", 0)
    try:
        n = int(lines[0])
    except ValueError:
        raise ParseError(f"first line must be the order, got {lines[0]!r}", 1) from None
    if n < 1:
        raise ParseError("order must be positive", 1)
    if len(lines) < n + 1:
        raise ParseError(f"expected {n} table rows, found {len(lines) - 1}", len(lines))
    rows = []
    for i in range(n):
        parts = lines[1 + i].split()
        if len(parts) != n:
            raise ParseError(f"row {i} has {len(parts)} entries, expected {n}", i + 2)
        try:
            row = [int(x) for x in parts]
        except ValueError:
            raise ParseError(f"row {i} has a non-integer entry", i + 2) from None
        bad = [x for x in row if not 0 <= x < n]
        if bad:
            raise ParseError(f"row {i}: index {bad[0]} out of range 0..{n - 1}", i + 2)
        rows.append(row)
    labels = None
    rest = lines[n + 1 :]
    if rest:
        head = rest[0]
        if not head.lower().startswith("labels:") or len(rest) > 1:
            raise ParseError(f"unexpected trailing content {head!r}", n + 2)
        labels = head.split(":", 1)[1].split()
        if len(labels) != n:
            raise ParseError(f"expected {n} labels, got {len(labels)}", n + 2)
    return group_from_table(rows, labels, name)


def read_table_file(path: str | Path) -> "FiniteGroup":  # noqa: F821
    p = Path(path)
    return parse_table_text(p.read_text(encoding="utf-8"), name=f"@{p}")


def format_table_text(group) -> str:
    out = [str(group.order)]
    out.extend(" ".join(str(int(x)) for x in row) for row in group.table)
    if group.labels is not None:
        out.append("labels: " + " ".join(group.labels))
    return "\n".join(out) + "\n"


def export_adjacency(graph, group: str = "", subgroup=None) -> str:
    """JSON header line followed by one 0/1 string per vertex."""
    header = {
        "vertices": int(graph.vertex_count),
        "degree": int(graph.degree),
        "group": group,
        "subgroup": None if subgroup is None else [int(x) for x in subgroup],
    }
    body = ["".join("1" if x else "0" for x in row) for row in np.asarray(graph.adjacency)]
    return json.dumps(header, sort_keys=True) + "\n" + "\n".join(body) + "\n"


def import_adjacency(text: str) -> tuple[dict, np.ndarray]:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty adjacency export", 0)
    header = json.loads(lines[0])
    n = header["vertices"]
    rows = lines[1 : 1 + n]
    if len(rows) != n or any(len(r) != n or set(r) - {"0", "1"} for r in rows):
        raise ParseError("malformed adjacency rows", 2)
    adj = np.array([[c == "1" for c in r] for r in rows], dtype=np.uint8).reshape(n, n)
    return header, adj
