"""Built-in group corpus and group-expression parsing."""

from __future__ import annotations

import re
from functools import lru_cache

from .errors import ParseError
from .groups import FiniteGroup, GroupFamilySpec, build_family

# Gamma_H hard cap: |G| <= 16, i.e. at most 256 vertices.
HARD_ORDER_BOUND = 16
DEFAULT_VERIFY_ORDER = 12
# Seed for the randomized character-oracle cross-check.
ORACLE_SEED = 20240607
ORACLE_GROUPS = ("Z6", "Z8", "Z12", "Z4xZ2")
ORACLE_SAMPLES = 50

# Products of Z2, Z3, Z4, Z6, Z8, Z12 plus dihedral and symmetric groups.
VERIFY_GROUPS = (
    "Z2",
    "Z3",
    "Z4",
    "Z2xZ2",
    "Z6",
    "Z2xZ3",
    "S3",
    "D3",
    "Z8",
    "Z4xZ2",
    "Z2xZ2xZ2",
    "D4",
    "Z3xZ3",
    "D5",
    "Z12",
    "Z2xZ6",
    "Z3xZ4",
    "Z2xZ2xZ3",
    "D6",
)

# Orders 6..16 for the closed-form comparison (normal subgroups only).
CLOSED_FORM_EXTRA = (
    "Z9",
    "Z10",
    "Z14",
    "D7",
    "Z15",
    "Z16",
    "Z8xZ2",
    "Z4xZ4",
    "Z4xZ2xZ2",
    "Z2xZ2xZ2xZ2",
    "D8",
    "D4xZ2",
)
CLOSED_FORM_ORDERS = (6, 8, 9, 10, 12, 14, 15, 16)

_FACTOR = re.compile(r"([ZDS])(\d+)")
_KINDS = {"Z": "cyclic", "D": "dihedral", "S": "symmetric"}


def parse_group_spec(s: str) -> GroupFamilySpec:
    """``Z<n> | D<n> | S<n> | expr x expr | @path`` (products left-associative).

    ``@path`` must be the last factor; the path runs to the end of the string.
    """
    pos = 0
    factors: list[GroupFamilySpec] = []
    while True:
        if pos >= len(s):
            raise ParseError("expected a group factor", pos)
        if s[pos] == "@":
            path = s[pos + 1 :]
            if not path:
                raise ParseError("empty table-file path", pos)
            factors.append(GroupFamilySpec("table-file", (path,)))
            break
        m = _FACTOR.match(s, pos)
        if m is None:
            raise ParseError(f"unsupported token {s[pos:pos + 3]!r}", pos)
        value = int(m.group(2))
        if value < 1:
            raise ParseError("family parameter must be >= 1", m.start(2))
        factors.append(GroupFamilySpec(_KINDS[m.group(1)], (value,)))
        pos = m.end()
        if pos == len(s):
            break
        if s[pos] != "x":
            raise ParseError(f"expected 'x', found {s[pos]!r}", pos)
        pos += 1
    expr = factors[0]
    for f in factors[1:]:
        expr = GroupFamilySpec("direct-product", (expr, f))
    return expr


@lru_cache(maxsize=64)
def group_from_spec(s: str) -> FiniteGroup:
    g = build_family(parse_group_spec(s))
    if not s.startswith("@"):
        object.__setattr__(g, "name", s)
    return g


def closed_form_groups() -> tuple[str, ...]:
    names = [g for g in VERIFY_GROUPS if group_from_spec(g).order in CLOSED_FORM_ORDERS]
    return tuple(names) + CLOSED_FORM_EXTRA


def sweep_groups(max_order: int) -> tuple[str, ...]:
    names = sorted(set(VERIFY_GROUPS) | set(CLOSED_FORM_EXTRA))
    return tuple(g for g in names if group_from_spec(g).order <= max_order)
