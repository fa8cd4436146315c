"""Connection sets, Cayley graphs and the Gamma_H(G) construction.

Adjacency convention: u ~ v iff u * v^-1 is in the connection set. Vertices
of a graph on G x G are numbered ``index(x) * |G| + index(y)``.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

from . import _kernels
from .errors import BadConnectionSet, OrderBoundExceeded, SubgroupNotProper
from .groups import DIRECT_SQUARE_BOUND, MIN_CLAIM_ORDER, FiniteGroup, SubgroupData, direct_square

log = logging.getLogger(__name__)

PROVENANCES = ("S_H", "S_H_1", "S_H_2", "S_H_3", "custom")

FLAG_EDGELESS = "edgeless (H = G)"
FLAG_SRG = "strongly regular case (H trivial)"
FLAG_SMALL = "outside the n >= 5 precondition (|G| < 5)"


@dataclass(frozen=True, eq=False)
class ConnectionSet:
    parent: FiniteGroup
    elements: tuple[int, ...]
    provenance: str = "custom"
    flags: tuple[str, ...] = ()

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.elements)] = True
        return m

    def __len__(self) -> int:
        return len(self.elements)

    def pairs(self, n: int) -> list[tuple[int, int]]:
        """Elements of a set in G x G as (index(x), index(y)) pairs."""
        return [divmod(e, n) for e in self.elements]


def connection_set(group: FiniteGroup, elements: Iterable[int], provenance: str = "custom", flags=()) -> ConnectionSet:
    elems = tuple(sorted({int(x) for x in elements}))
    if any(not 0 <= x < group.order for x in elems):
        raise BadConnectionSet("element index out of range")
    if group.identity in elems:
        raise BadConnectionSet("connection set contains the identity")
    s = set(elems)
    missing = [x for x in elems if group.inv(x) not in s]
    if missing:
        raise BadConnectionSet(f"not inverse-closed: inverse of {missing[0]} missing")
    if provenance not in PROVENANCES:
        raise ValueError(f"unknown provenance {provenance!r}")
    return ConnectionSet(group, elems, provenance, tuple(flags))


def _flags_for(group: FiniteGroup, h: SubgroupData) -> tuple[str, ...]:
    flags = []
    if h.k == group.order:
        flags.append(FLAG_EDGELESS)
    if h.k == 1:
        flags.append(FLAG_SRG)
    if group.order < MIN_CLAIM_ORDER:
        flags.append(FLAG_SMALL)
    return tuple(flags)


def _check_sizes(group: FiniteGroup, h: SubgroupData, strict: bool) -> None:
    if h.parent is not group:
        raise ValueError("subgroup belongs to a different group")
    if group.order > DIRECT_SQUARE_BOUND:
        raise OrderBoundExceeded(f"|G| = {group.order} exceeds Gamma_H bound {DIRECT_SQUARE_BOUND}")
    if strict and not h.is_proper:
        raise SubgroupNotProper("H = G gives the edgeless graph")


def _square_of(group: FiniteGroup, square: FiniteGroup | None) -> FiniteGroup:
    if square is None:
        square = direct_square(group)
    if square.order != group.order**2:
        raise ValueError("square has the wrong order")
    return square


def connection_component(
    group: FiniteGroup,
    h: SubgroupData,
    kind: int,
    square: FiniteGroup | None = None,
    strict: bool = False,
) -> ConnectionSet:
    """``kind`` 1: (G-H) x {1}; 2: {1} x (G-H); 3: diagonal of G-H."""
    _check_sizes(group, h, strict)
    sq = _square_of(group, square)
    n, e = group.order, group.identity
    outside = [g for g in range(n) if g not in h]
    if kind == 1:
        elems = [g * n + e for g in outside]
    elif kind == 2:
        elems = [e * n + g for g in outside]
    elif kind == 3:
        elems = [g * n + g for g in outside]
    else:
        raise ValueError("kind must be 1, 2 or 3")
    return connection_set(sq, elems, f"S_H_{kind}", _flags_for(group, h))


def connection_set_SH(
    group: FiniteGroup, h: SubgroupData, square: FiniteGroup | None = None, strict: bool = False
) -> ConnectionSet:
    """S_H = {(g,1), (1,g), (g,g) : g not in H} inside G x G.

    H = G is allowed (empty set, flagged edgeless) unless ``strict``.
    """
    sq = _square_of(group, square)
    parts = [connection_component(group, h, kind, sq, strict) for kind in (1, 2, 3)]
    elems = [x for p in parts for x in p.elements]
    if len(set(elems)) != len(elems):  # pragma: no cover - components are disjoint
        raise AssertionError("components overlap")
    flags = _flags_for(group, h)
    if flags:
        log.info("S_H for %s, H=%s: %s", group.name, list(h.elements), "; ".join(flags))
    return connection_set(sq, elems, "S_H", flags)


@dataclass(frozen=True, eq=False)
class CayleyGraph:
    vertex_count: int
    adjacency: np.ndarray
    connection: ConnectionSet
    group: FiniteGroup = field(repr=False)

    @property
    def degree(self) -> int:
        return len(self.connection)

    @cached_property
    def bit_rows(self) -> np.ndarray:
        return _kernels.pack_rows(self.adjacency)

    def neighbors(self, u: int) -> np.ndarray:
        return np.flatnonzero(self.adjacency[u])


def cayley_graph(group: FiniteGroup, s: ConnectionSet | Iterable[int]) -> CayleyGraph:
    if not isinstance(s, ConnectionSet):
        s = connection_set(group, s)
    elif s.parent is not group:
        if s.parent.order != group.order or not np.array_equal(s.parent.table, group.table):
            raise BadConnectionSet("connection set belongs to a different group")
    adj = _kernels.cayley_adjacency(group.table, group.inverses, s.mask)
    return CayleyGraph(group.order, adj, s, group)


def gamma_graph(group: FiniteGroup, h: SubgroupData, square: FiniteGroup | None = None) -> CayleyGraph:
    """Gamma_H(G) = Cay(G x G, S_H)."""
    sq = _square_of(group, square)
    return cayley_graph(sq, connection_set_SH(group, h, sq))


def component_graph(group: FiniteGroup, h: SubgroupData, kind: int, square: FiniteGroup | None = None) -> CayleyGraph:
    sq = _square_of(group, square)
    return cayley_graph(sq, connection_component(group, h, kind, sq))


# ---------------------------------------------------------------------------
# structural maps
# ---------------------------------------------------------------------------


def _edge_map_ok(src: np.ndarray, dst: np.ndarray, perm: np.ndarray) -> bool:
    """perm is a bijection and carries the edge set of src onto that of dst."""
    if np.unique(perm).size != perm.size:
        return False
    return bool(np.array_equal(src, dst[np.ix_(perm, perm)]))


def _pair_maps(group: FiniteGroup):
    n = group.order
    x = np.repeat(np.arange(n), n)
    y = np.tile(np.arange(n), n)
    inv = group.inverses
    t = group.table
    return n, x, y, inv, t


def alpha_permutation(group: FiniteGroup) -> np.ndarray:
    """Vertex map (x, y) -> (y^-1, y^-1 x) on G x G."""
    n, x, y, inv, t = _pair_maps(group)
    return inv[y] * n + t[inv[y], x]


def verify_alpha_isomorphism(group: FiniteGroup, h: SubgroupData) -> bool:
    """Exhaustively test whether alpha maps Gamma^(1) onto Gamma^(2) and
    Gamma^(2) onto Gamma^(3) under the u v^-1 adjacency convention."""
    report = component_isomorphism_report(group, h)
    return report["alpha_1_to_2"] and report["alpha_2_to_3"]


def component_isomorphism_report(group: FiniteGroup, h: SubgroupData) -> dict[str, bool]:
    """Literal alpha checks plus explicit isomorphisms valid for every H.

    Under u ~ v iff u v^-1 in S, alpha is an isomorphism exactly when the
    conjugates of G - H stay outside H. The maps (x, y) -> (y, x) for
    1 -> 2 and (x, y) -> (y, y x^-1) for 2 -> 3 work for any subgroup;
    the latter is alpha composed with inversion on both coordinates.
    """
    sq = direct_square(group)
    a1, a2, a3 = (component_graph(group, h, k, sq).adjacency for k in (1, 2, 3))
    n, x, y, inv, t = _pair_maps(group)
    alpha = alpha_permutation(group)
    swap = y * n + x
    transported = y * n + t[y, inv[x]]
    return {
        "alpha_1_to_2": _edge_map_ok(a1, a2, alpha),
        "alpha_2_to_3": _edge_map_ok(a2, a3, alpha),
        "swap_1_to_2": _edge_map_ok(a1, a2, swap),
        "transported_alpha_2_to_3": _edge_map_ok(a2, a3, transported),
    }


def cartesian_product(a, b) -> np.ndarray:
    """Box product adjacency, vertex (i, j) numbered i * |B| + j."""
    aa = np.asarray(getattr(a, "adjacency", a), dtype=np.uint8)
    bb = np.asarray(getattr(b, "adjacency", b), dtype=np.uint8)
    na, nb = aa.shape[0], bb.shape[0]
    return (np.kron(aa, np.eye(nb, dtype=np.uint8)) + np.kron(np.eye(na, dtype=np.uint8), bb)).astype(np.uint8)


def is_connected(graph) -> bool:
    adj = np.asarray(getattr(graph, "adjacency", graph))
    n = adj.shape[0]
    if n == 0:
        return True
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in np.flatnonzero((adj[u] != 0) & ~seen):
            seen[v] = True
            queue.append(int(v))
    return bool(seen.all())
