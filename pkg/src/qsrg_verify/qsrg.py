"""Common-neighbour statistics and quasi-strongly-regular parameters."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import NotQsrg, NotRegular

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class QsrgParams:
    vertex_count: int
    degree: int
    a: int | None
    c_set: tuple[int, ...]
    witnesses: dict[int, tuple[int, int]] = field(default_factory=dict, compare=False)
    # no adjacent pairs (a undefined) or no non-adjacent pairs (empty c-set)
    degenerate: bool = False

    @property
    def grade(self) -> int:
        return len(self.c_set)

    def report(self, predicted_c: tuple[int, ...] | None = None, predicted_a: int | None = None) -> dict:
        matches = None
        if predicted_c is not None:
            matches = tuple(self.c_set) == tuple(predicted_c) and (predicted_a is None or self.a == predicted_a)
        return {
            "n": self.vertex_count,
            "degree": self.degree,
            "a": self.a,
            "c_set": list(self.c_set),
            "grade": self.grade,
            "matches_prediction": matches,
            "witnesses": {str(c): list(p) for c, p in sorted(self.witnesses.items())},
        }


def _bits(graph) -> np.ndarray:
    bits = getattr(graph, "bit_rows", None)
    if bits is None:
        bits = _kernels.pack_rows(np.asarray(graph))
    return bits


def _adjacency(graph) -> np.ndarray:
    return np.asarray(getattr(graph, "adjacency", graph))


def common_neighbors(graph, u: int, v: int) -> int:
    if u == v:
        raise ValueError("u and v must differ")
    bits = _bits(graph)
    return int(np.bitwise_count(bits[u] & bits[v]).sum())


def common_neighbor_matrix(graph) -> np.ndarray:
    return _kernels.common_neighbor_counts(_bits(graph))


def qsrg_parameters(graph) -> QsrgParams:
    """Exhaustive pair scan. Raises NotRegular / NotQsrg."""
    adj = _adjacency(graph).astype(bool)
    n = adj.shape[0]
    degrees = adj.sum(axis=1)
    if n and not np.all(degrees == degrees[0]):
        raise NotRegular(f"degrees range over {sorted(set(degrees.tolist()))[:5]}")
    degree = int(degrees[0]) if n else 0
    counts = common_neighbor_matrix(graph)
    iu, ju = np.triu_indices(n, k=1)
    adjacent = adj[iu, ju]
    a_vals = counts[iu[adjacent], ju[adjacent]]
    a = None
    if a_vals.size:
        a = int(a_vals[0])
        bad = np.flatnonzero(a_vals != a)
        if bad.size:
            first = (int(iu[adjacent][0]), int(ju[adjacent][0]))
            other = (int(iu[adjacent][bad[0]]), int(ju[adjacent][bad[0]]))
            raise NotQsrg(
                f"adjacent pairs {first} and {other} have {a} and {int(a_vals[bad[0]])} common neighbours",
                (first, other),
            )
    non = ~adjacent
    c_vals = counts[iu[non], ju[non]]
    witnesses: dict[int, tuple[int, int]] = {}
    c_set = tuple(sorted(int(c) for c in np.unique(c_vals)))
    for c in c_set:
        pos = int(np.flatnonzero(c_vals == c)[0])
        witnesses[c] = (int(iu[non][pos]), int(ju[non][pos]))
    degenerate = a is None or not c_set
    return QsrgParams(n, degree, a, c_set, witnesses, degenerate)


def predicted_a(n: int, k: int) -> int:
    """Common neighbours of adjacent vertices in Gamma_H(G): n - 2k + 2."""
    if k > n:
        raise ValueError("k must not exceed n")
    a = n - 2 * k + 2
    if k == n:
        log.info("predicted_a(%d, %d) = %d: edgeless case, no adjacent pairs", n, k, a)
    return a


def predicted_c_set(n: int, k: int, ell: int, h_normal: bool) -> tuple[int, ...]:
    """c-set of Gamma_H(G) for a proper nontrivial H, duplicates merged."""
    if not 1 < k < n or ell * k != n:
        raise ValueError("need 1 < k < n and ell = n / k")
    rest = n - k
    if ell == 2:
        vals = {0, 2, rest}
    elif h_normal:
        vals = {2, 6, rest} if k == 2 else {0, 2, 6, rest}
    else:
        vals = {2, 4, 6, rest} if k == 2 else {0, 2, 4, 6, rest}
    return tuple(sorted(vals))


def srg_parameters(n: int) -> tuple[int, int, int, int]:
    """Gamma_{1}(G) is strongly regular with parameters (n^2, 3n-3, n, 6)."""
    return (n * n, 3 * n - 3, n, 6)
