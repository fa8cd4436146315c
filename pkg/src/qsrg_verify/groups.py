"""Finite groups as multiplication tables, subgroups, atoms and products."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import NotAGroup, NotASubgroup, NotNormal, OrderBoundExceeded, UnsupportedFamily

SUBGROUP_ENUM_BOUND = 24
DIRECT_SQUARE_BOUND = 16
SYMMETRIC_DEGREE_BOUND = 6
# Theorems about Gamma_H(G) are stated for |G| >= 5 only.
MIN_CLAIM_ORDER = 5


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Group on elements ``0..order-1`` given by its Cayley table.

    Element identity is the index; ``labels`` are cosmetic.
    """

    order: int
    table: np.ndarray
    identity: int
    inverses: np.ndarray
    labels: tuple[str, ...] | None = None
    name: str = ""

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels is not None else str(a)

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        for g in range(self.order):
            x, k = g, 1
            while x != self.identity:
                x = int(self.table[x, g])
                k += 1
            orders[g] = k
        return orders

    def element_order(self, g: int) -> int:
        return int(self.element_orders[g])

    def power(self, g: int, k: int) -> int:
        k %= self.element_order(g)
        x = self.identity
        for _ in range(k):
            x = int(self.table[x, g])
        return x

    def conjugates_of_set(self, mask: np.ndarray) -> np.ndarray:
        """Row ``g`` is the membership mask of ``g S g^-1``."""
        elems = np.flatnonzero(mask)
        out = np.zeros((self.order, self.order), dtype=bool)
        if elems.size == 0:
            return out
        gs = self.table[:, elems]  # g*s
        conj = self.table[gs, self.inverses[:, None]]  # g*s*g^-1
        out[np.arange(self.order)[:, None], conj] = True
        return out

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"


def group_from_table(
    table: Sequence[Sequence[int]] | np.ndarray,
    labels: Sequence[str] | None = None,
    name: str = "",
) -> FiniteGroup:
    """Validate a Cayley table and wrap it as a :class:`FiniteGroup`."""
    t = np.array(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise NotAGroup("table is not a non-empty square array")
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise NotAGroup("table entry out of range 0..n-1")
    target = np.arange(n)
    sorted_rows = np.sort(t, axis=1)
    for i in range(n):
        if not np.array_equal(sorted_rows[i], target):
            raise NotAGroup(f"row {i} is not a permutation")
    sorted_cols = np.sort(t, axis=0)
    for j in range(n):
        if not np.array_equal(sorted_cols[:, j], target):
            raise NotAGroup(f"column {j} is not a permutation")
    identity = None
    for e in range(n):
        if np.array_equal(t[e], target) and np.array_equal(t[:, e], target):
            identity = e
            break
    if identity is None:
        raise NotAGroup("no two-sided identity")
    # Latin square: exactly one j per row with i*j = e.
    inverses = np.argmax(t == identity, axis=1)
    if not np.all(t[inverses, np.arange(n)] == identity):
        raise NotAGroup("left and right inverses differ")
    if not _kernels.is_associative(t):
        raise NotAGroup("associativity fails")
    if labels is not None:
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise NotAGroup(f"expected {n} labels, got {len(labels)}")
    return FiniteGroup(n, t, identity, inverses.astype(np.int64), labels, name)


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupFamilySpec:
    """Recipe for a concrete group.

    kind is one of ``cyclic``, ``dihedral``, ``symmetric``, ``direct-product``
    or ``table-file``; ``params`` holds an int, a pair of specs, or a path.
    """

    kind: str
    params: tuple = ()

    def __str__(self) -> str:
        if self.kind == "cyclic":
            return f"Z{self.params[0]}"
        if self.kind == "dihedral":
            return f"D{self.params[0]}"
        if self.kind == "symmetric":
            return f"S{self.params[0]}"
        if self.kind == "direct-product":
            return f"{self.params[0]}x{self.params[1]}"
        if self.kind == "table-file":
            return f"@{self.params[0]}"
        return f"{self.kind}{self.params}"


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise UnsupportedFamily("cyclic order must be >= 1")
    idx = np.arange(n)
    return group_from_table((idx[:, None] + idx[None, :]) % n, [str(i) for i in range(n)], f"Z{n}")


def dihedral_group(m: int) -> FiniteGroup:
    """D_m of order 2m: index i is r^i, index m+i is s r^i."""
    if m < 1:
        raise UnsupportedFamily("dihedral parameter must be >= 1")
    n = 2 * m
    table = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        a, i = divmod(x, m)
        for y in range(n):
            b, j = divmod(y, m)
            # (s^a r^i)(s^b r^j) = s^(a+b) r^((-1)^b i + j)
            rot = (j + (-i if b else i)) % m
            table[x, y] = ((a + b) % 2) * m + rot
    labels = [f"r{i}" for i in range(m)] + [f"sr{i}" for i in range(m)]
    return group_from_table(table, labels, f"D{m}")


def symmetric_group(m: int) -> FiniteGroup:
    """S_m on permutations of 0..m-1 in lexicographic one-line order.

    Product is composition ``(p*q)(x) = p(q(x))``.
    """
    if m < 1:
        raise UnsupportedFamily("symmetric degree must be >= 1")
    if m > SYMMETRIC_DEGREE_BOUND:
        raise UnsupportedFamily(f"symmetric degree {m} exceeds bound {SYMMETRIC_DEGREE_BOUND}")
    perms = list(itertools.permutations(range(m)))
    index = {p: i for i, p in enumerate(perms)}
    arr = np.array(perms, dtype=np.int64)
    n = len(perms)
    table = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        composed = arr[i][arr]  # row j is p_i o p_j
        for j in range(n):
            table[i, j] = index[tuple(composed[j])]
    labels = ["".join(str(v + 1) for v in p) for p in perms]
    return group_from_table(table, labels, f"S{m}")


def direct_product(g1: FiniteGroup, g2: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """Componentwise product; index(a, b) = index(a) * |G2| + index(b)."""
    n1, n2 = g1.order, g2.order
    t = g1.table[:, None, :, None] * n2 + g2.table[None, :, None, :]
    table = t.reshape(n1 * n2, n1 * n2)
    labels = [f"({g1.label(a)},{g2.label(b)})" for a in range(n1) for b in range(n2)]
    return group_from_table(table, labels, name if name is not None else f"{g1.name}x{g2.name}")


def direct_square(group: FiniteGroup, bound: int = DIRECT_SQUARE_BOUND) -> FiniteGroup:
    if group.order > bound:
        raise OrderBoundExceeded(f"|G| = {group.order} exceeds direct-square bound {bound}")
    return direct_product(group, group, name=f"({group.name})^2")


def build_family(family: GroupFamilySpec) -> FiniteGroup:
    kind, params = family.kind, family.params
    if kind == "cyclic":
        return cyclic_group(int(params[0]))
    if kind == "dihedral":
        return dihedral_group(int(params[0]))
    if kind == "symmetric":
        return symmetric_group(int(params[0]))
    if kind == "direct-product":
        left, right = params
        return direct_product(build_family(left), build_family(right), name=str(family))
    if kind == "table-file":
        from .io import read_table_file

        return read_table_file(params[0])
    raise UnsupportedFamily(f"unknown family {kind!r}")


# ---------------------------------------------------------------------------
# subgroups
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SubgroupData:
    parent: FiniteGroup
    elements: tuple[int, ...]
    is_normal: bool
    generators: tuple[int, ...] = field(default=())

    @property
    def k(self) -> int:
        return len(self.elements)

    @property
    def ell(self) -> int:
        return self.parent.order // self.k

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.elements)] = True
        return m

    @property
    def is_trivial(self) -> bool:
        return self.k == 1

    @property
    def is_proper(self) -> bool:
        return self.k < self.parent.order

    def __contains__(self, g: int) -> bool:
        return bool(self.mask[g])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubgroupData):
            return NotImplemented
        return self.parent is other.parent and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))

    def __repr__(self) -> str:
        return f"SubgroupData({self.parent.name}, {list(self.elements)}, normal={self.is_normal})"


def _closure_mask(group: FiniteGroup, generators: Iterable[int]) -> np.ndarray:
    gens = np.unique(np.fromiter(generators, dtype=np.int64))
    mask = np.zeros(group.order, dtype=bool)
    mask[group.identity] = True
    if gens.size == 0:
        return mask
    frontier = np.array([group.identity], dtype=np.int64)
    while frontier.size:
        prod = np.unique(group.table[frontier][:, gens])
        new = prod[~mask[prod]]
        mask[new] = True
        frontier = new
    return mask


def is_normal_set(group: FiniteGroup, elements: Iterable[int] | np.ndarray) -> bool:
    """True iff ``g S g^-1 = S`` for every g."""
    mask = _as_mask(group, elements)
    conj = group.conjugates_of_set(mask)
    return bool(np.all(conj == mask[None, :]))


def _as_mask(group: FiniteGroup, elements) -> np.ndarray:
    arr = np.asarray(elements)
    if arr.dtype == bool and arr.shape == (group.order,):
        return arr
    mask = np.zeros(group.order, dtype=bool)
    idx = np.fromiter((int(x) for x in elements), dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= group.order):
        raise ValueError("element index out of range")
    mask[idx] = True
    return mask


def _subgroup_from_mask(group: FiniteGroup, mask: np.ndarray, generators=()) -> SubgroupData:
    elements = tuple(int(x) for x in np.flatnonzero(mask))
    return SubgroupData(group, elements, is_normal_set(group, mask), tuple(generators))


def subgroup_generated(group: FiniteGroup, generators: Iterable[int]) -> SubgroupData:
    gens = sorted({int(g) for g in generators})
    for g in gens:
        if not 0 <= g < group.order:
            raise ValueError(f"generator {g} out of range")
    return _subgroup_from_mask(group, _closure_mask(group, gens), gens)


def make_subgroup(group: FiniteGroup, elements: Iterable[int]) -> SubgroupData:
    """Wrap an explicit element set, checking that it is a subgroup."""
    mask = _as_mask(group, elements)
    if not mask[group.identity]:
        raise NotASubgroup("identity missing")
    idx = np.flatnonzero(mask)
    if not np.all(mask[group.table[np.ix_(idx, idx)]]):
        raise NotASubgroup("not closed under multiplication")
    return _subgroup_from_mask(group, mask)


def all_subgroups(group: FiniteGroup, bound: int = SUBGROUP_ENUM_BOUND) -> list[SubgroupData]:
    """Every subgroup once, sorted by (order, elements).

    Starts from the cyclic subgroups and closes pairwise joins to a fixpoint.
    """
    if group.order > bound:
        raise OrderBoundExceeded(f"|G| = {group.order} exceeds subgroup enumeration bound {bound}")

    def key(mask: np.ndarray) -> int:
        return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")

    found: dict[int, np.ndarray] = {}
    queue: list[np.ndarray] = []
    for g in range(group.order):
        m = _closure_mask(group, [g])
        kk = key(m)
        if kk not in found:
            found[kk] = m
            queue.append(m)
    while queue:
        m = queue.pop()
        for other in list(found.values()):
            union = m | other
            kk = key(union)
            if kk in found:
                continue
            joined = _closure_mask(group, np.flatnonzero(union))
            kj = key(joined)
            if kj not in found:
                found[kj] = joined
                queue.append(joined)
    subs = [_subgroup_from_mask(group, m) for m in found.values()]
    subs.sort(key=lambda s: (s.k, s.elements))
    return subs


def proper_nontrivial_subgroups(group: FiniteGroup, bound: int = SUBGROUP_ENUM_BOUND) -> list[SubgroupData]:
    return [h for h in all_subgroups(group, bound) if 1 < h.k < group.order]


# ---------------------------------------------------------------------------
# atoms and quotients
# ---------------------------------------------------------------------------


def atom(group: FiniteGroup, g: int) -> frozenset[int]:
    """Generators of the cyclic subgroup <g>."""
    o = group.element_order(g)
    out = set()
    x = group.identity
    for k in range(1, o + 1):
        x = int(group.table[x, g])
        if math.gcd(k, o) == 1:
            out.add(x)
    return frozenset(out)


def all_atoms(group: FiniteGroup) -> list[frozenset[int]]:
    seen: set[int] = set()
    atoms = []
    for g in range(group.order):
        if g not in seen:
            a = atom(group, g)
            seen |= a
            atoms.append(a)
    return atoms


def is_eulerian(group: FiniteGroup, elements: Iterable[int]) -> bool:
    s = {int(x) for x in elements}
    return all(atom(group, x) <= s for x in s)


def quotient(group: FiniteGroup, h: SubgroupData) -> FiniteGroup:
    """G/H on coset representatives (smallest index in each coset)."""
    if not h.is_normal:
        raise NotNormal(f"{h!r} is not normal")
    hidx = np.array(h.elements, dtype=np.int64)
    rep_of = np.empty(group.order, dtype=np.int64)
    for g in range(group.order):
        rep_of[g] = group.table[g, hidx].min()
    reps = np.unique(rep_of)
    pos = {int(r): i for i, r in enumerate(reps)}
    m = reps.size
    table = np.empty((m, m), dtype=np.int64)
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            table[i, j] = pos[int(rep_of[group.table[a, b]])]
    labels = [f"{group.label(int(r))}H" for r in reps]
    return group_from_table(table, labels, f"{group.name}/H")
