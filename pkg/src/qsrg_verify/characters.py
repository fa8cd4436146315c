"""Exact character tables of finite abelian groups.

Character values are roots of unity stored as rational exponents; sums of
them are reduced exactly in Z[zeta_m] modulo the m-th cyclotomic polynomial,
so "is this sum 0 / an integer" never depends on floating point.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import BadConnectionSet, NotAbelian
from .groups import FiniteGroup, SubgroupData, _closure_mask
from .spectrum import Approx, Spectrum


# ---------------------------------------------------------------------------
# cyclotomic arithmetic
# ---------------------------------------------------------------------------


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    dd = len(den) - 1
    q = [0] * max(1, len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            q[i - dd] = c
            for j, d in enumerate(den):
                num[i - dd + j] -= c * d
    rem = num[:dd] if dd else []
    return q, rem


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_poly(d)))
            assert not any(rem)
    return tuple(poly)


@dataclass(frozen=True)
class CyclotomicSum:
    """An element of Z[zeta_m] in canonical reduced form.

    ``coeffs[j]`` multiplies ``zeta_m**j`` with ``j < phi(m)``.
    """

    m: int
    coeffs: tuple[int, ...]

    @classmethod
    def from_exponents(cls, m: int, exponents: Iterable[int]) -> "CyclotomicSum":
        raw = [0] * m
        for e in exponents:
            raw[e % m] += 1
        return cls.from_raw(m, raw)

    @classmethod
    def from_raw(cls, m: int, raw: Sequence[int]) -> "CyclotomicSum":
        phi = cyclotomic_poly(m)
        _, rem = _poly_divmod(list(raw), list(phi))
        rem = rem + [0] * (len(phi) - 1 - len(rem))
        return cls(m, tuple(rem))

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_integer:
            raise ValueError("sum is not a rational integer")
        return self.coeffs[0] if self.coeffs else 0

    def __complex__(self) -> complex:
        z = cmath.exp(2j * math.pi / self.m)
        return complex(sum(c * z**j for j, c in enumerate(self.coeffs)))

    @property
    def real(self) -> float:
        return complex(self).real


# ---------------------------------------------------------------------------
# decomposition and characters
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class AbelianDecomposition:
    group: FiniteGroup
    cyclic_orders: tuple[int, ...]
    generators: tuple[int, ...]
    coordinate_map: tuple[tuple[int, ...], ...]

    @property
    def exponent(self) -> int:
        return reduce(math.lcm, self.cyclic_orders, 1)


def _require_abelian(group: FiniteGroup) -> None:
    if not group.is_abelian:
        raise NotAbelian(f"{group!r} is not abelian")


def decompose_abelian(group: FiniteGroup) -> AbelianDecomposition:
    """Split off maximal-order cyclic factors until the group is exhausted."""
    _require_abelian(group)
    orders = group.element_orders
    span = _closure_mask(group, [])
    gens: list[int] = []
    cyc: list[int] = []
    while not span.all():
        span_idx = np.flatnonzero(span)
        # order of g modulo the current span
        best, best_ord = None, 0
        for g in range(group.order):
            if span[g]:
                continue
            x, k = g, 1
            while not span[x]:
                x = int(group.table[x, g])
                k += 1
            if k > best_ord:
                best, best_ord = g, k
        # lift of that coset whose order equals its order in the quotient
        lift = None
        for h in span_idx:
            cand = int(group.table[best, h])
            if orders[cand] == best_ord:
                lift = cand
                break
        if lift is None:  # pragma: no cover - cannot happen for max-order choices
            raise RuntimeError("no complement-compatible lift found")
        gens.append(lift)
        cyc.append(best_ord)
        span = _closure_mask(group, gens)
    coords: list[tuple[int, ...] | None] = [None] * group.order
    for combo in itertools.product(*(range(m) for m in cyc)):
        x = group.identity
        for g, c in zip(gens, combo):
            x = int(group.table[x, group.power(g, c)])
        if coords[x] is not None:
            raise RuntimeError("coordinate map is not injective")
        coords[x] = combo
    dec = AbelianDecomposition(group, tuple(cyc), tuple(gens), tuple(coords))  # type: ignore[arg-type]
    _check_coordinates(dec)
    return dec


def _check_coordinates(dec: AbelianDecomposition) -> None:
    g = dec.group
    coords = np.array(dec.coordinate_map, dtype=np.int64).reshape(g.order, len(dec.cyclic_orders))
    mods = np.array(dec.cyclic_orders, dtype=np.int64)
    lhs = coords[g.table]  # coords of a*b
    rhs = (coords[:, None, :] + coords[None, :, :]) % mods if mods.size else lhs
    if not np.array_equal(lhs, rhs):
        raise RuntimeError("coordinate map is not a homomorphism")


@dataclass(frozen=True, eq=False)
class AbelianCharacter:
    """chi_a(x) = exp(2 pi i sum a_i x_i / m_i), kept as exponents mod 1."""

    decomposition: AbelianDecomposition
    frequency: tuple[int, ...]

    @property
    def degree(self) -> int:
        return 1

    def exponent(self, g: int) -> Fraction:
        x = self.decomposition.coordinate_map[g]
        e = sum(Fraction(a * xi, m) for a, xi, m in zip(self.frequency, x, self.decomposition.cyclic_orders))
        return e - math.floor(e)

    def exponent_int(self, g: int) -> int:
        """Exponent scaled to the group exponent M: value = zeta_M ** result."""
        big = self.decomposition.exponent
        x = self.decomposition.coordinate_map[g]
        return sum(a * xi * (big // m) for a, xi, m in zip(self.frequency, x, self.decomposition.cyclic_orders)) % big

    def value(self, g: int) -> complex:
        return cmath.exp(2j * math.pi * float(self.exponent(g)))

    @property
    def is_trivial(self) -> bool:
        return not any(self.frequency)

    def is_trivial_on(self, elements: Iterable[int]) -> bool:
        return all(self.exponent_int(g) == 0 for g in elements)


def character_table(group: FiniteGroup) -> list[AbelianCharacter]:
    """All |G| characters, frequencies in lexicographic order (trivial first)."""
    dec = decompose_abelian(group)
    return [AbelianCharacter(dec, freq) for freq in itertools.product(*(range(m) for m in dec.cyclic_orders))]


def char_sum(chi: AbelianCharacter, elements: Iterable[int]) -> CyclotomicSum:
    return CyclotomicSum.from_exponents(chi.decomposition.exponent, (chi.exponent_int(g) for g in elements))


def inner_product_times_order(chi: AbelianCharacter, psi: AbelianCharacter) -> CyclotomicSum:
    """|G| * <chi, psi> as an exact cyclotomic integer."""
    group = chi.decomposition.group
    big = chi.decomposition.exponent
    return CyclotomicSum.from_exponents(big, (chi.exponent_int(g) - psi.exponent_int(g) for g in range(group.order)))


def abelian_cayley_spectrum(group: FiniteGroup, elements: Iterable[int]) -> Spectrum:
    """Eigenvalues of Cay(G, S) for abelian G as the character sums chi(S)."""
    _require_abelian(group)
    s = sorted({int(x) for x in elements})
    if group.identity in s:
        raise BadConnectionSet("connection set contains the identity")
    if any(group.inv(x) not in s for x in s):
        raise BadConnectionSet("connection set is not inverse-closed")
    counts: dict[CyclotomicSum, int] = {}
    for chi in character_table(group):
        val = char_sum(chi, s)
        counts[val] = counts.get(val, 0) + 1
    entries = []
    for val, mult in counts.items():
        entries.append((val.to_int(), mult) if val.is_integer else (Approx(val.real), mult))
    return Spectrum.from_entries(entries)


def characters_trivial_on(group: FiniteGroup, h: SubgroupData) -> list[AbelianCharacter]:
    return [chi for chi in character_table(group) if chi.is_trivial_on(h.elements)]


def fixed_dim_sum_check(group: FiniteGroup, h: SubgroupData) -> int:
    """Count pairs of H-nontrivial characters whose product is trivial on H."""
    _require_abelian(group)
    nontrivial = [chi for chi in character_table(group) if not chi.is_trivial_on(h.elements)]
    big = nontrivial[0].decomposition.exponent if nontrivial else 1
    vecs = np.array([[chi.exponent_int(x) for x in h.elements] for chi in nontrivial], dtype=np.int64)
    if vecs.size == 0:
        return 0
    prod = (vecs[:, None, :] + vecs[None, :, :]) % big
    return int(np.count_nonzero(~prod.any(axis=2)))
