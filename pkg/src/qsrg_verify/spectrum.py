"""Exact adjacency spectra.

Integer eigenvalues and their multiplicities are decided with exact integer
arithmetic only; floating point is used to propose candidates and to
describe the irrational remainder, never to confirm integrality.

How the integer part is certified:

* ``rank_p(M) <= rank_Q(M)`` for every prime p, so the nullity of
  ``A - lam*I`` modulo p is an upper bound ``d(lam)`` on the true
  multiplicity. A candidate with ``d(lam) = 0`` is excluded exactly.
* If the candidates proposed by the eigensolver satisfy
  ``sum d(lam) = N`` and ``prod (A - lam*I) = 0`` holds exactly over Z, every
  eigenvalue lies in the candidate set and, A being symmetric, the true
  multiplicities sum to N. Together with ``m(lam) <= d(lam)`` this forces
  ``m(lam) = d(lam)``.
* Otherwise every integer in ``[-Delta, Delta]`` is screened modulo p and
  each survivor is settled by fraction-free (Bareiss) elimination over
  arbitrary-precision integers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

import numpy as np

from . import _kernels
from .errors import NumericMismatch

DIMENSION_GUARD = 4096
CLUSTER_TOL = 1e-7
TRACE_TOL = 1e-6


@dataclass(frozen=True)
class Approx:
    """A numerically clustered real eigenvalue. Never promoted to an integer."""

    value: float

    def __float__(self) -> float:
        return self.value

    def __repr__(self) -> str:
        return f"Approx({self.value:.10f})"


Value = Union[int, Approx]


def _num(v: Value) -> float:
    return float(v)


def _sort_key(item: tuple[Value, int]):
    v = item[0]
    # descending by value; exact before approximate on ties
    return (-_num(v), isinstance(v, Approx))


@dataclass(frozen=True)
class Spectrum:
    entries: tuple[tuple[Value, int], ...]
    dimension: int
    tolerance: float = field(default=CLUSTER_TOL, compare=False)
    method: str = field(default="", compare=False)

    def __post_init__(self):
        seen_int = set()
        approx = []
        for v, m in self.entries:
            if m < 1:
                raise ValueError("multiplicities must be >= 1")
            if isinstance(v, Approx):
                approx.append(v.value)
            else:
                if v in seen_int:
                    raise ValueError(f"duplicate exact eigenvalue {v}")
                seen_int.add(v)
        approx.sort()
        if any(b - a <= self.tolerance for a, b in zip(approx, approx[1:])):
            raise ValueError("approximate eigenvalues closer than the cluster tolerance")
        if sum(m for _, m in self.entries) != self.dimension:
            raise ValueError("multiplicities do not sum to the dimension")
        if list(self.entries) != sorted(self.entries, key=_sort_key):
            raise ValueError("entries are not in canonical order")

    @classmethod
    def from_entries(
        cls, entries: Iterable[tuple[Value, int]], tolerance: float = CLUSTER_TOL, method: str = ""
    ) -> "Spectrum":
        """Canonicalize: merge equal exact values, merge approximate values
        within ``tolerance``, drop zero multiplicities, sort descending."""
        ints: dict[int, int] = {}
        approx: list[tuple[float, int]] = []
        for v, m in entries:
            if m == 0:
                continue
            if isinstance(v, Approx):
                approx.append((v.value, m))
            else:
                v = int(v)
                ints[v] = ints.get(v, 0) + m
        approx.sort()
        merged: list[list] = []
        for x, m in approx:
            if merged and x - merged[-1][2] <= tolerance:
                tot = merged[-1][1] + m
                merged[-1][0] = (merged[-1][0] * merged[-1][1] + x * m) / tot
                merged[-1][1] = tot
                merged[-1][2] = x
            else:
                merged.append([x, m, x])
        items: list[tuple[Value, int]] = [(v, m) for v, m in ints.items()]
        items += [(Approx(x), m) for x, m, _ in merged]
        items.sort(key=_sort_key)
        return cls(tuple(items), sum(m for _, m in items), tolerance, method)

    @classmethod
    def from_dict(cls, mapping: Mapping[int, int]) -> "Spectrum":
        return cls.from_entries(mapping.items())

    # -- views -------------------------------------------------------------

    @property
    def int_part(self) -> dict[int, int]:
        return {v: m for v, m in self.entries if not isinstance(v, Approx)}

    @property
    def approx_part(self) -> list[tuple[float, int]]:
        return [(v.value, m) for v, m in self.entries if isinstance(v, Approx)]

    @property
    def kappa(self) -> int:
        return len(self.entries)

    @property
    def integer_mass(self) -> int:
        return sum(self.int_part.values())

    def multiplicity(self, value: int) -> int:
        return self.int_part.get(int(value), 0)

    def max_entry(self) -> tuple[Value, int]:
        return self.entries[0]

    def values(self) -> list[float]:
        """Flat sorted (descending) list of eigenvalues with repetition."""
        out: list[float] = []
        for v, m in self.entries:
            out.extend([_num(v)] * m)
        return out

    def validate_trace(self) -> None:
        s = spectral_moment(self, 1)
        if isinstance(s, int):
            if s != 0:
                raise ValueError(f"trace is {s}, expected 0")
        elif abs(s) > TRACE_TOL * max(1, self.dimension):
            raise ValueError(f"trace is {s}, expected 0")

    # -- serialization ---------------------------------------------------------

    def to_dict(self) -> dict:
        rows = []
        for v, m in self.entries:
            if isinstance(v, Approx):
                rows.append({"value": round(v.value, 10), "kind": "approx", "mult": m})
            else:
                rows.append({"value": str(v), "kind": "int", "mult": m})
        return {"entries": rows, "dimension": self.dimension}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str | dict) -> "Spectrum":
        data = json.loads(text) if isinstance(text, str) else text
        entries: list[tuple[Value, int]] = []
        for row in data["entries"]:
            if row["kind"] == "int":
                entries.append((int(row["value"]), int(row["mult"])))
            else:
                entries.append((Approx(float(row["value"])), int(row["mult"])))
        out = cls.from_entries(entries)
        if out.dimension != data["dimension"]:
            raise ValueError("dimension does not match entries")
        return out

    def compact(self) -> str:
        """``12^1 4^9 0^6 -2^18 -6^2`` style string; approximate values get 6 decimals."""
        parts = []
        for v, m in self.entries:
            s = f"~{v.value:.6f}" if isinstance(v, Approx) else str(v)
            parts.append(f"{s}^{m}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.compact()


@dataclass(frozen=True)
class IntegralityReport:
    is_integral: bool
    integer_mass: int
    residual_dimension: int


# ---------------------------------------------------------------------------
# exact rank
# ---------------------------------------------------------------------------


def bareiss_rank(matrix) -> int:
    """Rank over Q by fraction-free elimination on Python integers.

    Columns without a pivot are skipped; every division is exact.
    """
    m = np.array(matrix, dtype=object)
    if m.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = m.shape
    prev = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c] != 0)
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        piv = m[r, c]
        if r + 1 < rows and c + 1 < cols:
            m[r + 1 :, c + 1 :] = (piv * m[r + 1 :, c + 1 :] - np.outer(m[r + 1 :, c], m[r, c + 1 :])) // prev
        m[r + 1 :, c] = 0
        prev = piv
        r += 1
    return r


def _shifted(a: np.ndarray, lam: int) -> np.ndarray:
    out = np.array(a, dtype=np.int64, copy=True)
    out[np.diag_indices_from(out)] -= lam
    return out


def integer_multiplicity(adjacency, lam: int) -> int:
    """dim ker(A - lam*I) over Q, by exact fraction-free elimination."""
    a = np.asarray(adjacency, dtype=np.int64)
    return a.shape[0] - bareiss_rank(_shifted(a, int(lam)))


def nullity_mod_p(adjacency, lam: int, p: int = _kernels.MODULUS) -> int:
    """Upper bound on the multiplicity of ``lam``; zero means exactly absent."""
    a = np.asarray(adjacency, dtype=np.int64)
    return a.shape[0] - _kernels.rank_mod_p(_shifted(a, int(lam)), p)


def annihilates(adjacency, values: Iterable[int]) -> bool:
    """Exact test of ``prod (A - v*I) == 0`` over the integers."""
    a = np.asarray(adjacency, dtype=np.int64)
    vals = sorted({int(v) for v in values})
    n = a.shape[0]
    if not vals:
        return n == 0
    delta = int(np.abs(a).sum(axis=1).max()) if n else 0
    bound = 1
    for v in vals:
        bound *= delta + abs(v)
    if bound < 2**62:
        prod = _shifted(a, vals[0])
        for v in vals[1:]:
            prod = _kernels.int_matmul(prod, _shifted(a, v))
        return not prod.any()
    prod = _shifted(a, vals[0]).astype(object)
    for v in vals[1:]:
        prod = prod.dot(_shifted(a, v).astype(object))
    return not any(x != 0 for x in prod.flat)


def _check_input(adjacency) -> np.ndarray:
    a = np.asarray(adjacency)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("adjacency must be square")
    if a.shape[0] > DIMENSION_GUARD:
        raise ValueError(f"dimension {a.shape[0]} exceeds guard {DIMENSION_GUARD}")
    a = a.astype(np.int64)
    if not np.array_equal(a, a.T):
        raise ValueError("adjacency must be symmetric")
    return a


def exact_integer_part(adjacency, numeric: np.ndarray | None = None) -> tuple[dict[int, int], str]:
    """Exact multiplicities of all integer eigenvalues and the route used."""
    a = _check_input(adjacency)
    n = a.shape[0]
    if n == 0:
        return {}, "empty"
    delta = int(np.abs(a).sum(axis=1).max())
    if numeric is None:
        numeric = np.linalg.eigvalsh(a.astype(np.float64))
    tol = CLUSTER_TOL * max(1, delta)
    proposed = sorted({int(round(x)) for x in numeric if abs(x - round(x)) <= tol})
    bounds = {lam: nullity_mod_p(a, lam) for lam in proposed}
    bounds = {lam: d for lam, d in bounds.items() if d > 0}
    if sum(bounds.values()) == n and annihilates(a, bounds):
        return bounds, "annihilator"
    exact: dict[int, int] = {}
    for lam in range(-delta, delta + 1):
        if nullity_mod_p(a, lam) == 0:
            continue
        m = integer_multiplicity(a, lam)
        if m:
            exact[lam] = m
    return exact, "bareiss"


def full_spectrum(adjacency) -> Spectrum:
    """Complete spectrum: exact integer part plus clustered irrational residue.

    Raises NumericMismatch when the eigensolver's count near an exact
    integer eigenvalue differs from the exact multiplicity.
    """
    a = _check_input(adjacency)
    n = a.shape[0]
    if n == 0:
        return Spectrum((), 0)
    delta = int(np.abs(a).sum(axis=1).max())
    tol = CLUSTER_TOL * max(1, delta)
    numeric = np.linalg.eigvalsh(a.astype(np.float64))
    exact, method = exact_integer_part(a, numeric)

    remaining = np.sort(numeric)
    for lam, m in exact.items():
        near = np.abs(remaining - lam) <= tol
        if int(near.sum()) != m:
            raise NumericMismatch(
                f"eigensolver finds {int(near.sum())} eigenvalues at {lam}, exact multiplicity is {m}"
            )
        remaining = remaining[~near]
    if remaining.size + sum(exact.values()) != n:  # pragma: no cover - guarded above
        raise NumericMismatch("eigenvalue count mismatch")
    entries: list[tuple[Value, int]] = list(exact.items())
    entries += [(Approx(float(x)), 1) for x in remaining]
    out = Spectrum.from_entries(entries, tolerance=tol, method=method)
    out.validate_trace()
    return out


def is_integral(spectrum: Spectrum) -> IntegralityReport:
    mass = spectrum.integer_mass
    return IntegralityReport(mass == spectrum.dimension, mass, spectrum.dimension - mass)


def isospectral(s1: Spectrum, s2: Spectrum) -> bool:
    if s1.dimension != s2.dimension or s1.int_part != s2.int_part:
        return False
    a1, a2 = s1.approx_part, s2.approx_part
    if len(a1) != len(a2):
        return False
    tol = max(s1.tolerance, s2.tolerance)
    return all(m1 == m2 and abs(x1 - x2) <= tol for (x1, m1), (x2, m2) in zip(a1, a2))


def spectral_moment(spectrum: Spectrum, p: int) -> int | float:
    """sum of value**p * multiplicity; exact when the spectrum is all-integer."""
    if p not in (0, 1, 2):
        raise ValueError("p must be 0, 1 or 2")
    exact = sum(v**p * m for v, m in spectrum.int_part.items())
    approx = spectrum.approx_part
    if not approx:
        return exact
    return exact + math.fsum(x**p * m for x, m in approx)
