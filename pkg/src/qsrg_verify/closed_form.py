"""Closed-form spectra of Gamma_H(G) for normal H, as functions of n = |G|
and k = |H| only."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidIndex
from .spectrum import Spectrum, isospectral

CASE_TAGS = ("ell2", "ell3", "ell_ge4_k2", "ell_ge4_kgt2")


@dataclass(frozen=True)
class ClosedFormPrediction:
    case_tag: str
    spectrum: Spectrum

    @property
    def kappa(self) -> int:
        return self.spectrum.kappa

    def to_dict(self) -> dict:
        d = self.spectrum.to_dict()
        d.update(case_tag=self.case_tag, kappa=self.kappa)
        return d


def _check(n: int, k: int) -> int:
    if not 1 < k < n:
        raise InvalidIndex(f"need 1 < k < n, got n={n}, k={k}")
    if n % k:
        raise InvalidIndex(f"k={k} does not divide n={n}")
    return n // k


def case_table(n: int, k: int) -> tuple[str, list[tuple[int, int]]]:
    """The published (eigenvalue, multiplicity) rows for the case selected by
    ell = n / k and k, before merging."""
    ell = _check(n, k)
    if ell == 2:
        return "ell2", [(3 * k, 1), (k, 3 * n - 6), (-k, 3 * n - 3), (0, n * n - 6 * n + 8)]
    if ell == 3:
        return "ell3", [(6 * k, 1), (2 * k, 3 * n - 9), (-k, 6 * n - 18), (-3 * k, 2), (0, n * n - 9 * n + 24)]
    if k == 2:
        return "ell_ge4_k2", [
            (6 * ell - 6, 1),
            (2 * ell - 6, 3 * ell - 3),
            (2 * ell - 2, 3 * ell),
            (-6, ell * ell - 3 * ell + 2),
            (-2, 3 * ell * ell - 3 * ell),
        ]
    return "ell_ge4_kgt2", generic_table(n, k)


def generic_table(n: int, k: int) -> list[tuple[int, int]]:
    """Six-row table of the ell >= 4, k > 2 case, evaluated for any (n, k).

    After merging coincident values and dropping zero rows it reproduces the
    other three cases as well.
    """
    ell = _check(n, k)
    return [
        (3 * (ell - 1) * k, 1),
        ((ell - 3) * k, 3 * ell - 3),
        ((ell - 1) * k, 3 * n - 3 * ell),
        (-3 * k, ell * ell - 3 * ell + 2),
        (-k, 3 * n * ell - 3 * ell * ell - 3 * n + 3 * ell),
        (0, n * n - 3 * n * ell + 2 * ell * ell),
    ]


def predicted_spectrum(n: int, k: int) -> ClosedFormPrediction:
    tag, rows = case_table(n, k)
    if any(m < 0 for _, m in rows):
        raise InvalidIndex(f"negative multiplicity for n={n}, k={k}")
    return ClosedFormPrediction(tag, Spectrum.from_entries(rows))


@dataclass(frozen=True)
class PartialPrediction:
    """Bounds valid for every proper nontrivial H, normal or not."""

    perron: int  # simple eigenvalue 3(n - k)
    low_value: int  # n - 3k, multiplicity >= 2(ell - 1)
    low_bound: int
    mid_value: int  # n - k, multiplicity >= 2(n - ell)
    mid_bound: int
    zero_expected: bool  # k > 2 forces 0 into the spectrum

    def entries(self) -> list[tuple[int, str, int]]:
        out = [(self.perron, "exact", 1), (self.low_value, "min", self.low_bound), (self.mid_value, "min", self.mid_bound)]
        if self.zero_expected:
            out.append((0, "min", 1))
        return out

    def check(self, spectrum: Spectrum) -> list[dict]:
        """One row per bound: value, kind, bound, measured multiplicity, ok."""
        rows = []
        top, top_mult = spectrum.max_entry()
        rows.append(
            {
                "value": self.perron,
                "kind": "exact",
                "bound": 1,
                "measured": spectrum.multiplicity(self.perron),
                "ok": top == self.perron and top_mult == 1,
            }
        )
        for value, kind, bound in self.entries()[1:]:
            m = spectrum.multiplicity(value)
            rows.append({"value": value, "kind": kind, "bound": bound, "measured": m, "ok": m >= bound})
        return rows


def predicted_partial(n: int, k: int) -> PartialPrediction:
    if not 1 < k < n:
        raise InvalidIndex(f"need 1 < k < n, got n={n}, k={k}")
    ell = n // k
    return PartialPrediction(3 * (n - k), n - 3 * k, 2 * (ell - 1), n - k, 2 * (n - ell), k > 2)


@dataclass(frozen=True)
class KappaVerdict:
    predicted_kappa: int
    measured_kappa: int
    kappa_match: bool
    kappa_in_range: bool
    spectrum_match: bool

    @property
    def ok(self) -> bool:
        return self.kappa_match and self.kappa_in_range and self.spectrum_match


def kappa_check(prediction: ClosedFormPrediction, measured: Spectrum) -> KappaVerdict:
    return KappaVerdict(
        prediction.kappa,
        measured.kappa,
        prediction.kappa == measured.kappa,
        measured.kappa in (4, 5, 6),
        isospectral(prediction.spectrum, measured),
    )
