"""Analyze / verify / sweep / compare drivers behind the command line."""

from __future__ import annotations

import csv
import io
import itertools
import json
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import cayley, characters, closed_form, groups, qsrg, spectrum
from .cayley import FLAG_EDGELESS, FLAG_SMALL, FLAG_SRG
from .corpus import (
    DEFAULT_VERIFY_ORDER,
    HARD_ORDER_BOUND,
    ORACLE_GROUPS,
    ORACLE_SAMPLES,
    ORACLE_SEED,
    VERIFY_GROUPS,
    group_from_spec,
    sweep_groups,
)
from .errors import NotQsrg, NotRegular, OrderBoundExceeded, QsrgError
from .groups import FiniteGroup, SubgroupData

log = logging.getLogger(__name__)

THEOREM_TAGS = (
    "a-value",
    "c-set",
    "grade",
    "srg",
    "integrality",
    "component-integrality",
    "perron",
    "multiplicity-bounds",
    "zero-eigenvalue",
    "closed-form",
    "kappa",
    "isospectral",
    "alpha",
    "component-iso",
    "normal-sets",
    "components-sum",
    "cartesian",
    "trace",
    "group-structure",
    "characters",
    "oracle",
    "fixed-dim",
    "conjecture",
)
SPECTRAL_TAGS = {
    "integrality",
    "perron",
    "multiplicity-bounds",
    "zero-eigenvalue",
    "closed-form",
    "kappa",
    "isospectral",
    "trace",
    "oracle",
    "conjecture",
}

SWEEP_COLUMNS = (
    "group",
    "subgroup",
    "n",
    "k",
    "ell",
    "normal",
    "integral",
    "kappa",
    "grade",
    "spectrum",
    "closed_form_match",
    "flags",
    "error",
)


@dataclass
class RunConfig:
    command: str
    group_spec: str | None = None
    subgroup_spec: str | None = None
    max_order: int = DEFAULT_VERIFY_ORDER
    output_format: str = "text"
    jobs: int = 1
    theorems: tuple[str, ...] = ()
    groups: tuple[str, ...] = ()
    seed: int = ORACLE_SEED
    inject_fault: bool = False

    def __post_init__(self):
        if self.max_order > HARD_ORDER_BOUND:
            raise OrderBoundExceeded(f"max order {self.max_order} exceeds hard bound {HARD_ORDER_BOUND}")
        bad = set(self.theorems) - set(THEOREM_TAGS)
        if bad:
            raise ValueError(f"unknown theorem tag(s): {', '.join(sorted(bad))}")


def parse_generators(text: str | None) -> list[int]:
    if text is None or not text.strip():
        return []
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise ValueError(f"subgroup generators must be comma-separated indices, got {text!r}") from None


def instance_flags(group: FiniteGroup, h: SubgroupData) -> list[str]:
    flags = []
    if h.k == group.order:
        flags.append(FLAG_EDGELESS)
    if h.k == 1:
        flags.append(FLAG_SRG)
    if group.order < groups.MIN_CLAIM_ORDER:
        flags.append(FLAG_SMALL)
    return flags


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def analyze_pair(group: FiniteGroup, h: SubgroupData) -> dict:
    """Everything measurable about one Gamma_H(G), as a JSON-ready dict."""
    graph = cayley.gamma_graph(group, h)
    measured = spectrum.full_spectrum(graph.adjacency)
    integ = spectrum.is_integral(measured)
    n, k = group.order, h.k
    report: dict = {
        "group": group.name,
        "subgroup": {
            "generators": list(h.generators),
            "elements": list(h.elements),
            "labels": [group.label(x) for x in h.elements],
        },
        "n": n,
        "k": k,
        "ell": h.ell,
        "normal": h.is_normal,
        "flags": instance_flags(group, h),
        "vertices": graph.vertex_count,
        "degree": graph.degree,
        "spectrum": measured.to_dict(),
        "spectrum_text": measured.compact(),
        "kappa": measured.kappa,
        "integrality": {
            "is_integral": integ.is_integral,
            "integer_mass": integ.integer_mass,
            "residual_dimension": integ.residual_dimension,
        },
        "irrational": [{"value": round(x, 10), "mult": m} for x, m in measured.approx_part],
    }
    proper_nontrivial = 1 < k < n
    try:
        params = qsrg.qsrg_parameters(graph)
        pc = pa = None
        if proper_nontrivial:
            pc = qsrg.predicted_c_set(n, k, h.ell, h.is_normal)
            pa = qsrg.predicted_a(n, k)
        elif k == 1:
            srg = qsrg.srg_parameters(n)
            pc, pa = (srg[3],), srg[2]
        report["qsrg"] = params.report(pc, pa)
        if pc is not None:
            report["qsrg"]["predicted_a"] = pa
            report["qsrg"]["predicted_c_set"] = list(pc)
    except (NotRegular, NotQsrg) as exc:
        report["qsrg"] = {"error": f"{type(exc).__name__}: {exc}"}
    report["closed_form"] = None
    report["partial_bounds"] = None
    if proper_nontrivial:
        partial = closed_form.predicted_partial(n, k)
        report["partial_bounds"] = partial.check(measured)
        report["connected"] = cayley.is_connected(graph)
        if h.is_normal:
            pred = closed_form.predicted_spectrum(n, k)
            verdict = closed_form.kappa_check(pred, measured)
            report["closed_form"] = {
                "prediction": pred.to_dict(),
                "match": verdict.spectrum_match,
                "kappa_predicted": verdict.predicted_kappa,
                "kappa_measured": verdict.measured_kappa,
                "kappa_ok": verdict.ok,
            }
    return report


def analyze(config: RunConfig) -> dict:
    group = group_from_spec(config.group_spec)
    h = groups.subgroup_generated(group, parse_generators(config.subgroup_spec))
    return analyze_pair(group, h)


def render_analyze_text(report: dict) -> str:
    lines = [
        f"group {report['group']}  H = {{{', '.join(report['subgroup']['labels'])}}}"
        f"  n={report['n']} k={report['k']} ell={report['ell']} normal={report['normal']}",
    ]
    for flag in report["flags"]:
        lines.append(f"  flag: {flag}")
    lines.append(f"vertices {report['vertices']}, degree {report['degree']}")
    lines.append(f"spectrum  {report['spectrum_text']}")
    integ = report["integrality"]
    lines.append(
        f"integral  {integ['is_integral']} (integer mass {integ['integer_mass']}, residual {integ['residual_dimension']})"
    )
    for row in report["irrational"]:
        lines.append(f"  irrational eigenvalue {row['value']:.10f} x{row['mult']}")
    q = report["qsrg"]
    if "error" in q:
        lines.append(f"qsrg      {q['error']}")
    else:
        lines.append(f"qsrg      a={q['a']} c-set={q['c_set']} grade={q['grade']} matches={q['matches_prediction']}")
    if report["partial_bounds"]:
        for row in report["partial_bounds"]:
            op = "==" if row["kind"] == "exact" else ">="
            lines.append(
                f"bound     m({row['value']}) {op} {row['bound']}: measured {row['measured']}  {'ok' if row['ok'] else 'FAIL'}"
            )
    cf = report["closed_form"]
    if cf is not None:
        lines.append(
            f"closed form {'MATCH' if cf['match'] else 'MISMATCH'} ({cf['prediction']['case_tag']}, "
            f"kappa {cf['kappa_measured']})"
        )
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


@dataclass
class Check:
    tag: str
    group: str
    subgroup: str
    expected: object
    got: object
    ok: bool

    def to_dict(self) -> dict:
        return {
            "tag": self.tag,
            "group": self.group,
            "subgroup": self.subgroup,
            "expected": _jsonable(self.expected),
            "got": _jsonable(self.got),
            "ok": self.ok,
        }


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)


def _hname(h: SubgroupData) -> str:
    return "{" + ",".join(str(x) for x in h.elements) + "}"


class _Recorder:
    def __init__(self, wanted: set[str], group: str, subgroup: str = "-"):
        self.wanted = wanted
        self.group = group
        self.subgroup = subgroup
        self.checks: list[Check] = []

    def want(self, *tags: str) -> bool:
        return any(t in self.wanted for t in tags)

    def add(self, tag: str, expected, got, ok: bool | None = None) -> None:
        if tag not in self.wanted:
            return
        if ok is None:
            ok = expected == got
        self.checks.append(Check(tag, self.group, self.subgroup, expected, got, bool(ok)))


def _group_checks(spec_str: str, wanted: set[str]) -> list[Check]:
    group = group_from_spec(spec_str)
    rec = _Recorder(wanted, spec_str)
    n = group.order
    if rec.want("group-structure"):
        atoms = groups.all_atoms(group)
        union = set().union(*atoms)
        rec.add("group-structure", "atoms partition G", f"{len(union)} covered, sum {sum(map(len, atoms))}",
                len(union) == n and sum(map(len, atoms)) == n)
        subs = groups.all_subgroups(group)
        rec.add("group-structure", "Lagrange", [s.k for s in subs], all(n % s.k == 0 for s in subs))
        rec.add("group-structure", "trivial and full present", (subs[0].k, subs[-1].k), subs[0].k == 1 and subs[-1].k == n)
        for s in subs:
            if s.is_normal:
                q = groups.quotient(group, s)
                rec.add("group-structure", s.ell, q.order)
                if group.is_abelian:
                    rec.add("group-structure", "abelian quotient", q.is_abelian, q.is_abelian)
            if s.is_proper:
                gen = groups.subgroup_generated(group, [g for g in range(n) if g not in s])
                rec.add("group-structure", ("G-H generates G", _hname(s)), gen.k, gen.k == n)
        # normal-set complement duality over every subset (sampled above 2^12)
        rng = np.random.default_rng(ORACLE_SEED)
        subsets: Iterable
        if n <= 12:
            subsets = range(1 << n)
        else:
            subsets = (int(x) for x in rng.integers(0, 1 << n, size=4096))
        bad = 0
        for bits in subsets:
            mask = np.array([(bits >> i) & 1 for i in range(n)], dtype=bool)
            if groups.is_normal_set(group, mask) != groups.is_normal_set(group, ~mask):
                bad += 1
        rec.add("group-structure", "normal-set complement duality", bad, bad == 0)
        if n <= HARD_ORDER_BOUND:
            sq = groups.direct_square(group)
            for name, elems in (
                ("G x 1", [g * n + group.identity for g in range(n)]),
                ("1 x G", [group.identity * n + g for g in range(n)]),
                ("diagonal", [g * n + g for g in range(n)]),
            ):
                sub = groups.subgroup_generated(sq, elems)
                # index map g -> elems[g] is a homomorphism
                hom = all(sq.table[elems[a], elems[b]] == elems[group.table[a, b]] for a in range(n) for b in range(n))
                rec.add("group-structure", f"{name} subgroup of G^2 isomorphic to G", (sub.k, hom), sub.k == n and hom)
    if group.is_abelian and rec.want("characters"):
        chars = characters.character_table(group)
        bad = 0
        for i, chi in enumerate(chars):
            for j, psi in enumerate(chars):
                ip = characters.inner_product_times_order(chi, psi)
                if not ip.is_integer or ip.to_int() != (n if i == j else 0):
                    bad += 1
        rec.add("characters", "orthonormal characters", bad, bad == 0)
        bad = 0
        for h in groups.all_subgroups(group):
            triv = characters.characters_trivial_on(group, h)
            rec.add("characters", ("characters trivial on H", _hname(h), h.ell), len(triv), len(triv) == h.ell)
            for chi in chars:
                s = characters.char_sum(chi, h.elements)
                expect = h.k if chi.is_trivial_on(h.elements) else 0
                if not s.is_integer or s.to_int() != expect:
                    bad += 1
        rec.add("characters", "kernel-sum dichotomy", bad, bad == 0)
        bad = sum(
            1
            for chi in chars
            if characters.char_sum(chi, range(n)).to_int() != (n if chi.is_trivial else 0)
        )
        rec.add("characters", "whole-group sums", bad, bad == 0)
    return rec.checks


def _fault(adj: np.ndarray) -> np.ndarray:
    adj = adj.copy()
    adj[0, 1] ^= 1
    adj[1, 0] ^= 1
    return adj


def _instance_checks(spec_str: str, elements: tuple[int, ...], wanted: set[str], inject_fault: bool = False) -> tuple[list[Check], dict]:
    group = group_from_spec(spec_str)
    h = groups.make_subgroup(group, elements)
    rec = _Recorder(wanted, spec_str, _hname(h))
    n, k, ell = group.order, h.k, h.ell
    in_scope = n >= groups.MIN_CLAIM_ORDER
    summary: dict = {"group": spec_str, "subgroup": list(h.elements), "n": n, "k": k, "normal": h.is_normal}
    sq = groups.direct_square(group)
    graph = cayley.gamma_graph(group, h, sq)
    adj = _fault(graph.adjacency) if inject_fault else graph.adjacency

    if rec.want("a-value", "c-set", "grade"):
        try:
            params = qsrg.qsrg_parameters(adj)
            if in_scope:
                rec.add("a-value", qsrg.predicted_a(n, k), params.a)
                rec.add("c-set", list(qsrg.predicted_c_set(n, k, ell, h.is_normal)), list(params.c_set))
                rec.add("grade", "in {3,4,5}", params.grade, params.grade in (3, 4, 5))
            summary["grade"] = params.grade
        except (NotRegular, NotQsrg) as exc:
            for tag in ("a-value", "c-set", "grade"):
                rec.add(tag, "regular QSRG", type(exc).__name__, False)

    measured = None
    if rec.want(*SPECTRAL_TAGS):
        try:
            measured = spectrum.full_spectrum(adj)
        except (QsrgError, ValueError) as exc:
            for tag in SPECTRAL_TAGS:
                rec.add(tag, "consistent spectrum", f"{type(exc).__name__}: {exc}", False)
    if measured is not None:
        integ = spectrum.is_integral(measured)
        summary["integral"] = integ.is_integral
        summary["spectrum"] = measured.to_dict()
        if h.is_normal:
            rec.add("integrality", 0, integ.residual_dimension)
        else:
            # a counterexample to "normality is necessary" is surfaced, not hidden
            rec.add("conjecture", "non-integral", "integral" if integ.is_integral else "non-integral",
                    not integ.is_integral)
        partial = closed_form.predicted_partial(n, k)
        rows = partial.check(measured)
        rec.add("perron", (partial.perron, 1), (measured.max_entry()[0], measured.max_entry()[1]),
                rows[0]["ok"] and cayley.is_connected(adj))
        for row in rows[1:3]:
            rec.add("multiplicity-bounds", (row["value"], ">=", row["bound"]), row["measured"], row["ok"])
        if partial.zero_expected:
            rec.add("zero-eigenvalue", (0, ">=", 1), rows[3]["measured"], rows[3]["ok"])
        moments = tuple(spectrum.spectral_moment(measured, p) for p in (0, 1, 2))
        expect = (n * n, 0, 3 * n * n * (n - k))
        # irrational parts make the moments floats; those are compared to 1e-6
        rec.add("trace", expect, moments, all(abs(m - e) <= 1e-6 for m, e in zip(moments, expect)))
        if h.is_normal:
            pred = closed_form.predicted_spectrum(n, k)
            verdict = closed_form.kappa_check(pred, measured)
            rec.add("closed-form", pred.spectrum.compact(), measured.compact(), verdict.spectrum_match)
            # the kappa range {4,5,6} is only claimed for n >= 5
            in_range = verdict.kappa_in_range or not in_scope
            rec.add("kappa", pred.kappa, measured.kappa, verdict.kappa_match and verdict.spectrum_match and in_range)
        if group.is_abelian and rec.want("oracle"):
            oracle = characters.abelian_cayley_spectrum(sq, graph.connection.elements)
            rec.add("oracle", oracle.compact(), measured.compact(), spectrum.isospectral(oracle, measured))
            base = [g for g in range(n) if g not in h]
            small = spectrum.full_spectrum(cayley.cayley_graph(group, base).adjacency)
            oracle_small = characters.abelian_cayley_spectrum(group, base)
            rec.add("oracle", oracle_small.compact(), small.compact(), spectrum.isospectral(oracle_small, small))

    if rec.want("component-integrality", "components-sum", "cartesian", "normal-sets"):
        comps = [cayley.component_graph(group, h, kind, sq) for kind in (1, 2, 3)]
        if rec.want("component-integrality"):
            for kind, cg in zip((1, 2, 3), comps):
                cs = spectrum.full_spectrum(cg.adjacency)
                rec.add("component-integrality", (kind, 0), (kind, spectrum.is_integral(cs).residual_dimension))
        total = sum(c.adjacency.astype(np.int64) for c in comps)
        rec.add("components-sum", "A = A1 + A2 + A3, entries <= 1",
                (bool(np.array_equal(total, adj)), int(total.max(initial=0))),
                np.array_equal(total, adj) and total.max(initial=0) <= 1)
        base = cayley.cayley_graph(group, [g for g in range(n) if g not in h])
        box = cayley.cartesian_product(base, base)
        rec.add("cartesian", True, bool(np.array_equal(box, comps[0].adjacency + comps[1].adjacency)))
        if rec.want("normal-sets"):
            g1 = [g * n + group.identity for g in range(n)]
            h1 = {x * n + group.identity for x in h.elements}
            rec.add("normal-sets", (True, True), (groups.is_normal_set(sq, g1), groups.is_eulerian(sq, g1)))
            rec.add("normal-sets", True, set(comps[0].connection.elements) == set(g1) - h1)
            if h.is_normal:
                rec.add("normal-sets", (True, True),
                        (groups.is_normal_set(sq, comps[0].connection.elements),
                         groups.is_normal_set(sq, comps[1].connection.elements)))

    if rec.want("alpha", "component-iso"):
        iso = cayley.component_isomorphism_report(group, h)
        rec.add("alpha", (True, True), (iso["alpha_1_to_2"], iso["alpha_2_to_3"]))
        rec.add("component-iso", (True, True), (iso["swap_1_to_2"], iso["transported_alpha_2_to_3"]))

    if group.is_abelian and rec.want("fixed-dim"):
        got = characters.fixed_dim_sum_check(group, h)
        rec.add("fixed-dim", ell * (n - ell), got)
    return rec.checks, summary


def _srg_checks(spec_str: str, wanted: set[str]) -> list[Check]:
    group = group_from_spec(spec_str)
    rec = _Recorder(wanted, spec_str, "{e}")
    n = group.order
    if n < groups.MIN_CLAIM_ORDER or not rec.want("srg"):
        return []
    h = groups.subgroup_generated(group, [])
    graph = cayley.gamma_graph(group, h)
    params = qsrg.qsrg_parameters(graph)
    expect = qsrg.srg_parameters(n)
    got = (params.vertex_count, params.degree, params.a, params.c_set[0] if params.grade == 1 else params.c_set)
    rec.add("srg", expect, got)
    return rec.checks


def _oracle_random_checks(seed: int, wanted: set[str]) -> list[Check]:
    if "oracle" not in wanted:
        return []
    rng = np.random.default_rng(seed)
    out = []
    for i in range(ORACLE_SAMPLES):
        spec_str = ORACLE_GROUPS[i % len(ORACLE_GROUPS)]
        group = group_from_spec(spec_str)
        classes = sorted({tuple(sorted({g, group.inv(g)})) for g in range(group.order) if g != group.identity})
        pick = rng.random(len(classes)) < 0.5
        s = sorted(x for c, p in zip(classes, pick) if p for x in c)
        exact = spectrum.full_spectrum(cayley.cayley_graph(group, s).adjacency)
        oracle = characters.abelian_cayley_spectrum(group, s)
        out.append(Check("oracle", spec_str, "S=" + ",".join(map(str, s)), oracle.compact(), exact.compact(),
                         spectrum.isospectral(oracle, exact)))
    return out


def corpus_pairs(group_specs: Sequence[str]) -> list[tuple[str, tuple[int, ...]]]:
    pairs = []
    for spec_str in group_specs:
        group = group_from_spec(spec_str)
        for h in groups.proper_nontrivial_subgroups(group):
            pairs.append((spec_str, h.elements))
    return pairs


def _run_instance(args):
    spec_str, elements, wanted, fault = args
    return _instance_checks(spec_str, elements, set(wanted), fault)


def _map(fn: Callable, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=1))


@dataclass
class VerifyResult:
    checks: list[Check] = field(default_factory=list)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def counts(self) -> dict[str, tuple[int, int]]:
        out: dict[str, list[int]] = {}
        for c in self.checks:
            row = out.setdefault(c.tag, [0, 0])
            row[0 if c.ok else 1] += 1
        return {k: (v[0], v[1]) for k, v in sorted(out.items())}


def verify(config: RunConfig) -> VerifyResult:
    wanted = set(config.theorems or THEOREM_TAGS)
    specs = config.groups or tuple(g for g in VERIFY_GROUPS if group_from_spec(g).order <= config.max_order)
    checks: list[Check] = []
    for s in specs:
        checks += _group_checks(s, wanted)
        checks += _srg_checks(s, wanted)
    pairs = corpus_pairs(specs)
    results = _map(_run_instance, [(s, e, tuple(sorted(wanted)), config.inject_fault) for s, e in pairs], config.jobs)
    summaries = []
    for inst_checks, summary in results:
        checks += inst_checks
        summaries.append(summary)
    if "isospectral" in wanted:
        checks += isospectral_checks(summaries)
    checks += _oracle_random_checks(config.seed, wanted)
    return VerifyResult(checks)


def isospectral_checks(summaries: list[dict]) -> list[Check]:
    """Normal instances with equal (n, k) must share one spectrum."""
    buckets: dict[tuple[int, int], list[dict]] = {}
    for s in summaries:
        if s["normal"] and "spectrum" in s and s["n"] >= groups.MIN_CLAIM_ORDER:
            buckets.setdefault((s["n"], s["k"]), []).append(s)
    out = []
    for (n, k), items in sorted(buckets.items()):
        ref = spectrum.Spectrum.from_json(items[0]["spectrum"])
        for other in items[1:]:
            sp = spectrum.Spectrum.from_json(other["spectrum"])
            out.append(
                Check(
                    "isospectral",
                    f"{items[0]['group']} vs {other['group']}",
                    f"{items[0]['subgroup']} vs {other['subgroup']}",
                    ref.compact(),
                    sp.compact(),
                    spectrum.isospectral(ref, sp),
                )
            )
    return out


def render_verify(result: VerifyResult, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(
            {
                "ok": result.ok,
                "counts": {k: {"pass": v[0], "fail": v[1]} for k, v in result.counts().items()},
                "failures": [c.to_dict() for c in result.failures],
            },
            indent=2,
            sort_keys=True,
        )
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["tag", "group", "subgroup", "expected", "got", "ok"])
        for c in result.checks:
            w.writerow([c.tag, c.group, c.subgroup, json.dumps(_jsonable(c.expected)), json.dumps(_jsonable(c.got)), c.ok])
        return buf.getvalue().rstrip("\n")
    lines = []
    for tag, (good, bad) in result.counts().items():
        lines.append(f"{tag:<22} {good:>6} pass {bad:>5} fail")
    for c in result.failures:
        lines.append(f"FAIL [{c.tag}] {c.group} H={c.subgroup}: expected {c.expected}, got {c.got}")
    lines.append("verify: " + ("OK" if result.ok else f"{len(result.failures)} failure(s)"))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


def _sweep_row(args) -> dict:
    spec_str, elements = args
    group = group_from_spec(spec_str)
    h = groups.make_subgroup(group, elements)
    row = {
        "group": spec_str,
        "subgroup": "{" + ",".join(map(str, h.elements)) + "}",
        "n": group.order,
        "k": h.k,
        "ell": h.ell,
        "normal": h.is_normal,
        "integral": None,
        "kappa": None,
        "grade": None,
        "spectrum": None,
        "closed_form_match": None,
        "flags": ";".join(instance_flags(group, h)),
        "error": "",
    }
    try:
        graph = cayley.gamma_graph(group, h)
        measured = spectrum.full_spectrum(graph.adjacency)
        row["integral"] = spectrum.is_integral(measured).is_integral
        row["kappa"] = measured.kappa
        row["spectrum"] = measured.compact()
        row["grade"] = qsrg.qsrg_parameters(graph).grade
        if h.is_normal:
            row["closed_form_match"] = spectrum.isospectral(closed_form.predicted_spectrum(group.order, h.k).spectrum, measured)
    except QsrgError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def sweep(config: RunConfig) -> list[dict]:
    specs = config.groups or sweep_groups(config.max_order)
    specs = sorted(s for s in specs if group_from_spec(s).order <= config.max_order)
    rows = _map(_sweep_row, corpus_pairs(specs), config.jobs)
    rows.sort(key=lambda r: (r["group"], [int(x) for x in r["subgroup"].strip("{}").split(",")]))
    return rows


def render_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: ("" if r[k] is None else r[k]) for k in SWEEP_COLUMNS})
        return buf.getvalue().rstrip("\n")
    lines = []
    for r in rows:
        lines.append(
            f"{r['group']:<12} H={r['subgroup']:<20} n={r['n']:<3} k={r['k']:<3} normal={str(r['normal']):<5} "
            f"integral={str(r['integral']):<5} kappa={r['kappa']} grade={r['grade']} "
            f"closed_form={r['closed_form_match']} {r['spectrum']}"
            + (f"  [{r['flags']}]" if r["flags"] else "")
            + (f"  ERROR {r['error']}" if r["error"] else "")
        )
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# compare
# ---------------------------------------------------------------------------


def graph_invariants(adj: np.ndarray) -> dict:
    """Cheap isomorphism invariants used as non-isomorphism certificates."""
    a = np.asarray(adj, dtype=np.uint8)
    counts = qsrg.common_neighbor_matrix(a)
    n = a.shape[0]
    mask = a.astype(bool)
    tri = (counts * mask).sum(axis=1) // 2
    iu, ju = np.triu_indices(n, 1)
    adjacent = mask[iu, ju]
    cn_adj = Counter(counts[iu[adjacent], ju[adjacent]].tolist())
    cn_non = Counter(counts[iu[~adjacent], ju[~adjacent]].tolist())
    return {
        "triangles_per_vertex": sorted(Counter(tri.tolist()).items()),
        "common_neighbors_adjacent": sorted(cn_adj.items()),
        "common_neighbors_nonadjacent": sorted(cn_non.items()),
        "four_cliques": count_four_cliques(a),
    }


def count_four_cliques(adj: np.ndarray) -> int:
    a = np.asarray(adj, dtype=bool)
    n = a.shape[0]
    total = 0
    for u in range(n):
        higher = np.flatnonzero(a[u, u + 1 :]) + u + 1
        for v in higher:
            common = higher[a[v, higher] & (higher > v)]
            if common.size >= 2:
                sub = a[np.ix_(common, common)]
                total += int(np.triu(sub, 1).sum())
    return total


def compare_pairs(g1: FiniteGroup, h1: SubgroupData, g2: FiniteGroup, h2: SubgroupData) -> dict:
    a1 = cayley.gamma_graph(g1, h1).adjacency
    a2 = cayley.gamma_graph(g2, h2).adjacency
    s1, s2 = spectrum.full_spectrum(a1), spectrum.full_spectrum(a2)
    iso = spectrum.isospectral(s1, s2)
    report = {
        "first": {"group": g1.name, "subgroup": list(h1.elements), "normal": h1.is_normal, "spectrum": s1.compact()},
        "second": {"group": g2.name, "subgroup": list(h2.elements), "normal": h2.is_normal, "spectrum": s2.compact()},
        "isospectral": iso,
        "distinguishing_invariant": None,
    }
    if not iso:
        report["verdict"] = "not isospectral"
        return report
    inv1, inv2 = graph_invariants(a1), graph_invariants(a2)
    report["invariants"] = {"first": inv1, "second": inv2}
    for name in inv1:
        if inv1[name] != inv2[name]:
            report["distinguishing_invariant"] = name
            report["verdict"] = f"isospectral, distinguished by {name}"
            return report
    report["verdict"] = "isospectral, indistinguishable by implemented invariants"
    return report


def parse_pair(text: str) -> tuple[FiniteGroup, SubgroupData]:
    """``GROUP[:g1,g2,...]``; generators are element indices."""
    spec_str, _, gens = text.rpartition(":") if ":" in text else (text, "", "")
    group = group_from_spec(spec_str)
    return group, groups.subgroup_generated(group, parse_generators(gens))


def render_compare_text(report: dict) -> str:
    f, s = report["first"], report["second"]
    lines = [
        f"first   {f['group']} H={f['subgroup']} normal={f['normal']}: {f['spectrum']}",
        f"second  {s['group']} H={s['subgroup']} normal={s['normal']}: {s['spectrum']}",
        f"verdict {report['verdict']}",
    ]
    return "\n".join(lines)
