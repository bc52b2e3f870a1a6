"""Per-graph analysis pipeline and JSON-lines corpus reports.

analyze() drives every other module over a single graph and produces a
GraphReport whose witnesses are re-verified from scratch before they are
serialized.  scan() maps analyze() over a corpus file (MGF blocks or
graph6 lines), optionally with a process pool, preserving input order so
that identical inputs yield byte-identical output.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .cores import build_core, classify_core, find_core, verify_core_theorems
from .covers import (
    fan_raspaud_indices,
    fulkerson_witness,
    mu_k,
    verify_fulkerson,
    FulkersonWitness,
)
from .cyclecovers import (
    DimensionCapExceededError,
    bipartite_core_cover,
    canonical_cover,
    cover_from_core,
    five_cdc,
    four_cover_cycles,
    scc_exact,
    verify_cover,
)
from .graphs import (
    CubicGraph,
    EdgeSet,
    GraphFormatError,
    NotCubicError,
    girth,
    has_nontrivial_3_edge_cut,
    is_bipartite,
    is_bridgeless,
    is_hamiltonian,
    is_hypohamiltonian,
    parse_edge_list,
    parse_graph6,
)
from .matching import (
    DEFAULT_PM_CAP,
    PMCapExceededError,
    PerfectMatching,
    enumerate_perfect_matchings,
    exists_4ec_with_class_of_size,
    is_perfect_matching,
    is_three_edge_colorable,
    oddness,
)

DEFAULT_OPS = ("structure", "mu", "fan_raspaud", "core")
ALL_OPS = (
    "structure",
    "mu",
    "oddness",
    "fan_raspaud",
    "fulkerson",
    "core",
    "covers",
    "scc",
    "hypohamiltonian",
)


class ReportAuditError(AssertionError):
    """A serialized witness failed re-verification against its graph."""


@dataclass(frozen=True)
class AnalyzeOptions:
    """Which fields analyze() computes, and its resource limits."""

    ops: Tuple[str, ...] = DEFAULT_OPS
    mu_upto: int = 4
    pm_cap: int = DEFAULT_PM_CAP
    budget_ms: Optional[int] = None
    scc_max_cycles: int = 4
    scc_dim_cap: int = 10
    timings: bool = False

    def __post_init__(self):
        unknown = set(self.ops) - set(ALL_OPS)
        if unknown:
            raise ValueError(f"unknown ops: {sorted(unknown)}")

    def with_ops(self, *extra: str) -> "AnalyzeOptions":
        ops = self.ops + tuple(o for o in extra if o not in self.ops)
        return replace(self, ops=ops)


@dataclass
class GraphReport:
    """All computed invariants, witnesses, and theorem checks for a graph.

    Witness fields hold sorted edge-index arrays (cores additionally hold
    factor indices into the deterministic matching enumeration).  checks
    lists {name, passed, measured}; any failed check is a counterexample
    candidate and appears in violations.
    """

    id: str
    n: int
    m: int
    girth: Optional[int] = None
    bridgeless: Optional[bool] = None
    bipartite: Optional[bool] = None
    nontrivial_3_cut: Optional[bool] = None
    hamiltonian: Optional[bool] = None
    hypohamiltonian: Optional[bool] = None
    mu: Dict[str, int] = field(default_factory=dict)
    mu_witness: Dict[str, dict] = field(default_factory=dict)
    oddness: Optional[int] = None
    fan_raspaud: Optional[dict] = None
    fulkerson: Optional[dict] = None
    cores: List[dict] = field(default_factory=list)
    covers: List[dict] = field(default_factory=list)
    checks: List[dict] = field(default_factory=list)
    violations: List[str] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)
    errors: Dict[str, str] = field(default_factory=dict)
    timings_ms: Optional[Dict[str, float]] = None

    def to_dict(self) -> dict:
        out = {
            "id": self.id,
            "n": self.n,
            "m": self.m,
            "girth": self.girth,
            "bridgeless": self.bridgeless,
            "bipartite": self.bipartite,
            "nontrivial_3_cut": self.nontrivial_3_cut,
            "hamiltonian": self.hamiltonian,
            "mu": self.mu,
            "mu_witness": self.mu_witness,
            "fan_raspaud": self.fan_raspaud,
            "cores": self.cores,
            "covers": self.covers,
            "checks": self.checks,
            "violations": self.violations,
            "skipped": self.skipped,
            "errors": self.errors,
        }
        if self.hypohamiltonian is not None:
            out["hypohamiltonian"] = self.hypohamiltonian
        if self.oddness is not None:
            out["oddness"] = self.oddness
        if self.fulkerson is not None or "fulkerson" in self.errors:
            out["fulkerson"] = self.fulkerson
        if self.timings_ms is not None:
            out["timings_ms"] = self.timings_ms
        return out


def _edge_array(es: EdgeSet) -> List[int]:
    return list(es.indices())


def _factor_arrays(factors: Sequence[PerfectMatching]) -> List[List[int]]:
    return [_edge_array(f.edges) for f in factors]


def _cover_dict(kind: str, cover, target: Optional[EdgeSet] = None) -> dict:
    out = {
        "kind": kind,
        "cycles": [_edge_array(c) for c in cover.cycles],
        "length": cover.length,
        "ced": cover.ced,
        "even": cover.even,
        "count": cover.count,
        "valid": cover.valid,
    }
    if target is not None:
        out["target"] = _edge_array(target)
    return out


class _Budget:
    def __init__(self, budget_ms: Optional[int]):
        self.deadline = (
            time.monotonic() + budget_ms / 1000.0
            if budget_ms is not None
            else None
        )

    def expired(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline


def analyze(
    G: CubicGraph, options: AnalyzeOptions = AnalyzeOptions(), id: str = "g0"
) -> GraphReport:
    """Compute every requested field of the report; never raises for
    per-field caps or budget overruns, which are recorded in errors."""
    ops = set(options.ops)
    report = GraphReport(id=id, n=G.n, m=G.m)
    report.skipped = [op for op in ALL_OPS if op not in ops]
    budget = _Budget(options.budget_ms)
    timings: Dict[str, float] = {}

    def run(name: str, fn) -> bool:
        if budget.expired():
            report.errors[name] = "timeout"
            return False
        t0 = time.monotonic()
        try:
            fn()
            return True
        except PMCapExceededError:
            report.errors[name] = "pm_cap_exceeded"
        except DimensionCapExceededError:
            report.errors[name] = "dim_cap_exceeded"
        finally:
            timings[name] = round((time.monotonic() - t0) * 1000.0, 3)
        return False

    if "structure" in ops:
        def _structure():
            report.girth = girth(G)
            report.bridgeless = is_bridgeless(G)
            report.bipartite = is_bipartite(G)[0]
            try:
                report.nontrivial_3_cut = has_nontrivial_3_edge_cut(G)[0]
            except ValueError:
                report.errors["nontrivial_3_cut"] = "disconnected"
            report.hamiltonian = is_hamiltonian(G)
        run("structure", _structure)

    if "hypohamiltonian" in ops:
        run("hypohamiltonian",
            lambda: setattr(report, "hypohamiltonian", is_hypohamiltonian(G)))

    pms: Optional[List[PerfectMatching]] = None

    def factor_list() -> List[PerfectMatching]:
        nonlocal pms
        if pms is None:
            pms = enumerate_perfect_matchings(G, cap=options.pm_cap)
        return pms

    needs_pms = ops & {"mu", "oddness", "fan_raspaud", "fulkerson", "core",
                       "covers"}
    if needs_pms and not run("matchings", factor_list):
        needs_pms = set()
    if needs_pms and not pms:
        report.errors["matchings"] = "no_perfect_matching"
        needs_pms = set()

    mu_witnesses: Dict[int, object] = {}
    if "mu" in needs_pms:
        for k in range(1, options.mu_upto + 1):
            def _mu(k=k):
                value, witness = mu_k(G, k, pms=pms)
                report.mu[str(k)] = value
                report.mu_witness[str(k)] = {
                    "factors": _factor_arrays(witness.factors),
                    "uncovered": _edge_array(witness.uncovered),
                }
                mu_witnesses[k] = witness
            if not run(f"mu_{k}", _mu):
                break

    if "oddness" in needs_pms:
        run("oddness", lambda: setattr(report, "oddness", oddness(G, pms=pms)))

    if "fan_raspaud" in needs_pms:
        def _fan_raspaud():
            found = fan_raspaud_indices(G, pms=pms)
            if found is not None:
                report.fan_raspaud = {
                    "factor_indices": list(found),
                    "factors": _factor_arrays([pms[i] for i in found]),
                }
        run("fan_raspaud", _fan_raspaud)

    if "fulkerson" in needs_pms:
        def _fulkerson():
            witness = fulkerson_witness(G, pms=pms)
            if witness is not None:
                report.fulkerson = {
                    "factor_indices": list(witness.factor_indices),
                    "factors": _factor_arrays(witness.factors),
                }
        run("fulkerson", _fulkerson)

    core_obj = None
    if "core" in needs_pms:
        def _core():
            nonlocal core_obj
            if len(pms) < 3:
                report.errors["core"] = "fewer_than_three_matchings"
                return
            core_obj = find_core(G, predicate="any", pms=pms)
            cls = classify_core(core_obj)
            indices = tuple(
                next(i for i, p in enumerate(pms) if p.edges == f.edges)
                for f in core_obj.factors
            )
            report.cores.append({
                "factors": list(indices),
                "k": core_obj.k,
                "M": _edge_array(core_obj.M),
                "U": _edge_array(core_obj.U),
                "T": _edge_array(core_obj.T),
                "components": [
                    {"kind": c.kind, "vertices": list(c.vertices),
                     "edges": _edge_array(c.edges)}
                    for c in cls.components
                ],
                "cyclic": cls.is_cyclic,
                "bipartite": cls.is_bipartite,
                "bridgeless": cls.is_bridgeless,
                "empty": cls.is_empty,
            })
            for check in verify_core_theorems(core_obj, G):
                report.checks.append({
                    "name": f"core_{check.name}",
                    "passed": check.passed,
                    "measured": check.measured,
                })
        run("core", _core)

    if "covers" in needs_pms:
        def _covers():
            colorable, coloring = is_three_edge_colorable(G)
            if colorable:
                report.covers.append(
                    _cover_dict("canonical", canonical_cover(G, coloring))
                )
            cyclic_core = find_core(G, predicate="cyclic", pms=pms)
            if cyclic_core is not None:
                core_cover = bipartite_core_cover(cyclic_core)
                cover = cover_from_core(G, cyclic_core, core_cover)
                report.covers.append(_cover_dict("core_extension", cover))
            if report.mu.get("4") == 0:
                witness = mu_witnesses[4]
                report.covers.append(
                    _cover_dict("four_cover",
                                four_cover_cycles(G, *witness.factors))
                )
                report.covers.append(
                    _cover_dict("five_cdc", five_cdc(G, *witness.factors))
                )
        run("covers", _covers)

    if "scc" in ops:
        def _scc():
            cover = scc_exact(G, max_cycles=options.scc_max_cycles,
                              dim_cap=options.scc_dim_cap)
            report.covers.append(_cover_dict("scc_exact", cover))
        run("scc", _scc)

    _theorem_checks(G, report)
    report.violations = [c["name"] for c in report.checks if not c["passed"]]
    if options.timings:
        report.timings_ms = timings

    audit_report(G, report.to_dict(), pms=pms)
    return report


def _theorem_checks(G: CubicGraph, report: GraphReport) -> None:
    """Instance checks of the bound and conjecture statements that the
    computed fields make decidable for this graph."""
    m = G.m
    mu3 = report.mu.get("3")
    if mu3 is not None:
        report.checks.append({
            "name": "mu3_zero_or_ge_3",
            "passed": mu3 == 0 or mu3 >= 3,
            "measured": {"mu3": mu3},
        })
        report.checks.append({
            "name": "mu3_le_8m_over_35",
            "passed": 35 * mu3 <= 8 * m,
            "measured": {"mu3": mu3, "m": m},
        })
        if report.girth is not None and mu3 > 0:
            report.checks.append({
                "name": "girth_le_2mu3",
                "passed": report.girth <= 2 * mu3,
                "measured": {"girth": report.girth, "mu3": mu3},
            })
    if report.bridgeless and "fan_raspaud" not in report.errors and (
            "fan_raspaud" not in report.skipped):
        report.checks.append({
            "name": "fan_raspaud_exists",
            "passed": report.fan_raspaud is not None,
            "measured": {},
        })
    fulkerson_ran = ("fulkerson" not in report.skipped
                     and "fulkerson" not in report.errors)
    if report.bridgeless and fulkerson_ran:
        report.checks.append({
            "name": "fulkerson_exists",
            "passed": report.fulkerson is not None,
            "measured": {},
        })
    if (fulkerson_ran and mu3 is not None and mu3 <= 4
            and report.nontrivial_3_cut is False):
        report.checks.append({
            "name": "fulkerson_when_no_3cut_and_mu3_le_4",
            "passed": report.fulkerson is not None,
            "measured": {"mu3": mu3},
        })
    if (report.oddness is not None and report.bridgeless
            and report.mu.get("3", 1) != 0):
        has_class2 = exists_4ec_with_class_of_size(G, 2)
        report.checks.append({
            "name": "oddness2_iff_4ec_class_of_2",
            "passed": (report.oddness == 2) == has_class2,
            "measured": {"oddness": report.oddness,
                         "class_of_2": has_class2},
        })


# ---------------------------------------------------------------------------
# Witness re-verification (used before serialization and by `verify`).
# ---------------------------------------------------------------------------


def audit_report(
    G: CubicGraph,
    data: dict,
    pms: Optional[Sequence[PerfectMatching]] = None,
    pm_cap: int = DEFAULT_PM_CAP,
) -> None:
    """Re-verify every witness in a serialized report against the graph.

    Raises ReportAuditError on the first mismatch.  pms may be passed to
    reuse an existing enumeration; it is only computed when a witness
    refers to factor indices.
    """
    def fail(msg: str):
        raise ReportAuditError(f"report {data.get('id')}: {msg}")

    def as_set(indices) -> EdgeSet:
        return G.edge_set(indices)

    def check_factors(arrays, what: str) -> List[EdgeSet]:
        sets = [as_set(a) for a in arrays]
        for i, s in enumerate(sets):
            if not is_perfect_matching(G, s):
                fail(f"{what}: factor {i} is not a perfect matching")
        return sets

    for k, wit in data.get("mu_witness", {}).items():
        sets = check_factors(wit["factors"], f"mu_{k}")
        if len(sets) != int(k):
            fail(f"mu_{k}: expected {k} factors")
        union = EdgeSet(G.m, 0)
        for s in sets:
            union = union | s
        uncovered = G.all_edges() - union
        if _edge_array(uncovered) != wit["uncovered"]:
            fail(f"mu_{k}: uncovered set mismatch")
        if len(uncovered) != data["mu"][k]:
            fail(f"mu_{k}: recorded value {data['mu'][k]} != "
                 f"{len(uncovered)}")

    if data.get("fan_raspaud"):
        sets = check_factors(data["fan_raspaud"]["factors"], "fan_raspaud")
        if len(sets) != 3 or (sets[0] & sets[1] & sets[2]):
            fail("fan_raspaud: triple intersection is not empty")

    if data.get("fulkerson"):
        sets = check_factors(data["fulkerson"]["factors"], "fulkerson")
        witness = FulkersonWitness(
            factor_indices=tuple(data["fulkerson"]["factor_indices"]),
            factors=tuple(PerfectMatching(s) for s in sets),
        )
        if not verify_fulkerson(G, witness):
            fail("fulkerson: not every edge is covered exactly twice")

    for entry in data.get("cores", []):
        if pms is None:
            pms = enumerate_perfect_matchings(G, cap=pm_cap)
        i, j, l = entry["factors"]
        core = build_core(G, pms[i], pms[j], pms[l])
        if (_edge_array(core.M) != entry["M"]
                or _edge_array(core.U) != entry["U"]
                or _edge_array(core.T) != entry["T"]
                or core.k != entry["k"]):
            fail("core: M/U/T/k mismatch against rebuilt core")
        cls = classify_core(core)
        flags = (cls.is_cyclic, cls.is_bipartite, cls.is_bridgeless,
                 cls.is_empty)
        recorded = (entry["cyclic"], entry["bipartite"], entry["bridgeless"],
                    entry["empty"])
        if flags != recorded:
            fail("core: classification mismatch")

    for entry in data.get("covers", []):
        cycles = [as_set(a) for a in entry["cycles"]]
        target = as_set(entry["target"]) if "target" in entry else None
        cover = verify_cover(G, cycles, target=target)
        stats = (cover.length, cover.ced, cover.even, cover.count,
                 cover.valid)
        recorded = (entry["length"], entry["ced"], entry["even"],
                    entry["count"], entry["valid"])
        if stats != recorded:
            fail(f"cover {entry['kind']}: stats mismatch "
                 f"{stats} != {recorded}")
        if not cover.valid:
            fail(f"cover {entry['kind']}: recorded cover is invalid")


# ---------------------------------------------------------------------------
# Corpus ingestion and scanning.
# ---------------------------------------------------------------------------


def read_corpus(path: str, fmt: str = "mgf") -> List[Tuple[str, str]]:
    """Split a corpus file into (id, text) entries without parsing graphs.

    MGF: blocks separated by blank lines, named by their first '#' comment.
    graph6: one graph per non-blank line.
    """
    with open(path) as fh:
        raw = fh.read()
    entries: List[Tuple[str, str]] = []
    if fmt == "mgf":
        for i, block in enumerate(raw.split("\n\n")):
            if not block.strip():
                continue
            name = f"mgf_{i}"
            for line in block.splitlines():
                if line.startswith("#"):
                    name = line[1:].strip() or name
                    break
            entries.append((name, block))
    elif fmt == "graph6":
        for i, line in enumerate(raw.splitlines()):
            if line.strip():
                entries.append((f"g6_{i}", line.strip()))
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return entries


def parse_entry(text: str, fmt: str) -> CubicGraph:
    return parse_edge_list(text) if fmt == "mgf" else parse_graph6(text)


def _scan_one(item: Tuple[str, str, str, AnalyzeOptions]) -> dict:
    name, text, fmt, options = item
    try:
        G = parse_entry(text, fmt)
    except (GraphFormatError, NotCubicError) as exc:
        return {"id": name, "error": f"{type(exc).__name__}: {exc}"}
    return analyze(G, options, id=name).to_dict()


def scan(
    corpus_path: str,
    options: AnalyzeOptions = AnalyzeOptions(),
    fmt: str = "mgf",
    workers: int = 1,
) -> Iterator[dict]:
    """Yield one report dict per corpus entry, then a summary dict.

    Output order equals input order for any worker count; per-entry parse
    errors become {"id", "error"} records and are counted in the summary.
    """
    entries = read_corpus(corpus_path, fmt)
    items = [(name, text, fmt, options) for name, text in entries]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = pool.map(_scan_one, items, chunksize=4)
            yield from _with_summary(results)
    else:
        yield from _with_summary(map(_scan_one, items))


def _with_summary(results) -> Iterator[dict]:
    graphs = parse_errors = violations = timeouts = 0
    fr_found = fr_checked = fu_found = fu_checked = 0
    violating: List[str] = []
    for data in results:
        yield data
        if "error" in data and "n" not in data:
            parse_errors += 1
            continue
        graphs += 1
        if data["violations"]:
            violations += len(data["violations"])
            violating.append(data["id"])
        timeouts += sum(1 for v in data["errors"].values() if v == "timeout")
        for check in data["checks"]:
            if check["name"] == "fan_raspaud_exists":
                fr_checked += 1
                fr_found += check["passed"]
            elif check["name"] == "fulkerson_exists":
                fu_checked += 1
                fu_found += check["passed"]
    yield {
        "summary": {
            "graphs": graphs,
            "parse_errors": parse_errors,
            "violations": violations,
            "violating_graphs": violating,
            "timeouts": timeouts,
            "fan_raspaud_found": [fr_found, fr_checked],
            "fulkerson_found": [fu_found, fu_checked],
        }
    }


def report_lines(reports: Iterator[dict]) -> Iterator[str]:
    for data in reports:
        yield json.dumps(data, separators=(",", ":"))
