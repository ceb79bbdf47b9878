"""Reproducible verification campaigns over AQ_{n,k} and their reports.

A campaign runs one target (a structural scan, a component bound, a strong
Menger statement or a sharpness witness) over an enumerated or sampled
fault space and produces a :class:`CampaignReport`.  Reports are pure data:
everything except ``wall_time`` is a deterministic function of the config,
independently of how many worker processes were used.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from functools import lru_cache
from itertools import chain, combinations, islice
from math import comb
from typing import Callable

import numpy as np

from . import __version__, bounds
from .checks import cn_census, structure_violations
from .components import check_expansion, component_masks
from .errors import AqError, HypothesisUnmet, InfeasibleRequest
from .faults import build_witness, conditional_edge_fault_set, enumeration_ceiling, shrink_probe
from .faultset import EDGE, VERTEX, FaultSet
from .menger import is_strongly_menger, local_connectivity
from .topology import AqParams, make_graph, write_dot, write_edgelist

SCHEMA_VERSION = 1
MENGER_ORDER_CAP = 4096

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COUNTEREXAMPLE = 2
EXIT_HYPOTHESIS = 3
EXIT_INFEASIBLE = 4

THM1_NOTE = (
    "thm1 is stated with 'edge connected' wording, but its proof and its "
    "sharpness example use vertex faults and vertex-disjoint paths; this "
    "target checks the vertex-fault statement."
)
EMPIRICAL_NOTE = (
    "thm1_empirical applies the vertex budget outside its proven range; "
    "failures are reported as observations and never fail the run."
)


# ---------------------------------------------------------------- targets


@dataclass(frozen=True)
class Target:
    name: str
    family: str  # "scan", "component", "menger" or "witness"
    fault_kind: str | None = None
    budget: Callable[[int, int], int] | None = None
    conditional: bool = False
    # component bound is antitone in the fault set, so only |F| = budget needs checking
    exact_size: bool = False
    tier: int | None = None
    asserts: bool = True
    witness: str | None = None
    notes: tuple[str, ...] = ()


def _thm1_empirical_budget(n: int, k: int) -> int:
    if n < 2:
        raise HypothesisUnmet("strong Menger checks need n >= 2")
    return 4 * n - 9 if k == 3 else 4 * n - 8


TARGETS: dict[str, Target] = {
    t.name: t
    for t in [
        Target("structure", "scan"),
        Target("cn", "scan"),
        Target("expansion", "scan"),
        Target("lemma7", "component", VERTEX, bounds.large_component_vertex_budget),
        Target("lemma8", "component", EDGE, lambda n, k: bounds.large_component_edge_budget(n, 1),
               exact_size=True, tier=1),
        Target("lemma9", "component", EDGE, lambda n, k: bounds.large_component_edge_budget(n, 2),
               exact_size=True, tier=2),
        Target("thm1", "menger", VERTEX, bounds.vertex_menger_budget, notes=(THM1_NOTE,)),
        Target("thm1_empirical", "menger", VERTEX, _thm1_empirical_budget, asserts=False,
               notes=(THM1_NOTE, EMPIRICAL_NOTE)),
        Target("thm2", "menger", EDGE, bounds.edge_menger_budget),
        Target("thm3", "menger", EDGE, bounds.conditional_edge_budget, conditional=True),
        Target("witness2", "witness", VERTEX, witness="remark2"),
        Target("witness3", "witness", EDGE, witness="remark3"),
        Target("witness4", "witness", EDGE, witness="remark4"),
    ]
}


# ---------------------------------------------------------------- config


@dataclass(frozen=True)
class CampaignConfig:
    """Everything that determines a campaign's outcome.

    ``budget`` overrides the target's fault budget; exceeding the proven
    bound requires ``probe=True``.  ``sizes`` chooses how sampled mode picks
    a size: ``"max"`` always draws at the budget, ``"uniform"`` draws it from
    ``0..budget``.  ``jobs`` and ``ceiling`` do not influence the report.
    """

    n: int
    k: int
    target: str
    mode: str = "sampled"
    trials: int = 1000
    seed: int = 0
    budget: int | None = None
    probe: bool = False
    sizes: str = "max"
    jobs: int = 1
    ceiling: int | None = None

    def __post_init__(self):
        AqParams(self.n, self.k)
        if self.target not in TARGETS:
            raise AqError(f"unknown target {self.target!r}; choose from {', '.join(TARGETS)}")
        if self.mode not in ("exhaustive", "sampled"):
            raise AqError(f"mode must be 'exhaustive' or 'sampled', got {self.mode!r}")
        if self.sizes not in ("max", "uniform"):
            raise AqError(f"sizes must be 'max' or 'uniform', got {self.sizes!r}")
        if self.trials < 0 or self.jobs < 1:
            raise AqError("trials must be >= 0 and jobs >= 1")
        if self.budget is not None and self.budget < 0:
            raise AqError("budget must be non-negative")

    @property
    def info(self) -> Target:
        return TARGETS[self.target]

    def to_json(self) -> dict:
        """Config echo; execution-only knobs are omitted so reports stay comparable."""
        out = asdict(self)
        del out["jobs"], out["ceiling"]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "CampaignConfig":
        names = {f.name for f in fields(cls)}
        return cls(**{key: val for key, val in data.items() if key in names})


def resolve_budget(cfg: CampaignConfig) -> int | None:
    """The fault budget a campaign runs at, enforcing the probe rule."""
    info = cfg.info
    if info.budget is None:
        return None
    proven = info.budget(cfg.n, cfg.k)
    if cfg.budget is None:
        return proven
    if cfg.budget > proven and not cfg.probe:
        raise AqError(f"budget {cfg.budget} exceeds the proven bound {proven}; pass probe to go beyond it")
    return cfg.budget


def _check_size_limits(cfg: CampaignConfig) -> None:
    if cfg.info.family in ("menger", "witness") and cfg.k**cfg.n > MENGER_ORDER_CAP:
        raise InfeasibleRequest(
            f"AQ_{{{cfg.n},{cfg.k}}} has {cfg.k**cfg.n} vertices; Menger campaigns are capped at "
            f"{MENGER_ORDER_CAP}",
            count=cfg.k**cfg.n,
        )


# ---------------------------------------------------------------- fault streams


@lru_cache(maxsize=8)
def _graph(n: int, k: int):
    return make_graph(n, k)


def _pool(g, kind: str) -> int:
    return g.order if kind == VERTEX else g.size


def campaign_sizes(cfg: CampaignConfig, budget: int) -> list[int]:
    """Fault-set sizes an exhaustive campaign covers."""
    return [budget] if cfg.info.exact_size else list(range(budget + 1))


def stream_length(cfg: CampaignConfig, g, budget: int) -> int:
    if cfg.mode == "sampled":
        return cfg.trials
    pool = _pool(g, cfg.info.fault_kind)
    return sum(comb(pool, m) for m in campaign_sizes(cfg, budget))


def _sample(cfg: CampaignConfig, g, budget: int, t: int):
    info = cfg.info
    rng = np.random.default_rng([cfg.seed, t])
    m = budget if cfg.sizes == "max" else int(rng.integers(0, budget + 1))
    if info.conditional:
        fs = conditional_edge_fault_set(g, m, seed=[cfg.seed, t])
        return fs.members, fs.provenance
    pool = _pool(g, info.fault_kind)
    picked = rng.choice(pool, size=m, replace=False) if m else ()
    return frozenset(int(x) for x in picked), f"sampled:seed={cfg.seed}:trial={t}"


def _stream(cfg: CampaignConfig, g, budget: int, lo: int, hi: int):
    """Yield ``(index, members, provenance)`` for stream positions lo..hi-1."""
    if cfg.mode == "sampled":
        for t in range(lo, hi):
            members, prov = _sample(cfg, g, budget, t)
            yield t, members, prov
        return
    pool = _pool(g, cfg.info.fault_kind)
    sized = chain.from_iterable(
        ((m, c) for c in combinations(range(pool), m)) for m in campaign_sizes(cfg, budget)
    )
    for idx, (m, members) in enumerate(islice(sized, lo, hi), lo):
        yield idx, members, f"enum:{m}:{idx}"


def _conditional_ok(g, members) -> bool:
    deg = [len(row) for row in g.nbrs]
    for e in members:
        a, b, _ = g.edges[e]
        deg[a] -= 1
        deg[b] -= 1
    return min(deg) >= 2


# ---------------------------------------------------------------- per-set checks


def _largest_component(g, kind: str, members) -> int:
    masks = list(g.nbr_masks)
    alive = (1 << g.order) - 1
    if kind == VERTEX:
        for x in members:
            alive &= ~(1 << x)
        masks = [m & alive for m in masks]
    else:
        edges = g.edges
        for e in members:
            a, b, _ = edges[e]
            masks[a] &= ~(1 << b)
            masks[b] &= ~(1 << a)
    return max((c.bit_count() for c in component_masks(masks, alive)), default=0)


def evaluate(cfg: CampaignConfig, g, members) -> dict | None:
    """None if the fault set passes the target's check, else a failure record."""
    info = cfg.info
    members = frozenset(members)
    if info.family == "component":
        need = g.order - (len(members) + 1 if info.fault_kind == VERTEX else info.tier)
        got = _largest_component(g, info.fault_kind, members)
        return None if got >= need else {"largest": got, "required": need}
    verdict = is_strongly_menger(g, FaultSet(info.fault_kind, members), info.fault_kind)
    return None if verdict.holds else verdict.to_json()


def _run_range(cfg_json: dict, budget: int, lo: int, hi: int) -> dict:
    cfg = CampaignConfig.from_json(cfg_json)
    g = _graph(cfg.n, cfg.k)
    out = {"tested": 0, "filtered": 0, "by_size": {}, "counterexamples": []}
    by_size = out["by_size"]
    for idx, members, prov in _stream(cfg, g, budget, lo, hi):
        if cfg.mode == "exhaustive" and cfg.info.conditional and not _conditional_ok(g, members):
            out["filtered"] += 1
            continue
        out["tested"] += 1
        m = len(members)
        by_size[m] = by_size.get(m, 0) + 1
        bad = evaluate(cfg, g, members)
        if bad is not None:
            fault = FaultSet(cfg.info.fault_kind, frozenset(members), prov)
            out["counterexamples"].append({"index": idx, "fault": fault.to_json(g), "failure": bad})
    return out


# ---------------------------------------------------------------- report


@dataclass
class CampaignReport:
    """Outcome of one campaign.

    ``failures == len(counterexamples)`` always.  For non-asserting targets
    the same records appear under ``observations`` instead, so they never
    count as failures.
    """

    config: dict
    totals: dict
    counterexamples: list = field(default_factory=list)
    observations: list = field(default_factory=list)
    expected_failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    tool_version: str = __version__
    schema_version: int = SCHEMA_VERSION
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.passed else EXIT_COUNTEREXAMPLE

    def to_json(self, include_wall_time: bool = True) -> dict:
        out = asdict(self)
        if not include_wall_time:
            del out["wall_time"]
        return out

    def dumps(self, include_wall_time: bool = True) -> str:
        return json.dumps(self.to_json(include_wall_time), sort_keys=True, indent=2)

    def digest(self) -> str:
        """SHA-256 of the report without its wall time."""
        return hashlib.sha256(self.dumps(include_wall_time=False).encode()).hexdigest()

    @classmethod
    def from_json(cls, data: dict) -> "CampaignReport":
        names = {f.name for f in fields(cls)}
        return cls(**{key: val for key, val in data.items() if key in names})


def _totals(tested: int, failures: int, by_size: dict | None = None, **extra) -> dict:
    out = {"sets_tested": tested, "passes": tested - failures, "failures": failures}
    if by_size is not None:
        out["by_size"] = {str(m): by_size[m] for m in sorted(by_size)}
    out.update(extra)
    return out


def _run_scan(cfg: CampaignConfig, g) -> CampaignReport:
    if cfg.target == "structure":
        bad = structure_violations(g, seed=cfg.seed)
        details = {"order": g.order, "degree": g.degree, "edges": g.size}
        if g.n >= 2:
            details["cross_edges"] = bounds.cross_edge_count(g.n, g.k)
        failures = [{"violation": msg} for msg in bad]
    elif cfg.target == "cn":
        census = cn_census(g)
        failures = [
            {"pair": [u, v], "kind": kind, "cn": cn,
             "expected": bounds.adjacent_cn(g.n, g.k, g.kind_of(u, v))}
            for u, v, kind, cn in census["adjacent_violations"]
        ]
        failures += [
            {"pair": [u, v], "cn": cn, "bound": census["bound"]}
            for u, v, cn in census["bound_violations"]
        ]
        details = {
            "adjacent_by_kind": {
                kind: {str(c): n for c, n in sorted(counts.items())}
                for kind, counts in census["adjacent_by_kind"].items()
            },
            "max_cn": census["max_cn"],
            "bound": census["bound"],
        }
    else:
        if g.n < 2:
            raise HypothesisUnmet("subcube expansion needs n >= 2")
        bad = check_expansion(g, max_size=3)
        failures = [{"subcube": i, "set": list(U), "neighbors": got} for i, U, got in bad]
        details = {"max_set_size": 3}
    found = [{"index": 0, "violations": failures}] if failures else []
    return CampaignReport(cfg.to_json(), _totals(1, len(found)), found, details=details)


def _run_witness(cfg: CampaignConfig, g) -> CampaignReport:
    case = build_witness(g, cfg.info.witness)
    fault = case.fault
    achieved = local_connectivity(g, fault, case.u, case.v, case.mode)
    verdict = is_strongly_menger(g, fault, case.mode)
    confirmed = achieved < case.required and not verdict.holds
    record = {
        "witness": case.to_json(g),
        "achieved": achieved,
        "required": case.required,
        "first_failing_pair": verdict.to_json().get("witness"),
        "confirmed": confirmed,
    }
    report = CampaignReport(
        cfg.to_json(),
        _totals(1, 0 if confirmed else 1, expected_failures_confirmed=int(confirmed)),
        expected_failures=[record],
        details={"shrink_probe": shrink_probe(g, case)},
    )
    if not confirmed:
        report.counterexamples.append({"index": 0, "fault": fault.to_json(g), "failure": record})
    if case.v_rule == "search":
        report.notes.append(
            "the construction's rule leaves no candidate v on this graph; v is the smallest "
            "full-degree vertex whose pair with u verifiably falls short"
        )
    return report


def run_campaign(cfg: CampaignConfig) -> CampaignReport:
    """Execute a campaign and return its report.

    Raises HypothesisUnmet when (n, k) lies outside the target's range and
    InfeasibleRequest (carrying the set count) when an exhaustive request
    exceeds the enumeration ceiling or the graph exceeds the Menger size cap.
    """
    start = time.perf_counter()
    info = cfg.info
    _check_size_limits(cfg)
    g = _graph(cfg.n, cfg.k)
    if info.family == "scan":
        report = _run_scan(cfg, g)
    elif info.family == "witness":
        report = _run_witness(cfg, g)
    else:
        if info.family == "menger" and cfg.n < 2:
            raise HypothesisUnmet("strong Menger checks need n >= 2")
        budget = resolve_budget(cfg)
        total = stream_length(cfg, g, budget)
        if cfg.mode == "exhaustive":
            limit = enumeration_ceiling(cfg.ceiling)
            if total > limit:
                raise InfeasibleRequest(
                    f"{total} fault sets exceed the enumeration ceiling {limit}; use sampled mode",
                    count=total,
                )
        cfg_json = asdict(cfg)
        if cfg.jobs == 1 or total < 2 * cfg.jobs:
            parts = [_run_range(cfg_json, budget, 0, total)]
        else:
            cuts = [total * j // cfg.jobs for j in range(cfg.jobs + 1)]
            with ProcessPoolExecutor(cfg.jobs) as ex:
                futures = [ex.submit(_run_range, cfg_json, budget, lo, hi) for lo, hi in zip(cuts, cuts[1:])]
                parts = [f.result() for f in futures]
        tested = sum(p["tested"] for p in parts)
        by_size: dict[int, int] = {}
        for p in parts:
            for m, c in p["by_size"].items():
                by_size[m] = by_size.get(m, 0) + c
        found = sorted((cx for p in parts for cx in p["counterexamples"]), key=lambda cx: cx["index"])
        extra = {"budget": budget}
        if cfg.mode == "exhaustive" and info.conditional:
            extra["filtered_unconditional"] = sum(p["filtered"] for p in parts)
        if info.asserts:
            report = CampaignReport(cfg.to_json(), _totals(tested, len(found), by_size, **extra), found)
        else:
            extra["observed_failures"] = len(found)
            report = CampaignReport(cfg.to_json(), _totals(tested, 0, by_size, **extra), observations=found)
    report.notes = list(info.notes) + report.notes
    report.wall_time = time.perf_counter() - start
    return report


# ---------------------------------------------------------------- replay / export


def replay_counterexample(cfg: CampaignConfig, record: dict) -> bool:
    """Re-run one stored failure; True iff the same failure record comes back."""
    if cfg.info.family in ("scan", "witness"):
        rerun = run_campaign(cfg).counterexamples
        return bool(rerun) and rerun[0] == record
    fault = FaultSet.from_json(record["fault"])
    return evaluate(cfg, _graph(cfg.n, cfg.k), fault.members) == record["failure"]


def replay(report: CampaignReport | dict) -> list[tuple[int, bool]]:
    """Replay every stored counterexample and observation of a report."""
    if isinstance(report, dict):
        report = CampaignReport.from_json(report)
    cfg = CampaignConfig.from_json(report.config)
    return [(rec["index"], replay_counterexample(cfg, rec)) for rec in report.counterexamples + report.observations]


def export_graph(params: AqParams, fmt: str = "edgelist", destination=None) -> str:
    """Serialize AQ_{n,k} as an edge list or DOT; write to ``destination`` if given."""
    g = _graph(params.n, params.k)
    if fmt == "edgelist":
        text = write_edgelist(g)
    elif fmt == "dot":
        text = write_dot(g)
    else:
        raise AqError(f"format must be 'edgelist' or 'dot', got {fmt!r}")
    if destination is not None:
        if hasattr(destination, "write"):
            destination.write(text)
        else:
            with open(destination, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
    return text


CSV_FIELDS = [
    "target", "n", "k", "mode", "seed", "trials", "budget",
    "sets_tested", "passes", "failures", "expected_failures_confirmed", "digest",
]


def csv_summary(reports) -> str:
    """One CSV row per campaign report."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for rep in reports:
        cfg, tot = rep.config, rep.totals
        writer.writerow({
            "target": cfg["target"], "n": cfg["n"], "k": cfg["k"], "mode": cfg["mode"],
            "seed": cfg["seed"], "trials": cfg["trials"], "budget": tot.get("budget", ""),
            "sets_tested": tot["sets_tested"], "passes": tot["passes"], "failures": tot["failures"],
            "expected_failures_confirmed": tot.get("expected_failures_confirmed", ""),
            "digest": rep.digest(),
        })
    return buf.getvalue()
