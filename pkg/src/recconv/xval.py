"""Cross-validation sweeps: closed-form conditions against the oracle.

Only definitive disagreements count as mismatches. The oracle can certify
convergence; a definitive "does not converge" comes only from the exact
gates (fixed-point residual, nonzero constant with target 0). Everything
else is inconclusive and tallied on its own.
"""

from __future__ import annotations

import csv
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Mapping, Optional, Sequence

from recconv.analyzer import condition_v, decide_linear, fixed_point_residual, quadratic_family
from recconv.jsonio import dumps, jsonable
from recconv.model import CONVERGES, LinearRecurrence
from recconv.numeric import RationalLike, rational
from recconv.oracle import Converged, OracleConfig, simulate

V_KEYS = ("a1", "a2", "a3", "d", "c0", "c1", "c2", "K")


class GridTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    """Per-parameter value lists. For linear sweeps ``a``/``c`` act as
    defaults for any ``a<k>``/``c<i>`` not given explicitly."""

    params: Mapping[str, tuple]
    cap: int = 100_000

    def __post_init__(self) -> None:
        norm = {}
        for key, values in self.params.items():
            if key == "L":
                norm[key] = tuple(int(v) for v in values)
            else:
                norm[key] = tuple(rational(v) for v in values)
        object.__setattr__(self, "params", norm)

    def values(self, key: str, fallback: Optional[str] = None) -> tuple:
        if key in self.params:
            return self.params[key]
        if fallback is not None and fallback in self.params:
            return self.params[fallback]
        raise KeyError(f"grid has no values for {key!r}")


@dataclass
class InstanceResult:
    index: int
    params: dict[str, Any]
    condition: bool
    method: str
    oracle: str
    M: Optional[int]
    definitive: bool
    mismatch: bool
    clauses: tuple = ()


@dataclass
class SweepReport:
    kind: str
    total: int = 0
    yes_converged: int = 0
    yes_other: int = 0
    no_converged: int = 0
    no_other: int = 0
    inconclusive: int = 0
    mismatches: list[InstanceResult] = field(default_factory=list)
    rows: list[InstanceResult] = field(default_factory=list)

    def add(self, row: InstanceResult) -> None:
        self.total += 1
        conv = row.oracle == "converged"
        if row.condition:
            if conv:
                self.yes_converged += 1
            else:
                self.yes_other += 1
        else:
            if conv:
                self.no_converged += 1
            else:
                self.no_other += 1
        if not row.definitive:
            self.inconclusive += 1
        if row.mismatch:
            self.mismatches.append(row)
        self.rows.append(row)

    def counts(self) -> dict[str, int]:
        return {
            "condition-yes/oracle-converged": self.yes_converged,
            "condition-yes/oracle-other": self.yes_other,
            "condition-no/oracle-converged": self.no_converged,
            "condition-no/oracle-other": self.no_other,
        }

    def summary(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "total": self.total,
            "counts": self.counts(),
            "inconclusive": self.inconclusive,
            "mismatches": len(self.mismatches),
        }


def linear_instances(grid: GridSpec) -> list[dict[str, Any]]:
    if not grid.params:
        return []
    plans = []
    size = 0
    for L in grid.values("L"):
        axes = [("L", (L,))]
        axes += [(f"a{k}", grid.values(f"a{k}", "a")) for k in range(1, L + 1)]
        axes += [(f"c{i}", grid.values(f"c{i}", "c")) for i in range(L)]
        axes += [("d", grid.values("d")), ("K", grid.values("K"))]
        size += math.prod(len(v) for _, v in axes)
        plans.append(axes)
    if size > grid.cap:
        raise GridTooLarge(f"grid has {size} instances, cap is {grid.cap}")
    out = []
    for axes in plans:
        names = [n for n, _ in axes]
        for combo in itertools.product(*(v for _, v in axes)):
            inst = dict(zip(names, combo))
            if inst[f"a{inst['L']}"] != 0:
                out.append(inst)
    return out


def v_instances(grid: GridSpec) -> list[dict[str, Any]]:
    if not grid.params:
        return []
    axes = [(k, grid.values(k)) for k in V_KEYS]
    size = math.prod(len(v) for _, v in axes)
    if size > grid.cap:
        raise GridTooLarge(f"grid has {size} instances, cap is {grid.cap}")
    return [dict(zip(V_KEYS, combo)) for combo in itertools.product(*(v for _, v in axes))]


def linear_from_params(p: Mapping[str, Any]) -> LinearRecurrence:
    L = int(p["L"])
    return LinearRecurrence(
        L,
        tuple(rational(p[f"a{k}"]) for k in range(1, L + 1)),
        tuple(rational(p[f"c{i}"]) for i in range(L)),
        rational(p["d"]),
    )


def check_linear_instance(index: int, p: Mapping[str, Any], cfg: OracleConfig) -> InstanceResult:
    rec = linear_from_params(p)
    K = rational(p["K"])
    verdict, breakdown = decide_linear(rec, K)
    out = simulate(rec, K, cfg)
    converged = isinstance(out, Converged)
    said_yes = verdict.outcome == CONVERGES
    return InstanceResult(
        index=index,
        params=dict(p),
        condition=said_yes,
        method=verdict.method,
        oracle=out.kind,
        M=out.M if converged else None,
        definitive=True,  # the linear criteria are exact either way
        mismatch=said_yes != converged,
        clauses=breakdown.clauses,
    )


def check_v_instance(index: int, p: Mapping[str, Any], cfg: OracleConfig) -> InstanceResult:
    a1, a2, a3, d, c0, c1, c2, K = (rational(p[k]) for k in V_KEYS)
    breakdown = condition_v(a1, a2, a3, d, c0, c1, c2, K)
    rec = quadratic_family(a1, a2, a3, d, (c0, c1, c2))
    out = simulate(rec, K, cfg)
    converged = isinstance(out, Converged)
    gated = fixed_point_residual(rec, K) != 0 or (K == 0 and d != 0)
    definitive = converged or gated
    mismatch = (breakdown.overall and gated) or (not breakdown.overall and converged)
    return InstanceResult(
        index=index,
        params=dict(p),
        condition=breakdown.overall,
        method="condition-v",
        oracle=out.kind if not (gated and not converged) else "not-converging",
        M=out.M if converged else None,
        definitive=definitive,
        mismatch=mismatch,
        clauses=breakdown.clauses,
    )


def _star(args):
    fn, index, p, cfg = args
    return fn(index, p, cfg)


def _run(
    kind: str,
    instances: Sequence[Mapping[str, Any]],
    fn: Callable[[int, Mapping[str, Any], OracleConfig], InstanceResult],
    cfg: OracleConfig,
    workers: int,
) -> SweepReport:
    jobs = [(fn, i, p, cfg) for i, p in enumerate(instances)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_star, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_star(j) for j in jobs]
    report = SweepReport(kind)
    for row in sorted(results, key=lambda r: r.index):
        report.add(row)
    return report


def sweep_linear(grid: GridSpec, cfg: OracleConfig = OracleConfig(), workers: int = 1) -> SweepReport:
    return _run("linear", linear_instances(grid), check_linear_instance, cfg, workers)


def sweep_condition_v(grid: GridSpec, cfg: OracleConfig = OracleConfig(), workers: int = 1) -> SweepReport:
    return _run("condition-v", v_instances(grid), check_v_instance, cfg, workers)


def recheck(row: InstanceResult, kind: str, cfg: OracleConfig = OracleConfig()) -> InstanceResult:
    """Re-run one stored instance from its parameters alone."""
    fn = check_linear_instance if kind == "linear" else check_v_instance
    return fn(row.index, row.params, cfg)


def report_json(report: SweepReport) -> str:
    doc = report.summary()
    doc["mismatch_records"] = jsonable(report.mismatches)
    doc["rows"] = jsonable(report.rows)
    return dumps(doc)


def write_json(report: SweepReport, path: Path) -> None:
    Path(path).write_text(report_json(report) + "\n", encoding="utf-8")


def write_csv(report: SweepReport, path: Path) -> None:
    keys: list[str] = []
    for row in report.rows:
        for k in row.params:
            if k not in keys:
                keys.append(k)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["index", *keys, "condition", "method", "oracle", "M", "definitive", "mismatch"])
        for row in report.rows:
            w.writerow(
                [row.index]
                + [jsonable(row.params.get(k, "")) for k in keys]
                + [row.condition, row.method, row.oracle, "" if row.M is None else row.M,
                   row.definitive, row.mismatch]
            )


def grid_from_json(doc: Mapping[str, Any]) -> GridSpec:
    """``{"params": {"a1": ["1/2", 1], ...}, "cap": 100000}``."""
    params = doc.get("params", {})
    if not isinstance(params, Mapping):
        raise ValueError("grid 'params' must be an object")
    clean = {}
    for k, vs in params.items():
        if not isinstance(vs, list):
            raise ValueError(f"grid values for {k!r} must be a list")
        for v in vs:
            if isinstance(v, float):
                raise ValueError(f"grid value {v!r} for {k!r} is a float; write it as a string")
        clean[k] = tuple(vs)
    return GridSpec(clean, int(doc.get("cap", 100_000)))
