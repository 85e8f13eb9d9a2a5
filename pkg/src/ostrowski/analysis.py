"""Parameter sweeps, best-bound selection, errata findings, report emission.

A sweep walks the per-family parameter grid of a SweepSpec in a fixed
lexicographic order, evaluating each admissible cell and recording each
inadmissible one as a skip with its reason.  Evaluations are pure, so output
is bit-identical across runs and across worker counts; records are always
assembled in enumeration order regardless of completion order.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .bounds import (
    BoundRequest,
    Family,
    Variant,
    VALIDITY_TOL,
    evaluate,
)
from .corpus import corpus
from .errors import EmptyGroupError, Error, ParamOutOfDomainError
from .expr import ExprFunction
from .identity import RuleForm
from .quadrature import Interval

CSV_COLUMNS = (
    "function",
    "a",
    "b",
    "family",
    "variant",
    "n",
    "x",
    "p",
    "q",
    "lhs",
    "lhs_err",
    "rhs",
    "slack",
    "convex",
    "worst_violation",
    "valid",
    "error",
)


@dataclass(frozen=True)
class SweepSpec:
    """One function's sweep grid.

    x_grid may be a point count (uniform grid including endpoints) or an
    explicit tuple of rule points.  p applies to the holder families, q to
    power-mean, variants to the holder families; other axes collapse.
    """

    fn: ExprFunction
    iv: Interval
    label: str = ""
    n_values: tuple = (1, 2)
    x_grid: object = 5
    families: tuple = tuple(Family)
    p_values: tuple = (2.0,)
    q_values: tuple = (1.0, 2.0)
    variants: tuple = (Variant.CORRECTED, Variant.PAPER)

    def xs(self) -> tuple:
        if isinstance(self.x_grid, int):
            return tuple(float(v) for v in np.linspace(self.iv.a, self.iv.b, self.x_grid))
        return tuple(float(v) for v in self.x_grid)

    @property
    def name(self) -> str:
        return self.label or self.fn.source


@dataclass(frozen=True)
class SweepRecord:
    function: str
    a: float
    b: float
    family: str
    variant: str
    n: int
    x: float
    p: float | None
    q: float | None
    lhs: float | None = None
    lhs_err: float | None = None
    rhs: float | None = None
    slack: float | None = None
    convex: bool | None = None
    worst_violation: float | None = None
    valid: bool | None = None
    error: str | None = None


@dataclass(frozen=True)
class SweepSkip:
    function: str
    family: str
    variant: str
    n: int
    x: float
    p: float | None
    q: float | None
    reason: str


@dataclass(frozen=True)
class SweepResult:
    records: tuple
    skips: tuple
    product_size: int

    @property
    def all_valid(self) -> bool:
        return all(r.error is None and r.valid for r in self.records)


def default_specs() -> tuple[SweepSpec, ...]:
    """Corpus-wide sweep with a modest default grid."""
    return tuple(
        SweepSpec(fn=entry.fn, iv=entry.interval, label=entry.name)
        for entry in corpus()
    )


def _family_axes(spec: SweepSpec, family: Family):
    hold = family in (Family.HOLDER, Family.ALT_HOLDER)
    variants = tuple(spec.variants) if hold else (Variant.CORRECTED,)
    p_axis = tuple(spec.p_values) if hold else (None,)
    q_axis = tuple(spec.q_values) if family == Family.POWER_MEAN else (None,)
    return variants, p_axis, q_axis


def _enumerate_cells(spec: SweepSpec):
    """Cells in lexicographic (family, variant, n, x, p, q) order."""
    xs = spec.xs()
    families = [f for f in Family if f in spec.families]
    for family in families:
        variants, p_axis, q_axis = _family_axes(spec, family)
        for variant in variants:
            for n in sorted(spec.n_values):
                for x in xs:
                    for p in p_axis:
                        for q in q_axis:
                            yield family, variant, n, x, p, q


def _evaluate_cell(spec: SweepSpec, cell) -> SweepRecord:
    family, variant, n, x, p, q = cell
    base = dict(
        function=spec.name,
        a=spec.iv.a,
        b=spec.iv.b,
        family=family.value,
        variant=variant.value,
        n=n,
        x=x,
        p=p,
        q=q,
    )
    req = BoundRequest(family=family, n=n, form=RuleForm.point(x), p=p, q=q, variant=variant)
    try:
        report = evaluate(req, spec.fn, spec.iv)
    except Error as exc:
        return SweepRecord(**base, error=f"{type(exc).__name__}: {exc}")
    return SweepRecord(
        **base,
        lhs=report.lhs,
        lhs_err=report.lhs_err,
        rhs=report.rhs,
        slack=report.slack,
        convex=report.convexity.convex,
        worst_violation=report.convexity.worst_violation,
        valid=report.valid,
    )


def sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Evaluate the full grid; skips are data, not errors.

    Runtime errors inside a cell land in that record's error field; sweep
    itself does not abort.
    """
    cells = list(_enumerate_cells(spec))
    evaluable = []
    skips = []
    for cell in cells:
        family, variant, n, x, p, q = cell
        req = BoundRequest(
            family=family, n=n, form=RuleForm.point(x), p=p, q=q, variant=variant
        )
        try:
            req.validate(spec.iv)
        except ParamOutOfDomainError as exc:
            skips.append(
                SweepSkip(
                    function=spec.name, family=family.value, variant=variant.value,
                    n=n, x=x, p=p, q=q, reason=f"ParamOutOfDomain: {exc}",
                )
            )
            continue
        evaluable.append(cell)

    if workers <= 1:
        records = [_evaluate_cell(spec, cell) for cell in evaluable]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(lambda cell: _evaluate_cell(spec, cell), evaluable))

    return SweepResult(
        records=tuple(records), skips=tuple(skips), product_size=len(cells)
    )


def sweep_many(specs, workers: int = 1) -> SweepResult:
    records = []
    skips = []
    size = 0
    for spec in specs:
        result = sweep(spec, workers=workers)
        records.extend(result.records)
        skips.extend(result.skips)
        size += result.product_size
    return SweepResult(records=tuple(records), skips=tuple(skips), product_size=size)


def best_bound(records, key=None):
    """Per group, the valid record with minimal rhs.

    Ties break by family order, then smaller q, then smaller p.  A group
    with no usable record raises EmptyGroupError.
    """
    if key is None:
        key = lambda r: (r.function, r.a, r.b, r.n, r.x)
    family_rank = {f.value: i for i, f in enumerate(Family)}
    groups: dict = {}
    for record in records:
        groups.setdefault(key(record), []).append(record)
    winners = []
    for group_key in sorted(groups):
        usable = [r for r in groups[group_key] if r.error is None and r.valid]
        if not usable:
            raise EmptyGroupError(f"no valid record in group {group_key!r}")
        winner = min(
            usable,
            key=lambda r: (
                r.rhs,
                family_rank[r.family],
                r.q if r.q is not None else -1.0,
                r.p if r.p is not None else -1.0,
            ),
        )
        winners.append((group_key, winner))
    return winners


def errata_report(records):
    """Stated-vs-corrected comparison for every input carrying both variants.

    Each finding reports both rhs values, whether each variant still
    dominates the true remainder, and the stated/corrected ratio.
    """
    buckets: dict = {}
    for record in records:
        if record.family not in (Family.HOLDER.value, Family.ALT_HOLDER.value):
            continue
        if record.error is not None:
            continue
        ident = (record.function, record.a, record.b, record.family,
                 record.n, record.x, record.p)
        buckets.setdefault(ident, {})[record.variant] = record
    findings = []
    for ident in sorted(buckets, key=lambda k: tuple(str(v) for v in k)):
        pair = buckets[ident]
        if Variant.CORRECTED.value not in pair or Variant.PAPER.value not in pair:
            continue
        corrected = pair[Variant.CORRECTED.value]
        paper = pair[Variant.PAPER.value]
        budget = corrected.lhs_err + VALIDITY_TOL
        findings.append(
            {
                "input": {
                    "function": ident[0],
                    "a": ident[1],
                    "b": ident[2],
                    "family": ident[3],
                    "n": ident[4],
                    "x": ident[5],
                    "p": ident[6],
                },
                "variant_values": {
                    "corrected": corrected.rhs,
                    "paper": paper.rhs,
                },
                "valid_flags": {
                    "corrected": bool(corrected.rhs >= corrected.lhs - budget),
                    "paper": bool(paper.rhs >= paper.lhs - budget),
                },
                "ratio": (paper.rhs / corrected.rhs) if corrected.rhs else None,
            }
        )
    return findings


def _cell_text(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def write_csv(records, path) -> None:
    """One record per row; floats as shortest round-trip decimals."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        for record in records:
            data = asdict(record)
            writer.writerow([_cell_text(data[column]) for column in CSV_COLUMNS])


def write_json(records, path) -> None:
    payload = [asdict(record) for record in records]
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")


def write_findings(findings, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(findings, handle, indent=2)
        handle.write("\n")
