"""End-to-end enumeration and classification over all index sets.

Every mask over theta(n) is processed in ascending order through the
filter chain: direct-sum removal, Gram construction, the invertible
obstruction, exact solution of U v = [1], positivity of the fixed
coordinates, the ordered-type derivation test, Jacobi linear screening,
and finally the nonlinear resolver.  Each record notes which filter
fired, so the contribution of every pruning rule to the counts can be
audited, and the report is byte-identical regardless of the number of
workers.
"""

from __future__ import annotations

import functools
import json
import multiprocessing
import time
from dataclasses import dataclass, field
from importlib import resources

from . import linalg, root_gram
from .index_sets import IndexSet, direct_sum_reason, theta
from .jacobi import BracketTable, aggregated_system, jacobi_system
from .notation import parse_vector_notation, render_vector_notation
from .root_gram import root_vector
from .soliton import (
    invertible_obstruction,
    is_ordered_type,
    positivity_prune,
    soliton_data,
    strict_positive_feasible,
)
from .solver import Verdict, resolve


@dataclass(frozen=True)
class PipelineConfig:
    """Filter toggles; defaults match the standard classification run.

    jacobi_granularity selects the constraint system driving the linear
    screening and the resolver: "aggregated" merges all generator sets
    with the same target index (the granularity of the published
    specialised equations, and the default), while "generator" keeps one
    equation per generator set, which is strictly stronger and refutes
    more index sets.
    """

    direct_sum_filter: bool = True
    invertible_filter: bool = True
    positivity_filter: bool = True
    strict_positivity: bool = False
    ordered_type_filter: bool = True
    jacobi_filter: bool = True
    jacobi_granularity: str = "aggregated"

    def __post_init__(self):
        if self.jacobi_granularity not in ("aggregated", "generator"):
            raise ValueError(
                "jacobi_granularity must be 'aggregated' or 'generator'"
            )

    def to_dict(self) -> dict:
        return {
            "direct_sum_filter": self.direct_sum_filter,
            "invertible_filter": self.invertible_filter,
            "positivity_filter": self.positivity_filter,
            "strict_positivity": self.strict_positivity,
            "ordered_type_filter": self.ordered_type_filter,
            "jacobi_filter": self.jacobi_filter,
            "jacobi_granularity": self.jacobi_granularity,
        }


@functools.lru_cache(maxsize=4)
def _full_gram(n: int) -> tuple[tuple[int, ...], ...]:
    """Gram matrix of the full triple list, sliced per mask by the driver."""
    rows = [root_vector(t, n) for t in theta(n)]
    return tuple(
        tuple(sum(x * y for x, y in zip(ra, rb)) for rb in rows) for ra in rows
    )


@dataclass
class ClassificationRecord:
    mask: int
    index_set: IndexSet
    m: int
    nullity: int | None
    invertible: bool | None
    verdict: Verdict
    filters_fired: tuple[str, ...]
    timing: float = 0.0  # seconds; never serialised (reports stay deterministic)


@dataclass
class Report:
    n: int
    config: PipelineConfig
    records: list[ClassificationRecord]
    warnings: tuple[str, ...] = ()

    def counts(self) -> list[dict]:
        """Per-nullity {solitons, candidates, nonsolitons}; unknown nullity last."""
        acc: dict[int | None, dict[str, int]] = {}
        for rec in self.records:
            bucket = acc.setdefault(
                rec.nullity, {"solitons": 0, "candidates": 0, "nonsolitons": 0}
            )
            key = {
                "soliton": "solitons",
                "candidate": "candidates",
                "nonsoliton": "nonsolitons",
            }[rec.verdict.status]
            bucket[key] += 1
        out = []
        for nullity in sorted((k for k in acc if k is not None)) + (
            [None] if None in acc else []
        ):
            row = {"nullity": nullity}
            row.update(acc[nullity])
            out.append(row)
        return out

    def records_with(self, status: str, nullity: int | None = None):
        for rec in self.records:
            if rec.verdict.status != status:
                continue
            if nullity is not None and rec.nullity != nullity:
                continue
            yield rec


def classify_index_set(index_set: IndexSet, config: PipelineConfig) -> ClassificationRecord:
    """Run the full filter chain on one index set."""
    t0 = time.perf_counter()
    mask = index_set.mask
    m = len(index_set)

    def record(nullity, invertible, verdict, filters):
        return ClassificationRecord(
            mask=mask,
            index_set=index_set,
            m=m,
            nullity=nullity,
            invertible=invertible,
            verdict=verdict,
            filters_fired=tuple(filters),
            timing=time.perf_counter() - t0,
        )

    reason = direct_sum_reason(index_set)
    if reason is not None and (config.direct_sum_filter or m == 0):
        return record(
            None,
            None,
            Verdict(status="nonsoliton", refutation=reason),
            ["direct-sum"],
        )

    full = _full_gram(index_set.n)
    positions = [r for r in range(len(full)) if index_set.mask >> r & 1]
    u = [[full[a][b] for b in positions] for a in positions]
    rank_u, solution = linalg.gram_solve(u)
    nullity = m - rank_u
    invertible = rank_u == m

    if config.invertible_filter:
        obstruction = invertible_obstruction(index_set, u, invertible=invertible)
        if obstruction is not None:
            return record(
                nullity,
                invertible,
                Verdict(status="nonsoliton", refutation=obstruction),
                ["invertible-obstruction"],
            )

    if solution is None:
        return record(
            nullity,
            invertible,
            Verdict(
                status="nonsoliton",
                refutation="inconsistent system: [1] is outside the column space of U",
            ),
            ["infeasible-system"],
        )

    filters: list[str] = []
    if config.positivity_filter:
        prune = positivity_prune(solution)
        if prune is not None:
            return record(
                nullity,
                invertible,
                Verdict(status="nonsoliton", refutation=prune),
                ["positivity-fixed"],
            )
        if config.strict_positivity:
            feasible = strict_positive_feasible(solution)
            if feasible is False:
                return record(
                    nullity,
                    invertible,
                    Verdict(
                        status="nonsoliton",
                        refutation="solution set misses the open positive orthant",
                    ),
                    ["positivity-strict"],
                )
            if feasible is None:
                filters.append("positivity-strict-undecided")

    data = soliton_data(index_set, solution.v0)
    if config.ordered_type_filter:
        if data is None:
            return record(
                nullity,
                invertible,
                Verdict(
                    status="nonsoliton",
                    refutation="no single soliton constant fits every triple",
                ),
                filters + ["ordered-type"],
            )
        if not is_ordered_type(data.derivation):
            return record(
                nullity,
                invertible,
                Verdict(
                    status="nonsoliton",
                    refutation="derivation %s is not a positive multiple of (1..n)"
                    % (tuple(map(str, data.derivation)),),
                ),
                filters + ["ordered-type"],
            )

    if config.jacobi_granularity == "generator":
        equations = jacobi_system(index_set)
    else:
        equations = aggregated_system(index_set)
    if config.jacobi_filter:
        for eq in equations:
            if len(eq.terms) == 1:
                return record(
                    nullity,
                    invertible,
                    Verdict(
                        status="nonsoliton",
                        refutation="Jacobi equation %s has a single term: the "
                        "product of two nonzero constants cannot vanish"
                        % eq.render(),
                    ),
                    filters + ["jacobi-linear"],
                )

    verdict = resolve(index_set, solution, equations)
    return record(nullity, invertible, verdict, filters + ["resolve"])


# ---------------------------------------------------------------------------
# parallel driver
# ---------------------------------------------------------------------------

_WORKER: tuple[int, PipelineConfig] | None = None


def _init_worker(n: int, config: PipelineConfig) -> None:
    global _WORKER
    _WORKER = (n, config)


def _classify_chunk(bounds: tuple[int, int]) -> list[ClassificationRecord]:
    n, config = _WORKER  # type: ignore[misc]
    lo, hi = bounds
    return [
        classify_index_set(IndexSet.from_mask(mask, n), config)
        for mask in range(lo, hi)
    ]


def dimension_warnings(n: int) -> tuple[str, ...]:
    if n > 9:
        return (
            "n > 9: running the general Jacobi generator beyond its validated range",
        )
    return ()


def run(n: int, config: PipelineConfig | None = None, jobs: int = 1) -> Report:
    """Classify every subset of theta(n); deterministic across worker counts."""
    if n < 3:
        raise ValueError("n must be at least 3 (no admissible triples below)")
    config = config or PipelineConfig()
    warnings = dimension_warnings(n)
    total = 1 << len(theta(n))
    if jobs <= 1:
        records = [
            classify_index_set(IndexSet.from_mask(mask, n), config)
            for mask in range(total)
        ]
        return Report(n=n, config=config, records=records, warnings=warnings)
    chunk = max(1, total // (jobs * 8))
    bounds = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
    with multiprocessing.Pool(
        processes=jobs, initializer=_init_worker, initargs=(n, config)
    ) as pool:
        parts = pool.map(_classify_chunk, bounds)
    records = [rec for part in parts for rec in part]
    return Report(n=n, config=config, records=records, warnings=warnings)


# ---------------------------------------------------------------------------
# serialisation
# ---------------------------------------------------------------------------


def certificate_to_dict(table: BracketTable) -> dict:
    index_set = table.support()
    u = root_gram.gram(index_set)
    v = [table.coefficients[t].radicand for t in index_set.triples]
    normalization = sum(u[0][b] * v[b] for b in range(len(v)))
    data = soliton_data(index_set, v)
    return {
        "brackets": render_vector_notation(table),
        "squares": [str(x) for x in v],
        "normalization": str(normalization),
        "beta": str(data.beta) if data else None,
        "derivation": [str(x) for x in data.derivation] if data else None,
    }


def record_to_dict(rec: ClassificationRecord) -> dict:
    verdict = rec.verdict
    return {
        "mask": rec.mask,
        "triples": rec.index_set.to_string(),
        "m": rec.m,
        "nullity": rec.nullity,
        "invertible": rec.invertible,
        "verdict": verdict.status,
        "filters": list(rec.filters_fired),
        "refutation": verdict.refutation,
        "certificate": certificate_to_dict(verdict.certificate)
        if verdict.certificate
        else None,
        "notes": list(verdict.notes),
    }


def report_to_dict(report: Report) -> dict:
    return {
        "n": report.n,
        "config": report.config.to_dict(),
        "warnings": list(report.warnings),
        "counts": report.counts(),
        "records": [record_to_dict(r) for r in report.records],
    }


def report_to_json(report: Report) -> str:
    return json.dumps(report_to_dict(report), indent=1)


def report_to_csv(report: Report) -> str:
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        [
            "mask",
            "triples",
            "m",
            "nullity",
            "invertible",
            "verdict",
            "filters",
            "brackets",
            "refutation",
            "notes",
        ]
    )
    for rec in report.records:
        verdict = rec.verdict
        writer.writerow(
            [
                rec.mask,
                rec.index_set.to_string(),
                rec.m,
                "" if rec.nullity is None else rec.nullity,
                "" if rec.invertible is None else str(rec.invertible).lower(),
                verdict.status,
                ";".join(rec.filters_fired),
                render_vector_notation(verdict.certificate)
                if verdict.certificate
                else "",
                (verdict.refutation or "").replace("\n", " | "),
                "; ".join(verdict.notes),
            ]
        )
    return buf.getvalue()


def render_table(report: Report) -> str:
    lines = []
    lines.append(
        "n=%d: %d index sets classified" % (report.n, len(report.records))
    )
    for w in report.warnings:
        lines.append("warning: %s" % w)
    lines.append("")
    lines.append("nullity  solitons  candidates  nonsolitons")
    for row in report.counts():
        lines.append(
            "%7s  %8d  %10d  %11d"
            % (
                "?" if row["nullity"] is None else row["nullity"],
                row["solitons"],
                row["candidates"],
                row["nonsolitons"],
            )
        )
    solitons = list(report.records_with("soliton"))
    lines.append("")
    lines.append("solitons: %d" % len(solitons))
    for rec in solitons:
        cert = rec.verdict.certificate
        data = rec.verdict.ricci
        lines.append(
            "  mask %d  nullity %s  %s"
            % (rec.mask, rec.nullity, render_vector_notation(cert))
        )
        if data is not None:
            lines.append(
                "    beta %s, derivation (%s)"
                % (data.beta, ", ".join(map(str, data.derivation)))
            )
    candidates = list(report.records_with("candidate"))
    lines.append("candidates: %d" % len(candidates))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# comparison against bundled reference tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReferenceRow:
    text: str
    triples: frozenset
    index_column: str | None
    nullity: int | None


@dataclass
class TableDiff:
    table: str
    status: str  # which verdict the reference rows describe
    nullity: int | None
    reference_count: int
    generated_count: int
    missing: list[str] = field(default_factory=list)
    extra: list[str] = field(default_factory=list)
    duplicates: list[str] = field(default_factory=list)

    @property
    def difference(self) -> int:
        return len(self.missing) + len(self.extra)


@dataclass
class ComparisonReport:
    n: int
    diffs: list[TableDiff]
    count_diffs: list[dict]  # {"nullity": k, "reference": x, "generated": y}

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "tables": [
                {
                    "table": d.table,
                    "status": d.status,
                    "nullity": d.nullity,
                    "reference_count": d.reference_count,
                    "generated_count": d.generated_count,
                    "missing": d.missing,
                    "extra": d.extra,
                    "duplicates": d.duplicates,
                }
                for d in self.diffs
            ],
            "candidate_counts": self.count_diffs,
        }

    def render(self) -> str:
        lines = ["comparison for n=%d" % self.n]
        if self.count_diffs:
            lines.append("candidate counts (reference vs generated):")
            for row in self.count_diffs:
                marker = "" if row["reference"] == row["generated"] else "   <-- differs"
                lines.append(
                    "  nullity %d: %d vs %d%s"
                    % (row["nullity"], row["reference"], row["generated"], marker)
                )
        for d in self.diffs:
            lines.append(
                "%s (%s, nullity %s): %d reference rows, %d generated"
                % (d.table, d.status, d.nullity, d.reference_count, d.generated_count)
            )
            for row in d.duplicates:
                lines.append("  duplicate reference row: %s" % row)
            for row in d.missing:
                lines.append("  missing (reference only): %s" % row)
            for row in d.extra:
                lines.append("  extra (generated only): %s" % row)
        return "\n".join(lines) + "\n"


def _reference_dir():
    return resources.files("nilsol") / "reference"


def load_reference_rows(name: str, n: int, fixtures_dir=None) -> list[ReferenceRow]:
    """Parse one bundled (or external) reference table."""
    if fixtures_dir is not None:
        import pathlib

        path = pathlib.Path(fixtures_dir) / name
        if not path.exists():
            raise FileNotFoundError("reference table %s not found in %s" % (name, fixtures_dir))
        text = path.read_text(encoding="utf-8")
    else:
        ref = _reference_dir() / name
        if not ref.is_file():
            raise FileNotFoundError("bundled reference table %s not found" % name)
        text = ref.read_text(encoding="utf-8")
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        vector = parts[0]
        index_col = None
        nullity = None
        for extra in parts[1:]:
            if extra.startswith("index"):
                index_col = extra.split(None, 1)[1] if " " in extra else None
            elif extra.startswith("nullity"):
                nullity = int(extra.split()[1])
        table = parse_vector_notation(vector, strict=False, n=n)
        rows.append(
            ReferenceRow(
                text=vector,
                triples=frozenset(table.coefficients.keys()),
                index_column=index_col,
                nullity=nullity,
            )
        )
    return rows


_REFERENCE_TABLES = {
    6: [("dim6_solitons.txt", "soliton", None)],
    8: [
        ("dim8_solitons.txt", "soliton", None),
        ("dim8_candidates.txt", "candidate", None),
    ],
    9: [
        ("dim9_solitons.txt", "soliton", None),
        ("dim9_candidates_nullity3.txt", "candidate", 3),
        ("dim9_candidates_nullity6.txt", "candidate", 6),
        ("dim9_candidates_nullity8.txt", "candidate", 8),
    ],
}

_REFERENCE_COUNTS = {9: "dim9_candidate_counts.txt"}


def load_reference_counts(n: int, fixtures_dir=None) -> dict[int, int]:
    name = _REFERENCE_COUNTS.get(n)
    if name is None:
        return {}
    if fixtures_dir is not None:
        import pathlib

        text = (pathlib.Path(fixtures_dir) / name).read_text(encoding="utf-8")
    else:
        text = (_reference_dir() / name).read_text(encoding="utf-8")
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        nullity, count = line.split()
        out[int(nullity)] = int(count)
    return out


def compare_with_tables(report: Report, fixtures_dir=None) -> ComparisonReport:
    """Set-difference between this report and the bundled reference tables.

    Rows are matched on index sets parsed from the vector notation;
    reference-side duplicate rows are flagged rather than double counted.
    """
    n = report.n
    specs = _REFERENCE_TABLES.get(n)
    if not specs:
        raise FileNotFoundError("no reference tables are bundled for n=%d" % n)
    diffs = []
    for name, status, nullity in specs:
        rows = load_reference_rows(name, n, fixtures_dir)
        seen: dict[frozenset, str] = {}
        duplicates = []
        for row in rows:
            if row.triples in seen:
                duplicates.append(row.text)
            else:
                seen[row.triples] = row.text
        if nullity is None:
            nullities = sorted({row.nullity for row in rows if row.nullity is not None})
        else:
            nullities = [nullity]
        generated: dict[frozenset, str] = {}
        for rec in report.records_with(status):
            if nullity is not None and rec.nullity != nullity:
                continue
            if nullity is None and nullities and rec.nullity not in nullities:
                continue
            generated[frozenset(rec.index_set.triples)] = rec.index_set.to_string()
        reference = set(seen)
        gen = set(generated)
        diffs.append(
            TableDiff(
                table=name,
                status=status,
                nullity=nullity,
                reference_count=len(rows),
                generated_count=len(gen),
                missing=sorted(seen[t] for t in reference - gen),
                extra=sorted(generated[t] for t in gen - reference),
                duplicates=duplicates,
            )
        )
    counts = load_reference_counts(n, fixtures_dir)
    count_diffs = []
    per_nullity: dict[int, int] = {}
    for rec in report.records_with("candidate"):
        per_nullity[rec.nullity] = per_nullity.get(rec.nullity, 0) + 1
    for nullity in sorted(counts):
        count_diffs.append(
            {
                "nullity": nullity,
                "reference": counts[nullity],
                "generated": per_nullity.get(nullity, 0),
            }
        )
    return ComparisonReport(n=n, diffs=diffs, count_diffs=count_diffs)
