"""Machine-readable reproductions: the golden confidence table and the
data series behind the bound-curve figures.

Everything lands in CSV with a fixed header, LF newlines, UTF-8, 9
significant digits in full-precision columns and the literal NA for
inapplicable terms. Rendering to images is out of scope; these files are
meant for external plotting.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import IO, Iterable, Optional, Sequence

import numpy as np

from .confidence import default_inequalities, evaluate_confidence
from .exact import exact_confidence
from .model import PopulationSpec, SampleDesign, SamplingMethod
from .simulate import SimulationConfig, run_simulation
from .terms import BoundResult, InequalityKind, Side, combine_terms

TABLE1_CARDINALITIES = (
    166, 333, 500, 666, 833, 1000, 1666, 3333, 5000, 6666, 8333, 10000,
    166666, 333333, 500000, 666666, 833333, 1000000,
)
TABLE1_SAMPLE_SIZES = (100, 1000, 10000)


def fmt9(value: Optional[float]) -> str:
    """Full-precision cell: 9 significant digits, NA for missing."""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "NA"
    return format(value, ".9g")


def rounded_cell(value: float) -> str:
    """Two-decimal display; 1.00 is only printed for values above 0.995."""
    if value > 0.995:
        return "1.00"
    return format(value, ".2f")


def table1(n: int = 1_000_000, q: float = 2.0) -> list[dict]:
    """Confidence that the Q-error is at most q, for the 18 standard
    cardinalities at sample sizes 100 / 1000 / 10000, with (R) and without
    (NR) replacement."""
    rows = []
    for c in TABLE1_CARDINALITIES:
        if c > n:
            raise ValueError(f"cardinality {c} exceeds table size {n}")
        p = c / n
        row: dict = {"c": c, "p": p}
        for k in TABLE1_SAMPLE_SIZES:
            r = evaluate_confidence(SamplingMethod.WITH_REPLACEMENT, p, k, q)
            nr = evaluate_confidence(SamplingMethod.WITHOUT_REPLACEMENT, p, k, q, n=n)
            row[f"r{k}"] = r.confidence
            row[f"nr{k}"] = nr.confidence
        rows.append(row)
    return rows


def write_table1_csv(rows: Sequence[dict], out: IO[str]) -> None:
    value_cols = [f"{m}{k}" for k in TABLE1_SAMPLE_SIZES for m in ("r", "nr")]
    header = ["c", "p"] + value_cols + [f"{col}_2dp" for col in value_cols]
    out.write(",".join(header) + "\n")
    for row in rows:
        cells = [str(row["c"]), fmt9(row["p"])]
        cells += [fmt9(row[col]) for col in value_cols]
        cells += [rounded_cell(row[col]) for col in value_cols]
        out.write(",".join(cells) + "\n")


_METHOD_KINDS = {
    SamplingMethod.WITH_REPLACEMENT: (
        InequalityKind.CHERNOFF,
        InequalityKind.BERNSTEIN,
        InequalityKind.HOEFFDING,
    ),
    SamplingMethod.WITHOUT_REPLACEMENT: (
        InequalityKind.HOEFFDING_SERFLING,
        InequalityKind.BERNSTEIN_SERFLING,
    ),
}

_TERM_COLUMNS = [
    f"{kind.value}_{side.value}"
    for kind in InequalityKind
    for side in Side
]

SERIES_COLUMNS = (
    ["method", "n", "c", "p", "k", "q", "status"]
    + _TERM_COLUMNS
    + ["omega", "psi", "confidence", "exact", "empirical_rate", "standard_error"]
)


@dataclass(frozen=True)
class GridSpec:
    """Axes of a figure-series sweep. Exactly one of p / c drives the
    selectivity axis; with a p axis, exact and simulation columns use the
    nearest integer cardinality round(p * n)."""

    k: tuple[int, ...]
    q: tuple[float, ...]
    n: tuple[int, ...] = (1_000_000,)
    p: Optional[tuple[float, ...]] = None
    c: Optional[tuple[int, ...]] = None
    methods: tuple[SamplingMethod, ...] = (
        SamplingMethod.WITH_REPLACEMENT,
        SamplingMethod.WITHOUT_REPLACEMENT,
    )
    include_hoeffding: bool = False

    def __post_init__(self) -> None:
        if (self.p is None) == (self.c is None):
            raise ValueError("exactly one of the p and c axes must be given")
        for name in ("k", "q", "n", "methods"):
            if not getattr(self, name):
                raise ValueError(f"axis {name} must not be empty")
        if self.p is not None and any(not 0.0 <= v <= 1.0 for v in self.p):
            raise ValueError("p axis values must lie in [0, 1]")
        if self.c is not None and any(v < 0 for v in self.c):
            raise ValueError("c axis values must be non-negative")


def _parse_axis_values(text: str) -> list[float]:
    text = text.strip()
    if text.startswith("log:") or text.startswith("lin:"):
        kind, *parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"range axis needs {kind}:LO:HI:COUNT, got {text!r}")
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 1:
            raise ValueError(f"axis count must be >= 1, got {count}")
        if count == 1:
            return [lo]
        if kind == "log":
            if lo <= 0 or hi <= 0:
                raise ValueError("log axis endpoints must be positive")
            return list(np.geomspace(lo, hi, count))
        return list(np.linspace(lo, hi, count))
    return [float(part) for part in text.split(",") if part.strip()]


def _as_ints(values: Iterable[float], key: str) -> tuple[int, ...]:
    out = []
    for v in values:
        if abs(v - round(v)) > 1e-9:
            raise ValueError(f"axis {key} needs integers, got {v}")
        out.append(int(round(v)))
    return tuple(out)


def parse_grid_file(text: str) -> GridSpec:
    """Parse the key=value grid file format.

    Keys: p | c | k | q | n | method | include_hoeffding. Values are a
    comma list (100,1000), lin:LO:HI:COUNT, or log:LO:HI:COUNT. '#' starts
    a comment.
    """
    fields: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"grid file line {lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lower()
        if key in ("p", "q"):
            fields[key] = tuple(_parse_axis_values(value))
        elif key in ("c", "k", "n"):
            fields[key] = _as_ints(_parse_axis_values(value), key)
        elif key == "method":
            fields["methods"] = tuple(
                SamplingMethod.parse(part.strip()) for part in value.split(",")
            )
        elif key == "include_hoeffding":
            lowered = value.lower()
            if lowered not in ("true", "false"):
                raise ValueError(f"grid file line {lineno}: include_hoeffding must be true or false")
            fields["include_hoeffding"] = lowered == "true"
        else:
            raise ValueError(f"grid file line {lineno}: unknown key {key!r}")
    if "k" not in fields or "q" not in fields:
        raise ValueError("grid file must define the k and q axes")
    return GridSpec(**fields)


def _term_map(result: BoundResult) -> dict[str, float]:
    cells = {}
    for term in result.terms:
        key = f"{term.inequality.value}_{term.side.value}"
        cells[key] = term.probability if term.applicable else math.nan
    return cells


def figure_series(
    spec: GridSpec,
    with_exact: bool = False,
    with_simulation: bool = False,
    trials: int = 1000,
    seed: int = 0,
) -> list[dict]:
    """One record per grid point with every per-inequality term, the
    combined confidence, and optional exact / simulation columns.

    Points that violate preconditions are emitted with a degenerate or
    invalid status instead of being dropped.
    """
    sel_axis = spec.p if spec.p is not None else spec.c
    records = []
    point_index = 0
    for n, sel, k, q, method in itertools.product(
        spec.n, sel_axis, spec.k, spec.q, spec.methods
    ):
        if spec.p is not None:
            p = float(sel)
            c = int(round(p * n))
        else:
            c = int(sel)
            if c > n:
                raise ValueError(f"cardinality {c} exceeds table size {n}")
            p = c / n
        record: dict = {
            "method": method.value, "n": n, "c": c, "p": p, "k": k, "q": q,
        }
        for col in _TERM_COLUMNS:
            record[col] = None
        record.update({"omega": None, "psi": None, "confidence": None,
                       "exact": None, "empirical_rate": None, "standard_error": None})

        wor = method is SamplingMethod.WITHOUT_REPLACEMENT
        if wor and k >= n:
            record["status"] = "invalid"
            records.append(record)
            continue
        if p == 0.0:
            record["status"] = "degenerate"
            record["confidence"] = 0.0
        else:
            full = evaluate_confidence(
                method, p, k, q, n=n, inequalities=_METHOD_KINDS[method]
            )
            record.update(_term_map(full))
            chosen = default_inequalities(method, spec.include_hoeffding)
            combined = combine_terms(
                t for t in full.terms if t.inequality in chosen
            )
            record["omega"] = combined.omega
            record["psi"] = combined.psi
            record["confidence"] = combined.confidence
            record["status"] = "ok"

        if with_exact or with_simulation:
            pop = PopulationSpec(n=n, cardinality=c)
            design = SampleDesign(method=method, k=k)
            if not (wor and k >= n):
                if with_exact:
                    record["exact"] = exact_confidence(pop, design, q)
                if with_simulation:
                    summary = run_simulation(SimulationConfig(
                        pop=pop, design=design, q=q, trials=trials,
                        seed=(seed + 1_000_003 * point_index) % 2**64,
                    ))
                    record["empirical_rate"] = summary.empirical_rate
                    record["standard_error"] = summary.standard_error
        records.append(record)
        point_index += 1
    return records


def write_series_csv(records: Sequence[dict], out: IO[str]) -> None:
    out.write(",".join(SERIES_COLUMNS) + "\n")
    for record in records:
        cells = []
        for col in SERIES_COLUMNS:
            value = record.get(col)
            if col in ("method", "status"):
                cells.append(str(value))
            elif col in ("n", "c", "k"):
                cells.append(str(int(value)))
            else:
                cells.append(fmt9(value))
        out.write(",".join(cells) + "\n")


@dataclass(frozen=True)
class ComparisonPoint:
    method: SamplingMethod
    n: int
    c: int
    k: int
    q: float


def default_comparison_points(
    lo: float = 0.005, hi: float = 0.98, minimum: int = 50
) -> list[ComparisonPoint]:
    """Grid points whose exact success probability sits strictly inside
    (lo, hi), so the simulation comparison is statistically meaningful."""
    n = 1_000_000
    candidates = []
    for c, k, q, method in itertools.product(
        (1000, 2000, 5000, 10000, 166666),
        (100, 300, 1000, 3000, 10000),
        (1.5, 2.0, 3.0),
        SamplingMethod,
    ):
        pop = PopulationSpec(n=n, cardinality=c)
        design = SampleDesign(method=method, k=k)
        exact = exact_confidence(pop, design, q)
        if lo <= exact <= hi:
            candidates.append(ComparisonPoint(method, n, c, k, q))
    if len(candidates) < minimum:
        raise RuntimeError(
            f"only {len(candidates)} usable comparison points, need {minimum}"
        )
    return candidates


def simulation_comparison(
    points: Sequence[ComparisonPoint], trials: int, seed: int
) -> list[dict]:
    """Empirical success rate next to the exact probability and the
    theoretical bound for each point; `conservatism` is how far the bound
    sits below what actually happens."""
    records = []
    for index, pt in enumerate(points):
        pop = PopulationSpec(n=pt.n, cardinality=pt.c)
        design = SampleDesign(method=pt.method, k=pt.k)
        exact = exact_confidence(pop, design, pt.q)
        bound = evaluate_confidence(
            pt.method, pop.p, pt.k, pt.q, n=pt.n
        ).confidence
        summary = run_simulation(SimulationConfig(
            pop=pop, design=design, q=pt.q, trials=trials,
            seed=(seed + 1_000_003 * index) % 2**64,
        ))
        records.append({
            "method": pt.method.value, "n": pt.n, "c": pt.c,
            "k": pt.k, "q": pt.q,
            "confidence": bound,
            "exact": exact,
            "empirical_rate": summary.empirical_rate,
            "standard_error": summary.standard_error,
            "successes": summary.successes,
            "trials": summary.trials,
            "conservatism": summary.empirical_rate - bound,
        })
    return records


COMPARISON_COLUMNS = (
    "method", "n", "c", "k", "q", "confidence", "exact",
    "empirical_rate", "standard_error", "successes", "trials", "conservatism",
)


def write_comparison_csv(records: Sequence[dict], out: IO[str]) -> None:
    out.write(",".join(COMPARISON_COLUMNS) + "\n")
    for record in records:
        cells = []
        for col in COMPARISON_COLUMNS:
            value = record[col]
            if col == "method":
                cells.append(str(value))
            elif col in ("n", "c", "k", "successes", "trials"):
                cells.append(str(int(value)))
            else:
                cells.append(fmt9(value))
        out.write(",".join(cells) + "\n")
