"""CSV table loading, a small conjunctive predicate language, row
sampling, and bound-annotated cardinality estimates.

The predicate grammar is deliberately tiny: `atom (AND atom)*` with
atom = `column op literal`, ops =, !=, <, <=, >, >=, integer / real /
single-quoted string literals ('' escapes a quote inside a string), AND
case-insensitive, whitespace insignificant. Text columns support only
= and !=.
"""

from __future__ import annotations

import csv
import enum
import re
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .confidence import evaluate_confidence
from .exact import estimate_from_hits
from .model import (
    PopulationSpec,
    SampleDesign,
    SamplingMethod,
    q_error,
    validate_design,
)
from .solver import Unreachable, q_at_confidence


class TableParseError(ValueError):
    pass


class PredicateSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class BindingError(ValueError):
    pass


class ColumnType(enum.Enum):
    INTEGER = "integer"
    REAL = "real"
    TEXT = "text"


@dataclass
class TableData:
    """Column-oriented table; data[i] holds column i for all n rows."""

    columns: list[str]
    types: list[ColumnType]
    data: list[list]

    @property
    def n(self) -> int:
        return len(self.data[0]) if self.data else 0

    @property
    def m(self) -> int:
        return len(self.columns)


@dataclass(frozen=True)
class LoadOptions:
    delimiter: str = ","
    header: bool = True
    type_hints: Optional[dict[str, ColumnType]] = None


_INT_RE = re.compile(r"[+-]?\d+\Z")


def _parse_cell(text: str) -> tuple[ColumnType, Union[int, float, str]]:
    if _INT_RE.match(text):
        return ColumnType.INTEGER, int(text)
    if "_" in text:
        return ColumnType.TEXT, text  # float() would accept 1_0; ids stay text
    try:
        return ColumnType.REAL, float(text)
    except ValueError:
        return ColumnType.TEXT, text


def load_table(path: str, options: LoadOptions = LoadOptions()) -> TableData:
    """Load a delimited file, inferring integer / real / text per column.

    Integer promotes to real when mixed; any non-numeric cell (including a
    blank) degrades the column to text, unless a numeric type hint turns
    that into a parse error instead.
    """
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle, delimiter=options.delimiter)
        raw_rows = []
        header: Optional[list[str]] = None
        for line_no, row in enumerate(reader, start=1):
            if not row:
                continue  # blank line, not a data row
            if header is None and options.header:
                header = [cell.strip() for cell in row]
                continue
            raw_rows.append((line_no, row))

    if options.header and header is None:
        raise TableParseError(f"{path}: empty file")
    if not raw_rows:
        raise TableParseError(f"{path}: no data rows")

    m = len(header) if header is not None else len(raw_rows[0][1])
    columns = header if header is not None else [f"col{i}" for i in range(m)]
    for line_no, row in raw_rows:
        if len(row) != m:
            raise TableParseError(
                f"{path}: line {line_no}: expected {m} fields, got {len(row)}"
            )

    hints = options.type_hints or {}
    types: list[ColumnType] = []
    data: list[list] = []
    for i, name in enumerate(columns):
        cells = [row[i].strip() for _, row in raw_rows]
        parsed = [_parse_cell(cell) for cell in cells]
        kinds = {kind for kind, _ in parsed}
        hint = hints.get(name)
        if ColumnType.TEXT in kinds:
            if hint in (ColumnType.INTEGER, ColumnType.REAL):
                bad_line = next(
                    line_no
                    for (line_no, _), (kind, _v) in zip(raw_rows, parsed)
                    if kind is ColumnType.TEXT
                )
                raise TableParseError(
                    f"{path}: line {bad_line}: column {name!r} is hinted "
                    f"{hint.value} but holds a non-numeric cell"
                )
            col_type = ColumnType.TEXT
            values: list = cells
        elif ColumnType.REAL in kinds or hint is ColumnType.REAL:
            col_type = ColumnType.REAL
            values = [float(v) for _, v in parsed]
        else:
            col_type = ColumnType.INTEGER
            values = [v for _, v in parsed]
        if hint is ColumnType.TEXT:
            col_type, values = ColumnType.TEXT, cells
        types.append(col_type)
        data.append(values)
    return TableData(columns=columns, types=types, data=data)


# Predicate language ---------------------------------------------------------

_OPS: dict[str, Callable] = {
    "=": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}
_TEXT_OPS = frozenset({"=", "!="})


@dataclass(frozen=True)
class Atom:
    column: str
    op: str
    literal: Union[int, float, str]


@dataclass(frozen=True)
class Predicate:
    atoms: tuple[Atom, ...]


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>[+-]?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op><=|>=|!=|=|<|>)
  | (?P<string>'(?:[^']|'')*')
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise PredicateSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if match.lastgroup != "ws":
            tokens.append((match.lastgroup, match.group(), pos))
        pos = match.end()
    return tokens


def parse_predicate(text: str) -> Predicate:
    """Parse `atom (AND atom)*`. Column existence is checked at binding
    time, not here."""
    if not text or not text.strip():
        raise PredicateSyntaxError("empty predicate", 0)
    tokens = _tokenize(text)
    atoms = []
    i = 0
    end = len(text)

    def expect(kind: str, what: str) -> tuple[str, str, int]:
        nonlocal i
        if i >= len(tokens):
            raise PredicateSyntaxError(f"expected {what}", end)
        token = tokens[i]
        if token[0] != kind:
            raise PredicateSyntaxError(f"expected {what}, got {token[1]!r}", token[2])
        i += 1
        return token

    while True:
        _, column, col_pos = expect("ident", "column name")
        if column.upper() == "AND":
            raise PredicateSyntaxError("expected column name, got 'AND'", col_pos)
        _, op, _ = expect("op", "comparison operator")
        if i >= len(tokens):
            raise PredicateSyntaxError("expected literal", end)
        kind, raw, pos = tokens[i]
        i += 1
        if kind == "number":
            literal = int(raw) if _INT_RE.match(raw) else float(raw)
        elif kind == "string":
            literal = raw[1:-1].replace("''", "'")
        else:
            raise PredicateSyntaxError(f"expected literal, got {raw!r}", pos)
        atoms.append(Atom(column=column, op=op, literal=literal))
        if i >= len(tokens):
            break
        kind, raw, pos = tokens[i]
        if kind != "ident" or raw.upper() != "AND":
            raise PredicateSyntaxError(f"expected AND, got {raw!r}", pos)
        i += 1
    return Predicate(atoms=tuple(atoms))


def bind_predicate(
    table: TableData, predicate: Predicate
) -> list[tuple[int, Callable, Union[int, float, str]]]:
    """Resolve column names and check literal/column type compatibility."""
    compiled = []
    for atom in predicate.atoms:
        try:
            index = table.columns.index(atom.column)
        except ValueError:
            raise BindingError(f"unknown column {atom.column!r}") from None
        col_type = table.types[index]
        if col_type is ColumnType.TEXT:
            if not isinstance(atom.literal, str):
                raise BindingError(
                    f"column {atom.column!r} is text but literal {atom.literal!r} is numeric"
                )
            if atom.op not in _TEXT_OPS:
                raise BindingError(
                    f"text column {atom.column!r} supports only = and !=, got {atom.op!r}"
                )
        else:
            if isinstance(atom.literal, str):
                raise BindingError(
                    f"column {atom.column!r} is numeric but literal {atom.literal!r} is text"
                )
        compiled.append((index, _OPS[atom.op], atom.literal))
    return compiled


def _row_matches(table: TableData, compiled, row: int) -> bool:
    return all(op(table.data[ci][row], lit) for ci, op, lit in compiled)


def true_cardinality(table: TableData, predicate: Predicate) -> int:
    """Exact predicate cardinality by full scan."""
    compiled = bind_predicate(table, predicate)
    return sum(1 for row in range(table.n) if _row_matches(table, compiled, row))


def sample_indices(n: int, design: SampleDesign, rng: np.random.Generator) -> np.ndarray:
    """Row indices per the design. Without replacement uses a partial
    Fisher-Yates over index space: exact uniformity, O(k) extra memory."""
    k = design.k
    if design.method is SamplingMethod.WITH_REPLACEMENT:
        return rng.integers(0, n, size=k)
    swaps = rng.integers(np.arange(k), n)
    displaced: dict[int, int] = {}
    out = np.empty(k, dtype=np.int64)
    for i in range(k):
        j = int(swaps[i])
        picked = displaced.get(j, j)
        out[i] = picked
        displaced[j] = displaced.get(i, i)
    return out


@dataclass(frozen=True)
class QConfidence:
    q: float
    confidence: float
    omega: float
    psi: float
    degenerate: bool


@dataclass(frozen=True)
class EstimateReport:
    n: int
    k: int
    method: SamplingMethod
    seed: int
    hits: int
    estimate: float
    p_used: float
    p_source: str
    per_q: tuple[QConfidence, ...]
    true_cardinality: Optional[int] = None
    realized_q_error: Optional[float] = None
    target_confidence: Optional[float] = None
    q_at_target: Optional[float] = None  # None also when unreachable


def estimate_with_bounds(
    table: TableData,
    predicate: Predicate,
    design: SampleDesign,
    qs: Sequence[float] = (2.0,),
    seed: int = 0,
    assume_p: Optional[float] = None,
    target_confidence: Optional[float] = None,
) -> EstimateReport:
    """Draw one sample, scale the hit count up to the table, and attach
    the a-priori confidence of each requested q (plus, if asked, the
    smallest q guaranteed at target_confidence for this sample size).

    By default the bound columns use the true selectivity from a full
    scan (the bounds assume the ground truth is known) and the realized
    Q-error is reported. Passing assume_p suppresses the ground truth:
    only the estimate is reported and the bounds use the supplied p.
    """
    n = table.n
    pop_check = PopulationSpec(n=n, cardinality=0)
    validate_design(pop_check, design)
    if not qs and target_confidence is None:
        raise ValueError("need at least one q value or a target confidence")

    compiled = bind_predicate(table, predicate)
    rng = np.random.Generator(np.random.Philox(key=seed))
    indices = sample_indices(n, design, rng)
    hits = sum(1 for row in indices if _row_matches(table, compiled, int(row)))
    est = estimate_from_hits(n, design.k, hits)

    if assume_p is None:
        truth = true_cardinality(table, predicate)
        p_used = truth / n
        p_source = "true"
        realized = q_error(est, truth)
    else:
        if not 0.0 <= assume_p <= 1.0:
            raise ValueError(f"assumed selectivity must be in [0, 1], got {assume_p}")
        truth = None
        p_used = assume_p
        p_source = "assumed"
        realized = None

    per_q = []
    for q in qs:
        result = evaluate_confidence(design.method, p_used, design.k, q, n=n)
        per_q.append(QConfidence(
            q=q,
            confidence=result.confidence,
            omega=result.omega,
            psi=result.psi,
            degenerate=result.degenerate,
        ))
    q_at_target = None
    if target_confidence is not None and p_used > 0.0:
        answer = q_at_confidence(
            design.method, p_used, design.k, target_confidence, n=n
        )
        if not isinstance(answer, Unreachable):
            q_at_target = float(answer)
    return EstimateReport(
        n=n,
        k=design.k,
        method=design.method,
        seed=seed,
        hits=hits,
        estimate=est,
        p_used=p_used,
        p_source=p_source,
        per_q=tuple(per_q),
        true_cardinality=truth,
        realized_q_error=realized,
        target_confidence=target_confidence,
        q_at_target=q_at_target,
    )
