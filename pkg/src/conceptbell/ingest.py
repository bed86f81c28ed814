"""Count records and the two on-disk formats they travel in.

Conjunction data is a CSV with three consecutive rows per dataset (roles
``a``, ``b`` and ``ab``). Coincidence data for a CHSH test is a single JSON
document holding four 2x2 experiments. Probabilities are always recomputed
from the integer counts, never read from the files.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import IO, Iterable, Union

PathOrFile = Union[str, Path, IO[str]]

CONJUNCTION_HEADER = (
    "concept_a",
    "concept_b",
    "sign",
    "role",
    "query",
    "total",
    "positives",
    "date",
)
ROLES = ("a", "b", "ab")
EXPERIMENT_KEYS = ("AB", "ABp", "ApB", "ApBp")
CELL_KEYS = ("11", "12", "21", "22")


class IngestError(ValueError):
    """Base class for every input problem raised by this module."""


class ParseError(IngestError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(IngestError):
    """A record violates a count invariant."""


class SchemaError(IngestError):
    """A required field or cell is missing from a CHSH document."""


class ConsistencyError(IngestError):
    """Experiments of a CHSH suite disagree about a shared setting."""


@dataclass(frozen=True)
class CountRecord:
    query: str
    total: int
    positives: int
    sign: str
    date: dt.date | None = None

    def __post_init__(self):
        for name in ("total", "positives"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValidationError(f"{self.query!r}: {name} must be an integer, got {value!r}")
        if self.total < 1:
            raise ValidationError(f"{self.query!r}: total must be >= 1, got {self.total}")
        if self.positives < 0:
            raise ValidationError(f"{self.query!r}: positives must be >= 0, got {self.positives}")
        if self.positives > self.total:
            raise ValidationError(
                f"{self.query!r}: positives ({self.positives}) exceed total ({self.total})"
            )


def relative_frequency(record: CountRecord) -> Fraction:
    """Fraction of inspected items that carry the sign, as an exact rational."""
    return Fraction(record.positives, record.total)


@dataclass(frozen=True)
class ConjunctionDataset:
    concept_a: str
    concept_b: str
    sign: str
    record_a: CountRecord
    record_b: CountRecord
    record_ab: CountRecord

    def __post_init__(self):
        for rec in (self.record_a, self.record_b, self.record_ab):
            if rec.sign != self.sign:
                raise ValidationError(
                    f"{self.concept_a}/{self.concept_b}: record {rec.query!r} has sign "
                    f"{rec.sign!r}, expected {self.sign!r}"
                )

    @property
    def label(self) -> str:
        return f"{self.concept_a} and {self.concept_b} ({self.sign})"


@dataclass(frozen=True)
class Setting:
    """A measurement setting: a concept and its two exemplar outcomes."""

    name: str
    outcomes: tuple[str, str]

    def __post_init__(self):
        if len(self.outcomes) != 2:
            raise SchemaError(f"setting {self.name!r} needs exactly two outcomes")
        object.__setattr__(self, "outcomes", tuple(self.outcomes))

    @property
    def label(self) -> str:
        return "/".join(self.outcomes)


@dataclass(frozen=True)
class CoincidenceDataset:
    setting_a: Setting
    setting_b: Setting
    cells: dict[tuple[int, int], CountRecord]

    def __post_init__(self):
        expected = {(i, j) for i in (1, 2) for j in (1, 2)}
        if set(self.cells) != expected:
            missing = sorted(expected - set(self.cells))
            raise SchemaError(
                f"experiment {self.setting_a.name} x {self.setting_b.name} "
                f"needs cells 11,12,21,22; missing {missing}"
            )

    @property
    def outcome_labels(self) -> tuple[tuple[str, str], tuple[str, str]]:
        return self.setting_a.outcomes, self.setting_b.outcomes

    def cell(self, i: int, j: int) -> CountRecord:
        return self.cells[(i, j)]


@dataclass(frozen=True)
class ChshSuite:
    experiments: dict[str, CoincidenceDataset] = field(default_factory=dict)

    def __post_init__(self):
        missing = [k for k in EXPERIMENT_KEYS if k not in self.experiments]
        if missing:
            raise SchemaError(f"suite is missing experiment(s) {', '.join(missing)}")
        ex = self.experiments
        pairs = [
            ("AB", "ABp", "setting_a"),
            ("ApB", "ApBp", "setting_a"),
            ("AB", "ApB", "setting_b"),
            ("ABp", "ApBp", "setting_b"),
        ]
        for left, right, attr in pairs:
            if getattr(ex[left], attr) != getattr(ex[right], attr):
                raise ConsistencyError(
                    f"experiments {left} and {right} disagree on {attr}: "
                    f"{getattr(ex[left], attr)} vs {getattr(ex[right], attr)}"
                )

    def __getitem__(self, key: str) -> CoincidenceDataset:
        return self.experiments[key]

    @property
    def settings(self) -> dict[str, Setting]:
        return {
            "setting_a": self["AB"].setting_a,
            "setting_a_prime": self["ApB"].setting_a,
            "setting_b": self["AB"].setting_b,
            "setting_b_prime": self["ABp"].setting_b,
        }


def _parse_date(text: str, line: int) -> dt.date | None:
    text = text.strip()
    if not text:
        return None
    try:
        return dt.date.fromisoformat(text)
    except ValueError:
        raise ParseError(f"bad ISO-8601 date {text!r}", line) from None


def _parse_int(text: str, name: str, line: int) -> int:
    try:
        return int(text.strip())
    except (ValueError, AttributeError):
        raise ParseError(f"{name} must be an integer, got {text!r}", line) from None


def _open_text(source: PathOrFile):
    if isinstance(source, (str, Path)):
        return open(source, newline="", encoding="utf-8")
    return source


def parse_conjunction(source: PathOrFile) -> list[ConjunctionDataset]:
    """Read a conjunction CSV into datasets, preserving row order.

    Rows are grouped by runs of identical ``(concept_a, concept_b, sign)``;
    each run must contain exactly the roles ``a``, ``b`` and ``ab``.
    """
    fh = _open_text(source)
    try:
        text = fh.read()
    finally:
        if fh is not source:
            fh.close()
    if not text.strip():
        return []

    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(h.strip() for h in header) != CONJUNCTION_HEADER:
        raise ParseError(f"expected header {','.join(CONJUNCTION_HEADER)}", 1)

    groups: list[tuple[tuple[str, str, str], list[tuple[int, str, CountRecord]]]] = []
    for row in reader:
        line = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(CONJUNCTION_HEADER):
            raise ParseError(f"expected {len(CONJUNCTION_HEADER)} fields, got {len(row)}", line)
        concept_a, concept_b, sign, role, query = (c.strip() for c in row[:5])
        if role not in ROLES:
            raise ParseError(f"role must be one of {ROLES}, got {role!r}", line)
        total = _parse_int(row[5], "total", line)
        positives = _parse_int(row[6], "positives", line)
        date = _parse_date(row[7], line)
        try:
            rec = CountRecord(query, total, positives, sign, date)
        except ValidationError as exc:
            raise ValidationError(f"line {line}: {exc}") from None
        key = (concept_a, concept_b, sign)
        if groups and groups[-1][0] == key and len(groups[-1][1]) < 3:
            groups[-1][1].append((line, role, rec))
        else:
            groups.append((key, [(line, role, rec)]))

    datasets = []
    for (concept_a, concept_b, sign), rows in groups:
        first_line = rows[0][0]
        roles = [r for _, r, _ in rows]
        if sorted(roles) != sorted(ROLES):
            raise ParseError(
                f"dataset {concept_a}/{concept_b}/{sign} needs roles a, b, ab exactly once; "
                f"got {', '.join(roles)}",
                first_line,
            )
        by_role = {r: rec for _, r, rec in rows}
        datasets.append(
            ConjunctionDataset(
                concept_a, concept_b, sign, by_role["a"], by_role["b"], by_role["ab"]
            )
        )
    return datasets


def serialize_conjunction(datasets: Iterable[ConjunctionDataset]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CONJUNCTION_HEADER)
    for d in datasets:
        for role, rec in zip(ROLES, (d.record_a, d.record_b, d.record_ab)):
            writer.writerow(
                [
                    d.concept_a,
                    d.concept_b,
                    d.sign,
                    role,
                    rec.query,
                    rec.total,
                    rec.positives,
                    rec.date.isoformat() if rec.date else "",
                ]
            )
    return buf.getvalue()


def _require(obj, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"{where}: missing {key!r}")
    return obj[key]


def _setting_from_json(obj, where: str) -> Setting:
    name = _require(obj, "name", where)
    outcomes = _require(obj, "outcomes", where)
    if not isinstance(outcomes, list) or len(outcomes) != 2:
        raise SchemaError(f"{where}: 'outcomes' must list exactly two labels")
    return Setting(str(name), (str(outcomes[0]), str(outcomes[1])))


_EXPERIMENT_SETTINGS = {
    "AB": ("setting_a", "setting_b"),
    "ABp": ("setting_a", "setting_b_prime"),
    "ApB": ("setting_a_prime", "setting_b"),
    "ApBp": ("setting_a_prime", "setting_b_prime"),
}


def chsh_suite_from_dict(doc: dict) -> ChshSuite:
    """Build a validated suite from an already-decoded CHSH JSON document.

    An experiment may repeat ``setting_a``/``setting_b`` objects; when it
    does they must agree with the top-level settings.
    """
    if not isinstance(doc, dict):
        raise SchemaError("CHSH document must be a JSON object")
    settings = {
        key: _setting_from_json(_require(doc, key, "suite"), key)
        for key in ("setting_a", "setting_a_prime", "setting_b", "setting_b_prime")
    }
    exps = _require(doc, "experiments", "suite")
    if not isinstance(exps, dict):
        raise SchemaError("'experiments' must be an object")

    experiments = {}
    for key in EXPERIMENT_KEYS:
        if key not in exps:
            raise SchemaError(f"experiments: missing experiment {key!r}")
        exp = exps[key]
        sa = settings[_EXPERIMENT_SETTINGS[key][0]]
        sb = settings[_EXPERIMENT_SETTINGS[key][1]]
        for attr in ("setting_a", "setting_b"):
            if isinstance(exp, dict) and attr in exp:
                own = _setting_from_json(exp[attr], f"{key}.{attr}")
                expected = sa if attr == "setting_a" else sb
                if own != expected:
                    raise ConsistencyError(
                        f"experiment {key}: {attr} {own} does not match suite setting {expected}"
                    )
        cells = {}
        for ck in CELL_KEYS:
            i, j = int(ck[0]), int(ck[1])
            outcome = f"({sa.outcomes[i - 1]}, {sb.outcomes[j - 1]})"
            if not isinstance(exp, dict) or ck not in exp:
                raise SchemaError(f"experiment {key}: missing cell {ck} {outcome}")
            cell = exp[ck]
            where = f"experiment {key} cell {ck} {outcome}"
            query = _require(cell, "query", where)
            total = _require(cell, "total", where)
            positives = _require(cell, "positives", where)
            sign = cell.get("sign", f"{sa.outcomes[i - 1]} {sb.outcomes[j - 1]}")
            date = cell.get("date")
            try:
                date = dt.date.fromisoformat(date) if date else None
                cells[(i, j)] = CountRecord(str(query), total, positives, str(sign), date)
            except ValidationError as exc:
                raise ValidationError(f"{where}: {exc}") from None
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"{where}: {exc}") from None
        experiments[key] = CoincidenceDataset(sa, sb, cells)
    return ChshSuite(experiments)


def parse_chsh_suite(source: PathOrFile) -> ChshSuite:
    fh = _open_text(source)
    try:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    finally:
        if fh is not source:
            fh.close()
    return chsh_suite_from_dict(doc)


def chsh_suite_to_dict(suite: ChshSuite) -> dict:
    doc: dict = {
        key: {"name": s.name, "outcomes": list(s.outcomes)}
        for key, s in suite.settings.items()
    }
    doc["experiments"] = {}
    for key in EXPERIMENT_KEYS:
        exp = suite[key]
        cells = {}
        for ck in CELL_KEYS:
            rec = exp.cell(int(ck[0]), int(ck[1]))
            cell = {"query": rec.query, "total": rec.total, "positives": rec.positives, "sign": rec.sign}
            if rec.date is not None:
                cell["date"] = rec.date.isoformat()
            cells[ck] = cell
        doc["experiments"][key] = cells
    return doc


def serialize_chsh_suite(suite: ChshSuite) -> str:
    return json.dumps(chsh_suite_to_dict(suite), indent=2)


def uniform_suite(experiment: CoincidenceDataset) -> ChshSuite:
    """Suite whose four experiments are the same one (A' = A, B' = B)."""
    return ChshSuite({key: experiment for key in EXPERIMENT_KEYS})


BORN_HEADER = ("item", "label_a", "label_ab", "label_b", "p_a", "p_ab", "p_b")


@dataclass(frozen=True)
class BornItem:
    """Probabilities of A, A-and-B and B for one item, as input to a Born fit."""

    item: str
    labels: tuple[str, str, str]
    p_a: float
    p_ab: float
    p_b: float


def parse_born_items(source: PathOrFile) -> list[BornItem]:
    fh = _open_text(source)
    try:
        text = fh.read()
    finally:
        if fh is not source:
            fh.close()
    if not text.strip():
        return []
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(h.strip() for h in header) != BORN_HEADER:
        raise ParseError(f"expected header {','.join(BORN_HEADER)}", 1)
    items = []
    for row in reader:
        line = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(BORN_HEADER):
            raise ParseError(f"expected {len(BORN_HEADER)} fields, got {len(row)}", line)
        probs = []
        for name, cell in zip(BORN_HEADER[4:], row[4:]):
            try:
                p = float(cell)
            except ValueError:
                raise ParseError(f"{name} must be a number, got {cell!r}", line) from None
            if not 0.0 <= p <= 1.0:
                raise ValidationError(f"line {line}: {name} = {p} is not a probability")
            probs.append(p)
        items.append(BornItem(row[0].strip(), tuple(c.strip() for c in row[1:4]), *probs))
    return items
