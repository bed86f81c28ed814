"""Command-line front end.

Exit codes: 0 success, 1 I/O problem, 2 invalid or degenerate input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import figures, reporting
from .born2d import fit_item
from .chsh import DegenerateExperimentError, ExpectationSet, run_suite
from .classical import conjunction_report
from .entfit import fit
from .ingest import (
    IngestError,
    SchemaError,
    chsh_suite_from_dict,
    parse_born_items,
    parse_chsh_suite,
    parse_conjunction,
)
from .lhv import membership_report

log = logging.getLogger(__name__)

COMMANDS = ("conjunction", "chsh", "born-fit", "lhv-check", "ent-fit", "report")
EXIT_OK, EXIT_IO, EXIT_INVALID = 0, 1, 2

REPORT_FILES = {"conjunction": "conjunction.csv", "chsh": "chsh.json", "born": "born.csv"}


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str
    output_format: str = "text"
    precision: int = 4
    output_path: str | None = None
    figures_dir: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.output_format not in ("json", "text"):
            raise ValueError(f"format must be json or text, got {self.output_format!r}")
        if not 2 <= self.precision <= 12:
            raise ValueError(f"precision must be in [2, 12], got {self.precision}")


def _emit(config: RunConfig, payload, text: str) -> None:
    if config.output_format == "json":
        out = json.dumps(payload, indent=2)
    else:
        out = text
    if config.output_path:
        Path(config.output_path).write_text(out + "\n", encoding="utf-8")
    else:
        sys.stdout.write(out + "\n")


def _conjunction_payload(path) -> list[dict]:
    return [reporting.conjunction_dict(conjunction_report(d)) for d in parse_conjunction(path)]


def _conjunction_text(rows: list[dict], precision: int) -> str:
    return "\n\n".join(reporting.conjunction_text(r, precision) for r in rows)


def _born_payload(path) -> list[dict]:
    return [
        reporting.born_dict(fit_item(it.item, it.p_a, it.p_ab, it.p_b, labels=it.labels))
        for it in parse_born_items(path)
    ]


def _born_text(rows: list[dict], precision: int) -> str:
    # angles print at two decimals unless more were asked for
    digits = 2 if precision == 4 else precision
    return "\n\n".join(reporting.born_text(r, digits) for r in rows)


def _chsh_payload(path) -> dict:
    suite = parse_chsh_suite(path)
    result = run_suite(suite)
    return reporting.chsh_dict(result, suite, membership_report(result.expectations))


def _load_expectations(path) -> ExpectationSet:
    """Read either an expectation-set object or a full CHSH suite document."""
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if isinstance(doc, dict) and "experiments" in doc:
        return run_suite(chsh_suite_from_dict(doc)).expectations
    keys = ("e_ab", "e_abp", "e_apb", "e_apbp")
    if not isinstance(doc, dict) or any(k not in doc for k in keys):
        raise SchemaError(f"expected a CHSH suite or an object with {', '.join(keys)}")
    try:
        return ExpectationSet(*(float(doc[k]) for k in keys))
    except (TypeError, ValueError) as exc:
        raise SchemaError(str(exc)) from None


def cmd_conjunction(config: RunConfig) -> int:
    rows = _conjunction_payload(config.input_path)
    _emit(config, rows, _conjunction_text(rows, config.precision))
    return EXIT_OK


def cmd_born_fit(config: RunConfig) -> int:
    rows = _born_payload(config.input_path)
    _emit(config, rows, _born_text(rows, config.precision))
    return EXIT_OK


def cmd_chsh(config: RunConfig) -> int:
    d = _chsh_payload(config.input_path)
    _emit(config, d, reporting.chsh_text(d, config.precision))
    return EXIT_OK


def cmd_lhv_check(config: RunConfig) -> int:
    es = _load_expectations(config.input_path)
    rep = membership_report(es).to_dict()
    rep["expectations"] = reporting.expectations_dict(es)
    _emit(config, rep, reporting.membership_text(rep, config.precision))
    return EXIT_OK


def cmd_ent_fit(config: RunConfig) -> int:
    es = _load_expectations(config.input_path)
    d = reporting.fit_dict(fit(es), es)
    _emit(config, d, reporting.fit_text(d, config.precision))
    return EXIT_OK


def _figure_dir(config: RunConfig) -> Path | None:
    if config.figures_dir:
        return Path(config.figures_dir)
    if config.output_path:
        out = Path(config.output_path)
        return out.parent / f"{out.stem}_figures"
    return None


def cmd_report(config: RunConfig) -> int:
    root = Path(config.input_path)
    if not root.is_dir():
        raise FileNotFoundError(f"report input {root} is not a directory")
    present = {k: root / name for k, name in REPORT_FILES.items() if (root / name).is_file()}
    if not present:
        raise FileNotFoundError(
            f"{root} holds none of {', '.join(REPORT_FILES.values())}"
        )

    bundle: dict = {}
    sections = []
    if "conjunction" in present:
        bundle["conjunction"] = _conjunction_payload(present["conjunction"])
        sections.append(
            "== Conjunction data: relative frequencies and classical bounds ==\n\n"
            + _conjunction_text(bundle["conjunction"], config.precision)
        )
    if "born" in present:
        bundle["born"] = _born_payload(present["born"])
        sections.append(
            "== Two-dimensional Born model angles ==\n\n" + _born_text(bundle["born"], config.precision)
        )
    if "chsh" in present:
        bundle["chsh"] = _chsh_payload(present["chsh"])
        sections.append(
            "== CHSH from coincidence counts ==\n\n" + reporting.chsh_text(bundle["chsh"], config.precision)
        )

    fig_dir = _figure_dir(config)
    if fig_dir is not None:
        written = []
        if bundle.get("conjunction"):
            written.append(figures.conjunction_figure(bundle["conjunction"], fig_dir / "conjunction.png"))
        for row in bundle.get("born", []):
            written.append(figures.born_figure(row, fig_dir / f"born_{row['item']}.png"))
        if "chsh" in bundle:
            written.append(figures.chsh_figure(bundle["chsh"], fig_dir / "chsh.png"))
        bundle["figures"] = [str(p) for p in written]
        for p in written:
            log.info("wrote %s", p)

    _emit(config, bundle, "\n\n".join(sections))
    return EXIT_OK


HANDLERS = {
    "conjunction": cmd_conjunction,
    "chsh": cmd_chsh,
    "born-fit": cmd_born_fit,
    "lhv-check": cmd_lhv_check,
    "ent-fit": cmd_ent_fit,
    "report": cmd_report,
}


def run(config: RunConfig) -> int:
    try:
        return HANDLERS[config.command](config)
    except (IngestError, DegenerateExperimentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conceptbell",
        description="Conjunction, Born-angle and CHSH analyses of annotated count data.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="input file (report: directory)")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--precision", type=int, default=4, help="decimals in text output (2-12)")
    common.add_argument("--output", help="write the report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "conjunction": "overextension and classical bounds from a conjunction CSV",
        "chsh": "CHSH statistic from a coincidence-count JSON suite",
        "born-fit": "Born-rule angles from a probability CSV",
        "lhv-check": "local-hidden-variable membership of four correlations",
        "ent-fit": "least-squares singlet-angle fit to four correlations",
        "report": "combined report from a directory of inputs",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "report":
            p.add_argument("--figures", help="directory for PNG figures")
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            command=args.command,
            input_path=args.input,
            output_format=args.format,
            precision=args.precision,
            output_path=args.output,
            figures_dir=getattr(args, "figures", None),
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
