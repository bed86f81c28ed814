"""JSON and plain-text renderings of every analysis result.

Text output is always derived from the same dictionaries that are emitted as
JSON, so the two agree to the chosen number of decimals.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import published
from .born2d import BornFit
from .chsh import ChshResult
from .classical import ConjunctionReport
from .entfit import FitResult
from .ingest import CELL_KEYS, EXPERIMENT_KEYS, ChshSuite
from .lhv import MembershipReport

EXPERIMENT_LABELS = {"AB": "(A,B)", "ABp": "(A,B')", "ApB": "(A',B)", "ApBp": "(A',B')"}
_PRIMES = {"AB": ("", ""), "ABp": ("", "'"), "ApB": ("'", ""), "ApBp": ("'", "'")}
VERDICT_TEXT = {
    "none": "no overextension",
    "single_over_a": "single overextension (over A)",
    "single_over_b": "single overextension (over B)",
    "double": "double overextension",
}


def _exact(x) -> str | None:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    return None


def fmt(x: float, precision: int) -> str:
    return f"{float(x):.{precision}f}"


def _signed(x: float, precision: int) -> str:
    return f"{float(x):+.{precision}f}"


# conjunction

def conjunction_dict(rep: ConjunctionReport) -> dict:
    d = rep.dataset
    p = rep.probabilities
    key = (d.concept_a, d.concept_b, d.sign)
    counts = tuple((r.total, r.positives) for r in (d.record_a, d.record_b, d.record_ab))
    out = {
        "concept_a": d.concept_a,
        "concept_b": d.concept_b,
        "sign": d.sign,
        "counts": {
            role: {"query": r.query, "total": r.total, "positives": r.positives}
            for role, r in zip(("a", "b", "ab"), (d.record_a, d.record_b, d.record_ab))
        },
        "probabilities": {"p_a": float(p.p_a), "p_b": float(p.p_b), "p_ab": float(p.p_ab)},
        "exact": {"p_a": _exact(p.p_a), "p_b": _exact(p.p_b), "p_ab": _exact(p.p_ab)},
        "verdict": rep.verdict.kind.value,
        "margins": [float(m) for m in rep.verdict.margins],
        "kolmogorov_interval": [float(v) for v in rep.interval],
        "violation": rep.violation,
    }
    if published.CONJUNCTION_COUNTS.get(key) == counts:
        out["reported"] = published.CONJUNCTION[key]
    return out


def conjunction_text(d: dict, precision: int = 4) -> str:
    a, b = d["concept_a"], d["concept_b"]
    p = d["probabilities"]
    ref = d.get("reported", {})
    lines = [f"{a} and {b}  [sign: {d['sign']}]"]
    for role, name in (("a", a), ("b", b), ("ab", f"{a} and {b}")):
        c = d["counts"][role]
        key = f"p_{role}"
        line = f"  P({name}) = {c['positives']}/{c['total']} = {fmt(p[key], precision)}"
        if key in ref:
            line += f"   (reported {ref[key]:.2f})"
        lines.append(line)
    lo, hi = d["kolmogorov_interval"]
    lines.append(f"  classical range for P({a} and {b}): [{fmt(lo, precision)}, {fmt(hi, precision)}]")
    ma, mb = d["margins"]
    lines.append(
        f"  verdict: {VERDICT_TEXT[d['verdict']]}  "
        f"(margins {_signed(ma, precision)}, {_signed(mb, precision)})"
    )
    lines.append(f"  classical bound violated: {'yes' if d['violation'] else 'no'}")
    return "\n".join(lines)


# born

def born_dict(fit: BornFit) -> dict:
    out = {
        "item": fit.item_label,
        "entries": [
            {"role": role, "label": e.label, "probability": e.probability, "angle_degrees": e.angle}
            for role, e in zip(("a", "ab", "b"), fit.entries)
        ],
    }
    ref = published.BORN_ANGLES.get(fit.item_label)
    if ref and tuple(e.probability for e in fit.entries) == ref["p"]:
        out["reported_angles"] = list(ref["angles"])
    return out


def born_text(d: dict, precision: int = 2) -> str:
    entries = sorted(d["entries"], key=lambda e: e["angle_degrees"])
    parts = [f"theta(X, {e['label']}) = {fmt(e['angle_degrees'], precision)} deg" for e in entries]
    lines = [f"{d['item']}: " + ", ".join(parts)]
    for e in d["entries"]:
        lines.append(
            f"  P({e['label']}) = {e['probability']:g}  ->  "
            f"arccos(sqrt(P)) = {fmt(e['angle_degrees'], precision)} deg"
        )
    if "reported_angles" in d:
        lines.append("  reported: " + ", ".join(f"{a:.2f}" for a in d["reported_angles"]))
    return "\n".join(lines)


# chsh

def _counts_of(suite: ChshSuite, key: str):
    exp = suite[key]
    return tuple((exp.cell(int(c[0]), int(c[1])).total, exp.cell(int(c[0]), int(c[1])).positives) for c in CELL_KEYS)


def chsh_dict(result: ChshResult, suite: ChshSuite | None = None, membership: MembershipReport | None = None) -> dict:
    out: dict = {
        "s_value": float(result.s_value),
        "s_exact": _exact(result.s_value),
        "verdict": result.verdict.value,
        "expectations": dict(zip(("e_ab", "e_abp", "e_apb", "e_apbp"), result.expectations.as_floats())),
        "normalization_sums": {k: float(v) for k, v in result.normalization_sums.items()},
        "experiments": {},
    }
    for key, tr in result.traces.items():
        exp = {
            "raw": dict(zip(CELL_KEYS, (float(p) for p in tr.raw.cells))),
            "normalization_sum": float(tr.normalization_sum),
            "normalized": dict(zip(CELL_KEYS, (float(p) for p in tr.normalized.cells))),
            "expectation": float(tr.expectation),
        }
        if suite is not None:
            exp["setting_a"] = {"name": suite[key].setting_a.name, "outcomes": list(suite[key].setting_a.outcomes)}
            exp["setting_b"] = {"name": suite[key].setting_b.name, "outcomes": list(suite[key].setting_b.outcomes)}
        out["experiments"][key] = exp
    if suite is not None and all(
        _counts_of(suite, k) == published.CHSH_COUNTS[k] for k in EXPERIMENT_KEYS
    ):
        out["reported"] = {
            "experiments": {k: dict(v) for k, v in published.CHSH.items()},
            "s_value": published.CHSH_S,
        }
    if membership is not None:
        out["local_membership"] = membership.to_dict()
    return out


def chsh_text(d: dict, precision: int = 4) -> str:
    ref = d.get("reported", {}).get("experiments", {})
    lines = []
    for key in EXPERIMENT_KEYS:
        exp = d["experiments"].get(key)
        if exp is None:
            continue
        pa, pb = _PRIMES[key]
        r = ref.get(key, {})
        header = f"e{EXPERIMENT_LABELS[key]}"
        if "setting_a" in exp:
            header += (
                f": {'/'.join(exp['setting_a']['outcomes'])} x {'/'.join(exp['setting_b']['outcomes'])}"
            )
        lines.append(header)

        def cell_line(kind, values, rvals):
            parts = []
            for idx, ck in enumerate(CELL_KEYS):
                s = f"{kind}(A{pa}{ck[0]},B{pb}{ck[1]}) = {fmt(values[ck], precision)}"
                if rvals:
                    s += f" [{rvals[idx]:.4f}]"
                parts.append(s)
            return "  " + "   ".join(parts)

        lines.append(cell_line("Praw", exp["raw"], r.get("raw")))
        s_line = f"  S{EXPERIMENT_LABELS[key]} = {fmt(exp['normalization_sum'], precision)}"
        if "sum" in r:
            s_line += f" [{r['sum']:.4f}]"
        lines.append(s_line)
        lines.append(cell_line("P", exp["normalized"], r.get("normalized")))
        e_line = (
            f"  E{EXPERIMENT_LABELS[key]} = P(1,1) - P(1,2) - P(2,1) + P(2,2) = "
            f"{fmt(exp['expectation'], precision)}"
        )
        if "e" in r:
            e_line += f" [{r['e']:.4f}]"
        lines.append(e_line)
        lines.append("")
    s_line = f"E(A',B') + E(A,B') + E(A',B) - E(A,B) = {fmt(d['s_value'], precision)}"
    if "reported" in d:
        s_line += f" [{d['reported']['s_value']:.4f}]"
    lines.append(s_line)
    lines.append(f"verdict: {d['verdict']}  (|S| <= 2 classical, 2*sqrt(2) = {fmt(2 * math.sqrt(2), precision)})")
    if "local_membership" in d:
        lines.append(membership_text(d["local_membership"], precision))
    if ref:
        lines.append("values in [brackets] are the rounded figures reported for this dataset")
    return "\n".join(lines)


# lhv

def membership_text(d: dict, precision: int = 4) -> str:
    if d["member"]:
        return "local hidden-variable model: exists (all eight CHSH facets within [-2, 2])"
    parts = []
    for f in d["violated_facets"]:
        signs = "".join("+" if s > 0 else "-" for s in f["signs"])
        parts.append(f"{signs}: {fmt(f['value'], precision)}")
    return "local hidden-variable model: none; violated facets " + ", ".join(parts)


def expectations_dict(es) -> dict:
    return dict(zip(("e_ab", "e_abp", "e_apb", "e_apbp"), es.as_floats()))


# entfit

def fit_text(d: dict, precision: int = 4) -> str:
    ang = d["angles"]
    lines = [
        "singlet model E(x, y) = -cos(alpha_x - beta_y), alpha_a fixed at 0",
        "  angles (rad): "
        + ", ".join(f"{k} = {fmt(v, precision)}" for k, v in ang.items()),
        "  model E: " + ", ".join(f"{k} = {fmt(v, precision)}" for k, v in d["model_expectations"].items()),
        f"  model S = {fmt(d['model_s'], precision)}",
        f"  residual (sum of squares) = {d['residual']:.3e}",
        f"  converged: {'yes' if d['converged'] else 'no'}  ({d['evaluations']} loss evaluations)",
    ]
    if "target" in d:
        lines.insert(1, "  target E: " + ", ".join(f"{k} = {fmt(v, precision)}" for k, v in d["target"].items()))
    return "\n".join(lines)


def fit_dict(result: FitResult, target=None) -> dict:
    out = result.to_dict()
    if target is not None:
        out["target"] = expectations_dict(target)
    return out
