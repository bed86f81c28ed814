"""Matplotlib figures written next to report output."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .born2d import vector  # noqa: E402

FIGSIZE = (6.4, 4.0)
DPI = 120


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=DPI, bbox_inches="tight")
    plt.close(fig)
    return path


def born_figure(d: dict, path: Path) -> Path:
    """Unit vectors X, A, A-and-B and B in the plane.

    A is drawn below X and the other two above; which side a vector sits on
    does not affect any probability.
    """
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    ax.annotate("", xy=(1, 0), xytext=(0, 0), arrowprops=dict(arrowstyle="->", lw=2, color="black"))
    ax.text(1.03, 0, "X", va="center")
    sides = {"a": -1, "ab": 1, "b": 1}
    colors = {"a": "tab:blue", "ab": "tab:purple", "b": "tab:red"}
    for e in d["entries"]:
        side = sides[e["role"]]
        if e["role"] == "b" and side == 1:
            # keep A-and-B and B apart when both sit above X
            other = next(x for x in d["entries"] if x["role"] == "ab")
            if other["angle_degrees"] > e["angle_degrees"]:
                side = -1
        x, y = vector(e["angle_degrees"], side)
        ax.annotate("", xy=(x, y), xytext=(0, 0), arrowprops=dict(arrowstyle="->", lw=1.5, color=colors[e["role"]]))
        ax.text(1.08 * x, 1.08 * y, f"{e['label']}\n{e['angle_degrees']:.2f}°", ha="center", va="center", fontsize=8)
    t = [math.radians(a) for a in range(-90, 91)]
    ax.plot([math.cos(a) for a in t], [math.sin(a) for a in t], lw=0.5, color="0.7")
    ax.set_xlim(-0.2, 1.4)
    ax.set_ylim(-1.25, 1.25)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title(f"Born model for {d['item']}")
    return _save(fig, path)


def chsh_figure(d: dict, path: Path) -> Path:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6), gridspec_kw={"width_ratios": [3, 1]})
    labels = ["E(A,B)", "E(A,B')", "E(A',B)", "E(A',B')"]
    values = list(d["expectations"].values())
    ax1.bar(labels, values, color=["tab:red" if v < 0 else "tab:blue" for v in values])
    ax1.axhline(0, color="black", lw=0.8)
    ax1.set_ylim(-1.05, 1.05)
    ax1.set_ylabel("correlation")
    for i, v in enumerate(values):
        ax1.text(i, v + (0.04 if v >= 0 else -0.09), f"{v:.4f}", ha="center", fontsize=8)

    s = d["s_value"]
    ax2.bar(["S"], [s], color="tab:green")
    ax2.axhline(2, color="black", ls="--", lw=1, label="classical 2")
    ax2.axhline(2 * math.sqrt(2), color="tab:purple", ls=":", lw=1, label="2√2")
    ax2.axhline(-2, color="black", ls="--", lw=1)
    ax2.set_ylim(min(-3, s - 0.3), max(3, s + 0.3))
    ax2.text(0, s + (0.1 if s >= 0 else -0.3), f"{s:.4f}", ha="center", fontsize=8)
    ax2.legend(fontsize=7, loc="lower right")
    fig.suptitle(f"CHSH: {d['verdict']}")
    return _save(fig, path)


def conjunction_figure(rows: list[dict], path: Path) -> Path:
    fig, ax = plt.subplots(figsize=FIGSIZE)
    width = 0.25
    for k, d in enumerate(rows):
        p = d["probabilities"]
        xs = [k - width, k, k + width]
        ax.bar(xs, [p["p_a"], p["p_b"], p["p_ab"]], width=width * 0.9, color=["tab:blue", "tab:orange", "tab:green"])
        lo, hi = d["kolmogorov_interval"]
        ax.plot([k + width / 2, k + 1.5 * width], [hi, hi], color="black", lw=1.5)
        ax.plot([k + width / 2, k + 1.5 * width], [lo, lo], color="black", lw=0.8, ls=":")
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels([f"{d['concept_a']}/{d['concept_b']}\n({d['sign']})" for d in rows])
    ax.set_ylim(0, 1)
    ax.set_ylabel("relative frequency")
    handles = [plt.Rectangle((0, 0), 1, 1, color=c) for c in ("tab:blue", "tab:orange", "tab:green")]
    ax.legend(handles + [plt.Line2D([], [], color="black")], ["P(A)", "P(B)", "P(A and B)", "classical max"], fontsize=8)
    ax.set_title("Conjunction against the classical bound")
    return _save(fig, path)
