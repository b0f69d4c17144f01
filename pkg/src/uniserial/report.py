"""Ledger serialization and figure rendering for the verification battery.

The battery's report directory holds the delimited ledger (CSV plus a JSON
twin) and the figures distilled from whichever checks carried plottable
data.  Rendering is headless and deterministic.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .checks import CheckResult


def ledger_rows(results: list[CheckResult]) -> list[dict]:
    rows = []
    for res in results:
        rows.append(
            {
                "check": res.check,
                "claim": res.claim,
                "verdict": "pass" if res.passed else "FAIL",
                "seconds": f"{res.seconds:.3f}",
                "values": "; ".join(f"{k}={v}" for k, v in res.values.items()),
            }
        )
    return rows


def write_csv(results: list[CheckResult], path: Path):
    rows = ledger_rows(results)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=["check", "claim", "verdict", "seconds", "values"])
        writer.writeheader()
        writer.writerows(rows)


def write_json(results: list[CheckResult], path: Path):
    payload = [
        {
            "check": r.check,
            "claim": r.claim,
            "passed": r.passed,
            "seconds": round(r.seconds, 3),
            "values": {k: str(v) for k, v in r.values.items()},
        }
        for r in results
    ]
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def render_text(results: list[CheckResult]) -> str:
    lines = []
    width = max(len(r.check) for r in results) if results else 10
    for r in results:
        tag = "pass" if r.passed else "FAIL"
        lines.append(f"{tag:4s}  {r.check:{width}s}  {r.seconds:8.2f}s  {r.claim}")
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines)


def _fig_alpha(plot, path: Path):
    fig, ax = plt.subplots(figsize=(7, 4.5))
    kinds = sorted(plot["minima"])
    xs = range(len(kinds))
    ax.bar(xs, [plot["minima"][k] for k in kinds], color="#4878a8", width=0.55,
           label="family minimum")
    for i, kind in enumerate(kinds):
        ref = plot["constants"].get(kind)
        if ref is not None:
            ax.hlines(ref, i - 0.35, i + 0.35, colors="#a83232", linestyles="--")
            ax.annotate(f"{ref:.2f}", (i + 0.36, ref), fontsize=8, color="#a83232")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(kinds)
    ax.set_ylabel("weight lower bound")
    ax.set_title("Per-family minima of the simple-group weight")
    ax.set_ylim(0.95, None)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _fig_zeta(plot, path: Path):
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ys = range(len(plot["labels"]))
    ax.barh(ys, plot["bound"], color="#d9c27a", height=0.6, label="certified bound")
    ax.barh(ys, plot["zeta"], color="#4878a8", height=0.35, label="zeta at 2")
    ax.set_yticks(list(ys))
    ax.set_yticklabels(plot["labels"])
    ax.set_xscale("log")
    ax.set_xlabel("value (log scale)")
    ax.set_title("Maximal-subgroup zeta values against their weight bounds")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _fig_widths(plot, path: Path):
    fig, ax = plt.subplots(figsize=(7, 4))
    xs = range(len(plot["widths"]))
    colors = ["#b5b5b5" if f else "#4878a8" for f in plot["frattini"]]
    ax.bar(xs, plot["widths"], color=colors, width=0.6)
    ax.set_xticks(list(xs))
    ax.set_xticklabels(plot["labels"], rotation=30)
    ax.set_ylabel("width")
    ax.set_title("Chief-factor widths, top to bottom (grey = Frattini factors)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _fig_tower(plot, path: Path):
    fig, axes = plt.subplots(1, len(plot["groups"]), figsize=(9, 4), squeeze=False)
    for ax, (name, data) in zip(axes[0], sorted(plot["groups"].items())):
        ax.plot(data["levels"], data["ratio"], "o-", color="#4878a8", label="exact ratio")
        ax.plot(data["levels"], data["bound"], "s--", color="#a83232", label="product bound")
        ax.set_title(name)
        ax.set_xlabel("series level")
        ax.set_ylim(0, 1.05)
        ax.legend(fontsize=8)
    axes[0][0].set_ylabel("probability ratio")
    fig.suptitle("Telescoped generation bounds along the chief series")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


FIGURES = {
    "alpha-battery": ("alpha_battery.png", _fig_alpha),
    "zeta-alpha-bound": ("zeta_bounds.png", _fig_zeta),
    "affine-equality-width": ("width_sequence.png", _fig_widths),
    "tower-bound": ("generation_tower.png", _fig_tower),
}


def write_report(results: list[CheckResult], out_dir: Path) -> list[Path]:
    """Write ledger.csv, ledger.json and the figures; returns written paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    csv_path = out_dir / "ledger.csv"
    write_csv(results, csv_path)
    written.append(csv_path)
    json_path = out_dir / "ledger.json"
    write_json(results, json_path)
    written.append(json_path)
    for res in results:
        spec = FIGURES.get(res.check)
        if spec is None or res.plot is None:
            continue
        name, renderer = spec
        path = out_dir / name
        renderer(res.plot, path)
        written.append(path)
    return written
