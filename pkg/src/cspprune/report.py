"""Batch preprocessing report: one CSV row per instance plus a summary chart."""

from __future__ import annotations

import csv
import time

from . import fixtures as fx
from .engine import EngineConfig, preprocess
from .trace import RULE_IDS

CSV_FIELDS = (
    "instance", "vars", "assignments", "constraints",
    "vars_eliminated", "values_eliminated", "ac_removed",
    *RULE_IDS,
    "wipeout", "removed_fraction", "time_ms",
)


def default_corpus() -> list[tuple[str, object]]:
    items = []
    for name in fx.list_fixtures():
        if name == "RANDOM":
            continue
        items.append((name, fx.fixture(name).instance))
    for seed in range(5):
        inst = fx.random_instance(6, 4, 0.5, 0.5, seed)
        items.append((f"RANDOM[{seed}]", inst))
    return items


def _measure(name, inst) -> dict:
    total = sum(len(inst.domain(v)) for v in inst.active_vars())
    nvars = len(inst.active_vars())
    ncons = inst.nontrivial_constraint_count()
    t0 = time.perf_counter()
    work, trace = preprocess(inst, EngineConfig())
    dt = (time.perf_counter() - t0) * 1000.0
    tally = {rule: 0 for rule in RULE_IDS}
    acs = 0
    for rec in trace.records:
        if rec.kind == "ac":
            acs += 1
        else:
            tally[rec.rule] += 1
    left = sum(len(work.domain(v)) for v in work.active_vars())
    row = {
        "instance": name,
        "vars": nvars,
        "assignments": total,
        "constraints": ncons,
        "vars_eliminated": sum(tally[r] for r in RULE_IDS[:4]),
        "values_eliminated": sum(tally[r] for r in RULE_IDS[4:]),
        "ac_removed": acs,
        "wipeout": int(work.has_wipeout()),
        "removed_fraction": round(1.0 - left / total, 4) if total else 0.0,
        "time_ms": round(dt, 2),
    }
    row.update(tally)
    return row


def run_report(csv_path: str, png_path: str, corpus=None) -> list[dict]:
    if corpus is None:
        corpus = default_corpus()
    rows = [_measure(name, inst) for name, inst in corpus]
    with open(csv_path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        writer.writeheader()
        writer.writerows(rows)
    _render_chart(rows, png_path)
    return rows


def _render_chart(rows, png_path: str) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    names = [r["instance"] for r in rows]
    fractions = [r["removed_fraction"] for r in rows]
    colors = ["firebrick" if r["wipeout"] else "steelblue" for r in rows]
    fig, ax = plt.subplots(figsize=(8, max(3, 0.32 * len(rows) + 1)))
    ax.barh(range(len(rows)), fractions, color=colors)
    ax.set_yticks(range(len(rows)))
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlim(0.0, 1.0)
    ax.set_xlabel("fraction of assignments removed")
    ax.set_title("preprocessing impact (red = wipeout, unsatisfiable)")
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
