"""Figures written next to CLI output files."""
from __future__ import annotations

import os
from typing import List, Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

PASS_COLOR = "#3a7d44"
FAIL_COLOR = "#b23a48"

# matplotlib stamps a version string into PNG metadata by default
_METADATA = {"Software": None}


def figure_path(out: str) -> str:
    root, _ = os.path.splitext(out)
    return root + ".png"


def _save(fig, path: str):
    fig.tight_layout()
    fig.savefig(path, dpi=110, metadata=_METADATA)
    plt.close(fig)


def table_heatmap(doc: dict, path: str):
    """|chi(g)| / chi(1) for every row and column of a character table."""
    rows = doc["values"]
    if not rows:
        return
    mags = np.array([[complex(v["approx"][0], v["approx"][1]) for v in row] for row in rows])
    deg = np.array([float(d) for d in doc["degrees"]])[:, None]
    ratio = np.abs(mags) / deg
    fig, ax = plt.subplots(figsize=(max(4, 0.3 * ratio.shape[1] + 2), max(3, 0.3 * ratio.shape[0] + 1.5)))
    im = ax.imshow(ratio, cmap="viridis", vmin=0, vmax=1, interpolation="nearest")
    ax.set_xlabel("class")
    ax.set_ylabel("character")
    ax.set_title(f"{doc['group']}  |chi(g)| / chi(1)")
    fig.colorbar(im, ax=ax, shrink=0.8)
    _save(fig, path)


def verdict_bars(names: List[str], ok: List[bool], runtimes: Optional[List[Optional[int]]], title: str, path: str):
    fig, ax = plt.subplots(figsize=(6, max(2.5, 0.35 * len(names) + 1)))
    y = np.arange(len(names))
    widths = [max(r or 0, 1) for r in runtimes] if runtimes else [1] * len(names)
    ax.barh(y, widths, color=[PASS_COLOR if o else FAIL_COLOR for o in ok])
    ax.set_yticks(y)
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    if runtimes and any(r is not None for r in runtimes):
        ax.set_xscale("log")
        ax.set_xlabel("runtime (ms)")
    else:
        ax.set_xticks([])
    ax.set_title(title)
    _save(fig, path)


def count_bars(counts: dict, title: str, path: str):
    fig, ax = plt.subplots(figsize=(6, 3))
    names = list(counts)
    ax.bar(range(len(names)), [counts[k] for k in names], color="#4c72b0")
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("count")
    ax.set_title(title)
    _save(fig, path)


def centralizer_histogram(classes: List[dict], title: str, path: str):
    cents = sorted(c["centralizer_order"] for c in classes)
    if not cents:
        return
    vals, counts = np.unique(cents, return_counts=True)
    fig, ax = plt.subplots(figsize=(6, 3))
    ax.bar(range(len(vals)), counts, color="#dd8452")
    ax.set_xticks(range(len(vals)))
    ax.set_xticklabels([str(v) for v in vals], rotation=45, ha="right", fontsize=7)
    ax.set_xlabel("centralizer order")
    ax.set_ylabel("classes")
    ax.set_title(title)
    _save(fig, path)


def render(command: str, doc: dict, out: str) -> Optional[str]:
    """Draw the figure for one command's document; returns its path."""
    path = figure_path(out)
    res = doc.get("result", doc)
    if command == "chartable":
        table_heatmap(res, path)
    elif command == "verify":
        checks = res.get("checks", [])
        verdict_bars([c["name"] for c in checks], [c["ok"] for c in checks], None,
                     f"{res['theorem']}: {res['verdict']}", path)
    elif command == "verify-all":
        crit = res["criteria"]
        verdict_bars([c["id"] for c in crit], [c["verdict"] == "PASS" for c in crit],
                     [c.get("runtime_ms") for c in crit], f"acceptance ({res['profile']})", path)
    elif command == "count-real":
        count_bars(res["counts"], "real regular characters by route", path)
    elif command == "classes":
        centralizer_histogram(res["classes"], f"{res['group']} classes", path)
    else:
        return None
    return path
