"""Figure rendering from experiment CSV outputs and their metadata sidecars."""

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

# documented CSV schema per figure kind; order matters
SCHEMAS = {
    "weyl": ["K", "N", "nu", "count", "threshold", "boundary_count"],
    "nu": ["N", "nu", "count", "count_perturbed", "threshold", "boundary_count"],
    "delta0-circle": ["N", "idx", "re", "im", "abs"],
    "delta0-decay": ["N", "idx", "re", "im", "abs"],
    "propagation": ["direction", "k", "index", "abs_value"],
    "eigvec": ["index", "abs_value"],
}

FIGURE_KINDS = tuple(SCHEMAS)


@dataclass(frozen=True)
class FigureJob:
    csv_path: str
    kind: str
    out_path: str

    def validate(self) -> None:
        if self.kind not in SCHEMAS:
            raise ValueError(f"unknown figure kind: {self.kind!r} "
                             f"(expected one of {', '.join(FIGURE_KINDS)})")


def _check_header(kind: str, header: list) -> None:
    expected = SCHEMAS[kind]
    for i, want in enumerate(expected):
        if i >= len(header):
            raise ValueError(f"{kind} csv: missing column '{want}'")
        if header[i] != want:
            raise ValueError(f"{kind} csv: expected column '{want}' at "
                             f"position {i}, found '{header[i]}'")
    if len(header) > len(expected):
        raise ValueError(f"{kind} csv: unexpected column '{header[len(expected)]}'")


def load_table(job: FigureJob) -> list:
    """Rows as dicts keyed by column, after schema validation."""
    with open(job.csv_path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"empty csv: {job.csv_path}") from None
        _check_header(job.kind, header)
        rows = [dict(zip(header, row)) for row in reader]
    if not rows:
        raise ValueError(f"csv has no data rows: {job.csv_path}")
    return rows


def load_meta(csv_path: str) -> dict:
    path = Path(str(csv_path) + ".meta.json")
    if not path.exists():
        raise FileNotFoundError(f"metadata sidecar not found: {path}")
    with open(path) as fh:
        return json.load(fh)


def _footer(fig, meta: dict) -> None:
    fig.text(0.99, 0.01,
             f"config {meta.get('config_hash', '?')} · "
             f"openbaker {meta.get('library_version', '?')}",
             ha="right", va="bottom", fontsize=7, color="0.4")


def _fit_line(x, y):
    slope, intercept = np.polyfit(x, y, 1)
    return slope, intercept


def _plot_weyl(rows: list, meta: dict, fig) -> None:
    M = int(meta["config"]["M"])
    logm = math.log(M)
    ax = fig.subplots()
    by_nu = {}
    for r in rows:
        if int(r["count"]) > 0:
            by_nu.setdefault(r["nu"], []).append((int(r["N"]), int(r["count"])))
    if not by_nu:
        raise ValueError("weyl csv contains no positive counts")
    slopes = meta.get("summary", {}).get("slopes", {})
    for nu, pts in sorted(by_nu.items(), key=lambda kv: float(kv[0])):
        pts.sort()
        x = np.log([p[0] for p in pts]) / logm
        y = np.log([p[1] for p in pts]) / logm
        slope = slopes.get(nu, {}).get("slope")
        if slope is None and len(pts) >= 2:
            slope, _ = _fit_line(x, y)
        label = f"nu = {nu}" + (f" (slope {slope:.3f})" if slope is not None else "")
        ax.plot(x, y, marker="o", ms=4, label=label)
    # reference line of slope delta through the cloud's center of mass
    delta = meta["summary"]["delta"]
    xs = np.log([p[0] for pts in by_nu.values() for p in pts]) / logm
    ys = np.log([p[1] for pts in by_nu.values() for p in pts]) / logm
    x0, y0 = float(np.mean(xs)), float(np.mean(ys))
    xr = np.array([xs.min(), xs.max()])
    ax.plot(xr, y0 + delta * (xr - x0), "r--", lw=1.5,
            label=f"slope delta = {delta:.4f}")
    ax.set_xlabel("log N / log M")
    ax.set_ylabel("log count / log M")
    ax.set_title("eigenvalue counting vs N")
    ax.legend(fontsize=8)


def _plot_nu(rows: list, meta: dict, fig) -> None:
    ax = fig.subplots()
    nu = np.array([float(r["nu"]) for r in rows])
    count = np.array([int(r["count"]) for r in rows])
    countp = np.array([int(r["count_perturbed"]) for r in rows])
    keep = (nu > 0) & (count > 0)
    if not keep.any():
        raise ValueError("nu csv contains no positive counts")
    ax.loglog(nu[keep], count[keep], "o", ms=5, label="count")
    ax.loglog(nu[keep], countp[keep], "x", ms=5, label="perturbed count")
    slope = meta.get("summary", {}).get("slope")
    if slope is None:
        slope, intercept = _fit_line(np.log(nu[keep]), np.log(count[keep]))
    else:
        intercept = meta["summary"]["intercept"]
    xr = np.array([nu[keep].min(), nu[keep].max()])
    ax.loglog(xr, np.exp(intercept) * xr ** slope, "-", lw=1,
              label=f"fit slope {slope:.4f}")
    ax.set_xlabel("nu")
    ax.set_ylabel("count")
    ax.set_title(f"counting vs nu at N = {rows[0]['N']}")
    ax.legend(fontsize=8)


def _plot_delta0_circle(rows: list, meta: dict, fig) -> None:
    ax = fig.subplots()
    theta = np.linspace(0, 2 * math.pi, 256)
    ax.plot(np.cos(theta), np.sin(theta), "k--", lw=0.7)
    for n in sorted({r["N"] for r in rows}, key=int):
        pts = [(float(r["re"]), float(r["im"])) for r in rows if r["N"] == n]
        ax.plot([p[0] for p in pts], [p[1] for p in pts], "o", ms=3,
                alpha=0.7, label=f"N = {n}")
    ax.set_aspect("equal")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title("spectrum in the unit disk")
    ax.legend(fontsize=8)


def _plot_delta0_decay(rows: list, meta: dict, fig) -> None:
    ax = fig.subplots()
    for n in sorted({r["N"] for r in rows}, key=int):
        pts = sorted((int(r["idx"]), float(r["abs"])) for r in rows if r["N"] == n)
        pts = [(i, a) for i, a in pts if a > 0][:10]
        if not pts:
            continue
        ax.semilogy([p[0] for p in pts], [p[1] for p in pts], marker="o",
                    ms=4, label=f"N = {n}")
    ax.set_xlabel("k")
    ax.set_ylabel("|lambda_k|")
    ax.set_title("top eigenvalue magnitudes")
    ax.legend(fontsize=8)


def _plot_propagation(rows: list, meta: dict, fig) -> None:
    directions = sorted({r["direction"] for r in rows}, reverse=True)
    ks = sorted({int(r["k"]) for r in rows})
    axes = fig.subplots(len(directions), len(ks), squeeze=False)
    for i, d in enumerate(directions):
        for j, k in enumerate(ks):
            pts = sorted((int(r["index"]), float(r["abs_value"])) for r in rows
                         if r["direction"] == d and int(r["k"]) == k)
            ax = axes[i][j]
            ax.plot([p[0] for p in pts], [p[1] for p in pts], lw=0.7)
            ax.set_title(f"{d}, k = {k}", fontsize=8)
            ax.tick_params(labelsize=6)
    fig.suptitle("propagated states")


def _plot_eigvec(rows: list, meta: dict, fig) -> None:
    ax = fig.subplots()
    pts = sorted((int(r["index"]), float(r["abs_value"])) for r in rows)
    ax.plot([p[0] for p in pts], [p[1] for p in pts], lw=0.8)
    s = meta.get("summary", {})
    title = "eigenvector profile"
    if "lambda_abs" in s:
        title += f" at |lambda| = {s['lambda_abs']:.4f}"
    ax.set_title(title)
    ax.set_xlabel("frequency index")
    ax.set_ylabel("|component|")


_FIGURES = {
    "weyl": _plot_weyl,
    "nu": _plot_nu,
    "delta0-circle": _plot_delta0_circle,
    "delta0-decay": _plot_delta0_decay,
    "propagation": _plot_propagation,
    "eigvec": _plot_eigvec,
}


def render(job: FigureJob) -> str:
    """Render one figure; returns the output path.

    All validation happens before the output file is touched, so a
    failed job never leaves a partial image behind.
    """
    job.validate()
    rows = load_table(job)
    meta = load_meta(job.csv_path)
    fig = plt.figure(figsize=(7, 5))
    try:
        _FIGURES[job.kind](rows, meta, fig)
        _footer(fig, meta)
        fig.savefig(job.out_path, dpi=150)
    finally:
        plt.close(fig)
    return job.out_path
