"""Experiment drivers: build, solve, count, persist.

Each run_* function takes an ExperimentConfig, writes one CSV of
results plus a JSON metadata sidecar (config, config hash, library
version, wall times, fitted slopes), and returns an ExperimentRecord.
CSV bytes are deterministic for a fixed config and seed; timestamps
and timings live only in the sidecar.  Grid points are independent
and may be processed by a worker pool; results are merged in sorted
key order so the pool size never changes the output.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from . import __version__
from .baker import BakerSpec, apply_fast, build_dense, kept_indices, trim
from .cantor import localizer_rank_bound
from .cutoff import estimate_decay_envelope, make_cutoff
from .dft import dft
from .propagation import (assemble_identity, choose_smooth_L, identity_residual,
                          localization_norms, mass_fraction, modified_identity,
                          remainder_norm_check, propagate_random)
from .spectral import (counting_function, eigenvalues, inverse_iteration,
                       loglog_slope, operator_norm)

__all__ = [
    "ExperimentConfig",
    "ExperimentRecord",
    "DESK_K_GRID",
    "FULL_K_GRID",
    "WEYL_NU_GRID",
    "NU_SCAN_GRID",
    "run_spectrum",
    "run_weyl_scan",
    "run_nu_scan",
    "run_delta_zero",
    "run_perturbation",
    "run_propagation_figure",
    "run_eigvec_dump",
    "run_identity_check",
]

# CI-friendly default grid; --full restores the K <= 625 grid
DESK_K_GRID = (125, 175, 225, 275, 325, 375)
FULL_K_GRID = tuple(range(125, 626, 50))
WEYL_NU_GRID = (1.0, 1.1, 1.2, 1.3, 1.4, 1.5)
NU_SCAN_GRID = tuple(round(0.1 * k, 1) for k in range(10, 31))


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    M: int = 5
    alphabet: tuple = (1, 2, 3)
    tau: float = 0.05
    K_list: tuple = DESK_K_GRID
    nu_list: tuple = WEYL_NU_GRID
    seed: int = 0
    perturbation_norm: float = 0.0
    output_dir: str = "results"
    steps: int = 3
    k_index: int = 50
    lambdas: tuple = (0.4, 0.7, 4.0)
    full: bool = False
    workers: int = 1

    def validate(self) -> None:
        if any(int(k) <= 0 for k in self.K_list):
            raise ValueError("all K values must be positive")
        if any(float(nu) < 0 for nu in self.nu_list):
            raise ValueError("all nu values must be >= 0")
        if not 0.0 <= self.perturbation_norm <= 1.0:
            raise ValueError("perturbation_norm must lie in [0, 1]")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.k_index < 1:
            raise ValueError("eigenvalue rank index must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name] = list(v) if isinstance(v, tuple) else v
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        kw = {}
        for f in fields(cls):
            if f.name in d:
                v = d[f.name]
                kw[f.name] = tuple(v) if isinstance(v, list) else v
        return cls(**kw)

    def config_hash(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:12]

    def spec_for(self, K: int) -> BakerSpec:
        chi = make_cutoff(self.tau)
        return BakerSpec(M=self.M, alphabet=tuple(self.alphabet), chi=chi, K=int(K))


@dataclass
class ExperimentRecord:
    kind: str
    csv_path: str
    meta_path: str
    summary: dict
    failures: list = field(default_factory=list)
    points_total: int = 1

    @property
    def exit_code(self) -> int:
        if self.points_total and len(self.failures) / self.points_total >= 0.10:
            return 2
        return 0


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _write_csv(path: Path, header: list, rows: list) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _write_meta(path: Path, cfg: ExperimentConfig, extras: dict) -> None:
    payload = {
        "kind": cfg.kind,
        "config": cfg.to_dict(),
        "config_hash": cfg.config_hash(),
        "library_version": __version__,
        "created_at": time.strftime("%Y-%m-%dT%H:%M:%S"),
    }
    payload.update(extras)
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")


def _sorted_eigs(w: np.ndarray) -> np.ndarray:
    # descending magnitude, then re, then im: deterministic row order
    order = np.lexsort((w.imag, w.real, -np.abs(w)))
    return w[order]


def _linear_fit(x, y) -> tuple[float, float, float]:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    fitted = slope * x + intercept
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return float(slope), float(intercept), r2


def _random_perturbation(dim: int, norm: float, seed: int, K: int) -> np.ndarray:
    """i.i.d. complex Gaussian matrix scaled to the requested operator norm."""
    rng = np.random.default_rng([seed, K])
    G = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    sigma = operator_norm(G)
    return G * (norm / sigma)


def _solve_point(cfg_dict: dict, K: int) -> dict:
    """One grid point: build, trim, eigensolve.  Worker-pool safe."""
    cfg = ExperimentConfig.from_dict(cfg_dict)
    spec = cfg.spec_for(K)
    t0 = time.perf_counter()
    op = trim(build_dense(spec))
    w = _sorted_eigs(eigenvalues(op.matrix, source="trimmed", N=spec.N).eigenvalues)
    out = {"K": int(K), "N": spec.N, "dim": op.matrix.shape[0],
           "eigs": w, "seconds": time.perf_counter() - t0}
    if cfg.perturbation_norm > 0.0:
        P = _random_perturbation(op.matrix.shape[0], cfg.perturbation_norm,
                                 cfg.seed, int(K))
        wp = _sorted_eigs(eigenvalues(op.matrix + P, source="trimmed",
                                      N=spec.N, validate=False).eigenvalues)
        out["eigs_perturbed"] = wp
        out["perturbation_sigma"] = operator_norm(P)
    return out


def _run_grid(cfg: ExperimentConfig, keys: list) -> tuple[dict, list]:
    results, failures = {}, []
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as ex:
            futs = {ex.submit(_solve_point, cfg.to_dict(), k): k for k in keys}
            for fut, k in futs.items():
                try:
                    results[k] = fut.result()
                except Exception as exc:
                    failures.append({"K": int(k), "error": str(exc)})
    else:
        for k in keys:
            try:
                results[k] = _solve_point(cfg.to_dict(), k)
            except Exception as exc:
                failures.append({"K": int(k), "error": str(exc)})
    failures.sort(key=lambda f: f["K"])
    return results, failures


def run_spectrum(cfg: ExperimentConfig) -> ExperimentRecord:
    """Eigenvalues of one operator, persisted with full provenance columns."""
    cfg.validate()
    if not cfg.K_list:
        raise ValueError("need one K value")
    K = int(cfg.K_list[0])
    spec = cfg.spec_for(K)
    t0 = time.perf_counter()
    op = trim(build_dense(spec))
    w = _sorted_eigs(eigenvalues(op.matrix, source="trimmed", N=spec.N).eigenvalues)
    seconds = time.perf_counter() - t0

    alpha_str = ",".join(str(a) for a in spec.alphabet)
    rows = [[_fmt(z.real), _fmt(z.imag), _fmt(abs(z)), "trimmed",
             spec.N, spec.M, alpha_str, _fmt(spec.chi.tau)] for z in w]
    out = Path(cfg.output_dir)
    csv_path = out / "spectrum.csv"
    _write_csv(csv_path, ["re", "im", "abs", "source", "N", "M", "alphabet", "tau"], rows)
    summary = {"N": spec.N, "dim": op.matrix.shape[0],
               "largest_abs": float(np.abs(w[0])) if w.size else 0.0}
    meta_path = Path(str(csv_path) + ".meta.json")
    _write_meta(meta_path, cfg, {"summary": summary, "timings": {"solve_seconds": seconds}})
    return ExperimentRecord(kind="spectrum", csv_path=str(csv_path),
                            meta_path=str(meta_path), summary=summary)


def _count_rows(cfg, results: dict, perturbed: bool) -> list:
    rows = []
    for K in sorted(results):
        r = results[K]
        mags = np.abs(r["eigs"])
        mags_p = np.abs(r["eigs_perturbed"]) if perturbed else None
        for nu in cfg.nu_list:
            c = counting_function(mags, cfg.M, float(nu))
            row = [r["K"], r["N"], _fmt(nu), c.count]
            if perturbed:
                cp = counting_function(mags_p, cfg.M, float(nu))
                row.append(cp.count)
            row += [_fmt(c.threshold), c.boundary]
            rows.append(row)
    return rows


def _fit_slopes(cfg, results: dict, which: str = "eigs") -> dict:
    slopes = {}
    for nu in cfg.nu_list:
        pts = []
        for K in sorted(results):
            r = results[K]
            c = counting_function(np.abs(r[which]), cfg.M, float(nu))
            if c.count > 0:
                pts.append((r["N"], c.count))
        if len(pts) >= 2:
            slope, intercept, r2 = loglog_slope(pts)
            slopes[f"{float(nu):.6g}"] = {"slope": slope, "intercept": intercept,
                                          "r2": r2, "points": len(pts)}
    return slopes


def run_weyl_scan(cfg: ExperimentConfig) -> ExperimentRecord:
    """Counting function vs N on a K grid, one regression per nu."""
    cfg.validate()
    keys = sorted({int(k) for k in cfg.K_list})
    if len(keys) < 3:
        raise ValueError("weyl scan needs at least 3 K values")
    if not cfg.nu_list:
        raise ValueError("weyl scan needs at least one nu")

    results, failures = _run_grid(cfg, keys)
    rows = _count_rows(cfg, results, perturbed=False)
    out = Path(cfg.output_dir)
    csv_path = out / "weyl.csv"
    _write_csv(csv_path, ["K", "N", "nu", "count", "threshold", "boundary_count"], rows)

    delta = math.log(len(cfg.alphabet)) / math.log(cfg.M)
    slopes = _fit_slopes(cfg, results)
    summary = {"delta": delta, "slopes": slopes,
               "max_slope_deviation": max((abs(v["slope"] - delta)
                                           for v in slopes.values()), default=None)}
    timings = {str(k): results[k]["seconds"] for k in sorted(results)}
    meta_path = Path(str(csv_path) + ".meta.json")
    _write_meta(meta_path, cfg, {"summary": summary, "timings": timings,
                                 "failures": failures})
    return ExperimentRecord(kind="weyl", csv_path=str(csv_path), meta_path=str(meta_path),
                            summary=summary, failures=failures, points_total=len(keys))


def run_nu_scan(cfg: ExperimentConfig) -> ExperimentRecord:
    """Counting function vs nu at a single N, with a perturbed rerun."""
    cfg.validate()
    if len(set(cfg.K_list)) != 1:
        raise ValueError("nu scan runs at a single fixed N (one K)")
    if len(cfg.nu_list) < 5:
        raise ValueError("nu scan needs at least 5 nu values")
    K = int(cfg.K_list[0])
    r = _solve_point(cfg.to_dict(), K)
    perturbed = cfg.perturbation_norm > 0.0
    mags = np.abs(r["eigs"])
    mags_p = np.abs(r["eigs_perturbed"]) if perturbed else mags

    rows = []
    changes = 0
    pts = []
    for nu in cfg.nu_list:
        c = counting_function(mags, cfg.M, float(nu))
        cp = counting_function(mags_p, cfg.M, float(nu))
        changes += int(c.count != cp.count)
        rows.append([r["N"], _fmt(nu), c.count, cp.count, _fmt(c.threshold), c.boundary])
        if c.count > 0 and float(nu) > 0:
            pts.append((float(nu), c.count))
    out = Path(cfg.output_dir)
    csv_path = out / "nu.csv"
    _write_csv(csv_path, ["N", "nu", "count", "count_perturbed", "threshold",
                          "boundary_count"], rows)

    delta = math.log(len(cfg.alphabet)) / math.log(cfg.M)
    s = cfg.spec_for(K).chi.gevrey_order_s
    slope, intercept, r2 = loglog_slope(pts)
    summary = {"slope": slope, "intercept": intercept, "r2": r2,
               "one_minus_delta": 1.0 - delta,
               "s_times_one_minus_delta": s * (1.0 - delta),
               "perturbation_norm": cfg.perturbation_norm,
               "count_changes": changes}
    meta_path = Path(str(csv_path) + ".meta.json")
    _write_meta(meta_path, cfg, {"summary": summary,
                                 "timings": {str(K): r["seconds"]}})
    return ExperimentRecord(kind="nu", csv_path=str(csv_path), meta_path=str(meta_path),
                            summary=summary)


def run_delta_zero(cfg: ExperimentConfig) -> ExperimentRecord:
    """Degenerate single-letter alphabet: top eigenvalue decay across two N."""
    cfg.validate()
    if len(cfg.alphabet) != 1:
        raise ValueError("delta-zero experiment requires a single-letter alphabet")
    keys = sorted({int(k) for k in cfg.K_list})[:2]
    if len(keys) < 2:
        raise ValueError("need two K values for the cross-N comparison")

    results, failures = _run_grid(cfg, keys)
    rows = []
    per_n = {}
    for K in sorted(results):
        r = results[K]
        w = r["eigs"]
        mags = np.abs(w)
        for idx, z in enumerate(w):
            rows.append([r["N"], idx + 1, _fmt(z.real), _fmt(z.imag), _fmt(abs(z))])
        top = mags[:5]
        fit = None
        if top.size >= 2 and np.all(top > 0):
            slope, intercept, r2 = _linear_fit(np.arange(1, top.size + 1), np.log(top))
            fit = {"slope": slope, "intercept": intercept, "r2": r2}
        per_n[str(r["N"])] = {"top5": [float(t) for t in top], "log_fit": fit}

    out = Path(cfg.output_dir)
    csv_path = out / "delta0.csv"
    _write_csv(csv_path, ["N", "idx", "re", "im", "abs"], rows)

    cross = None
    if len(results) == 2:
        a, b = (per_n[k]["top5"] for k in sorted(per_n, key=int))
        m = min(len(a), len(b))
        cross = float(max(abs(x - y) for x, y in zip(a[:m], b[:m]))) if m else None
    summary = {"per_N": per_n, "top5_max_diff": cross}
    meta_path = Path(str(csv_path) + ".meta.json")
    _write_meta(meta_path, cfg, {"summary": summary, "failures": failures,
                                 "timings": {str(k): results[k]["seconds"]
                                             for k in sorted(results)}})
    return ExperimentRecord(kind="delta0", csv_path=str(csv_path), meta_path=str(meta_path),
                            summary=summary, failures=failures, points_total=len(keys))


def run_perturbation(cfg: ExperimentConfig) -> ExperimentRecord:
    """Weyl scan on B + P for a random Gaussian P of prescribed norm."""
    cfg.validate()
    keys = sorted({int(k) for k in cfg.K_list})
    if len(keys) < 3:
        raise ValueError("perturbation scan needs at least 3 K values")

    results, failures = _run_grid(cfg, keys)
    perturbed = cfg.perturbation_norm > 0.0
    if not perturbed:
        for r in results.values():
            r["eigs_perturbed"] = r["eigs"]
    rows = _count_rows(cfg, results, perturbed=True)
    out = Path(cfg.output_dir)
    csv_path = out / "perturb.csv"
    _write_csv(csv_path, ["K", "N", "nu", "count", "count_perturbed",
                          "threshold", "boundary_count"], rows)

    delta = math.log(len(cfg.alphabet)) / math.log(cfg.M)
    slopes = _fit_slopes(cfg, results, "eigs")
    slopes_p = _fit_slopes(cfg, results, "eigs_perturbed")
    deltas = {k: abs(slopes_p[k]["slope"] - slopes[k]["slope"])
              for k in slopes if k in slopes_p}
    sigma = {str(k): results[k].get("perturbation_sigma") for k in sorted(results)}
    summary = {"delta": delta, "slopes": slopes, "slopes_perturbed": slopes_p,
               "slope_deltas": deltas,
               "max_slope_delta": max(deltas.values(), default=None),
               "measured_perturbation_norms": sigma}
    meta_path = Path(str(csv_path) + ".meta.json")
    _write_meta(meta_path, cfg, {"summary": summary, "failures": failures,
                                 "timings": {str(k): results[k]["seconds"]
                                             for k in sorted(results)}})
    return ExperimentRecord(kind="perturb", csv_path=str(csv_path), meta_path=str(meta_path),
                            summary=summary, failures=failures, points_total=len(keys))


def run_propagation_figure(cfg: ExperimentConfig) -> ExperimentRecord:
    """Forward/backward iterates of a random vector, with mass statistics."""
    cfg.validate()
    K = int(cfg.K_list[0])
    spec = cfg.spec_for(K)
    t0 = time.perf_counter()
    fwd = propagate_random(spec, cfg.steps, "forward", seed=cfg.seed)
    bwd = propagate_random(spec, cfg.steps, "backward", seed=cfg.seed)
    rows = []
    for k, v in enumerate(fwd, start=1):
        rows += [["forward", k, i, _fmt(a)] for i, a in enumerate(np.abs(v))]
    for k, v in enumerate(bwd, start=1):
        rows += [["backward", k, i, _fmt(a)] for i, a in enumerate(np.abs(v))]
    fractions = [mass_fraction(spec, fwd[k - 1], level=k)
                 for k in range(1, cfg.steps + 1)]
    seconds = time.perf_counter() - t0

    out = Path(cfg.output_dir)
    csv_path = out / "propagation.csv"
    _write_csv(csv_path, ["direction", "k", "index", "abs_value"], rows)
    summary = {"N": spec.N, "steps": cfg.steps, "seed": cfg.seed,
               "mass_fractions": fractions,
               "strictly_increasing": all(b > a for a, b in zip(fractions, fractions[1:]))}
    meta_path = Path(str(csv_path) + ".meta.json")
    _write_meta(meta_path, cfg, {"summary": summary,
                                 "timings": {"total_seconds": seconds}})
    return ExperimentRecord(kind="propagation", csv_path=str(csv_path),
                            meta_path=str(meta_path), summary=summary)


def run_eigvec_dump(cfg: ExperimentConfig) -> ExperimentRecord:
    """Fourier profile of the eigenvector at the k-th largest eigenvalue."""
    cfg.validate()
    K = int(cfg.K_list[0])
    spec = cfg.spec_for(K)
    t0 = time.perf_counter()
    op = trim(build_dense(spec))
    w = _sorted_eigs(eigenvalues(op.matrix, source="trimmed", N=spec.N).eigenvalues)
    k = cfg.k_index
    if k > w.size:
        raise ValueError(f"rank index {k} exceeds trimmed dimension {w.size}")
    lam = complex(w[k - 1])

    warn = None
    gaps = [abs(abs(w[i]) - abs(lam)) for i in (k - 2, k) if 0 <= i < w.size]
    if gaps and min(gaps) < 1e-6 * max(abs(lam), 1e-300):
        warn = "eigenvalue magnitude clustered at the requested rank; " \
               "inverse iteration may mix nearby eigenvectors"

    vt, _ = inverse_iteration(op.matrix, lam)
    v = np.zeros(spec.N, dtype=complex)
    kept = kept_indices(spec)
    v[kept] = vt
    outside = np.setdiff1d(np.arange(spec.N), kept)
    if outside.size:
        v[outside] = apply_fast(spec, v)[outside] / lam
    v /= np.linalg.norm(v)
    residual = float(np.linalg.norm(apply_fast(spec, v) - lam * v))
    profile = np.abs(dft(v))
    seconds = time.perf_counter() - t0

    out = Path(cfg.output_dir)
    csv_path = out / "eigvec.csv"
    _write_csv(csv_path, ["index", "abs_value"],
               [[i, _fmt(a)] for i, a in enumerate(profile)])
    summary = {"N": spec.N, "k_index": k,
               "lambda_re": lam.real, "lambda_im": lam.imag, "lambda_abs": abs(lam),
               "exponent": -math.log(abs(lam)) / math.log(cfg.M),
               "residual": residual, "vector_norm": float(np.linalg.norm(v)),
               "clustered_warning": warn}
    meta_path = Path(str(csv_path) + ".meta.json")
    _write_meta(meta_path, cfg, {"summary": summary,
                                 "timings": {"total_seconds": seconds}})
    return ExperimentRecord(kind="eigvec", csv_path=str(csv_path),
                            meta_path=str(meta_path), summary=summary)


def run_identity_check(cfg: ExperimentConfig, nu: float = 1.0) -> ExperimentRecord:
    """Approximate-inverse identity audit over a (K, lambda) grid.

    For each K an adaptive-L smooth schedule is selected, then every
    lambda is checked: base and modified identity residuals, measured
    remainder norm against 1/2 and the fitted envelope bound, one-step
    localization norms, and the localizer rank bound.
    """
    cfg.validate()
    chi = make_cutoff(cfg.tau)
    envelope = estimate_decay_envelope(chi)
    reports = []
    failures = []
    t0 = time.perf_counter()
    for K in sorted({int(k) for k in cfg.K_list}):
        spec = cfg.spec_for(K)
        try:
            L, schedule, sup_bound = choose_smooth_L(spec, nu)
            B = build_dense(spec).dense
        except Exception as exc:
            failures.append({"K": int(K), "error": str(exc)})
            continue
        delta = spec.delta
        rank_bound = localizer_rank_bound(schedule, delta)
        for lam in cfg.lambdas:
            parts = assemble_identity(spec, schedule, complex(lam), B=B)
            resid = identity_residual(parts)
            mod = modified_identity(parts)
            rem = remainder_norm_check(parts, envelope)
            loc = localization_norms(parts)
            env_vals = [envelope.evaluate(d) for d in schedule.d]
            rank_a = int(round(np.trace(parts.A).real))
            reports.append({
                "K": int(K), "N": spec.N, "lambda": float(lam),
                "ell": schedule.ell, "L": L, "sup_remainder_bound": sup_bound,
                "schedule_d": [float(d) for d in schedule.d],
                "schedule_valid": schedule.valid,
                "identity_residual": resid,
                "identity_pass": resid <= 1e-8,
                "modified_residual": mod["residual"],
                "modified_pass": mod["passed"],
                "remainder_norm": rem["measured_norm"],
                "remainder_half_pass": rem["half_pass"],
                "envelope_bound": rem["envelope_bound"],
                "tail_norm": rem["tail_norm"],
                "localization_norms": loc,
                "localization_envelope": env_vals,
                "rank_A": rank_a,
                "rank_bound": rank_bound,
                "rank_pass": rank_a <= rank_bound,
            })
            if resid > 1e-8 or mod["residual"] > 1e-8:
                failures.append({"K": int(K), "lambda": float(lam),
                                 "error": "identity residual above 1e-8"})
    seconds = time.perf_counter() - t0

    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    json_path = out / "identity.json"
    with open(json_path, "w") as fh:
        json.dump(reports, fh, indent=2, sort_keys=True)
        fh.write("\n")
    summary = {
        "points": len(reports),
        "all_identities_pass": all(r["identity_pass"] and r["modified_pass"]
                                   for r in reports) if reports else False,
        "all_ranks_pass": all(r["rank_pass"] for r in reports) if reports else False,
        "max_identity_residual": max((r["identity_residual"] for r in reports),
                                     default=None),
    }
    meta_path = Path(str(json_path) + ".meta.json")
    _write_meta(meta_path, cfg, {"summary": summary, "failures": failures,
                                 "timings": {"total_seconds": seconds}})
    total = len({int(k) for k in cfg.K_list}) * len(cfg.lambdas)
    return ExperimentRecord(kind="identity", csv_path=str(json_path),
                            meta_path=str(meta_path), summary=summary,
                            failures=failures, points_total=total)
