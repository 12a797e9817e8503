"""Dense non-Hermitian spectra, operator norms, counting, and regression.

Eigenvalues come from LAPACK's zgeev path (balancing, Hessenberg
reduction, implicitly shifted QR) through scipy, with a backward-error
audit: for a sample of computed eigenvalues lambda, the smallest
singular value of (A - lambda I) must not exceed 1e-8 ||A||.  The
counting function

    N_N(nu) = #{ lambda in Spec : |lambda| >= M^(-nu) }

uses an exact >= comparison; eigenvalues within 1e-10 of the threshold
are tallied separately so experiment records can expose borderline
counts.
"""

from __future__ import annotations

import hashlib
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

__all__ = [
    "Spectrum",
    "CountingResult",
    "eigenvalues",
    "operator_norm",
    "smallest_singular_value",
    "counting_function",
    "loglog_slope",
    "inverse_iteration",
]

_BOUNDARY_TOL = 1e-10


@dataclass(frozen=True)
class Spectrum:
    """Multiset of eigenvalues with provenance."""

    eigenvalues: np.ndarray
    source: str = "full"            # "full" or "trimmed"
    N: int = 0
    spec_hash: str = ""
    residuals: np.ndarray | None = None

    def magnitudes(self) -> np.ndarray:
        return np.abs(self.eigenvalues)


@dataclass(frozen=True)
class CountingResult:
    nu: float
    threshold: float
    count: int
    boundary: int


def _matrix_hash(A: np.ndarray) -> str:
    return hashlib.sha256(np.ascontiguousarray(A).tobytes()).hexdigest()[:12]


def _norm_estimate(A: np.ndarray, iters: int = 20) -> float:
    """Cheap largest-singular-value estimate by power iteration on A* A."""
    rng = np.random.default_rng(0)
    n = A.shape[1]
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v /= np.linalg.norm(v)
    Ah = A.conj().T
    sigma = 0.0
    for _ in range(iters):
        w = Ah @ (A @ v)
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        v = w / nw
        sigma = np.sqrt(nw)
    return float(sigma)


def smallest_singular_value(A: np.ndarray, iters: int = 30) -> float:
    """sigma_min(A) by inverse power iteration on an LU factorization.

    A numerically singular factorization means sigma_min is below
    resolvable precision and 0.0 is returned.
    """
    n = A.shape[0]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            lu, piv = sla.lu_factor(A)
        except (np.linalg.LinAlgError, ValueError):
            return 0.0
    if not np.all(np.isfinite(lu)) or np.abs(np.diag(lu)).min() == 0.0:
        return 0.0
    rng = np.random.default_rng(1)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v /= np.linalg.norm(v)
    inv_norm_sq = 0.0
    with np.errstate(all="ignore"):
        for _ in range(iters):
            w = sla.lu_solve((lu, piv), v, trans=0, check_finite=False)
            w = sla.lu_solve((lu, piv), w, trans=2, check_finite=False)
            nw = np.linalg.norm(w)
            if not np.isfinite(nw) or nw == 0.0:
                return 0.0
            inv_norm_sq = nw
            v = w / nw
    return float(1.0 / np.sqrt(inv_norm_sq))


def eigenvalues(A: np.ndarray, source: str = "full", N: int | None = None,
                spec_hash: str = "", validate: bool = True,
                backward_tol: float = 1e-8, sample: int = 10) -> Spectrum:
    """All eigenvalues of a square complex matrix, with multiplicity.

    validate=True audits a sample of the computed eigenvalues: the
    smallest singular value of (A - lambda I) must be below
    backward_tol * ||A||, otherwise a RuntimeError identifies the
    offending matrix by content hash.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("expected a square matrix")
    if A.shape[0] > 4000:
        raise ValueError("dense eigensolve capped at dimension 4000")
    try:
        w = sla.eigvals(A)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"eigensolver failed to converge on matrix {_matrix_hash(A)}") from exc

    if validate and A.shape[0] > 1:
        scale = _norm_estimate(A)
        if scale > 0.0:
            idx = np.linspace(0, w.size - 1, min(sample, w.size)).astype(int)
            order = np.argsort(-np.abs(w))
            for lam in w[order][idx]:
                smin = smallest_singular_value(A - lam * np.eye(A.shape[0]))
                if smin > backward_tol * scale:
                    raise RuntimeError(
                        f"backward-error audit failed on matrix {_matrix_hash(A)}: "
                        f"sigma_min(A - lambda I) = {smin:.3e} at lambda = {lam:.6g}, "
                        f"limit {backward_tol * scale:.3e}")
    return Spectrum(eigenvalues=w, source=source,
                    N=A.shape[0] if N is None else N, spec_hash=spec_hash)


def operator_norm(op, n: int | None = None, tol: float = 1e-8,
                  restarts: int = 3, max_iter: int = 5000, seed: int = 0) -> float:
    """Largest singular value by power iteration on A* A.

    op is either a dense matrix or a (matvec, rmatvec) pair of callables
    on length-n vectors.  Restarted from several random vectors; the
    largest converged estimate wins.
    """
    if isinstance(op, np.ndarray):
        A = op.astype(complex, copy=False)
        Ah = A.conj().T
        matvec = lambda v: A @ v
        rmatvec = lambda v: Ah @ v
        n = A.shape[1]
    else:
        matvec, rmatvec = op
        if n is None:
            raise ValueError("n is required with callable input")

    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(restarts):
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        nv = np.linalg.norm(v)
        v /= nv
        sigma_prev = np.inf
        for _ in range(max_iter):
            w = rmatvec(matvec(v))
            nw = np.linalg.norm(w)
            if nw == 0.0:
                sigma_prev = 0.0
                break
            sigma = np.sqrt(nw)
            v = w / nw
            if abs(sigma - sigma_prev) <= tol * max(sigma, 1e-300):
                sigma_prev = sigma
                break
            sigma_prev = sigma
        best = max(best, float(sigma_prev if np.isfinite(sigma_prev) else 0.0))
    return best


def counting_function(spectrum, M: int, nu: float) -> CountingResult:
    """Count of eigenvalues with |lambda| >= M^(-nu), with multiplicity."""
    if nu < 0:
        raise ValueError("nu must be >= 0")
    mags = spectrum.magnitudes() if isinstance(spectrum, Spectrum) else np.abs(np.asarray(spectrum))
    threshold = float(M) ** (-nu)
    # nu = inf: threshold underflows to 0 and >= would count exact zeros
    count = int(np.sum(mags >= threshold)) if threshold > 0.0 else int(np.sum(mags > 0.0))
    boundary = int(np.sum(np.abs(mags - threshold) <= _BOUNDARY_TOL))
    return CountingResult(nu=float(nu), threshold=threshold, count=count, boundary=boundary)


def loglog_slope(points) -> tuple[float, float, float]:
    """Least-squares fit of log y against log x; returns (slope, intercept, r2).

    Natural logarithms; the slope is invariant under a common change of
    log base on both axes.
    """
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 2:
        raise ValueError("need at least two points")
    if any(x <= 0 or y <= 0 for x, y in pts):
        raise ValueError("coordinates must be positive")
    lx = np.log([x for x, _ in pts])
    ly = np.log([y for _, y in pts])
    if np.ptp(lx) == 0.0:
        raise ValueError("degenerate x-range")
    slope, intercept = np.polyfit(lx, ly, 1)
    fitted = slope * lx + intercept
    ss_res = float(np.sum((ly - fitted) ** 2))
    ss_tot = float(np.sum((ly - np.mean(ly)) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return float(slope), float(intercept), float(r2)


def inverse_iteration(A: np.ndarray, lam: complex, iters: int = 8):
    """Unit eigenvector for the eigenvalue nearest lam by inverse iteration.

    Returns (vector, residual) with residual = ||A v - lam v||.
    """
    n = A.shape[0]
    shifted = A - lam * np.eye(n)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        lu, piv = sla.lu_factor(shifted)
    if not np.all(np.isfinite(lu)) or np.abs(np.diag(lu)).min() == 0.0:
        # exactly singular shift: perturb by one ulp of the matrix scale
        eps = 1e-14 * max(1.0, float(np.abs(A).max()))
        lu, piv = sla.lu_factor(shifted + eps * np.eye(n))
    v = np.ones(n, dtype=complex) / np.sqrt(n)
    with np.errstate(all="ignore"):
        for _ in range(iters):
            w = sla.lu_solve((lu, piv), v, check_finite=False)
            nw = np.linalg.norm(w)
            if not np.isfinite(nw) or nw == 0.0:
                break
            v = w / nw
    residual = float(np.linalg.norm(A @ v - lam * v))
    return v, residual
