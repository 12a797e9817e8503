"""Propagation estimates and the approximate-inverse identity.

For a gap schedule d_1..d_ell with widths a_j and localizers
A_j = Op(1_{X_j}) (Fourier multipliers of fattened preimage sets,
A_0 = I), the assembly produces Z, R with

    I = Z (B - lambda) + R + A_ell        exactly, up to roundoff,

where R = sum_j lambda^(-j-1) T_j and T_j is the interleaved product

    T_j = (1-A_ell) B (1-A_{ell-1}) B ... (1-A_{ell-j}) B A_{ell-j-1}.

The correction term E_ell entering Z uses the partial geometric sums
S_m = sum_{k<m} lambda^(m-1-k) B^k.  Powers of B are never formed
explicitly; every B^k appears through repeated application.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .baker import BakerSpec, adjoint_apply, apply_fast, build_dense
from .cantor import (ExpandingMap, GapSchedule, fatten, grid_membership,
                     localizer, preimage_intervals, smooth_schedule)
from .cutoff import CutoffFunction, DecayEnvelope
from .dft import dft, discretize, idft
from .spectral import operator_norm

__all__ = [
    "IdentityParts",
    "nonstationary_sum",
    "one_step_norm",
    "assemble_identity",
    "identity_residual",
    "remainder_norm_check",
    "modified_identity",
    "localization_norms",
    "choose_smooth_L",
    "propagate_random",
    "mass_fraction",
]


@dataclass(frozen=True)
class IdentityParts:
    """Pieces of the approximate inverse I = Z(B - lambda) + R + A."""

    Z: np.ndarray
    R: np.ndarray
    A: np.ndarray
    lam: complex
    schedule: GapSchedule
    B: np.ndarray
    localizers: tuple        # A_0 .. A_ell
    term_norms: tuple        # ||T_j|| for j = 0..ell-1

    @property
    def N(self) -> int:
        return self.B.shape[0]


def nonstationary_sum(chi: CutoffFunction, N: int, a: int) -> complex:
    """sum_{m<N} exp(2 pi i a m / N) chi(m/N)."""
    if not 0 <= a < N:
        raise ValueError("need 0 <= a < N")
    m = np.arange(N)
    return complex(np.sum(np.exp(2j * np.pi * a * m / N) * chi(m / N)))


def _grid_values(f, n: int) -> np.ndarray:
    if callable(f):
        return np.asarray(discretize(f, n), dtype=complex)
    vals = np.asarray(f, dtype=complex)
    if vals.shape != (n,):
        raise ValueError(f"grid function must have length {n}")
    return vals


def one_step_norm(spec: BakerSpec, phi, psi, side: str = "position",
                  tol: float = 1e-10) -> float:
    """||phi_N B_N psi_N|| (position cutoffs) or the Fourier-side analogue.

    phi, psi are grid functions on j/N, given as callables or length-N
    arrays, valued in [0, 1].  side="fourier" computes
    ||Op(psi) B_N Op(phi)|| with Op the Fourier multiplier.
    """
    n = spec.N
    phi_v = _grid_values(phi, n)
    psi_v = _grid_values(psi, n)
    chi_vals = spec.chi_values()

    if side == "position":
        def matvec(v):
            return phi_v * apply_fast(spec, psi_v * v, chi_vals)

        def rmatvec(v):
            return np.conj(psi_v) * adjoint_apply(spec, np.conj(phi_v) * v, chi_vals)
    elif side == "fourier":
        def matvec(v):
            w = idft(phi_v * dft(v))
            w = apply_fast(spec, w, chi_vals)
            return idft(psi_v * dft(w))

        def rmatvec(v):
            w = idft(np.conj(psi_v) * dft(v))
            w = adjoint_apply(spec, w, chi_vals)
            return idft(np.conj(phi_v) * dft(w))
    else:
        raise ValueError("side must be 'position' or 'fourier'")
    return operator_norm((matvec, rmatvec), n=n, tol=tol)


def _schedule_localizers(spec: BakerSpec, schedule: GapSchedule) -> list:
    emap = ExpandingMap(M=spec.M, alphabet=spec.alphabet)
    out = []
    for j in range(schedule.ell + 1):
        intervals = preimage_intervals(emap, j)
        fset = fatten(intervals, schedule.fattened_width(j), level=j)
        out.append(localizer(fset, spec.N))
    return out


def assemble_identity(spec: BakerSpec, schedule: GapSchedule, lam: complex,
                      B: np.ndarray | None = None) -> IdentityParts:
    """Build (Z, R, A_ell) for the approximate inverse at lambda."""
    lam = complex(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    if schedule.N != spec.N:
        raise ValueError("schedule grid size does not match spec")
    ell = schedule.ell
    if ell < 1:
        raise ValueError("schedule must have at least one step")
    if spec.M ** ell > spec.N:
        raise ValueError("propagation time exceeds log N / log M")

    if B is None:
        B = build_dense(spec).dense
    n = spec.N
    eye = np.eye(n, dtype=complex)
    A = _schedule_localizers(spec, schedule)

    # T_j by left-to-right accumulation: Q <- Q (1 - A_{ell-j}) B
    T = []
    Q = (eye - A[ell]) @ B
    T.append(Q @ A[ell - 1])
    for j in range(1, ell):
        Q = Q @ ((eye - A[ell - j]) @ B)
        T.append(Q @ A[ell - j - 1])

    R = np.zeros((n, n), dtype=complex)
    for j in range(ell):
        R += lam ** (-j - 1) * T[j]

    # S_m = sum_{k<m} lambda^(m-1-k) B^k via S_{m+1} = B S_m + lambda^m I
    S = [np.zeros((n, n), dtype=complex)]
    for m in range(ell - 1):
        S.append(B @ S[m] + lam ** m * eye)
    E = np.zeros((n, n), dtype=complex)
    for j in range(ell):
        E += T[j] @ S[ell - j - 1]

    # W = sum_{k<ell} lambda^(-1-k) B^k via W <- lambda^(-1) (I + B W)
    W = np.zeros((n, n), dtype=complex)
    for _ in range(ell):
        W = (eye + B @ W) / lam
    Z = -(eye - A[ell]) @ W + lam ** (-ell) * E

    term_norms = tuple(float(np.linalg.norm(t, 2)) for t in T)
    return IdentityParts(Z=Z, R=R, A=A[ell], lam=lam, schedule=schedule,
                         B=B, localizers=tuple(A), term_norms=term_norms)


def identity_residual(parts: IdentityParts) -> float:
    """Relative operator-norm residual of I = Z(B - lambda) + R + A."""
    n = parts.N
    eye = np.eye(n, dtype=complex)
    lhs = parts.Z @ (parts.B - parts.lam * eye) + parts.R + parts.A
    return float(np.linalg.norm(lhs - eye, 2))


def modified_identity(parts: IdentityParts) -> dict:
    """Residual of I = (Z - A/lambda)(B - lambda) + R + A B / lambda."""
    n = parts.N
    eye = np.eye(n, dtype=complex)
    lam = parts.lam
    lhs = (parts.Z - parts.A / lam) @ (parts.B - lam * eye) \
        + parts.R + (parts.A @ parts.B) / lam
    residual = float(np.linalg.norm(lhs - eye, 2))
    rank_a = int(round(np.trace(parts.A).real))
    return {
        "residual": residual,
        "passed": residual <= 1e-8,
        "rank_A": rank_a,
        "lambda": lam,
    }


def remainder_norm_check(parts: IdentityParts, envelope: DecayEnvelope | None = None) -> dict:
    """Measured ||R|| against the 1/2 target and the envelope bound.

    Also evaluates the resolvent tail ||lambda^-1 A B (I - R)^-1||
    whenever ||R|| < 1 (the smallness check used at lambda = 4).
    """
    if parts.schedule.ell < 1:
        raise ValueError("empty schedule")
    measured = float(np.linalg.norm(parts.R, 2))
    lam_abs = abs(parts.lam)
    d = parts.schedule.d
    ell = parts.schedule.ell
    bound = None
    if envelope is not None:
        bound = float(sum(lam_abs ** (-j - 1) * envelope.evaluate(d[ell - j - 1])
                          for j in range(ell)))
    tail = None
    if measured < 1.0:
        n = parts.N
        core = np.linalg.solve(np.eye(n, dtype=complex) - parts.R,
                               np.eye(n, dtype=complex))
        tail = float(np.linalg.norm((parts.A @ parts.B) @ core, 2)) / lam_abs
    return {
        "lambda": parts.lam,
        "ell": ell,
        "measured_norm": measured,
        "half_pass": measured <= 0.5,
        "envelope_bound": bound,
        "envelope_pass": None if bound is None else measured <= bound,
        "schedule_valid": parts.schedule.valid,
        "tail_norm": tail,
        "tail_pass": None if tail is None else tail <= 0.5,
    }


def localization_norms(parts: IdentityParts) -> list:
    """||(1 - A_j) B A_{j-1}|| for j = 1..ell (one-step localization)."""
    n = parts.N
    eye = np.eye(n, dtype=complex)
    out = []
    for j in range(1, parts.schedule.ell + 1):
        mat = (eye - parts.localizers[j]) @ parts.B @ parts.localizers[j - 1]
        out.append(float(np.linalg.norm(mat, 2)))
    return out


def choose_smooth_L(spec: BakerSpec, nu: float, chi: CutoffFunction | None = None,
                    max_doublings: int = 12) -> tuple[float, GapSchedule, float]:
    """Smallest L = 2^k making sup_lambda ||R(lambda)|| <= 1/2 on |lambda| >= M^-nu.

    The supremum over the annulus is controlled by
    sum_j M^(nu(j+1)) ||T_j||, which is argument-independent.  Returns
    (L, schedule, sup_bound).  The minimal L has no usable closed form,
    so L is found by doubling.
    """
    chi = spec.chi if chi is None else chi
    L = 1.0
    last_err = None
    for _ in range(max_doublings + 1):
        try:
            schedule = smooth_schedule(spec.N, spec.M, nu, chi, L=L)
        except ValueError as exc:
            last_err = exc
            break
        parts = assemble_identity(spec, schedule, lam=float(spec.M) ** (-nu))
        sup_bound = float(sum(float(spec.M) ** (nu * (j + 1)) * t
                              for j, t in enumerate(parts.term_norms)))
        if sup_bound <= 0.5:
            return L, schedule, sup_bound
        L *= 2.0
    raise RuntimeError(f"no L <= {L} achieves remainder 1/2 at nu={nu}"
                       + (f" ({last_err})" if last_err else ""))


def propagate_random(spec: BakerSpec, steps: int, direction: str = "forward",
                     seed: int = 0) -> list:
    """Iterates of a random unit vector under B_N or B_N*.

    forward: returns F_N B_N^k f for k = 1..steps (Fourier side);
    backward: returns (B_N*)^k f (spatial side).
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    rng = np.random.default_rng(seed)
    f = rng.standard_normal(spec.N) + 1j * rng.standard_normal(spec.N)
    f /= np.linalg.norm(f)
    chi_vals = spec.chi_values()
    out = []
    v = f
    for _ in range(steps):
        if direction == "forward":
            v = apply_fast(spec, v, chi_vals)
            out.append(dft(v))
        elif direction == "backward":
            v = adjoint_apply(spec, v, chi_vals)
            out.append(v.copy())
        else:
            raise ValueError("direction must be 'forward' or 'backward'")
    return out


def mass_fraction(spec: BakerSpec, vector: np.ndarray, level: int,
                  width: float | None = None) -> float:
    """Fraction of l2 mass on grid points near Phi^-level([0,1]).

    Grid points within distance `width` (default M^-level) of the
    level-`level` preimage intervals count as inside.
    """
    emap = ExpandingMap(M=spec.M, alphabet=spec.alphabet)
    intervals = preimage_intervals(emap, level)
    w = float(spec.M) ** (-level) if width is None else width
    fset = fatten(intervals, w, level=level)
    mask = grid_membership(fset.arcs, spec.N)
    v = np.asarray(vector)
    total = float(np.vdot(v, v).real)
    if total == 0.0:
        return 0.0
    return float(np.vdot(v[mask], v[mask]).real / total)
