"""Smooth compactly supported cutoffs with tightness tau and decay envelopes.

The cutoff is built from the antiderivative of the classical bump
exp(-1/(t(1-t))) on (0, 1):

    f(x) = (1/c0) * integral_{-inf}^{1.02 x - 0.01} exp(-1/(t(1-t))) 1_(0,1)(t) dt,
    c0   = integral_0^1 exp(-1/(t(1-t))) dt,

so f = 0 for x <= 0.01/1.02 and f = 1 for x >= 1.01/1.02.  Dividing by
c0 is what makes the upper plateau equal to 1; the raw antiderivative
converges to c0 instead.  Given a tightness parameter tau in (0, 1/2],

    chi(x) = f(x / tau) * f((1 - x) / tau)

is identically 1 on [tau, 1 - tau], supported inside (0, 1), and
2-Gevrey, so its Fourier transform obeys |chi^(xi)| <= C exp(-c |xi|^(1/2)).

Evaluation uses a cached monotone cubic interpolant of f on a fine grid;
:func:`bump_antiderivative` is the direct-quadrature oracle the cache is
tested against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import PchipInterpolator

__all__ = [
    "CutoffFunction",
    "DecayEnvelope",
    "bump_antiderivative",
    "bump_normalization",
    "make_cutoff",
    "support_distance_to_zero",
    "estimate_decay_envelope",
]

# reparametrization of the integration endpoint: u = SLOPE * x - SHIFT
_SLOPE = 1.02
_SHIFT = 0.01

_CACHE_POINTS = 100_001


def _bump(t: float) -> float:
    if t <= 0.0 or t >= 1.0:
        return 0.0
    return float(np.exp(-1.0 / (t * (1.0 - t))))


@lru_cache(maxsize=1)
def bump_normalization() -> float:
    """c0 = integral_0^1 exp(-1/(t(1-t))) dt by adaptive quadrature."""
    value, _ = quad(_bump, 0.0, 1.0, epsabs=1e-14, epsrel=1e-12, limit=200)
    return value


def bump_antiderivative(x: float) -> float:
    """Normalized bump antiderivative f(x); direct quadrature, no cache.

    Monotone nondecreasing from 0 to 1, with f(x) = 0 for
    x <= 0.01/1.02 and f(x) = 1 for x >= 1.01/1.02.
    """
    u = _SLOPE * float(x) - _SHIFT
    if u <= 0.0:
        return 0.0
    if u >= 1.0:
        return 1.0
    value, _ = quad(_bump, 0.0, u, epsabs=1e-14, epsrel=1e-12, limit=200)
    return value / bump_normalization()


@lru_cache(maxsize=1)
def _cached_antiderivative() -> PchipInterpolator:
    """Monotone cubic interpolant of the cumulative bump integral on [0, 1].

    Cumulative composite Simpson over an odd-length grid: even nodes get
    full Simpson pairs, odd nodes add the half-panel integral of the
    local quadratic, h/12 * (5 g_0 + 8 g_1 - g_2).
    """
    ts = np.linspace(0.0, 1.0, _CACHE_POINTS)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        g = np.where((ts > 0) & (ts < 1),
                     np.exp(-1.0 / np.clip(ts * (1.0 - ts), 1e-300, None)), 0.0)
    h = ts[1] - ts[0]
    cum_even = np.concatenate([[0.0], np.cumsum(h / 3.0 * (g[:-2:2] + 4.0 * g[1:-1:2] + g[2::2]))])
    half = h / 12.0 * (5.0 * g[:-2:2] + 8.0 * g[1:-1:2] - g[2::2])
    cum = np.zeros_like(ts)
    cum[0::2] = cum_even
    cum[1::2] = cum_even[:-1] + half
    total = cum[-1]
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        interp = PchipInterpolator(ts, np.clip(cum / total, 0.0, 1.0))
    return interp


def _f_fast(x: np.ndarray) -> np.ndarray:
    u = np.clip(_SLOPE * np.asarray(x, dtype=float) - _SHIFT, 0.0, 1.0)
    return np.clip(_cached_antiderivative()(u), 0.0, 1.0)


@dataclass(frozen=True)
class CutoffFunction:
    """Evaluable cutoff chi: [0, 1] -> [0, 1] with support inside (0, 1).

    Attributes
    ----------
    tau : float
        Tightness parameter in (0, 1/2]; chi is 1 on [tau, 1 - tau].
    normalization_c0 : float
        Value of the bump integral c0 used to normalize f.
    gevrey_order_s : float
        Nominal Gevrey order of the construction (2 for this bump).
    """

    tau: float
    normalization_c0: float
    gevrey_order_s: float = 2.0

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        values = _f_fast(x / self.tau) * _f_fast((1.0 - x) / self.tau)
        if values.ndim == 0:
            return float(values)
        return values

    def exact(self, x: float) -> float:
        """Quadrature-oracle evaluation, bypassing the interpolation cache."""
        return bump_antiderivative(x / self.tau) * bump_antiderivative((1.0 - x) / self.tau)


def make_cutoff(tau: float, gevrey_order_s: float = 2.0) -> CutoffFunction:
    """Construct chi(x) = f(x/tau) * f((1-x)/tau) for tau in (0, 1/2]."""
    if not 0.0 < tau <= 0.5:
        raise ValueError(f"tau must lie in (0, 1/2], got {tau}")
    return CutoffFunction(tau=float(tau), normalization_c0=bump_normalization(),
                          gevrey_order_s=float(gevrey_order_s))


def support_distance_to_zero(chi: CutoffFunction) -> float:
    """Distance from supp chi to 0, i.e. where f(x/tau) leaves zero.

    The edge is known in closed form from the construction: f vanishes
    for arguments <= 0.01/1.02, so supp chi starts at tau * 0.01/1.02.
    """
    return chi.tau * _SHIFT / _SLOPE


@dataclass(frozen=True)
class DecayEnvelope:
    """Fitted majorant for |chi^(xi)|.

    kind "gevrey" stores (C, c, s) for C * exp(-c * xi^(1/s)); kind
    "smooth-rapid" stores a sequence C_n for min_n C_n * xi^(-n).  The
    xi samples the fit was computed from are kept for dominance
    re-checks.
    """

    kind: str
    C: float = 0.0
    c: float = 0.0
    s: float = 2.0
    coefficients: tuple = ()
    samples_xi: np.ndarray = field(default_factory=lambda: np.zeros(0))
    samples_abs: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "gevrey":
            out = self.C * np.exp(-self.c * np.maximum(x, 0.0) ** (1.0 / self.s))
        else:
            if not self.coefficients:
                out = np.zeros_like(x)
            else:
                with np.errstate(divide="ignore", over="ignore"):
                    stack = [cn * x ** (-float(n)) for n, cn in enumerate(self.coefficients, start=1)]
                out = np.min(np.stack(stack), axis=0)
        if out.ndim == 0:
            return float(out)
        return out


def _fourier_transform_abs(chi, xi: float) -> float:
    """|chi^(xi)| with chi^(xi) = integral_0^1 exp(-2 pi i x xi) chi(x) dx."""
    w = 2.0 * np.pi * xi
    re, _ = quad(chi, 0.0, 1.0, weight="cos", wvar=w, limit=400)
    im, _ = quad(chi, 0.0, 1.0, weight="sin", wvar=w, limit=400)
    return float(np.hypot(re, im))


def estimate_decay_envelope(chi, kind: str = "gevrey", s: float | None = None,
                            xi_max: float = 1e3, num_samples: int = 48,
                            noise_floor: float = 1e-10) -> DecayEnvelope:
    """Fit a decay envelope to quadrature samples of |chi^|.

    Samples xi on a log grid in [1, xi_max], stopping once |chi^| falls
    below the quadrature noise floor (values there measure quadrature
    error, not the transform, and are excluded).  For kind "gevrey" the
    fit is least squares of log|chi^| against xi^(1/s), with C inflated
    so the envelope dominates every recorded sample.  For kind
    "smooth-rapid", C_n = max |chi^| * xi^n over the samples.

    Raises RuntimeError if the samples cannot be dominated by a decaying
    envelope of the requested kind.
    """
    if kind not in ("gevrey", "smooth-rapid"):
        raise ValueError(f"unknown envelope kind {kind!r}")
    if s is None:
        s = getattr(chi, "gevrey_order_s", 2.0)

    xis, mags = [], []
    below = 0
    for xi in np.geomspace(1.0, xi_max, num_samples):
        mag = _fourier_transform_abs(chi, float(xi))
        if mag < noise_floor:
            below += 1
            if below >= 2:
                break
            continue
        below = 0
        xis.append(float(xi))
        mags.append(mag)
    xis = np.array(xis)
    mags = np.array(mags)

    if xis.size == 0:
        # degenerate cutoff (e.g. the zero stub): anything dominates
        return DecayEnvelope(kind=kind, C=0.0, c=0.0, s=float(s),
                             samples_xi=xis, samples_abs=mags)

    if kind == "smooth-rapid":
        coeffs = tuple(float(np.max(mags * xis ** n)) for n in range(1, 11))
        return DecayEnvelope(kind=kind, coefficients=coeffs, s=float(s),
                             samples_xi=xis, samples_abs=mags)

    if xis.size < 3:
        raise RuntimeError("too few clean samples to fit a Gevrey envelope")
    t = xis ** (1.0 / s)
    slope, intercept = np.polyfit(t, np.log(mags), 1)
    c = -slope
    if c <= 0:
        raise RuntimeError(f"samples are non-dominatable: fitted decay rate c = {-c:.3g} <= 0")
    C = float(np.max(mags * np.exp(c * t)))
    return DecayEnvelope(kind="gevrey", C=C, c=float(c), s=float(s),
                         samples_xi=xis, samples_abs=mags)
