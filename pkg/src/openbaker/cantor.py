"""Cantor-set machinery: expanding map, fattened sets, localizers, schedules.

The expanding map sends x to Mx - a on each alphabet strip
(a/M, (a+1)/M).  Its j-fold preimage of [0, 1] is a union of |A|^j
intervals of length M^(-j); fattening by a width a_j and reducing mod 1
produces the sets

    X_j = Phi^(-j)([0, 1]) + [-a_j, a_j]  (mod 1)

whose discretized indicators drive the Fourier localizers A_j.  Widths
derive from a gap schedule {d_j} through

    a_j = (1/N) sum_{k <= j} d_k M^(k - j),        a_0 = 0,

equivalently d_j = N (a_j - a_{j-1}/M).  Two schedule families are
provided: the geometric "smooth" family d_{l-j} = L M^j / 1.5^j and the
power-law "gevrey" family d_{l-j} = (((nu log M + mu)/c)(j+1))^s.

Sets on the circle are stored as disjoint arcs (lo, hi) with lo in
[0, 1) and lo < hi <= lo + 1, so an arc with hi > 1 wraps through 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import ceil, floor, log

import numpy as np

from .cutoff import CutoffFunction, support_distance_to_zero
from .dft import fourier_multiplier

__all__ = [
    "ExpandingMap",
    "FattenedCantorSet",
    "GapSchedule",
    "preimage_intervals",
    "preimage_of_arcs",
    "fatten",
    "grid_membership",
    "localizer",
    "localizer_rank_bound",
    "smooth_schedule",
    "gevrey_schedule",
]

_MAX_INTERVALS = 10 ** 7
_GRID_SLACK = 1e-12


@dataclass(frozen=True)
class ExpandingMap:
    """x -> Mx - a on the strip (a/M, (a+1)/M), for a in the alphabet."""

    M: int
    alphabet: tuple

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(int(a) for a in self.alphabet))

    @property
    def delta(self) -> float:
        return log(len(self.alphabet)) / log(self.M)


@dataclass(frozen=True)
class FattenedCantorSet:
    """Level-j preimage of [0, 1] fattened by width a_j, as circle arcs."""

    level: int
    width: float
    arcs: tuple

    @property
    def measure(self) -> float:
        return sum(hi - lo for lo, hi in self.arcs)

    @property
    def is_full_circle(self) -> bool:
        return len(self.arcs) == 1 and self.arcs[0] == (0.0, 1.0)


def preimage_intervals(emap: ExpandingMap, j: int):
    """Phi^(-j)([0, 1]): |A|^j closed intervals of length M^(-j).

    Left endpoints run over sum_i a_i M^(-i) for words (a_1..a_j) in A^j.
    """
    if j < 0:
        raise ValueError("level must be >= 0")
    if len(emap.alphabet) ** j > _MAX_INTERVALS:
        raise ValueError(f"|A|^{j} intervals exceed the {_MAX_INTERVALS} guard")
    width = float(emap.M) ** (-j)
    lefts = sorted(
        sum(a * float(emap.M) ** (-(i + 1)) for i, a in enumerate(word))
        for word in itertools.product(emap.alphabet, repeat=j)
    )
    return [(lo, lo + width) for lo in lefts]


def _normalize_arc(lo: float, hi: float):
    shift = floor(lo)
    return lo - shift, hi - shift


def fatten(intervals, width: float, level: int | None = None) -> FattenedCantorSet:
    """Dilate intervals by [-width, width], merge overlaps, wrap mod 1."""
    if width < 0:
        raise ValueError("width must be >= 0")
    level = 0 if level is None else level
    dilated = sorted(_normalize_arc(lo - width, hi + width) for lo, hi in intervals)
    if not dilated:
        if width >= 0.5:
            return FattenedCantorSet(level=level, width=width, arcs=((0.0, 1.0),))
        return FattenedCantorSet(level=level, width=width, arcs=())
    total = sum(hi - lo for lo, hi in dilated)
    if width >= 0.5 or total >= 1.0:
        return FattenedCantorSet(level=level, width=width, arcs=((0.0, 1.0),))

    merged = []
    for lo, hi in dilated:
        if merged and lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    # wrap merge: the last arc may reach past 1 into the leading arcs
    while len(merged) > 1 and merged[-1][1] - 1.0 >= merged[0][0]:
        merged[-1][1] = max(merged[-1][1], merged[0][1] + 1.0)
        merged.pop(0)
    if len(merged) == 1 and merged[0][1] - merged[0][0] >= 1.0:
        return FattenedCantorSet(level=level, width=width, arcs=((0.0, 1.0),))
    return FattenedCantorSet(level=level, width=width,
                             arcs=tuple((lo, hi) for lo, hi in merged))


def preimage_of_arcs(emap: ExpandingMap, arcs):
    """Phi^(-1) of a union of arcs: each arc maps to (arc + a)/M per letter.

    Arcs reaching past 1 are split at the wrap point first; each branch
    map is a bijection of its strip onto (0, 1), so preimages of pieces
    outside [0, 1] would otherwise leak across strip boundaries.
    """
    pieces = []
    for lo, hi in arcs:
        lo, hi = _normalize_arc(lo, hi)
        if hi > 1.0:
            pieces.append((lo, 1.0))
            pieces.append((0.0, hi - 1.0))
        else:
            pieces.append((lo, hi))
    out = []
    for a in emap.alphabet:
        for lo, hi in pieces:
            out.append(((lo + a) / emap.M, (hi + a) / emap.M))
    return sorted(out)


def grid_membership(arcs, n: int) -> np.ndarray:
    """Boolean mask: which grid points j/n lie in the closed arc union.

    Boundary points count as inside, with 1e-12 slack to absorb float
    rounding of interval endpoints.
    """
    x = np.arange(n) / n
    mask = np.zeros(n, dtype=bool)
    for lo, hi in arcs:
        length = hi - lo
        d = np.mod(x - lo, 1.0)
        mask |= (d <= length + _GRID_SLACK) | (d >= 1.0 - _GRID_SLACK)
    return mask


def localizer(fset: FattenedCantorSet, n: int) -> np.ndarray:
    """Fourier multiplier by the discretized indicator of the set.

    An orthogonal projection of rank equal to the number of grid points
    inside the set.
    """
    values = grid_membership(fset.arcs, n).astype(float)
    return fourier_multiplier(values)


def localizer_rank_bound(schedule: "GapSchedule", delta: float) -> float:
    """Rank bound 2 M^(l delta) [N/M^l + 2 sum_k d_k M^(k - l)]."""
    ell, M, N = schedule.ell, schedule.M, schedule.N
    ks = np.arange(1, ell + 1)
    return 2.0 * float(M) ** (ell * delta) * (
        N * float(M) ** (-ell) + 2.0 * float(np.sum(schedule.d * float(M) ** (ks - ell)))
    )


@dataclass(frozen=True)
class GapSchedule:
    """Gap distances d_1..d_l with derived widths a_0..a_l.

    valid reports the one-step applicability condition
    d_j / N <= (2/M) d(supp chi, 0) for all j; the approximate-inverse
    identity itself is algebraic and holds regardless.
    """

    N: int
    M: int
    ell: int
    d: np.ndarray
    a: np.ndarray
    kind: str
    params: dict
    valid: bool

    def fattened_width(self, j: int) -> float:
        return float(self.a[j])


def _build_schedule(N: int, M: int, d: np.ndarray, kind: str, params: dict,
                    chi: CutoffFunction | None) -> GapSchedule:
    ell = d.size
    if ell < 1:
        raise ValueError("schedule needs propagation time >= 1")
    if np.any(d <= 0):
        raise ValueError("gap distances must be positive")
    a = np.zeros(ell + 1)
    for j in range(1, ell + 1):
        ks = np.arange(1, j + 1)
        a[j] = np.sum(d[:j] * float(M) ** (ks - j)) / N
    # a_j > a_{j-1}/M is positivity of d_j, already enforced above
    valid = True
    if chi is not None:
        valid = bool(np.max(d) / N <= (2.0 / M) * support_distance_to_zero(chi))
    return GapSchedule(N=N, M=M, ell=ell, d=d, a=a, kind=kind, params=params, valid=valid)


def smooth_schedule(N: int, M: int, nu: float, chi: CutoffFunction,
                    L: float = 1.0) -> GapSchedule:
    """Geometric schedule d_{l-j} = L M^j / 1.5^j with l = floor(log N / log M).

    n is the smallest integer with 1.5^n / M^(n - nu) < 1/2, recorded in
    params; it controls which polynomial decay order makes the remainder
    sum geometric and does not enter the distances themselves.
    """
    if nu <= 0:
        raise ValueError("nu must be positive")
    ell = int(floor(log(N) / log(M) + 1e-9))
    js = np.arange(ell)                      # j = 0 is the innermost gap d_l
    d = np.empty(ell)
    d[::-1] = L * (float(M) / 1.5) ** js     # d_l = L, growing toward d_1
    n = int(floor((nu * log(M) + log(2.0)) / (log(M) - log(1.5)))) + 1
    params = {"L": float(L), "n": n, "nu": float(nu)}
    return _build_schedule(N, M, d, "smooth", params, chi)


def gevrey_schedule(N: int, M: int, nu: float, s: float, mu: float, c: float,
                    chi: CutoffFunction | None = None) -> GapSchedule:
    """Power-law schedule d_{l-j} = (((nu log M + mu)/c)(j+1))^s.

    Propagation time l = ceil(log(N / nu^s) / log M), requiring
    N >= nu^s >= 1.
    """
    if not (1.0 <= nu ** s <= N):
        raise ValueError(f"need N >= nu^s >= 1, got nu^s = {nu ** s:.3g}, N = {N}")
    if c <= 0 or mu <= 0:
        raise ValueError("mu and c must be positive")
    ell = int(ceil(log(N / nu ** s) / log(M) - 1e-9))
    if ell < 1:
        raise ValueError("propagation time is zero for these parameters")
    js = np.arange(ell)
    base = (nu * log(M) + mu) / c
    d = np.empty(ell)
    d[::-1] = (base * (js + 1.0)) ** s       # max at d_1
    params = {"nu": float(nu), "s": float(s), "mu": float(mu), "c": float(c)}
    return _build_schedule(N, M, d, "gevrey", params, chi)
