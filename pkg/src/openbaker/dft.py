"""Unitary discrete Fourier transform on Z_N and Fourier multipliers.

The transform pair used throughout the package is

    (F_N u)(j)  = N^{-1/2} sum_l exp(-2 pi i j l / N) u(l),
    (F_N^* u)(j) = N^{-1/2} sum_l exp(+2 pi i j l / N) u(l),

so that F_N is unitary and F_N^* F_N = I.  N = K * M is generally not a
power of two; numpy's pocketfft backend handles arbitrary composite and
prime lengths with an O(N log N) mixed-radix / Bluestein path, and the
test suite pins it against the O(N^2) kernel sum.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "dft",
    "idft",
    "dft_matrix",
    "discretize",
    "fourier_multiplier",
    "fourier_multiplier_apply",
    "circle_distance",
]


def _as_vector(u) -> np.ndarray:
    u = np.asarray(u)
    if u.ndim != 1 or u.size < 1:
        raise ValueError("expected a nonempty one-dimensional vector")
    return u.astype(complex, copy=False)


def dft(u) -> np.ndarray:
    """Unitary Fourier transform F_N u, kernel N^{-1/2} exp(-2 pi i jl/N)."""
    u = _as_vector(u)
    return np.fft.fft(u) / np.sqrt(u.size)


def idft(u) -> np.ndarray:
    """Adjoint transform F_N^* u; inverse of :func:`dft`."""
    u = _as_vector(u)
    return np.fft.ifft(u) * np.sqrt(u.size)


def dft_matrix(n: int) -> np.ndarray:
    """Dense unitary DFT matrix of size n, F[j, l] = n^{-1/2} e^{-2 pi i jl/n}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return np.fft.fft(np.eye(n), axis=0) / np.sqrt(n)


def discretize(f, n: int) -> np.ndarray:
    """Sample a function on [0, 1] at the grid j/n, j = 0..n-1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    grid = np.arange(n) / n
    try:
        values = np.asarray(f(grid), dtype=float)
        if values.shape != (n,):
            raise TypeError
    except TypeError:
        # fall back for scalar-only callables
        values = np.array([float(f(x)) for x in grid])
    return values


def fourier_multiplier(values) -> np.ndarray:
    """Dense Fourier multiplier F_N^* diag(values) F_N.

    Assembled with two FFT passes over the identity rather than an
    O(N^3) triple product: columns of diag(values) @ F_N are the scaled
    DFT basis vectors, and one inverse pass finishes the product.
    """
    values = np.asarray(values, dtype=complex)
    n = values.size
    right = np.fft.fft(np.eye(n), axis=0) / np.sqrt(n)
    return np.fft.ifft(values[:, None] * right, axis=0) * np.sqrt(n)


def fourier_multiplier_apply(values, u) -> np.ndarray:
    """Matrix-free evaluation of F_N^* diag(values) F_N applied to u."""
    u = _as_vector(u)
    values = np.asarray(values, dtype=complex)
    if values.shape != u.shape:
        raise ValueError("multiplier and vector lengths differ")
    return idft(values * dft(u))


def circle_distance(x, y):
    """Distance on the circle R/Z with 0 and 1 identified.

    Returns min(|x - y|, 1 - |x - y|), elementwise for array input.
    """
    d = np.abs(np.asarray(x, dtype=float) - np.asarray(y, dtype=float))
    out = np.minimum(d, 1.0 - d)
    if out.ndim == 0:
        return float(out)
    return out
