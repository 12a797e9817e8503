"""Construction of the quantum open baker's map B_N.

Block definition, at N = K * M with alphabet A inside {0, ..., M-1}:

    B_N = F_N^* blockdiag(delta_{a in A} chi_K F_K chi_K) I_{A,M}

where I_{A,M} is the diagonal projection keeping indices j with
floor(j/K) in A, and chi_K = diag(chi(m/K)).  Expanding the transforms
gives the equivalent kernel form

    (B_N u)(j) = (sqrt(M)/N) sum_{a in A} sum_{m,l=0}^{K-1}
                 exp[2 pi i ((j - M l) m / N + j a / M)]
                 chi(m/K) chi(l/K) u(l + aK),

implemented here without any FFT as a mutual correctness oracle.

Column j of B_N is identically zero whenever floor(j/K) is outside the
alphabet, so those rows and columns can be trimmed away without touching
the nonzero spectrum.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from math import log

import numpy as np

from .cutoff import CutoffFunction, make_cutoff
from .dft import discretize

__all__ = [
    "BakerSpec",
    "BakerOperator",
    "TrimmedOperator",
    "project",
    "assemble_dense",
    "build_dense",
    "apply_expanded",
    "apply_fast",
    "adjoint_apply",
    "trim",
    "kept_indices",
]


def _validate_alphabet(M: int, alphabet) -> tuple:
    alphabet = tuple(int(a) for a in alphabet)
    if len(alphabet) == 0:
        raise ValueError("alphabet must be nonempty")
    if list(alphabet) != sorted(set(alphabet)):
        raise ValueError("alphabet must be strictly increasing")
    if alphabet[0] < 0 or alphabet[-1] >= M:
        raise ValueError(f"alphabet must be a subset of 0..{M - 1}")
    return alphabet


@dataclass(frozen=True)
class BakerSpec:
    """The defining triple (M, alphabet, chi) together with K.

    N = K * M and delta = log|A| / log M are derived.  K = 1 is allowed
    but degenerate: chi(0) = 0 makes the single-point block vanish.
    """

    M: int
    alphabet: tuple
    chi: CutoffFunction
    K: int

    def __post_init__(self):
        if int(self.M) < 2:
            raise ValueError("base M must be >= 2")
        object.__setattr__(self, "M", int(self.M))
        object.__setattr__(self, "alphabet", _validate_alphabet(self.M, self.alphabet))
        if int(self.K) < 1:
            raise ValueError("K must be >= 1")
        object.__setattr__(self, "K", int(self.K))

    @property
    def N(self) -> int:
        return self.K * self.M

    @property
    def delta(self) -> float:
        return log(len(self.alphabet)) / log(self.M)

    def chi_values(self) -> np.ndarray:
        """chi discretized on the K-point grid m/K."""
        return discretize(self.chi, self.K)

    def to_config(self) -> dict:
        return {"M": self.M, "alphabet": list(self.alphabet),
                "tau": self.chi.tau, "K": self.K}

    @classmethod
    def from_config(cls, config: dict) -> "BakerSpec":
        return cls(M=config["M"], alphabet=tuple(config["alphabet"]),
                   chi=make_cutoff(config["tau"]), K=config["K"])

    def spec_hash(self) -> str:
        payload = json.dumps(self.to_config(), sort_keys=True).encode()
        return hashlib.sha256(payload).hexdigest()[:12]


@dataclass(frozen=True)
class BakerOperator:
    """Dense form of B_N together with its defining spec."""

    spec: BakerSpec
    dense: np.ndarray

    def apply(self, u) -> np.ndarray:
        return self.dense @ np.asarray(u, dtype=complex)


@dataclass(frozen=True)
class TrimmedOperator:
    """B_N restricted to indices with floor(j/K) in the alphabet."""

    spec: BakerSpec
    matrix: np.ndarray
    kept: np.ndarray = field(repr=False)


def project(a: int, u, K: int) -> np.ndarray:
    """Projection slice Pi_a u = u[aK : (a+1)K]."""
    u = np.asarray(u)
    if a < 0 or (a + 1) * K > u.size:
        raise IndexError(f"block {a} out of range for length {u.size}")
    return u[a * K:(a + 1) * K]


def _center_block(chi_values: np.ndarray) -> np.ndarray:
    """chi_K F_K chi_K, the a-independent block of the middle matrix."""
    cv = np.asarray(chi_values, dtype=float)
    K = cv.size
    FK = np.fft.fft(np.eye(K), axis=0) / np.sqrt(K)
    return cv[:, None] * FK * cv[None, :]


def assemble_dense(M: int, alphabet, chi_values) -> np.ndarray:
    """Dense B_N from raw grid values of the cutoff (kernel layer).

    Exposed separately so tests can probe degenerate cutoff stubs (for
    example the constant-1 grid, which makes every surviving block the
    unitary F_K).
    """
    alphabet = _validate_alphabet(M, alphabet)
    C = _center_block(chi_values)
    K = C.shape[0]
    N = K * M
    mid = np.zeros((N, N), dtype=complex)
    for a in alphabet:
        mid[a * K:(a + 1) * K, a * K:(a + 1) * K] = C
    # F_N^* applied columnwise finishes the product
    return np.fft.ifft(mid, axis=0) * np.sqrt(N)


def build_dense(spec: BakerSpec) -> BakerOperator:
    """Dense N x N operator for the given spec."""
    return BakerOperator(spec=spec, dense=assemble_dense(spec.M, spec.alphabet, spec.chi_values()))


def apply_expanded(spec: BakerSpec, u) -> np.ndarray:
    """Evaluate B_N u through the expanded kernel sum; O(N K) memory, no FFT.

    Correctness oracle for the transform-based paths: the m-sum and
    l-sum are carried out as explicit complex-exponential matrices.
    """
    u = np.asarray(u, dtype=complex)
    M, K, N = spec.M, spec.K, spec.N
    if u.shape != (N,):
        raise ValueError(f"expected length {N}, got {u.shape}")
    cv = spec.chi_values()
    j = np.arange(N)
    m = np.arange(K)
    l = np.arange(K)
    inner_kernel = np.exp(-2j * np.pi * np.outer(m, M * l) / N)   # sum over l
    outer_kernel = np.exp(2j * np.pi * np.outer(j, m) / N)        # sum over m
    out = np.zeros(N, dtype=complex)
    for a in spec.alphabet:
        ua = u[a * K:(a + 1) * K]
        inner = inner_kernel @ (cv * ua)
        out += np.exp(2j * np.pi * j * a / M) * (outer_kernel @ (cv * inner))
    return np.sqrt(M) / N * out


def apply_fast(spec: BakerSpec, u, chi_values: np.ndarray | None = None) -> np.ndarray:
    """Matrix-free B_N u via fast transforms; O(N log N)."""
    u = np.asarray(u, dtype=complex)
    M, K, N = spec.M, spec.K, spec.N
    if u.shape != (N,):
        raise ValueError(f"expected length {N}, got {u.shape}")
    cv = spec.chi_values() if chi_values is None else chi_values
    mid = np.zeros(N, dtype=complex)
    for a in spec.alphabet:
        block = u[a * K:(a + 1) * K]
        mid[a * K:(a + 1) * K] = cv * (np.fft.fft(cv * block) / np.sqrt(K))
    return np.fft.ifft(mid) * np.sqrt(N)


def adjoint_apply(spec: BakerSpec, u, chi_values: np.ndarray | None = None) -> np.ndarray:
    """Matrix-free B_N^* u.

    From B_N = F_N^* D I_{A,M} with D the block diagonal of chi F_K chi,
    the adjoint is B_N^* = I_{A,M} D^* F_N, with D^* built from
    chi F_K^* chi blockwise.
    """
    u = np.asarray(u, dtype=complex)
    M, K, N = spec.M, spec.K, spec.N
    if u.shape != (N,):
        raise ValueError(f"expected length {N}, got {u.shape}")
    cv = spec.chi_values() if chi_values is None else chi_values
    t = np.fft.fft(u) / np.sqrt(N)
    out = np.zeros(N, dtype=complex)
    for a in spec.alphabet:
        block = t[a * K:(a + 1) * K]
        out[a * K:(a + 1) * K] = cv * (np.fft.ifft(cv * block) * np.sqrt(K))
    return out


def kept_indices(spec: BakerSpec) -> np.ndarray:
    """Indices j with floor(j/K) in the alphabet, in increasing order."""
    blocks = np.arange(spec.N) // spec.K
    return np.flatnonzero(np.isin(blocks, spec.alphabet))


def trim(op: BakerOperator) -> TrimmedOperator:
    """Remove the structurally zero rows and columns of B_N.

    The result is (K |A|) square and has the same nonzero spectrum as
    the full operator.
    """
    kept = kept_indices(op.spec)
    return TrimmedOperator(spec=op.spec, matrix=op.dense[np.ix_(kept, kept)], kept=kept)
