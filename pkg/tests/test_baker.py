import numpy as np
import pytest

from openbaker.baker import (
    BakerSpec,
    adjoint_apply,
    apply_expanded,
    apply_fast,
    assemble_dense,
    build_dense,
    kept_indices,
    project,
    trim,
)
from openbaker.cutoff import make_cutoff
from openbaker.spectral import eigenvalues, operator_norm


def kernel_sum_oracle(spec, u):
    """Literal double-sum kernel, recoded here with explicit loops."""
    M, K, N = spec.M, spec.K, spec.N
    chi = spec.chi_values()
    u = np.asarray(u, dtype=complex)
    out = np.zeros(N, dtype=complex)
    for j in range(N):
        acc = 0.0 + 0.0j
        for a in spec.alphabet:
            for m in range(K):
                for l in range(K):
                    phase = (j - M * l) * m / N + j * a / M
                    acc += (np.exp(2j * np.pi * phase)
                            * chi[m] * chi[l] * u[l + a * K])
        out[j] = acc * np.sqrt(M) / N
    return out


SMALL_SPECS = [
    BakerSpec(M=3, alphabet=(0, 2), chi=make_cutoff(0.1), K=6),
    BakerSpec(M=4, alphabet=(1, 2), chi=make_cutoff(0.1), K=4),
    BakerSpec(M=5, alphabet=(1, 2, 3), chi=make_cutoff(0.05), K=5),
    BakerSpec(M=2, alphabet=(0, 1), chi=make_cutoff(0.25), K=7),
]


@pytest.mark.parametrize("spec", SMALL_SPECS, ids=lambda s: f"M{s.M}K{s.K}")
def test_dense_matches_kernel_sum(spec):
    rng = np.random.default_rng(7)
    u = rng.standard_normal(spec.N) + 1j * rng.standard_normal(spec.N)
    oracle = kernel_sum_oracle(spec, u)
    np.testing.assert_allclose(build_dense(spec).apply(u), oracle, atol=1e-10)


@pytest.mark.parametrize("spec", SMALL_SPECS, ids=lambda s: f"M{s.M}K{s.K}")
def test_expanded_kernel_route(spec):
    rng = np.random.default_rng(8)
    u = rng.standard_normal(spec.N) + 1j * rng.standard_normal(spec.N)
    np.testing.assert_allclose(apply_expanded(spec, u), kernel_sum_oracle(spec, u),
                               atol=1e-10)


def test_dual_definitions_agree_midsize():
    """Block assembly against the expanded kernel on a few hundred points."""
    for spec in (BakerSpec(M=3, alphabet=(0, 2), chi=make_cutoff(0.1), K=27),
                 BakerSpec(M=5, alphabet=(1, 2, 3), chi=make_cutoff(0.05), K=31)):
        B = build_dense(spec).dense
        cols = np.eye(spec.N, dtype=complex)
        expanded = np.column_stack([apply_expanded(spec, cols[:, j])
                                    for j in range(spec.N)])
        assert np.max(np.abs(B - expanded)) < 1e-10


@pytest.mark.parametrize("spec", SMALL_SPECS, ids=lambda s: f"M{s.M}K{s.K}")
def test_fast_apply_matches_dense(spec):
    rng = np.random.default_rng(9)
    B = build_dense(spec).dense
    for _ in range(3):
        u = rng.standard_normal(spec.N) + 1j * rng.standard_normal(spec.N)
        np.testing.assert_allclose(apply_fast(spec, u), B @ u, atol=1e-12)


def test_fast_apply_larger_grid():
    spec = BakerSpec(M=3, alphabet=(0, 2), chi=make_cutoff(0.05), K=81)
    rng = np.random.default_rng(10)
    u = rng.standard_normal(spec.N) + 1j * rng.standard_normal(spec.N)
    np.testing.assert_allclose(apply_fast(spec, u), build_dense(spec).apply(u),
                               atol=1e-11)


@pytest.mark.parametrize("spec", SMALL_SPECS, ids=lambda s: f"M{s.M}K{s.K}")
def test_adjoint_pairing(spec):
    rng = np.random.default_rng(11)
    for _ in range(4):
        u = rng.standard_normal(spec.N) + 1j * rng.standard_normal(spec.N)
        v = rng.standard_normal(spec.N) + 1j * rng.standard_normal(spec.N)
        lhs = np.vdot(v, apply_fast(spec, u))
        rhs = np.vdot(adjoint_apply(spec, v), u)
        assert abs(lhs - rhs) < 1e-11 * max(1.0, abs(lhs))


def test_zero_columns_outside_alphabet():
    spec = BakerSpec(M=4, alphabet=(1, 2), chi=make_cutoff(0.1), K=8)
    B = build_dense(spec).dense
    outside = [j for j in range(spec.N) if j // spec.K not in spec.alphabet]
    assert np.max(np.abs(B[:, outside])) == 0.0
    # chi vanishing near block edges can zero further columns, never fewer
    zero_cols = set(np.nonzero(np.max(np.abs(B), axis=0) == 0.0)[0])
    assert set(outside) <= zero_cols


def test_kept_indices_are_alphabet_blocks():
    spec = BakerSpec(M=4, alphabet=(1, 2), chi=make_cutoff(0.1), K=8)
    kept = kept_indices(spec)
    expected = [j for j in range(spec.N) if j // spec.K in spec.alphabet]
    assert list(kept) == expected


def test_project_keeps_single_block():
    spec = BakerSpec(M=3, alphabet=(0, 2), chi=make_cutoff(0.1), K=4)
    u = np.arange(spec.N, dtype=complex)
    p = project(2, u, spec.K)
    np.testing.assert_allclose(p, u[8:12])


def test_norm_is_contractive():
    for spec in SMALL_SPECS:
        assert operator_norm(build_dense(spec).dense) <= 1.0 + 1e-8


def test_full_alphabet_flat_cutoff_is_unitary():
    """chi == 1 and all symbols kept turn every block into a plain DFT."""
    flat = np.ones(9)
    B = assemble_dense(3, (0, 1, 2), flat)
    np.testing.assert_allclose(B.conj().T @ B, np.eye(27), atol=1e-12)
    assert abs(operator_norm(B) - 1.0) < 1e-8


def test_partial_alphabet_flat_cutoff_is_partial_isometry():
    flat = np.ones(9)
    B = assemble_dense(3, (0, 2), flat)
    kept = [j for j in range(27) if j // 9 in (0, 2)]
    G = (B.conj().T @ B)[np.ix_(kept, kept)]
    np.testing.assert_allclose(G, np.eye(len(kept)), atol=1e-12)


def test_trim_preserves_nonzero_spectrum():
    spec = BakerSpec(M=3, alphabet=(0, 2), chi=make_cutoff(0.1), K=27)
    full = build_dense(spec)
    trimmed = trim(full)
    assert trimmed.matrix.shape == (54, 54)
    ev_full = eigenvalues(full.dense, validate=False).eigenvalues
    ev_trim = eigenvalues(trimmed.matrix, source="trimmed", validate=False).eigenvalues
    keep = np.abs(ev_full) > 1e-12
    big_full = np.sort(np.abs(ev_full[keep]))[::-1]
    big_trim = np.sort(np.abs(ev_trim[np.abs(ev_trim) > 1e-12]))[::-1]
    m = min(big_full.size, big_trim.size)
    np.testing.assert_allclose(big_full[:m], big_trim[:m], atol=1e-10)
    # everything the trimmed matrix drops from the full one is numerically zero
    assert big_full.size == big_trim.size


def test_spec_properties_and_roundtrip():
    spec = BakerSpec(M=5, alphabet=(1, 2, 3), chi=make_cutoff(0.05), K=125)
    assert spec.N == 625
    assert spec.delta == pytest.approx(np.log(3) / np.log(5))
    again = BakerSpec.from_config(spec.to_config())
    assert again == spec
    assert again.spec_hash() == spec.spec_hash()
    other = BakerSpec(M=5, alphabet=(1, 2, 3), chi=make_cutoff(0.1), K=125)
    assert other.spec_hash() != spec.spec_hash()


def test_spec_validation():
    chi = make_cutoff(0.1)
    with pytest.raises(ValueError):
        BakerSpec(M=1, alphabet=(0,), chi=chi, K=4)
    with pytest.raises(ValueError):
        BakerSpec(M=3, alphabet=(), chi=chi, K=4)
    with pytest.raises(ValueError):
        BakerSpec(M=3, alphabet=(0, 3), chi=chi, K=4)
    with pytest.raises(ValueError):
        BakerSpec(M=3, alphabet=(2, 0), chi=chi, K=4)
    with pytest.raises(ValueError):
        BakerSpec(M=3, alphabet=(0, 2), chi=chi, K=0)
