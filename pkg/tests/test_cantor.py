import itertools

import numpy as np
import pytest

from openbaker.cantor import (
    ExpandingMap,
    fatten,
    gevrey_schedule,
    grid_membership,
    localizer,
    localizer_rank_bound,
    preimage_intervals,
    preimage_of_arcs,
    smooth_schedule,
)
from openbaker.cutoff import make_cutoff, support_distance_to_zero
from openbaker.dft import circle_distance

EMAP = ExpandingMap(M=3, alphabet=(0, 2))


def in_arcs(arcs, x):
    for lo, hi in arcs:
        if lo - 1e-12 <= x <= hi + 1e-12 or lo - 1e-12 <= x + 1.0 <= hi + 1e-12:
            return True
    return False


def test_delta():
    assert EMAP.delta == pytest.approx(np.log(2) / np.log(3))
    assert ExpandingMap(M=5, alphabet=(1, 2, 3)).delta == pytest.approx(np.log(3) / np.log(5))


def test_preimage_intervals_base_cases():
    assert preimage_intervals(EMAP, 0) == [(0.0, 1.0)]
    level1 = preimage_intervals(EMAP, 1)
    np.testing.assert_allclose(level1, [(0.0, 1 / 3), (2 / 3, 1.0)])


def test_preimage_intervals_level_two():
    level2 = preimage_intervals(EMAP, 2)
    lefts = [lo for lo, _ in level2]
    np.testing.assert_allclose(lefts, [0.0, 2 / 9, 6 / 9, 8 / 9])
    assert all(hi - lo == pytest.approx(1 / 9) for lo, hi in level2)


def test_preimage_intervals_word_enumeration():
    """Left endpoints are exactly the digit expansions over the alphabet."""
    emap = ExpandingMap(M=5, alphabet=(1, 2, 3))
    got = [lo for lo, _ in preimage_intervals(emap, 3)]
    expected = sorted(
        a1 / 5 + a2 / 25 + a3 / 125
        for a1, a2, a3 in itertools.product((1, 2, 3), repeat=3)
    )
    np.testing.assert_allclose(got, expected)
    assert len(got) == 27


def test_preimage_intervals_guard():
    with pytest.raises(ValueError):
        preimage_intervals(EMAP, -1)
    with pytest.raises(ValueError):
        preimage_intervals(ExpandingMap(M=10, alphabet=tuple(range(10))), 8)


def test_nesting():
    for j in range(6):
        outer = preimage_intervals(EMAP, j)
        inner = preimage_intervals(EMAP, j + 1)
        for lo, hi in inner:
            assert any(olo - 1e-12 <= lo and hi <= ohi + 1e-12 for olo, ohi in outer)


def test_fatten_zero_width_unchanged():
    # the two closed pieces touch at 0 == 1 mod 1, so they join as one arc
    fset = fatten(preimage_intervals(EMAP, 1), 0.0, level=1)
    assert fset.measure == pytest.approx(2 / 3)
    for x in (0.0, 0.2, 1 / 3, 2 / 3, 0.9):
        assert in_arcs(fset.arcs, x)
    for x in (0.4, 0.5, 0.6):
        assert not in_arcs(fset.arcs, x)


def test_fatten_wraps_and_merges_at_zero():
    """Widening the level-1 set by 0.01 glues the two pieces across 0."""
    fset = fatten(preimage_intervals(EMAP, 1), 0.01, level=1)
    assert fset.measure == pytest.approx(2 / 3 + 0.04 - 0.02)
    for x in (0.0, 0.3, 0.343, 0.657, 0.99):
        assert in_arcs(fset.arcs, x)
    for x in (0.35, 0.5, 0.65):
        assert not in_arcs(fset.arcs, x)
    assert not fset.is_full_circle


def test_fatten_single_wrapped_arc():
    fset = fatten(preimage_intervals(EMAP, 1), 1 / 12, level=1)
    assert len(fset.arcs) == 1
    assert fset.measure == pytest.approx(5 / 6)
    assert grid_membership(fset.arcs, 12).sum() == 11


def test_fatten_full_circle_cases():
    assert fatten([(0.4, 0.6)], 0.5).is_full_circle
    assert fatten(preimage_intervals(EMAP, 1), 1 / 6).is_full_circle
    assert fatten([], 0.7).is_full_circle
    assert fatten([], 0.1).arcs == ()
    assert fatten([(0.0, 1.0)], 0.0).is_full_circle


def test_fatten_rejects_negative_width():
    with pytest.raises(ValueError):
        fatten([(0.0, 0.5)], -0.1)


def test_measure_bound():
    """measure(X_j) <= M^(dj) (M^-j + 2 a_j) for generated sets."""
    delta = EMAP.delta
    for j in range(5):
        for width in (0.0, 1e-4, 1e-3, 0.01, 0.05):
            fset = fatten(preimage_intervals(EMAP, j), width, level=j)
            bound = 3.0 ** (delta * j) * (3.0 ** (-j) + 2 * width)
            assert fset.measure <= bound + 1e-12


def test_preimage_of_arcs_full_interval():
    arcs = preimage_of_arcs(EMAP, [(0.0, 1.0)])
    np.testing.assert_allclose(arcs, [(0.0, 1 / 3), (2 / 3, 1.0)])


def test_preimage_of_arcs_small_arc():
    arcs = preimage_of_arcs(EMAP, [(0.3, 0.6)])
    np.testing.assert_allclose(arcs, [(0.1, 0.2), (0.3 / 3 + 2 / 3, 0.2 + 2 / 3)])


def test_preimage_of_arcs_wrapping_arc():
    """An arc through 0 splits before mapping; nothing leaks between strips."""
    arcs = preimage_of_arcs(EMAP, [(0.9, 1.2)])
    expected = [(0.0, 0.2 / 3), (0.3, 1 / 3), (2 / 3, 2 / 3 + 0.2 / 3), (0.9 / 3 + 2 / 3, 1.0)]
    np.testing.assert_allclose(sorted(arcs), sorted(expected))


def test_grid_membership_closed_boundaries():
    mask = grid_membership([(0.0, 1 / 3)], 3)
    np.testing.assert_array_equal(mask, [True, True, False])
    mask = grid_membership([(2 / 3, 1.0)], 3)
    np.testing.assert_array_equal(mask, [True, False, True])


def test_localizer_identity_and_zero():
    full = fatten([(0.0, 1.0)], 0.0)
    np.testing.assert_allclose(localizer(full, 9), np.eye(9), atol=1e-12)
    empty = fatten([], 0.0)
    np.testing.assert_allclose(localizer(empty, 9), np.zeros((9, 9)), atol=1e-14)


def test_localizer_is_projection_with_exact_rank():
    fset = fatten(preimage_intervals(EMAP, 2), 0.01, level=2)
    n = 81
    A = localizer(fset, n)
    np.testing.assert_allclose(A @ A, A, atol=1e-11)
    np.testing.assert_allclose(A.conj().T, A, atol=1e-12)
    npoints = int(grid_membership(fset.arcs, n).sum())
    assert round(np.trace(A).real) == npoints
    assert np.linalg.matrix_rank(A, tol=1e-8) == npoints


def test_localizer_rank_bound_formula():
    chi = make_cutoff(0.05)
    sch = smooth_schedule(243, 3, 1.0, chi)
    by_hand = 2.0 * 3.0 ** (sch.ell * EMAP.delta) * (
        243 / 3.0 ** sch.ell
        + 2.0 * sum(sch.d[k - 1] * 3.0 ** (k - sch.ell) for k in range(1, sch.ell + 1))
    )
    assert localizer_rank_bound(sch, EMAP.delta) == pytest.approx(by_hand, rel=1e-12)


def test_rank_bound_dominates_measured_rank():
    chi = make_cutoff(0.05)
    sch = smooth_schedule(243, 3, 1.0, chi)
    fset = fatten(preimage_intervals(EMAP, sch.ell), sch.a[sch.ell], level=sch.ell)
    rank = int(grid_membership(fset.arcs, 243).sum())
    assert rank <= localizer_rank_bound(sch, EMAP.delta)


def test_smooth_schedule_gap_values():
    chi = make_cutoff(0.05)
    sch = smooth_schedule(5 ** 5, 5, 1.0, chi, L=2.0)
    assert sch.ell == 5
    assert sch.kind == "smooth"
    assert sch.d[-1] == pytest.approx(2.0)
    assert sch.d[-2] == pytest.approx(20.0 / 3.0)
    assert sch.params["L"] == 2.0
    # smallest n with 1.5^n / M^(n - nu) < 1/2
    assert sch.params["n"] == 2


def test_smooth_schedule_distance_consistency():
    """d_j reconstructs from the widths: d_1 = N a_1, d_j = N (a_j - a_{j-1}/M)."""
    chi = make_cutoff(0.05)
    sch = smooth_schedule(243, 3, 1.3, chi, L=1.0)
    assert sch.a[0] == 0.0
    rebuilt = [243 * (sch.a[j] - sch.a[j - 1] / 3) for j in range(1, sch.ell + 1)]
    np.testing.assert_allclose(rebuilt, sch.d, rtol=1e-12)
    # positivity of every gap: a_j > a_{j-1}/M
    assert np.all(sch.a[1:] > sch.a[:-1] / 3)


def test_smooth_schedule_rejects_bad_nu():
    with pytest.raises(ValueError):
        smooth_schedule(243, 3, 0.0, make_cutoff(0.05))


def test_gevrey_schedule_shape():
    chi = make_cutoff(0.05)
    sch = gevrey_schedule(3 ** 4, 3, nu=1.0, s=2.0, mu=0.1, c=1.0, chi=chi)
    assert sch.ell == 4
    assert sch.kind == "gevrey"
    # d_1 is the largest gap; stored order d_1..d_ell decreases
    assert np.all(np.diff(sch.d) < 0)
    expect_d1 = (((np.log(3) + 0.1) / 1.0) * sch.ell) ** 2
    assert sch.d[0] == pytest.approx(expect_d1)
    expect_dl = ((np.log(3) + 0.1) / 1.0) ** 2
    assert sch.d[-1] == pytest.approx(expect_dl)


def test_gevrey_schedule_precondition():
    with pytest.raises(ValueError):
        gevrey_schedule(8, 3, nu=3.0, s=2.0, mu=0.1, c=1.0)


def test_gevrey_validity_flips_with_N():
    """The gap condition is asymptotic: gaps grow like (log N)^s against a
    linear threshold, so validity switches on at a finite grid size."""
    chi = make_cutoff(0.05)
    kw = dict(nu=1.0, s=2.0, mu=0.1, c=1.0, chi=chi)
    assert not gevrey_schedule(3 ** 8, 3, **kw).valid
    assert not gevrey_schedule(3 ** 12, 3, **kw).valid
    assert gevrey_schedule(3 ** 13, 3, **kw).valid
    assert gevrey_schedule(3 ** 14, 3, **kw).valid


def test_schedule_validity_matches_support_distance():
    chi = make_cutoff(0.5)
    sch = gevrey_schedule(729, 3, nu=1.0, s=2.0, mu=0.01, c=5.0, chi=chi)
    assert sch.valid
    assert np.max(sch.d) / 729 <= (2.0 / 3.0) * support_distance_to_zero(chi)


def test_gap_condition_on_grid():
    """Points of Phi^-1(X_{j-1}) keep distance a_j - a_{j-1}/M - 2/N from
    the complement of X_j."""
    cases = [
        (3, (0, 2), 729, gevrey_schedule(729, 3, nu=1.0, s=2.0, mu=0.01, c=5.0,
                                         chi=make_cutoff(0.5))),
        (3, (0, 2), 243, smooth_schedule(243, 3, 1.0, make_cutoff(0.05), L=1.0)),
    ]
    for M, alphabet, N, sch in cases:
        emap = ExpandingMap(M=M, alphabet=alphabet)
        grid = np.arange(N) / N
        for j in range(1, sch.ell + 1):
            prev = fatten(preimage_intervals(emap, j - 1), sch.a[j - 1], level=j - 1)
            cur = fatten(preimage_intervals(emap, j), sch.a[j], level=j)
            P = grid[grid_membership(preimage_of_arcs(emap, prev.arcs), N)]
            C = grid[~grid_membership(cur.arcs, N)]
            if P.size == 0 or C.size == 0:
                continue
            dmin = float(np.min(circle_distance(P[:, None], C[None, :])))
            assert dmin >= (sch.a[j] - sch.a[j - 1] / M) - 2.0 / N
