import numpy as np
import pytest
from scipy.integrate import quad

from openbaker.cutoff import (
    bump_antiderivative,
    bump_normalization,
    estimate_decay_envelope,
    make_cutoff,
    support_distance_to_zero,
)


def test_normalization_constant():
    """Direct quadrature of exp(-1/(t(1-t))) over (0, 1)."""
    value, err = quad(lambda t: np.exp(-1.0 / (t * (1.0 - t))), 0.0, 1.0,
                      epsabs=1e-15, limit=200)
    assert err < 1e-12
    assert abs(bump_normalization() - value) < 1e-12
    assert abs(bump_normalization() - 0.007029858406609657) < 1e-12


def test_antiderivative_endpoints_and_midpoint():
    assert bump_antiderivative(0.0) == 0.0
    assert bump_antiderivative(1.0) == 1.0
    assert bump_antiderivative(-3.0) == 0.0
    assert bump_antiderivative(5.0) == 1.0
    # symmetry of the bump about t = 1/2 puts the half mass at x = 1/2
    assert abs(bump_antiderivative(0.5) - 0.5) < 1e-12


def test_antiderivative_symmetry():
    for x in (0.1, 0.23, 0.4, 0.77):
        assert abs(bump_antiderivative(x) + bump_antiderivative(1.0 - x) - 1.0) < 1e-12


def test_fast_path_matches_quadrature():
    """Interpolated evaluation against the quad oracle."""
    chi = make_cutoff(0.1)
    for x in np.linspace(0.0, 1.0, 41):
        assert abs(chi(float(x)) - chi.exact(float(x))) < 1e-9


def test_cutoff_plateau_and_support():
    chi = make_cutoff(0.1)
    edge = support_distance_to_zero(chi)
    assert abs(edge - 0.1 * 0.01 / 1.02) < 1e-15
    assert chi(edge * 0.999) == 0.0
    assert chi(0.0) == 0.0
    assert chi(edge * 1.5) > 0.0
    for x in (0.1, 0.3, 0.5, 0.7, 0.9):
        assert chi(x) == pytest.approx(1.0, abs=1e-12)
    assert chi(1.0) == 0.0


def test_cutoff_symmetry_and_range():
    chi = make_cutoff(0.05)
    xs = np.linspace(0.0, 1.0, 301)
    vals = chi(xs)
    np.testing.assert_allclose(vals, chi(1.0 - xs), atol=1e-12)
    assert np.all(vals >= 0.0) and np.all(vals <= 1.0)


def test_cutoff_half_value():
    chi = make_cutoff(0.1)
    assert abs(chi(0.05) - 0.5) < 1e-10


def test_partition_sum_is_exact():
    # f(x) + f(1-x) = 1 makes the ramp pairs sum to one grid cell each
    chi = make_cutoff(0.05)
    total = float(np.sum(chi(np.arange(100) / 100)))
    assert abs(total - 95.0) < 1e-9


def test_make_cutoff_domain():
    with pytest.raises(ValueError):
        make_cutoff(0.0)
    with pytest.raises(ValueError):
        make_cutoff(0.6)
    chi = make_cutoff(0.5)
    assert chi.tau == 0.5
    assert chi.gevrey_order_s == 2.0


@pytest.mark.parametrize("tau,c_lo,c_hi", [(0.05, 0.5, 1.2), (0.1, 1.2, 1.9)])
def test_envelope_fit_parameters(tau, c_lo, c_hi):
    chi = make_cutoff(tau)
    env = estimate_decay_envelope(chi)
    assert env.kind == "gevrey"
    assert env.s == 2.0
    assert env.C > 0.0
    assert c_lo < env.c < c_hi
    assert env.samples_xi.size >= 20


def test_envelope_dominates_samples():
    env = estimate_decay_envelope(make_cutoff(0.1))
    assert np.all(env.evaluate(env.samples_xi) + 1e-12 >= env.samples_abs)


def test_envelope_dominates_fresh_quadrature():
    """Dominance at frequencies the fit never saw."""
    chi = make_cutoff(0.1)
    env = estimate_decay_envelope(chi)
    for xi in (3.7, 17.3, 41.0):
        w = 2.0 * np.pi * xi
        re, _ = quad(chi, 0.0, 1.0, weight="cos", wvar=w, limit=400)
        im, _ = quad(chi, 0.0, 1.0, weight="sin", wvar=w, limit=400)
        assert np.hypot(re, im) <= env.evaluate(xi) + 1e-10


def test_envelope_is_decreasing():
    env = estimate_decay_envelope(make_cutoff(0.1))
    xs = np.linspace(1.0, 200.0, 50)
    vals = env.evaluate(xs)
    assert np.all(np.diff(vals) <= 0.0)


def test_smooth_rapid_envelope():
    chi = make_cutoff(0.1)
    env = estimate_decay_envelope(chi, kind="smooth-rapid")
    assert env.kind == "smooth-rapid"
    assert len(env.coefficients) == 10
    assert np.all(env.evaluate(env.samples_xi) + 1e-12 >= env.samples_abs)


def test_envelope_rejects_unknown_kind():
    with pytest.raises(ValueError):
        estimate_decay_envelope(make_cutoff(0.1), kind="polynomial")
