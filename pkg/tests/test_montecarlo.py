"""Monte Carlo oracle: determinism, distribution checks, and concordance
with the exact engine."""

import math

import numpy as np
import pytest

from entpow import gates
from entpow.engine import ep_exact, epd_exact_cycle
from entpow.montecarlo import (
    McEstimate,
    SamplerConfig,
    entropy_samples,
    estimate_ep_epd,
    haar_unitary,
    sample_haar_state,
)

CNOT = gates.build("cnot")


def test_config_validation():
    with pytest.raises(ValueError, match="2 samples"):
        SamplerConfig(seed=1, samples=1, dims=(2, 2))
    with pytest.raises(ValueError, match="dims"):
        SamplerConfig(seed=1, samples=10, dims=(0, 2))


def test_same_seed_gives_bit_identical_estimates():
    cfg = SamplerConfig(seed=99, samples=20_000, dims=(2, 2))
    assert estimate_ep_epd(CNOT, cfg) == estimate_ep_epd(CNOT, cfg)


def test_different_seeds_differ():
    a = estimate_ep_epd(CNOT, SamplerConfig(seed=1, samples=5_000, dims=(2, 2)))
    b = estimate_ep_epd(CNOT, SamplerConfig(seed=2, samples=5_000, dims=(2, 2)))
    assert a.mean != b.mean


def test_estimates_invariant_under_chunking():
    cfg = SamplerConfig(seed=5, samples=10_000, dims=(2, 3))
    u = haar_unitary(6, np.random.default_rng(0))
    fine = entropy_samples(u, cfg, chunk=137)
    coarse = entropy_samples(u, cfg, chunk=8192)
    assert np.array_equal(fine, coarse)


def test_sample_haar_state_is_normalized_and_covers_dimension():
    rng = np.random.default_rng(3)
    state = sample_haar_state(5, rng)
    assert state.dims == (5,)
    assert abs(np.linalg.norm(state.vector) - 1.0) < 1e-12
    with pytest.raises(ValueError):
        sample_haar_state(0, rng)


def test_sampled_first_moment_is_maximally_mixed():
    rng = np.random.default_rng(8)
    n, d = 20_000, 2
    acc = np.zeros((d, d), dtype=complex)
    for _ in range(n):
        v = sample_haar_state(d, rng).vector
        acc += np.outer(v, v.conj())
    acc /= n
    assert np.max(np.abs(acc - np.eye(d) / d)) < 5.0 / (2.0 * math.sqrt(n))


def test_sampled_second_moment_matches_symmetric_projector():
    from entpow.moments import pure_state_haar_average
    from entpow.permutations import realize_sum

    rng = np.random.default_rng(9)
    n, d = 40_000, 2
    acc = np.zeros((d * d, d * d), dtype=complex)
    for _ in range(n):
        v = sample_haar_state(d, rng).vector
        vv = np.kron(v, v)
        acc += np.outer(vv, vv.conj())
    acc /= n
    proj, norm = pure_state_haar_average(d, 2)
    exact = float(norm) * realize_sum(proj, (d, d))
    assert np.max(np.abs(acc - exact)) < 6.0 / math.sqrt(n)


def test_cnot_concordance_at_1e5_samples():
    cfg = SamplerConfig(seed=7, samples=100_000, dims=(2, 2))
    est = estimate_ep_epd(CNOT, cfg)
    # se_mean is about 4.7e-4 here.
    assert est.se_mean < 6e-4
    assert abs(est.mean - 2.0 / 9.0) <= 3.0 * est.se_mean
    assert abs(est.std - 2.0 * math.sqrt(11.0) / 45.0) <= 3.0 * est.se_std


def test_swap_gives_zero_mean_and_deviation_at_float_precision():
    for d in (2, 3):
        u = gates.build("swap", d=d)
        est = estimate_ep_epd(u, SamplerConfig(seed=4, samples=2_000, dims=(d, d)))
        assert 0.0 <= est.mean < 1e-14
        assert 0.0 <= est.std < 1e-14


def test_gcx3_concordance():
    u = gates.build("gcx", d=3)
    est = estimate_ep_epd(u, SamplerConfig(seed=21, samples=60_000, dims=(3, 3)))
    assert abs(est.mean - 0.375) <= 4.0 * est.se_mean
    assert abs(est.std - epd_exact_cycle(u, 3, 3)) <= 4.0 * est.se_std


def test_asymmetric_dims_concordance():
    rng = np.random.default_rng(13)
    u = haar_unitary(6, rng)
    est = estimate_ep_epd(u, SamplerConfig(seed=31, samples=60_000, dims=(2, 3)))
    assert abs(est.mean - ep_exact(u, 2, 3)) <= 5.0 * est.se_mean
    assert abs(est.std - epd_exact_cycle(u, 2, 3)) <= 5.0 * est.se_std


def test_every_catalog_gate_concordant_at_1e5():
    specs = [
        ("cnot", {}),
        ("cp", {"theta": 2.0}),
        ("cu", {"theta": 1.1, "alpha": 0.3, "beta": 0.5, "delta": 0.0}),
        ("swap_alpha", {"alpha": 0.4}),
        ("iswap", {"theta": 1.9, "phi": 0.8}),
        ("kak", {"b1": 0.5, "b2": 0.25, "b3": 0.1}),
        ("swap", {"d": 2}),
        ("gcx", {"d": 2}),
        ("f4", {}),
    ]
    for family, params in specs:
        u = gates.build(family, **params)
        ep = ep_exact(u, 2, 2)
        est = estimate_ep_epd(u, SamplerConfig(seed=77, samples=100_000, dims=(2, 2)))
        if ep < 1e-12:
            # Degenerate distribution: every sample is zero up to rounding.
            assert est.mean < 1e-14 and est.std < 1e-14
            continue
        from entpow.engine import epd_exact_dense

        assert abs(est.mean - ep) <= 4.0 * est.se_mean, family
        assert abs(est.std - epd_exact_dense(u, 2, 2)) <= 4.0 * est.se_std, family


def test_trivial_subsystem_contributes_nothing():
    # With a one-dimensional side every output is a product state.
    u = haar_unitary(3, np.random.default_rng(5))
    est = estimate_ep_epd(u, SamplerConfig(seed=8, samples=1_000, dims=(1, 3)))
    assert est.mean < 1e-14 and est.std < 1e-14
    rng = np.random.default_rng(6)
    assert sample_haar_state(1, rng).vector.shape == (1,)


def test_standard_error_fields():
    est = estimate_ep_epd(CNOT, SamplerConfig(seed=1, samples=5_000, dims=(2, 2)))
    assert est.n == 5_000
    assert abs(est.se_mean - est.std / math.sqrt(est.n)) < 1e-15
    assert abs(est.se_std - est.std / math.sqrt(2.0 * (est.n - 1))) < 1e-15


def test_se_shrinks_with_sample_size():
    # The spread of the mean across seeds should shrink like 1/sqrt(n).
    means_small = [
        estimate_ep_epd(CNOT, SamplerConfig(seed=s, samples=2_000, dims=(2, 2))).mean
        for s in range(12)
    ]
    means_large = [
        estimate_ep_epd(CNOT, SamplerConfig(seed=s, samples=8_000, dims=(2, 2))).mean
        for s in range(12)
    ]
    ratio = np.std(means_small) / np.std(means_large)
    assert 1.2 < ratio < 3.5  # expect ~2, allow wide stochastic band


def test_as_result_wraps_estimate():
    est = McEstimate(mean=0.2, std=0.1, se_mean=0.001, se_std=0.002, n=100)
    res = est.as_result()
    assert res.method == "monte-carlo"
    assert res.ep == 0.2 and res.epd == 0.1
    assert res.stderr == 0.002


def test_estimator_validates_operator():
    cfg = SamplerConfig(seed=1, samples=100, dims=(2, 2))
    with pytest.raises(ValueError, match="not unitary"):
        estimate_ep_epd(np.eye(4) * 1.5, cfg)
    with pytest.raises(ValueError, match="shape"):
        estimate_ep_epd(np.eye(6), cfg)


def test_haar_unitary_is_haar_like():
    rng = np.random.default_rng(2)
    u = haar_unitary(3, rng)
    assert np.max(np.abs(u.conj().T @ u - np.eye(3))) < 1e-12
    # Phase convention makes the distribution invariant, not the matrix special.
    v = haar_unitary(3, rng)
    assert not np.allclose(u, v)
