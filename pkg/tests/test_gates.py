"""Gate catalog: matrix constructions, closed forms vs the exact engine,
ratio laws, and parameter validation."""

import math

import numpy as np
import pytest
from scipy.linalg import expm

from entpow import gates
from entpow.engine import ep_exact, epd_exact_cycle, epd_exact_dense
from entpow.gates import (
    ETA_CU,
    ETA_SWAP_ALPHA,
    build,
    closed_form_ep_epd,
    clock_shift,
    eta_ratio,
    gate,
    gcx_epd_squared,
    iswap_eta,
    kak_scan,
)
from entpow.linalg import dagger, unitarity_defect

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.diag([1.0, -1.0]).astype(complex)


def test_all_catalog_matrices_are_unitary():
    specs = [
        gate("cnot"),
        gate("cp", theta=0.7),
        gate("cu", theta=1.2, alpha=0.3, beta=0.8, delta=0.1),
        gate("swap_alpha", alpha=0.42),
        gate("iswap", theta=2.4, phi=1.0),
        gate("kak", b1=0.3, b2=0.2, b3=0.1),
        gate("swap", d=3),
        gate("gcx", d=4),
        gate("f4"),
    ]
    for spec in specs:
        assert unitarity_defect(build(spec)) < 1e-12


def test_cnot_matrix_literal():
    expected = np.zeros((4, 4))
    expected[[0, 1, 2, 3], [0, 1, 3, 2]] = 1
    assert np.array_equal(build("cnot"), expected)


def test_cu_special_cases_recover_cnot_and_cp():
    cnot_via_cu = build("cu", theta=math.pi, alpha=0.0, beta=math.pi, delta=math.pi / 2)
    assert np.allclose(cnot_via_cu, build("cnot"), atol=1e-12)
    theta = 1.234
    cp_via_cu = build("cu", theta=0.0, alpha=-theta, beta=0.0, delta=theta / 2)
    assert np.allclose(cp_via_cu, build("cp", theta=theta), atol=1e-12)


def test_swap_alpha_endpoints():
    assert np.allclose(build("swap_alpha", alpha=0.0), np.eye(4), atol=1e-12)
    assert np.allclose(build("swap_alpha", alpha=1.0), build("swap", d=2), atol=1e-12)


def test_iswap_matrix_entries():
    theta, phi = 1.3, 0.7
    u = build("iswap", theta=theta, phi=phi)
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    assert abs(u[1, 1] - c) < 1e-15 and abs(u[2, 2] - c) < 1e-15
    assert abs(u[1, 2] - 1j * np.exp(1j * phi) * s) < 1e-15
    assert abs(u[2, 1] - 1j * np.exp(-1j * phi) * s) < 1e-15
    assert u[0, 0] == 1 and u[3, 3] == 1


def test_kak_matrix_matches_exponential():
    rng = np.random.default_rng(17)
    for _ in range(20):
        b = rng.uniform(-2.0, 2.0, size=3)
        h = b[0] * np.kron(SX, SX) + b[1] * np.kron(SY, SY) + b[2] * np.kron(SZ, SZ)
        assert np.allclose(build("kak", b1=b[0], b2=b[1], b3=b[2]), expm(-1j * h), atol=1e-12)


def test_kak_cnot_point_is_locally_equivalent_to_cnot():
    u = build("kak", b1=math.pi / 4, b2=0.0, b3=0.0)
    assert abs(ep_exact(u, 2, 2) - 2.0 / 9.0) < 1e-12


def test_gcx_reduces_to_cnot_at_d2():
    assert np.array_equal(build("gcx", d=2), build("cnot"))
    assert abs(ep_exact(build("gcx", d=2), 2, 2) - 2.0 / 9.0) < 1e-12


@pytest.mark.parametrize("d", [2, 3, 5])
def test_clock_shift_powers_are_orthogonal(d):
    x = clock_shift(d)
    powers = [np.linalg.matrix_power(x, a) for a in range(d)]
    for a in range(d):
        for b in range(d):
            overlap = np.trace(dagger(powers[a]) @ powers[b])
            assert abs(overlap - (d if a == b else 0.0)) < 1e-12


def test_gcx_maps_uniform_control_to_maximally_entangled():
    d = 3
    u = build("gcx", d=d)
    psi = np.kron(np.ones(d) / math.sqrt(d), np.eye(d)[0]).astype(complex)
    out = u @ psi
    expected = sum(np.kron(np.eye(d)[j], np.eye(d)[j]) for j in range(d)) / math.sqrt(d)
    assert np.allclose(out, expected, atol=1e-12)


def test_f4_matrix_entries():
    f4 = build("f4")
    for m in range(4):
        for n in range(4):
            assert abs(f4[m, n] - 0.5 * np.exp(2j * math.pi * m * n / 4)) < 1e-12


# -- closed forms vs engine ---------------------------------------------------


@pytest.mark.parametrize("family,sweep", [
    ("cp", [{"theta": t} for t in np.linspace(0.0, 2 * math.pi, 20)]),
    ("cu", [{"theta": t, "alpha": 0.4, "beta": 0.9, "delta": 0.2}
            for t in np.linspace(0.0, 2 * math.pi, 20)]),
    ("swap_alpha", [{"alpha": a} for a in np.linspace(0.0, 1.0, 20)]),
    ("iswap", [{"theta": t, "phi": 0.6} for t in np.linspace(0.0, math.pi, 20)]),
    ("kak", [{"b1": b, "b2": 0.31, "b3": 0.12} for b in np.linspace(0.0, math.pi / 4, 20)]),
])
def test_closed_forms_match_engine_on_grid(family, sweep):
    for params in sweep:
        closed = closed_form_ep_epd(family, **params)
        u = build(family, **params)
        assert abs(closed.ep - ep_exact(u, 2, 2)) < 1e-9
        assert abs(closed.epd - epd_exact_dense(u, 2, 2)) < 1e-9


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_gcx_closed_form_matches_cycle_engine(d):
    closed = closed_form_ep_epd("gcx", d=d)
    u = build("gcx", d=d)
    assert abs(closed.ep - ep_exact(u, d, d)) < 1e-8
    assert abs(closed.epd - epd_exact_cycle(u, d, d)) < 1e-8


def test_gcx_epd_squared_reference_values():
    assert abs(gcx_epd_squared(2) - 44.0 / 2025.0) < 1e-15
    # Odd-d branch sits below the even polynomial by 2d(d+1)^2 / denominator.
    d = 3
    denom = (d + 1) ** 4 * (d + 2) ** 2 * (d + 3) ** 2
    even_branch = (8 * d**5 + 34 * d**4 + 8 * d**3 - 38 * d**2 - 4 * d) / denom
    assert abs(gcx_epd_squared(3) - (even_branch - 2 * d * (d + 1) ** 2 / denom)) < 1e-15


def test_iswap_results_independent_of_phi():
    thetas = np.linspace(0.1, math.pi, 7)
    for theta in thetas:
        values = []
        for phi in np.linspace(0.0, 2 * math.pi, 9):
            u = build("iswap", theta=float(theta), phi=float(phi))
            values.append((ep_exact(u, 2, 2), epd_exact_dense(u, 2, 2)))
        eps, epds = zip(*values)
        assert max(eps) - min(eps) < 1e-10
        assert max(epds) - min(epds) < 1e-10


def test_eta_constants():
    assert abs(eta_ratio("cp", theta=0.8) - ETA_CU) < 1e-12
    assert abs(eta_ratio("cu", theta=2.0, alpha=0.1, beta=0.2, delta=0.0) - ETA_CU) < 1e-12
    assert abs(eta_ratio("swap_alpha", alpha=0.25) - ETA_SWAP_ALPHA) < 1e-12
    assert abs(ETA_CU - math.sqrt(11.0) / 5.0) < 1e-15
    assert abs(ETA_SWAP_ALPHA - 2.0 * math.sqrt(5.0) / 5.0) < 1e-15


def test_eta_iswap_at_right_angle():
    # Substituting theta = pi/2 into the ratio formula gives 2 sqrt(27) / 15.
    expected = 2.0 * math.sqrt(34.0 + 0.0 - 7.0) / (5.0 * 3.0)
    assert abs(iswap_eta(math.pi / 2) - expected) < 1e-15
    assert abs(eta_ratio("iswap", theta=math.pi / 2, phi=0.0) - expected) < 1e-12


def test_eta_undefined_at_zero_power():
    with pytest.raises(ZeroDivisionError):
        eta_ratio("swap_alpha", alpha=0.0)
    with pytest.raises(ZeroDivisionError):
        eta_ratio("swap", d=2)


def test_max_gates_of_each_family():
    cp_max = closed_form_ep_epd("cp", theta=math.pi)
    assert abs(cp_max.ep - 2.0 / 9.0) < 1e-15
    assert abs(cp_max.epd - 2.0 * math.sqrt(11.0) / 45.0) < 1e-15
    sa_max = closed_form_ep_epd("swap_alpha", alpha=0.5)
    assert abs(sa_max.ep - 1.0 / 6.0) < 1e-15
    assert abs(sa_max.epd - math.sqrt(5.0) / 15.0) < 1e-15
    is_max = closed_form_ep_epd("iswap", theta=math.pi)
    assert abs(is_max.ep - 2.0 / 9.0) < 1e-15
    assert abs(is_max.epd - 2.0 * math.sqrt(11.0) / 45.0) < 1e-15


def test_f4_is_half_of_cnot():
    f4 = closed_form_ep_epd("f4")
    cnot = closed_form_ep_epd("cnot")
    assert abs(f4.ep - cnot.ep / 2) < 1e-15
    assert abs(f4.epd - cnot.epd / 2) < 1e-15
    u = build("f4")
    assert abs(ep_exact(u, 2, 2) - 1.0 / 9.0) < 1e-12
    assert abs(epd_exact_dense(u, 2, 2) - math.sqrt(11.0) / 45.0) < 1e-12


def test_kak_extrema_at_predicted_points():
    # Power maxima at ((2k1+1) pi/4, k2 pi/8, k3 pi) and deviation maxima at
    # odd multiples of pi/8 on every axis.
    for b in [(math.pi / 4, 0.0, 0.0), (3 * math.pi / 4, math.pi / 8, math.pi)]:
        at_max_ep = closed_form_ep_epd("kak", b1=b[0], b2=b[1], b3=b[2])
        assert abs(at_max_ep.ep - 2.0 / 9.0) < 1e-12
    for b in [(math.pi / 8,) * 3, (3 * math.pi / 8,) * 3]:
        at_max_epd = closed_form_ep_epd("kak", b1=b[0], b2=b[1], b3=b[2])
        assert abs(at_max_epd.epd - 1.0 / (3.0 * math.sqrt(5.0))) < 1e-12
    local_point = closed_form_ep_epd("kak", b1=math.pi / 2, b2=math.pi / 2, b3=0.0)
    assert local_point.ep < 1e-15
    assert local_point.epd < 1e-15


def test_closed_forms_respect_entropy_bound():
    # EP can never exceed the maximal linearized entropy 1 - 1/min(d1, d2).
    specs = [
        ("cp", {"theta": math.pi}),
        ("swap_alpha", {"alpha": 0.5}),
        ("iswap", {"theta": math.pi}),
        ("kak", {"b1": math.pi / 4, "b2": math.pi / 8, "b3": 0.0}),
        ("gcx", {"d": 3}),
        ("gcx", {"d": 6}),
    ]
    for family, params in specs:
        spec = gate(family, **params)
        res = closed_form_ep_epd(spec)
        d_min = min(spec.dims)
        assert 0.0 <= res.ep <= 1.0 - 1.0 / d_min + 1e-12
        assert res.epd >= 0.0


def test_kak_scan_shapes_and_bounds():
    scan = kak_scan(5)
    assert scan["ep"].shape == (125,)
    assert scan["ep"].max() <= 2.0 / 9.0 + 1e-12
    assert scan["epd"].max() <= 1.0 / (3.0 * math.sqrt(5.0)) + 1e-12
    with pytest.raises(ValueError):
        kak_scan(1)


# -- parameter validation -----------------------------------------------------


def test_unknown_family_rejected():
    with pytest.raises(ValueError, match="unknown gate family"):
        gate("toffoli")


def test_unknown_parameter_rejected():
    with pytest.raises(ValueError, match="unknown parameter"):
        gate("cp", omega=1.0)


def test_required_parameter_enforced():
    with pytest.raises(ValueError, match="required"):
        gate("gcx")
    with pytest.raises(ValueError, match="required"):
        gate("kak", b1=0.1, b2=0.2)


@pytest.mark.parametrize("family,params", [
    ("swap_alpha", {"alpha": -0.1}),
    ("swap_alpha", {"alpha": 1.5}),
    ("cp", {"theta": -1.0}),
    ("cp", {"theta": 7.0}),
    ("gcx", {"d": 1}),
])
def test_out_of_range_parameters_rejected(family, params):
    with pytest.raises(ValueError):
        gate(family, **params)


def test_build_rejects_params_with_spec():
    spec = gate("cp", theta=1.0)
    with pytest.raises(ValueError):
        build(spec, theta=2.0)


def test_cu_global_phase_is_irrelevant():
    base = closed_form_ep_epd("cu", theta=1.1, alpha=0.2, beta=0.4, delta=0.0)
    for delta in (0.5, 1.0, 2.2):
        u = build("cu", theta=1.1, alpha=0.2, beta=0.4, delta=delta)
        assert abs(ep_exact(u, 2, 2) - base.ep) < 1e-12
        assert abs(epd_exact_dense(u, 2, 2) - base.epd) < 1e-12
