# Fermi metric components, polar and Cartesian.

import math

import numpy as np
import pytest

from fermirw import (
    Cosmology,
    UnsupportedCurvatureError,
    g_tau_tau,
    lambda_k,
    make_exponential,
    make_power_law,
    metric_cartesian,
    metric_polar,
    rho_of_sigma,
    s_k,
)

MILNE = Cosmology(make_power_law(1.0), k=-1, name="milne")
RADIATION = Cosmology(make_power_law(0.5), k=0, name="radiation")
MATTER = Cosmology(make_power_law(2.0 / 3.0), k=0, name="matter")
DESITTER = Cosmology(make_exponential(1.0), k=0, name="de-sitter")


# ---------------------------------------------------------------------------
# s_k

def test_s_k_flat():
    assert s_k(0, 0.7) == 0.7


def test_s_k_open():
    assert s_k(-1, 0.0) == 0.0
    assert s_k(-1, 1.0) == pytest.approx(math.sinh(1.0), rel=1e-14)


def test_s_k_closed_unsupported():
    with pytest.raises(UnsupportedCurvatureError):
        s_k(1, 0.5)


# ---------------------------------------------------------------------------
# g_tau_tau

def test_lapse_is_minus_one_on_gamma():
    for cosmo in (MATTER, RADIATION, DESITTER):
        assert g_tau_tau(cosmo, 1.3, 0.0) == pytest.approx(-1.0, rel=1e-12)


def test_lapse_milne_everywhere():
    for tau, rho in ((1.0, 0.3), (2.0, 1.5), (5.0, 4.9)):
        assert g_tau_tau(MILNE, tau, rho) == pytest.approx(-1.0, rel=1e-10)


def test_lapse_de_sitter():
    assert g_tau_tau(DESITTER, 2.0, math.pi / 4.0) == pytest.approx(
        -0.5, rel=1e-8)
    for rho in (0.2, 0.7, 1.3):
        assert g_tau_tau(DESITTER, 3.0, rho) == pytest.approx(
            -math.cos(rho) ** 2, rel=1e-8)


def test_lapse_radiation_closed_form():
    tau, sigma = 1.0, 4.0
    rho = rho_of_sigma(RADIATION, tau, sigma)
    want = -(1.0 / sigma) * (1.0 + math.sqrt(sigma - 1.0)
                             * math.acos(1.0 / math.sqrt(sigma))) ** 2
    assert g_tau_tau(RADIATION, tau, rho) == pytest.approx(want, rel=1e-8)


# ---------------------------------------------------------------------------
# metric_polar

def test_polar_milne_minkowski():
    pm = metric_polar(MILNE, 2.0, 1.0)
    assert pm.g_tau_tau == pytest.approx(-1.0, rel=1e-10)
    assert pm.g_rho_rho == 1.0
    assert pm.ang == pytest.approx(1.0, rel=1e-10)


def test_polar_de_sitter_angular():
    pm = metric_polar(DESITTER, 2.0, math.pi / 6.0)
    assert pm.ang == pytest.approx(math.sin(math.pi / 6.0) ** 2, rel=1e-8)


def test_polar_radiation_angular():
    tau, sigma = 1.0, 4.0
    rho = rho_of_sigma(RADIATION, tau, sigma)
    pm = metric_polar(RADIATION, tau, rho)
    assert pm.ang == pytest.approx(math.pi ** 2 / 9.0, rel=1e-8)


def test_polar_signature():
    for cosmo in (RADIATION, MATTER):
        for rho in (0.0, 0.4, 1.2):
            pm = metric_polar(cosmo, 1.5, rho)
            assert pm.g_tau_tau < 0.0
            assert pm.g_rho_rho == 1.0
            assert pm.ang >= 0.0


# ---------------------------------------------------------------------------
# lambda_k

def test_lambda_milne_vanishes():
    for rho in (0.3, 1.0, 1.9):
        assert lambda_k(MILNE, 2.0, rho) == pytest.approx(0.0, abs=1e-9)


def test_lambda_de_sitter_quarter_pi():
    # k=0: lambda = (sin^2(rho) - rho^2)/rho^4 at h0 = 1
    rho = math.pi / 4.0
    want = (math.sin(rho) ** 2 - rho ** 2) / rho ** 4
    assert lambda_k(DESITTER, 2.0, rho) == pytest.approx(want, rel=1e-8)
    assert want == pytest.approx(-0.30709320967780945, rel=1e-12)


def test_lambda_origin_limit_de_sitter():
    # sin^2(x)/x^2 expands to 1 - x^2/3 + ..., so the ratio tends to -1/3
    assert lambda_k(DESITTER, 1.0, 1e-5) == pytest.approx(-1.0 / 3.0,
                                                          abs=1e-4)


def test_lambda_small_rho_stable():
    for cosmo in (MATTER, DESITTER):
        tau = 1.0
        a = lambda_k(cosmo, tau, 1e-4 * tau)
        b = lambda_k(cosmo, tau, 5e-5 * tau)
        assert a == pytest.approx(b, abs=1e-4)


def test_lambda_extrapolation_joins_direct_branch():
    # Direct evaluation near the switch point divides a difference of
    # O(rho^2) quantities by rho^4, so its noise floor there is a few
    # 1e-3 in lambda units.  The extrapolated branch must agree with the
    # well-conditioned direct value farther out to better than that.
    tau = 1.0
    extrapolated = lambda_k(MATTER, tau, 1e-4 * tau)
    direct = lambda_k(MATTER, tau, 0.05 * tau)
    assert extrapolated == pytest.approx(direct, abs=5e-3)
    near_switch = lambda_k(MATTER, tau, 1.001e-3 * tau)
    assert extrapolated == pytest.approx(near_switch, abs=2e-2)


# ---------------------------------------------------------------------------
# metric_cartesian

def test_cartesian_on_gamma_is_minkowski():
    g = metric_cartesian(MATTER, 1.0, 0.0, 0.0, 0.0)
    assert np.allclose(g, np.diag([-1.0, 1.0, 1.0, 1.0]), atol=1e-12)


def test_cartesian_milne_is_minkowski():
    g = metric_cartesian(MILNE, 2.0, 0.3, -0.4, 0.8)
    assert np.allclose(g, np.diag([-1.0, 1.0, 1.0, 1.0]), atol=1e-9)


def test_cartesian_axis_block():
    tau, rho = 1.0, 0.6
    lam = lambda_k(RADIATION, tau, rho)
    g = metric_cartesian(RADIATION, tau, rho, 0.0, 0.0)
    assert g[1, 1] == pytest.approx(1.0, rel=1e-12)
    assert g[2, 2] == pytest.approx(1.0 + lam * rho * rho, rel=1e-10)
    assert g[3, 3] == pytest.approx(1.0 + lam * rho * rho, rel=1e-10)
    assert g[0, 0] == pytest.approx(g_tau_tau(RADIATION, tau, rho),
                                    rel=1e-10)


def test_cartesian_symmetric_no_time_space_mixing():
    g = metric_cartesian(MATTER, 1.2, 0.2, 0.3, -0.1)
    assert np.allclose(g, g.T, atol=0.0)
    assert np.allclose(g[0, 1:], 0.0, atol=1e-14)


def test_cartesian_rotation_covariance():
    rng = np.random.default_rng(7)
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    xyz = np.array([0.35, -0.2, 0.5])
    g1 = metric_cartesian(MATTER, 1.0, *xyz)
    g2 = metric_cartesian(MATTER, 1.0, *(q @ xyz))
    # spatial block transforms as a congruence, tau-tau slot unchanged
    assert g2[0, 0] == pytest.approx(g1[0, 0], rel=1e-10)
    assert np.allclose(g2[1:, 1:], q @ g1[1:, 1:] @ q.T, atol=1e-10)


def test_cross_term_small_by_finite_difference():
    # g(d/dtau, d/drho) assembled from finite-difference pushforwards of
    # the RW embedding; the chart construction makes it vanish.
    from fermirw import FermiEvent, rw_from_fermi
    tau, rho, h = 1.0, 0.8, 1e-5
    cosmo = RADIATION

    def embed(tt, rr):
        ev = rw_from_fermi(cosmo, FermiEvent(tt, rr))
        return ev.t, ev.chi

    t_tau = (embed(tau + h, rho)[0] - embed(tau - h, rho)[0]) / (2 * h)
    c_tau = (embed(tau + h, rho)[1] - embed(tau - h, rho)[1]) / (2 * h)
    t_rho = (embed(tau, rho + h)[0] - embed(tau, rho - h)[0]) / (2 * h)
    c_rho = (embed(tau, rho + h)[1] - embed(tau, rho - h)[1]) / (2 * h)
    ev = rw_from_fermi(cosmo, FermiEvent(tau, rho))
    a2 = cosmo.model.a(ev.t) ** 2
    cross = -t_tau * t_rho + a2 * c_tau * c_rho
    assert abs(cross) < 1e-6
