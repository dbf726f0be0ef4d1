"""Metric components of the Fermi chart, in polar and Cartesian form.

Signature convention is (-, +, +, +) with the observer at rho = 0, where
the metric is exactly Minkowski.  The radial component g_rho_rho is
identically 1 because rho is proper distance along the slice geodesics;
all nontrivial structure sits in g_tau_tau and the angular coefficient.
"""

from __future__ import annotations

import math

from dataclasses import dataclass

import numpy as np

from .chart import sigma_of_rho
from .cosmology import Cosmology, sigma_breaks, sigma_infinity
from .errors import DomainError, UnsupportedCurvatureError
from .geodesics import chi_of_sigma
from .numerics import DEFAULT_CONFIG, NumericsConfig, integrate_sigma

__all__ = [
    "PolarMetric",
    "s_k",
    "g_tau_tau",
    "metric_polar",
    "lambda_k",
    "metric_cartesian",
]

# Below this fraction of tau the direct (ang - rho^2)/rho^4 form loses
# digits, so lambda_k switches to Richardson extrapolation toward rho=0.
_LAMBDA_RHO_FRACTION = 1e-3


@dataclass(frozen=True)
class PolarMetric:
    """Diagonal Fermi metric at one event: ds^2 = g_tau_tau dtau^2
    + g_rho_rho drho^2 + ang dOmega^2."""

    g_tau_tau: float
    g_rho_rho: float
    ang: float


def s_k(k: int, chi: float) -> float:
    """Comoving area radius: chi for flat, sinh(chi) for open sections."""
    if k == 0:
        return float(chi)
    if k == -1:
        return math.sinh(chi)
    raise UnsupportedCurvatureError(
        f"curvature index must be 0 or -1, got {k}")


def _g_tau_tau_at(cosmo: Cosmology, tau: float, sigma: float,
                  cfg: NumericsConfig) -> float:
    """g_tau_tau on the tau slice at geodesic parameter sigma.

    g = -(a'(tau))^2 [ b'(a/sqrt(sigma))
        + a (sqrt(sigma-1)/(2 sqrt(sigma))) * I ]^2
    with I the integral of b''(a/sqrt(s)) / (s sqrt(s-1)) from 1 to sigma.
    """
    m = cosmo.model
    a0 = float(m.a(tau))
    adot = float(m.a_dot(tau))
    root = math.sqrt(sigma)
    bracket = float(m.b_dot(a0 / root))
    if sigma > 1.0:
        ibb = integrate_sigma(
            lambda s: m.b_ddot(a0 / np.sqrt(s)) / (s * np.sqrt(s - 1.0)),
            1.0, sigma, cfg, breaks=sigma_breaks(cosmo, tau, sigma))
        bracket += a0 * math.sqrt(sigma - 1.0) / (2.0 * root) * ibb
    return -((adot * bracket) ** 2)


def g_tau_tau(cosmo: Cosmology, tau: float, rho: float,
              cfg: NumericsConfig | None = None) -> float:
    """Lapse component g_tau_tau at proper radius rho on the tau slice."""
    cfg = cfg or DEFAULT_CONFIG
    sigma = sigma_of_rho(cosmo, tau, rho, cfg)
    return _g_tau_tau_at(cosmo, tau, sigma, cfg)


def metric_polar(cosmo: Cosmology, tau: float, rho: float,
                 cfg: NumericsConfig | None = None) -> PolarMetric:
    """All polar metric components at (tau, rho).

    ang = a(tau)^2 S_k(chi)^2 / sigma, the squared proper area radius of
    the 2-sphere through the event.
    """
    cfg = cfg or DEFAULT_CONFIG
    sigma = sigma_of_rho(cosmo, tau, rho, cfg)
    if sigma == 1.0:
        return PolarMetric(_g_tau_tau_at(cosmo, tau, sigma, cfg), 1.0, 0.0)
    chi = chi_of_sigma(cosmo, tau, sigma, cfg)
    a0 = float(cosmo.model.a(tau))
    ang = a0 * a0 * s_k(cosmo.k, chi) ** 2 / sigma
    return PolarMetric(_g_tau_tau_at(cosmo, tau, sigma, cfg), 1.0, ang)


def _lambda_direct(cosmo: Cosmology, tau: float, rho: float,
                   cfg: NumericsConfig) -> float:
    ang = metric_polar(cosmo, tau, rho, cfg).ang
    return (ang - rho * rho) / rho ** 4


def lambda_k(cosmo: Cosmology, tau: float, rho: float,
             cfg: NumericsConfig | None = None) -> float:
    """Anisotropy coefficient lambda = (ang - rho^2) / rho^4.

    Finite as rho -> 0; small radii (below 1e-3 tau) are handled by
    Richardson extrapolation of the direct form, which is what makes the
    Cartesian metric smooth through the origin.
    """
    cfg = cfg or DEFAULT_CONFIG
    if not (math.isfinite(rho) and rho >= 0.0):
        raise DomainError(f"rho must be nonnegative and finite, got {rho}")
    rho_eps = _LAMBDA_RHO_FRACTION * tau
    if rho > rho_eps:
        return _lambda_direct(cosmo, tau, rho, cfg)
    lam1 = _lambda_direct(cosmo, tau, rho_eps, cfg)
    lam2 = _lambda_direct(cosmo, tau, 2.0 * rho_eps, cfg)
    return (4.0 * lam1 - lam2) / 3.0


def metric_cartesian(cosmo: Cosmology, tau: float, x: float, y: float,
                     z: float, cfg: NumericsConfig | None = None
                     ) -> np.ndarray:
    """Full 4x4 metric in Fermi Cartesian coordinates (tau, x, y, z).

    g_00 = g_tau_tau, g_0i = 0, and
    g_ij = delta_ij + lambda (rho^2 delta_ij - x_i x_j), so the spatial
    block is delta_ij along the radial direction and (ang/rho^2) delta_ij
    transversally.
    """
    cfg = cfg or DEFAULT_CONFIG
    xs = np.array([x, y, z], dtype=float)
    rho = float(np.sqrt(xs @ xs))
    g = np.diag([-1.0, 1.0, 1.0, 1.0])
    g[0, 0] = g_tau_tau(cosmo, tau, rho, cfg)
    if rho > 0.0:
        lam = lambda_k(cosmo, tau, rho, cfg)
        g[1:, 1:] += lam * (rho * rho * np.eye(3) - np.outer(xs, xs))
    return g
