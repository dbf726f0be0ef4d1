"""Fermi velocities, Hubble velocities, and slice proper radii.

The Fermi velocity of a comoving test particle at comoving radius chi0 is
the rate of change, with respect to the observer's proper time, of the
proper distance to the particle measured in the observer's Fermi chart.
It stays below a model supremum (below the speed of light for expanding
models with a_inf = 0), unlike the Hubble velocity a'(tau) chi0 which can
be arbitrarily large.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cosmology import (Cosmology, hubble, make_power_law, sigma_breaks,
                        sigma_infinity)
from .errors import AccuracyError, DomainError
from .geodesics import chi_of_sigma, rho_of_sigma
from .numerics import (DEFAULT_CONFIG, NumericsConfig, find_root_monotone,
                       gamma_fn, integrate_sigma)

__all__ = [
    "VelocityReport",
    "hubble_speed",
    "fermi_speed",
    "fermi_speed_power_law",
    "fermi_speed_sup",
    "proper_radius",
    "proper_radius_power_law",
    "velocity_identity_residual",
    "power_law_geometry_relation",
    "sigma_of_chi",
]

_GROWTH_CAP = 60
# Fraction of sigma_infinity treated as the usable end of a finite slice.
_SLICE_MARGIN = 1e-12


@dataclass(frozen=True)
class VelocityReport:
    """Velocities of one comoving particle seen from the observer."""

    tau: float
    chi0: float
    sigma0: float
    rho: float
    v_fermi: float
    v_hubble: float


def _check_chi(chi0: float) -> float:
    if not (math.isfinite(chi0) and chi0 >= 0.0):
        raise DomainError(f"chi0 must be nonnegative and finite, got {chi0}")
    return float(chi0)


def hubble_speed(cosmo: Cosmology, tau: float, chi0: float) -> float:
    """Hubble velocity a'(tau) * chi0 of a comoving particle."""
    chi0 = _check_chi(chi0)
    if not (math.isfinite(tau) and tau > 0.0):
        raise DomainError(f"tau must be positive and finite, got {tau}")
    return float(cosmo.model.a_dot(tau)) * chi0


def sigma_of_chi(cosmo: Cosmology, tau: float, chi0: float,
                 cfg: NumericsConfig | None = None) -> float:
    """Stretch sigma0 at which the tau-slice geodesic meets comoving chi0.

    Solved in u = sqrt(sigma - 1) for conditioning near the observer.
    Raises DomainError when chi0 lies beyond the comoving reach of the
    slice (bounded chi range), AccuracyError when bracket growth exhausts
    its cap on a chart with unbounded reach.
    """
    cfg = cfg or DEFAULT_CONFIG
    chi0 = _check_chi(chi0)
    if chi0 == 0.0:
        return 1.0

    def chi_at(u: float) -> float:
        return chi_of_sigma(cosmo, tau, 1.0 + u * u, cfg)

    s_inf = sigma_infinity(cosmo, tau)
    if math.isfinite(s_inf):
        u_hi = math.sqrt(s_inf * (1.0 - _SLICE_MARGIN) - 1.0)
        if chi_at(u_hi) < chi0:
            raise DomainError(
                f"chi0={chi0:g} beyond the comoving reach of the tau={tau:g} "
                f"slice (sigma_infinity={s_inf:g})")
    else:
        u_hi = 1.0
        prev = chi_at(u_hi)
        prev_inc = None
        stalls = 0
        for _ in range(_GROWTH_CAP):
            if prev >= chi0:
                break
            u_hi *= 2.0
            cur = chi_at(u_hi)
            inc = cur - prev
            if inc <= 1e-12 * max(1.0, chi0):
                stalls += 1
                if stalls >= 2:
                    raise DomainError(
                        f"chi0={chi0:g} beyond the comoving reach of the "
                        f"tau={tau:g} slice (chi saturates near {cur:g})")
            else:
                stalls = 0
                # Increments decaying geometrically bound the total
                # remaining growth; a target beyond that bound is beyond
                # the slice even though each doubling still makes progress.
                if prev_inc is not None and inc < 0.9 * prev_inc:
                    ratio = inc / prev_inc
                    reach = cur + 1.5 * inc * ratio / (1.0 - ratio)
                    if reach < chi0:
                        raise DomainError(
                            f"chi0={chi0:g} beyond the comoving reach of "
                            f"the tau={tau:g} slice (chi saturates near "
                            f"{reach:g})")
            prev_inc = inc
            prev = cur
        else:
            raise AccuracyError(
                f"sigma bracket growth cap {_GROWTH_CAP} reached for "
                f"chi0={chi0:g}", estimate=1.0 + u_hi * u_hi)
    u = find_root_monotone(lambda x: chi_at(x) - chi0, 0.0, u_hi, cfg)
    return 1.0 + u * u


def fermi_speed(cosmo: Cosmology, tau: float, chi0: float,
                cfg: NumericsConfig | None = None) -> VelocityReport:
    """Fermi velocity of the comoving particle at chi0 on the tau slice.

    v_fermi = (a'(tau)/2) [ I1 + a(tau) I2 - (a(tau)/sigma0) I3 ]
    with I1, I2, I3 the sigma integrals of b'(.)/(s^(3/2) sqrt(s-1)),
    b''(.)/(s^2 sqrt(s-1)), and b''(.)/(s sqrt(s-1)) up to sigma0.
    """
    cfg = cfg or DEFAULT_CONFIG
    chi0 = _check_chi(chi0)
    v_h = hubble_speed(cosmo, tau, chi0)
    if chi0 == 0.0:
        return VelocityReport(tau, 0.0, 1.0, 0.0, 0.0, 0.0)
    sigma0 = sigma_of_chi(cosmo, tau, chi0, cfg)
    m = cosmo.model
    a0 = float(m.a(tau))
    adot = float(m.a_dot(tau))
    knots = sigma_breaks(cosmo, tau, sigma0)
    i1 = integrate_sigma(
        lambda s: m.b_dot(a0 / np.sqrt(s)) / (s ** 1.5 * np.sqrt(s - 1.0)),
        1.0, sigma0, cfg, breaks=knots)
    i2 = integrate_sigma(
        lambda s: m.b_ddot(a0 / np.sqrt(s)) / (s ** 2 * np.sqrt(s - 1.0)),
        1.0, sigma0, cfg, breaks=knots)
    i3 = integrate_sigma(
        lambda s: m.b_ddot(a0 / np.sqrt(s)) / (s * np.sqrt(s - 1.0)),
        1.0, sigma0, cfg, breaks=knots)
    v_f = 0.5 * adot * (i1 + a0 * i2 - a0 / sigma0 * i3)
    rho = 0.5 * a0 * i1
    return VelocityReport(tau, chi0, sigma0, rho, v_f, v_h)


def fermi_speed_power_law(alpha: float, sigma0: float,
                          cfg: NumericsConfig | None = None) -> float:
    """Fermi velocity for a(t) = t**alpha as a function of sigma0 alone.

    v = (1/(2 alpha)) [ int_1^s0 s^(-1/(2a)-1) (s-1)^(-1/2) ds
        + ((alpha-1)/s0) int_1^s0 s^(-1/(2a)) (s-1)^(-1/2) ds ]

    Independent of tau; sigma0 may be inf, giving the supremum.
    """
    cfg = cfg or DEFAULT_CONFIG
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"power-law exponent must be in (0, 1], got {alpha}")
    if not sigma0 >= 1.0:
        raise DomainError(f"sigma0 must be >= 1, got {sigma0}")
    if sigma0 == 1.0:
        return 0.0
    p = 1.0 / (2.0 * alpha)
    first = integrate_sigma(
        lambda s: s ** (-p - 1.0) / np.sqrt(s - 1.0), 1.0, sigma0, cfg)
    if alpha == 1.0 or math.isinf(sigma0):
        return p * first
    second = integrate_sigma(
        lambda s: s ** (-p) / np.sqrt(s - 1.0), 1.0, sigma0, cfg)
    return p * (first + (alpha - 1.0) / sigma0 * second)


def fermi_speed_sup(alpha: float) -> float:
    """Least upper bound of the power-law Fermi velocity over all sigma0.

    sqrt(pi) Gamma(1/(2 alpha) + 1/2) / (2 alpha Gamma(1/(2 alpha) + 1)),
    which is at most 1/alpha with equality only for alpha = 1.
    """
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"power-law exponent must be in (0, 1], got {alpha}")
    p = 1.0 / (2.0 * alpha)
    return math.sqrt(math.pi) * gamma_fn(p + 0.5) / (2.0 * alpha * gamma_fn(p + 1.0))


def proper_radius(cosmo: Cosmology, tau: float,
                  cfg: NumericsConfig | None = None) -> float:
    """Proper radius rho_M of the constant-tau Fermi slice.

    (a(tau)/2) * integral_1^sigma_infinity b'(a/sqrt(s)) / (s^(3/2)
    sqrt(s-1)) ds; finite sigma_infinity is clipped just inside the slice.
    Always at most the Hubble radius 1/H(tau).
    """
    cfg = cfg or DEFAULT_CONFIG
    s_inf = sigma_infinity(cosmo, tau)
    if math.isfinite(s_inf):
        s_end = s_inf * (1.0 - _SLICE_MARGIN)
    else:
        s_end = math.inf
    m = cosmo.model
    a0 = float(m.a(tau))
    val = integrate_sigma(
        lambda s: m.b_dot(a0 / np.sqrt(s)) / (s ** 1.5 * np.sqrt(s - 1.0)),
        1.0, s_end, cfg)
    return 0.5 * a0 * val


def proper_radius_power_law(alpha: float, tau: float) -> float:
    """Closed-form slice radius tau * sqrt(pi) G(1/(2a)+1/2)/(2a G(1/(2a)+1))."""
    if not (math.isfinite(tau) and tau > 0.0):
        raise DomainError(f"tau must be positive and finite, got {tau}")
    return tau * fermi_speed_sup(alpha)


def velocity_identity_residual(cosmo: Cosmology, tau: float, chi0: float,
                               cfg: NumericsConfig | None = None,
                               rel_step: float = 1e-4) -> float:
    """|v_fermi - (H rho + a d/dtau (rho/a))| at fixed chi0.

    The tau derivative is taken by central finite differences, so the
    residual is dominated by O(rel_step^2) discretisation error.
    """
    cfg = cfg or DEFAULT_CONFIG
    chi0 = _check_chi(chi0)
    if chi0 == 0.0:
        return 0.0
    rep = fermi_speed(cosmo, tau, chi0, cfg)

    def rho_at(tp: float) -> float:
        s0 = sigma_of_chi(cosmo, tp, chi0, cfg)
        return rho_of_sigma(cosmo, tp, s0, cfg)

    h = rel_step * tau
    ratio_plus = rho_at(tau + h) / float(cosmo.model.a(tau + h))
    ratio_minus = rho_at(tau - h) / float(cosmo.model.a(tau - h))
    ddtau = (ratio_plus - ratio_minus) / (2.0 * h)
    rhs = hubble(cosmo, tau) * rep.rho + float(cosmo.model.a(tau)) * ddtau
    return abs(rep.v_fermi - rhs)


def power_law_geometry_relation(alpha: float, tau: float, sigma0: float,
                                cfg: NumericsConfig | None = None
                                ) -> tuple[float, float]:
    """Both sides of v = rho/tau + ((alpha-1)/(2 alpha sigma0)) * I.

    lhs is the direct Fermi velocity, rhs re-expresses it through the
    proper distance; I is the integral of s^(-1/(2 alpha)) (s-1)^(-1/2).
    Both sides are computed by independent quadratures.
    """
    cfg = cfg or DEFAULT_CONFIG
    if not sigma0 > 1.0:
        raise DomainError(f"sigma0 must exceed 1, got {sigma0}")
    lhs = fermi_speed_power_law(alpha, sigma0, cfg)
    cosmo = Cosmology(make_power_law(alpha), k=0)
    rho = rho_of_sigma(cosmo, tau, sigma0, cfg)
    p = 1.0 / (2.0 * alpha)
    tail = integrate_sigma(
        lambda s: s ** (-p) / np.sqrt(s - 1.0), 1.0, sigma0, cfg)
    rhs = rho / tau + (alpha - 1.0) / (2.0 * alpha * sigma0) * tail
    return lhs, rhs
