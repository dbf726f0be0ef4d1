"""Quadrature, root finding, and special functions tuned for sigma integrals.

The geodesic and metric maps all reduce to integrals over the stretch
variable sigma with an integrable (sigma - 1)^(-1/2) endpoint singularity
and, for proper radii, an infinite upper limit.  ``integrate_sigma`` removes
the singularity with sigma = 1 + u^2 and compactifies the tail with
s = 1/sqrt(sigma) before handing the smooth transformed integrand to an
adaptive Gauss-Kronrod (G7, K15) kernel.  None of the Kronrod nodes sit on
an interval endpoint, so transformed integrands are never evaluated at the
singular points themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .errors import AccuracyError, BracketError, DomainError

__all__ = [
    "NumericsConfig",
    "DEFAULT_CONFIG",
    "table_safe_config",
    "integrate_sigma",
    "find_root_monotone",
    "gamma_fn",
    "hyp2f1",
]


@dataclass(frozen=True)
class NumericsConfig:
    """Shared tolerance knobs threaded through every numerical routine."""

    quad_rel_tol: float = 1e-12
    quad_abs_tol: float = 1e-14
    root_tol: float = 1e-12
    max_iter: int = 500
    sigma_cap: float = 1e12


DEFAULT_CONFIG = NumericsConfig()


def table_safe_config(cfg: NumericsConfig) -> NumericsConfig:
    """Floor quadrature tolerances to what interpolated tables can meet.

    Piecewise interpolants carry kinks in their higher derivatives, so
    asking the quadrature for less than the interpolation error just
    burns subdivisions until the iteration cap trips.
    """
    return replace(cfg, quad_rel_tol=max(cfg.quad_rel_tol, 1e-10),
                   quad_abs_tol=max(cfg.quad_abs_tol, 1e-12))

# 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
# Positive half of the node set, descending; the full rule is symmetric.
_XGK_HALF = (
    0.99145537112081263921,
    0.94910791234275852453,
    0.86486442335976907279,
    0.74153118559939443986,
    0.58608723546769113029,
    0.40584515137739716691,
    0.20778495500789846760,
    0.0,
)
_WGK_HALF = (
    0.02293532201052922496,
    0.06309209262997855329,
    0.10479001032225018384,
    0.14065325971552591875,
    0.16900472663926790283,
    0.19035057806478540991,
    0.20443294007529889241,
    0.20948214108472782801,
)
_WG_HALF = (
    0.12948496616886969327,
    0.27970539148927666790,
    0.38183005050511894495,
    0.41795918367346938776,
)

_NODES = np.array(
    [-x for x in _XGK_HALF[:-1]] + [0.0] + [x for x in _XGK_HALF[-2::-1]]
)
_WK = np.array(list(_WGK_HALF[:-1]) + [_WGK_HALF[-1]] + list(_WGK_HALF[-2::-1]))
# Gauss weights aligned with the Kronrod node ordering; zero at pure
# Kronrod nodes.  The embedded Gauss nodes are every second entry.
_WG = np.zeros(15)
_WG[1:14:2] = list(_WG_HALF[:-1]) + [_WG_HALF[-1]] + list(_WG_HALF[-2::-1])

_EPS = np.finfo(float).eps


def _panel(f: Callable, a: float, b: float) -> tuple[float, float, float]:
    """One G7/K15 panel on [a, b]: (kronrod value, error estimate, resabs)."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    y = np.asarray(f(mid + half * _NODES), dtype=float)
    knd = half * float(np.dot(_WK, y))
    gss = half * float(np.dot(_WG, y))
    resabs = abs(half) * float(np.dot(_WK, np.abs(y)))
    delta = abs(knd - gss)
    err = min(delta, (200.0 * delta) ** 1.5) if delta > 0.0 else 0.0
    return knd, err, resabs


def _adaptive(f: Callable, a: float, b: float, rel_tol: float, abs_tol: float,
              max_iter: int) -> float:
    """Adaptive bisection driven by the worst-panel error estimate."""
    if a == b:
        return 0.0
    val, err, resabs = _panel(f, a, b)
    panels = [(err, a, b, val)]
    total, total_err, total_resabs = val, err, resabs
    for _ in range(max_iter):
        floor = 50.0 * _EPS * total_resabs
        if total_err <= max(abs_tol, rel_tol * abs(total), floor):
            return total
        worst = max(range(len(panels)), key=lambda i: panels[i][0])
        werr, wa, wb, wval = panels.pop(worst)
        m = 0.5 * (wa + wb)
        lv, le, lr = _panel(f, wa, m)
        rv, re, rr = _panel(f, m, wb)
        panels.append((le, wa, m, lv))
        panels.append((re, m, wb, rv))
        total += lv + rv - wval
        total_err += le + re - werr
        total_resabs += lr + rr
    floor = 50.0 * _EPS * total_resabs
    if total_err <= max(abs_tol, rel_tol * abs(total), floor):
        return total
    raise AccuracyError(
        f"quadrature did not converge after {max_iter} subdivisions "
        f"(estimate {total:.17g}, error bound {total_err:.3g})",
        estimate=total, bound=total_err)


def _clean_breaks(breaks, lo: float, hi: float) -> list[float]:
    """Sorted interior breakpoints, deduplicated and clear of the ends."""
    if not breaks:
        return []
    out: list[float] = []
    for p in sorted(breaks):
        if p <= lo * (1.0 + 1e-12) or p >= hi * (1.0 - 1e-12):
            continue
        if out and p <= out[-1] * (1.0 + 1e-12):
            continue
        out.append(float(p))
    return out


def _adaptive_pieces(g: Callable, nodes: list[float], rel: float,
                     absb: float, max_iter: int) -> float:
    total = 0.0
    share = absb / max(1, len(nodes) - 1)
    for a, b in zip(nodes[:-1], nodes[1:]):
        total += _adaptive(g, a, b, rel, share, max_iter)
    return total


def integrate_sigma(f: Callable, sigma_lo: float, sigma_hi: float,
                    cfg: NumericsConfig | None = None,
                    breaks=None) -> float:
    """Integrate f(sigma) over [sigma_lo, sigma_hi], sigma_hi may be inf.

    f must accept numpy arrays of sigma values and may carry an integrable
    endpoint singularity no worse than (sigma - 1)^(-1/2) at sigma = 1.
    Infinite upper limits are mapped through s = 1/sqrt(sigma) when the
    integrand decays fast enough; slower tails fall back to truncation at
    cfg.sigma_cap with a log-slope tail estimate, raising AccuracyError when
    the estimated tail exceeds the tolerance budget.

    breaks lists interior sigma points where f loses smoothness (knots of
    interpolated models); the range is integrated piecewise between them,
    which keeps panel error estimates honest across jumps of f or its
    derivatives.
    """
    cfg = cfg or DEFAULT_CONFIG
    if not sigma_lo >= 1.0:
        raise DomainError(f"sigma_lo must be >= 1, got {sigma_lo}")
    if not sigma_hi > sigma_lo:
        if sigma_hi == sigma_lo:
            return 0.0
        raise DomainError(f"need sigma_lo < sigma_hi, got [{sigma_lo}, {sigma_hi}]")

    if math.isinf(sigma_hi):
        return _integrate_infinite(f, sigma_lo, cfg, breaks)
    if sigma_hi - 1.0 < 1e-11:
        return _near_one_fit(f, sigma_lo, sigma_hi)

    pts = _clean_breaks(breaks, sigma_lo, sigma_hi)
    rel = 0.5 * cfg.quad_rel_tol
    absb = 0.5 * cfg.quad_abs_tol
    split = min(sigma_hi, 2.0)
    total = 0.0
    if sigma_lo < split:
        # sigma = 1 + u^2 absorbs the sqrt singularity at the left edge.
        u_nodes = [math.sqrt(s - 1.0) for s in
                   [sigma_lo] + [p for p in pts if p < split] + [split]]
        total += _adaptive_pieces(_u_integrand(f), u_nodes, rel, absb,
                                  cfg.max_iter)
    if sigma_hi > 2.0:
        lo = max(sigma_lo, 2.0)
        # s = 1/sqrt(sigma) keeps large-sigma panels well conditioned.
        s_nodes = [1.0 / math.sqrt(s) for s in
                   [sigma_hi] + [p for p in reversed(pts) if p > lo] + [lo]]
        total += _adaptive_pieces(lambda s: f(s ** -2.0) * 2.0 * s ** -3.0,
                                  s_nodes, rel, absb, cfg.max_iter)
    return total


def _u_integrand(f: Callable) -> Callable:
    """Transformed integrand for sigma = 1 + u^2.

    The Jacobian 2u is written as 2*sqrt(sigma - 1) with sigma - 1 taken
    from the rounded sigma actually passed to f, so an exact
    (sigma - 1)^(-1/2) singular factor in f cancels to machine precision.
    """
    def g(u):
        sigma = 1.0 + u * u
        return f(sigma) * 2.0 * np.sqrt(sigma - 1.0)
    return g


def _near_one_fit(f: Callable, sigma_lo: float, sigma_hi: float) -> float:
    """Two-point fit c1/sqrt(sigma-1) + c0 for a degenerate [lo, hi] sliver.

    Used when sigma_hi - 1 is so small that 1 + u^2 cannot resolve the
    substitution; the fit error is O(sigma_hi - 1) relative.
    """
    width = sigma_hi - 1.0
    m1 = 1.0 + 0.25 * width
    m2 = 1.0 + 0.75 * width
    y1 = float(f(np.array([m1]))[0])
    y2 = float(f(np.array([m2]))[0])
    r1, r2 = math.sqrt(m1 - 1.0), math.sqrt(m2 - 1.0)
    c1 = (y1 - y2) / (1.0 / r1 - 1.0 / r2)
    c0 = y1 - c1 / r1
    lo_r = math.sqrt(sigma_lo - 1.0)
    hi_r = math.sqrt(sigma_hi - 1.0)
    return 2.0 * c1 * (hi_r - lo_r) + c0 * (sigma_hi - sigma_lo)


def _integrate_infinite(f: Callable, sigma_lo: float,
                        cfg: NumericsConfig, breaks=None) -> float:
    cap = cfg.sigma_cap
    probe = np.abs(np.asarray(f(np.array([cap / 100.0, cap])), dtype=float))
    f_near, f_far = float(probe[0]), float(probe[1])
    if f_far > 0.0 and f_near > 0.0:
        q = math.log(f_near / f_far) / math.log(100.0)
    else:
        q = math.inf    # tail numerically dead, the s map is safe
    if q >= 1.25:
        pts = _clean_breaks(breaks, sigma_lo, math.inf)
        rel = 0.5 * cfg.quad_rel_tol
        absb = 0.5 * cfg.quad_abs_tol
        total = 0.0
        split = max(sigma_lo, 2.0)
        if sigma_lo < 2.0:
            u_nodes = [math.sqrt(s - 1.0) for s in
                       [sigma_lo] + [p for p in pts if p < 2.0]] + [1.0]
            total += _adaptive_pieces(_u_integrand(f), u_nodes, rel, absb,
                                      cfg.max_iter)
        s_nodes = [0.0] + [1.0 / math.sqrt(p) for p in reversed(pts)
                           if p > split] + [1.0 / math.sqrt(split)]
        total += _adaptive_pieces(lambda s: f(s ** -2.0) * 2.0 * s ** -3.0,
                                  s_nodes, rel, absb, cfg.max_iter)
        return total
    # Slowly decaying tail: truncate and bound what was dropped.
    partial = integrate_sigma(f, sigma_lo, cap, cfg, breaks)
    tail = f_far * cap / (q - 1.0) if q > 1.0 else math.inf
    budget = max(cfg.quad_abs_tol, cfg.quad_rel_tol * abs(partial))
    if tail > budget:
        raise AccuracyError(
            f"tail beyond sigma_cap={cap:g} estimated at {tail:.3g}, "
            f"exceeding the tolerance budget {budget:.3g}",
            estimate=partial, bound=tail)
    return partial


def find_root_monotone(g: Callable[[float], float], lo: float, hi: float,
                       cfg: NumericsConfig | None = None) -> float:
    """Bracketed root of a monotone continuous g via Brent's method.

    Derivative-free: combines bisection with secant/inverse-quadratic steps
    and never leaves [lo, hi].  Raises BracketError when g(lo) and g(hi)
    share a sign, AccuracyError when cfg.max_iter iterations do not shrink
    the bracket below root_tol * max(1, |x|).
    """
    cfg = cfg or DEFAULT_CONFIG
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise DomainError(f"invalid bracket [{lo}, {hi}]")
    xpre, xcur = lo, hi
    fpre, fcur = float(g(xpre)), float(g(xcur))
    if fpre == 0.0:
        return xpre
    if fcur == 0.0:
        return xcur
    # Sign tests, not products: products of subnormal residuals underflow
    # to zero and silently corrupt the bracket bookkeeping.
    if (fpre < 0.0) == (fcur < 0.0):
        raise BracketError(
            f"no sign change on [{lo}, {hi}]: g(lo)={fpre:.6g}, g(hi)={fcur:.6g}")

    xblk, fblk = 0.0, 0.0
    spre = scur = 0.0
    for _ in range(cfg.max_iter):
        if fcur != 0.0 and (fpre < 0.0) != (fcur < 0.0):
            xblk, fblk = xpre, fpre
            spre = scur = xcur - xpre
        if abs(fblk) < abs(fcur):
            xpre, xcur, xblk = xcur, xblk, xcur
            fpre, fcur, fblk = fcur, fblk, fcur

        delta = 0.5 * cfg.root_tol * max(1.0, abs(xcur))
        sbis = 0.5 * (xblk - xcur)
        if fcur == 0.0 or abs(sbis) < delta:
            return xcur

        if abs(spre) > delta and abs(fcur) < abs(fpre):
            if xpre == xblk:
                stry = -fcur * (xcur - xpre) / (fcur - fpre)
            else:
                dpre = (fpre - fcur) / (xpre - xcur)
                dblk = (fblk - fcur) / (xblk - xcur)
                stry = -fcur * (fblk * dblk - fpre * dpre) / \
                    (dblk * dpre * (fblk - fpre))
            if 2.0 * abs(stry) < min(abs(spre), 3.0 * abs(sbis) - delta):
                spre, scur = scur, stry
            else:
                spre, scur = sbis, sbis
        else:
            spre, scur = sbis, sbis

        xpre, fpre = xcur, fcur
        if abs(scur) > delta:
            xcur += scur
        else:
            xcur += delta if sbis > 0.0 else -delta
        fcur = float(g(xcur))
    raise AccuracyError(
        f"root iteration cap {cfg.max_iter} reached near x={xcur:.17g}",
        estimate=xcur, bound=abs(sbis))


# Lanczos approximation, g = 7, nine coefficients.
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _gamma_any(x: float) -> float:
    """Gamma on the real line away from poles (internal, signed)."""
    if x <= 0.0 and x == math.floor(x):
        raise DomainError(f"gamma pole at x={x}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * _gamma_any(1.0 - x))
    z = x - 1.0
    acc = _LANCZOS[0]
    for i, c in enumerate(_LANCZOS[1:], start=1):
        acc += c / (z + i)
    t = z + 7.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * acc


def gamma_fn(x: float) -> float:
    """Gamma function for positive real x."""
    if not (math.isfinite(x) and x > 0.0):
        raise DomainError(f"gamma_fn requires x > 0, got {x}")
    return _gamma_any(x)


_SERIES_MAX_TERMS = 10000


def _hyp_series(a: float, b: float, c: float, z: float) -> float:
    """Plain Gauss series; caller guarantees convergence for |z| < 1."""
    term = 1.0
    acc = 1.0
    for n in range(_SERIES_MAX_TERMS):
        term *= (a + n) * (b + n) / ((c + n) * (1.0 + n)) * z
        acc += term
        if abs(term) <= 2.0 * _EPS * abs(acc):
            return acc
    raise AccuracyError(
        f"hypergeometric series stalled at z={z}", estimate=acc,
        bound=abs(term))


def hyp2f1(a: float, b: float, c: float, z: float) -> float:
    """Gauss hypergeometric 2F1(a, b; c; z) for z in [0, 1].

    Direct series away from z = 1; near the endpoint a 1-z connection
    formula restores geometric convergence.  At z = 1 the Gauss summation
    theorem applies and requires c - a - b > 0.
    """
    if c <= 0.0 and c == math.floor(c):
        raise DomainError(f"2F1 undefined at non-positive integer c={c}")
    if not 0.0 <= z <= 1.0:
        raise DomainError(f"argument z={z} outside [0, 1]")
    m = c - a - b
    if z == 1.0:
        if m <= 0.0:
            raise DomainError(
                f"2F1 diverges at z=1 when c-a-b={m:.6g} <= 0")
        return _gamma_any(c) * _gamma_any(m) / (
            _gamma_any(c - a) * _gamma_any(c - b))
    if z <= 0.75:
        return _hyp_series(a, b, c, z)
    if m == math.floor(m):
        # Integer c-a-b would need the logarithmic connection formula;
        # retry the plain series, which still converges for z < 1.
        return _hyp_series(a, b, c, z)
    w = 1.0 - z
    first = (_gamma_any(c) * _gamma_any(m)
             / (_gamma_any(c - a) * _gamma_any(c - b))
             * _hyp_series(a, b, a + b - c + 1.0, w))
    second = (w ** m * _gamma_any(c) * _gamma_any(-m)
              / (_gamma_any(a) * _gamma_any(b))
              * _hyp_series(c - a, c - b, m + 1.0, w))
    return first + second
