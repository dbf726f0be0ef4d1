"""Scale-factor models and the cosmology container.

A model packages the scale factor a(t), its derivative, and the inverse
function b = a^(-1) together with the two quantities chart construction
cares about: the early-time limit a_inf = lim a(t) as t -> 0+ and whether
b is convex (b'' >= 0), which decides if the Fermi chart covers the whole
spacetime slice or only a bounded region.

All callables accept scalars or numpy arrays; time is restricted to t > 0
and the comoving-observer age tau plays the same role.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import DomainError, TableError, UnsupportedCurvatureError

__all__ = [
    "ScaleFactorModel",
    "Cosmology",
    "make_power_law",
    "make_exponential",
    "make_tabulated",
    "load_table",
    "hubble",
    "sigma_infinity",
    "sigma_breaks",
]

MIN_TABLE_SAMPLES = 4


@dataclass(frozen=True)
class ScaleFactorModel:
    """Scale factor a, inverse b, and their derivatives.

    a_inf is the limit of a(t) for t -> 0+; zero means the scale factor
    runs down to a big bang.  global_chart records b'' >= 0, the condition
    under which every event of the slice lies in the Fermi chart.
    """

    a: Callable
    a_dot: Callable
    b: Callable
    b_dot: Callable
    b_ddot: Callable
    a_inf: float
    global_chart: bool
    # Knot a-values of interpolated models: points where derivative
    # interpolants switch polynomial pieces.  None for analytic models.
    a_grid: tuple[float, ...] | None = None


@dataclass(frozen=True)
class Cosmology:
    """A scale-factor model with its spatial curvature index k in {0, -1}."""

    model: ScaleFactorModel
    k: int
    name: str = ""

    def __post_init__(self):
        if self.k not in (0, -1):
            raise UnsupportedCurvatureError(
                f"curvature k={self.k} unsupported; use 0 or -1")


def make_power_law(alpha: float) -> ScaleFactorModel:
    """a(t) = t**alpha for 0 < alpha <= 1; b(x) = x**(1/alpha)."""
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"power-law exponent must be in (0, 1], got {alpha}")
    p = 1.0 / alpha
    return ScaleFactorModel(
        a=lambda t: t ** alpha,
        a_dot=lambda t: alpha * t ** (alpha - 1.0),
        b=lambda x: x ** p,
        b_dot=lambda x: p * x ** (p - 1.0),
        b_ddot=lambda x: p * (p - 1.0) * x ** (p - 2.0),
        a_inf=0.0,
        global_chart=True,
    )


def make_exponential(h0: float) -> ScaleFactorModel:
    """a(t) = exp(h0 t) with constant Hubble rate h0 > 0.

    The early-time limit is a_inf = 1, so the Fermi chart of any observer
    covers only a bounded sigma range (global_chart is False: b'' < 0).
    """
    if not h0 > 0.0:
        raise DomainError(f"expansion rate must be positive, got {h0}")
    return ScaleFactorModel(
        a=lambda t: np.exp(h0 * t),
        a_dot=lambda t: h0 * np.exp(h0 * t),
        b=lambda x: np.log(x) / h0,
        b_dot=lambda x: 1.0 / (h0 * x),
        b_ddot=lambda x: -1.0 / (h0 * x * x),
        a_inf=1.0,
        global_chart=False,
    )


def make_tabulated(samples: Sequence[tuple[float, float]]) -> ScaleFactorModel:
    """Monotone shape-preserving cubic model through (t, a) samples.

    b comes from interpolating the swapped (a, t) pairs, not from inverting
    the a interpolant, so the two curves are each exact at the knots.
    Second derivatives of the interpolant are only O(h) accurate.
    """
    if len(samples) < MIN_TABLE_SAMPLES:
        raise TableError(
            f"need at least {MIN_TABLE_SAMPLES} samples, got {len(samples)}")
    ts = np.array([float(s[0]) for s in samples])
    avals = np.array([float(s[1]) for s in samples])
    if ts[0] <= 0.0:
        raise TableError(f"sample 0 has t={ts[0]:g}; times must be positive")
    for i in range(1, len(ts)):
        if ts[i] <= ts[i - 1]:
            raise TableError(f"t samples not strictly increasing at index {i}")
        if avals[i] <= avals[i - 1]:
            raise TableError(f"a samples not strictly increasing at index {i}")
    if avals[0] <= 0.0:
        raise TableError(f"sample 0 has a={avals[0]:g}; scale factor must be positive")

    a_interp = PchipInterpolator(ts, avals, extrapolate=True)
    b_interp = PchipInterpolator(avals, ts, extrapolate=True)
    a_dot = a_interp.derivative(1)
    b_dot = b_interp.derivative(1)
    b_ddot = b_interp.derivative(2)

    a_inf = max(0.0, float(a_interp(0.0)))
    probe = np.linspace(avals[0], avals[-1], 257)
    curv = b_ddot(probe)
    scale = float(np.max(np.abs(curv))) or 1.0
    global_chart = bool(np.all(curv >= -1e-8 * scale))

    return ScaleFactorModel(
        a=a_interp, a_dot=a_dot, b=b_interp, b_dot=b_dot, b_ddot=b_ddot,
        a_inf=a_inf, global_chart=global_chart,
        a_grid=tuple(float(v) for v in avals),
    )


def load_table(path: str | Path) -> list[tuple[float, float]]:
    """Read (t, a) samples from a two-column CSV (header ``t,a``) or a JSON
    array of [t, a] pairs, chosen by file extension."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        try:
            raw = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise TableError(f"{path}: invalid JSON ({exc})") from exc
        if not isinstance(raw, list):
            raise TableError(f"{path}: expected a JSON array of [t, a] pairs")
        out = []
        for i, row in enumerate(raw):
            if not isinstance(row, (list, tuple)) or len(row) != 2:
                raise TableError(f"{path}: entry {i} is not a [t, a] pair")
            out.append((float(row[0]), float(row[1])))
        return out
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise TableError(f"{path}: empty file") from None
        if [h.strip().lower() for h in header] != ["t", "a"]:
            raise TableError(f"{path}: expected header 't,a', got {header}")
        out = []
        for i, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise TableError(f"{path}: line {i} does not have two columns")
            try:
                out.append((float(row[0]), float(row[1])))
            except ValueError as exc:
                raise TableError(f"{path}: line {i}: {exc}") from exc
        return out


def _check_time(tau: float) -> float:
    if not (math.isfinite(tau) and tau > 0.0):
        raise DomainError(f"time must be positive and finite, got {tau}")
    return float(tau)


def hubble(cosmo: Cosmology, tau: float) -> float:
    """Hubble rate H(tau) = a'(tau)/a(tau)."""
    tau = _check_time(tau)
    return float(cosmo.model.a_dot(tau)) / float(cosmo.model.a(tau))


def sigma_infinity(cosmo: Cosmology, tau: float) -> float:
    """Least upper bound of the stretch sigma on the tau slice.

    Infinite when the scale factor runs down to zero (a_inf = 0),
    otherwise (a(tau)/a_inf)^2.
    """
    tau = _check_time(tau)
    if cosmo.model.a_inf == 0.0:
        return math.inf
    return (float(cosmo.model.a(tau)) / cosmo.model.a_inf) ** 2


def sigma_breaks(cosmo: Cosmology, tau: float,
                 sigma_hi: float) -> tuple[float, ...] | None:
    """Interior sigma points where slice integrands lose smoothness.

    Interpolated models have piecewise-polynomial derivatives; a geodesic
    integrand evaluated at a(tau)/sqrt(s) crosses one knot a_k at
    s = (a(tau)/a_k)^2.  Quadrature split at these points converges per
    piece.  None for analytic models.
    """
    grid = cosmo.model.a_grid
    if grid is None:
        return None
    tau = _check_time(tau)
    a0 = float(cosmo.model.a(tau))
    out = []
    for a_k in reversed(grid):
        if a_k >= a0:
            continue
        s = (a0 / a_k) ** 2
        if s >= sigma_hi:
            break
        if s > 1.0 + 1e-12:
            out.append(s)
    return tuple(out)
