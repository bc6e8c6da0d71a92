"""Characteristic structure of the Lagrangian system.

Eigenvalues are ``-lambda, 0, +lambda`` with ``lambda`` the Lagrangian sound
speed. The acoustic fields stop being genuinely nonlinear on the zero set
of the inflection function ``f(alpha, T)``, a bounded pocket at low
temperature and low ionization.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .numerics import Bracket, find_root
from .thermo import (
    DomainError,
    GasModel,
    ThermoState,
    partials_alphaT,
    pressure_from_alphaT,
    sound_speed_sq_alphaT,
    alpha_from_pT,
)

__all__ = [
    "GN_TAU_THRESHOLD",
    "EigenDecomposition",
    "InflectionCurve",
    "lagrangian_sound_speed",
    "eulerian_speeds",
    "eigen",
    "inflection_f",
    "gnl_indicator",
    "gnl_log_derivative",
    "gn_cubic",
    "gn_threshold_root",
    "is_gn_sufficient",
    "trace_inflection_locus",
]

# Ti/T below this value certifies genuine nonlinearity; it sits just under
# the real root 54.53750821... of x^3 - 51 x^2 - 180 x - 705.
GN_TAU_THRESHOLD = 54.5375


def gn_cubic(x: float) -> float:
    """Cubic whose real root bounds the temperature-only nonlinearity certificate."""
    return ((x - 51.0) * x - 180.0) * x - 705.0


def gn_threshold_root() -> float:
    """Real root of :func:`gn_cubic`, about 54.5375."""
    return find_root(gn_cubic, Bracket(50.0, 60.0))


def lagrangian_sound_speed(g: GasModel, p: float, T: float) -> float:
    """Lagrangian sound speed ``lambda = rho c`` at ``(p, T)``."""
    alpha = alpha_from_pT(g, p, T)
    return math.sqrt(sound_speed_sq_alphaT(g, alpha, T, 1.0)) * p


def eulerian_speeds(u: float, state: ThermoState) -> tuple[float, float, float]:
    """Eulerian characteristic speeds ``(u - c, u, u + c)`` with ``c = lambda v``."""
    c = state.lam * state.v
    return u - c, u, u + c


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues and right eigenvectors at one state.

    ``coords`` is ``"pT"`` for ``(p, u, T)`` components or ``"alphaT"`` for
    ``(alpha, u, T)`` components.
    """

    lambda_minus: float
    lambda_zero: float
    lambda_plus: float
    r_minus: np.ndarray
    r_zero: np.ndarray
    r_plus: np.ndarray
    coords: str


def eigen(g: GasModel, state: ThermoState,
          coords: Literal["pT", "alphaT"] = "pT") -> EigenDecomposition:
    """Eigenvalues and eigenvectors of the Lagrangian system at ``state``.

    In ``(p, u, T)``: ``R+- = (+-1, 1/lambda, -+eta_p/eta_T)``, ``R0 = (0, 0, 1)``.
    In ``(alpha, u, T)`` the acoustic vectors are rescaled by ``p`` so that
    their ``u`` component is ``p/lambda``.
    """
    lam = state.lam
    if coords == "pT":
        d = partials_alphaT(g, state.alpha, state.T, state.p)
        slope = -d.eta_p / d.eta_T
        r_plus = np.array([1.0, 1.0 / lam, slope])
        r_minus = np.array([-1.0, 1.0 / lam, -slope])
        r_zero = np.array([0.0, 0.0, 1.0])
    elif coords == "alphaT":
        a, T = state.alpha, state.T
        tau = g.Ti / T
        q = 2.5 + tau
        phi = 0.5 * a * (1.0 - a)
        A = 2.5 + phi * q * q
        c = 0.5 * a * (1.0 - a * a)
        u_comp = math.sqrt(g.a2 * T * (1.0 + a) * state.B / A)  # p / lambda
        da = c * tau / A
        dT = (1.0 + phi * q) * T / A
        r_plus = np.array([da, u_comp, dT])
        r_minus = np.array([-da, u_comp, -dT])
        r_zero = np.array([c * q, 0.0, T])
    else:
        raise ValueError(f"unknown coordinates {coords!r}")
    return EigenDecomposition(-lam, 0.0, lam, r_minus, r_zero, r_plus, coords)


def inflection_f(g: GasModel, alpha: float, T: float) -> float:
    """Inflection function ``f(alpha, T)``.

    Its sign is the sign of ``R+ . grad lambda+`` (equivalently of
    ``R- . grad lambda-``); the acoustic fields lose genuine nonlinearity
    where it vanishes.
    """
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    if not T > 0:
        raise DomainError(f"T must be positive, got {T!r}")
    tau = g.Ti / T
    x = alpha * (1.0 - alpha)
    t2 = tau * tau
    head = 1.0 + x * (1.25 + tau + 0.25 * t2)
    inner = 1.0 + 0.5 * x * (2.5 + tau)
    num = x * t2 / 15.0 * inner * inner \
        - alpha * (1.0 - alpha * alpha) * (1.0 - 2.0 * alpha) * t2 * tau / 60.0
    den = (1.0 + x * (1.25 + tau + t2 / 5.0)) * (1.0 + x * (1.25 + tau + t2 / 3.0))
    return head + num / den


gnl_indicator = inflection_f


def gnl_log_derivative(g: GasModel, alpha: float, T: float) -> float:
    """``R+ . grad log lambda+ = 2 f / (p A)`` with ``(p, u, T)`` eigenvectors."""
    p = pressure_from_alphaT(g, alpha, T)
    tau = g.Ti / T
    A = 2.5 + 0.5 * alpha * (1.0 - alpha) * (2.5 + tau) ** 2
    return 2.0 * inflection_f(g, alpha, T) / (p * A)


def is_gn_sufficient(g: GasModel, alpha: float, T: float) -> bool:
    """Sufficient condition for genuine nonlinearity of both acoustic fields.

    True when ``alpha <= 60 (T/Ti)^3`` or ``Ti/T <= 54.5375``. A False
    result says nothing; use :func:`inflection_f`.
    """
    t = T / g.Ti
    return alpha <= 60.0 * t ** 3 or g.Ti / T <= GN_TAU_THRESHOLD


@dataclass
class InflectionCurve:
    """One branch of the inflection locus sampled at increasing T."""

    branch: str
    alpha: np.ndarray = field(default_factory=lambda: np.empty(0))
    T: np.ndarray = field(default_factory=lambda: np.empty(0))
    residual: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __len__(self) -> int:
        return int(self.T.size)


def trace_inflection_locus(
    g: GasModel,
    T_range: tuple[float, float],
    n: int = 50,
    n_seed: int = 200,
    log_alpha_min: float | None = None,
) -> tuple[InflectionCurve, InflectionCurve]:
    """Sample both branches of the inflection locus.

    For each of ``n`` log-spaced temperatures the function
    ``ln alpha -> f`` is scanned on ``n_seed`` points between
    ``log_alpha_min`` and ``ln 0.5``; each sign change is refined by
    bracketed root finding. Roots are assigned to the left branch
    (``alpha ~ 60 (T/Ti)^3``) or the right branch (``alpha ~ (T/Ti)^{3/2}``)
    by comparison with the geometric mean of those two estimates.

    Parameters
    ----------
    g : GasModel
    T_range : (Tmin, Tmax)
        Temperatures in K, ``0 < Tmin <= Tmax``.
    n : int
        Number of temperatures.
    n_seed : int
        Scan resolution in ``ln alpha``.
    log_alpha_min : float, optional
        Lower end of the scan. Defaults to ``ln 1e-12`` or, if lower, three
        units below the left-branch estimate at ``Tmin``.

    Returns
    -------
    (InflectionCurve, InflectionCurve)
        Left and right branches; temperatures with no root are skipped.
    """
    t_lo, t_hi = float(T_range[0]), float(T_range[1])
    if not (0 < t_lo <= t_hi):
        raise DomainError(f"invalid temperature range {T_range!r}")
    temps = np.geomspace(t_lo, t_hi, n) if n > 1 else np.array([t_lo])
    if log_alpha_min is None:
        left_guess = math.log(60.0) + 3.0 * math.log(t_lo / g.Ti)
        log_alpha_min = min(math.log(1e-12), left_guess - 3.0)
    grid = np.linspace(log_alpha_min, math.log(0.5), n_seed)

    rows = {"left": ([], [], []), "right": ([], [], [])}
    for T in temps:
        T = float(T)

        def f_log(la: float) -> float:
            return inflection_f(g, math.exp(la), T)

        vals = np.array([f_log(la) for la in grid])
        split = 0.5 * (math.log(60.0) + 3.0 * math.log(T / g.Ti) + 1.5 * math.log(T / g.Ti))
        for i in np.nonzero(np.signbit(vals[:-1]) != np.signbit(vals[1:]))[0]:
            la = find_root(f_log, Bracket(grid[i], grid[i + 1]))
            branch = "left" if la < split else "right"
            a_list, t_list, r_list = rows[branch]
            a_list.append(math.exp(la))
            t_list.append(T)
            r_list.append(f_log(la))

    def build(name: str) -> InflectionCurve:
        a_list, t_list, r_list = rows[name]
        return InflectionCurve(name, np.array(a_list), np.array(t_list), np.array(r_list))

    return build("left"), build("right")
