"""Integral curves of the acoustic fields and rarefaction branches.

In the (alpha, T) plane both acoustic integral curves through a state are
the isentrope ``eta(alpha, T) = eta0``, which has the closed form
``T = (1 + alpha) Ti / d(alpha)`` with
``d(alpha) = 2 ln((1 - alpha)/alpha) - (5/2)(1 + alpha) + eta0``. It is
physical only for ``alpha < alpha_inf``, the root of ``d``, where ``T``
blows up. The velocity component obeys ``du/dalpha = -+ Lambda`` with the
upper sign for the plus family.

Integration uses ``zeta = ln(alpha) - ln(alpha_inf - alpha)``, which maps
``(0, alpha_inf)`` onto the real line and keeps both endpoints resolved.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .characteristics import inflection_f, is_gn_sufficient
from .hugoniot import RefState
from .numerics import Bracket, expit_log, find_root, integrate_ode, log1pexp
from .thermo import (
    DomainError,
    GasModel,
    entropy_alphaT,
    log_pressure_from_alphaT,
    sound_speed_sq_alphaT,
)

__all__ = [
    "Isentrope",
    "alpha_infinity",
    "isentrope_denominator",
    "isentrope_T",
    "isentrope_dT_dalpha",
    "isentrope_d2T",
    "isentrope_convexity",
    "p_over_lambda",
    "du_dalpha",
    "integrate_rarefaction",
    "sample_isentrope",
]


def _d_logit(s: float, eta0: float) -> float:
    a = 1.0 / (1.0 + math.exp(-s)) if s > -700 else 0.0
    return -2.0 * s - 2.5 * (1.0 + a) + eta0


def alpha_infinity(eta0: float) -> float:
    """Ionization degree where the isentrope of level ``eta0`` blows up.

    Unique root in (0, 1) of ``2 ln((1-alpha)/alpha) - (5/2)(1+alpha) + eta0``;
    it does not depend on the gas constants. For ``eta0`` above roughly 75
    the root is within rounding of 1 and the returned value is 1.0.
    """
    if not math.isfinite(eta0):
        raise DomainError("eta0 must be finite")
    # d(s) >= 2 at the left end and <= -2 at the right end
    lo, hi = 0.5 * (eta0 - 5.0) - 1.0, 0.5 * (eta0 - 2.5) + 1.0
    s = find_root(lambda x: _d_logit(x, eta0), Bracket(lo, hi))
    la, _ = expit_log(s)
    return math.exp(la)


def isentrope_denominator(alpha: float, eta0: float) -> float:
    """``d(alpha) = 2 ln((1-alpha)/alpha) - (5/2)(1+alpha) + eta0``."""
    return 2.0 * (math.log1p(-alpha) - math.log(alpha)) - 2.5 * (1.0 + alpha) + eta0


def _check_branch(alpha: float, eta0: float) -> float:
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    d = isentrope_denominator(alpha, eta0)
    if not d > 0:
        raise DomainError(f"alpha={alpha!r} is not below alpha_inf({eta0!r}); "
                          "the isentrope temperature would be negative")
    return d


def isentrope_T(g: GasModel, alpha: float, eta0: float) -> float:
    """Temperature on the isentrope ``eta = eta0`` at ionization degree ``alpha``."""
    d = _check_branch(alpha, eta0)
    return (1.0 + alpha) * g.Ti / d


def isentrope_dT_dalpha(g: GasModel, alpha: float, T: float) -> float:
    """Slope of the acoustic integral curves in the (alpha, T) plane."""
    tau = g.Ti / T
    phi = 0.5 * alpha * (1.0 - alpha)
    return (1.0 + phi * (2.5 + tau)) / (0.5 * alpha * (1.0 - alpha * alpha) * tau) * T


def isentrope_d2T(g: GasModel, alpha: float, eta0: float) -> float:
    """Curvature ``d^2 T / d alpha^2`` of the isentrope from second partials of eta."""
    T = isentrope_T(g, alpha, eta0)
    Ti = g.Ti
    e_a = 2.0 / (alpha * (1.0 - alpha)) + 2.5 + Ti / T
    e_T = -Ti * (1.0 + alpha) / (T * T)
    e_aa = 2.0 * (2.0 * alpha - 1.0) / (alpha * alpha * (1.0 - alpha) ** 2)
    e_aT = -Ti / (T * T)
    e_TT = 2.0 * Ti * (1.0 + alpha) / T ** 3
    num = e_aa * e_T * e_T - 2.0 * e_aT * e_a * e_T + e_TT * e_a * e_a
    return -num / e_T ** 3


def isentrope_convexity(g: GasModel, alpha: float, eta0: float) -> int:
    """Sign (+1, -1 or 0) of the isentrope curvature at ``alpha``."""
    v = isentrope_d2T(g, alpha, eta0)
    return int(np.sign(v))


def p_over_lambda(g: GasModel, alpha: float, T: float) -> float:
    """``p / lambda = a sqrt(T (1 + alpha)) sqrt(B / A)``, independent of p."""
    return 1.0 / math.sqrt(sound_speed_sq_alphaT(g, alpha, T, 1.0))


def du_dalpha(g: GasModel, alpha: float, T: float) -> float:
    """``Lambda = (5/2 + phi q^2) / (alpha (1 - alpha^2) tau / 2) * p / lambda`` (positive)."""
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    tau = g.Ti / T
    A = 2.5 + 0.5 * alpha * (1.0 - alpha) * (2.5 + tau) ** 2
    return A / (0.5 * alpha * (1.0 - alpha * alpha) * tau) * p_over_lambda(g, alpha, T)


@dataclass
class Isentrope:
    """Samples of an acoustic integral curve, ordered along the integration.

    ``T`` is the integrated temperature and ``T_closed`` the closed form;
    ``eta_drift`` is ``eta(alpha, T) - eta0`` for the integrated values.
    ``u_plus`` and ``u_minus`` are the velocity components of the plus and
    minus families through the anchor.
    """

    eta0: float
    alpha_inf: float
    alpha: np.ndarray
    log_alpha: np.ndarray
    T: np.ndarray
    T_closed: np.ndarray
    p: np.ndarray
    u_plus: np.ndarray
    u_minus: np.ndarray
    eta_drift: np.ndarray
    gn_certified: np.ndarray
    status: str = "completed"

    def __len__(self) -> int:
        return int(self.alpha.size)


class _Chart:
    """``zeta = ln alpha - ln(alpha_inf - alpha)`` for one isentrope."""

    def __init__(self, g: GasModel, eta0: float):
        self.g, self.eta0 = g, eta0
        self.a_inf = alpha_infinity(eta0)
        if self.a_inf == 1.0:
            raise DomainError(f"alpha_inf rounds to 1 for eta0={eta0!r}; level too high")
        self.log_a_inf = math.log(self.a_inf)
        self.log1m_a_inf = math.log1p(-self.a_inf)

    def zeta(self, alpha: float) -> float:
        return math.log(alpha) - math.log(self.a_inf - alpha)

    def parts(self, z: float) -> tuple[float, float, float]:
        """``(alpha, ln alpha, alpha_inf - alpha)`` at ``zeta = z``."""
        lz, l1z = expit_log(z)
        la = self.log_a_inf + lz
        return math.exp(la), la, self.a_inf * math.exp(l1z)

    def T_closed(self, z: float) -> float:
        a, la, delta = self.parts(z)
        lz = la - self.log_a_inf
        d = 2.0 * math.log1p(delta / (1.0 - self.a_inf)) - 2.0 * lz + 2.5 * delta
        return (1.0 + a) * self.g.Ti / d

    def rhs(self, z: float, y: np.ndarray) -> list[float]:
        """``d(ln T, u_plus)/d zeta``."""
        g = self.g
        a, _, delta = self.parts(z)
        T = math.exp(y[0])
        tau = g.Ti / T
        q = 2.5 + tau
        phi = 0.5 * a * (1.0 - a)
        A = 2.5 + phi * q * q
        jac = delta / self.a_inf  # (d alpha / d zeta) / alpha
        half = 0.5 * (1.0 - a * a) * tau
        dlnT = (1.0 + phi * q) / half * jac
        du = -A / half * p_over_lambda(g, a, T) * jac
        return [dlnT, du]


def _run(chart: _Chart, z0: float, T0: float, z_samples: np.ndarray, rel_tol: float):
    # u starts at zero; give it a floor on the acoustic velocity scale
    u_floor = rel_tol * chart.g.a * math.sqrt(T0)
    res = integrate_ode(chart.rhs, [math.log(T0), 0.0], (z0, float(z_samples[-1])),
                        rel_tol=rel_tol, abs_tol=[0.0, u_floor], s_eval=list(z_samples))
    return res


def _assemble(g: GasModel, chart: _Chart, z: np.ndarray, lnT: np.ndarray, du: np.ndarray,
              u0: float, status: str) -> Isentrope:
    n = z.size
    alpha = np.empty(n)
    log_alpha = np.empty(n)
    T_closed = np.empty(n)
    p = np.empty(n)
    drift = np.empty(n)
    gn = np.empty(n, dtype=bool)
    T = np.exp(lnT)
    for i in range(n):
        a, la, _ = chart.parts(float(z[i]))
        alpha[i], log_alpha[i] = a, la
        T_closed[i] = chart.T_closed(float(z[i]))
        lp = log_pressure_from_alphaT(g, None, T[i], log_alpha=la)
        p[i] = math.exp(lp) if lp < 709.7 else math.inf
        drift[i] = entropy_alphaT(g, None, T[i], log_alpha=la) - chart.eta0
        gn[i] = is_gn_sufficient(g, a, T[i])
    return Isentrope(chart.eta0, chart.a_inf, alpha, log_alpha, T, T_closed, p,
                     u0 + du, u0 - du, drift, gn, status)


def integrate_rarefaction(
    g: GasModel,
    ref: RefState,
    family: Literal["minus", "plus"],
    alpha_target: float,
    n: int = 200,
    rel_tol: float = 1e-13,
) -> Isentrope:
    """Integrate the acoustic integral curve through ``ref`` up to ``alpha_target``.

    The rarefaction branch of the minus family is ``alpha in (0, alpha0]``
    and that of the plus family is ``[alpha0, alpha_inf)``. Both ``ln T``
    and ``u`` are integrated; the temperature is compared with the closed
    form through ``eta_drift``.

    Parameters
    ----------
    family : {"minus", "plus"}
        Selects the branch; ``u_plus`` decreases and ``u_minus`` increases
        with alpha.
    alpha_target : float
        End of the segment.
    n : int
        Number of samples, uniform in the ``zeta`` chart.

    Raises
    ------
    DomainError
        If the target is on the wrong side of ``alpha0`` or within
        ``1e-12`` of ``alpha_inf``.
    """
    eta0 = entropy_alphaT(g, None, ref.T0, log_alpha=ref.log_alpha0)
    chart = _Chart(g, eta0)
    a0 = ref.alpha0
    if family == "minus":
        if not (0.0 < alpha_target <= a0):
            raise DomainError("minus-family rarefaction needs 0 < alpha_target <= alpha0")
    elif family == "plus":
        if not (a0 <= alpha_target < 1.0):
            raise DomainError("plus-family rarefaction needs alpha0 <= alpha_target")
        if alpha_target >= chart.a_inf - 1e-12:
            raise DomainError(f"alpha_target within 1e-12 of alpha_inf={chart.a_inf!r}")
    else:
        raise ValueError(f"unknown family {family!r}")
    z0 = ref.log_alpha0 - math.log(chart.a_inf - a0)
    z1 = chart.zeta(alpha_target)
    if z1 == z0:
        z = np.array([z0])
        return _assemble(g, chart, z, np.array([math.log(ref.T0)]), np.zeros(1), ref.u0,
                         "completed")
    z = np.linspace(z0, z1, n)
    res = _run(chart, z0, ref.T0, z, rel_tol)
    return _assemble(g, chart, res.s, res.y[:, 0], res.y[:, 1], ref.u0, res.status)


def sample_isentrope(
    g: GasModel,
    eta0: float,
    n: int = 200,
    alpha_min: float = 1e-12,
    gap: float = 1e-6,
    anchor_alpha: float | None = None,
    u0: float = 0.0,
    rel_tol: float = 1e-13,
) -> Isentrope:
    """Sample the whole physical branch ``(alpha_min, alpha_inf (1 - gap))`` of an isentrope.

    Velocities are anchored to ``u0`` at ``anchor_alpha`` (default
    ``alpha_min``).
    """
    chart = _Chart(g, eta0)
    a_hi = chart.a_inf * (1.0 - gap)
    if not (0.0 < alpha_min < a_hi):
        raise DomainError("alpha_min must lie below alpha_inf (1 - gap)")
    z = np.linspace(chart.zeta(alpha_min), chart.zeta(a_hi), n)
    za = z[0] if anchor_alpha is None else chart.zeta(anchor_alpha)
    T_anchor = chart.T_closed(za)
    lnT = np.empty(n)
    du = np.empty(n)
    status = "completed"
    below = z[z < za][::-1]
    above = z[z >= za]
    for part, idx in ((above, z >= za), (below, z < za)):
        if part.size == 0:
            continue
        res = _run(chart, za, T_anchor, part, rel_tol)
        if res.status != "completed" or res.s.size != part.size:
            status = "truncated"
            raise RuntimeError(f"isentrope integration truncated: {res.message}")
        vals_T, vals_u = res.y[:, 0], res.y[:, 1]
        if part is below:
            vals_T, vals_u = vals_T[::-1], vals_u[::-1]
        lnT[idx] = vals_T
        du[idx] = vals_u
    return _assemble(g, chart, z, lnT, du, u0, status)
