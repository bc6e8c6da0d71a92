"""High-temperature-limit (HTL) closure.

Dropping the Boltzmann factor from Saha's law gives
``alpha = (1 + kappa p T^(-5/2))^(-1/2)``; dropping the ionization energy
gives ``e = (3/2) a^2 (1 + alpha) T``. The entropy then depends on alpha
alone, both acoustic fields are genuinely nonlinear and the integral
curves are the lines ``alpha = const``.

This is a separate model rather than a switch inside ``thermo`` so that no
exact-model function changes behaviour with a flag.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .numerics import expand_bracket, expit_log, find_root, log1pexp, logit
from .thermo import DomainError, GasModel

__all__ = [
    "HtlState",
    "HtlRef",
    "HtlEigen",
    "HtlCurve",
    "HtlMonotonicity",
    "htl_alpha_from_pT",
    "htl_pressure",
    "htl_entropy",
    "pseudo_entropy",
    "pseudo_entropy_alt",
    "htl_state_from_pT",
    "htl_state_from_alphaT",
    "htl_lambda",
    "htl_eigen",
    "htl_gnl_log_derivative",
    "htl_reference",
    "htl_integral_curve",
    "htl_integral_curve_pseudo",
    "htl_thermo_residual",
    "htl_trace_thermo_locus",
    "htl_kinetic",
    "polytropic_kinetic",
    "htl_hugoniot_p_v_monotone",
    "HtlShock",
    "htl_shock_state",
]

_LN4 = math.log(4.0)


def _check_pos(name: str, x: float) -> None:
    if not (x > 0 and math.isfinite(x)):
        raise DomainError(f"{name} must be positive and finite, got {x!r}")


def _check_alpha(alpha: float) -> None:
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")


def htl_alpha_from_pT(g: GasModel, p: float, T: float) -> float:
    """``alpha = (1 + kappa p T^(-5/2))^(-1/2)``."""
    _check_pos("p", p)
    _check_pos("T", T)
    x = g.kappa * p * T ** -2.5
    return 1.0 / math.sqrt(1.0 + x)


def htl_pressure(g: GasModel, alpha: float, T: float) -> float:
    """``p = (1 - alpha^2) T^(5/2) / (kappa alpha^2)``."""
    _check_alpha(alpha)
    _check_pos("T", T)
    return (1.0 - alpha) * (1.0 + alpha) / (g.kappa * alpha * alpha) * T ** 2.5


def htl_entropy(alpha: float) -> float:
    """``eta = 2 ln(alpha / (1 - alpha)) + (5/2) alpha`` (additive constant zero)."""
    _check_alpha(alpha)
    return 2.0 * logit(alpha) + 2.5 * alpha


def pseudo_entropy(alpha: float) -> float:
    """``H(alpha) = (2/5) ln alpha + (1/2) ln(1 + alpha) - (1/5) ln(1 - alpha^2)``."""
    _check_alpha(alpha)
    # ln(1 - alpha^2) split so alpha^2 is never rounded near 1
    return 0.4 * math.log(alpha) + 0.5 * math.log1p(alpha) \
        - 0.2 * (math.log1p(-alpha) + math.log1p(alpha))


def pseudo_entropy_alt(alpha: float) -> float:
    """``(2/5) ln alpha + (3/10) ln(1 + alpha) - (1/5) ln(1 - alpha)``; equal to ``pseudo_entropy``."""
    _check_alpha(alpha)
    return 0.4 * math.log(alpha) + 0.3 * math.log1p(alpha) - 0.2 * math.log1p(-alpha)


@dataclass(frozen=True)
class HtlState:
    """Thermodynamic state of the HTL model."""

    alpha: float
    T: float
    p: float
    v: float
    e: float
    eta_htl: float
    pseudo_entropy: float
    lam: float

    @property
    def rho(self) -> float:
        return 1.0 / self.v


def htl_lambda(g: GasModel, alpha: float, T: float, p: float) -> float:
    """Lagrangian sound speed ``(p / a) sqrt(5 / (3 T (1 + alpha)))``."""
    return p / g.a * math.sqrt(5.0 / (3.0 * T * (1.0 + alpha)))


def htl_state_from_alphaT(g: GasModel, alpha: float, T: float) -> HtlState:
    p = htl_pressure(g, alpha, T)
    v = g.a2 * T * (1.0 + alpha) / p
    return HtlState(alpha, T, p, v, 1.5 * g.a2 * (1.0 + alpha) * T,
                    htl_entropy(alpha), pseudo_entropy(alpha), htl_lambda(g, alpha, T, p))


def htl_state_from_pT(g: GasModel, p: float, T: float) -> HtlState:
    alpha = htl_alpha_from_pT(g, p, T)
    _check_alpha(alpha)
    v = g.a2 * T * (1.0 + alpha) / p
    return HtlState(alpha, T, p, v, 1.5 * g.a2 * (1.0 + alpha) * T,
                    htl_entropy(alpha), pseudo_entropy(alpha), htl_lambda(g, alpha, T, p))


@dataclass(frozen=True)
class HtlEigen:
    lam_minus: float
    lam_zero: float
    lam_plus: float
    r_minus: np.ndarray
    r_zero: np.ndarray
    r_plus: np.ndarray
    coords: str


def htl_eigen(g: GasModel, state: HtlState,
              coords: Literal["pT", "alphaT"] = "pT") -> HtlEigen:
    """Eigen-decomposition of the Lagrangian HTL system.

    ``coords="pT"`` uses ``(p, u, T)`` with ``R+- = (+-1, 1/lambda, +-2T/(5p))``
    and ``R0 = (0, 0, 1)``. ``coords="alphaT"`` uses ``(alpha, u, T)`` with
    ``R+- = (0, -+a sqrt(3T(1+alpha)/5), 2T/5)`` and
    ``R0 = ((5/4) alpha (1 - alpha^2), 0, T)``.
    """
    lam, a, T, p = state.lam, state.alpha, state.T, state.p
    if coords == "pT":
        s = 0.4 * T / p
        rp = np.array([1.0, 1.0 / lam, s])
        rm = np.array([-1.0, 1.0 / lam, -s])
        r0 = np.array([0.0, 0.0, 1.0])
    elif coords == "alphaT":
        w = g.a * math.sqrt(0.6 * T * (1.0 + a))
        rp = np.array([0.0, -w, 0.4 * T])
        rm = np.array([0.0, w, 0.4 * T])
        r0 = np.array([1.25 * a * (1.0 - a * a), 0.0, T])
    else:
        raise ValueError(f"unknown coordinates {coords!r}")
    return HtlEigen(-lam, 0.0, lam, rm, r0, rp, coords)


def htl_gnl_log_derivative(g: GasModel, state: HtlState, sign: int = 1) -> float:
    """``R+- . grad log|lambda+-|`` in ``(p, u, T)``, from closed-form partials of alpha."""
    p, T, a = state.p, state.T, state.alpha
    x = g.kappa * p * T ** -2.5
    c = -0.5 * (1.0 + x) ** -1.5 * x
    a_p = c / p
    a_T = -2.5 * c / T
    dl_p = 1.0 / p - 0.5 * a_p / (1.0 + a)
    dl_T = -0.5 / T - 0.5 * a_T / (1.0 + a)
    return sign * (dl_p + 0.4 * T / p * dl_T)


@dataclass(frozen=True)
class HtlRef:
    alpha0: float
    T0: float
    u0: float
    p0: float
    v0: float


def htl_reference(g: GasModel, alpha0: float, T0: float, u0: float = 0.0) -> HtlRef:
    p0 = htl_pressure(g, alpha0, T0)
    return HtlRef(alpha0, T0, u0, p0, g.a2 * T0 * (1.0 + alpha0) / p0)


def _family_sign(family: str) -> float:
    if family == "plus":
        return -1.0
    if family == "minus":
        return 1.0
    raise ValueError(f"unknown family {family!r}")


def htl_integral_curve(g: GasModel, ref: HtlRef, p: float,
                       family: Literal["minus", "plus"] = "plus") -> float:
    """Velocity on the acoustic integral curve through ``ref`` at pressure ``p``.

    ``u - u0 = -+ sqrt(15 (1 + alpha0)) a (kappa alpha0^2 / (1 - alpha0^2))^(1/5)
    (p^(1/5) - p0^(1/5))``, upper sign for the plus family.
    """
    _check_pos("p", p)
    a0 = ref.alpha0
    k = math.sqrt(15.0 * (1.0 + a0)) * g.a \
        * (g.kappa * a0 * a0 / ((1.0 - a0) * (1.0 + a0))) ** 0.2
    return ref.u0 + _family_sign(family) * k * (p ** 0.2 - ref.p0 ** 0.2)


def htl_integral_curve_pseudo(g: GasModel, ref: HtlRef, p: float,
                              family: Literal["minus", "plus"] = "plus") -> float:
    """Same curve through the pseudo-entropy: ``-+ sqrt(15) a kappa^(1/5) e^H(alpha0)``."""
    _check_pos("p", p)
    k = math.sqrt(15.0) * g.a * g.kappa ** 0.2 * math.exp(pseudo_entropy(ref.alpha0))
    return ref.u0 + _family_sign(family) * k * (p ** 0.2 - ref.p0 ** 0.2)


def _log_p_ratio(ref: HtlRef, log_alpha: float, log1m_alpha: float, alpha: float,
                 T: float) -> float:
    a0 = ref.alpha0
    return (log1m_alpha + math.log1p(alpha) - 2.0 * log_alpha + 2.5 * math.log(T / ref.T0)
            - math.log1p(-a0) - math.log1p(a0) + 2.0 * math.log(a0))


def htl_thermo_residual(g: GasModel, alpha: float, T: float, ref: HtlRef) -> float:
    """``T (1 + alpha)(4 + p0/p) - T0 (1 + alpha0)(4 + p/p0)`` with HTL pressures."""
    _check_alpha(alpha)
    _check_pos("T", T)
    P = htl_pressure(g, alpha, T) / ref.p0
    return T * (1.0 + alpha) * (4.0 + 1.0 / P) - ref.T0 * (1.0 + ref.alpha0) * (4.0 + P)


def _log_balance(ref: HtlRef, s: float, T: float) -> float:
    """Log of the two sides of the HTL Hugoniot relation, increasing in ``s = logit(alpha)``."""
    la, l1a = expit_log(s)
    alpha = math.exp(la)
    lP = _log_p_ratio(ref, la, l1a, alpha, T)
    lhs = math.log(T) + math.log1p(alpha) + float(np.logaddexp(_LN4, -lP))
    rhs = math.log(ref.T0) + math.log1p(ref.alpha0) + float(np.logaddexp(_LN4, lP))
    return lhs - rhs


@dataclass
class HtlCurve:
    """HTL thermodynamic Hugoniot locus sampled at prescribed temperatures."""

    ref: HtlRef
    T: np.ndarray
    alpha: np.ndarray
    log_alpha: np.ndarray
    p: np.ndarray
    v: np.ndarray
    residual: np.ndarray


def htl_trace_thermo_locus(g: GasModel, ref: HtlRef, T_range: tuple[float, float] | None = None,
                           n: int = 200, T_values=None) -> HtlCurve:
    """Trace the HTL thermodynamic locus as ``alpha(T)``.

    The locus has a vertical tangent at the reference state, so it is
    parametrized by ``T``. At fixed ``T`` the balance is strictly increasing
    in ``logit(alpha)``, which gives a unique bracketed root per sample.

    Parameters
    ----------
    T_range : (T_min, T_max), optional
        Log-spaced sample range; ignored when ``T_values`` is given.
    n : int
        Number of samples.
    T_values : array_like, optional
        Explicit temperatures.
    """
    if T_values is None:
        if T_range is None:
            raise ValueError("give T_range or T_values")
        T_values = np.geomspace(T_range[0], T_range[1], n)
    Ts = np.asarray(T_values, dtype=float)
    m = Ts.size
    alpha = np.empty(m)
    log_alpha = np.empty(m)
    p = np.empty(m)
    res = np.empty(m)
    s0 = logit(ref.alpha0)
    for i, T in enumerate(Ts):
        _check_pos("T", float(T))
        fn = lambda s: _log_balance(ref, s, float(T))
        br = expand_bracket(fn, s0, step=1.0)
        s = find_root(fn, br)
        la, l1a = expit_log(s)
        a = math.exp(la)
        alpha[i], log_alpha[i] = a, la
        lP = _log_p_ratio(ref, la, l1a, a, float(T))
        p[i] = ref.p0 * math.exp(lP)
        res[i] = fn(s)
    v = g.a2 * Ts * (1.0 + alpha) / p
    return HtlCurve(ref, Ts, alpha, log_alpha, p, v, res)


def htl_kinetic(g: GasModel, ref: HtlRef, p: float) -> float:
    """``(u - u0)^2 = 3 a^2 T0 (1 + alpha0)(p - p0)^2 / (p0 (4p + p0))``."""
    _check_pos("p", p)
    dp = p - ref.p0
    return 3.0 * g.a2 * ref.T0 * (1.0 + ref.alpha0) * dp * dp / (ref.p0 * (4.0 * p + ref.p0))


def polytropic_kinetic(v0: float, p0: float, p: float) -> float:
    """Gamma = 5/3 polytropic shock relation ``2 v0 (p - p0)^2 / ((8/3) p + (2/3) p0)``."""
    dp = p - p0
    return 2.0 * v0 * dp * dp / (8.0 / 3.0 * p + 2.0 / 3.0 * p0)


@dataclass(frozen=True)
class HtlMonotonicity:
    """Measured monotonicity of p, v and T along the compressive branch ``alpha >= alpha0``."""

    n_samples: int
    T_increasing: bool
    p_increasing: bool
    v_increasing: bool
    v_decreasing: bool


def htl_hugoniot_p_v_monotone(g: GasModel, curve: HtlCurve) -> HtlMonotonicity:
    """Check sample-to-sample monotonicity of ``T``, ``p`` and ``v`` in ``alpha >= alpha0``."""
    order = np.argsort(curve.alpha)
    a = curve.alpha[order]
    keep = a >= curve.ref.alpha0
    T, p, v = curve.T[order][keep], curve.p[order][keep], curve.v[order][keep]
    d = lambda x: np.diff(x)
    return HtlMonotonicity(int(keep.sum()), bool(np.all(d(T) > 0)), bool(np.all(d(p) > 0)),
                           bool(np.all(d(v) > 0)), bool(np.all(d(v) < 0)))


@dataclass(frozen=True)
class HtlShock:
    """Compressive HTL shock reached from ``ref`` with velocity ``u``."""

    alpha: float
    T: float
    p: float
    v: float
    u: float
    m: float


def htl_shock_state(g: GasModel, ref: HtlRef, u: float) -> HtlShock:
    """Intersect the HTL kinetic relation with the thermodynamic locus on ``p >= p0``.

    The kinetic relation is quadratic in ``x = p - p0``:
    ``x^2 = K (4x + 5 p0)`` with ``K = (u - u0)^2 p0 / (3 a^2 T0 (1 + alpha0))``.
    The temperature then solves ``T (1 + alpha(p, T)) = T0 (1 + alpha0)(4 + P)/(4 + 1/P)``,
    whose left side increases with ``T``.
    """
    du2 = (u - ref.u0) ** 2
    if du2 == 0.0:
        return HtlShock(ref.alpha0, ref.T0, ref.p0, ref.v0, u, 0.0)
    K = du2 * ref.p0 / (3.0 * g.a2 * ref.T0 * (1.0 + ref.alpha0))
    x = 2.0 * K + math.sqrt(4.0 * K * K + 5.0 * K * ref.p0)
    p = ref.p0 + x
    P = p / ref.p0
    target = math.log(ref.T0) + math.log1p(ref.alpha0) + math.log((4.0 + P) / (4.0 + 1.0 / P))

    def r(lt: float) -> float:
        return lt + math.log1p(htl_alpha_from_pT(g, p, math.exp(lt))) - target

    lt = find_root(r, expand_bracket(r, math.log(ref.T0), 0.5))
    T = math.exp(lt)
    alpha = htl_alpha_from_pT(g, p, T)
    v = g.a2 * T * (1.0 + alpha) / p
    m = math.copysign(math.sqrt(x / (ref.v0 - v)), u - ref.u0)  # m = dp / du
    return HtlShock(alpha, T, p, v, u, m)
