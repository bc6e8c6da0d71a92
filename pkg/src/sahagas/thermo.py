"""Equation of state of a singly ionized monatomic gas in Saha equilibrium.

The Saha factor ``kappa p T^{-5/2} exp(Ti/T)`` spans hundreds of decades
between room temperature and full ionization, so every quantity that
involves it is computed from logarithms. Functions accept plain floats;
the ``log_alpha`` keyword lets callers pass ionization degrees that are
below the smallest representable double.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .numerics import BracketError, expand_bracket, find_root, log1mexp, log1pexp, safe_exp

__all__ = [
    "DomainError",
    "GasModel",
    "HYDROGEN",
    "ThermoState",
    "PartialsBundle",
    "entropy_form_offset",
    "log_saha_beta",
    "log_alpha_from_pT",
    "alpha_from_pT",
    "log_alpha_from_rhoT",
    "alpha_from_rhoT",
    "log_pressure_from_alphaT",
    "pressure_from_alphaT",
    "entropy_pT",
    "entropy_alphaT",
    "state_from_pT",
    "state_from_rhoT",
    "state_from_alphaT",
    "partials",
    "partials_alphaT",
    "sound_speed_sq_alphaT",
    "temperature_from_p_eta",
    "isentrope_dT_dp",
]


class DomainError(ValueError):
    """Input outside the physical domain (non-positive p, T, rho, or alpha not in (0, 1))."""


@dataclass(frozen=True)
class GasModel:
    """Constants of the gas.

    Attributes
    ----------
    a2 : float
        Specific gas constant ``R/m`` in J/(kg K).
    kappa : float
        Saha constant, in units where ``kappa p T^{-5/2} exp(Ti/T)`` is
        dimensionless with p in Pa and T in K.
    Ti : float
        Ionization temperature in K.
    """

    a2: float
    kappa: float
    Ti: float

    def __post_init__(self) -> None:
        for name in ("a2", "kappa", "Ti"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0):
                raise DomainError(f"{name} must be positive and finite, got {val!r}")

    @property
    def a(self) -> float:
        return math.sqrt(self.a2)

    @property
    def kappa_bar(self) -> float:
        """Density-form Saha constant, ``1 / (a2 kappa)``."""
        return 1.0 / (self.a2 * self.kappa)

    @property
    def log_kappa(self) -> float:
        return math.log(self.kappa)


HYDROGEN = GasModel(a2=8314.0, kappa=29.9774, Ti=1.578e5)

def entropy_form_offset(g: GasModel) -> float:
    """Constant difference ``entropy_alphaT - entropy_pT``, equal to ``5/2 - ln kappa``."""
    return 2.5 - g.log_kappa


def _positive(**kw: float) -> None:
    for name, val in kw.items():
        if not (val > 0 and math.isfinite(val)):
            raise DomainError(f"{name} must be positive and finite, got {val!r}")


def _alpha_logs(alpha: float | None, log_alpha: float | None) -> tuple[float, float, float]:
    """Return ``(alpha, ln alpha, ln(1 - alpha))`` after validating ``0 < alpha < 1``."""
    if log_alpha is None:
        if alpha is None or not (0.0 < alpha < 1.0):
            raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
        return alpha, math.log(alpha), math.log1p(-alpha)
    if not (log_alpha < 0.0) or math.isnan(log_alpha):
        raise DomainError(f"log_alpha must be negative, got {log_alpha!r}")
    a = math.exp(log_alpha)
    return a, log_alpha, log1mexp(log_alpha)


def log_saha_beta(g: GasModel, p: float, T: float) -> float:
    """``ln beta = ln kappa + ln p - (5/2) ln T + Ti/T``, where ``beta = 1/alpha^2 - 1``."""
    _positive(p=p, T=T)
    return g.log_kappa + math.log(p) - 2.5 * math.log(T) + g.Ti / T


def log_alpha_from_pT(g: GasModel, p: float, T: float) -> float:
    """``ln alpha = -(1/2) ln(1 + beta)`` evaluated from ``ln beta``."""
    return -0.5 * log1pexp(log_saha_beta(g, p, T))


def log1m_alpha_from_pT(g: GasModel, p: float, T: float) -> float:
    """``ln(1 - alpha)``, accurate also when alpha rounds to 1.

    Uses ``1 - alpha = beta / (sqrt(1+beta) (1 + sqrt(1+beta)))``.
    """
    lb = log_saha_beta(g, p, T)
    half = 0.5 * log1pexp(lb)
    return lb - half - log1pexp(half)


def alpha_from_pT(g: GasModel, p: float, T: float) -> float:
    """Ionization degree at given pressure and temperature.

    Examples
    --------
    >>> round(alpha_from_pT(HYDROGEN, 1466.3, 750.0) / 3.8418e-45, 3)
    1.0
    """
    return math.exp(log_alpha_from_pT(g, p, T))


def log_alpha_from_rhoT(g: GasModel, rho: float, T: float) -> float:
    """``ln alpha`` solving ``alpha^2 / (1 - alpha) = K``, ``K = (kappa_bar/rho) T^{3/2} e^{-Ti/T}``.

    The positive root ``alpha = 2 / (1 + sqrt(1 + 4/K))`` is evaluated
    through ``ln K`` so that both ``K -> 0`` and ``K -> inf`` are exact.
    """
    _positive(rho=rho, T=T)
    log_k = math.log(g.kappa_bar) - math.log(rho) + 1.5 * math.log(T) - g.Ti / T
    # ln sqrt(1 + 4/K) = 0.5 * log1pexp(ln 4 - ln K)
    log_sqrt = 0.5 * log1pexp(math.log(4.0) - log_k)
    return math.log(2.0) - log1pexp(log_sqrt)


def alpha_from_rhoT(g: GasModel, rho: float, T: float) -> float:
    """Ionization degree at given density and temperature."""
    return math.exp(log_alpha_from_rhoT(g, rho, T))


def log_pressure_from_alphaT(g: GasModel, alpha: float | None, T: float,
                             log_alpha: float | None = None) -> float:
    """``ln p`` with ``p = (1/kappa) ((1 - alpha^2)/alpha^2) T^{5/2} e^{-Ti/T}``."""
    a, la, l1a = _alpha_logs(alpha, log_alpha)
    _positive(T=T)
    return -g.log_kappa + l1a + math.log1p(a) - 2.0 * la + 2.5 * math.log(T) - g.Ti / T


def pressure_from_alphaT(g: GasModel, alpha: float | None, T: float,
                         log_alpha: float | None = None) -> float:
    """Pressure from ionization degree and temperature (inverse of :func:`alpha_from_pT`)."""
    return safe_exp(log_pressure_from_alphaT(g, alpha, T, log_alpha))


def _two_atanh(a: float, l1a: float) -> float:
    return math.log1p(a) - l1a


def entropy_alphaT(g: GasModel, alpha: float | None, T: float,
                   log_alpha: float | None = None) -> float:
    """Dimensionless entropy ``-2 ln((1-alpha)/alpha) + (1+alpha)(5/2 + Ti/T)``.

    The additive constant is zero. This form exceeds :func:`entropy_pT`
    by ``5/2 - ln kappa`` at every state.
    """
    a, la, l1a = _alpha_logs(alpha, log_alpha)
    _positive(T=T)
    return -2.0 * (l1a - la) + (1.0 + a) * (2.5 + g.Ti / T)


def entropy_pT(g: GasModel, p: float, T: float) -> float:
    """Dimensionless entropy ``-ln p + 2 atanh(alpha) + (5/2 + Ti/T) alpha + (5/2) ln T``."""
    la = log_alpha_from_pT(g, p, T)
    a = math.exp(la)
    l1a = log1m_alpha_from_pT(g, p, T)
    return -math.log(p) + _two_atanh(a, l1a) + (2.5 + g.Ti / T) * a + 2.5 * math.log(T)


def sound_speed_sq_alphaT(g: GasModel, alpha: float, T: float, p: float) -> float:
    """Squared Lagrangian sound speed ``p^2 A / (a^2 T (1+alpha) B)``.

    ``A = 5/2 + phi q^2`` and ``B = 3/2 + phi (tau^2 + 3 tau + 15/4)`` with
    ``phi = alpha(1-alpha)/2``, ``tau = Ti/T`` and ``q = 5/2 + tau``.
    """
    tau = g.Ti / T
    phi = 0.5 * alpha * (1.0 - alpha)
    A = 2.5 + phi * (2.5 + tau) ** 2
    B = 1.5 + phi * (tau * tau + 3.0 * tau + 3.75)
    return p * p * A / (g.a2 * T * (1.0 + alpha) * B)


@dataclass(frozen=True)
class ThermoState:
    """A single thermodynamic state; all fields in SI units.

    ``lam`` is the Lagrangian sound speed (units of rho times velocity).
    ``log_alpha`` keeps the ionization degree when ``alpha`` underflows.
    """

    alpha: float
    T: float
    p: float
    rho: float
    v: float
    e: float
    H: float
    eta: float
    lam: float
    log_alpha: float
    Ti: float

    @property
    def tau(self) -> float:
        return self.Ti / self.T

    @property
    def q(self) -> float:
        return 2.5 + self.tau

    @property
    def phi(self) -> float:
        return 0.5 * self.alpha * (1.0 - self.alpha)

    @property
    def A(self) -> float:
        return 2.5 + self.phi * self.q ** 2

    @property
    def B(self) -> float:
        t = self.tau
        return 1.5 + self.phi * (t * t + 3.0 * t + 3.75)


def _build_state(g: GasModel, la: float, T: float, log_p: float,
                 l1a: float | None = None) -> ThermoState:
    a = math.exp(la)
    p = safe_exp(log_p)
    one_plus = 1.0 + a
    pv = g.a2 * T * one_plus
    v = safe_exp(math.log(pv) - log_p)
    rho = safe_exp(log_p - math.log(pv))
    e = 1.5 * g.a2 * one_plus * T + g.a2 * g.Ti * a
    H = e + pv
    if l1a is None:
        l1a = log1mexp(la) if a > 0 else 0.0
    eta = -log_p + _two_atanh(a, l1a) + (2.5 + g.Ti / T) * a + 2.5 * math.log(T)
    lam = math.sqrt(sound_speed_sq_alphaT(g, a, T, 1.0)) * p
    return ThermoState(alpha=a, T=T, p=p, rho=rho, v=v, e=e, H=H, eta=eta, lam=lam,
                       log_alpha=la, Ti=g.Ti)


def state_from_pT(g: GasModel, p: float, T: float) -> ThermoState:
    """Full state from pressure and temperature."""
    la = log_alpha_from_pT(g, p, T)
    return _build_state(g, la, T, math.log(p), log1m_alpha_from_pT(g, p, T))


def state_from_rhoT(g: GasModel, rho: float, T: float) -> ThermoState:
    """Full state from density and temperature."""
    la = log_alpha_from_rhoT(g, rho, T)
    a = math.exp(la)
    log_p = math.log(rho) + math.log(g.a2 * T * (1.0 + a))
    # 1 - alpha = alpha^2 / K
    log_k = math.log(g.kappa_bar) - math.log(rho) + 1.5 * math.log(T) - g.Ti / T
    return _build_state(g, la, T, log_p, 2.0 * la - log_k)


def state_from_alphaT(g: GasModel, alpha: float | None, T: float,
                      log_alpha: float | None = None) -> ThermoState:
    """Full state from ionization degree and temperature."""
    _, la, _ = _alpha_logs(alpha, log_alpha)
    return _build_state(g, la, T, log_pressure_from_alphaT(g, None, T, log_alpha=la))


@dataclass(frozen=True)
class PartialsBundle:
    """Closed-form first derivatives at a state.

    ``dalpha_dp`` is at fixed T and ``dalpha_dT`` at fixed p; ``p_rho``,
    ``p_T`` and ``e_T`` use (rho, T) as independent variables; ``eta_*``
    and ``v_*`` use (p, T).
    """

    dalpha_dp: float
    dalpha_dT: float
    p_rho: float
    p_T: float
    e_T: float
    eta_p: float
    eta_T: float
    v_p: float
    v_T: float


def partials_alphaT(g: GasModel, alpha: float, T: float, p: float | None = None) -> PartialsBundle:
    """Closed-form partials at ``(alpha, T)``; ``p`` may be passed to skip recomputation."""
    if p is None:
        p = pressure_from_alphaT(g, alpha, T)
    a2 = g.a2
    tau = g.Ti / T
    q = 2.5 + tau
    x = alpha * (1.0 - alpha)
    c = alpha * (1.0 - alpha * alpha)
    one_plus = 1.0 + alpha
    rho = p / (a2 * T * one_plus)
    return PartialsBundle(
        dalpha_dp=-c / (2.0 * p),
        dalpha_dT=c * q / (2.0 * T),
        p_rho=2.0 * a2 * T / (2.0 - alpha),
        p_T=2.0 * a2 * rho / (2.0 - alpha) * (1.0 + 0.5 * x * q),
        e_T=a2 / (2.0 - alpha) * (3.0 + x * (q * q - 2.0 * q + 2.5)),
        eta_p=-one_plus / p * (1.0 + 0.5 * x * q),
        eta_T=one_plus / T * (2.5 + 0.5 * x * q * q),
        v_p=-a2 * T * one_plus / (p * p) * (1.0 + 0.5 * x),
        v_T=a2 * one_plus / p * (1.0 + 0.5 * x * q),
    )


def partials(g: GasModel, p: float, T: float) -> PartialsBundle:
    """Closed-form partials at ``(p, T)``."""
    return partials_alphaT(g, alpha_from_pT(g, p, T), T, p)


def temperature_from_p_eta(g: GasModel, p: float, eta: float, rel_tol: float = 1e-15) -> float:
    """Temperature on the isentrope ``entropy_pT(p, T) = eta``.

    The entropy is strictly increasing in T at fixed p, so the root is
    unique; it is bracketed in ``ln T`` starting from the neutral-gas
    value ``T = exp(2 (eta + ln p) / 5)``.
    """
    _positive(p=p)
    if not math.isfinite(eta):
        raise DomainError(f"eta must be finite, got {eta!r}")
    seed = 0.4 * (eta + math.log(p))

    def r(log_t: float) -> float:
        return entropy_pT(g, p, math.exp(log_t)) - eta

    try:
        br = expand_bracket(r, seed, step=0.5, max_expansions=40)
    except (BracketError, OverflowError, DomainError) as exc:
        raise DomainError(f"entropy {eta!r} not attainable at p={p!r}") from exc
    return math.exp(find_root(r, br, rel_tol=rel_tol))


def isentrope_dT_dp(g: GasModel, p: float, T: float) -> float:
    """Slope ``dT/dp`` along an isentrope, ``-eta_p / eta_T``."""
    alpha = alpha_from_pT(g, p, T)
    q = 2.5 + g.Ti / T
    x = alpha * (1.0 - alpha)
    return (T / p) * (1.0 + 0.5 * x * q) / (2.5 + 0.5 * x * q * q)
