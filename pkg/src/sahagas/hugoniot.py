"""Hugoniot loci, shock states and entropy jumps.

The reference state plays the role of the left ("minus") state of a
discontinuity. Its Hugoniot locus splits into a thermodynamic part
``F(alpha, T) = 0`` (energy jump condition, no velocity) and a kinetic part
``G(alpha, u, T) = 0`` (mass and momentum). The thermodynamic part is a
strictly increasing curve ``T(alpha)`` that is traced here in the chart
``s = ln(alpha / (1 - alpha))``, which behaves like ``ln alpha`` as
``alpha -> 0`` and like ``-ln(1 - alpha)`` as ``alpha -> 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .numerics import (
    Bracket,
    BracketError,
    ConvergenceError,
    central_diff,
    expand_bracket,
    expit_log,
    find_root,
    logit,
    safe_exp,
)
from .thermo import (
    DomainError,
    GasModel,
    ThermoState,
    alpha_from_pT,
    entropy_alphaT,
    log_alpha_from_pT,
    log_pressure_from_alphaT,
    state_from_alphaT,
    state_from_pT,
    temperature_from_p_eta,
)

__all__ = [
    "RefState",
    "HugoniotCurve",
    "ShockSolution",
    "TracingError",
    "ContactError",
    "reference_state",
    "residual_scale",
    "thermo_residual_F",
    "thermo_phi",
    "thermo_slope_dT_dalpha",
    "trace_thermo_locus",
    "kinetic_residual_G",
    "kinetic_roots",
    "locus_temperature",
    "solve_shock_state",
    "shock_from_pressure",
    "contact_state",
    "shock_speeds",
    "entropy_jump",
    "rh_residuals",
    "count_G_sign_changes",
]


class TracingError(RuntimeError):
    """Continuation or corrector failure; ``last`` holds the samples obtained so far."""

    def __init__(self, msg: str, last: "HugoniotCurve | None" = None):
        super().__init__(msg)
        self.last = last


class ContactError(ValueError):
    """Zero velocity jump: the solution is a contact discontinuity, not a shock."""


@dataclass(frozen=True)
class RefState:
    """Anchor state ``(alpha0, T0, u0)`` with derived ``p0``, ``v0``."""

    alpha0: float
    T0: float
    u0: float
    p0: float
    v0: float
    log_alpha0: float
    log1m_alpha0: float
    log_p0: float

    @property
    def s0(self) -> float:
        return self.log_alpha0 - self.log1m_alpha0


def reference_state(g: GasModel, alpha0: float | None, T0: float, u0: float = 0.0,
                    log_alpha0: float | None = None) -> RefState:
    """Build a :class:`RefState` from ``(alpha0, T0, u0)``."""
    st = state_from_alphaT(g, alpha0, T0, log_alpha=log_alpha0)
    la = st.log_alpha
    l1a = math.log1p(-st.alpha)
    log_p0 = log_pressure_from_alphaT(g, None, T0, log_alpha=la)
    return RefState(alpha0=st.alpha, T0=T0, u0=float(u0), p0=st.p, v0=st.v,
                    log_alpha0=la, log1m_alpha0=l1a, log_p0=log_p0)


def ref_from_state(g: GasModel, state: ThermoState, u0: float = 0.0) -> RefState:
    return reference_state(g, None, state.T, u0, log_alpha0=state.log_alpha)


def residual_scale(g: GasModel, ref: RefState) -> float:
    """Magnitude used to normalize ``F`` and ``G``: ``T0 (4(1+alpha0) + 2 Ti alpha0 / T0)``."""
    return ref.T0 * (4.0 * (1.0 + ref.alpha0)) + 2.0 * g.Ti * ref.alpha0


# ---------------------------------------------------------------------------
# internal evaluations in (ln alpha, ln(1 - alpha), ln T)


def _log_p_ratio(g: GasModel, la: float, l1a: float, lnT: float, ref: RefState) -> float:
    """``ln(p / p0)`` from the logarithms of alpha, 1 - alpha and T."""
    a = math.exp(la)
    return (l1a + math.log1p(a)) - (ref.log1m_alpha0 + math.log1p(ref.alpha0)) \
        - 2.0 * (la - ref.log_alpha0) + 2.5 * (lnT - math.log(ref.T0)) \
        - g.Ti * (math.exp(-lnT) - 1.0 / ref.T0)


def _F(g: GasModel, la: float, l1a: float, lnT: float, ref: RefState) -> float:
    a = math.exp(la)
    T = math.exp(lnT)
    lr = _log_p_ratio(g, la, l1a, lnT, ref)
    P, Pi = safe_exp(lr), safe_exp(-lr)
    return T * (1.0 + a) * (4.0 + Pi) + 2.0 * g.Ti * a \
        - ref.T0 * (1.0 + ref.alpha0) * (4.0 + P) - 2.0 * g.Ti * ref.alpha0


def _phi(g: GasModel, la: float, l1a: float, lnT: float, ref: RefState) -> float:
    a = math.exp(la)
    T = math.exp(lnT)
    tau = g.Ti / T
    lr = _log_p_ratio(g, la, l1a, lnT, ref)
    P, Pi = safe_exp(lr), safe_exp(-lr)
    r = ref.T0 * (1.0 + ref.alpha0) / (T * (1.0 + a))
    return 0.25 * Pi * (1.5 + tau) + 0.25 * P * r * (2.5 + tau) - 1.0


def _dlnT_ds(g: GasModel, la: float, l1a: float, lnT: float, ref: RefState) -> float:
    """``d ln T / ds`` along ``F = 0`` with ``s = logit(alpha)``."""
    a = math.exp(la)
    T = math.exp(lnT)
    tau = g.Ti / T
    lr = _log_p_ratio(g, la, l1a, lnT, ref)
    P, Pi = safe_exp(lr), safe_exp(-lr)
    w = math.exp(la + l1a)  # alpha (1 - alpha)
    r = ref.T0 * (1.0 + ref.alpha0) / (T * (1.0 + a))
    num = w * (4.0 + 2.0 * tau) + Pi * (1.0 + a) * (2.0 - a) + 2.0 * P * r
    den = 4.0 * (1.0 + a) * (0.25 * Pi * (1.5 + tau) + 0.25 * P * r * (2.5 + tau) - 1.0)
    return num / den


def _G(g: GasModel, la: float, l1a: float, lnT: float, w: float, ref: RefState) -> float:
    a = math.exp(la)
    T = math.exp(lnT)
    lr = _log_p_ratio(g, la, l1a, lnT, ref)
    theta = T * (1.0 + a) / (ref.T0 * (1.0 + ref.alpha0))
    V = safe_exp(math.log(theta) - lr)
    return safe_exp(lr) + V - theta - 1.0 - w


def _kinetic_w(g: GasModel, u: float, ref: RefState) -> float:
    return (u - ref.u0) ** 2 / (g.a2 * ref.T0 * (1.0 + ref.alpha0))


# ---------------------------------------------------------------------------
# public residuals


def _logs(alpha: float) -> tuple[float, float]:
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
    return math.log(alpha), math.log1p(-alpha)


def thermo_residual_F(g: GasModel, alpha: float, T: float, ref: RefState) -> float:
    """Energy jump residual ``F(alpha, T)`` in kelvin; zero on the thermodynamic locus.

    ``F = T(1+alpha)(4 + p0/p) + 2 Ti alpha - T0(1+alpha0)(4 + p/p0) - 2 Ti alpha0``.
    Ratios ``p/p0`` are formed from logarithms; a ratio beyond the double
    range gives an infinite (but correctly signed) result.
    """
    la, l1a = _logs(alpha)
    if not T > 0:
        raise DomainError(f"T must be positive, got {T!r}")
    return _F(g, la, l1a, math.log(T), ref)


def thermo_phi(g: GasModel, alpha: float, T: float, ref: RefState) -> float:
    """``Phi = -F_T / (4 (1 + alpha))``; positive along the locus."""
    la, l1a = _logs(alpha)
    return _phi(g, la, l1a, math.log(T), ref)


def thermo_slope_dT_dalpha(g: GasModel, alpha: float, T: float, ref: RefState) -> float:
    """Slope ``dT/dalpha = -F_alpha / F_T`` of the thermodynamic locus.

    Raises
    ------
    TracingError
        If ``Phi <= 0`` (the locus cannot pass through such a point).
    """
    la, l1a = _logs(alpha)
    lnT = math.log(T)
    if _phi(g, la, l1a, lnT, ref) <= 0:
        raise TracingError(f"vanishing slope denominator at alpha={alpha!r}, T={T!r}")
    return T * _dlnT_ds(g, la, l1a, lnT, ref) / (alpha * (1.0 - alpha))


@dataclass
class HugoniotCurve:
    """Samples of the thermodynamic part of a Hugoniot locus, ordered by alpha.

    ``residual`` is ``F / residual_scale``. ``log_alpha`` and
    ``log1m_alpha`` carry the ionization degree beyond double precision.
    """

    ref: RefState
    alpha: np.ndarray
    log_alpha: np.ndarray
    log1m_alpha: np.ndarray
    T: np.ndarray
    p: np.ndarray
    v: np.ndarray
    residual: np.ndarray
    phi: np.ndarray
    scale: float = 1.0

    @property
    def s(self) -> np.ndarray:
        return self.log_alpha - self.log1m_alpha

    def __len__(self) -> int:
        return int(self.T.size)


def _correct(g: GasModel, s: float, lnT_guess: float, width: float, ref: RefState,
             scale: float) -> float:
    la, l1a = expit_log(s)

    def r(lnT: float) -> float:
        return _F(g, la, l1a, lnT, ref) / scale

    br = expand_bracket(r, lnT_guess, step=max(width, 1e-6), max_expansions=40)
    return find_root(r, br)


def locus_temperature(g: GasModel, ref: RefState, alpha: float | None = None,
                      s: float | None = None, T_guess: float | None = None) -> float:
    """Temperature on the thermodynamic locus at a given alpha (or logit ``s``)."""
    if s is None:
        s = logit(alpha)
    guess = math.log(T_guess) if T_guess else math.log(ref.T0)
    return math.exp(_correct(g, s, guess, 0.5, ref, residual_scale(g, ref)))


class _Tracer:
    """Predictor-corrector continuation of ``F = 0`` in ``(s, ln T)``."""

    def __init__(self, g: GasModel, ref: RefState, max_halvings: int = 12):
        self.g, self.ref = g, ref
        self.scale = residual_scale(g, ref)
        self.max_halvings = max_halvings

    def slope(self, s: float, lnT: float) -> float:
        la, l1a = expit_log(s)
        return _dlnT_ds(self.g, la, l1a, lnT, self.ref)

    def step(self, s: float, lnT: float, s_next: float) -> float:
        """Advance from a locus point to ``s_next``; returns ``ln T`` there."""
        target = s_next
        for _ in range(200_000):
            h = target - s
            halvings = 0
            while True:
                k = self.slope(s, lnT)
                pred = lnT + h * k
                try:
                    if not math.isfinite(pred):
                        raise BracketError("non-finite predictor")
                    new = _correct(self.g, s + h, pred, 0.5 * abs(h * k) + 1e-3, self.ref,
                                   self.scale)
                    if abs(new - pred) > max(0.25, 2.0 * abs(h * k)):
                        raise BracketError("corrector jumped away from predictor")
                    break
                except (BracketError, ConvergenceError, DomainError, OverflowError):
                    halvings += 1
                    if halvings > self.max_halvings:
                        raise TracingError(f"corrector failed near s={s!r}")
                    h *= 0.5
            la, l1a = expit_log(s + h)
            if _phi(self.g, la, l1a, new, self.ref) <= 0:
                raise TracingError(f"Phi <= 0 at s={s + h!r}")
            s, lnT = s + h, new
            if s == target:
                return lnT
        raise TracingError("step budget exhausted")  # pragma: no cover


def trace_thermo_locus(
    g: GasModel,
    ref: RefState,
    alpha_range: tuple[float, float] | None = None,
    n: int = 200,
    logit_range: tuple[float, float] | None = None,
    max_step: float = 0.5,
) -> HugoniotCurve:
    """Trace ``T(alpha)`` on the thermodynamic part of the Hugoniot locus.

    Samples are uniform in ``s = ln(alpha/(1-alpha))`` (uniform in
    ``ln alpha`` for small alpha). Each step uses an Euler predictor with
    the closed-form slope and a bracketed corrector on ``F(alpha, .) = 0``;
    a failing step is halved up to 12 times. ``Phi > 0`` is asserted at
    every accepted point.

    Parameters
    ----------
    alpha_range : (lo, hi), optional
        Must contain ``alpha0``. Alternatively pass ``logit_range`` to reach
        ionization degrees below the double range.
    n : int
        Number of output samples (the reference is added if missing).
    max_step : float
        Largest continuation step in ``s`` between output samples.

    Raises
    ------
    TracingError
        On corrector failure; ``exc.last`` holds the samples traced so far.
    """
    if logit_range is None:
        if alpha_range is None:
            alpha_range = (1e-6 * ref.alpha0, 1.0 - 1e-6 * (1.0 - ref.alpha0))
        logit_range = (logit(alpha_range[0]), logit(alpha_range[1]))
    s_lo, s_hi = map(float, logit_range)
    s0 = ref.s0
    if not (s_lo <= s0 <= s_hi):
        raise DomainError("the traced range must contain the reference ionization degree")
    grid = np.linspace(s_lo, s_hi, n)
    up = [x for x in grid if x > s0]
    down = [x for x in grid[::-1] if x < s0]
    tracer = _Tracer(g, ref)
    lnT0 = math.log(ref.T0)

    pts: dict[float, float] = {s0: lnT0}

    def run(targets: list[float]) -> None:
        s, lnT = s0, lnT0
        for t in targets:
            # sub-steps no longer than max_step
            m = max(1, int(math.ceil(abs(t - s) / max_step)))
            for j in range(1, m + 1):
                sj = t if j == m else s + (t - s) * j / m
                lnT = tracer.step(s if j == 1 else prev, lnT, sj)
                prev = sj
            s = t
            pts[t] = lnT

    try:
        run(up)
        run(down)
    except TracingError as exc:
        exc.last = _assemble(g, ref, pts, tracer.scale)
        raise
    return _assemble(g, ref, pts, tracer.scale)


def _assemble(g: GasModel, ref: RefState, pts: dict[float, float], scale: float) -> HugoniotCurve:
    ss = np.array(sorted(pts))
    la = np.empty_like(ss)
    l1a = np.empty_like(ss)
    lnT = np.array([pts[x] for x in ss])
    res = np.empty_like(ss)
    phi = np.empty_like(ss)
    logp = np.empty_like(ss)
    for i, s in enumerate(ss):
        la[i], l1a[i] = expit_log(float(s))
        res[i] = _F(g, la[i], l1a[i], lnT[i], ref) / scale
        phi[i] = _phi(g, la[i], l1a[i], lnT[i], ref)
        logp[i] = ref.log_p0 + _log_p_ratio(g, la[i], l1a[i], lnT[i], ref)
    T = np.exp(lnT)
    alpha = np.exp(la)
    with np.errstate(over="ignore"):
        p = np.exp(logp)
        v = np.exp(np.log(g.a2 * T * (1.0 + alpha)) - logp)
    return HugoniotCurve(ref, alpha, la, l1a, T, p, v, res, phi, scale)


def kinetic_residual_G(g: GasModel, alpha: float, u: float, T: float, ref: RefState) -> float:
    """Mass/momentum residual ``G = p/p0 + v/v0 - T(1+alpha)/(T0(1+alpha0)) - 1 - w``.

    ``w = (u - u0)^2 / (a^2 T0 (1 + alpha0))``. ``G = 0`` is the kinetic
    part of the Hugoniot locus.
    """
    la, l1a = _logs(alpha)
    if not T > 0:
        raise DomainError(f"T must be positive, got {T!r}")
    return _G(g, la, l1a, math.log(T), _kinetic_w(g, u, ref), ref)


def kinetic_roots(g: GasModel, alpha: float, u: float, ref: RefState,
                  max_expansions: int = 60) -> tuple[float, float]:
    """The two temperatures where ``G(alpha, u, .)`` vanishes.

    They straddle ``T*`` where ``p(alpha, T*) = p0``; the upper root has
    ``p > p0`` and the lower one ``p < p0``.

    Returns
    -------
    (T_minus, T_plus)
    """
    la, l1a = _logs(alpha)
    w = _kinetic_w(g, u, ref)
    if w == 0.0:
        raise ContactError("u == u0: the kinetic part degenerates to p = p0")
    lr = lambda x: _log_p_ratio(g, la, l1a, x, ref)  # noqa: E731
    lnT_star = find_root(lr, expand_bracket(lr, math.log(ref.T0), 1.0))

    def G(x: float) -> float:
        return _G(g, la, l1a, x, w, ref)

    roots = []
    for direction in (-1.0, 1.0):
        step = 0.1
        far = lnT_star + direction * step
        for _ in range(max_expansions):
            if G(far) > 0:
                break
            step *= 2.0
            far = lnT_star + direction * step
        else:
            raise BracketError(f"kinetic root not bracketed (direction {direction:+.0f}, "
                               f"alpha={alpha!r}, u={u!r})")
        lo, hi = sorted((lnT_star, far))
        roots.append(math.exp(find_root(G, Bracket(lo, hi))))
    return roots[0], roots[1]


@dataclass
class ShockSolution:
    """Shock joining the reference (left) state to ``front``.

    ``m`` is the Lagrangian mass flux ``rho (s - u)``: negative for a
    backward-facing shock, positive for a forward-facing one. ``dS`` is
    ``S_front - S_ref`` in J/(kg K), ``production = -m dS``.
    """

    front: ThermoState
    u: float
    back: RefState
    back_state: ThermoState
    m: float
    s: float
    dS: float
    bethe_estimate: float
    production: float
    kind: str = "shock"

    @property
    def family(self) -> str:
        return "minus" if self.m < 0 else "plus"


def _speeds(front: ThermoState, u: float, back: ThermoState, u0: float) -> tuple[float, float]:
    dp = front.p - back.p
    dv = front.v - back.v
    drho = front.rho - back.rho
    if drho == 0.0 or dv == 0.0:
        raise ContactError("no density jump")
    m2 = -dp / dv
    if m2 < 0:
        raise DomainError("pressure and volume jumps have the same sign")
    du = u - u0
    m = math.copysign(math.sqrt(m2), dp * du if du != 0 else dp)
    s = (front.rho * u - back.rho * u0) / drho
    return m, s


def shock_speeds(sol: ShockSolution) -> tuple[float, float]:
    """Lagrangian mass flux ``m`` and Eulerian speed ``s`` of a shock."""
    return _speeds(sol.front, sol.u, sol.back_state, sol.back.u0)


def _bethe(g: GasModel, back: ThermoState, dp: float, rel_h: float = 1e-4) -> float:
    """``(1 / (12 T)) v_pp dp^3`` with ``v_pp`` along the isentrope of ``back``."""
    eta = back.eta
    p0 = back.p

    def v_of_p(p: float) -> float:
        T = temperature_from_p_eta(g, p, eta)
        return state_from_pT(g, p, T).v

    h = rel_h * p0
    v_pp = (v_of_p(p0 + h) - 2.0 * back.v - 0.0 + v_of_p(p0 - h)) / (h * h)
    return v_pp * dp ** 3 / (12.0 * back.T)


def entropy_jump(g: GasModel, sol: ShockSolution) -> tuple[float, float, float]:
    """``(dS, bethe_estimate, production)`` for a shock.

    ``dS = a^2 (eta_front - eta_ref)``; the weak-shock estimate is
    ``v_pp (p_front - p_ref)^3 / (12 T_ref)`` with ``v_pp`` the second
    isentropic derivative at the reference, by central differences with
    step ``1e-4 p_ref``; ``production = -m dS``.
    """
    dS = _entropy_difference(g, sol.front, sol.back_state)
    bethe = _bethe(g, sol.back_state, sol.front.p - sol.back_state.p)
    return dS, bethe, -sol.m * dS


def _entropy_difference(g: GasModel, a: ThermoState, b: ThermoState) -> float:
    ea = entropy_alphaT(g, None, a.T, log_alpha=a.log_alpha)
    eb = entropy_alphaT(g, None, b.T, log_alpha=b.log_alpha)
    return g.a2 * (ea - eb)


def _assemble_shock(g: GasModel, ref: RefState, la: float, lnT: float, u: float) -> ShockSolution:
    front = state_from_alphaT(g, None, math.exp(lnT), log_alpha=la)
    back = state_from_alphaT(g, None, ref.T0, log_alpha=ref.log_alpha0)
    m, s = _speeds(front, u, back, ref.u0)
    dS = _entropy_difference(g, front, back)
    bethe = _bethe(g, back, front.p - back.p)
    return ShockSolution(front, u, ref, back, m, s, dS, bethe, -m * dS)


def _walk_to_sign_change(g, ref, fn, ds, s_max, tracer):
    """March along the locus from the reference until ``fn(s, lnT)`` turns positive."""
    s, lnT = ref.s0, math.log(ref.T0)
    val = fn(s, lnT)
    while True:
        s_next = s + ds
        if s_next > s_max:
            raise TracingError(f"no sign change up to s={s_max!r}")
        lnT_next = tracer.step(s, lnT, s_next)
        val_next = fn(s_next, lnT_next)
        if val_next >= 0:
            return (s, lnT), (s_next, lnT_next)
        s, lnT, val = s_next, lnT_next, val_next


def _refine_on_locus(g, ref, fn, left, right, scale):
    (s_a, t_a), (s_b, t_b) = left, right

    def lnT_at(s: float) -> float:
        guess = t_a + (t_b - t_a) * (s - s_a) / (s_b - s_a)
        return _correct(g, s, guess, abs(t_b - t_a) + 1e-3, ref, scale)

    root = find_root(lambda s: fn(s, lnT_at(s)), Bracket(s_a, s_b))
    return root, lnT_at(root)


def solve_shock_state(g: GasModel, ref: RefState, u: float, ds: float = 0.25,
                      s_max: float = 80.0) -> ShockSolution:
    """Unique shock state with ``alpha > alpha0`` for the front velocity ``u``.

    Along the thermodynamic locus ``G(alpha, u, T(alpha))`` increases
    strictly from ``-w < 0`` at the reference; the locus is walked in steps
    ``ds`` of ``s`` until ``G`` turns positive and the crossing is refined
    by bracketed root finding.

    Raises
    ------
    ContactError
        If ``u == u0``; see :func:`contact_state`.
    TracingError
        If no crossing exists below ``s_max``.
    """
    w = _kinetic_w(g, u, ref)
    if w == 0.0:
        raise ContactError("u == u0 gives a contact discontinuity; use contact_state")
    tracer = _Tracer(g, ref)

    def fn(s: float, lnT: float) -> float:
        la, l1a = expit_log(s)
        return _G(g, la, l1a, lnT, w, ref)

    left, right = _walk_to_sign_change(g, ref, fn, ds, s_max, tracer)
    s, lnT = _refine_on_locus(g, ref, fn, left, right, tracer.scale)
    la, _ = expit_log(s)
    return _assemble_shock(g, ref, la, lnT, u)


def shock_from_pressure(g: GasModel, ref: RefState, p: float, ds: float = 0.05) -> ShockSolution:
    """Admissible shock from the reference to the locus point with pressure ``p``.

    The velocity is ``u = u0 - sqrt(-(p - p0)(v - v0))``: a backward-facing
    compressive shock for ``p > p0`` and a forward-facing one for
    ``p < p0``.
    """
    if not p > 0:
        raise DomainError(f"p must be positive, got {p!r}")
    if p == ref.p0:
        raise ContactError("p == p0")
    tracer = _Tracer(g, ref)
    target = math.log(p) - ref.log_p0
    sign = 1.0 if target > 0 else -1.0

    def fn(s: float, lnT: float) -> float:
        la, l1a = expit_log(s)
        return sign * (_log_p_ratio(g, la, l1a, lnT, ref) - target)

    if sign > 0:
        left, right = _walk_to_sign_change(g, ref, fn, ds, 80.0, tracer)
    else:
        # walk downwards by mirroring the step direction
        s, lnT = ref.s0, math.log(ref.T0)
        while True:
            s_next = s - ds
            lnT_next = tracer.step(s, lnT, s_next)
            if fn(s_next, lnT_next) >= 0:
                left, right = (s_next, lnT_next), (s, lnT)
                break
            s, lnT = s_next, lnT_next
            if s < -2000:
                raise TracingError("pressure not reached")
    s, lnT = _refine_on_locus(g, ref, fn, left, right, tracer.scale)
    la, l1a = expit_log(s)
    front = state_from_alphaT(g, None, math.exp(lnT), log_alpha=la)
    du = math.sqrt(max(0.0, -(front.p - ref.p0) * (front.v - ref.v0)))
    return _assemble_shock(g, ref, la, lnT, ref.u0 - du)


def contact_state(g: GasModel, ref: RefState, T: float) -> ThermoState:
    """State across a contact discontinuity: ``p = p0``, ``u = u0``, any ``T``."""
    return state_from_pT(g, ref.p0, T)


def rh_residuals(g: GasModel, sol: ShockSolution) -> tuple[float, float, float]:
    """Relative residuals of the mass, momentum and energy jump conditions."""
    f, b = sol.front, sol.back_state
    u1, u0 = sol.u, sol.back.u0
    s = sol.s
    E1 = f.e + 0.5 * u1 * u1
    E0 = b.e + 0.5 * u0 * u0
    out = []
    for lhs1, lhs0, rhs1, rhs0 in (
        (f.rho, b.rho, f.rho * u1, b.rho * u0),
        (f.rho * u1, b.rho * u0, f.rho * u1 * u1 + f.p, b.rho * u0 * u0 + b.p),
        (f.rho * E1, b.rho * E0, f.rho * u1 * E1 + f.p * u1, b.rho * u0 * E0 + b.p * u0),
    ):
        terms = (s * lhs1, s * lhs0, rhs1, rhs0)
        mag = max(abs(t) for t in terms)
        out.append(abs(s * (lhs1 - lhs0) - (rhs1 - rhs0)) / mag if mag else 0.0)
    return out[0], out[1], out[2]


def count_G_sign_changes(g: GasModel, curve: HugoniotCurve, u: float) -> int:
    """Number of sign changes of ``G(alpha, u, T(alpha))`` on samples with ``alpha > alpha0``."""
    w = _kinetic_w(g, u, curve.ref)
    s0 = curve.ref.s0
    vals = [
        _G(g, la, l1a, math.log(T), w, curve.ref)
        for la, l1a, T in zip(curve.log_alpha, curve.log1m_alpha, curve.T)
        if la - l1a > s0
    ]
    signs = np.signbit(np.array(vals))
    return int(np.count_nonzero(signs[1:] != signs[:-1]))
