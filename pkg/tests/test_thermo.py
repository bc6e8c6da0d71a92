import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sahagas.numerics import central_diff
from sahagas.thermo import (
    HYDROGEN as H,
    DomainError,
    GasModel,
    alpha_from_pT,
    alpha_from_rhoT,
    entropy_alphaT,
    entropy_form_offset,
    entropy_pT,
    isentrope_dT_dp,
    log_alpha_from_pT,
    log_alpha_from_rhoT,
    log_saha_beta,
    partials,
    pressure_from_alphaT,
    state_from_alphaT,
    state_from_pT,
    state_from_rhoT,
    temperature_from_p_eta,
)

# 40-digit evaluations of the Saha state functions (mpmath, independent code)
ORACLE_STATES = [
    # p, T, alpha, eta, lambda, e
    (1e5, 1e4, 0.021623102327051299, 11.951448722098588, 12.328608827895545, 155775028.89069966),
    (1e3, 2e4, 0.99929317517362414, 36.181141091193021, 0.070601801988482029, 1809685585.4863014),
    (2e6, 3e4, 0.96492092231706264, 22.777112675327001, 111.77916384237957, 2001063096.7636151),
]

states_alphaT = st.tuples(
    st.floats(-60.0, math.log(0.99)),  # ln alpha
    st.floats(math.log(300.0), math.log(2e5)),  # ln T
)


def test_gas_model_validation():
    with pytest.raises(ValueError):
        GasModel(a2=-1.0, kappa=1.0, Ti=1.0)
    assert H.kappa_bar == pytest.approx(1.0 / (H.a2 * H.kappa), rel=1e-15)


def test_log_saha_beta_anchors():
    assert log_saha_beta(H, 1466.3, 750.0) == pytest.approx(-2 * math.log(3.8418e-45), abs=0.01)
    assert log_saha_beta(H, 1466.3, 300.0) == pytest.approx(-2 * math.log(3.5929e-114), abs=0.1)


def test_log_saha_beta_zero_at_unit_factor():
    T = 8000.0
    p = math.exp(-math.log(H.kappa) + 2.5 * math.log(T) - H.Ti / T)
    assert abs(log_saha_beta(H, p, T)) < 1e-13


def test_alpha_anchor_values():
    assert alpha_from_pT(H, 1466.3, 750.0) == pytest.approx(3.8418e-45, rel=1e-3)
    assert alpha_from_pT(H, 1466.3, 300.0) == pytest.approx(3.5929e-114, rel=1e-3)


def test_alpha_half_when_beta_three():
    T = 20000.0
    p = 3.0 / (H.kappa * T**-2.5 * math.exp(H.Ti / T))
    assert alpha_from_pT(H, p, T) == pytest.approx(0.5, rel=1e-14)


@pytest.mark.parametrize("p,T,alpha,eta,lam,e", ORACLE_STATES)
def test_state_against_high_precision_oracle(p, T, alpha, eta, lam, e):
    s = state_from_pT(H, p, T)
    assert s.alpha == pytest.approx(alpha, rel=1e-12)
    assert s.eta == pytest.approx(eta, rel=1e-12)
    assert s.lam == pytest.approx(lam, rel=1e-10)
    assert s.e == pytest.approx(e, rel=1e-12)


def test_alpha_from_rhoT_exact_values():
    # K = kappa_bar T^(3/2) e^(-Ti/T) / rho = 1/2 gives alpha = 1/2
    T = 15000.0
    rho = 2.0 * H.kappa_bar * T**1.5 * math.exp(-H.Ti / T)
    assert alpha_from_rhoT(H, rho, T) == pytest.approx(0.5, rel=1e-14)
    rho = 1e20 * H.kappa_bar * T**1.5 * math.exp(-H.Ti / T)
    assert alpha_from_rhoT(H, rho, T) / math.sqrt(1e-20) == pytest.approx(1.0, rel=1e-9)


def test_rhoT_round_trip_at_anchor_state():
    s = state_from_pT(H, 1466.3, 750.0)
    la = log_alpha_from_rhoT(H, s.rho, 750.0)
    assert la == pytest.approx(s.log_alpha, rel=1e-10)


def test_pressure_exact_value():
    # T^(5/2) e^(-Ti/T) = kappa and alpha = 1/2 gives p = 3
    from sahagas.numerics import Bracket, find_root
    T = find_root(lambda t: 2.5 * math.log(t) - H.Ti / t - math.log(H.kappa), Bracket(1e3, 1e5))
    assert pressure_from_alphaT(H, 0.5, T) == pytest.approx(3.0, rel=1e-9)


@pytest.mark.parametrize("alpha", [1e-30, 1e-3, 0.5, 0.99])
@pytest.mark.parametrize("T", [500.0, 5000.0, 5e4])
def test_pressure_alpha_round_trip(alpha, T):
    p = pressure_from_alphaT(H, alpha, T)
    la = log_alpha_from_pT(H, p, T)
    assert la == pytest.approx(math.log(alpha), rel=1e-12, abs=1e-15)


def test_pressure_at_anchor_row():
    assert pressure_from_alphaT(H, 3.8418e-45, 750.0) == pytest.approx(1466.3, rel=5e-3)


def test_extreme_state_stays_finite():
    s = state_from_pT(H, 1466.3, 300.0)
    assert s.log_alpha == pytest.approx(math.log(3.5929e-114), abs=2e-3)
    assert math.isfinite(s.eta) and math.isfinite(s.lam)
    T = H.Ti / 4000.0  # keeps p representable at ln(alpha) = -2000
    s = state_from_alphaT(H, None, T, log_alpha=-2000.0)
    assert s.alpha == 0.0 and s.log_alpha == -2000.0
    assert math.isfinite(s.p) and math.isfinite(s.eta)


def test_domain_errors():
    with pytest.raises(DomainError):
        alpha_from_pT(H, -1.0, 300.0)
    with pytest.raises(DomainError):
        state_from_pT(H, 1.0, 0.0)
    with pytest.raises(DomainError):
        pressure_from_alphaT(H, 1.0, 300.0)
    with pytest.raises(DomainError):
        pressure_from_alphaT(H, 0.0, 300.0)


def test_state_identities():
    s = state_from_pT(H, 1466.3, 750.0)
    assert s.e == pytest.approx(1.5 * 8314 * 750, rel=1e-6)
    assert s.e == pytest.approx(1.5 * H.a2 * s.T, rel=1e-12)
    for s in (state_from_pT(H, 1e5, 1e4), state_from_rhoT(H, 1e-3, 2e4),
              state_from_alphaT(H, 0.7, 3e4)):
        assert s.H - s.e == pytest.approx(s.p * s.v, rel=1e-13)
        assert s.p * s.v == pytest.approx(H.a2 * s.T * (1 + s.alpha), rel=1e-13)
        assert s.v * s.rho == pytest.approx(1.0, rel=1e-15)


def test_entropy_ideal_gas_limit():
    p, T = 1466.3, 750.0
    assert entropy_pT(H, p, T) == pytest.approx(2.5 * math.log(T) - math.log(p), rel=1e-14)


def test_entropy_decreases_in_p_with_slope_at_most_minus_one_over_p():
    for p, T in [(1e3, 1e4), (1e5, 2e4), (1e7, 5e4)]:
        slope = central_diff(lambda x: entropy_pT(H, x, T), p, 1e-5 * p)
        assert slope <= -1.0 / p


@given(states_alphaT)
def test_entropy_forms_differ_by_constant(x):
    la, lT = x
    a, T = math.exp(la), math.exp(lT)
    p = pressure_from_alphaT(H, a, T)
    diff = entropy_alphaT(H, a, T) - entropy_pT(H, p, T)
    assert diff == pytest.approx(entropy_form_offset(H), abs=1e-10 * max(1.0, abs(entropy_pT(H, p, T))))


def test_entropy_offset_value():
    assert entropy_form_offset(H) == pytest.approx(2.5 - math.log(H.kappa), rel=1e-15)


def test_alpha_derivative_identity():
    for p, T in [(1466.3, 5000.0), (1e5, 1e4), (1e3, 3e4)]:
        d = partials(H, p, T)
        q = 2.5 + H.Ti / T
        lhs = -(T / p) * d.dalpha_dT - q * d.dalpha_dp
        assert abs(lhs) <= 1e-13 * abs(q * d.dalpha_dp)


def _fd_partials(p, T, h=1e-5):
    hp, hT = h * p, h * T
    a = lambda x, y: alpha_from_pT(H, x, y)  # noqa: E731
    v = lambda x, y: state_from_pT(H, x, y).v  # noqa: E731
    eta = lambda x, y: entropy_pT(H, x, y)  # noqa: E731
    s = state_from_pT(H, p, T)
    rho = s.rho
    p_rhoT = lambda r, y: state_from_rhoT(H, r, y).p  # noqa: E731
    e_rhoT = lambda r, y: state_from_rhoT(H, r, y).e  # noqa: E731
    return dict(
        dalpha_dp=central_diff(lambda x: a(x, T), p, hp),
        dalpha_dT=central_diff(lambda y: a(p, y), T, hT),
        p_rho=central_diff(lambda r: p_rhoT(r, T), rho, h * rho),
        p_T=central_diff(lambda y: p_rhoT(rho, y), T, hT),
        e_T=central_diff(lambda y: e_rhoT(rho, y), T, hT),
        eta_p=central_diff(lambda x: eta(x, T), p, hp),
        eta_T=central_diff(lambda y: eta(p, y), T, hT),
        v_p=central_diff(lambda x: v(x, T), p, hp),
        v_T=central_diff(lambda y: v(p, y), T, hT),
    )


@pytest.mark.parametrize("p,T", [(1466.3, 5000.0), (1e5, 1.2e4), (1e3, 2.5e4)])
def test_partials_against_finite_differences(p, T):
    d = partials(H, p, T)
    fd = _fd_partials(p, T)
    for name, val in fd.items():
        assert getattr(d, name) == pytest.approx(val, rel=1e-6), name


def test_partials_signs_and_ideal_limit():
    d = partials(H, 1466.3, 750.0)
    assert d.p_rho == pytest.approx(H.a2 * 750.0, rel=1e-10)
    for p, T in [(1466.3, 750.0), (1e5, 1e4), (1e3, 3e4)]:
        d = partials(H, p, T)
        assert d.p_rho > 0 and d.p_T > 0 and d.e_T > 0 and d.eta_p < 0 and d.eta_T > 0


@given(st.tuples(st.floats(-60.0, math.log(0.99)), st.floats(math.log(1000.0), math.log(2e5))))
def test_maxwell_relation(x):
    la, lT = x
    a, T = math.exp(la), math.exp(lT)
    p = pressure_from_alphaT(H, a, T)
    # step balances truncation (curvature ~ (Ti/T)^2) against rounding in v
    hT = 1e-4 * T / max(1.0, H.Ti / T)
    vT = central_diff(lambda y: state_from_pT(H, p, y).v, T, hT)
    eta_p = central_diff(lambda z: entropy_pT(H, z, T), p, 1e-5 * p)
    v = state_from_pT(H, p, T).v
    assert abs(vT + H.a2 * eta_p) <= 1e-6 * abs(v / T)


@given(states_alphaT, st.floats(-0.05, 0.05))
def test_first_law_along_isentrope(x, dlp):
    la, lT = x
    a, T = math.exp(la), math.exp(lT)
    p = pressure_from_alphaT(H, a, T)
    eta = entropy_pT(H, p, T)
    h = 1e-4 if abs(dlp) < 1e-4 else dlp
    p2 = p * math.exp(h)
    T2 = temperature_from_p_eta(H, p2, eta)
    s1, s2 = state_from_pT(H, p, T), state_from_pT(H, p2, T2)
    de = s2.e - s1.e
    pdv = 0.5 * (s1.p + s2.p) * (s2.v - s1.v)
    # trapezoidal error is second order in the step
    assert abs(de + pdv) <= max(1e-6, 2 * h * h) * abs(pdv)


@given(st.floats(math.log(1e-2), math.log(1e8)), st.floats(math.log(300.0), math.log(1e5)))
def test_temperature_round_trip(lp, lT):
    p, T = math.exp(lp), math.exp(lT)
    eta = entropy_pT(H, p, T)
    assert temperature_from_p_eta(H, p, eta) == pytest.approx(T, rel=1e-10)


def test_temperature_ideal_scaling():
    # at alpha ~ 0 an isentrope has T proportional to p^(2/5)
    eta = entropy_pT(H, 1e3, 400.0)
    ps = np.geomspace(1e3, 4e3, 5)
    Ts = [temperature_from_p_eta(H, p, eta) for p in ps]
    slope = np.polyfit(np.log(ps), np.log(Ts), 1)[0]
    assert slope == pytest.approx(0.4, abs=1e-6)


@pytest.mark.parametrize("p,T", [(1466.3, 5000.0), (1e5, 1.5e4), (1e3, 3e4)])
def test_isentrope_slope_matches_finite_difference(p, T):
    eta = entropy_pT(H, p, T)
    fd = central_diff(lambda x: temperature_from_p_eta(H, x, eta), p, 1e-5 * p)
    assert isentrope_dT_dp(H, p, T) == pytest.approx(fd, rel=1e-6)
    assert isentrope_dT_dp(H, p, T) > 0


def test_rho_and_p_paths_agree_on_grid():
    for rho in np.geomspace(1e-8, 1e2, 10):
        for T in np.geomspace(500.0, 1e5, 10):
            la = log_alpha_from_rhoT(H, rho, T)
            p = state_from_rhoT(H, rho, T).p
            assert log_alpha_from_pT(H, p, T) == pytest.approx(la, abs=1e-10, rel=1e-12)


def test_monotonicity_grid():
    ps = np.geomspace(1.0, 1e8, 12)
    Ts = np.geomspace(500.0, 1e5, 12)
    la = np.array([[log_alpha_from_pT(H, p, T) for T in Ts] for p in ps])
    assert np.all(np.diff(la, axis=0) < 0)
    assert np.all(np.diff(la, axis=1) > 0)
