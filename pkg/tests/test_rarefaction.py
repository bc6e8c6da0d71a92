import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sahagas.characteristics import inflection_f, lagrangian_sound_speed
from sahagas.hugoniot import reference_state
from sahagas.rarefaction import (
    alpha_infinity,
    du_dalpha,
    integrate_rarefaction,
    isentrope_convexity,
    isentrope_d2T,
    isentrope_denominator,
    isentrope_dT_dalpha,
    isentrope_T,
    p_over_lambda,
    sample_isentrope,
)
from sahagas.thermo import HYDROGEN as H, DomainError, GasModel, entropy_alphaT, pressure_from_alphaT

# 30-digit quadrature of dp/lambda along the isentrope through (1e-3, 1e4 K)
PLUS_TO_0_3 = (70028.800959620847, -94158.829453570861)
MINUS_TO_1E_8 = (4064.2730530798652, -12975.845000995754)


@pytest.fixture(scope="module")
def ref():
    return reference_state(H, 1e-3, 1e4)


def test_alpha_infinity_symmetric_level():
    a = alpha_infinity(3.75)
    assert a == 0.5
    assert abs(isentrope_denominator(a, 3.75)) <= 1e-12


def test_alpha_infinity_brackets():
    a = alpha_infinity(2.5)
    assert 0.3 < a < 0.5
    assert abs(isentrope_denominator(a, 2.5)) <= 1e-12
    assert isentrope_denominator(0.3, 2.5) > 0 > isentrope_denominator(0.5, 2.5)


def test_alpha_infinity_rounds_to_one_for_high_levels():
    assert alpha_infinity(80.0) == 1.0
    with pytest.raises(DomainError):
        sample_isentrope(H, 80.0)


@given(st.floats(-200.0, 60.0))
def test_alpha_infinity_is_root(eta0):
    a = alpha_infinity(eta0)
    assert 0 < a < 1
    # residual limited by rounding of alpha times |d'(alpha)|
    slope = 2 / (1 - a) + 2 / a + 2.5
    assert abs(isentrope_denominator(a, eta0)) <= 1e-12 * max(1.0, abs(eta0)) + 8e-16 * a * slope


def test_alpha_infinity_ignores_gas_constants():
    # the blow-up degree is a function of the entropy level alone
    g2 = GasModel(a2=H.a2, kappa=H.kappa, Ti=10 * H.Ti)
    for a, T in [(1e-3, 1e4), (0.2, 3e4)]:
        e1 = entropy_alphaT(H, a, T)
        e2 = entropy_alphaT(g2, a, 10 * T)
        assert e1 == pytest.approx(e2, rel=1e-14)
        assert alpha_infinity(e1) == pytest.approx(alpha_infinity(e2), rel=1e-14)


def test_isentrope_closed_form(ref):
    eta0 = entropy_alphaT(H, 1e-3, 1e4)
    a_inf = alpha_infinity(eta0)
    alphas = np.linspace(1e-6, a_inf * (1 - 1e-3), 20)
    Ts = [isentrope_T(H, a, eta0) for a in alphas]
    assert np.all(np.diff(Ts) > 0)
    for a, T in zip(alphas, Ts):
        assert entropy_alphaT(H, a, T) == pytest.approx(eta0, abs=1e-12 * max(1, abs(eta0)))
    assert isentrope_T(H, 1e-3, eta0) == pytest.approx(1e4, rel=1e-13)
    assert isentrope_T(H, a_inf * (1 - 1e-9), eta0) > 1e6 * H.Ti
    with pytest.raises(DomainError):
        isentrope_T(H, a_inf * 1.0001, eta0)


def test_small_alpha_asymptotics():
    eta0 = 5.0
    for a in (1e-20, 1e-40, 1e-80):
        T = isentrope_T(H, a, eta0)
        pred = math.exp(-H.Ti / (2 * T) + (eta0 - 2.5) / 2)
        # the ratio is (1 - alpha) e^{-5 alpha / 4}
        assert a / pred == pytest.approx(1.0, rel=3 * a)


def test_slope_and_curvature_match_finite_differences():
    eta0 = 5.0
    for a in (1e-6, 1e-3, 0.1, 0.3):
        h = 1e-4 * a
        Tp, T, Tm = (isentrope_T(H, x, eta0) for x in (a + h, a, a - h))
        assert isentrope_dT_dalpha(H, a, T) == pytest.approx((Tp - Tm) / (2 * h), rel=1e-7)
        assert isentrope_d2T(H, a, eta0) == pytest.approx((Tp - 2 * T + Tm) / h**2, rel=1e-4)


def test_convexity_classification():
    eta0 = 5.0
    a_inf = alpha_infinity(eta0)
    # pick the point on the isentrope where Ti / T = 3
    from sahagas.numerics import find_root
    a3 = find_root(lambda a: H.Ti / isentrope_T(H, a, eta0) - 3.0, (1e-6, a_inf * (1 - 1e-9)))
    assert isentrope_convexity(H, a3, eta0) == 1
    assert isentrope_convexity(H, 1e-8, eta0) == -1


def test_p_over_lambda_and_lambda_density():
    for a, T in [(1e-3, 1e4), (0.5, 3e4), (1e-12, 2000.0)]:
        p = pressure_from_alphaT(H, a, T)
        assert p_over_lambda(H, a, T) == pytest.approx(p / lagrangian_sound_speed(H, p, T), rel=1e-10)
        assert du_dalpha(H, a, T) > 0
    with pytest.raises(DomainError):
        du_dalpha(H, 0.0, 1e4)


def test_lambda_blows_up_with_three_halves():
    eta0 = 5.0
    a_inf = alpha_infinity(eta0)
    d = np.array([1e-5, 1e-6, 1e-7])
    vals = [du_dalpha(H, a_inf - x, isentrope_T(H, a_inf - x, eta0)) for x in d]
    slope = np.polyfit(np.log(d), np.log(vals), 1)[0]
    assert slope == pytest.approx(-1.5, rel=0.05)


def test_plus_rarefaction_oracle(ref):
    iso = integrate_rarefaction(H, ref, "plus", 0.3)
    assert iso.status == "completed"
    assert iso.alpha[-1] == pytest.approx(0.3, rel=1e-14)
    assert iso.T[-1] == pytest.approx(PLUS_TO_0_3[0], rel=1e-10)
    assert iso.u_plus[-1] == pytest.approx(PLUS_TO_0_3[1], rel=1e-9)
    assert np.all(np.diff(iso.u_plus) < 0) and np.all(np.diff(iso.u_minus) > 0)
    assert np.all(np.diff(iso.p) > 0) and np.all(np.diff(iso.T) > 0)
    assert np.max(np.abs(iso.eta_drift)) <= 1e-10
    np.testing.assert_allclose(iso.T, iso.T_closed, rtol=1e-10)


def test_minus_rarefaction_oracle(ref):
    iso = integrate_rarefaction(H, ref, "minus", 1e-8)
    assert iso.T[-1] == pytest.approx(MINUS_TO_1E_8[0], rel=1e-10)
    assert iso.u_minus[-1] == pytest.approx(MINUS_TO_1E_8[1], rel=1e-9)
    assert np.all(np.diff(iso.alpha) < 0)
    assert np.max(np.abs(iso.eta_drift)) <= 1e-10


def test_velocity_bounded_as_alpha_vanishes(ref):
    # with tau ~ 2|ln alpha| the remaining variation decays like |ln alpha|^(-1/2),
    # so successive differences over doubling |ln alpha| shrink by sqrt(2)
    u = [integrate_rarefaction(H, ref, "minus", 10.0**-k).u_minus[-1] for k in (20, 40, 80, 160)]
    d = np.diff(u)
    assert np.all(d < 0)
    for r in d[:-1] / d[1:]:
        assert r == pytest.approx(math.sqrt(2), rel=0.03)
    # geometric tail gives a finite limit
    limit = u[-1] + d[-1] / (math.sqrt(2) - 1)
    assert math.isfinite(limit) and limit > 2 * u[-1]


def test_branch_validation(ref):
    with pytest.raises(DomainError):
        integrate_rarefaction(H, ref, "minus", 0.01)
    with pytest.raises(DomainError):
        integrate_rarefaction(H, ref, "plus", 1e-4)
    a_inf = alpha_infinity(entropy_alphaT(H, 1e-3, 1e4))
    with pytest.raises(DomainError):
        integrate_rarefaction(H, ref, "plus", a_inf - 1e-13)
    with pytest.raises(ValueError):
        integrate_rarefaction(H, ref, "middle", 0.01)
    single = integrate_rarefaction(H, ref, "plus", ref.alpha0)
    assert len(single) == 1 and single.u_plus[0] == ref.u0


def test_lambda_increases_along_certified_plus_branch(ref):
    iso = integrate_rarefaction(H, ref, "plus", 0.3, n=100)
    lam = np.array([lagrangian_sound_speed(H, p, T) for p, T in zip(iso.p, iso.T)])
    gn = iso.gn_certified
    assert gn.sum() > 50
    assert np.all(np.diff(lam)[gn[1:] & gn[:-1]] > 0)


def test_inflection_sign_matches_lambda_change():
    iso = sample_isentrope(H, 0.0, n=300, alpha_min=1e-30)
    lam = np.array([lagrangian_sound_speed(H, p, T) for p, T in zip(iso.p, iso.T)])
    dlam = np.diff(lam)
    for i in range(1, len(iso) - 1):
        f = inflection_f(H, iso.alpha[i], iso.T[i])
        if abs(f) > 1e-6 and np.sign(dlam[i - 1]) == np.sign(dlam[i]):
            assert np.sign(f) == np.sign(dlam[i])


@pytest.mark.parametrize("eta0", [0.0, 5.0, 10.0])
def test_sample_isentrope(eta0):
    iso = sample_isentrope(H, eta0, n=150)
    assert iso.alpha_inf == alpha_infinity(eta0)
    assert np.all(iso.alpha < iso.alpha_inf) and np.all(iso.T > 0)
    assert np.all(np.diff(iso.T) > 0)
    assert np.max(np.abs(iso.eta_drift)) <= 1e-8 * max(1.0, abs(eta0))
    assert iso.u_plus[0] == 0.0 and iso.u_minus[0] == 0.0


def test_u_blow_up_exponent():
    eta0 = 5.0
    a_inf = alpha_infinity(eta0)
    iso = sample_isentrope(H, eta0, n=400, alpha_min=1e-3, gap=1e-10)
    d = a_inf - iso.alpha
    sel = (d < 1e-6 * a_inf) & (d > 1e-9 * a_inf)
    slope = np.polyfit(np.log(d[sel]), np.log(-iso.u_plus[sel]), 1)[0]
    assert slope == pytest.approx(-0.5, rel=0.05)


def test_anchor_inside_range():
    iso = sample_isentrope(H, 5.0, n=50, anchor_alpha=1e-3, u0=100.0)
    i = int(np.argmin(np.abs(np.log(iso.alpha) - math.log(1e-3))))
    assert np.all(np.diff(iso.u_plus) < 0)
    assert iso.u_plus[0] > 100.0 > iso.u_plus[-1]
    assert abs(iso.u_plus[i] - 100.0) < abs(iso.u_plus[0] - 100.0)
