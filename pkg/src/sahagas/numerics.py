"""Numerical kernels shared by the physics modules.

Bracketed scalar root finding, an adaptive explicit Runge-Kutta integrator,
central differences and a few overflow-safe logarithmic helpers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import RK45
from scipy.optimize import brentq

__all__ = [
    "Bracket",
    "BracketError",
    "ConvergenceError",
    "OdeResult",
    "find_root",
    "expand_bracket",
    "integrate_ode",
    "central_diff",
    "log1pexp",
    "log1mexp",
    "logit",
    "expit_log",
    "safe_exp",
]


class BracketError(ValueError):
    """The function does not change sign on the bracket."""


class ConvergenceError(RuntimeError):
    """An iterative procedure hit its iteration budget."""


@dataclass(frozen=True)
class Bracket:
    """Closed interval ``[lo, hi]`` with ``lo < hi``."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise BracketError(f"non-finite bracket [{self.lo}, {self.hi}]")
        if not self.lo < self.hi:
            raise BracketError(f"empty bracket [{self.lo}, {self.hi}]")


def find_root(
    f: Callable[[float], float],
    b: Bracket | tuple[float, float],
    rel_tol: float = 1e-15,
    max_iter: int = 200,
) -> float:
    """Root of a continuous scalar function on a sign-changing bracket.

    Brent's method (inverse quadratic interpolation guarded by bisection),
    so the bracket is never lost.

    Parameters
    ----------
    f : callable
        Scalar function, continuous on the bracket.
    b : Bracket or (lo, hi)
        Interval with ``sign(f(lo)) != sign(f(hi))``.
    rel_tol : float
        Relative width of the final bracket, at least ``1e-15``.
    max_iter : int
        Iteration cap.

    Returns
    -------
    float
        The root estimate.

    Raises
    ------
    BracketError
        If the endpoint values do not differ in sign.
    ConvergenceError
        If ``max_iter`` iterations are exhausted.
    """
    if not isinstance(b, Bracket):
        b = Bracket(float(b[0]), float(b[1]))
    if rel_tol < 1e-15:
        raise ValueError("rel_tol must be >= 1e-15")
    flo, fhi = f(b.lo), f(b.hi)
    if flo == 0.0:
        return b.lo
    if fhi == 0.0:
        return b.hi
    if math.isnan(flo) or math.isnan(fhi) or (flo > 0) == (fhi > 0):
        raise BracketError(f"no sign change on [{b.lo}, {b.hi}]: f={flo}, {fhi}")
    # brentq refuses rtol below 4 eps
    rtol = max(rel_tol, 4.0 * np.finfo(float).eps)
    try:
        x, info = brentq(f, b.lo, b.hi, xtol=1e-300, rtol=rtol, maxiter=max_iter,
                         full_output=True, disp=False)
    except RuntimeError as exc:  # pragma: no cover - disp=False should prevent this
        raise ConvergenceError(str(exc)) from exc
    if not info.converged:
        raise ConvergenceError(f"no convergence after {info.iterations} iterations")
    return float(x)


def expand_bracket(
    f: Callable[[float], float],
    x0: float,
    step: float = 1.0,
    max_expansions: int = 60,
) -> Bracket:
    """Grow an interval around ``x0`` geometrically until ``f`` changes sign.

    Both ends move outwards, doubling the step each time.
    """
    lo, hi = x0 - step, x0 + step
    flo, fhi = f(lo), f(hi)
    for _ in range(max_expansions):
        if (flo > 0) != (fhi > 0) and not (math.isnan(flo) or math.isnan(fhi)):
            return Bracket(lo, hi)
        step *= 2.0
        if abs(flo) <= abs(fhi) or math.isnan(fhi):
            lo -= step
            flo = f(lo)
        else:
            hi += step
            fhi = f(hi)
    raise BracketError(f"no sign change found around {x0} after {max_expansions} expansions")


@dataclass
class OdeResult:
    """Samples of an ODE solution.

    Attributes
    ----------
    s : ndarray, shape (n,)
        Strictly monotone parameter values.
    y : ndarray, shape (n, m)
        Solution at each parameter value.
    status : str
        ``"completed"`` or ``"truncated"`` (right-hand side blew up or the
        step size underflowed before the end of the span).
    message : str
        Diagnostic text for truncated runs.
    """

    s: np.ndarray
    y: np.ndarray
    status: str = "completed"
    message: str = ""
    n_steps: int = 0

    @property
    def completed(self) -> bool:
        return self.status == "completed"


class _NonFinite(Exception):
    pass


# Dormand-Prince 5(4) tableau as shipped with scipy
_A, _B, _C, _E = RK45.A, RK45.B, RK45.C, RK45.E


def integrate_ode(
    rhs: Callable[[float, np.ndarray], Sequence[float]],
    y0: Sequence[float],
    span: tuple[float, float],
    rel_tol: float = 1e-10,
    abs_tol: float | Sequence[float] = 0.0,
    s_eval: Sequence[float] | None = None,
    max_steps: int = 200_000,
) -> OdeResult:
    """Adaptive Dormand-Prince 5(4) integration with error-per-unit-step control.

    The step controller keeps the embedded error estimate of every step
    below ``rel_tol * |y| * |h| / |s1 - s0|``, so the accumulated error
    scales with ``rel_tol`` rather than with ``rel_tol`` times the number
    of steps. The fifth-order solution is propagated.

    Parameters
    ----------
    rhs : callable
        ``rhs(s, y) -> dy/ds``.
    y0 : sequence of float
        Initial state at ``span[0]``.
    span : (s0, s1)
        Integration interval; ``s1 < s0`` integrates backwards.
    rel_tol : float
        Relative tolerance, at least ``1e-13``.
    abs_tol : float or array of float
        Absolute floor added to the error scale, per component if an array.
    s_eval : sequence of float, optional
        Monotone parameter values (inside the span) at which to report the
        solution. The stepper lands on each of them exactly. When omitted
        every accepted step is reported.
    max_steps : int
        Hard cap on accepted plus rejected steps.

    Returns
    -------
    OdeResult
    """
    if rel_tol < 1e-13:
        raise ValueError("rel_tol must be >= 1e-13")
    s0, s1 = float(span[0]), float(span[1])
    if s0 == s1:
        raise ValueError("empty integration span")
    direction = 1.0 if s1 > s0 else -1.0
    length = abs(s1 - s0)
    y = np.asarray(y0, dtype=float).copy()
    abs_tol = np.asarray(abs_tol, dtype=float)

    def f(s, yy):
        d = np.asarray(rhs(s, yy), dtype=float)
        if not np.all(np.isfinite(d)):
            raise _NonFinite(f"non-finite right-hand side at s={s!r}")
        return d

    if s_eval is None:
        targets = [s1]
        record_all = True
    else:
        targets = [float(t) for t in s_eval]
        if any(direction * (b - a) <= 0 for a, b in zip(targets, targets[1:])):
            raise ValueError("s_eval must be strictly monotone in the span direction")
        if any(direction * (t - s0) < 0 or direction * (t - s1) > 0 for t in targets):
            raise ValueError("s_eval outside the span")
        record_all = False

    out_s: list[float] = []
    out_y: list[np.ndarray] = []
    if record_all or targets[0] == s0:
        out_s.append(s0)
        out_y.append(y.copy())
    ti = 0
    while ti < len(targets) and targets[ti] == s0:
        ti += 1

    try:
        k0 = f(s0, y)
    except _NonFinite as exc:
        return OdeResult(np.array(out_s), np.array(out_y).reshape(len(out_s), y.size),
                         "truncated", str(exc))

    s = s0
    h = 1e-3 * length
    n = 0
    K = np.empty((7, y.size))
    status, message = "completed", ""
    while ti < len(targets):
        n += 1
        if n > max_steps:
            status, message = "truncated", f"step budget {max_steps} exhausted at s={s!r}"
            break
        target = targets[ti]
        remaining = abs(target - s)
        hit = h >= remaining
        h_try = remaining if hit else h
        if h_try <= 1e-14 * max(abs(s), length):
            status, message = "truncated", f"step size underflow at s={s!r}"
            break
        hs = direction * h_try
        try:
            K[0] = k0
            for i in range(1, 6):
                K[i] = f(s + _C[i] * hs, y + hs * (_A[i, :i] @ K[:i]))
            y_new = y + hs * (_B @ K[:6])
            K[6] = f(s + hs, y_new)
        except _NonFinite:
            # treat like an error-test failure; shrink and retry
            h = 0.25 * h_try
            continue
        err = hs * (_E @ K)
        scale = (abs_tol + rel_tol * np.maximum(np.abs(y), np.abs(y_new))) * (h_try / length)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(scale > 0, np.abs(err) / scale, np.where(err == 0, 0.0, np.inf))
        err_norm = float(np.max(ratio)) if ratio.size else 0.0
        if err_norm <= 1.0:
            s = target if hit else s + hs
            y = y_new
            k0 = K[6].copy()
            if hit:
                if not record_all or ti == len(targets) - 1:
                    out_s.append(s)
                    out_y.append(y.copy())
                ti += 1
            elif record_all:
                out_s.append(s)
                out_y.append(y.copy())
            factor = 5.0 if err_norm == 0 else min(5.0, 0.9 * err_norm ** -0.25)
            h = h_try * factor if not hit or factor < 1.0 else max(h, h_try * factor)
        else:
            h = h_try * max(0.2, 0.9 * err_norm ** -0.25)
    ys = np.array(out_y).reshape(len(out_y), y.size)
    return OdeResult(np.array(out_s), ys, status, message, n)


def central_diff(f: Callable[[float], float], x: float, h: float) -> float:
    """Second-order central difference ``(f(x+h) - f(x-h)) / (2h)``."""
    if not h > 0:
        raise ValueError("h must be positive")
    return (f(x + h) - f(x - h)) / (2.0 * h)


def log1pexp(x: float) -> float:
    """``log(1 + exp(x))`` without overflow or loss of small values."""
    return float(np.logaddexp(0.0, x))


def log1mexp(x: float) -> float:
    """``log(1 - exp(x))`` for ``x < 0``, accurate on both ends."""
    if x >= 0:
        raise ValueError("log1mexp needs x < 0")
    if x > -math.log(2.0):
        return math.log(-math.expm1(x))
    return math.log1p(-math.exp(x))


def logit(alpha: float) -> float:
    """``log(alpha / (1 - alpha))``."""
    return math.log(alpha) - math.log1p(-alpha)


def expit_log(s: float) -> tuple[float, float]:
    """``(log(alpha), log(1 - alpha))`` for ``alpha = 1 / (1 + exp(-s))``."""
    return -log1pexp(-s), -log1pexp(s)


def safe_exp(x: float) -> float:
    """``exp(x)`` that returns ``inf`` instead of raising on overflow."""
    return math.exp(x) if x < 709.7 else math.inf
