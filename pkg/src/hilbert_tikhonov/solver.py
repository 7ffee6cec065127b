"""Exact minimization of the Tikhonov functional for separable test problems.

For the diagonal quadratic operator the functional

    T(u) = ||F u - f||**2 + alpha * ||u - u_bar||_1**2

splits into independent scalar quartics

    q_n(t) = ((L t + Q t**2) / s_n - f_n)**2 + alpha b_n**2 (t - u_bar_n)**2,

with ``s_n = b_n**a``. Each is minimized globally by enumerating the real
roots of its cubic derivative. The roots are bracketed analytically (the
derivative of the cubic is a quadratic, so its monotone pieces are known)
and refined by bisection-safeguarded Newton.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidInputError, LagrangeSolveError
from .hilbert_scale import _as_vector

_EPS = np.finfo(float).eps
_TINY = 1e-300


@dataclass(frozen=True)
class RegularizedSolution:
    """A minimizer of the Tikhonov functional and its diagnostics.

    ``alpha`` is ``inf`` for the initial-guess choice ``u = u_bar``.
    ``multiplier`` is the Lagrange multiplier of the ball constraint
    (0 when the constraint is inactive).
    """

    u: np.ndarray
    alpha: float
    residual: float
    penalty: float
    objective: float
    multiplier: float = 0.0


def residual_norm(problem, u, f_delta):
    return float(np.linalg.norm(problem.forward(u) - f_delta))


def _solution(problem, u, f_delta, alpha, multiplier=0.0):
    residual = residual_norm(problem, u, f_delta)
    penalty = problem.scale.norm_tau(u - problem.u_bar, 1.0)
    if np.isinf(alpha):
        objective = residual**2
    else:
        objective = residual**2 + alpha * penalty**2
    return RegularizedSolution(u, float(alpha), residual, penalty, objective, float(multiplier))


def initial_guess_solution(problem, f_delta):
    """The ``alpha = inf`` solution ``u = u_bar``."""
    f_delta = _as_vector(f_delta, problem.size, "f_delta")
    return _solution(problem, np.array(problem.u_bar), f_delta, np.inf)


# -- scalar quartic machinery -------------------------------------------------


class _Coordinates:
    """Per-coordinate data of the separable objective (all arrays of one length)."""

    def __init__(self, problem, f, alpha, index=None):
        idx = slice(None) if index is None else index
        self.L = float(problem.linear_coeff)
        self.Q = problem.quadratic_coeff
        self.s = np.atleast_1d(problem.divisor[idx])
        self.b2 = np.atleast_1d(problem.scale.power(2.0)[idx])
        self.u_bar = np.atleast_1d(problem.u_bar[idx])
        self.f = np.atleast_1d(np.asarray(f, dtype=float))
        self.alpha = alpha

    def objective(self, t, mu=0.0):
        misfit = (self.L * t + self.Q * t * t) / self.s - self.f
        return misfit**2 + self.alpha * self.b2 * (t - self.u_bar) ** 2 + mu * t * t

    def cubic(self, mu=0.0):
        """Coefficients of ``s**2 q'(t) / 2``, highest degree first."""
        L, Q, s, f = self.L, self.Q, self.s, self.f
        weight = self.alpha * self.b2 * s * s
        a3 = np.full_like(s, 2 * Q * Q)
        a2 = np.full_like(s, 3 * L * Q)
        a1 = L * L - 2 * s * f * Q + weight + mu * s * s
        a0 = -s * f * L - weight * self.u_bar
        return a3, a2, a1, a0


def _horner(coeffs, t):
    a3, a2, a1, a0 = coeffs
    p = ((a3 * t + a2) * t + a1) * t + a0
    dp = (3 * a3 * t + 2 * a2) * t + a1
    return p, dp


def _safeguarded_newton(coeffs, lo, hi, max_iter=400):
    """Root of the cubic in each bracket ``[lo, hi]`` containing a sign change.

    Newton steps that leave the bracket or fail to halve the step are
    replaced by bisection.
    """
    p_lo, _ = _horner(coeffs, lo)
    # orient so that p(xl) <= 0 <= p(xh)
    swap = p_lo > 0
    xl = np.where(swap, hi, lo)
    xh = np.where(swap, lo, hi)
    t = 0.5 * (lo + hi)
    dx_old = np.abs(hi - lo)
    dx = dx_old.copy()
    active = np.ones(t.shape, dtype=bool)
    for _ in range(max_iter):
        if not active.any():
            break
        idx = np.nonzero(active)[0]
        c = tuple(a[idx] for a in coeffs)
        ti, xli, xhi = t[idx], xl[idx], xh[idx]
        p, dp = _horner(c, ti)
        neg = p < 0
        xli = np.where(neg, ti, xli)
        xhi = np.where(neg, xhi, ti)
        with np.errstate(divide="ignore", invalid="ignore"):
            bisect = (((ti - xhi) * dp - p) * ((ti - xli) * dp - p) > 0) | (
                np.abs(2 * p) > np.abs(dx_old[idx] * dp)
            )
            step = np.where(bisect, 0.5 * (xhi - xli), p / dp)
        t_new = np.where(bisect, xli + step, ti - step)
        done = (p == 0) | (np.abs(step) <= 4 * _EPS * np.maximum(np.abs(t_new), _TINY)) | (t_new == ti)
        t_new = np.where(p == 0, ti, t_new)
        dx_old[idx] = dx[idx]
        dx[idx] = step
        t[idx], xl[idx], xh[idx] = t_new, xli, xhi
        active[idx[done]] = False
    return t


def _cubic_real_roots(coeffs):
    """All real roots of ``a3 t^3 + a2 t^2 + a1 t + a0`` per coordinate.

    Returns an ``(n, 3)`` array, sorted ascending per row, padded with nan.
    A vanishing leading coefficient (linear operator) reduces to one root.
    """
    a3, a2, a1, a0 = coeffs
    n = a0.shape[0]
    roots = np.full((n, 3), np.nan)

    linear = a3 == 0
    if linear.any():
        roots[linear, 0] = -a0[linear] / a1[linear]
    cubic = ~linear
    if not cubic.any():
        return roots

    c = tuple(a[cubic] for a in coeffs)
    b3, b2, b1, b0 = c
    bound = 1 + np.maximum(np.maximum(np.abs(b2), np.abs(b1)), np.abs(b0)) / b3
    # stationary points of the cubic classify its monotone pieces
    disc = b2 * b2 - 3 * b3 * b1
    sq = np.sqrt(np.maximum(disc, 0))
    left = (-b2 - sq) / (3 * b3)
    right = (-b2 + sq) / (3 * b3)
    p_left, _ = _horner(c, left)
    p_right, _ = _horner(c, right)
    split = disc > 0

    sub = np.full((b0.shape[0], 3), np.nan)
    brackets = [
        (~split, -bound, bound, 1),
        (split & (p_left >= 0), -bound, left, 0),
        (split & (p_left >= 0) & (p_right <= 0), left, right, 1),
        (split & (p_right <= 0), right, bound, 2),
    ]
    for mask, lo, hi, col in brackets:
        if not mask.any():
            continue
        lo = np.broadcast_to(lo, mask.shape)[mask].astype(float)
        hi = np.broadcast_to(hi, mask.shape)[mask].astype(float)
        sub[mask, col] = _safeguarded_newton(tuple(a[mask] for a in c), lo, hi)
    roots[cubic] = sub
    return np.sort(roots, axis=1)


def _global_minimizers(coords, mu=0.0):
    roots = _cubic_real_roots(coords.cubic(mu))
    with np.errstate(invalid="ignore"):
        values = np.where(np.isnan(roots), np.inf, coords.objective(roots.T, mu).T)
    # roots are sorted, so argmin picks the smallest t among exact ties
    choice = np.argmin(values, axis=1)
    return roots[np.arange(roots.shape[0]), choice]


def coordinate_minimize(n, f_n, alpha, problem, mu=0.0):
    """Global minimizer over the real line of the ``n``-th (1-based) coordinate objective."""
    if not 1 <= n <= problem.size:
        raise InvalidInputError(f"coordinate index {n} out of range 1..{problem.size}")
    _check_alpha(alpha)
    coords = _Coordinates(problem, [f_n], alpha, index=n - 1)
    return float(_global_minimizers(coords, mu)[0])


def _check_alpha(alpha):
    if not (np.isfinite(alpha) and alpha > 0):
        raise InvalidInputError(f"alpha must be positive and finite, got {alpha}")


def minimize_tikhonov(problem, f_delta, alpha, ball_tol=1e-10, max_bisections=400):
    """Minimize ``||F u - f_delta||**2 + alpha ||u - u_bar||_1**2`` over the domain ball.

    The unconstrained coordinatewise minimizer is returned when it lies in
    the ball. Otherwise the multiplier ``mu`` of ``||u||**2 <= R**2`` is found
    by bisection so that ``||u(mu)|| = R`` to ``ball_tol``.

    Raises
    ------
    InvalidInputError
        For ``alpha <= 0`` or non-finite data.
    LagrangeSolveError
        If the multiplier search cannot reach the ball surface (the norm of
        ``u(mu)`` jumps over ``R``).
    """
    _check_alpha(alpha)
    f_delta = _as_vector(f_delta, problem.size, "f_delta")
    coords = _Coordinates(problem, f_delta, alpha)
    radius = problem.domain_radius

    u = _global_minimizers(coords)
    if np.linalg.norm(u) <= radius:
        return _solution(problem, u, f_delta, alpha)

    mu_lo, mu_hi = 0.0, 1.0
    u_hi = _global_minimizers(coords, mu_hi)
    while np.linalg.norm(u_hi) > radius:
        mu_lo, mu_hi = mu_hi, 2 * mu_hi
        if not np.isfinite(mu_hi):
            raise LagrangeSolveError("no finite multiplier pulls the minimizer into the ball")
        u_hi = _global_minimizers(coords, mu_hi)
    for _ in range(max_bisections):
        if radius - np.linalg.norm(u_hi) <= ball_tol:
            return _solution(problem, u_hi, f_delta, alpha, mu_hi)
        mu = 0.5 * (mu_lo + mu_hi)
        if not mu_lo < mu < mu_hi:
            break
        u_mid = _global_minimizers(coords, mu)
        if np.linalg.norm(u_mid) > radius:
            mu_lo = mu
        else:
            mu_hi, u_hi = mu, u_mid
    raise LagrangeSolveError(
        f"multiplier search stalled at mu={mu_hi:.6e} with ||u|| = {np.linalg.norm(u_hi):.15g} < R = {radius}"
    )
