"""Smooth auxiliary elements and bounded-ratio diagnostics for the rate analysis.

The auxiliary element

    u_hat(alpha) = u_bar + G (G + alpha I)^-1 (u_true - u_bar)

minimizes ``||u - u_true||_{-a}**2 + alpha ||u - u_bar||_1**2`` and acts as a
smooth stand-in for ``u_true`` (which need not lie in ``X_1``). The checks
below evaluate the quantities whose boundedness the convergence analysis
asserts; they return ratio curves, not proofs.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .discrepancy import _fmt
from .exceptions import ConfigurationError, InvalidInputError
from .hilbert_scale import _as_vector


@dataclass(frozen=True)
class AuxiliaryElement:
    u_hat: np.ndarray
    alpha: float


def auxiliary_element(scale, u_true, u_bar, alpha):
    if not (np.isfinite(alpha) and alpha > 0):
        raise InvalidInputError(f"alpha must be positive and finite, got {alpha}")
    u_true = _as_vector(u_true, scale.size, "u_true")
    u_bar = _as_vector(u_bar, scale.size, "u_bar")
    g = scale.g
    return AuxiliaryElement(u_bar + g / (g + alpha) * (u_true - u_bar), float(alpha))


def auxiliary_element_alt(scale, u_true, u_bar, alpha):
    """Second representation ``u_true - alpha (G + alpha I)^-1 (u_true - u_bar)``."""
    g = scale.g
    return np.asarray(u_true) - alpha / (g + alpha) * (np.asarray(u_true) - np.asarray(u_bar))


@dataclass(frozen=True)
class RatioCurves:
    """Diagnostic ratio curves over an abscissa grid."""

    abscissa: np.ndarray
    ratios: tuple

    @property
    def suprema(self):
        return tuple(float(np.max(r)) for r in self.ratios)

    def to_csv(self, path, abscissa_name):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow([abscissa_name] + [f"ratio{i + 1}" for i in range(len(self.ratios))])
            for i, x in enumerate(self.abscissa):
                writer.writerow([_fmt(x)] + [_fmt(r[i]) for r in self.ratios])


def lemma33_check(scale, phi, u_true, u_bar, alpha_grid):
    """Ratios whose boundedness as ``alpha -> 0`` is asserted for the auxiliary elements.

    ``r1 = ||u_hat - u_true|| / phi(alpha)``,
    ``r2 = ||u_hat - u_true||_{-a} / (alpha**(1/r) phi(alpha))``,
    ``r3 = ||u_hat - u_bar||_1 / (alpha**(-1/(r a)) phi(alpha))``.
    """
    a, r = scale.smoothing_order_a, scale.r
    alphas = np.asarray(alpha_grid, dtype=float)
    _check_grid(alphas, scale.norm_G)
    r1, r2, r3 = (np.empty_like(alphas) for _ in range(3))
    for i, alpha in enumerate(alphas):
        u_hat = auxiliary_element(scale, u_true, u_bar, alpha).u_hat
        phi_a = phi(alpha)
        r1[i] = np.linalg.norm(u_hat - u_true) / phi_a
        r2[i] = scale.norm_tau(u_hat - u_true, -a) / (alpha ** (1 / r) * phi_a)
        r3[i] = scale.norm_tau(u_hat - u_bar, 1.0) / (alpha ** (-1 / (r * a)) * phi_a)
    return RatioCurves(alphas, (r1, r2, r3))


def lemma34_check(problem, f_delta, delta, alpha_grid, upper_constant):
    """Slack of ``||F u_hat - f_delta|| <= C_a ||u_hat - u_true||_{-a} + delta`` per grid point.

    Returns ``rhs - lhs``; nonnegative entries mean the bound holds.
    """
    a = problem.scale.smoothing_order_a
    slack = []
    for alpha in np.asarray(alpha_grid, dtype=float):
        u_hat = auxiliary_element(problem.scale, problem.u_true, problem.u_bar, alpha).u_hat
        lhs = np.linalg.norm(problem.forward(u_hat) - f_delta)
        rhs = upper_constant * problem.scale.norm_tau(u_hat - problem.u_true, -a) + delta
        slack.append(rhs - lhs)
    return np.array(slack)


def a_priori_beta(phi, delta, r):
    """``beta(delta) = delta**r * (-ln(c delta))**(kappa r)``."""
    delta = np.asarray(delta, dtype=float)
    if np.any(delta <= 0) or np.any(phi.c * delta >= 1):
        raise ConfigurationError("a_priori_beta needs 0 < c*delta < 1")
    out = delta**r * (-np.log(phi.c * delta)) ** (phi.kappa * r)
    return float(out) if out.ndim == 0 else out


def lemma35_ratios(phi, delta_grid, a):
    """Three ratios that all tend to ``r**-kappa`` as ``delta -> 0``.

    ``phi(beta)/phi(delta)``, ``beta**(1/r) phi(beta) / delta`` and
    ``beta**(-1/(r a)) phi(beta) / (delta**(-1/a) phi(delta)**(r/2))``.
    Algebraically the three coincide; the convergence is logarithmically slow.
    """
    r = (2 * a + 2) / a
    delta = np.asarray(delta_grid, dtype=float)
    beta = a_priori_beta(phi, delta, r)
    phi_beta, phi_delta = phi(beta), phi(delta)
    ratio_a = phi_beta / phi_delta
    ratio_b = beta ** (1 / r) * phi_beta / delta
    ratio_c = beta ** (-1 / (r * a)) * phi_beta / (delta ** (-1 / a) * phi_delta ** (r / 2))
    return RatioCurves(delta, (ratio_a, ratio_b, ratio_c))


def chi(t, b, d, c):
    """``chi_{b,d}(t) = t**(1/b) * (-ln(c t))**(-d)`` for ``0 < c t < 1``."""
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0) or np.any(c * t >= 1):
        raise InvalidInputError("chi needs 0 < c*t < 1")
    out = t ** (1 / b) * (-np.log(c * t)) ** (-d)
    return float(out) if out.ndim == 0 else out


def chi_inverse(t, b, d, c, upper=1.0, max_iter=400):
    """Invert :func:`chi` on ``(0, upper]`` by bisection in ``log(lambda)``.

    ``chi`` is strictly increasing there; bisection stops when the bracket
    reaches adjacent floating-point numbers.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t <= 0) or np.any(t > chi(upper, b, d, c)):
        raise InvalidInputError("t outside the range of chi on (0, upper]")

    def log_chi(log_lam):
        return log_lam / b - d * np.log(-(np.log(c) + log_lam))

    target = np.log(t)
    hi = np.full_like(t, np.log(upper))
    # chi(lam) <= lam**(1/b) * (-ln c lam)**(-d) with (-ln c lam) >= 1 below 1/(c e)
    lo = np.minimum(b * target, hi) - 1.0
    while True:
        bad = log_chi(lo) > target
        if not bad.any():
            break
        lo = np.where(bad, 2 * lo - 1.0, lo)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        stalled = (mid == lo) | (mid == hi)
        if stalled.all():
            break
        below = log_chi(mid) <= target
        lo = np.where(below & ~stalled, mid, lo)
        hi = np.where(~below & ~stalled, mid, hi)
    lam_lo, lam_hi = np.exp(lo), np.exp(hi)
    # pick the endpoint whose image is closer to t
    pick_hi = np.abs(log_chi(hi) - target) < np.abs(log_chi(lo) - target)
    out = np.where(pick_hi, lam_hi, lam_lo)
    return out if out.size > 1 else float(out[0])


def chi_lower_bound_check(t_grid, b, d, c):
    """Largest ``C5`` with ``chi_inverse(t) >= C5 t**b (-ln c t)**(b d)`` on the grid.

    Also returns the pointwise ratios, which tend to ``b**(b d)`` as ``t -> 0``.
    """
    t = np.asarray(t_grid, dtype=float)
    ratios = chi_inverse(t, b, d, c) / (t**b * (-np.log(c * t)) ** (b * d))
    ratios = np.atleast_1d(ratios)
    return float(ratios.min()), RatioCurves(np.atleast_1d(t), (ratios, ratios / b ** (b * d)))


@dataclass(frozen=True)
class BoundCheck:
    """Per-row ratios of a sweep diagnostic and their summary constant."""

    values: np.ndarray
    constant: float


def lemma44_lower_bound_check(rows, phi, r):
    """``alpha_star / beta(delta)`` per sweep row; ``constant`` is the minimum.

    A minimum bounded away from zero supports the lower bound
    ``alpha_star >= C delta**r (-ln(c delta))**(kappa r)``.
    """
    rows = [row for row in rows if not row.failed and np.isfinite(row.alpha_star)]
    if not rows:
        raise InvalidInputError("need at least one sweep row with finite alpha_star")
    deltas = np.array([row.delta for row in rows])
    alphas = np.array([row.alpha_star for row in rows])
    values = alphas / a_priori_beta(phi, deltas, r)
    return BoundCheck(values, float(values.min()))


def lemma45_bound_check(rows, phi, a):
    """``||u_star - u_bar||_1 / (delta**(-1/a) phi(delta)**(r/2))`` per row; ``constant`` is the maximum.

    Rows with ``alpha_star = inf`` have zero penalty and hence ratio 0.
    """
    r = (2 * a + 2) / a
    rows = [row for row in rows if not row.failed]
    if not rows:
        raise InvalidInputError("empty sweep")
    deltas = np.array([row.delta for row in rows])
    penalties = np.array([row.penalty_norm for row in rows])
    values = penalties / lemma45_scale(phi, deltas, a)
    return BoundCheck(values, float(values.max()))


def lemma45_scale(phi, delta, a):
    """``delta**(-1/a) * phi(delta)**(r/2)``, which grows without bound as ``delta -> 0``."""
    r = (2 * a + 2) / a
    delta = np.asarray(delta, dtype=float)
    return delta ** (-1 / a) * phi(delta) ** (r / 2)


def _check_grid(grid, norm_G):
    if grid.size == 0:
        raise InvalidInputError("empty grid")
    if np.any(grid <= 0) or np.any(grid > norm_G):
        raise InvalidInputError("grid points must lie in (0, ||G||]")
