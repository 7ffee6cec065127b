"""Sequential discrepancy principle on a geometric grid of parameters."""

import csv
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidInputError, SearchFailure
from .solver import initial_guess_solution, minimize_tikhonov


@dataclass(frozen=True)
class DiscrepancyConfig:
    """Constants of the grid search.

    Parameters
    ----------
    k : float
        Discrepancy factor, ``k > 1``.
    theta : float
        Grid ratio, ``theta > 1``; the accepted ``alpha`` has a witness
        ``gamma`` in ``[alpha, theta * alpha]``.
    alpha0 : float
        First grid point.
    max_steps : int
        Upper bound on grid steps in either direction.
    accept : {"lower", "upper"}
        Which end of the final grid bracket is returned. ``"lower"`` returns
        the point whose residual is at most ``k delta`` (the discrepancy
        principle proper). ``"upper"`` returns its neighbour ``gamma`` whose
        residual is at least ``k delta``; this violates the residual bound
        and exists only to reproduce the reference table.
    """

    k: float = 3.0
    theta: float = 10.0
    alpha0: float = 0.9
    max_steps: int = 60
    accept: str = "lower"

    def __post_init__(self):
        if not self.k > 1:
            raise InvalidInputError(f"k must exceed 1, got {self.k}")
        if not self.theta > 1:
            raise InvalidInputError(f"theta must exceed 1, got {self.theta}")
        if not self.alpha0 > 0:
            raise InvalidInputError(f"alpha0 must be positive, got {self.alpha0}")
        if not self.max_steps >= 1:
            raise InvalidInputError(f"max_steps must be at least 1, got {self.max_steps}")
        if self.accept not in ("lower", "upper"):
            raise InvalidInputError(f"accept must be 'lower' or 'upper', got {self.accept!r}")

    def grid_point(self, i):
        """``alpha0 * theta**i`` for integer ``i`` (negative walks down)."""
        return self.alpha0 * self.theta ** float(i)


@dataclass(frozen=True)
class TraceEntry:
    step: int
    grid_index: int
    alpha: float
    residual: float


@dataclass(frozen=True)
class Selection:
    """Outcome of :func:`select_alpha`.

    ``grid_index`` is the exponent ``i`` with ``alpha_star = alpha0 * theta**i``
    (None for ``alpha_star = inf``).
    """

    alpha_star: float
    grid_index: int
    solution: object
    trace: list
    initial_residual: float


def select_alpha(problem, f_delta, delta, config=None, solve=minimize_tikhonov):
    """Choose ``alpha`` by the discrepancy principle with a sequential grid walk.

    If ``||F u_bar - f_delta|| <= k delta`` the initial guess is accepted
    (``alpha_star = inf``). Otherwise the residual at ``alpha0`` decides the
    direction: walk down the grid until the residual first drops to at most
    ``k delta`` and accept that point, or walk up until it first reaches at
    least ``k delta`` and accept the point before.
    """
    config = config or DiscrepancyConfig()
    if not delta > 0:
        raise InvalidInputError(f"delta must be positive, got {delta}")
    target = config.k * delta

    initial = initial_guess_solution(problem, f_delta)
    if initial.residual <= target:
        return Selection(np.inf, None, initial, [], initial.residual)

    trace = []

    def evaluate(i):
        solution = solve(problem, f_delta, config.grid_point(i))
        trace.append(TraceEntry(len(trace), i, solution.alpha, solution.residual))
        return solution

    def accept(below, below_index, above, above_index):
        if config.accept == "upper":
            return Selection(above.alpha, above_index, above, trace, initial.residual)
        return Selection(below.alpha, below_index, below, trace, initial.residual)

    current = evaluate(0)
    if current.residual > target:
        for i in range(-1, -config.max_steps - 1, -1):
            previous, current = current, evaluate(i)
            if current.residual <= target:
                return accept(current, i, previous, i + 1)
    else:
        for i in range(1, config.max_steps + 1):
            previous, current = current, evaluate(i)
            if current.residual >= target:
                return accept(previous, i - 1, current, i)
    raise SearchFailure(f"no bracket for k*delta = {target:.3e} within {config.max_steps} grid steps", trace)


def check_bracket(trace, alpha_star, k, delta, theta, rtol=1e-12):
    """Whether the trace witnesses ``res(alpha*) <= k delta <= res(gamma)`` for some ``gamma`` in ``[alpha*, theta alpha*]``.

    Raises ``ValueError`` if the trace is not a monotone geometric walk.
    """
    if not trace:
        raise ValueError("empty trace")
    alphas = np.array([e.alpha for e in trace])
    if len(alphas) > 1:
        ratios = alphas[1:] / alphas[:-1]
        down = np.allclose(ratios, 1 / theta, rtol=1e-9)
        up = np.allclose(ratios, theta, rtol=1e-9)
        if not (down or up):
            raise ValueError("trace is not a monotone walk on a geometric grid")
    target = k * delta
    at_star = [e for e in trace if np.isclose(e.alpha, alpha_star, rtol=rtol, atol=0)]
    if not at_star or at_star[0].residual > target:
        return False
    upper = alpha_star * theta * (1 + rtol)
    lower = alpha_star * (1 - rtol)
    return any(lower <= e.alpha <= upper and e.residual >= target for e in trace)


def write_trace_csv(path_or_file, trace, k_delta):
    """Columns: step, alpha, residual, k_delta."""
    own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["step", "alpha", "residual", "k_delta"])
        for e in trace:
            writer.writerow([e.step, _fmt(e.alpha), _fmt(e.residual), _fmt(k_delta)])
    finally:
        if own:
            fh.close()


def _fmt(x):
    x = float(x)
    if np.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.17g}"
