"""Forward operators and the shipped sequence-space test problem.

The shipped instance is the diagonal quadratic operator

    F(u)_n = (7 u_n + u_n**2) / n,     D(F) = {u : ||u|| <= 3},

on ``R^N`` with the generator ``B = diag(n)``. The solution ``u_true`` does
not lie in ``X_1`` in the limit ``N -> inf`` (oversmoothing penalty) but
satisfies a logarithmic source condition with ``c = 0.9``, ``kappa = 1.8``.

Weak sequential continuity of ``F`` (needed for existence of minimizers) is
an assumption of the instance; it is not checked numerically.
"""

import json
from dataclasses import dataclass

import numpy as np

from .exceptions import ConstructionError, InvalidInputError
from .hilbert_scale import DiagonalHilbertScale, IndexFunctionPhi, _as_vector

PAPER_C = 0.9
PAPER_KAPPA = 1.8
PAPER_RADIUS = 3.0
PAPER_LINEAR_COEFF = 7.0


@dataclass(frozen=True)
class SourceSpec:
    """Source condition ``u_true - u_bar = phi(G) w`` with ``||w|| <= rho``."""

    c: float
    kappa: float
    w: np.ndarray
    rho: float

    @property
    def phi(self):
        return IndexFunctionPhi(self.c, self.kappa)


@dataclass(frozen=True)
class TestProblem:
    """Separable quadratic forward operator on a diagonal Hilbert scale.

    ``F(u)_n = (linear_coeff * u_n + quadratic * u_n**2) / b_n**a``; the
    domain is the closed ball of radius ``domain_radius`` around 0.
    """

    __test__ = False  # not a pytest class

    scale: DiagonalHilbertScale
    linear_coeff: float
    quadratic: bool
    domain_radius: float
    u_true: np.ndarray
    u_bar: np.ndarray
    f_true: np.ndarray = None

    def __post_init__(self):
        n = self.scale.size
        u_true = _as_vector(self.u_true, n, "u_true")
        u_bar = _as_vector(self.u_bar, n, "u_bar")
        if not self.domain_radius > 0:
            raise InvalidInputError("domain_radius must be positive")
        object.__setattr__(self, "u_true", _readonly(u_true))
        object.__setattr__(self, "u_bar", _readonly(u_bar))
        # f_true is always recomputed so it can never drift from u_true
        object.__setattr__(self, "f_true", _readonly(self.forward(u_true)))
        if not np.linalg.norm(u_true) < self.domain_radius:
            raise ConstructionError("u_true must be an interior point of D(F)")
        if not np.linalg.norm(u_bar) <= self.domain_radius:
            raise ConstructionError("u_bar must lie in D(F)")

    @property
    def size(self):
        return self.scale.size

    @property
    def quadratic_coeff(self):
        return 1.0 if self.quadratic else 0.0

    @property
    def divisor(self):
        """Diagonal ``b_n**a`` dividing each output component."""
        return self.scale.power(self.scale.smoothing_order_a)

    def forward(self, u):
        u = _as_vector(u, self.size, "u")
        return (self.linear_coeff * u + self.quadratic_coeff * u * u) / self.divisor

    def in_domain(self, u):
        u = _as_vector(u, self.size, "u")
        return bool(np.linalg.norm(u) <= self.domain_radius)

    def to_json(self, source=None):
        """Serialize to a JSON string; ``source`` adds ``c``, ``kappa`` and ``w``."""
        doc = {
            "N": self.size,
            "a": self.scale.smoothing_order_a,
            "radius": self.domain_radius,
            "linear_coeff": self.linear_coeff,
            "quadratic": self.quadratic,
            "diag_generator": "natural" if _is_natural(self.scale.diag) else "explicit",
            "u_true": self.u_true.tolist(),
            "u_bar": self.u_bar.tolist(),
            "f_true": self.f_true.tolist(),
        }
        if not _is_natural(self.scale.diag):
            doc["diag"] = self.scale.diag.tolist()
        if source is not None:
            doc.update(c=source.c, kappa=source.kappa, w=source.w.tolist(), rho=source.rho)
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text):
        """Inverse of :meth:`to_json`; returns ``(problem, source_or_None)``."""
        doc = json.loads(text)
        if doc["diag_generator"] == "natural":
            scale = DiagonalHilbertScale.natural(doc["N"], doc["a"])
        else:
            scale = DiagonalHilbertScale(np.asarray(doc["diag"]), doc["a"])
        problem = cls(
            scale=scale,
            linear_coeff=doc["linear_coeff"],
            quadratic=doc["quadratic"],
            domain_radius=doc["radius"],
            u_true=np.asarray(doc["u_true"]),
            u_bar=np.asarray(doc["u_bar"]),
        )
        source = None
        if "w" in doc:
            source = SourceSpec(doc["c"], doc["kappa"], _readonly(np.asarray(doc["w"], float)), doc["rho"])
        return problem, source


def _readonly(x):
    x = np.array(x, dtype=float)
    x.flags.writeable = False
    return x


def _is_natural(diag):
    return np.array_equal(diag, np.arange(1, diag.size + 1, dtype=float))


def paper_solution(size):
    """``u_1 = 1``, ``u_n = 1 / (sqrt(n) * ln(0.9**-0.25 n)**2.31)``."""
    n = np.arange(1, size + 1, dtype=float)
    u = 1.0 / (np.sqrt(n) * np.log(0.9**-0.25 * n) ** 2.31)
    u[0] = 1.0
    return u


def paper_source_element(size, c=PAPER_C, kappa=PAPER_KAPPA):
    n = np.arange(1, size + 1, dtype=float)
    w = 4.0**kappa / (np.sqrt(n) * np.log(c**-0.25 * n) ** 0.51)
    w[0] = (-np.log(c)) ** kappa
    return w


def source_residual(problem, source):
    """``||u_true - u_bar - phi(G) w|| / ||u_true||``."""
    image = problem.scale.apply_phi_G(source.phi, source.w)
    return float(np.linalg.norm(problem.u_true - problem.u_bar - image) / np.linalg.norm(problem.u_true))


def make_paper_problem(size=6000, radius=PAPER_RADIUS, c=PAPER_C, kappa=PAPER_KAPPA, smoothing_order_a=1.0):
    """Build the diagonal quadratic benchmark and its source element.

    With the default constants the source element has the closed form
    ``w_1 = (-ln c)**kappa``, ``w_n = 4**kappa / (sqrt(n) ln(c**-0.25 n)**0.51)``
    (the exponent 2.31 of ``u_true`` is 0.51 + kappa). For other constants
    ``w = phi(G)**-1 u_true`` is computed componentwise instead.
    """
    if size < 2:
        raise InvalidInputError("size must be at least 2")
    scale = DiagonalHilbertScale.natural(size, smoothing_order_a)
    phi = IndexFunctionPhi(c, kappa)
    phi.check_scale(scale)
    problem = TestProblem(
        scale=scale,
        linear_coeff=PAPER_LINEAR_COEFF,
        quadratic=True,
        domain_radius=radius,
        u_true=paper_solution(size),
        u_bar=np.zeros(size),
    )
    if (c, kappa, smoothing_order_a) == (PAPER_C, PAPER_KAPPA, 1.0):
        w = paper_source_element(size, c, kappa)
    else:
        w = (problem.u_true - problem.u_bar) / phi(scale.g)
    w = _readonly(w)
    source = SourceSpec(c, kappa, w, float(np.linalg.norm(w)))
    residual = source_residual(problem, source)
    if residual > 1e-10:
        raise ConstructionError(f"source condition residual {residual:.3e} exceeds 1e-10")
    return problem, source


def smoothing_ratio(problem, u):
    """``||F u - F u_true|| / ||u - u_true||_{-a}``; None when ``u == u_true``."""
    denom = problem.scale.norm_tau(u - problem.u_true, -problem.scale.smoothing_order_a)
    if denom == 0:
        return None
    return float(np.linalg.norm(problem.forward(u) - problem.f_true) / denom)


def sample_ball(size, radius, num_samples, rng):
    """Uniform directions with radius uniform in ``[0, radius]``."""
    directions = rng.standard_normal((num_samples, size))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    return directions * rng.uniform(0, radius, size=(num_samples, 1))


def estimate_smoothing_constants(problem, num_samples=1000, seed=0):
    """Empirical ``(c_a, C_a)`` of the two-sided smoothing bound over random points of D(F).

    Returns the min and max of :func:`smoothing_ratio` over the samples.
    """
    ratios = sampled_smoothing_ratios(problem, num_samples, seed)
    return float(ratios.min()), float(ratios.max())


def sampled_smoothing_ratios(problem, num_samples, seed, batch=500):
    """All sample ratios used by :func:`estimate_smoothing_constants`."""
    rng = np.random.default_rng(seed)
    out = []
    for start in range(0, num_samples, batch):
        count = min(batch, num_samples - start)
        out.append(_sample_ratios(problem, sample_ball(problem.size, problem.domain_radius, count, rng)))
    return np.concatenate(out)


def _sample_ratios(problem, samples):
    # vectorized smoothing_ratio over rows; rows equal to u_true are dropped
    diff = samples - problem.u_true
    weights = problem.scale.power(-problem.scale.smoothing_order_a)
    denom = np.sqrt(np.sum((weights * diff) ** 2, axis=1))
    coeff = problem.linear_coeff + problem.quadratic_coeff * (samples + problem.u_true)
    numer = np.sqrt(np.sum((coeff * diff / problem.divisor) ** 2, axis=1))
    keep = denom > 0
    return numer[keep] / denom[keep]
