"""Diagonal Hilbert scales on a truncated sequence space.

The scale generator ``B`` is a positive diagonal operator ``B e_n = b_n e_n``
on ``R^N``. Everything here is a componentwise operation on the diagonal, so
fractional powers are exact up to floating point.
"""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConfigurationError, InvalidInputError


def _as_vector(x, size=None, name="x"):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise InvalidInputError(f"{name} must be one-dimensional, got shape {x.shape}")
    if size is not None and x.shape[0] != size:
        raise InvalidInputError(f"{name} has length {x.shape[0]}, expected {size}")
    if not np.all(np.isfinite(x)):
        raise InvalidInputError(f"{name} contains non-finite entries")
    return x


@dataclass(frozen=True)
class IndexFunctionPhi:
    """Logarithmic index function ``t -> (-ln(c t))**(-kappa)``.

    Parameters
    ----------
    c : float
        Scaling inside the logarithm; must satisfy ``0 < c < 1/||G||`` for
        the scale it is paired with.
    kappa : float
        Positive exponent. Larger values mean a stronger (but still
        logarithmic) smoothness assumption.
    """

    c: float
    kappa: float

    def __post_init__(self):
        if not (np.isfinite(self.c) and self.c > 0):
            raise ConfigurationError(f"c must be positive and finite, got {self.c}")
        if not (np.isfinite(self.kappa) and self.kappa > 0):
            raise ConfigurationError(f"kappa must be positive and finite, got {self.kappa}")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        ct = self.c * t
        if np.any(t <= 0) or np.any(ct >= 1):
            raise ConfigurationError("phi is only defined for 0 < c*t < 1")
        return (-np.log(ct)) ** (-self.kappa)

    def check_scale(self, scale):
        """Raise unless ``c * ||G|| < 1`` for ``scale``."""
        if self.c * scale.norm_G >= 1:
            raise ConfigurationError(
                f"c * ||G|| = {self.c * scale.norm_G} must be < 1 (phi is singular otherwise)"
            )


@dataclass(frozen=True)
class DiagonalHilbertScale:
    """Hilbert scale generated by a positive diagonal operator.

    Parameters
    ----------
    diag : array_like
        The diagonal ``b_n`` of the generator.
    smoothing_order_a : float
        Smoothing order ``a`` of the forward operator; fixes
        ``G = B**-(2a+2)``.
    lower_bound_k : float, optional
        Lower bound ``k`` with ``||B u|| >= k ||u||``. Defaults to ``min(diag)``.
    """

    diag: np.ndarray
    smoothing_order_a: float = 1.0
    lower_bound_k: float = None
    _log_diag: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        diag = _as_vector(self.diag, name="diag")
        if diag.size == 0:
            raise InvalidInputError("diag must not be empty")
        if np.any(diag <= 0):
            raise InvalidInputError("diag entries must be strictly positive")
        if not (np.isfinite(self.smoothing_order_a) and self.smoothing_order_a > 0):
            raise InvalidInputError("smoothing_order_a must be positive")
        k = float(diag.min()) if self.lower_bound_k is None else float(self.lower_bound_k)
        if not k > 0 or np.any(diag < k):
            raise InvalidInputError(f"lower bound k = {k} violates 0 < k <= min(diag)")
        diag = diag.copy()
        diag.flags.writeable = False
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "lower_bound_k", k)
        object.__setattr__(self, "_log_diag", np.log(diag))

    @classmethod
    def natural(cls, size, smoothing_order_a=1.0):
        """Scale with ``b_n = n`` for ``n = 1..size``."""
        return cls(np.arange(1, size + 1, dtype=float), smoothing_order_a)

    @property
    def size(self):
        return self.diag.shape[0]

    @property
    def r(self):
        """The exponent ratio ``(2a + 2) / a``."""
        a = self.smoothing_order_a
        return (2 * a + 2) / a

    def power(self, tau):
        """Diagonal of ``B**tau``."""
        return np.exp(tau * self._log_diag)

    @property
    def g(self):
        """Diagonal of ``G = B**-(2a+2)``."""
        return self.power(-(2 * self.smoothing_order_a + 2))

    @property
    def norm_G(self):
        return float(self.g.max())

    def norm_tau(self, x, tau):
        """``||x||_tau = ||B**tau x||``."""
        x = _as_vector(x, self.size)
        return float(np.sqrt(np.sum((self.power(tau) * x) ** 2)))

    def apply_G(self, x):
        x = _as_vector(x, self.size)
        return self.g * x

    def apply_phi_G(self, phi, x):
        """Apply ``phi(G)`` componentwise."""
        x = _as_vector(x, self.size)
        phi.check_scale(self)
        return phi(self.g) * x


def check_interpolation(scale, x, p, q, s):
    """Check ``||x||_q <= ||x||_p**(1-psi) * ||x||_s**psi`` with ``psi = (p-q)/(p-s)``.

    Returns
    -------
    holds : bool
        Whether the ratio is at most ``1 + 1e-12``.
    ratio : float
        ``LHS / RHS``; defined as 1 for the zero vector.
    """
    if p == s:
        raise InvalidInputError("interpolation needs p != s")
    if not p >= q >= s:
        raise InvalidInputError(f"need p >= q >= s, got p={p}, q={q}, s={s}")
    psi = (p - q) / (p - s)
    lhs = scale.norm_tau(x, q)
    norm_p = scale.norm_tau(x, p)
    if not np.isfinite(norm_p):
        raise InvalidInputError("||x||_p is not finite")
    rhs = norm_p ** (1 - psi) * scale.norm_tau(x, s) ** psi
    if rhs == 0:
        ratio = 1.0 if lhs == 0 else np.inf
    else:
        ratio = lhs / rhs
    return bool(ratio <= 1 + 1e-12), float(ratio)


@dataclass(frozen=True)
class IndexFunctionCheck:
    constant: float
    quotient_increasing: bool


def check_index_function(phi, theta, alpha_grid, lambda_grid, eta=0.5, norm_G=1.0):
    """Grid version of the bound ``sup_l a l**theta phi(l)/(l+a) <= C a**theta phi(a)``.

    Returns the smallest ``C`` that works on the grids, and whether
    ``t**eta / phi(t)`` is strictly increasing on the part of ``lambda_grid``
    below ``norm_G * exp(-kappa/eta)``.
    """
    alpha = np.asarray(alpha_grid, dtype=float)
    lam = np.asarray(lambda_grid, dtype=float)
    if alpha.size == 0 or lam.size == 0:
        raise InvalidInputError("grids must be nonempty")
    if not 0 <= theta < 1:
        raise InvalidInputError("theta must lie in [0, 1)")
    if np.any(alpha <= 0) or np.any(lam <= 0) or alpha.max() > norm_G or lam.max() > norm_G:
        raise InvalidInputError("grid points must lie in (0, ||G||]")

    phi_lam = phi(lam)
    inner = alpha[:, None] * lam[None, :] ** theta * phi_lam[None, :] / (lam[None, :] + alpha[:, None])
    constant = np.max(inner.max(axis=1) / (alpha**theta * phi(alpha)))

    t = np.sort(lam[lam < norm_G * np.exp(-phi.kappa / eta)])
    quotient = t**eta / phi(t)
    increasing = bool(t.size < 2 or np.all(np.diff(quotient) > 0))
    return IndexFunctionCheck(float(constant), increasing)
