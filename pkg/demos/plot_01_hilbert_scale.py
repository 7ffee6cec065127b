"""
Norms on a diagonal Hilbert scale
=================================

The generator ``B = diag(1, 2, ..., N)`` defines the family of norms
``||x||_tau = ||B^tau x||``. Positive ``tau`` measures smoothness, negative
``tau`` is the weak norm in which the forward operator acts.
"""

import numpy as np

from hilbert_tikhonov import DiagonalHilbertScale, IndexFunctionPhi, check_interpolation

scale = DiagonalHilbertScale.natural(6000, smoothing_order_a=1.0)
print("r = (2a+2)/a =", scale.r, "  ||G|| =", scale.norm_G)

###############################################################################
# A slowly decaying sequence has a finite plain norm but a large ``tau = 1`` norm.
x = 1.0 / np.arange(1, 6001)
for tau in (-1.0, 0.0, 0.5, 1.0):
    print(f"||x||_{tau:+.1f} = {scale.norm_tau(x, tau):.6f}")

###############################################################################
# The interpolation inequality ties the middle norm to the outer two.
rng = np.random.default_rng(0)
worst = max(check_interpolation(scale, rng.standard_normal(6000), 1, 0, -1)[1] for _ in range(200))
print("largest interpolation ratio over 200 vectors:", worst)

###############################################################################
# ``G = B^-4`` and the logarithmic index function ``phi(t) = (-ln 0.9 t)^-1.8``.
phi = IndexFunctionPhi(0.9, 1.8)
print("phi(g_n) for n = 1..5:", np.round(phi(scale.g[:5]), 6))
