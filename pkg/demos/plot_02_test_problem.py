"""
The quadratic benchmark operator
================================

``F(u)_n = (7 u_n + u_n^2) / n`` on the ball of radius 3. The exact solution
is not in ``X_1`` as ``N`` grows, so a penalty in ``||.||_1`` oversmooths.
"""

import numpy as np

from hilbert_tikhonov import estimate_smoothing_constants, make_paper_problem
from hilbert_tikhonov.model import source_residual

problem, source = make_paper_problem(6000)
print("||u_true|| =", np.linalg.norm(problem.u_true))
print("source condition residual:", source_residual(problem, source))

###############################################################################
# The ``X_1`` norm of the truncated solution grows with ``N``.
for n in (60, 600, 6000):
    p, _ = make_paper_problem(n)
    print(f"N = {n:5d}  ||u_true||_1 = {p.scale.norm_tau(p.u_true, 1.0):.3f}")

###############################################################################
# Two-sided smoothing: ``c_a ||u - u_true||_-1 <= ||F u - F u_true|| <= C_a ||u - u_true||_-1``.
lo, hi = estimate_smoothing_constants(problem, num_samples=2000, seed=0)
print(f"sampled smoothing ratios lie in [{lo:.3f}, {hi:.3f}]")
