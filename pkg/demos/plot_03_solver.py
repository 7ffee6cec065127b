"""
Exact Tikhonov minimization
===========================

The objective separates over coordinates. Each coordinate minimizer is a
root of a cubic; the ball constraint is handled by a Lagrange multiplier.
"""

import numpy as np

from hilbert_tikhonov import NoiseSpec, make_paper_problem, minimize_tikhonov, perturb
from hilbert_tikhonov.experiment import oracle_minimize

problem, _ = make_paper_problem(6000)
f_delta = perturb(problem.f_true, NoiseSpec(1e-3, seed=0))

###############################################################################
# Residual grows and the penalty shrinks as alpha increases.
for alpha in np.logspace(-12, 0, 7):
    sol = minimize_tikhonov(problem, f_delta, alpha)
    err = np.linalg.norm(sol.u - problem.u_true)
    print(f"alpha = {alpha:8.1e}  residual = {sol.residual:.3e}  penalty = {sol.penalty:9.3f}  error = {err:.4f}")

###############################################################################
# Cross-check with a brute-force grid search on a small instance.
small, _ = make_paper_problem(8)
f_small = perturb(small.f_true, NoiseSpec(1e-2, seed=3))
exact = minimize_tikhonov(small, f_small, 1e-3)
brute = oracle_minimize(small, f_small, 1e-3)
print("objective, exact vs grid:", exact.objective, brute.objective)
