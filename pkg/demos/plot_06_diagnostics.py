"""
Bounded-ratio diagnostics
=========================

The rate analysis asserts that several ratios stay bounded. Here they are
evaluated on grids; they are evidence, not proofs.
"""

import numpy as np

from hilbert_tikhonov import make_paper_problem, run_sweep
from hilbert_tikhonov.auxiliary import (
    chi_lower_bound_check,
    lemma33_check,
    lemma35_ratios,
    lemma44_lower_bound_check,
    lemma45_bound_check,
)

problem, source = make_paper_problem(6000)
phi = source.phi

curves = lemma33_check(problem.scale, phi, problem.u_true, problem.u_bar, np.logspace(-14, np.log10(0.5), 57))
print("auxiliary-element ratio suprema:", np.round(curves.suprema, 4))

###############################################################################
# The a priori ratios creep toward ``4^-1.8`` only logarithmically.
for delta in (1e-4, 1e-8, 1e-16, 1e-32, 1e-64):
    print(f"delta = {delta:.0e}  phi(beta)/phi(delta) = {lemma35_ratios(phi, np.array([delta]), 1.0).ratios[0][0]:.5f}")
print("limit:", 4.0**-1.8)

###############################################################################
# The same slow approach for the inverse of ``chi``.
c5, chi_curves = chi_lower_bound_check(np.logspace(-12, -1, 12), 4, 1.8, 0.9)
print("C5 on grid:", c5, " fraction of 4^7.2 at t=1e-12:", chi_curves.ratios[1][0])

rows = run_sweep(problem, source, seed=0)
print("alpha_star / beta(delta) min:", lemma44_lower_bound_check(rows, phi, 4.0).constant)
print("penalty / growth scale max:", lemma45_bound_check(rows, phi, 1.0).constant)
