"""
Choosing alpha by the discrepancy principle
===========================================

Starting at ``alpha0 = 0.9`` the grid ``alpha0 * 10^i`` is walked until the
residual first drops to ``3 delta``.
"""

from hilbert_tikhonov import DiscrepancyConfig, NoiseSpec, make_paper_problem, perturb, select_alpha
from hilbert_tikhonov.discrepancy import check_bracket

problem, _ = make_paper_problem(6000)
delta = 1e-3
f_delta = perturb(problem.f_true, NoiseSpec(delta, seed=0))
selection = select_alpha(problem, f_delta, delta)

for entry in selection.trace:
    mark = "<=" if entry.residual <= 3 * delta else "> "
    print(f"alpha = {entry.alpha:8.1e}  residual = {entry.residual:.4e} {mark} {3 * delta:.1e}")
print("alpha_star =", selection.alpha_star)
print("bracket witnessed:", check_bracket(selection.trace, selection.alpha_star, 3.0, delta, 10.0))

###############################################################################
# The other end of the final bracket, whose residual is still above ``3 delta``.
upper = select_alpha(problem, f_delta, delta, DiscrepancyConfig(accept="upper"))
print("upper end of bracket:", upper.alpha_star, "residual / delta =", upper.solution.residual / delta)
