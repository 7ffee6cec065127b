"""
Convergence sweep over ten noise levels
=======================================

``delta`` runs from ``1e-3`` down by halving. The error divided by
``phi(delta)`` stays bounded, the rate ``O(phi(delta))`` in action.
"""

from hilbert_tikhonov import DiscrepancyConfig, make_paper_problem, run_sweep
from hilbert_tikhonov.experiment import REFERENCE_TABLE

problem, source = make_paper_problem(6000)


def show(rows, title):
    print(title)
    print(f"{'delta':>10} {'alpha*':>8} {'error':>9} {'phi':>7} {'ratio':>7}   ref alpha*")
    for row, ref in zip(rows, REFERENCE_TABLE):
        print(f"{row.delta:10.3e} {row.alpha_star:8.0e} {row.error:9.6f} {row.phi_delta:7.4f} {row.ratio:7.4f}   {ref[1]:.0e}")


show(run_sweep(problem, source, seed=0), "residual <= 3 delta at alpha*")

###############################################################################
# Reporting the upper end of the final bracket reproduces the reference table.
show(run_sweep(problem, source, config=DiscrepancyConfig(accept="upper"), seed=0), "\nupper end of bracket")
