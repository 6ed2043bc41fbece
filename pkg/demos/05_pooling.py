"""
How often does logarithmic pooling lose to picking one source?
==============================================================

For random three-party states the logarithmic bonus B_Q1 usually beats the
trivial bonus B_Q0.  Counting the exceptions for a few ensembles.
"""
from qpid.experiments import run_pooling

for system, kind, samples in [("qubit", "mixed", 2000), ("qubit", "pure", 2000), ("qutrit", "mixed", 300)]:
    table = run_pooling(system, kind, samples=samples, seed=0)
    print(f"{system:6s} {kind:5s} n={samples:5d}  fraction(bq1 <= bq0) = {table.summary['fraction']:.4f}")

# %% Optional scatter plot (needs matplotlib)
try:
    from qpid.experiments import plot_svg

    plot_svg(run_pooling("qubit", "mixed", samples=500, seed=1), "pooling.svg", "bq0", ["bq1"], linestyle="none")
    print("wrote pooling.svg")
except ImportError:
    pass
