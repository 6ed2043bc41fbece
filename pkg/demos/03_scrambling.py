"""
Scrambling: moving factors between A and B
==========================================

T is maximally entangled with AB, and the T-records in AB are randomized
by a Haar unitary.  As local factors move from B to A, information about T
switches abruptly from B to A.  Run with ``--full`` factors via the CLI for
the large sweep; this demo stays at D_AB = 36.
"""
from qpid.experiments import SweepConfig, run_scramble

table = run_scramble(SweepConfig(factors=(2, 2, 3, 3), d_t=4, draws=1, seed=0))

# %% One row per distinct D_A, sorted by x = log2(D_A / D_B) / 2
print(f"{'x':>6} {'D_A':>4} {'D_B':>4} {'I(T;A)':>8} {'I(T;B)':>8} {'unq A':>8} {'unq B':>8}")
for row in table.rows:
    r = dict(zip(table.columns, row))
    print(f"{r['x']:6.2f} {r['d_a']:4d} {r['d_b']:4d} {r['i_ta']:8.3f} {r['i_tb']:8.3f} "
          f"{r['unique_a']:8.3f} {r['unique_b']:8.3f}")

# %% Same CSV the CLI writes
print(table.to_csv().splitlines()[0])
