"""Experiment drivers: classical tables, motivating states, scrambling sweeps,
Darwinism scans and the pooling Monte Carlo.

Every driver returns a :class:`ResultTable` whose CSV form is byte-identical
for identical parameters and seed.
"""
from __future__ import annotations

import io
import itertools
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import __version__
from .branches import qpid_via_branches
from .classical import PIDResult, ProbabilityTable, named_table, pid_decompose
from .errors import ValidationError
from .linalg import HilbertLayout, PureState
from .quantum import VARIANTS, QPIDResult, qpid_decompose, quantum_bonus
from .states import (
    RandomSource,
    darwinism_state,
    random_mixed,
    random_pure,
    scrambled_state,
    superposition_from_table,
)

DESK_FACTORS = (2, 2, 3, 3)
FULL_FACTORS = (2, 2, 3, 3, 5, 5)
DENSE_MAX_QUBITS = 12


def format_value(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


@dataclass
class ResultTable:
    """Rows of one experiment plus the metadata echoed in the CSV header."""

    command: str
    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)
    seed: int = 0
    summary: dict = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([r[i] for r in self.rows])

    def to_csv(self) -> str:
        buf = io.StringIO(newline="")
        buf.write(f"# qpid v{__version__} seed={self.seed} cmd={self.command}\n")
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(",".join(format_value(v) for v in row) + "\n")
        return buf.getvalue()

    def write_csv(self, path) -> None:
        Path(path).write_bytes(self.to_csv().encode("utf-8"))


def _pmap(fn: Callable, tasks: Sequence, workers: int = 1) -> list:
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


PID_COLUMNS = ("i_ta", "i_tb", "i_tab", "b0", "b1", "b", "unique_a", "unique_b", "redundant", "synergy")
QPID_COLUMNS = (
    "i_ta", "i_tb", "i_tab", "bq0", "bq1", "bq",
    "unique_a", "unique_b", "redundant", "synergy", "tri_information",
)


def run_tables(dist="triadic", seed: int = 0) -> tuple[PIDResult, ResultTable]:
    """Classical PID of a named distribution, a CSV path, or a ProbabilityTable."""
    if isinstance(dist, ProbabilityTable):
        table, name = dist, "custom"
    elif isinstance(dist, Path) or (isinstance(dist, str) and dist.endswith(".csv")):
        table, name = ProbabilityTable.from_csv(dist), Path(dist).name
    else:
        table, name = named_table(dist), dist
    result = pid_decompose(table)
    out = ResultTable(f"tables dist={name}", ("dist",) + PID_COLUMNS, seed=seed)
    out.rows.append((name,) + tuple(getattr(result, c) for c in PID_COLUMNS))
    return result, out


def run_motivating(variant: str = "star", seed: int = 0) -> tuple[dict[str, QPIDResult], ResultTable]:
    """QPID of the superposition states built from the triadic and dyadic tables."""
    results = {}
    out = ResultTable(f"motivating variant={variant}", ("state", "variant") + QPID_COLUMNS, seed=seed)
    for state_name, dist in (("psi1", "triadic"), ("psi2", "dyadic")):
        rho = superposition_from_table(named_table(dist)).density()
        r = qpid_decompose(rho, variant)
        results[state_name] = r
        out.rows.append((state_name, variant) + tuple(getattr(r, c) for c in QPID_COLUMNS))
    return results, out


@dataclass(frozen=True)
class SweepConfig:
    """Parameters of a scrambling sweep."""

    factors: tuple[int, ...] = DESK_FACTORS
    d_t: int = 4
    draws: int = 1
    seed: int = 0
    variant: str = "star"

    def __post_init__(self):
        factors = tuple(int(f) for f in self.factors)
        if not factors:
            raise ValidationError("factor list is empty")
        if any(f < 1 for f in factors):
            raise ValidationError(f"factors must be >= 1, got {factors}")
        if self.draws < 1:
            raise ValidationError("draw count must be >= 1")
        if self.variant not in VARIANTS:
            raise ValidationError(f"variant must be one of {VARIANTS}")
        if not 1 <= self.d_t <= math.prod(factors):
            raise ValidationError(f"D_T={self.d_t} must lie in [1, D_AB={math.prod(factors)}]")
        object.__setattr__(self, "factors", factors)

    @property
    def d_ab(self) -> int:
        return math.prod(self.factors)


def scramble_partitions(factors: Sequence[int]) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Splits of the factor positions into (A, B), one per distinct D_A, sorted by D_A/D_B."""
    n = len(factors)
    seen = {}
    for r in range(n + 1):
        for a in itertools.combinations(range(n), r):
            d_a = math.prod(factors[i] for i in a)
            if d_a not in seen:
                seen[d_a] = (a, tuple(i for i in range(n) if i not in a))
    d_ab = math.prod(factors)
    return [seen[d] for d in sorted(seen, key=lambda d: d * d / d_ab)]


def _split_state(base: PureState, factors, a_sites, b_sites) -> PureState:
    tensor = base.tensor()
    t = tensor.transpose([0] + [1 + i for i in a_sites] + [1 + i for i in b_sites])
    d_a = math.prod(factors[i] for i in a_sites)
    d_b = math.prod(factors[i] for i in b_sites)
    return PureState(t.ravel(), HilbertLayout((base.layout.dims[0], d_a, d_b), ("T", "A", "B")))


def _scramble_task(task, config: SweepConfig):
    draw, a_sites, b_sites = task
    factors = config.factors
    layout_ab = HilbertLayout(factors, tuple(f"f{i}" for i in range(len(factors))))
    # one Haar draw per draw index, shared by every (A, B) split
    base = scrambled_state(config.d_t, layout_ab, RandomSource(config.seed).spawn(draw))
    state = _split_state(base, factors, a_sites, b_sites)
    r = qpid_decompose(state.density(), config.variant)
    d_a = state.layout.dims[1]
    d_b = state.layout.dims[2]
    x = math.log2(d_a / d_b) / 2
    return (x, d_a, d_b, draw, r.i_ta, r.i_tb, r.i_tab, r.unique_a, r.unique_b, r.bq0, r.bq1)


def run_scramble(config: SweepConfig = SweepConfig(), workers: int = 1) -> ResultTable:
    """Unique and mutual information of A and B as factors move between them."""
    if config.d_ab > 400:
        warnings.warn(
            f"D_AB={config.d_ab}: dense operators of dimension {config.d_ab * config.d_t}; expect minutes per point",
            RuntimeWarning,
            stacklevel=2,
        )
    parts = scramble_partitions(config.factors)
    tasks = [(draw, a, b) for a, b in parts for draw in range(config.draws)]
    rows = _pmap(partial(_scramble_task, config=config), tasks, workers)
    command = (
        f"scramble factors={','.join(map(str, config.factors))} d_t={config.d_t} "
        f"draws={config.draws} variant={config.variant}"
    )
    columns = ("x", "d_a", "d_b", "draw", "i_ta", "i_tb", "i_tab", "unique_a", "unique_b", "bq0", "bq1")
    return ResultTable(command, columns, sorted(rows, key=lambda r: (r[0], r[3])), seed=config.seed)


def _darwinism_task(m_a: int, n: int, s: float, p: float, engine: str, variant: str):
    state = darwinism_state(p, s, m_a, n - m_a)
    if engine == "branch":
        r = qpid_via_branches(state, variant)
    else:
        r = qpid_decompose(state.to_dense().density(), variant)
    return (m_a, r.i_ta, r.unique_a, r.bq0, r.bq1)


def run_darwinism(
    n: int = 100, s: float = 0.85, p: float = 0.5, engine: str = "branch",
    variant: str = "star", seed: int = 0, workers: int = 1,
) -> ResultTable:
    """Scan m_A = 1..n for the two-branch Darwinism state."""
    if engine not in ("branch", "dense"):
        raise ValidationError(f"engine must be 'branch' or 'dense', got {engine!r}")
    if n < 1:
        raise ValidationError("need at least one environment qubit")
    if engine == "dense" and n > DENSE_MAX_QUBITS:
        raise ValidationError(f"dense engine is limited to n <= {DENSE_MAX_QUBITS} qubits")
    fn = partial(_darwinism_task, n=n, s=s, p=p, engine=engine, variant=variant)
    rows = _pmap(fn, list(range(1, n + 1)), workers)
    command = f"darwinism n={n} s={s!r} p={p!r} engine={engine} variant={variant}"
    return ResultTable(command, ("m_a", "i_ta", "unique_a", "bq0", "bq1"), rows, seed=seed)


SYSTEM_DIMS = {"qubit": 2, "qutrit": 3}


def _pooling_task(index: int, seed: int, d: int, kind: str, env_dim: int, variant: str):
    layout = HilbertLayout((d, d, d), ("T", "A", "B"))
    rng = RandomSource(seed).spawn(index)
    rho = random_pure(layout, rng).density() if kind == "pure" else random_mixed(layout, env_dim, rng)
    bq0, bq1, _ = quantum_bonus(rho, variant)
    return (index, bq0, bq1, bool(bq1 <= bq0))


def run_pooling(
    system: str = "qubit", kind: str = "mixed", samples: int = 2000, seed: int = 0,
    variant: str = "star", env_dim: int | None = None, workers: int = 1,
) -> ResultTable:
    """Monte Carlo comparison of logarithmic (bq1) and trivial (bq0) pooling.

    ``summary["fraction"]`` is the fraction of samples with ``bq1 <= bq0``.
    Mixed states default to the Hilbert-Schmidt ensemble (``env_dim = d^3``).
    """
    if system not in SYSTEM_DIMS:
        raise ValidationError(f"system must be one of {sorted(SYSTEM_DIMS)}")
    if kind not in ("pure", "mixed"):
        raise ValidationError("kind must be 'pure' or 'mixed'")
    if samples < 1:
        raise ValidationError("samples must be >= 1")
    d = SYSTEM_DIMS[system]
    env_dim = d**3 if env_dim is None else int(env_dim)
    fn = partial(_pooling_task, seed=seed, d=d, kind=kind, env_dim=env_dim, variant=variant)
    rows = _pmap(fn, list(range(samples)), workers)
    command = f"pooling system={system} kind={kind} samples={samples} variant={variant}"
    if kind == "mixed":
        command += f" env_dim={env_dim}"
    table = ResultTable(command, ("sample", "bq0", "bq1", "bq1_le_bq0"), rows, seed=seed)
    table.summary["fraction"] = sum(r[3] for r in rows) / samples
    return table


def plot_svg(
    table: ResultTable, path, x: str, ys: Sequence[str], title: str | None = None, linestyle: str = "-"
) -> None:
    """Static SVG of selected columns; needs matplotlib."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 3.5))
    xs = table.column(x)
    for name in ys:
        ax.plot(xs, table.column(name), marker=".", linestyle=linestyle, label=name)
    ax.set_xlabel(x)
    ax.set_ylabel("bits")
    ax.set_title(title or table.command)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
