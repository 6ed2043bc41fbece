"""Classical partial information decomposition over a joint table P(T, A, B).

Unique information is fixed by a pooling "bonus": B1 from logarithmic pooling
of P(t|a) and P(t|b) (Bhattacharyya overlaps), B0 from simply keeping the
lower-entropy conditional, and B = max(B0, B1).  All quantities are in bits.
"""
from __future__ import annotations

import csv
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import ValidationError

VARIABLES = ("T", "A", "B")
#: Probabilities below this are exact zeros when conditioning.
P_ZERO = 1e-15


@dataclass(frozen=True, eq=False)
class ProbabilityTable:
    """Joint distribution indexed as ``probs[t, a, b]``."""

    probs: np.ndarray

    def __post_init__(self):
        p = np.array(self.probs, dtype=float)
        if p.ndim != 3:
            raise ValidationError(f"table must be 3-dimensional (T, A, B), got shape {p.shape}")
        if (p < 0).any():
            raise ValidationError("probabilities must be nonnegative")
        if abs(p.sum() - 1.0) > 1e-12:
            raise ValidationError(f"probabilities sum to {p.sum()!r}")
        p.flags.writeable = False
        object.__setattr__(self, "probs", p)

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.probs.shape

    @classmethod
    def from_entries(cls, entries, shape=None) -> "ProbabilityTable":
        """Build from ``{(t, a, b): p}`` or an iterable of ``(t, a, b, p)``."""
        if isinstance(entries, dict):
            entries = [(*k, v) for k, v in entries.items()]
        entries = [(int(t), int(a), int(b), float(p)) for t, a, b, p in entries]
        if not entries:
            raise ValidationError("empty table")
        if shape is None:
            shape = tuple(max(e[i] for e in entries) + 1 for i in range(3))
        probs = np.zeros(shape)
        for t, a, b, p in entries:
            if min(t, a, b) < 0:
                raise ValidationError(f"negative symbol in {(t, a, b)}")
            probs[t, a, b] += p
        return cls(probs)

    @classmethod
    def from_csv(cls, path) -> "ProbabilityTable":
        """Read a ``t,a,b,p`` CSV with header; ``#`` lines are comments."""
        with open(Path(path), encoding="utf-8", newline="") as fh:
            rows = [line for line in fh if line.strip() and not line.lstrip().startswith("#")]
        reader = csv.DictReader(rows)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["t", "a", "b", "p"]:
            raise ValidationError(f"expected header t,a,b,p in {path}, got {reader.fieldnames}")
        try:
            entries = [(r["t"], r["a"], r["b"], r["p"]) for r in reader]
            return cls.from_entries(entries)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ValidationError):
                raise
            raise ValidationError(f"malformed row in {path}: {exc}") from exc

    def to_csv(self, path) -> None:
        with open(Path(path), "w", encoding="utf-8", newline="") as fh:
            fh.write("t,a,b,p\n")
            for (t, a, b), p in np.ndenumerate(self.probs):
                if p > 0:
                    fh.write(f"{t},{a},{b},{float(p)!r}\n")

    def marginal(self, subset: Iterable[str]) -> np.ndarray:
        """Marginal over ``subset``, axes kept in T, A, B order."""
        axes = _axes(subset)
        drop = tuple(i for i in range(3) if i not in axes)
        return self.probs.sum(axis=drop)


def _axes(subset: Iterable[str]) -> tuple[int, ...]:
    subset = set(subset)
    if not subset:
        raise ValidationError("variable subset must be nonempty")
    unknown = subset - set(VARIABLES)
    if unknown:
        raise ValidationError(f"unknown variables {sorted(unknown)}; use T, A, B")
    return tuple(i for i, v in enumerate(VARIABLES) if v in subset)


@dataclass(frozen=True)
class PIDResult:
    i_ta: float
    i_tb: float
    i_tab: float
    b0: float
    b1: float
    b: float
    unique_a: float
    unique_b: float
    redundant: float
    synergy: float

    def as_dict(self) -> dict:
        return asdict(self)


def _entropy(p: np.ndarray) -> float:
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))


def shannon_entropy(table: ProbabilityTable, subset: Iterable[str]) -> float:
    return _entropy(table.marginal(subset).ravel())


def mutual_information(table: ProbabilityTable, x: Iterable[str], y: Iterable[str]) -> float:
    """``H(x) + H(y) - H(x, y)``."""
    x, y = set(x), set(y)
    if x & y:
        raise ValidationError(f"variable sets overlap: {sorted(x & y)}")
    value = shannon_entropy(table, x) + shannon_entropy(table, y) - shannon_entropy(table, x | y)
    return max(value, 0.0)


def conditional_entropy(table: ProbabilityTable, x: Iterable[str], given: Iterable[str]) -> float:
    x, given = set(x), set(given)
    return shannon_entropy(table, x | given) - shannon_entropy(table, given)


def _conditionals(table: ProbabilityTable):
    """P(t|a) as columns ``[:, a]`` and P(t|b) as ``[:, b]``; zero for unsupported symbols."""
    p_ta = table.marginal("TA")
    p_tb = table.marginal("TB")
    p_a = p_ta.sum(axis=0)
    p_b = p_tb.sum(axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        c_a = np.where(p_a > P_ZERO, p_ta / p_a, 0.0)
        c_b = np.where(p_b > P_ZERO, p_tb / p_b, 0.0)
    c_a[c_a < P_ZERO] = 0.0
    c_b[c_b < P_ZERO] = 0.0
    return c_a, c_b, p_a, p_b


def bhattacharyya_overlap(table: ProbabilityTable, a: int, b: int) -> float:
    """``Z_ab = sum_t sqrt(P(t|a) P(t|b))``."""
    c_a, c_b, p_a, p_b = _conditionals(table)
    if not (0 <= a < len(p_a)) or not (0 <= b < len(p_b)):
        raise ValidationError(f"symbol out of range: a={a}, b={b}")
    if p_a[a] <= P_ZERO or p_b[b] <= P_ZERO:
        raise ValidationError(f"cannot condition on zero-probability symbol (a={a}, b={b})")
    return float(np.sum(np.sqrt(c_a[:, a] * c_b[:, b])))


def overlap_matrix(table: ProbabilityTable) -> np.ndarray:
    """All ``Z_ab`` at once; entries for unsupported symbols are 0."""
    c_a, c_b, _, _ = _conditionals(table)
    return np.sqrt(c_a).T @ np.sqrt(c_b)


def pooled_distribution(table: ProbabilityTable, a: int, b: int) -> np.ndarray:
    """Logarithmic pool ``sqrt(P(t|a) P(t|b)) / Z_ab`` over t."""
    z = bhattacharyya_overlap(table, a, b)
    if z == 0.0:
        raise ValidationError(f"conditionals for a={a}, b={b} have disjoint support")
    c_a, c_b, _, _ = _conditionals(table)
    return np.sqrt(c_a[:, a] * c_b[:, b]) / z


def bonus_b1(table: ProbabilityTable) -> float:
    """``-sum_ab P(a,b) log2 Z_ab``; zero-weight pairs are skipped."""
    p_ab = table.marginal("AB")
    z = overlap_matrix(table)
    mask = p_ab > P_ZERO
    if (z[mask] <= 0).any():
        raise ValidationError("a pair (a, b) with P(a,b) > 0 has disjoint conditionals")
    return max(float(-np.sum(p_ab[mask] * np.log2(z[mask]))), 0.0)


def bonus_b0(table: ProbabilityTable) -> float:
    """Half the gap between H(T|A) and H(T|B)."""
    return 0.5 * abs(conditional_entropy(table, "T", "A") - conditional_entropy(table, "T", "B"))


def pid_decompose(table: ProbabilityTable) -> PIDResult:
    i_ta = mutual_information(table, "T", "A")
    i_tb = mutual_information(table, "T", "B")
    i_tab = mutual_information(table, "T", "AB")
    b0 = bonus_b0(table)
    b1 = bonus_b1(table)
    b = max(b0, b1)
    # H(T|B) - H(T|A) == I(T;A) - I(T;B)
    unique_a = b + 0.5 * (i_ta - i_tb)
    unique_b = b + 0.5 * (i_tb - i_ta)
    redundant = i_ta - unique_a
    synergy = i_tab - unique_a - unique_b - redundant
    return PIDResult(i_ta, i_tb, i_tab, b0, b1, b, unique_a, unique_b, redundant, synergy)


def interaction_gap(table: ProbabilityTable) -> float:
    """``I(T;A,B) - I(T;A) - I(T;B)``, which equals synergy minus redundancy.

    Sign conventions for "co-information" differ across the literature; this
    returns exactly the combination above.
    """
    return (
        mutual_information(table, "T", "AB")
        - mutual_information(table, "T", "A")
        - mutual_information(table, "T", "B")
    )


co_information = interaction_gap


TRIADIC = ProbabilityTable.from_entries(
    {(t, a, b): 1 / 8 for t, a, b in [
        (0, 0, 0), (0, 2, 2), (2, 0, 2), (2, 2, 0),
        (1, 1, 1), (1, 3, 3), (3, 1, 3), (3, 3, 1),
    ]},
    shape=(4, 4, 4),
)

DYADIC = ProbabilityTable.from_entries(
    {(t, a, b): 1 / 8 for t, a, b in [
        (0, 0, 0), (0, 2, 1), (1, 0, 2), (1, 2, 3),
        (2, 1, 0), (2, 3, 1), (3, 1, 2), (3, 3, 3),
    ]},
    shape=(4, 4, 4),
)

NAMED_TABLES = {"triadic": TRIADIC, "dyadic": DYADIC}


def named_table(name: str) -> ProbabilityTable:
    try:
        return NAMED_TABLES[name]
    except KeyError:
        raise ValidationError(f"unknown distribution {name!r}; choose from {sorted(NAMED_TABLES)}") from None
