"""State families: table superpositions, Haar-random states, scrambled and Darwinism states."""
from __future__ import annotations

import math

import numpy as np

from .classical import ProbabilityTable
from .errors import ValidationError
from .linalg import DensityOperator, HilbertLayout, PureState, partial_trace

TAB = ("T", "A", "B")


class RandomSource:
    """Seeded, reproducible stream of random numbers.

    ``spawn(*key)`` derives an independent child stream keyed by integers, so
    parallel tasks can be seeded by their index and still give identical
    results regardless of execution order.
    """

    def __init__(self, seed: int = 0, algorithm: str = "PCG64", _key: tuple[int, ...] = ()):
        if not 0 <= int(seed) < 2**64:
            raise ValidationError(f"seed must fit in 64 unsigned bits, got {seed}")
        if algorithm not in ("PCG64", "PCG64DXSM", "Philox", "SFC64", "MT19937"):
            raise ValidationError(f"unknown bit generator {algorithm!r}")
        self.seed = int(seed)
        self.algorithm = algorithm
        self.key = tuple(_key)
        seq = np.random.SeedSequence(self.seed, spawn_key=self.key)
        self.generator = np.random.Generator(getattr(np.random, algorithm)(seq))

    def spawn(self, *key: int) -> "RandomSource":
        return RandomSource(self.seed, self.algorithm, self.key + tuple(int(k) for k in key))

    def __repr__(self):
        return f"RandomSource(seed={self.seed}, algorithm={self.algorithm!r}, key={self.key})"


def _gen(rng) -> np.random.Generator:
    if isinstance(rng, RandomSource):
        return rng.generator
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def superposition_from_table(table: ProbabilityTable) -> PureState:
    """Equal superposition of the basis states |t, a, b> with P(t, a, b) > 0."""
    p = table.probs
    support = p > 0
    k = int(support.sum())
    if not np.allclose(p[support], 1.0 / k, rtol=0, atol=1e-12):
        raise ValidationError("table is not uniform on its support")
    amps = support.astype(complex) / math.sqrt(k)
    return PureState(amps.ravel(), HilbertLayout(p.shape, TAB))


def ginibre(rows: int, cols: int, rng) -> np.ndarray:
    g = _gen(rng)
    return (g.standard_normal((rows, cols)) + 1j * g.standard_normal((rows, cols))) / math.sqrt(2)


def haar_unitary(d: int, rng) -> np.ndarray:
    """Haar-random ``d x d`` unitary (QR of a Ginibre matrix, R-diagonal phases removed)."""
    if d < 1:
        raise ValidationError("dimension must be >= 1")
    q, r = np.linalg.qr(ginibre(d, d, rng))
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def scrambled_state(d_t: int, layout_ab: HilbertLayout, rng, label: str = "T") -> PureState:
    """``D_T^{-1/2} sum_n |n>_T |Phi_n>_AB`` with Haar-random orthonormal ``Phi_n``."""
    d_ab = layout_ab.dim
    if d_t > d_ab:
        raise ValidationError(f"D_T={d_t} exceeds dim(AB)={d_ab}")
    phis = haar_unitary(d_ab, rng)[:, :d_t]
    amps = phis.T / math.sqrt(d_t)
    layout = HilbertLayout((d_t,) + layout_ab.dims, (label,) + layout_ab.labels)
    # renormalize away rounding so the PureState norm check stays tight
    amps = amps.ravel()
    return PureState(amps / np.linalg.norm(amps), layout)


def random_pure(layout: HilbertLayout, rng) -> PureState:
    v = ginibre(layout.dim, 1, rng)[:, 0]
    return PureState(v / np.linalg.norm(v), layout)


def random_mixed(layout: HilbertLayout, env_dim: int, rng) -> DensityOperator:
    """Reduced state of a Haar pure state on system x environment.

    ``env_dim == layout.dim`` gives the Hilbert-Schmidt ensemble.
    """
    if env_dim < 1:
        raise ValidationError("env_dim must be >= 1")
    env = "__env__"
    joint = random_pure(HilbertLayout(layout.dims + (env_dim,), layout.labels + (env,)), rng)
    rho = partial_trace(joint.density(), layout.labels)
    m = rho.matrix
    return DensityOperator((m + m.conj().T) / 2, layout)


def darwinism_state(p: float, s: float, m_a: int, m_b: int):
    """``sqrt(p)|0>|0..0>|0..0> + sqrt(1-p)|1>|r..r>|r..r>`` with ``|r> = s|0> + sqrt(1-s^2)|1>``."""
    from .branches import BranchState

    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"p must lie in [0, 1], got {p}")
    if not 0.0 <= s <= 1.0:
        raise ValidationError(f"s must lie in [0, 1], got {s}")
    if m_a < 0 or m_b < 0 or m_a + m_b < 1:
        raise ValidationError(f"need m_a, m_b >= 0 and m_a + m_b >= 1, got {m_a}, {m_b}")
    zero = np.array([1.0, 0.0])
    r = np.array([s, math.sqrt(1.0 - s * s)])
    target = np.array([[1.0, 0.0], [0.0, 1.0]])
    env = np.array([zero, r])
    sites = [target] + [env] * (m_a + m_b)
    partition = {"T": (0,), "A": tuple(range(1, 1 + m_a)), "B": tuple(range(1 + m_a, 1 + m_a + m_b))}
    return BranchState([math.sqrt(p), math.sqrt(1.0 - p)], sites, partition)


def diagonal_state(table: ProbabilityTable) -> DensityOperator:
    """Classical table embedded as a diagonal density operator on T, A, B."""
    p = table.probs
    return DensityOperator(np.diag(p.ravel()).astype(complex), HilbertLayout(p.shape, TAB))
