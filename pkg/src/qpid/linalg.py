"""Dense Hermitian kernels for multipartite operators.

Composite indices are row-major in the order given by ``HilbertLayout.labels``:
for labels ``("T", "A", "B")`` the basis state ``|t, a, b>`` sits at
``(t * d_A + a) * d_B + b``.  Every reordering of tensor factors is explicit.

All entropies are in bits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from numbers import Real
from typing import Iterable, Sequence

import numpy as np

from .errors import LabelError, LayoutError, NotPSDError, ValidationError

#: Eigenvalues at or below ``EPS_RANK * lambda_max`` count as exact zeros.
EPS_RANK = 1e-12
#: Eigenvalues down to ``-EPS_PSD * lambda_max`` are clamped to zero instead of rejected.
EPS_PSD = 1e-9

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10


@dataclass(frozen=True)
class HilbertLayout:
    """Ordered subsystem dimensions and names."""

    dims: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        labels = tuple(str(l) for l in self.labels)
        if len(dims) != len(labels):
            raise ValidationError(f"{len(dims)} dims but {len(labels)} labels")
        if not dims:
            raise ValidationError("layout needs at least one subsystem")
        if any(d < 1 for d in dims):
            raise ValidationError(f"subsystem dimensions must be >= 1, got {dims}")
        if len(set(labels)) != len(labels):
            raise LabelError(f"duplicate labels in {labels}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, int]]) -> "HilbertLayout":
        pairs = list(pairs)
        return cls(tuple(d for _, d in pairs), tuple(l for l, _ in pairs))

    @property
    def dim(self) -> int:
        return math.prod(self.dims)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise LabelError(f"unknown subsystem label {label!r}; layout has {self.labels}") from None

    def dim_of(self, label: str) -> int:
        return self.dims[self.index(label)]

    def sub(self, labels: Sequence[str]) -> "HilbertLayout":
        """Layout of the given subsystems, in the given order."""
        return HilbertLayout(tuple(self.dim_of(l) for l in labels), tuple(labels))

    def __contains__(self, label) -> bool:
        return label in self.labels


@dataclass(frozen=True, eq=False)
class Operator:
    """Hermitian matrix acting on the space described by ``layout``."""

    matrix: np.ndarray
    layout: HilbertLayout
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        n = self.layout.dim
        if m.shape != (n, n):
            raise LayoutError(f"matrix shape {m.shape} does not match layout dimension {n}")
        if self.check:
            norm = np.linalg.norm(m)
            if np.linalg.norm(m - m.conj().T) > HERMITIAN_TOL * max(norm, 1e-300):
                raise ValidationError("operator is not Hermitian")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        self._validate()

    def _validate(self):
        pass

    @property
    def labels(self) -> tuple[str, ...]:
        return self.layout.labels

    @property
    def dims(self) -> tuple[int, ...]:
        return self.layout.dims

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def eigvalsh(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


class DensityOperator(Operator):
    """Unit-trace positive semidefinite operator."""

    def _validate(self):
        if not self.check:
            return
        if abs(self.trace() - 1.0) > TRACE_TOL:
            raise ValidationError(f"density operator has trace {self.trace()!r}")
        if self.eigvalsh().min() < -TRACE_TOL:
            raise ValidationError("density operator has a negative eigenvalue")


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized state vector on ``layout``."""

    amplitudes: np.ndarray
    layout: HilbertLayout

    def __post_init__(self):
        v = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if v.size != self.layout.dim:
            raise LayoutError(f"{v.size} amplitudes for layout dimension {self.layout.dim}")
        if abs(np.vdot(v, v).real - 1.0) > 1e-12:
            raise ValidationError(f"state norm^2 is {np.vdot(v, v).real!r}, expected 1")
        v.flags.writeable = False
        object.__setattr__(self, "amplitudes", v)

    def density(self) -> DensityOperator:
        v = self.amplitudes
        return DensityOperator(np.outer(v, v.conj()), self.layout, check=False)

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per subsystem."""
        return self.amplitudes.reshape(self.layout.dims)


def _like(op: Operator, matrix: np.ndarray, layout: HilbertLayout) -> Operator:
    cls = DensityOperator if isinstance(op, DensityOperator) else Operator
    return cls(matrix, layout, check=False)


def _permute_matrix(m: np.ndarray, dims: Sequence[int], order: Sequence[int]) -> np.ndarray:
    """Reorder tensor factors so that new factor ``i`` is old factor ``order[i]``."""
    n = len(dims)
    if list(order) == list(range(n)):
        return m
    t = m.reshape(tuple(dims) * 2)
    t = t.transpose(list(order) + [n + i for i in order])
    d = m.shape[0]
    return t.reshape(d, d)


def permute(op: Operator, labels: Sequence[str]) -> Operator:
    """Return ``op`` with its tensor factors reordered to ``labels``."""
    labels = tuple(labels)
    if sorted(labels) != sorted(op.labels):
        raise LabelError(f"cannot reorder {op.labels} to {labels}")
    order = [op.layout.index(l) for l in labels]
    m = _permute_matrix(op.matrix, op.dims, order)
    return _like(op, m, op.layout.sub(labels))


def partial_trace(op: Operator, keep: Iterable[str]) -> Operator:
    """Trace out every subsystem not in ``keep``.

    Kept factors stay in their original relative order.
    """
    keep = set(keep)
    if not keep:
        raise ValidationError("keep must name at least one subsystem")
    for label in keep:
        op.layout.index(label)
    layout = op.layout
    n = len(layout.dims)
    kept = [i for i in range(n) if layout.labels[i] in keep]
    dropped = [i for i in range(n) if i not in kept]
    if not dropped:
        return op
    dk = math.prod(layout.dims[i] for i in kept)
    dd = math.prod(layout.dims[i] for i in dropped)
    t = op.matrix.reshape(layout.dims * 2)
    t = t.transpose(kept + dropped + [n + i for i in kept] + [n + i for i in dropped])
    reduced = np.einsum("ijkj->ik", t.reshape(dk, dd, dk, dd))
    return _like(op, reduced, layout.sub([layout.labels[i] for i in kept]))


def embed(op: Operator, target: HilbertLayout) -> Operator:
    """Tensor identities onto the factors of ``target`` missing from ``op``."""
    for label in op.labels:
        if label not in target:
            raise LabelError(f"label {label!r} not in target layout {target.labels}")
        if target.dim_of(label) != op.layout.dim_of(label):
            raise LayoutError(
                f"dimension mismatch on {label!r}: {op.layout.dim_of(label)} vs {target.dim_of(label)}"
            )
    missing = [l for l in target.labels if l not in op.layout]
    d_missing = math.prod(target.dim_of(l) for l in missing)
    m = np.kron(op.matrix, np.eye(d_missing)) if missing else op.matrix
    current = HilbertLayout(op.dims + tuple(target.dim_of(l) for l in missing), op.labels + tuple(missing))
    order = [current.index(l) for l in target.labels]
    return Operator(_permute_matrix(m, current.dims, order), target, check=False)


def psd_eigh(m: np.ndarray, eps_psd: float = EPS_PSD, eps_rank: float = EPS_RANK):
    """Eigendecomposition of a PSD matrix with noise clamping.

    Returns ``(vals, vecs, support)`` where kernel eigenvalues are set to exactly
    zero and ``support`` masks the retained ones.
    """
    vals, vecs = np.linalg.eigh(m)
    scale = np.abs(vals).max() if vals.size else 0.0
    if scale == 0.0:
        return np.zeros_like(vals), vecs, np.zeros(vals.shape, dtype=bool)
    if vals.min() < -eps_psd * scale:
        raise NotPSDError(f"eigenvalue {vals.min():.3e} below PSD tolerance (largest {scale:.3e})")
    support = vals > eps_rank * scale
    return np.where(support, vals, 0.0), vecs, support


def power_from_eigh(vals, vecs, support, exponent: float) -> np.ndarray:
    """Assemble ``V f(L) V^dagger`` with ``f(x) = x**exponent`` on the support, 0 on the kernel."""
    w = np.zeros(vals.shape)
    w[support] = vals[support] ** exponent
    return (vecs * w) @ vecs.conj().T


def psd_power(m: np.ndarray, exponent: float, eps_psd: float = EPS_PSD, eps_rank: float = EPS_RANK) -> np.ndarray:
    return power_from_eigh(*psd_eigh(m, eps_psd, eps_rank), float(exponent))


def hermitian_power(op: Operator, exponent: Real, eps_psd: float = EPS_PSD, eps_rank: float = EPS_RANK) -> Operator:
    """Fractional power of a PSD operator, Moore-Penrose on the kernel.

    Negative exponents invert only the support, so ``diag(4, 0) ** -0.5``
    is ``diag(0.5, 0)``.
    """
    return Operator(psd_power(op.matrix, float(exponent), eps_psd, eps_rank), op.layout, check=False)


def star_product(a: Operator, b: Operator) -> Operator:
    """``a * b = b^{1/2} a b^{1/2}`` for PSD ``b``."""
    if a.layout != b.layout:
        raise LayoutError(f"star product of operators on {a.layout} and {b.layout}")
    root = psd_power(b.matrix, 0.5)
    m = root @ a.matrix @ root
    return Operator((m + m.conj().T) / 2, a.layout, check=False)


def entropy_of_spectrum(vals: np.ndarray) -> float:
    """``-sum p log2 p`` over the positive entries of ``vals``."""
    p = vals[vals > 0]
    return float(-np.sum(p * np.log2(p)))


def matrix_entropy(m: np.ndarray) -> float:
    """von Neumann entropy of a density matrix, no validation."""
    return max(entropy_of_spectrum(np.linalg.eigvalsh(m)), 0.0)


def von_neumann_entropy(op: Operator) -> float:
    """``S(rho) = -Tr rho log2 rho`` in bits."""
    vals = op.eigvalsh()
    if abs(vals.sum() - 1.0) > TRACE_TOL or vals.min() < -TRACE_TOL:
        raise ValidationError("von Neumann entropy needs a density operator")
    return max(entropy_of_spectrum(vals), 0.0)


def log_on_support(m: np.ndarray, eps_psd: float = EPS_PSD, eps_rank: float = EPS_RANK):
    vals, vecs, support = psd_eigh(m, eps_psd, eps_rank)
    logs = np.zeros(vals.shape)
    logs[support] = np.log2(vals[support])
    kept = vecs[:, support]
    return (vecs * logs) @ vecs.conj().T, kept @ kept.conj().T


def operator_log_on_support(op: Operator, eps_psd: float = EPS_PSD, eps_rank: float = EPS_RANK):
    """``log2`` of a PSD operator restricted to its support.

    Returns ``(log_op, support_projector)``; kernel directions contribute zero
    to ``log_op``.
    """
    log_m, proj = log_on_support(op.matrix, eps_psd, eps_rank)
    return Operator(log_m, op.layout, check=False), Operator(proj, op.layout, check=False)
