"""Exact low-rank evaluation for few-branch product states.

A branch state is ``sum_i c_i (x)_sites |v_i^s>``.  Restricted to any group of
sites, the K branch vectors span at most K dimensions; their Gram matrix gives
an orthonormal basis of that span and the coordinates of each branch in it.
The whole state then lives in a (<= K)^3-dimensional space for T, A, B, and
every quantity built from reduced states, conditional operators and Z_AB is
unchanged by this isometric restriction.
"""
from __future__ import annotations

import math
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import LabelError, ValidationError
from .linalg import EPS_RANK, HilbertLayout, PureState, partial_trace
from .quantum import QPIDResult, qpid_decompose

MAX_BRANCHES = 8


class BranchState:
    """Pure state given as a short sum of product states.

    Parameters
    ----------
    amplitudes : sequence of complex, length K
    sites : sequence of arrays
        ``sites[s]`` has shape ``(K, d_s)``; row ``i`` is branch ``i``'s unit vector on site ``s``.
    partition : mapping label -> tuple of site indices
        Disjoint groups covering all sites; a group may be empty (a trivial subsystem).
    """

    def __init__(self, amplitudes, sites: Sequence[np.ndarray], partition: Mapping[str, Iterable[int]]):
        c = np.asarray(amplitudes, dtype=complex).ravel()
        k = c.size
        if not 1 <= k <= MAX_BRANCHES:
            raise ValidationError(f"need 1..{MAX_BRANCHES} branches, got {k}")
        vecs = []
        for n, v in enumerate(sites):
            v = np.asarray(v, dtype=complex)
            if v.ndim != 2 or v.shape[0] != k:
                raise ValidationError(f"site {n}: expected shape ({k}, d), got {v.shape}")
            if np.abs(np.linalg.norm(v, axis=1) - 1.0).max() > 1e-12:
                raise ValidationError(f"site {n}: local vectors must be unit norm")
            v.flags.writeable = False
            vecs.append(v)
        partition = {str(l): tuple(int(s) for s in g) for l, g in partition.items()}
        covered = sorted(s for g in partition.values() for s in g)
        if covered != list(range(len(vecs))):
            raise ValidationError("partition must cover every site exactly once")
        self.amplitudes = c
        self.sites = tuple(vecs)
        self.partition = partition
        norm2 = self.norm_squared()
        if abs(norm2 - 1.0) > 1e-12:
            raise ValidationError(f"branch state norm^2 is {norm2!r}")

    @property
    def n_branches(self) -> int:
        return self.amplitudes.size

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.partition)

    def norm_squared(self) -> float:
        g = gram_matrix(self, range(len(self.sites)))
        c = self.amplitudes
        return float((c.conj() @ g @ c).real)

    def permuted(self, order: Sequence[int]) -> "BranchState":
        """Same state with branches relabelled: new branch i is old branch order[i]."""
        order = list(order)
        return BranchState(self.amplitudes[order], [v[order] for v in self.sites], self.partition)

    def to_dense(self) -> PureState:
        """Full state vector; exponential in the number of sites."""
        groups = [self.partition[l] for l in self.labels]
        flat = [s for g in groups for s in g]
        psi = 0
        for i, c in enumerate(self.amplitudes):
            term = np.ones(1, dtype=complex)
            for s in flat:
                term = np.kron(term, self.sites[s][i])
            psi = psi + c * term
        dims = tuple(math.prod(self.sites[s].shape[1] for s in g) for g in groups)
        return PureState(psi, HilbertLayout(dims, self.labels))


def _resolve_sites(state: BranchState, keep) -> tuple[int, ...]:
    out = []
    for item in keep:
        if isinstance(item, str):
            if item not in state.partition:
                raise LabelError(f"unknown group {item!r}; have {state.labels}")
            out.extend(state.partition[item])
        else:
            out.append(int(item))
    if any(not 0 <= s < len(state.sites) for s in out):
        raise ValidationError(f"site index out of range in {out}")
    return tuple(sorted(set(out)))


def gram_matrix(state: BranchState, sites: Iterable[int]) -> np.ndarray:
    """``G[i, j] = prod_s <v_i^s | v_j^s>`` over the given sites."""
    k = state.n_branches
    g = np.ones((k, k), dtype=complex)
    for s in sites:
        v = state.sites[s]
        g *= v.conj() @ v.T
    return g


def span_coordinates(gram: np.ndarray, eps: float = EPS_RANK) -> np.ndarray:
    """Coordinates ``C`` (r x K) of the branch vectors in an orthonormal basis of their span.

    ``C^dagger C`` reproduces ``gram``; eigenvalues below ``eps * max`` are dropped.
    """
    vals, vecs = np.linalg.eigh((gram + gram.conj().T) / 2)
    keep = vals > eps * vals.max()
    return np.sqrt(vals[keep])[:, None] * vecs[:, keep].conj().T


def effective_state(state: BranchState, groups: Sequence[Sequence[int]], labels: Sequence[str]):
    """The state written in the per-group branch spans.

    Returns ``(PureState, coords)`` with ``coords[label]`` the r x K coordinate matrix.
    """
    coords = {l: span_coordinates(gram_matrix(state, g)) for l, g in zip(labels, groups)}
    psi = 0
    for i, c in enumerate(state.amplitudes):
        term = np.ones(1, dtype=complex)
        for l in labels:
            term = np.kron(term, coords[l][:, i])
        psi = psi + c * term
    psi = psi / np.linalg.norm(psi)
    dims = tuple(coords[l].shape[0] for l in labels)
    return PureState(psi, HilbertLayout(dims, tuple(labels))), coords


def reduced_operator_effective(state: BranchState, keep):
    """Reduced density operator of the kept sites in their effective basis.

    ``keep`` may mix group labels and site indices.  Returns the operator
    (labelled ``"kept"``) and its r x K branch-coordinate matrix.
    """
    kept = _resolve_sites(state, keep)
    if not kept:
        raise ValidationError("keep must select at least one site")
    rest = tuple(s for s in range(len(state.sites)) if s not in kept)
    psi, coords = effective_state(state, [kept, rest], ["kept", "rest"])
    return partial_trace(psi.density(), {"kept"}), coords["kept"]


def qpid_via_branches(
    state: BranchState, variant: str = "star", target: str = "T", a: str = "A", b: str = "B"
) -> QPIDResult:
    """Quantum PID computed in the effective <= K^3-dimensional space."""
    for l in (target, a, b):
        if l not in state.partition:
            raise LabelError(f"branch state has no group {l!r}")
    labels = (target, a, b)
    groups = [state.partition[l] for l in labels]
    psi, _ = effective_state(state, groups, labels)
    return qpid_decompose(psi.density(), variant, target, a, b)


def darwinism_target_spectrum(p: float, s: float, n_env: int) -> np.ndarray:
    """Closed-form eigenvalues of rho_T for the two-branch Darwinism state."""
    c = s ** n_env
    disc = math.sqrt(max(1.0 - 4.0 * p * (1.0 - p) * (1.0 - c * c), 0.0))
    return np.array([(1.0 - disc) / 2.0, (1.0 + disc) / 2.0])
