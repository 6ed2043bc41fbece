"""Quantum information measures and the quantum PID.

The target system is ``T`` and the two sources are ``A`` and ``B`` by default;
every function takes the labels as keyword arguments so that e.g. swapping the
roles of A and B needs no copy of the state.
"""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import LabelError, SupportLeakError, ValidationError
from .linalg import (
    DensityOperator,
    Operator,
    embed,
    log_on_support,
    matrix_entropy,
    partial_trace,
    permute,
    power_from_eigh,
    psd_eigh,
    psd_power,
)

log = logging.getLogger(__name__)

VARIANTS = ("star", "plain")
#: Largest weight of rho_AB allowed outside supp(Z_AB).
LEAK_TOL = 1e-8
#: Measurement outcomes less likely than this are dropped from J.
P_OUTCOME_MIN = 1e-14


@dataclass(frozen=True, eq=False)
class ConditionalOperator(Operator):
    """``rho_{T|A}``: PSD, trace not normalized, eigenvalues may exceed 1."""

    condition: str = ""


@dataclass(frozen=True)
class QPIDResult:
    i_ta: float
    i_tb: float
    i_tab: float
    bq0: float
    bq1: float
    bq: float
    unique_a: float
    unique_b: float
    redundant: float
    synergy: float
    tri_information: float
    variant: str

    def as_dict(self) -> dict:
        return asdict(self)


def _labels(x) -> tuple[str, ...]:
    return (x,) if isinstance(x, str) else tuple(x)


def _entropy(rho: Operator, labels: Iterable[str]) -> float:
    return matrix_entropy(partial_trace(rho, labels).matrix)


def quantum_mutual_information(rho: Operator, x, y) -> float:
    """``S(x) + S(y) - S(x, y)`` for disjoint label groups ``x`` and ``y``."""
    x, y = set(_labels(x)), set(_labels(y))
    if not x or not y:
        raise ValidationError("label groups must be nonempty")
    if x & y:
        raise ValidationError(f"label groups overlap: {sorted(x & y)}")
    return _entropy(rho, x) + _entropy(rho, y) - _entropy(rho, x | y)


def measured_mutual_information(
    rho: Operator, povm: Sequence[np.ndarray], target: str = "T", measured: str = "A"
) -> float:
    """``J(T;X) = S(rho_T) - sum_n p_n S(rho_{T|n})`` for a fixed POVM on X."""
    rho_tx = permute(partial_trace(rho, {target, measured}), (target, measured))
    d_t, d_x = rho_tx.dims
    effects = [np.asarray(e, dtype=complex) for e in povm]
    if not effects:
        raise ValidationError("POVM needs at least one effect")
    total = np.zeros((d_x, d_x), dtype=complex)
    for e in effects:
        if e.shape != (d_x, d_x):
            raise ValidationError(f"effect of shape {e.shape} on a {d_x}-dimensional system")
        if np.linalg.norm(e - e.conj().T) > 1e-10 or np.linalg.eigvalsh(e).min() < -1e-10:
            raise ValidationError("POVM effects must be PSD")
        total += e
    if np.linalg.norm(total - np.eye(d_x)) > 1e-10:
        raise ValidationError("POVM effects do not sum to the identity")

    conditional = 0.0
    for e in effects:
        root = np.kron(np.eye(d_t), psd_power(e, 0.5))
        post = (root @ rho_tx.matrix @ root).reshape(d_t, d_x, d_t, d_x)
        rho_t = np.einsum("ixjx->ij", post)
        p_n = np.trace(rho_t).real
        if p_n <= P_OUTCOME_MIN:
            continue
        conditional += p_n * matrix_entropy(rho_t / p_n)
    return _entropy(rho_tx, {target}) - conditional


def conditional_state(rho: Operator, condition: str) -> ConditionalOperator:
    """``(1 x rho_c^{-1/2}) rho (1 x rho_c^{-1/2})`` with a Moore-Penrose inverse root.

    ``rho_c`` is the marginal on ``condition``; identities act on every other
    factor of ``rho``.
    """
    marginal = partial_trace(rho, {condition})
    inv_root = Operator(psd_power(marginal.matrix, -0.5), marginal.layout, check=False)
    s = embed(inv_root, rho.layout).matrix
    m = s @ rho.matrix @ s
    return ConditionalOperator((m + m.conj().T) / 2, rho.layout, check=False, condition=condition)


def _ordered(rho: Operator, target: str, a: str, b: str) -> Operator:
    names = (target, a, b)
    if len(set(names)) != 3:
        raise LabelError(f"target and sources must be distinct, got {names}")
    if set(rho.labels) != set(names):
        raise LabelError(f"expected a state on {names}, got layout {rho.labels}")
    return permute(rho, names)


def _embedded_powers(cond: ConditionalOperator, layout, exponents):
    vals, vecs, support = psd_eigh(cond.matrix)
    out = []
    for p in exponents:
        small = Operator(power_from_eigh(vals, vecs, support, p), cond.layout, check=False)
        out.append(embed(small, layout).matrix)
    return out


def z_operator(rho: Operator, variant: str = "star", target: str = "T", a: str = "A", b: str = "B") -> Operator:
    """Quantum Bhattacharyya operator on A x B.

    ``star``:  1/2 Tr_T( X^{1/4} Y^{1/2} X^{1/4} + Y^{1/4} X^{1/2} Y^{1/4} )
    ``plain``: 1/2 Tr_T( X^{1/2} Y^{1/2} + Y^{1/2} X^{1/2} )

    with ``X = rho_{T|A} x 1_B`` and ``Y = rho_{T|B} x 1_A``.
    """
    if variant not in VARIANTS:
        raise ValidationError(f"variant must be one of {VARIANTS}, got {variant!r}")
    rho = _ordered(rho, target, a, b)
    layout = rho.layout
    cond_a = conditional_state(partial_trace(rho, {target, a}), a)
    cond_b = conditional_state(partial_trace(rho, {target, b}), b)
    if variant == "star":
        x4, x2 = _embedded_powers(cond_a, layout, (0.25, 0.5))
        y4, y2 = _embedded_powers(cond_b, layout, (0.25, 0.5))
        m = x4 @ y2 @ x4 + y4 @ x2 @ y4
    else:
        (x2,) = _embedded_powers(cond_a, layout, (0.5,))
        (y2,) = _embedded_powers(cond_b, layout, (0.5,))
        m = x2 @ y2
        m = m + m.conj().T
    z = partial_trace(Operator(0.5 * m, layout, check=False), {a, b}).matrix
    return Operator((z + z.conj().T) / 2, layout.sub((a, b)), check=False)


def _bq1(rho: Operator, z: Operator, a: str, b: str) -> float:
    rho_ab = permute(partial_trace(rho, {a, b}), (a, b)).matrix
    log_z, support = log_on_support(z.matrix)
    leak = float(np.trace(rho_ab @ (np.eye(len(rho_ab)) - support)).real)
    if leak > LEAK_TOL:
        raise SupportLeakError(f"rho_AB has weight {leak:.3e} outside supp(Z_AB)")
    if log.isEnabledFor(logging.DEBUG):
        log.debug("Z_AB spectrum max %.6g", np.linalg.eigvalsh(z.matrix).max())
    return float(-np.trace(rho_ab @ log_z).real)


def quantum_bonus(rho: Operator, variant: str = "star", target: str = "T", a: str = "A", b: str = "B"):
    """Return ``(bq0, bq1, bq)``: the trivial-pooling bonus, the logarithmic one, and their max."""
    i_ta = quantum_mutual_information(rho, target, a)
    i_tb = quantum_mutual_information(rho, target, b)
    bq0 = 0.5 * abs(i_ta - i_tb)
    bq1 = _bq1(rho, z_operator(rho, variant, target, a, b), a, b)
    return bq0, bq1, max(bq0, bq1)


def qpid_decompose(
    rho: Operator, variant: str = "star", target: str = "T", a: str = "A", b: str = "B"
) -> QPIDResult:
    """Full quantum PID of a state on ``{target, a, b}``."""
    z = z_operator(rho, variant, target, a, b)
    i_ta = quantum_mutual_information(rho, target, a)
    i_tb = quantum_mutual_information(rho, target, b)
    i_tab = quantum_mutual_information(rho, target, (a, b))
    bq0 = 0.5 * abs(i_ta - i_tb)
    bq1 = _bq1(rho, z, a, b)
    bq = max(bq0, bq1)
    unique_a = bq + 0.5 * (i_ta - i_tb)
    unique_b = bq + 0.5 * (i_tb - i_ta)
    redundant = i_ta - unique_a
    synergy = i_tab - unique_a - unique_b - redundant
    tri = -(i_tab - i_ta - i_tb)
    return QPIDResult(i_ta, i_tb, i_tab, bq0, bq1, bq, unique_a, unique_b, redundant, synergy, tri, variant)


def as_density(state) -> DensityOperator:
    """Accept a PureState or an operator and return a density operator."""
    if hasattr(state, "density"):
        return state.density()
    return state
