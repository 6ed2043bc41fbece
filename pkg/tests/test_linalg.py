import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qpid import (
    DensityOperator,
    HilbertLayout,
    LabelError,
    LayoutError,
    NotPSDError,
    Operator,
    PureState,
    ValidationError,
    embed,
    hermitian_power,
    operator_log_on_support,
    partial_trace,
    star_product,
    von_neumann_entropy,
)
from qpid.classical import TRIADIC, DYADIC
from qpid.quantum import conditional_state
from qpid.states import superposition_from_table

from oracles import brute_embed, brute_partial_trace, random_density

BELL = np.array([1, 0, 0, 1]) / math.sqrt(2)
TWO = HilbertLayout((2, 2), ("A", "B"))


def density(m, dims, labels):
    return DensityOperator(m, HilbertLayout(dims, labels))


def bell():
    return PureState(BELL, TWO).density()


# ---------------------------------------------------------------- layout


def test_layout_invariants():
    lay = HilbertLayout((2, 3, 4), ("T", "A", "B"))
    assert lay.dim == 24
    assert lay.index("A") == 1
    assert lay.sub(("B", "T")).dims == (4, 2)
    with pytest.raises(ValidationError):
        HilbertLayout((2, 0), ("a", "b"))
    with pytest.raises(LabelError):
        HilbertLayout((2, 2), ("a", "a"))
    with pytest.raises(ValidationError):
        HilbertLayout((2, 2), ("a",))


def test_operator_rejects_non_hermitian():
    with pytest.raises(ValidationError):
        Operator(np.array([[0, 1], [0, 0]]), HilbertLayout((2,), ("x",)))


def test_density_operator_checks():
    lay = HilbertLayout((2,), ("x",))
    with pytest.raises(ValidationError):
        DensityOperator(np.eye(2), lay)
    with pytest.raises(ValidationError):
        DensityOperator(np.diag([1.5, -0.5]), lay)


def test_pure_state_norm_check():
    with pytest.raises(ValidationError):
        PureState([1, 1], HilbertLayout((2,), ("x",)))


# ---------------------------------------------------------------- partial trace


def test_partial_trace_bell_marginal():
    np.testing.assert_allclose(partial_trace(bell(), {"A"}).matrix, np.eye(2) / 2, atol=1e-15)


def test_partial_trace_keep_all_is_identity():
    rho = bell()
    assert partial_trace(rho, {"A", "B"}) is rho


def test_partial_trace_unknown_label():
    with pytest.raises(LabelError):
        partial_trace(bell(), {"Q"})
    with pytest.raises(ValidationError):
        partial_trace(bell(), set())


def test_partial_trace_psi1_target_entropy():
    rho = superposition_from_table(TRIADIC).density()
    rho_t = partial_trace(rho, {"T"})
    np.testing.assert_allclose(rho_t.matrix, brute_partial_trace(rho.matrix, (4, 4, 4), [0]), atol=1e-14)
    assert von_neumann_entropy(rho_t) == pytest.approx(2.0, abs=1e-12)


@pytest.mark.parametrize("keep", [[0], [1], [2], [0, 2], [1, 2], [0, 1]])
def test_partial_trace_matches_index_summation(keep):
    rng = np.random.default_rng(1)
    dims = (2, 3, 2)
    m = random_density(12, rng)
    labels = ("x", "y", "z")
    out = partial_trace(density(m, dims, labels), {labels[i] for i in keep})
    np.testing.assert_allclose(out.matrix, brute_partial_trace(m, dims, keep), atol=1e-14)
    assert out.labels == tuple(labels[i] for i in sorted(keep))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.lists(st.integers(1, 3), min_size=3, max_size=3))
def test_partial_trace_preserves_trace_and_composes(seed, dims):
    rng = np.random.default_rng(seed)
    rho = density(random_density(math.prod(dims), rng), dims, ("T", "A", "B"))
    t = partial_trace(rho, {"T"})
    assert abs(t.trace() - rho.trace()) <= 1e-12
    two_step = partial_trace(partial_trace(rho, {"T", "A"}), {"T"})
    np.testing.assert_allclose(two_step.matrix, t.matrix, atol=1e-12)


# ---------------------------------------------------------------- embed


def test_embed_appends_identity():
    rng = np.random.default_rng(2)
    m = random_density(4, rng)
    op = Operator(m, HilbertLayout((2, 2), ("T", "A")))
    target = HilbertLayout((2, 2, 3), ("T", "A", "B"))
    np.testing.assert_allclose(embed(op, target).matrix, np.kron(m, np.eye(3)), atol=1e-15)


def test_embed_permuted_matches_matrix_elements():
    rng = np.random.default_rng(3)
    m = random_density(4, rng)
    op = Operator(m, HilbertLayout((2, 2), ("T", "B")))
    target = HilbertLayout((2, 2, 2), ("T", "A", "B"))
    np.testing.assert_allclose(embed(op, target).matrix, brute_embed(m, [0, 2], (2, 2, 2)), atol=1e-15)
    # reversed label order inside op
    op_rev = Operator(brute_embed(m, [1, 0], (2, 2)), HilbertLayout((2, 2), ("B", "T")))
    np.testing.assert_allclose(embed(op_rev, target).matrix, brute_embed(m, [0, 2], (2, 2, 2)), atol=1e-15)


def test_embed_then_trace_back():
    rng = np.random.default_rng(4)
    m = random_density(6, rng)
    op = Operator(m, HilbertLayout((2, 3), ("A", "B")))
    big = embed(op, HilbertLayout((5, 2, 3), ("T", "A", "B")))
    np.testing.assert_allclose(partial_trace(big, {"A", "B"}).matrix, 5 * m, atol=1e-14)


def test_embed_dimension_mismatch():
    op = Operator(np.eye(2), HilbertLayout((2,), ("A",)))
    with pytest.raises(LayoutError):
        embed(op, HilbertLayout((3, 2), ("A", "B")))
    with pytest.raises(LabelError):
        embed(op, HilbertLayout((2,), ("B",)))


# ---------------------------------------------------------------- powers


def op1(m):
    m = np.asarray(m, dtype=complex)
    return Operator(m, HilbertLayout((m.shape[0],), ("x",)))


@pytest.mark.parametrize("p", [-1, -0.5, 0.25, 0.5, 2])
def test_power_of_identity(p):
    np.testing.assert_allclose(hermitian_power(op1(np.eye(3)), p).matrix, np.eye(3), atol=1e-15)


def test_power_moore_penrose_kernel():
    np.testing.assert_allclose(hermitian_power(op1(np.diag([4.0, 0.0])), -0.5).matrix, np.diag([0.5, 0]), atol=1e-15)


def test_power_rejects_negative_eigenvalue():
    with pytest.raises(NotPSDError):
        hermitian_power(op1(np.diag([1.0, -0.1])), 0.5)


def test_power_clamps_noise():
    out = hermitian_power(op1(np.diag([1.0, -1e-12])), -0.5)
    np.testing.assert_allclose(out.matrix, np.diag([1.0, 0.0]), atol=1e-15)


@pytest.mark.parametrize("seed", range(5))
def test_square_root_squares_back(seed):
    a = random_density(6, np.random.default_rng(seed), rank=4)
    r = hermitian_power(op1(a), 0.5).matrix
    assert np.linalg.norm(r @ r - a) <= 1e-10 * np.linalg.norm(a)


@pytest.mark.parametrize("p", [0.25, 0.5, 1])
@pytest.mark.parametrize("q", [0.25, 0.5, 1])
def test_power_composition(p, q):
    a = op1(random_density(5, np.random.default_rng(11), rank=3))
    lhs = hermitian_power(hermitian_power(a, p), q).matrix
    # (A^p)^q = A^{pq}; products on the support add exponents
    np.testing.assert_allclose(lhs, hermitian_power(a, p * q).matrix, atol=1e-9 * np.linalg.norm(lhs))
    prod = hermitian_power(a, p).matrix @ hermitian_power(a, q).matrix
    target = hermitian_power(a, p + q).matrix
    assert np.linalg.norm(prod - target) <= 1e-9 * np.linalg.norm(target)


# ---------------------------------------------------------------- star product


def test_star_with_identity():
    a = op1(random_density(3, np.random.default_rng(5)))
    np.testing.assert_allclose(star_product(a, op1(np.eye(3))).matrix, a.matrix, atol=1e-15)


def test_star_commuting_diagonals():
    a, b = op1(np.diag([1.0, 2.0, 3.0])), op1(np.diag([4.0, 0.5, 0.0]))
    np.testing.assert_allclose(star_product(a, b).matrix, np.diag([4.0, 1.0, 0.0]), atol=1e-14)


def test_star_layout_mismatch():
    with pytest.raises(LayoutError):
        star_product(op1(np.eye(2)), Operator(np.eye(2), HilbertLayout((2,), ("y",))))


@pytest.mark.parametrize("seed", range(5))
def test_star_inverts_conditioning(seed):
    rng = np.random.default_rng(seed)
    lay = HilbertLayout((2, 3), ("T", "A"))
    rho = DensityOperator(random_density(6, rng), lay)
    cond = conditional_state(rho, "A")
    rho_a = partial_trace(rho, {"A"})
    back = star_product(Operator(cond.matrix, lay), embed(rho_a, lay))
    assert np.linalg.norm(back.matrix - rho.matrix) <= 1e-10


# ---------------------------------------------------------------- entropy and log


def test_entropy_pure_and_maximally_mixed():
    assert von_neumann_entropy(bell()) == pytest.approx(0.0, abs=1e-12)
    for d in (2, 3, 5):
        assert von_neumann_entropy(op1(np.eye(d) / d)) == pytest.approx(math.log2(d), abs=1e-12)


def test_entropy_psi2_target():
    rho = superposition_from_table(DYADIC).density()
    assert von_neumann_entropy(partial_trace(rho, {"T"})) == pytest.approx(2.0, abs=1e-12)


def test_entropy_rejects_non_density():
    with pytest.raises(ValidationError):
        von_neumann_entropy(op1(np.eye(2)))


@pytest.mark.parametrize("seed", range(5))
def test_entropy_schmidt_symmetry(seed):
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(12) + 1j * rng.standard_normal(12)
    rho = PureState(v / np.linalg.norm(v), HilbertLayout((3, 4), ("A", "B"))).density()
    sa = von_neumann_entropy(partial_trace(rho, {"A"}))
    sb = von_neumann_entropy(partial_trace(rho, {"B"}))
    assert abs(sa - sb) <= 1e-9


def test_log_on_support():
    log, proj = operator_log_on_support(op1(np.eye(3)))
    np.testing.assert_allclose(log.matrix, 0, atol=1e-15)
    np.testing.assert_allclose(proj.matrix, np.eye(3), atol=1e-15)
    log, _ = operator_log_on_support(op1(np.diag([2.0, 1.0])))
    np.testing.assert_allclose(log.matrix, np.diag([1.0, 0.0]), atol=1e-15)
    log, proj = operator_log_on_support(op1(np.diag([0.5, 0.0])))
    np.testing.assert_allclose(log.matrix, np.diag([-1.0, 0.0]), atol=1e-15)
    np.testing.assert_allclose(proj.matrix, np.diag([1.0, 0.0]), atol=1e-15)
