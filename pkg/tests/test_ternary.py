from fractions import Fraction

import numpy as np
import pytest
import scipy.linalg

from oracles import abs_inner_max
from sparsecs import (
    BlockBinaryMatrix,
    ParameterError,
    coherence,
    compose,
    density,
    devore_matrix,
    hadamard_expand,
    hadamard_sylvester,
    max_overlap,
    sign_flip,
)
from sparsecs.analysis import hadamard_inner_bounds
from sparsecs.ternary import row_gram_defect


def test_printed_sign_flip_column():
    t = sign_flip(BlockBinaryMatrix(3, 3, [(2, 3, 1)], 0))
    assert t.to_dense()[:, 0].tolist() == [0, 1, 0, 0, 0, 1, -1, 0, 0]


def test_diagonal_and_extreme_tuples():
    assert (sign_flip(BlockBinaryMatrix(3, 3, [(1, 2, 3)], 0)).signs == 1).all()
    assert (sign_flip(BlockBinaryMatrix(4, 3, [(4, 4, 4)], 0)).signs == 1).all()
    assert sign_flip(BlockBinaryMatrix(4, 3, [(1, 1, 1)], 0)).signs.tolist() == [[1, -1, -1]]


FIXTURES = [
    lambda: devore_matrix(2, 1),
    lambda: devore_matrix(3, 1),
    lambda: devore_matrix(5, 2),
    lambda: compose(devore_matrix(2, 1), devore_matrix(3, 1), 2),
    lambda: compose(devore_matrix(3, 1), devore_matrix(5, 1), 3),
]


@pytest.mark.parametrize("make", FIXTURES)
def test_sign_flip_preserves_inner_magnitudes(make):
    phi = make()
    t = sign_flip(phi)
    b = phi.to_dense().astype(np.int64)
    s = t.to_dense().astype(np.int64)
    assert np.array_equal(np.abs(s), b)
    assert np.array_equal(np.abs(s.T @ s), b.T @ b)
    assert coherence(t) == coherence(phi)
    assert density(t) == density(phi)


@pytest.mark.parametrize("order", [1, 2, 4, 8, 16, 32])
def test_sylvester_matches_scipy(order):
    h = hadamard_sylvester(order).entries
    assert np.array_equal(h, scipy.linalg.hadamard(order))
    assert np.array_equal(h.astype(int) @ h.T.astype(int), order * np.eye(order, dtype=int))


@pytest.mark.parametrize("order", [0, 3, 6, 12])
def test_sylvester_rejects(order):
    with pytest.raises(ParameterError):
        hadamard_sylvester(order)


def test_expand_devore_2_1():
    t = hadamard_expand(devore_matrix(2, 1), 0)
    assert t.shape == (4, 8)
    d = t.to_dense().astype(int)
    assert d[:, 0].tolist() == [1, 0, 1, 0]
    assert d[:, 1].tolist() == [1, 0, -1, 0]
    assert d[:, 0] @ d[:, 1] == 0
    assert density(t) == density(devore_matrix(2, 1))


def test_expand_with_r_prime():
    # k = 3, r = 1: only order 4 is admissible, so r' = 1
    psi = devore_matrix(3, 1)
    t = hadamard_expand(psi)
    assert t.shape == (9, 36) and t.column_weight == 3
    d = t.to_dense().astype(int)
    g = np.abs(d.T @ d)
    same = max(g[a, b] for a in range(36) for b in range(36) if a != b and a // 4 == b // 4)
    cross = max(g[a, b] for a in range(36) for b in range(36) if a // 4 != b // 4)
    assert same <= 1 and cross <= 1
    assert hadamard_inner_bounds(t) == (same, cross)
    assert coherence(t) <= Fraction(psi.r, psi.k)


def test_expand_errors():
    psi = devore_matrix(3, 1)
    with pytest.raises(ParameterError, match="admissible"):
        hadamard_expand(psi, 0)
    with pytest.raises(ParameterError):
        hadamard_expand(psi, 2)
    with pytest.raises(ParameterError, match="power-of-two"):
        hadamard_expand(devore_matrix(5, 1))


def test_expand_general_binary_matrix():
    # rows permuted: no block structure, still uniform weight
    base = devore_matrix(3, 1).to_dense()
    perm = np.random.default_rng(1).permutation(9)
    t = hadamard_expand(base[perm], 1)
    assert not t.is_block_form
    assert abs_inner_max(t.to_dense().tolist()) == max_overlap(t) <= 1


def test_composed_case_coherence():
    phi = compose(devore_matrix(3, 1), devore_matrix(5, 1), 2)
    t = hadamard_expand(phi, 0)
    assert hadamard_inner_bounds(t) == (0, 1)
    assert coherence(t) <= Fraction(phi.r, 2)


def test_row_gram_defect_is_diagnostic():
    assert row_gram_defect(hadamard_expand(devore_matrix(2, 1), 0)) >= 0
