from itertools import product

import pytest

from oracles import devore_by_enumeration, naive_poly, tuple_overlap_max
from sparsecs import DevoreParams, ParameterError, RangeError, density, devore_matrix, eval_poly

SMALL = [(p, r) for p in (2, 3, 5, 7) for r in range(p) if r <= 2]


def test_printed_s():
    assert devore_matrix(2, 1).as_tuples() == [(1, 1), (2, 2), (1, 2), (2, 1)]


def test_printed_s_prime():
    assert devore_matrix(3, 1).as_tuples() == [
        (1, 1, 1), (2, 2, 2), (3, 3, 3),
        (1, 2, 3), (2, 3, 1), (3, 1, 2),
        (1, 3, 2), (2, 1, 3), (3, 2, 1),
    ]


def test_constants():
    assert devore_matrix(2, 0).as_tuples() == [(1, 1), (2, 2)]


@pytest.mark.parametrize("p,r", SMALL)
def test_matches_enumeration(p, r):
    m = devore_matrix(p, r)
    assert m.as_tuples() == devore_by_enumeration(p, r)
    assert (m.n, m.k, m.n_cols, m.r) == (p, p, p ** (r + 1), r)
    assert len(set(m.as_tuples())) == p ** (r + 1)
    assert density(m) == pytest.approx(1 / p) and density(m).denominator == p
    if m.n_cols >= 2:
        assert tuple_overlap_max(m.as_tuples()) <= r


@pytest.mark.parametrize("p,r", [(4, 1), (1, 0), (9, 1), (3, 3), (5, -1)])
def test_bad_params(p, r):
    with pytest.raises(ParameterError):
        devore_matrix(p, r)
    with pytest.raises(ParameterError):
        DevoreParams(p, r)


def test_eval_poly_examples():
    assert eval_poly([1, 2], 2, 3) == 2
    assert eval_poly([0, 0, 0], 4, 5) == 0
    assert eval_poly([3], 1, 5) == 3


def test_eval_poly_range():
    with pytest.raises(RangeError):
        eval_poly([3], 1, 3)
    with pytest.raises(RangeError):
        eval_poly([1], 5, 5)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_eval_poly_exhaustive(p):
    for deg in range(4):
        for coeffs in product(range(p), repeat=deg + 1):
            for x in range(p):
                assert eval_poly(list(coeffs), x, p) == naive_poly(coeffs, x, p)
