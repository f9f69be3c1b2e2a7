import pytest

from steinhaus_lab.utils.matrix_utils import (
    ExactMatrix,
    block_matrix,
    circulant,
    circulant_c,
    exact_det,
    exact_kernel,
    exact_rank,
    row_times,
    toeplitz_t,
    wendt,
)


def test_circulant_layout():
    assert circulant([1, 2, 3]).to_lists() == [[1, 2, 3], [3, 1, 2], [2, 3, 1]]


def test_first_circulants():
    assert circulant_c(1, 3).to_lists() == [[1, 0, 1], [1, 1, 0], [0, 1, 1]]
    assert circulant_c(1, 1).to_lists() == [[2]]
    for k in range(1, 6):
        assert circulant_c(0, k) == ExactMatrix.identity(k)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_circulant_powers(k):
    c1 = circulant_c(1, k)
    for i in range(7):
        assert circulant_c(i, k) == c1**i


def test_first_toeplitz():
    t1 = toeplitz_t(1, 4)
    assert t1.to_lists() == [[0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]
    assert toeplitz_t(0, 4).is_zero()
    assert toeplitz_t(2, 2).to_lists() == [[1, 2], [0, 1]]
    assert toeplitz_t(3, 1).to_lists() == [[12]]


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_toeplitz_recurrence(k):
    c1, t1 = circulant_c(1, k), toeplitz_t(1, k)
    for i in range(7):
        assert toeplitz_t(i + 1, k) == toeplitz_t(i, k) @ c1 + circulant_c(i, k) @ t1


def test_small_wendt():
    assert wendt(1).to_lists() == [[1]]
    assert wendt(2).to_lists() == [[1, 2], [2, 1]]
    assert exact_det(wendt(1)) == 1
    assert exact_det(wendt(2)) == -3
    assert wendt(5) == circulant_c(5, 5) - ExactMatrix.identity(5)
    assert wendt(6) == wendt(6).T


@pytest.mark.parametrize("k", range(1, 25))
def test_wendt_rank(k):
    expected = k - 2 if k % 6 == 0 else k
    assert exact_rank(wendt(k)) == expected


@pytest.mark.parametrize("k", range(1, 19))
def test_wendt_determinant_vanishes(k):
    assert (exact_det(wendt(k)) == 0) == (k % 6 == 0)


@pytest.mark.parametrize("k", [6, 12])
def test_wendt_square_rank(k):
    w = wendt(k)
    assert exact_rank(w @ w) == exact_rank(w)


def test_kernel():
    assert exact_kernel(ExactMatrix.zeros(3, 3)) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert exact_kernel(ExactMatrix.identity(3)) == []
    m = ExactMatrix.from_rows([[1, 1, 2], [2, 2, 4]])
    basis = exact_kernel(m)
    assert len(basis) == 2
    for v in basis:
        assert all(x == 0 for x in row_times(v, m.T))


def test_block_matrix():
    i2, z2 = ExactMatrix.identity(2), ExactMatrix.zeros(2, 2)
    m = block_matrix([[i2, z2], [z2, i2]])
    assert m == ExactMatrix.identity(4)


def test_shape_errors():
    with pytest.raises(ValueError):
        ExactMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(ValueError):
        ExactMatrix.identity(2) @ ExactMatrix.zeros(3, 3)
    with pytest.raises(ValueError):
        exact_det(ExactMatrix.zeros(2, 3))
    with pytest.raises(ValueError):
        wendt(0)
