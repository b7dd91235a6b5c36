import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from schemecodes import fp


def random_mat(draw, rows, cols, p):
    data = draw(st.lists(st.integers(0, p - 1), min_size=rows * cols, max_size=rows * cols))
    return fp.mat(np.array(data).reshape(rows, cols), p)


small_prime = st.sampled_from([2, 3, 5, 7])
dims = st.integers(1, 5)


def test_identity_multiplication():
    a = fp.mat([[1, 2], [3, 4]], 5)
    assert fp.mat_mul(fp.identity(2, 5), a) == a
    assert fp.mat_mul(a, fp.identity(2, 5)) == a


def test_char2_cancellation():
    ones = fp.mat([[1, 1], [1, 1]], 2)
    assert fp.mat_mul(ones, ones).is_zero()


def test_mul_dimension_and_modulus_errors():
    a = fp.mat([[1, 0]], 3)
    b = fp.mat([[1, 0]], 3)
    with pytest.raises(ValueError, match="dimension mismatch"):
        fp.mat_mul(a, b)
    c = fp.mat([[1], [0]], 5)
    with pytest.raises(ValueError, match="modulus mismatch"):
        fp.mat_mul(a, c)


@given(st.data(), small_prime, dims, dims, dims, dims)
@settings(max_examples=40, deadline=None)
def test_matmul_associative_distributive(data, p, m, n, k, l):
    a = random_mat(data.draw, m, n, p)
    b = random_mat(data.draw, n, k, p)
    c = random_mat(data.draw, k, l, p)
    assert fp.mat_mul(fp.mat_mul(a, b), c) == fp.mat_mul(a, fp.mat_mul(b, c))
    b2 = random_mat(data.draw, n, k, p)
    lhs = fp.mat_mul(a, fp.mat_add(b, b2))
    rhs = fp.mat_add(fp.mat_mul(a, b), fp.mat_mul(a, b2))
    assert lhs == rhs


def test_rref_zero_and_identity():
    z = fp.zeros(3, 4, 5)
    res = fp.rref(z)
    assert res.rank == 0 and res.pivots == ()
    res = fp.rref(fp.identity(4, 7))
    assert res.rank == 4 and res.pivots == (0, 1, 2, 3)


def test_rref_rejects_composite_modulus():
    with pytest.raises(ValueError, match="prime"):
        fp.rref(fp.mat([[1]], 4))


@given(st.data(), small_prime, dims, dims)
@settings(max_examples=40, deadline=None)
def test_rref_idempotent_and_rank_transpose(data, p, m, n):
    a = random_mat(data.draw, m, n, p)
    res = fp.rref(a)
    again = fp.rref(res.matrix)
    assert again.matrix == res.matrix
    assert fp.rank(a) == fp.rank(a.transpose())


@given(st.data(), small_prime, dims, dims)
@settings(max_examples=40, deadline=None)
def test_gram_symmetric(data, p, m, n):
    a = random_mat(data.draw, m, n, p)
    g = fp.gram(a)
    assert g == g.transpose()


def test_gram_even_ones_row():
    row = fp.mat([[1] * 6], 2)
    assert fp.gram(row).is_zero()


@given(st.data(), small_prime, dims, dims)
@settings(max_examples=30, deadline=None)
def test_kernel_basis(data, p, m, n):
    a = random_mat(data.draw, m, n, p)
    ker = fp.kernel_basis(a)
    assert ker.rows == n - fp.rank(a)
    if ker.rows:
        prod = fp.mat_mul(a, ker.transpose())
        assert prod.is_zero()


def test_smith_identity_zero_diag21():
    assert fp.smith_form(fp.identity(3, 6)).divisors == (1, 1, 1)
    assert fp.smith_form(fp.zeros(2, 3, 4)).divisors == (0, 0)
    sf = fp.smith_form(fp.mat([[2, 0], [0, 1]], 4))
    assert sf.divisors == (1, 2)
    assert sf.module_type() == {4: 1, 2: 1}


@given(st.data(), st.sampled_from([4, 6, 8, 9, 12]), dims, dims)
@settings(max_examples=40, deadline=None)
def test_smith_decomposition_valid(data, m, rows, cols):
    vals = data.draw(st.lists(st.integers(0, m - 1), min_size=rows * cols, max_size=rows * cols))
    a = fp.mat(np.array(vals).reshape(rows, cols), m)
    sf = fp.smith_form(a)
    assert fp.mat_mul(fp.mat_mul(sf.u, a), sf.v) == sf.diagonal
    # transforms invertible mod m
    fp.solve_right_identity(sf.u)
    fp.solve_right_identity(sf.v)
    # divisor chain
    divs = [d if d else m for d in sf.divisors]
    for x, y in zip(divs, divs[1:]):
        assert y % x == 0


def test_pack_popcount_roundtrip(rng):
    rows = (rng.random((5, 100)) < 0.4).astype(np.uint8)
    packed = fp.pack_rows_gf2(rows)
    assert list(fp.popcount_rows(packed)) == list(rows.sum(axis=1))
