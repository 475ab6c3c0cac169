"""Exact linear algebra over a prime field, checked against hand-computed
oracles and brute-force enumeration at small sizes."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grquiver.gf import PrimeField


F3 = PrimeField(3)
F5 = PrimeField(5)


def random_matrix(ff, rows, cols, seed):
    rng = np.random.default_rng(seed)
    return rng.integers(0, ff.p, size=(rows, cols)).astype(np.int64)


class TestBasics:
    def test_reduce_wraps_negatives(self):
        a = np.array([[-1, 7], [3, -6]], dtype=np.int64)
        assert np.array_equal(F3.reduce(a), [[2, 1], [0, 0]])

    def test_inverse_table(self):
        for x in range(1, 5):
            assert (x * F5.inv(x)) % 5 == 1

    def test_inv_of_zero_raises(self):
        with pytest.raises(ZeroDivisionError):
            F3.inv(0)

    def test_matmul_reduces(self):
        a = np.array([[2, 2]], dtype=np.int64)
        b = np.array([[2], [2]], dtype=np.int64)
        assert F3.matmul(a, b)[0, 0] == (2 * 2 + 2 * 2) % 3

    def test_matpow(self):
        n = np.array([[0, 1], [0, 0]], dtype=np.int64)
        assert np.array_equal(F3.matpow(n, 2), np.zeros((2, 2)))
        assert np.array_equal(F3.matpow(n, 0), np.eye(2))


class TestRref:
    def test_hand_oracle_f5(self):
        # row-reduce [[2,1],[4,3]] over F_5 by hand:
        # R1 *= inv(2)=3 -> [1,3]; R2 -= 4*R1 -> [0,3-12=-9=1]... second
        # pivot normalizes to [0,1] and clears the 3 above: [[1,0],[0,1]].
        a = np.array([[2, 1], [4, 3]], dtype=np.int64)
        r, pivots, rank = F5.rref(a)
        assert np.array_equal(r, np.eye(2))
        assert pivots == [0, 1]
        assert rank == 2

    def test_singular_hand_oracle(self):
        a = np.array([[1, 2], [2, 4]], dtype=np.int64)
        r, pivots, rank = F5.rref(a)
        assert np.array_equal(r, [[1, 2], [0, 0]])
        assert rank == 1

    @given(st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_rref_idempotent(self, seed):
        a = random_matrix(F3, 4, 5, seed)
        r, _, rank = F3.rref(a)
        r2, _, rank2 = F3.rref(r)
        assert np.array_equal(r, r2)
        assert rank == rank2

    @given(st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_rank_nullity(self, seed):
        a = random_matrix(F5, 4, 6, seed)
        assert F5.rank(a) + F5.kernel_basis(a).shape[1] == 6


class TestKernel:
    def test_exhaustive_f3_oracle(self):
        # enumerate all of F_3^3 and compare with kernel_basis span
        a = np.array([[1, 2, 0], [0, 1, 1]], dtype=np.int64)
        brute = [v for v in itertools.product(range(3), repeat=3)
                 if not np.any(F3.matmul(a, np.array(v).reshape(3, 1)))]
        ker = F3.kernel_basis(a)
        spanned = {tuple(F3.matmul(ker, np.array(c).reshape(-1, 1)).ravel())
                   for c in itertools.product(range(3),
                                              repeat=ker.shape[1])}
        assert spanned == set(map(tuple, brute))

    def test_kernel_columns_annihilated(self):
        a = random_matrix(F5, 5, 7, 11)
        ker = F5.kernel_basis(a)
        assert not np.any(F5.matmul(a, ker))


class TestSolve:
    def test_substitution_oracle(self):
        a = random_matrix(F5, 5, 4, 3)
        x_true = np.array([1, 4, 2, 0], dtype=np.int64)
        b = F5.matmul(a, x_true.reshape(-1, 1)).ravel()
        x = F5.solve(a, b)
        assert x is not None
        assert np.array_equal(F5.matmul(a, x.reshape(-1, 1)).ravel(), b)

    def test_inconsistent_returns_none(self):
        a = np.array([[1, 0], [2, 0]], dtype=np.int64)
        b = np.array([1, 1], dtype=np.int64)
        assert F3.solve(a, b) is None

    def test_dim_mismatch_raises(self):
        a = np.zeros((2, 2), dtype=np.int64)
        with pytest.raises(ValueError):
            F3.solve(a, np.zeros(3, dtype=np.int64))

    def test_inv_matrix_roundtrip(self):
        a = np.array([[2, 1], [1, 1]], dtype=np.int64)
        inv = F3.inv_matrix(a)
        assert np.array_equal(F3.matmul(a, inv), np.eye(2))


class TestColumnSpace:
    def test_membership(self):
        a = np.array([[1, 2], [0, 0], [1, 2]], dtype=np.int64)
        assert F3.in_column_space(a, np.array([2, 0, 2], dtype=np.int64))
        assert not F3.in_column_space(a, np.array([0, 1, 0], dtype=np.int64))

    def test_same_column_space(self):
        a = np.array([[1, 0], [0, 1], [1, 1]], dtype=np.int64)
        b = F5.matmul(a, np.array([[1, 2], [3, 2]], dtype=np.int64))
        assert F5.same_column_space(a, b)
