"""Exact dense linear algebra over the prime field F_p (p an odd prime).

All matrices are numpy ``int64`` arrays with entries reduced into ``[0, p)``.
Every routine is a pure function of its inputs; no floating point is used
anywhere.
"""

from __future__ import annotations

import numpy as np


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """Arithmetic and Gaussian elimination over F_p.

    Args:
        p: an odd prime modulus (p >= 3).
    """

    def __init__(self, p: int):
        if not _is_prime(p) or p < 3:
            raise ValueError(f"modulus must be an odd prime >= 3, got {p}")
        self.p = p
        # inverse table: inv[a] = a^(p-2) mod p for a in [1, p)
        self._inv = np.array(
            [0] + [pow(a, p - 2, p) for a in range(1, p)], dtype=np.int64
        )

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    # -- element/matrix helpers -------------------------------------------

    def reduce(self, a) -> np.ndarray:
        return np.asarray(a, dtype=np.int64) % self.p

    def inv(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return int(self._inv[a])

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        # entries < p <= 13 and dims < ~2000 keep products well inside int64
        return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % self.p

    def matpow(self, a: np.ndarray, k: int) -> np.ndarray:
        n = a.shape[0]
        result = self.eye(n)
        base = self.reduce(a)
        while k > 0:
            if k & 1:
                result = self.matmul(result, base)
            base = self.matmul(base, base)
            k >>= 1
        return result

    # -- elimination ------------------------------------------------------

    def rref(self, m: np.ndarray) -> tuple[np.ndarray, list[int], int]:
        """Reduced row echelon form.

        Returns:
            (rref matrix, strictly increasing pivot column list, rank).
        """
        a = self.reduce(m).copy()
        rows, cols = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            pivot_row = -1
            for i in range(r, rows):
                if a[i, c] != 0:
                    pivot_row = i
                    break
            if pivot_row < 0:
                continue
            if pivot_row != r:
                a[[r, pivot_row]] = a[[pivot_row, r]]
            a[r] = (a[r] * self._inv[a[r, c]]) % self.p
            for i in range(rows):
                if i != r and a[i, c] != 0:
                    a[i] = (a[i] - a[i, c] * a[r]) % self.p
            pivots.append(c)
            r += 1
        return a, pivots, len(pivots)

    def rank(self, m: np.ndarray) -> int:
        return self.rref(m)[2]

    def kernel_basis(self, m: np.ndarray) -> np.ndarray:
        """Columns form a basis of the null space {x : m @ x = 0}."""
        a = np.asarray(m, dtype=np.int64)
        rows, cols = a.shape
        r, pivots, rank = self.rref(a)
        free = [c for c in range(cols) if c not in set(pivots)]
        basis = self.zeros(cols, len(free))
        for j, fc in enumerate(free):
            basis[fc, j] = 1
            for i, pc in enumerate(pivots):
                basis[pc, j] = (-r[i, fc]) % self.p
        return basis

    def solve(self, m: np.ndarray, b: np.ndarray) -> np.ndarray | None:
        """One solution of m @ x = b, or None when the system is inconsistent."""
        a = self.reduce(m)
        rhs = self.reduce(b).reshape(-1)
        if rhs.shape[0] != a.shape[0]:
            raise ValueError("dimension mismatch between matrix and rhs")
        aug = np.hstack([a, rhs.reshape(-1, 1)])
        r, pivots, rank = self.rref(aug)
        if a.shape[1] in pivots:
            return None
        x = np.zeros(a.shape[1], dtype=np.int64)
        for i, pc in enumerate(pivots):
            x[pc] = r[i, a.shape[1]]
        return x

    def solve_matrix(self, m: np.ndarray, b: np.ndarray) -> np.ndarray | None:
        """One solution X of m @ X = b for a matrix right-hand side."""
        a = self.reduce(m)
        rhs = self.reduce(b)
        if rhs.shape[0] != a.shape[0]:
            raise ValueError("dimension mismatch between matrix and rhs")
        cols = []
        for j in range(rhs.shape[1]):
            x = self.solve(a, rhs[:, j])
            if x is None:
                return None
            cols.append(x)
        if not cols:
            return self.zeros(a.shape[1], 0)
        return np.stack(cols, axis=1)

    def inv_matrix(self, m: np.ndarray) -> np.ndarray | None:
        """Inverse of a square matrix, or None when singular."""
        a = self.reduce(m)
        n = a.shape[0]
        if a.shape[1] != n:
            raise ValueError("matrix is not square")
        aug = np.hstack([a, self.eye(n)])
        r, pivots, rank = self.rref(aug)
        if rank < n or pivots[:n] != list(range(n)):
            return None
        return r[:, n:]

    # -- span utilities ---------------------------------------------------

    def column_space_basis(self, m: np.ndarray) -> np.ndarray:
        """Subset of columns of m forming a basis of the column space."""
        a = self.reduce(m)
        _, pivots, _ = self.rref(a)
        return a[:, pivots]

    def in_column_space(self, m: np.ndarray, v: np.ndarray) -> bool:
        return self.solve(m, v) is not None

    def same_column_space(self, a: np.ndarray, b: np.ndarray) -> bool:
        ra = self.rank(a)
        rb = self.rank(b)
        if ra != rb:
            return False
        return self.rank(np.hstack([self.reduce(a), self.reduce(b)])) == ra
