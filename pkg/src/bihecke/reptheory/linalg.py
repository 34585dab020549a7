"""Exact linear algebra over Q (FLINT) and over prime fields (numpy).

``RationalMatrix`` is the public exact matrix type.  The two ``Field``
classes expose the handful of operations the radical and Cartan code
needs, so the same algorithm runs exactly over Q or modulo a prime.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Iterable, Sequence

import flint
import numpy as np

# Modular products split the left factor into 11-bit limbs so that every
# float64 partial sum stays below 2**53: limb * p * inner < 2**11 * 2**31 * 2**11.
MOD_PRIME_BITS = 31
MOD_MAX_INNER = 2048


def _to_fmpq(x) -> flint.fmpq:
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    if isinstance(x, flint.fmpq):
        return x
    return flint.fmpq(int(x))


def _to_fraction(x: flint.fmpq) -> Fraction:
    return Fraction(int(x.p), int(x.q))


class RationalMatrix:
    """Dense matrix with exact rational entries (reduced, positive denominators)."""

    __slots__ = ("m",)

    def __init__(self, m: flint.fmpq_mat):
        self.m = m

    # ------------------------------------------------------------- builders
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = ncols if ncols is not None else (len(rows[0]) if rows else 0)
        flat = [_to_fmpq(x) for r in rows for x in r]
        return cls(flint.fmpq_mat(nr, nc, flat))

    @classmethod
    def from_numpy(cls, arr: np.ndarray) -> "RationalMatrix":
        arr = np.asarray(arr)
        nr, nc = arr.shape
        if arr.dtype == object:
            flat = [_to_fmpq(x) for x in arr.reshape(-1)]
        else:
            flat = [int(x) for x in arr.reshape(-1)]
        return cls(flint.fmpq_mat(nr, nc, flat))

    @classmethod
    def zeros(cls, nr: int, nc: int) -> "RationalMatrix":
        return cls(flint.fmpq_mat(nr, nc))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        m = flint.fmpq_mat(n, n)
        for i in range(n):
            m[i, i] = 1
        return cls(m)

    @classmethod
    def vstack(cls, mats: Iterable["RationalMatrix"], ncols: int | None = None) -> "RationalMatrix":
        mats = [m for m in mats if m.rows]
        if not mats:
            return cls.zeros(0, ncols or 0)
        nc = mats[0].cols
        flat = [x for m in mats for x in m.m.entries()]
        return cls(flint.fmpq_mat(sum(m.rows for m in mats), nc, flat))

    # --------------------------------------------------------------- access
    @property
    def rows(self) -> int:
        return self.m.nrows()

    @property
    def cols(self) -> int:
        return self.m.ncols()

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return _to_fraction(self.m[ij[0], ij[1]])

    def row(self, i: int) -> list[Fraction]:
        return [self[i, j] for j in range(self.cols)]

    def tolist(self) -> list[list[Fraction]]:
        ent = self.m.entries()
        c = self.cols
        return [[_to_fraction(x) for x in ent[i * c : (i + 1) * c]] for i in range(self.rows)]

    def to_object_array(self) -> np.ndarray:
        out = np.empty((self.rows, self.cols), dtype=object)
        ent = self.m.entries()
        for k, x in enumerate(ent):
            out.flat[k] = _to_fraction(x)
        return out

    def select_rows(self, idx: Sequence[int]) -> "RationalMatrix":
        c = self.cols
        ent = self.m.entries()
        flat = [x for i in idx for x in ent[i * c : (i + 1) * c]]
        return RationalMatrix(flint.fmpq_mat(len(idx), c, flat))

    # ----------------------------------------------------------- arithmetic
    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix(self.m * other.m)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix(self.m + other.m)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix(self.m - other.m)

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(-self.m)

    def scale(self, c) -> "RationalMatrix":
        return RationalMatrix(self.m * _to_fmpq(c))

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.shape == other.shape and self.m == other.m

    def __hash__(self):
        return hash((self.shape, tuple(str(x) for x in self.m.entries())))

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols})"

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.m.transpose())

    @property
    def T(self) -> "RationalMatrix":
        return self.transpose()

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.m.entries())

    def trace(self) -> Fraction:
        return sum((self[i, i] for i in range(min(self.shape))), Fraction(0))

    def det(self) -> Fraction:
        return _to_fraction(self.m.det())

    def inv(self) -> "RationalMatrix":
        return RationalMatrix(self.m.inv())

    # --------------------------------------------------------- elimination
    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return self.m.rank()

    def rref(self) -> tuple["RationalMatrix", list[int]]:
        """Reduced row echelon form without zero rows, and pivot columns."""
        if self.rows == 0:
            return self, []
        r, rank = self.m.rref()
        out = RationalMatrix(r).select_rows(range(rank))
        return out, _pivots(out)

    def row_space(self) -> "RationalMatrix":
        return self.rref()[0]

    def nullspace(self) -> "RationalMatrix":
        """Rows spanning ``{x : self @ x = 0}``."""
        if self.rows == 0:
            return RationalMatrix.identity(self.cols)
        den = _common_denominator(self.m.entries())
        z = flint.fmpz_mat(self.rows, self.cols, [int(x * den) for x in self.m.entries()])
        X, nullity = z.nullspace()
        rows = [[X[i, j] for i in range(self.cols)] for j in range(nullity)]
        return RationalMatrix.from_rows(rows, ncols=self.cols) if rows else RationalMatrix.zeros(0, self.cols)

    def left_nullspace(self) -> "RationalMatrix":
        """Rows spanning ``{x : x @ self = 0}``."""
        return self.transpose().nullspace()

    def contains_rows(self, other: "RationalMatrix") -> bool:
        """Whether the row space of ``other`` lies in the row space of ``self``."""
        return RationalMatrix.vstack([self, other], self.cols).rank() == self.rank()


def _common_denominator(entries) -> int:
    den = 1
    for x in entries:
        q = int(x.q)
        if den % q:
            den = math.lcm(den, q)
    return den


def _pivots(m: RationalMatrix) -> list[int]:
    piv = []
    ent = m.m.entries()
    c = m.cols
    for i in range(m.rows):
        for j in range(c):
            if ent[i * c + j] != 0:
                piv.append(j)
                break
    return piv


# ======================================================================
# Fields for the radical / Cartan pipeline.  Matrices are opaque values
# manipulated only through these methods.
# ======================================================================
class RationalField:
    """Exact arithmetic over Q via FLINT."""

    name = "QQ"
    exact = True

    def from_int(self, arr: np.ndarray) -> flint.fmpq_mat:
        arr = np.asarray(arr)
        nr, nc = arr.shape
        return flint.fmpq_mat(nr, nc, [int(x) for x in arr.reshape(-1)])

    def nrows(self, A) -> int:
        return A.nrows()

    def matmul(self, A, B):
        return A * B

    def vstack(self, mats, ncols: int):
        mats = [m for m in mats if m.nrows()]
        if not mats:
            return flint.fmpq_mat(0, ncols)
        flat = [x for m in mats for x in m.entries()]
        return flint.fmpq_mat(sum(m.nrows() for m in mats), ncols, flat)

    def rref(self, A):
        if A.nrows() == 0:
            return A, []
        r, rank = A.rref()
        out = RationalMatrix(r).select_rows(range(rank))
        return out.m, _pivots(out)

    def left_nullspace_int(self, G: np.ndarray):
        """Rows spanning ``{x : x G = 0}`` for an integer matrix ``G``."""
        z = flint.fmpz_mat(G.shape[1], G.shape[0], [int(x) for x in G.T.reshape(-1)])
        X, nullity = z.nullspace()
        n = G.shape[0]
        return flint.fmpq_mat(nullity, n, [X[i, j] for j in range(nullity) for i in range(n)])

    def row_entries(self, A) -> np.ndarray:
        """Entries as an object array (scaled to a common denominator, returned with it)."""
        ent = A.entries()
        den = _common_denominator(ent)
        arr = np.array([int(x * den) for x in ent], dtype=object).reshape(A.nrows(), A.ncols())
        return arr, den

    def right_mult_matrix(self, y_row, table: np.ndarray):
        """Matrix of ``x -> x y`` in the monoid basis, for a row vector ``y``."""
        n = table.shape[0]
        ent = y_row.entries()
        den = _common_denominator(ent)
        y = np.array([int(x * den) for x in ent], dtype=object)
        if max((abs(v) for v in y), default=0) * n < 2**62:
            M = np.zeros((n, n), dtype=np.int64)
            np.add.at(M, (np.repeat(np.arange(n), n), table.reshape(-1)), np.tile(y.astype(np.int64), n))
        else:
            M = np.zeros((n, n), dtype=object)
            for f in range(n):
                for gidx in range(n):
                    M[f, table[f, gidx]] += y[gidx]
        return self.from_int(M)

    def take_rows(self, A, idx: Sequence[int]):
        return RationalMatrix(A).select_rows(idx).m

    def residual(self, R, piv: Sequence[int], Y):
        """``Y`` minus its projection along the RREF basis ``R`` (zero iff inside)."""
        if not piv:
            return Y
        return Y - self.submatrix_cols(Y, piv) * R

    def is_zero(self, A) -> bool:
        return all(x == 0 for x in A.entries())

    def submatrix_cols(self, A, cols: Sequence[int]):
        c = A.ncols()
        ent = A.entries()
        flat = [ent[i * c + j] for i in range(A.nrows()) for j in cols]
        return flint.fmpq_mat(A.nrows(), len(cols), flat)

    def to_fraction_matrix(self, A) -> list[list[Fraction]]:
        return RationalMatrix(A).tolist()

    def inverse(self, A):
        return A.inv()

    def rank(self, A) -> int:
        return 0 if A.nrows() == 0 else A.rank()

    def lift(self, x) -> Fraction:
        return x if isinstance(x, Fraction) else Fraction(x)


class PrimeField:
    """Arithmetic modulo a prime below ``2**31``, on int64 numpy arrays."""

    exact = False

    def __init__(self, p: int):
        if p >= 2**MOD_PRIME_BITS:
            raise ValueError("prime too large for exact float64 products")
        self.p = int(p)
        self.name = f"GF({p})"

    @classmethod
    def random(cls, rng: random.Random) -> "PrimeField":
        while True:
            p = rng.randrange(2**30, 2**31) | 1
            if flint.fmpz(p).is_prime():
                return cls(p)

    def from_int(self, arr: np.ndarray) -> np.ndarray:
        arr = np.asarray(arr)
        if arr.dtype == object:
            return np.array([[int(x) % self.p for x in r] for r in arr], dtype=np.int64).reshape(arr.shape)
        return np.mod(arr.astype(np.int64), self.p)

    def nrows(self, A) -> int:
        return A.shape[0]

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        p = self.p
        if A.shape[1] > MOD_MAX_INNER:
            raise ValueError("inner dimension too large for exact modular product")
        Bf = B.astype(np.float64)
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for k in range(3):
            limb = ((A >> (11 * k)) & 0x7FF).astype(np.float64)
            C = (limb @ Bf).astype(np.int64) % p
            out = (out + C * pow(2, 11 * k, p)) % p
        return out

    def vstack(self, mats, ncols: int) -> np.ndarray:
        mats = [m for m in mats if m.shape[0]]
        if not mats:
            return np.zeros((0, ncols), dtype=np.int64)
        return np.concatenate(mats, axis=0)

    def rref(self, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
        p = self.p
        M = np.mod(A, p).astype(np.int64)
        rows, cols = M.shape
        piv: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(M[r:, c])
            if not len(nz):
                continue
            k = r + int(nz[0])
            if k != r:
                M[[r, k]] = M[[k, r]]
            inv = pow(int(M[r, c]), p - 2, p)
            M[r, c:] = (M[r, c:] * inv) % p
            col = M[:, c].copy()
            col[r] = 0
            others = np.flatnonzero(col)
            if len(others):
                M[np.ix_(others, np.arange(c, cols))] = (
                    M[np.ix_(others, np.arange(c, cols))] - (col[others, None] * M[r, c:][None, :]) % p
                ) % p
            piv.append(c)
            r += 1
        return M[:r], piv

    def left_nullspace_int(self, G: np.ndarray) -> np.ndarray:
        R, piv = self.rref(self.from_int(G.T))
        n = G.shape[0]
        free = [j for j in range(n) if j not in set(piv)]
        out = np.zeros((len(free), n), dtype=np.int64)
        for k, f in enumerate(free):
            out[k, f] = 1
            for i, pc in enumerate(piv):
                out[k, pc] = (-R[i, f]) % self.p
        return out

    def row_entries(self, A: np.ndarray):
        return A, 1

    def right_mult_matrix(self, y_row: np.ndarray, table: np.ndarray) -> np.ndarray:
        n = table.shape[0]
        M = np.zeros((n, n), dtype=np.int64)
        np.add.at(M, (np.repeat(np.arange(n), n), table.reshape(-1)), np.tile(np.asarray(y_row).reshape(-1), n))
        return M % self.p

    def submatrix_cols(self, A: np.ndarray, cols: Sequence[int]) -> np.ndarray:
        return A[:, list(cols)]

    def take_rows(self, A: np.ndarray, idx: Sequence[int]) -> np.ndarray:
        return A[list(idx)]

    def residual(self, R: np.ndarray, piv: Sequence[int], Y: np.ndarray) -> np.ndarray:
        if not len(piv):
            return Y % self.p
        return (Y - self.matmul(Y[:, list(piv)], R)) % self.p

    def is_zero(self, A: np.ndarray) -> bool:
        return not np.any(A % self.p)

    def inverse(self, A: np.ndarray) -> np.ndarray:
        n = A.shape[0]
        R, piv = self.rref(np.concatenate([A % self.p, np.eye(n, dtype=np.int64)], axis=1))
        if piv[:n] != list(range(n)) or len(piv) < n or piv[n - 1] != n - 1:
            raise ZeroDivisionError("singular matrix")
        return R[:n, n:]

    def rank(self, A: np.ndarray) -> int:
        return len(self.rref(A)[1]) if A.shape[0] else 0

    def lift(self, x) -> int:
        """Symmetric lift to an integer in ``(-p/2, p/2]``."""
        x = int(x) % self.p
        return x - self.p if x > self.p // 2 else x
