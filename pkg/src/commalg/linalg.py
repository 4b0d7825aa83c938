"""Exact dense linear algebra over prime fields and the rationals.

Matrices are plain numpy arrays.  Over F_p they have dtype int64 with entries
in ``[0, p)``; over Q they have dtype object and hold ``fractions.Fraction``.
Every function takes the :class:`Field` explicitly so that the arrays stay
ordinary numpy values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """Ground field: ``characteristic == 0`` means Q, otherwise F_p."""

    characteristic: int

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not _is_prime(c):
            raise ValueError(f"field characteristic must be 0 or prime, got {c}")

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    @property
    def order(self) -> Optional[int]:
        return self.characteristic or None

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"F_{self.characteristic}"

    # -- scalars -----------------------------------------------------------
    def scalar(self, x):
        if self.characteristic == 0:
            if isinstance(x, str):
                return Fraction(x)
            return Fraction(x)
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return int(x.numerator * pow(x.denominator, -1, self.characteristic)) % self.characteristic
        return int(x) % self.characteristic

    def inv(self, x):
        if self.characteristic == 0:
            return Fraction(1) / x
        return pow(int(x), -1, self.characteristic)

    def elements(self) -> list:
        if not self.is_finite:
            raise ValueError("cannot list the elements of Q")
        return list(range(self.characteristic))

    # -- arrays ------------------------------------------------------------
    @property
    def dtype(self):
        return object if self.characteristic == 0 else np.int64

    def reduce(self, a: np.ndarray) -> np.ndarray:
        if self.characteristic == 0:
            return a
        return np.mod(a, self.characteristic)

    def array(self, data, shape: Optional[tuple] = None) -> np.ndarray:
        if isinstance(data, np.ndarray) and data.dtype == self.dtype and self.characteristic:
            out = np.mod(data, self.characteristic)
        elif self.characteristic == 0:
            raw = np.array(data, dtype=object)
            out = np.empty(raw.shape, dtype=object)
            for idx, v in np.ndenumerate(raw):
                out[idx] = self.scalar(v)
        else:
            raw = np.array(data, dtype=object)
            out = np.zeros(raw.shape, dtype=np.int64)
            for idx, v in np.ndenumerate(raw):
                out[idx] = self.scalar(v)
        if shape is not None:
            out = out.reshape(shape)
        return out

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self.characteristic == 0:
            out = np.empty((rows, cols), dtype=object)
            out.fill(Fraction(0))
            return out
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = self.scalar(1)
        return out

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        return self.reduce(a @ b)

    def mul(self, *mats: np.ndarray) -> np.ndarray:
        out = mats[0]
        for m in mats[1:]:
            out = self.matmul(out, m)
        return out

    def add(self, a, b):
        return self.reduce(a + b)

    def sub(self, a, b):
        return self.reduce(a - b)

    def neg(self, a):
        return self.reduce(-a)

    def scale(self, c, a):
        return self.reduce(self.scalar(c) * a)

    def hstack(self, mats: Sequence[np.ndarray], rows: int) -> np.ndarray:
        if not mats:
            return self.zeros(rows, 0)
        return np.hstack([m.astype(self.dtype) for m in mats])

    def vstack(self, mats: Sequence[np.ndarray], cols: int) -> np.ndarray:
        if not mats:
            return self.zeros(0, cols)
        return np.vstack([m.astype(self.dtype) for m in mats])

    def block_diag(self, mats: Sequence[np.ndarray]) -> np.ndarray:
        rows = sum(m.shape[0] for m in mats)
        cols = sum(m.shape[1] for m in mats)
        out = self.zeros(rows, cols)
        r = c = 0
        for m in mats:
            out[r:r + m.shape[0], c:c + m.shape[1]] = m
            r += m.shape[0]
            c += m.shape[1]
        return out

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.size == 0 or b.size == 0:
            return self.zeros(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
        return self.reduce(np.kron(a, b))

    def to_list(self, a: np.ndarray) -> list:
        """JSON-friendly nested lists (ints over F_p, "a/b" strings over Q)."""
        if self.characteristic == 0:
            return [[str(x) for x in row] for row in a.tolist()]
        return [[int(x) for x in row] for row in a.tolist()]


def is_zero(a: np.ndarray) -> bool:
    return not np.any(a) if a.size else True


def rref(field: Field, m: np.ndarray):
    """Reduced row echelon form.

    Returns ``(reduced, pivots, rank)``.
    """
    a = m.astype(field.dtype, copy=True) if isinstance(m, np.ndarray) else field.array(m)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        piv = a[r, c]
        if piv != 1:
            a[r] = field.reduce(a[r] * field.inv(piv))
        col = a[:, c].copy()
        col[r] = 0
        others = np.nonzero(col)[0]
        if len(others):
            a[others] = field.reduce(a[others] - np.outer(col[others], a[r]))
        pivots.append(c)
        r += 1
    return a, pivots, len(pivots)


def rank(field: Field, m: np.ndarray) -> int:
    if m.size == 0:
        return 0
    return rref(field, m)[2]


def kernel_basis(field: Field, m: np.ndarray) -> np.ndarray:
    """Columns form a basis of the null space (free variables set to unit vectors)."""
    rows, cols = m.shape
    red, pivots, rk = rref(field, m)
    free = [c for c in range(cols) if c not in set(pivots)]
    out = field.zeros(cols, len(free))
    for j, f in enumerate(free):
        out[f, j] = field.scalar(1)
        for i, p in enumerate(pivots):
            out[p, j] = field.reduce(-red[i, f]) if field.characteristic else -red[i, f]
    return out


def solve(field: Field, m: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
    """One solution x of ``m x = b`` (free variables 0), or None."""
    rows, cols = m.shape
    if b.ndim == 1:
        b = b.reshape(-1, 1)
    if b.shape[0] != rows:
        raise ValueError("right-hand side has the wrong number of rows")
    k = b.shape[1]
    aug = field.hstack([m, b], rows)
    red, pivots, rk = rref(field, aug)
    if any(p >= cols for p in pivots):
        return None
    x = field.zeros(cols, k)
    for i, p in enumerate(pivots):
        x[p] = red[i, cols:]
    return x


def image_basis(field: Field, m: np.ndarray) -> np.ndarray:
    """Pivot columns of ``m``: a basis of its column space made of original columns."""
    _, pivots, _ = rref(field, m)
    return m[:, pivots].astype(field.dtype)


def column_space_basis(field: Field, m: np.ndarray) -> np.ndarray:
    """Canonical basis of the column space (transposed RREF of the transpose)."""
    red, _, rk = rref(field, m.T)
    return red[:rk].T.copy()


def left_kernel(field: Field, m: np.ndarray) -> np.ndarray:
    """Rows spanning ``{y : y m = 0}``; used as cokernel projections."""
    return kernel_basis(field, m.T).T.copy()


def inverse(field: Field, m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    x = solve(field, m, field.eye(n))
    if x is None:
        raise ValueError("matrix is singular")
    return x


def right_inverse(field: Field, m: np.ndarray) -> np.ndarray:
    """x with ``m x = I``; m must have full row rank."""
    x = solve(field, m, field.eye(m.shape[0]))
    if x is None:
        raise ValueError("matrix is not surjective")
    return x


def left_inverse(field: Field, m: np.ndarray) -> np.ndarray:
    """y with ``y m = I``; m must have full column rank."""
    x = solve(field, m.T, field.eye(m.shape[1]))
    if x is None:
        raise ValueError("matrix is not injective")
    return x.T.copy()


def complement_basis(field: Field, sub: np.ndarray, n: int) -> np.ndarray:
    """Standard basis vectors completing the columns of ``sub`` to a basis of k^n."""
    chosen = []
    current = sub
    r = rank(field, current) if current.size else 0
    for i in range(n):
        e = field.zeros(n, 1)
        e[i, 0] = field.scalar(1)
        trial = field.hstack([current, e], n)
        rt = rank(field, trial)
        if rt > r:
            chosen.append(e)
            current = trial
            r = rt
    return field.hstack(chosen, n)


def span_contains(field: Field, basis: np.ndarray, vecs: np.ndarray) -> bool:
    if vecs.size == 0:
        return True
    if basis.size == 0:
        return is_zero(vecs)
    return solve(field, basis, vecs) is not None


def all_vectors(field: Field, n: int) -> Iterable[tuple]:
    """Every vector of F_p^n in lexicographic order."""
    import itertools

    return itertools.product(field.elements(), repeat=n)


def projective_points(field: Field, n: int) -> Iterable[tuple]:
    """One representative per line of F_p^n: the first nonzero coordinate is 1."""
    import itertools

    p = field.characteristic
    for lead in range(n):
        for tail in itertools.product(range(p), repeat=n - lead - 1):
            yield (0,) * lead + (1,) + tail
