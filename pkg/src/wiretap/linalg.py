"""Exact linear algebra over F_q and affine solution spaces.

Matrices are int64 numpy arrays reduced mod q.  Row operations only ever
form single products of reduced entries, which stay below 2**62 for the
supported q < 2**31.  Matrix-vector products go through :func:`matvec`,
which falls back to Python integers when a dot product could overflow.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

_INT64_SAFE = 2**62


def rref(a: np.ndarray, q: int, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a``; pivots searched in the first ``ncols`` columns."""
    m = np.array(a, dtype=np.int64) % q
    rows, cols = m.shape
    limit = cols if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        inv = pow(int(m[r, c]), -1, q)
        m[r] = m[r] * inv % q
        col = m[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r]) % q) % q
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a, q: int) -> int:
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return 0
    return len(rref(a, q)[1])


def kernel_from_rref(r: np.ndarray, pivots: list[int], cols: int, q: int) -> list[list[int]]:
    pivot_set = set(pivots)
    basis = []
    for f in range(cols):
        if f in pivot_set:
            continue
        v = [0] * cols
        v[f] = 1
        for row, pc in enumerate(pivots):
            v[pc] = int(-r[row, f] % q)
        basis.append(v)
    return basis


def nullspace(a: np.ndarray, q: int) -> list[list[int]]:
    """Basis of {x : a x = 0}, one vector per free column in increasing order."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return [[int(i == j) for i in range(cols)] for j in range(cols)]
    r, pivots = rref(a, q)
    return kernel_from_rref(r, pivots, cols, q)


def solve(a, b, q: int) -> tuple[list[int] | None, list[list[int]]]:
    """Solution set of a x = b as (particular, nullspace basis); particular is None if inconsistent."""
    a = np.asarray(a, dtype=np.int64)
    rows, cols = a.shape
    aug = np.concatenate([a % q, (np.asarray(b, dtype=np.int64) % q).reshape(rows, 1)], axis=1)
    r, pivots = rref(aug, q, ncols=cols)
    if rows > len(pivots) and np.any(r[len(pivots):, cols]):
        return None, []
    x = [0] * cols
    for row, pc in enumerate(pivots):
        x[pc] = int(r[row, cols])
    return x, kernel_from_rref(r, pivots, cols, q)


def matvec(a: np.ndarray, x: Sequence[int], q: int) -> list[int]:
    a = np.asarray(a, dtype=np.int64)
    if a.shape[1] * (q - 1) ** 2 < _INT64_SAFE:
        return [int(v) for v in (a @ np.asarray(x, dtype=np.int64)) % q]
    return [sum(int(u) * int(v) for u, v in zip(row, x)) % q for row in a]


def independent_columns(vectors: Sequence[Sequence[int]], q: int) -> list[tuple[int, ...]]:
    """A maximal linearly independent subset of ``vectors``, first occurrences kept."""
    if not vectors:
        return []
    cols = np.array(vectors, dtype=np.int64).T % q
    _, pivots = rref(cols, q)
    return [tuple(int(c) for c in vectors[p]) for p in pivots]


@dataclass(frozen=True)
class AffineSpace:
    """The set {offset + sum_i b_i * basis[i]} over F_q, or the empty set.

    ``basis`` holds the columns of the matrix M; they are kept linearly
    independent so ``dimension`` is exact.
    """

    q: int
    length: int
    basis: tuple[tuple[int, ...], ...]
    offset: tuple[int, ...] | None

    @classmethod
    def build(cls, q: int, offset, basis=(), length: int | None = None) -> "AffineSpace":
        if offset is None:
            return cls(q, length if length is not None else 0, (), None)
        offset = tuple(int(c) % q for c in offset)
        return cls(q, len(offset), tuple(independent_columns(list(basis), q)), offset)

    @classmethod
    def empty(cls, q: int, length: int) -> "AffineSpace":
        return cls(q, length, (), None)

    @property
    def is_empty(self) -> bool:
        return self.offset is None

    @property
    def dimension(self) -> int:
        return -1 if self.is_empty else len(self.basis)

    @property
    def matrix(self) -> list[list[int]]:
        """M as rows (length x dimension)."""
        return [[v[i] for v in self.basis] for i in range(self.length)]

    def point(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        q = self.q
        out = list(self.offset)
        for c, v in zip(coeffs, self.basis):
            if c:
                for i, vi in enumerate(v):
                    out[i] = (out[i] + c * vi) % q
        return tuple(out)

    def points(self) -> Iterator[tuple[int, ...]]:
        if self.is_empty:
            return
        for coeffs in itertools.product(range(self.q), repeat=len(self.basis)):
            yield self.point(coeffs)

    def contains(self, x: Sequence[int]) -> bool:
        if self.is_empty:
            return False
        diff = [(a - b) % self.q for a, b in zip(x, self.offset)]
        if not self.basis:
            return not any(diff)
        m = np.array(self.basis, dtype=np.int64).T
        sol, _ = solve(m, diff, self.q)
        return sol is not None

    def restrict(self, rows: int) -> "AffineSpace":
        """Projection onto the first ``rows`` coordinates."""
        if self.is_empty:
            return AffineSpace.empty(self.q, rows)
        return AffineSpace.build(self.q, self.offset[:rows], [v[:rows] for v in self.basis])
