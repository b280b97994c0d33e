"""u-folded Reed-Solomon codes and their linear-algebraic list decoder.

Symbol ``j`` of the codeword of ``f`` is ``(f(g^(ju)), ..., f(g^(ju+u-1)))``
for a generator ``g`` of F_q^*.  Decoding interpolates

    Q(X, Y_1..Y_v) = A_0(X) + A_1(X) Y_1 + ... + A_v(X) Y_v

through every length-``v`` window of every received symbol and then
solves the lower-triangular system expressing that the low coefficients
of ``Q(X, f(X), f(gX), ..., f(g^(v-1) X))`` vanish.  The solutions form an
affine space of dimension at most ``v - 1`` containing every message whose
codeword agrees with the received word on at least
:func:`frs_agreement_threshold` symbols.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import InfeasibleParameters, InterpolationFailed, TooLarge, WrongLength
from .fields import PrimeField
from .linalg import AffineSpace, matvec, nullspace, solve

Symbols = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class FrsParams:
    field: PrimeField
    u: int
    N: int
    k: int
    gamma: int
    v: int = 1

    def __post_init__(self):
        q = self.field.q
        if q <= self.N * self.u:
            raise InfeasibleParameters(f"need q > N*u, got q={q}, N*u={self.N * self.u}")
        if not 1 <= self.v <= self.u:
            raise InfeasibleParameters(f"need 1 <= v <= u, got v={self.v}, u={self.u}")
        if not 1 <= self.k <= self.u * self.N:
            raise InfeasibleParameters(f"need 1 <= k <= u*N, got k={self.k}")

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k, self.u * self.N)

    @cached_property
    def points(self) -> tuple[int, ...]:
        """Evaluation points g^0 .. g^(uN-1)."""
        q, g = self.q, self.gamma
        return tuple(pow(g, i, q) for i in range(self.u * self.N))

    @cached_property
    def vandermonde(self) -> np.ndarray:
        q = self.q
        return np.array([[pow(a, j, q) for j in range(self.k)] for a in self.points], dtype=np.int64)

    @property
    def n0(self) -> int:
        return (self.u - self.v + 1) * self.N

    @property
    def interpolation_degree(self) -> int:
        return (self.n0 - self.k + 1) // (self.v + 1)

    @cached_property
    def _window_points(self) -> tuple[int, ...]:
        u, v = self.u, self.v
        return tuple(self.points[j * u + s] for j in range(self.N) for s in range(u - v + 1))

    @cached_property
    def _window_powers(self) -> np.ndarray:
        q, D = self.q, self.interpolation_degree
        return np.array(
            [[pow(a, j, q) for j in range(D + self.k)] for a in self._window_points], dtype=np.int64
        )


def frs_encode(p: FrsParams, coeffs: Sequence[int]) -> Symbols:
    if len(coeffs) != p.k:
        raise WrongLength(f"expected {p.k} coefficients, got {len(coeffs)}")
    flat = matvec(p.vandermonde, [int(c) % p.q for c in coeffs], p.q)
    u = p.u
    return tuple(tuple(flat[j * u:(j + 1) * u]) for j in range(p.N))


def check_word(p: FrsParams, y: Sequence[Sequence[int]]) -> Symbols:
    if len(y) != p.N or any(len(sym) != p.u for sym in y):
        raise WrongLength(f"received word must be {p.N} symbols of {p.u} elements")
    return tuple(tuple(int(c) % p.q for c in sym) for sym in y)


def symbol_distance(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> int:
    return sum(tuple(x) != tuple(y) for x, y in zip(a, b))


def frs_agreement_bound(p: FrsParams) -> Fraction:
    """N * (1/(v+1) + v/(v+1) * uR/(u-v+1)) with R = k/(uN), exactly."""
    u, v, N = p.u, p.v, p.N
    uR = Fraction(p.k, N)
    return N * (Fraction(1, v + 1) + Fraction(v, v + 1) * uR / (u - v + 1))


def frs_agreement_threshold(p: FrsParams) -> int:
    """Smallest agreement strictly above :func:`frs_agreement_bound`."""
    bound = frs_agreement_bound(p)
    return bound.numerator // bound.denominator + 1


@dataclass(frozen=True)
class Interpolant:
    """Coefficient lists of A_0 .. A_v, lowest degree first."""

    a0: tuple[int, ...]
    a: tuple[tuple[int, ...], ...]

    def evaluate(self, x: int, ys: Sequence[int], q: int) -> int:
        total = _horner(self.a0, x, q)
        for coeffs, y in zip(self.a, ys):
            total += _horner(coeffs, x, q) * y
        return total % q


def _horner(coeffs, x, q):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % q
    return acc


def interpolate(p: FrsParams, y: Sequence[Sequence[int]]) -> Interpolant:
    y = check_word(p, y)
    q, u, v, D, k = p.q, p.u, p.v, p.interpolation_degree, p.k
    if D < 0:
        raise InterpolationFailed(f"k = {k} too large for {p.n0} window constraints")
    powers = p._window_powers
    windows = np.array(
        [sym[s:s + v] for sym in y for s in range(u - v + 1)], dtype=np.int64
    )
    blocks = [powers]
    for i in range(v):
        blocks.append(windows[:, i:i + 1] * powers[:, :D + 1] % q)
    system = np.concatenate(blocks, axis=1)
    kernel = nullspace(system, q)
    if not kernel:
        raise InterpolationFailed("only the zero polynomial fits the received word")
    sol = kernel[0]
    a0 = tuple(sol[:D + k])
    rest = sol[D + k:]
    a = tuple(tuple(rest[i * (D + 1):(i + 1) * (D + 1)]) for i in range(v))
    return Interpolant(a0, a)


def message_system(p: FrsParams, Q: Interpolant) -> tuple[np.ndarray, list[int]]:
    """The triangular system T f = -a_0 for the coefficients of f.

    Row ``l`` states that the X^l coefficient of Q(X, f(X), .., f(g^(v-1)X))
    vanishes; entry (l, m) is B_(l-m)(g^m) with B_j(X) = sum_i a_(i,j) X^(i-1).
    When every A_i (i >= 1) is divisible by X^s the rows are taken for
    l = 0 .. s+k-1 so the diagonal B_s stays nonzero; the first s rows then
    only test a_(0,l) = 0.
    """
    q, v, k = p.q, p.v, p.k
    D = len(Q.a[0]) - 1
    shift = min(next((j for j, c in enumerate(ai) if c), D + 1) for ai in Q.a)
    if shift > D:
        raise InterpolationFailed("interpolant has no Y terms")
    g = p.gamma
    # bvals[j][m] = B_j(g^m)
    bvals = [
        [sum(Q.a[i][j] * pow(g, i * m, q) for i in range(v)) % q for m in range(k)]
        for j in range(D + 1)
    ]
    rows = shift + k
    T = np.zeros((rows, k), dtype=np.int64)
    for l in range(rows):
        for m in range(min(l, k - 1) + 1):
            j = l - m
            if j <= D:
                T[l, m] = bvals[j][m]
    a0 = list(Q.a0) + [0] * max(0, rows - len(Q.a0))
    rhs = [-a0[l] % q for l in range(rows)]
    return T, rhs


def frs_list_decode(p: FrsParams, y: Sequence[Sequence[int]]) -> AffineSpace:
    Q = interpolate(p, y)
    T, rhs = message_system(p, Q)
    particular, basis = solve(T, rhs, p.q)
    if particular is None:
        return AffineSpace.empty(p.q, p.k)
    return AffineSpace.build(p.q, particular, basis)


def list_within(p: FrsParams, space: AffineSpace, y, radius: int) -> list[tuple[int, ...]]:
    """Members of ``space`` whose codewords are within ``radius`` symbols of ``y``."""
    y = check_word(p, y)
    return sorted(f for f in space.points() if symbol_distance(frs_encode(p, f), y) <= radius)


BRUTE_FORCE_LIMIT = 10**6


def brute_force_list(p: FrsParams, y, radius: int) -> list[tuple[int, ...]]:
    """Every message within ``radius`` symbol errors of ``y``, by enumeration."""
    q, k = p.q, p.k
    if q**k > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"q^k = {q**k} exceeds {BRUTE_FORCE_LIMIT}")
    y = np.array(check_word(p, y), dtype=np.int64)
    msgs = np.array(list(itertools.product(range(q), repeat=k)), dtype=np.int64)
    words = (msgs @ p.vandermonde.T) % q
    words = words.reshape(len(msgs), p.N, p.u)
    dist = np.any(words != y[None, :, :], axis=2).sum(axis=1)
    return sorted(tuple(int(c) for c in row) for row in msgs[dist <= radius])
