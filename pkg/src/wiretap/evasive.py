"""Subspace-evasive sets built from a strongly regular system of power sums.

The set ``S`` is the ``b``-fold product of the affine variety

    V = { x in F_q^w : sum_j A[i][j] * x_j^(d_j) = 0  for i = 1..v }

with ``w = v*v``.  Points of ``S`` are plain tuples of ints of length
``n = w*b``.  The first ``v`` degrees are coprime to ``q - 1`` which makes
the encoding map a cheap bijection from F_q^(n1), ``n1 = (w - v)*b``: the
other ``w - v`` coordinates of each block are copied and the first ``v``
are recovered through one linear solve and ``v`` root extractions.

The list-size bound of the construction, ``v^(D*v*log log v)``, carries an
unspecified constant ``D``; :func:`measure_list_size` reports the observed
maximum instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

import numpy as np

from .errors import DimensionTooLarge, InfeasibleParameters, NotMember, WrongLength
from .fields import PrimeField, dth_root
from .linalg import AffineSpace, kernel_from_rref, rank, rref, solve

__all__ = [
    "AffineSpace",
    "EvasiveSystem",
    "build_evasive_system",
    "is_strongly_regular",
    "measure_list_size",
    "se_decode",
    "se_encode",
    "se_intersect",
    "se_member",
]


@dataclass(frozen=True)
class EvasiveSystem:
    field: PrimeField
    v: int
    w: int
    b: int
    A: tuple[tuple[int, ...], ...]
    degrees: tuple[int, ...]
    J: tuple[int, ...]
    _free: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _solver: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        q = self.field.q
        free = tuple(j for j in range(self.w) if j not in self.J)
        a_j = [[self.A[i][j] for j in self.J] for i in range(self.v)]
        inv_cols = []
        for k in range(self.v):
            e = [int(i == k) for i in range(self.v)]
            col, _ = solve(a_j, e, q)
            if col is None:
                raise InfeasibleParameters("restriction of A to J is singular")
            inv_cols.append(col)
        solver = tuple(tuple(inv_cols[k][i] for k in range(self.v)) for i in range(self.v))
        object.__setattr__(self, "_free", free)
        object.__setattr__(self, "_solver", solver)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        return self.w * self.b

    @property
    def n1(self) -> int:
        return (self.w - self.v) * self.b

    def forms(self, block: Sequence[int]) -> list[int]:
        """Values f_1..f_v of one length-w block."""
        q = self.q
        powers = [pow(x, d, q) for x, d in zip(block, self.degrees)]
        return [sum(a * p for a, p in zip(row, powers)) % q for row in self.A]

    def block_member(self, block: Sequence[int]) -> bool:
        return not any(self.forms(block))


def cauchy_matrix(F: PrimeField, xs: Sequence[int], ys: Sequence[int]) -> list[list[int]]:
    q = F.q
    return [[pow((x + y) % q, -1, q) for y in ys] for x in xs]


def is_strongly_regular(A: Sequence[Sequence[int]], q: int) -> bool:
    """Every r x r minor nonsingular for r = 1..rows, checked exhaustively."""
    rows, cols = len(A), len(A[0])
    m = np.array(A, dtype=np.int64)
    for r in range(1, rows + 1):
        for ri in itertools.combinations(range(rows), r):
            for ci in itertools.combinations(range(cols), r):
                if rank(m[np.ix_(ri, ci)], q) != r:
                    return False
    return True


def _degrees(q: int, v: int, w: int) -> tuple[int, ...]:
    rest = list(range(w - v + 1, 1, -1))
    coprime = []
    c = w - v + 2
    while len(coprime) < v and c <= q - 2:
        if gcd(c, q - 1) == 1:
            coprime.append(c)
        c += 1
    if len(coprime) < v:
        raise InfeasibleParameters(
            f"F_{q} has fewer than {v} usable exponents coprime to {q - 1} above {w - v + 1}"
        )
    return tuple(sorted(coprime, reverse=True)) + tuple(rest)


def build_evasive_system(F: PrimeField, v: int, b: int) -> EvasiveSystem:
    w = v * v
    if v < 1 or w - v < 1:
        raise InfeasibleParameters(f"w = v^2 = {w} leaves no identity coordinates for v = {v}")
    if b < 1:
        raise InfeasibleParameters("need at least one block")
    q = F.q
    degrees = _degrees(q, v, w)
    xs = list(range(1, v + 1))
    for shift in range(q):
        ys = [v + shift + j for j in range(1, w + 1)]
        residues = {x % q for x in xs} | {y % q for y in ys}
        if len(residues) == v + w and all((x + y) % q for x in xs for y in ys):
            break
    else:
        raise InfeasibleParameters(f"no Cauchy parameters fit in F_{q}")
    A = cauchy_matrix(F, xs, ys)
    if not is_strongly_regular(A, q):
        raise InfeasibleParameters("Cauchy matrix failed the strong-regularity check")
    return EvasiveSystem(F, v, w, b, tuple(map(tuple, A)), degrees, tuple(range(v)))


def se_encode(sys: EvasiveSystem, vec: Sequence[int]) -> tuple[int, ...]:
    if len(vec) != sys.n1:
        raise WrongLength(f"expected {sys.n1} symbols, got {len(vec)}")
    q, v, w = sys.q, sys.v, sys.w
    out: list[int] = []
    step = w - v
    for t in range(sys.b):
        chunk = [int(c) % q for c in vec[t * step:(t + 1) * step]]
        block = [0] * w
        for j, x in zip(sys._free, chunk):
            block[j] = x
        rhs = [
            -sum(sys.A[i][j] * pow(block[j], sys.degrees[j], q) for j in sys._free) % q
            for i in range(v)
        ]
        for i, j in enumerate(sys.J):
            y = sum(s * r for s, r in zip(sys._solver[i], rhs)) % q
            block[j] = dth_root(sys.field, y, sys.degrees[j])
        out.extend(block)
    return tuple(out)


def se_member(sys: EvasiveSystem, p: Sequence[int]) -> bool:
    if len(p) != sys.n:
        raise WrongLength(f"expected {sys.n} coordinates, got {len(p)}")
    w = sys.w
    return all(sys.block_member(p[t * w:(t + 1) * w]) for t in range(sys.b))


def se_decode(sys: EvasiveSystem, p: Sequence[int]) -> tuple[int, ...]:
    if not se_member(sys, p):
        raise NotMember("point is not in the evasive set")
    w = sys.w
    return tuple(p[t * w + j] for t in range(sys.b) for j in sys._free)


def se_intersect(sys: EvasiveSystem, H: AffineSpace) -> list[tuple[int, ...]]:
    """All points of S inside the affine space H, block by block.

    For each block the projection of the current affine piece is
    enumerated (at most q^r points for a rank-r projection), members of V
    are kept, and the piece is cut down to the preimage of each survivor.
    """
    if H.length != sys.n:
        raise WrongLength(f"affine space lives in F_q^{H.length}, expected {sys.n}")
    if H.dimension > sys.v:
        raise DimensionTooLarge(f"dimension {H.dimension} exceeds v = {sys.v}")
    if H.is_empty:
        return []
    q, w = sys.q, sys.w
    found: set[tuple[int, ...]] = set()

    def descend(t: int, basis: list[list[int]], offset: list[int]) -> None:
        if t == sys.b:
            found.add(tuple(offset))
            return
        lo, hi = t * w, (t + 1) * w
        const = offset[lo:hi]
        if not basis:
            if sys.block_member(const):
                descend(t + 1, basis, offset)
            return
        g = np.array([vec[lo:hi] for vec in basis], dtype=np.int64).T % q
        r, pivots = rref(g, q)
        dim = len(basis)
        kernel = kernel_from_rref(r, pivots, dim, q)
        new_basis = [_combine(basis, kv, q) for kv in kernel]
        image = [[int(g[i, c]) for i in range(w)] for c in pivots]
        for e in itertools.product(range(q), repeat=len(pivots)):
            block = list(const)
            for coeff, col in zip(e, image):
                if coeff:
                    block = [(x + coeff * y) % q for x, y in zip(block, col)]
            if not sys.block_member(block):
                continue
            coeffs = [0] * dim
            for coeff, c in zip(e, pivots):
                coeffs[c] = coeff
            shift = _combine(basis, coeffs, q)
            descend(t + 1, new_basis, [(x + y) % q for x, y in zip(offset, shift)])

    descend(0, [list(v) for v in H.basis], list(H.offset))
    return sorted(found)


def _combine(basis: list[list[int]], coeffs: Sequence[int], q: int) -> list[int]:
    out = [0] * len(basis[0])
    for c, vec in zip(coeffs, basis):
        if c:
            out = [(x + c * y) % q for x, y in zip(out, vec)]
    return out


def random_point(sys: EvasiveSystem, rnd) -> tuple[int, ...]:
    return se_encode(sys, [rnd.randrange(sys.q) for _ in range(sys.n1)])


def measure_list_size(sys: EvasiveSystem, trials: int, rnd, dim: int | None = None) -> int:
    """Largest |S ∩ H| seen over random ``dim``-dimensional H through points of S."""
    dim = sys.v if dim is None else dim
    best = 0
    for _ in range(trials):
        anchor = random_point(sys, rnd)
        basis = [[rnd.randrange(sys.q) for _ in range(sys.n)] for _ in range(dim)]
        H = AffineSpace.build(sys.q, anchor, basis)
        best = max(best, len(se_intersect(sys, H)))
    return best
