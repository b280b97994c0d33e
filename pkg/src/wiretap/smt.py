"""One-round symmetric secure message transmission built from an AWTP code.

Each codeword component travels on its own wire.  An adversary controlling
``t`` wires sees and replaces those components, which is exactly a
restricted AWTP channel with S_r = S_w = S and rho = t/N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .awtp import AwtpParams, DecodeOutcome, awtp_decode, awtp_encode, exact, rate
from .channel import ChannelSpec, Read, Write
from .errors import DomainError, InfeasibleParameters, NotRestricted


@dataclass(frozen=True)
class SmtProtocol:
    params: AwtpParams

    @property
    def N(self) -> int:
        return self.params.N

    @property
    def t(self) -> int:
        return self.params.read_budget

    @property
    def alphabet_size(self) -> int:
        return self.params.q ** self.params.u

    def channel(self) -> ChannelSpec:
        return ChannelSpec.from_params(self.params, restricted=True)

    def send(self, m, rnd) -> tuple[tuple[int, ...], ...]:
        """Wire contents for message ``m``: wire i carries component i."""
        return awtp_encode(self.params, m, rnd)

    def receive(self, wires, rnd=None) -> DecodeOutcome:
        return awtp_decode(self.params, wires, rnd)


def smt_from_awtp(p: AwtpParams) -> SmtProtocol:
    if p.rho_r != p.rho_w:
        raise NotRestricted(f"wires need rho_r = rho_w, got {p.rho_r} and {p.rho_w}")
    if not p.report.ok:
        raise InfeasibleParameters("; ".join(p.report.failures))
    return SmtProtocol(p)


def transmission_rate(s: SmtProtocol) -> Fraction:
    """Wire symbols sent per message symbol, N log|V| / log|M|."""
    return 1 / rate(s.params)


def smt_lower_bound(N: int, t: int, eps=0, alphabet_size: int = 2):
    """Lower bound N / (N - 2t + 2t eps (1 + log_|V|(1/eps))) on the transmission rate.

    Exact (a Fraction) when eps = 0, a float otherwise.
    """
    if N < 1 or t < 0:
        raise DomainError("need N >= 1 and t >= 0")
    e = exact(eps)
    if not 0 <= e < 1:
        raise DomainError("eps must lie in [0, 1)")
    if e == 0:
        if N <= 2 * t:
            raise DomainError(f"need N > 2t, got N={N}, t={t}")
        return Fraction(N, N - 2 * t)
    if alphabet_size < 2:
        raise DomainError("alphabet needs at least two symbols")
    denom = N - 2 * t + 2 * t * float(e) * (1 + math.log(1 / float(e), alphabet_size))
    if denom <= 0:
        raise DomainError("bound is undefined for these parameters")
    return N / denom


def wire_replacement(spec: ChannelSpec, rnd):
    """Takes over t random wires and replaces each with a different uniform symbol."""
    budget = spec.touch_budget
    for pos in rnd.sample(range(spec.N), budget):
        old = yield Read(pos)
        if old is None:
            continue
        new = old
        while new == old:
            new = tuple(rnd.randrange(spec.q) for _ in range(spec.u))
        yield Write(pos, tuple((a - b) % spec.q for a, b in zip(new, old)))


def permute(word: Sequence, perm: Sequence[int]) -> tuple:
    """Wire i of the result carries component perm[i]."""
    return tuple(word[j] for j in perm)


def unpermute(word: Sequence, perm: Sequence[int]) -> tuple:
    out = [None] * len(perm)
    for i, j in enumerate(perm):
        out[j] = word[i]
    return tuple(out)


def permutation_invariant(s: SmtProtocol, c, e, perm) -> bool:
    """Corrupting permuted wires then undoing the permutation decodes like the plain run."""
    q = s.params.q
    add = lambda x, y: tuple(tuple((a + b) % q for a, b in zip(u, v)) for u, v in zip(x, y))
    plain = s.receive(add(c, e))
    moved = add(permute(c, perm), permute(e, perm))
    return s.receive(unpermute(moved, perm)) == plain
