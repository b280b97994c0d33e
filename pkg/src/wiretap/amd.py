"""Systematic algebraic manipulation detection (AMD) code.

A message of ``d`` blocks over F_{q^mu} is tagged as ``(x, r, t)`` with
``r`` uniform and ``t = r^(d+2) + sum_i x_i r^i``.  An additive tamper
that is fixed independently of ``r`` survives verification with
probability at most ``(d+1)/q^mu``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InfeasibleParameters, WrongLength
from .fields import ExtField


@dataclass(frozen=True)
class AmdParams:
    d: int
    field: ExtField

    def __post_init__(self):
        if self.d < 1:
            raise InfeasibleParameters("AMD code needs d >= 1")
        if (self.d + 2) % self.field.q == 0:
            raise InfeasibleParameters(f"d + 2 = {self.d + 2} is divisible by q = {self.field.q}")


@dataclass(frozen=True)
class AmdCodeword:
    x: tuple
    r: tuple
    t: tuple

    def flatten(self) -> list[int]:
        """Concatenated coordinates over F_q: x_1 .. x_d, r, t."""
        out: list[int] = []
        for block in (*self.x, self.r, self.t):
            out.extend(block)
        return out

    @classmethod
    def unflatten(cls, p: AmdParams, coords: Sequence[int]) -> "AmdCodeword":
        mu = p.field.mu
        if len(coords) != (p.d + 2) * mu:
            raise WrongLength(f"expected {(p.d + 2) * mu} coordinates, got {len(coords)}")
        blocks = [p.field.from_vector(coords[i * mu:(i + 1) * mu]) for i in range(p.d + 2)]
        return cls(tuple(blocks[:-2]), blocks[-2], blocks[-1])


class Reject:
    """Verification failure marker; falsy so ``if amd_verify(...)`` reads naturally."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        return False

    def __repr__(self):
        return "Reject"


REJECT = Reject()


def tag(p: AmdParams, x: Sequence[tuple], r: tuple) -> tuple:
    """t = r^(d+2) + sum_{i=1..d} x_i r^i, evaluated by Horner's rule in r."""
    F = p.field
    # t = r * (r^(d+1) + 0 * r^d + x_d r^(d-1) + ... + x_1)
    acc = r
    for xi in reversed(x):
        acc = F.add(F.mul(acc, r), xi)
    return F.mul(acc, r)


def amd_encode(p: AmdParams, x: Sequence, rnd) -> AmdCodeword:
    if len(x) != p.d:
        raise WrongLength(f"expected {p.d} message blocks, got {len(x)}")
    F = p.field
    blocks = tuple(F.coerce(xi) for xi in x)
    r = F.random(rnd)
    return AmdCodeword(blocks, r, tag(p, blocks, r))


def amd_verify(p: AmdParams, c: AmdCodeword):
    """Return the message blocks if the tag checks, else :data:`REJECT`."""
    if len(c.x) != p.d:
        return REJECT
    if tag(p, c.x, c.r) != tuple(c.t):
        return REJECT
    return tuple(c.x)


def amd_failure_bound(p: AmdParams) -> Fraction:
    return Fraction(p.d + 1, p.field.order)
