"""Prime fields F_q and their extensions F_{q^mu}.

Elements are handled as canonical representatives: an ``int`` in ``[0, q)``
for a prime field and a length-``mu`` coefficient tuple (lowest degree
first) for an extension field.  The hot paths of the codecs work on these
raw representatives; :class:`FieldElement` wraps one with operator syntax
for callers who prefer it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Any, Iterator, Sequence

from sympy import isprime, primefactors

from .errors import ExponentNotCoprime, NotPrime


@dataclass(frozen=True)
class FieldElement:
    field: Any
    value: Any

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise TypeError("elements belong to different fields")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._coerce(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self.field.inv(self._coerce(other))))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __int__(self):
        if isinstance(self.value, tuple):
            raise TypeError("extension-field element has no integer value")
        return self.value

    def __repr__(self):
        return f"{self.value}"


class PrimeField:
    """The field F_q of integers modulo a prime q."""

    def __init__(self, q: int):
        if q < 2 or not isprime(q):
            raise NotPrime(f"{q} is not prime")
        self.q = q
        self.order = q
        self.zero = 0
        self.one = 1 % q

    def __repr__(self):
        return f"PrimeField({self.q})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self):
        return hash(("F", self.q))

    def __call__(self, value) -> FieldElement:
        return FieldElement(self, self.coerce(value))

    def coerce(self, value) -> int:
        if isinstance(value, FieldElement):
            value = value.value
        if not isinstance(value, int):
            raise TypeError(f"cannot coerce {value!r} into F_{self.q}")
        return value % self.q

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def neg(self, a: int) -> int:
        return -a % self.q

    def mul(self, a: int, b: int) -> int:
        return a * b % self.q

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.q)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(a), -e, self.q)
        return pow(a, e, self.q)

    def elements(self) -> Iterator[int]:
        return iter(range(self.q))

    def random(self, rnd) -> int:
        return rnd.randrange(self.q)


@lru_cache(maxsize=None)
def make_prime_field(q: int) -> PrimeField:
    return PrimeField(q)


def find_generator(F: PrimeField) -> FieldElement:
    """Smallest element of multiplicative order q - 1."""
    q = F.q
    if q == 2:
        return F(1)
    factors = primefactors(q - 1)
    for g in range(2, q):
        if all(pow(g, (q - 1) // p, q) != 1 for p in factors):
            return F(g)
    raise AssertionError("prime field without a generator")  # unreachable


# -- polynomials over F_q as coefficient lists, lowest degree first ---------


def poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_eval(coeffs: Sequence[int], x: int, q: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % q
    return acc


def poly_mod(a: list[int], m: Sequence[int], q: int) -> list[int]:
    a = poly_trim([c % q for c in a])
    dm = len(m) - 1
    lead_inv = pow(m[-1], -1, q)
    while len(a) - 1 >= dm:
        coef = a[-1] * lead_inv % q
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mc) % q
        poly_trim(a)
    return a


def poly_mul(a: Sequence[int], b: Sequence[int], q: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % q
    return poly_trim(out)


def poly_mulmod(a, b, m, q) -> list[int]:
    return poly_mod(poly_mul(a, b, q), m, q)


def poly_gcd(a: Sequence[int], b: Sequence[int], q: int) -> list[int]:
    a = poly_trim([c % q for c in a])
    b = poly_trim([c % q for c in b])
    while b:
        a, b = b, poly_mod(a, b, q)
    if a:
        inv = pow(a[-1], -1, q)
        a = [c * inv % q for c in a]
    return a


def is_irreducible(m: Sequence[int], q: int) -> bool:
    """Ben-Or test: no factor of degree i <= deg/2 divides X^(q^i) - X."""
    deg = len(m) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    h = [0, 1]
    for _ in range(deg // 2):
        # h <- h^q mod m, i.e. X^(q^i)
        h = _poly_powmod(h, q, m, q)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % q
        if len(poly_gcd(m, diff, q)) > 1:
            return False
    return True


def _poly_powmod(a, e, m, q):
    result, base = [1], poly_mod(list(a), m, q)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, m, q)
        base = poly_mulmod(base, base, m, q)
        e >>= 1
    return result


class ExtField:
    """F_{q^mu} realised as F_q[X] / (modulus).

    The coefficient tuple of an element is its vector over F_q, so the
    vector/element bijection is the identity on representatives.
    """

    def __init__(self, base: PrimeField, mu: int, modulus: Sequence[int]):
        if len(modulus) != mu + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree mu")
        if not is_irreducible(modulus, base.q):
            raise ValueError(f"modulus {modulus} is reducible over F_{base.q}")
        self.base = base
        self.q = base.q
        self.mu = mu
        self.modulus = tuple(modulus)
        self.order = base.q**mu
        self.zero = (0,) * mu
        self.one = (1,) + (0,) * (mu - 1)

    def __repr__(self):
        return f"ExtField({self.q}^{self.mu}, modulus={self.modulus})"

    def __eq__(self, other):
        return isinstance(other, ExtField) and (self.q, self.modulus) == (other.q, other.modulus)

    def __hash__(self):
        return hash(("E", self.q, self.modulus))

    def __call__(self, value) -> FieldElement:
        return FieldElement(self, self.coerce(value))

    def coerce(self, value) -> tuple:
        if isinstance(value, FieldElement):
            value = value.value
        if isinstance(value, int):
            return ((value % self.q),) + (0,) * (self.mu - 1)
        return self.from_vector(value)

    def from_vector(self, vec: Sequence[int]) -> tuple:
        if len(vec) != self.mu:
            raise ValueError(f"expected {self.mu} coordinates, got {len(vec)}")
        return tuple(int(c) % self.q for c in vec)

    @staticmethod
    def to_vector(a: tuple) -> tuple:
        return tuple(a)

    def _pad(self, coeffs: list[int]) -> tuple:
        return tuple(coeffs) + (0,) * (self.mu - len(coeffs))

    def add(self, a, b):
        q = self.q
        return tuple((x + y) % q for x, y in zip(a, b))

    def sub(self, a, b):
        q = self.q
        return tuple((x - y) % q for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % self.q for x in a)

    def mul(self, a, b):
        if self.mu == 1:
            return (a[0] * b[0] % self.q,)
        return self._pad(poly_mulmod(list(a), list(b), self.modulus, self.q))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(a, self.order - 2)

    def elements(self) -> Iterator[tuple]:
        for digits in itertools.product(range(self.q), repeat=self.mu):
            yield tuple(reversed(digits))

    def random(self, rnd) -> tuple:
        return tuple(rnd.randrange(self.q) for _ in range(self.mu))


@lru_cache(maxsize=None)
def _first_irreducible(q: int, mu: int) -> tuple:
    # monic candidates in lexicographic order of (c_{mu-1}, ..., c_0)
    for digits in itertools.product(range(q), repeat=mu):
        m = list(reversed(digits)) + [1]
        if is_irreducible(m, q):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")  # unreachable


@lru_cache(maxsize=None)
def make_extension_field(F: PrimeField, mu: int) -> ExtField:
    if mu < 1:
        raise ValueError("extension degree must be >= 1")
    return ExtField(F, mu, _first_irreducible(F.q, mu))


def dth_root(F, y, d: int):
    """Unique x with x^d = y, for d coprime to |F| - 1."""
    group = F.order - 1
    if gcd(d, group) != 1:
        raise ExponentNotCoprime(f"gcd({d}, {group}) != 1")
    wrapped = isinstance(y, FieldElement)
    raw = y.value if wrapped else y
    if raw == F.zero:
        x = F.zero
    else:
        x = F.pow(raw, pow(d, -1, group) if group > 1 else 1)
    return FieldElement(F, x) if wrapped else x
