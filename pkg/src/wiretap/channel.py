"""The (rho_r, rho_w) adversarial wiretap channel and its auditors.

An adversary strategy is a callable ``strategy(spec, rnd)`` returning a
generator.  The generator yields :class:`Read` and :class:`Write` requests
one at a time and receives the channel's answer through ``send``: the read
symbol (or ``None`` when refused) for a read, ``True``/``False`` for a
write.  Returning from the generator ends the transmission.  Budgets are
enforced by :func:`transmit`, never trusted to the strategy.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .awtp import AwtpParams, Message, awtp_decode, awtp_encode, exact
from .errors import InfeasibleParameters, InvalidSets, TooLarge
from .frs import frs_encode

Word = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ChannelSpec:
    N: int
    u: int
    q: int
    rho_r: Fraction
    rho_w: Fraction
    restricted: bool = False

    def __post_init__(self):
        object.__setattr__(self, "rho_r", exact(self.rho_r))
        object.__setattr__(self, "rho_w", exact(self.rho_w))
        for rho in (self.rho_r, self.rho_w):
            x = rho * self.N
            if x.denominator != 1 or not 0 <= x <= self.N:
                raise InfeasibleParameters(f"rho*N = {x} must be an integer in [0, N]")

    @classmethod
    def from_params(cls, p: AwtpParams, restricted: bool = False) -> "ChannelSpec":
        return cls(p.N, p.u, p.q, p.rho_r, p.rho_w, restricted)

    @property
    def read_budget(self) -> int:
        return int(self.rho_r * self.N)

    @property
    def write_budget(self) -> int:
        return int(self.rho_w * self.N)

    @property
    def touch_budget(self) -> int:
        """Size limit of S = S_r = S_w on a restricted channel."""
        return min(self.read_budget, self.write_budget)


@dataclass(frozen=True)
class Read:
    pos: int


@dataclass(frozen=True)
class Write:
    pos: int
    delta: tuple[int, ...]


@dataclass(frozen=True)
class Action:
    op: str
    pos: int
    value: tuple[int, ...] | None
    granted: bool


@dataclass
class Transcript:
    seed: int
    actions: list[Action] = field(default_factory=list)
    read_set: tuple[int, ...] = ()
    write_set: tuple[int, ...] = ()
    error: Word = ()
    y: Word = ()

    @property
    def view(self) -> list[tuple[int, tuple[int, ...]]]:
        return [(a.pos, a.value) for a in self.actions if a.op == "read" and a.granted]

    @property
    def refused(self) -> list[Action]:
        return [a for a in self.actions if not a.granted]

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, sym in enumerate(self.error) if any(sym))

    def records(self) -> list[dict]:
        head = {
            "record": "transcript",
            "seed": self.seed,
            "read_set": list(self.read_set),
            "write_set": list(self.write_set),
            "error": [list(s) for s in self.error],
            "y": [list(s) for s in self.y],
        }
        acts = [
            {
                "record": "action",
                "index": i,
                "op": a.op,
                "pos": a.pos,
                "value": None if a.value is None else list(a.value),
                "granted": a.granted,
            }
            for i, a in enumerate(self.actions)
        ]
        return [head] + acts

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.records())


Strategy = Callable[[ChannelSpec, random.Random], Iterable]

MAX_REQUESTS = 100_000


def transmit(c: Sequence[Sequence[int]], spec: ChannelSpec, strategy: Strategy, seed: int = 0):
    """Run ``strategy`` against codeword ``c``; returns ``(y, transcript)``."""
    q, u, N = spec.q, spec.u, spec.N
    c = tuple(tuple(int(x) % q for x in sym) for sym in c)
    if len(c) != N or any(len(sym) != u for sym in c):
        raise ValueError(f"codeword must be {N} symbols of {u} elements")
    rnd = random.Random(seed)
    tr = Transcript(seed)
    error = [[0] * u for _ in range(N)]
    reads: set[int] = set()
    writes: set[int] = set()
    touched: set[int] = set()

    def admit(pos: int, own: set[int], budget: int) -> bool:
        if not 0 <= pos < N:
            return False
        if spec.restricted:
            if pos in touched or len(touched) < spec.touch_budget:
                touched.add(pos)
                return True
            return False
        if pos in own or len(own) < budget:
            own.add(pos)
            return True
        return False

    gen = iter(strategy(spec, rnd))
    answer = None
    for step in range(MAX_REQUESTS):
        try:
            req = gen.send(answer) if step else next(gen)
        except StopIteration:
            break
        if isinstance(req, Read):
            ok = admit(req.pos, reads, spec.read_budget)
            answer = c[req.pos] if ok else None
            tr.actions.append(Action("read", req.pos, answer, ok))
        elif isinstance(req, Write):
            delta = tuple(int(x) % q for x in req.delta)
            ok = len(delta) == u and admit(req.pos, writes, spec.write_budget)
            if ok:
                error[req.pos] = [(a + b) % q for a, b in zip(error[req.pos], delta)]
            tr.actions.append(Action("write", req.pos, delta, ok))
            answer = ok
        else:
            raise TypeError(f"unknown request {req!r}")
    if spec.restricted:
        reads = writes = touched
    tr.read_set = tuple(sorted(reads))
    tr.write_set = tuple(sorted(writes))
    tr.error = tuple(tuple(sym) for sym in error)
    tr.y = tuple(tuple((a + b) % q for a, b in zip(cs, es)) for cs, es in zip(c, error))
    return tr.y, tr


# -- strategies -----------------------------------------------------------------


def null_strategy(spec: ChannelSpec, rnd):
    return
    yield  # pragma: no cover


def _nonzero_symbol(spec: ChannelSpec, rnd) -> tuple[int, ...]:
    while True:
        sym = tuple(rnd.randrange(spec.q) for _ in range(spec.u))
        if any(sym):
            return sym


def random_writer(spec: ChannelSpec, rnd):
    """Writes a nonzero uniform symbol on exactly rho_w*N random positions."""
    budget = spec.touch_budget if spec.restricted else spec.write_budget
    for pos in rnd.sample(range(spec.N), budget):
        yield Write(pos, _nonzero_symbol(spec, rnd))


def overreaching_writer(spec: ChannelSpec, rnd):
    """Tries one write more than the budget allows."""
    budget = spec.touch_budget if spec.restricted else spec.write_budget
    for pos in rnd.sample(range(spec.N), min(spec.N, budget + 1)):
        yield Write(pos, _nonzero_symbol(spec, rnd))


def echo_strategy(spec: ChannelSpec, rnd):
    """Reads position 0 and writes that symbol onto position 1."""
    seen = yield Read(0)
    if seen is not None:
        yield Write(1 % spec.N, tuple(seen))


def two_pair_strategy(spec: ChannelSpec, pair1, pair2) -> Strategy:
    """Pick one of two (read set, write set) pairs with probability 1/2.

    The chosen read set is read in full and a uniform error over the
    alphabet is added on the chosen write set.  Requires S_r^1 and S_w^2 to
    be disjoint and every set to have exactly the budgeted size.
    """
    pairs = [(tuple(sorted(set(r))), tuple(sorted(set(w)))) for r, w in (pair1, pair2)]
    for r, w in pairs:
        if len(r) != spec.read_budget or len(w) != spec.write_budget:
            raise InvalidSets("read/write sets must have sizes rho_r*N and rho_w*N")
        if any(not 0 <= i < spec.N for i in r + w):
            raise InvalidSets("positions out of range")
    if set(pairs[0][0]) & set(pairs[1][1]):
        raise InvalidSets("S_r^1 and S_w^2 must be disjoint")

    def strategy(spec_, rnd):
        reads, writes = pairs[rnd.randrange(2)]
        for pos in reads:
            yield Read(pos)
        for pos in writes:
            yield Write(pos, tuple(rnd.randrange(spec_.q) for _ in range(spec_.u)))

    strategy.pairs = pairs
    return strategy


def default_two_pair(spec: ChannelSpec) -> Strategy:
    """A valid two-pair strategy: pair 1 on the front, pair 2 on the back."""
    R, W, N = spec.read_budget, spec.write_budget, spec.N
    r1 = list(range(R))
    w1 = list(range(W))
    w2 = list(range(N - W, N))
    r2 = list(range(N - R, N))
    return two_pair_strategy(spec, (r1, w1), (r2, w2))


def codeword_shift_strategy(p: AwtpParams) -> Strategy:
    """Adds part of a low-weight FRS codeword so a second message enters the list.

    A polynomial g vanishing on every evaluation point of a few symbols has
    an FRS codeword of small weight; writing half of its support puts the
    received word within the decoding radius of both f and f + g.
    """
    frs = p.frs
    q, u, N, k = p.q, p.u, p.N, p.k

    def strategy(spec, rnd):
        budget = spec.touch_budget if spec.restricted else spec.write_budget
        zeros = max(0, min(N - 2 * budget, (k - 1) // u))
        zero_pos = rnd.sample(range(N), zeros)
        roots = [frs.points[j * u + s] for j in zero_pos for s in range(u)]
        g = [1]
        for r in roots:
            g = [(a - r * b) % q for a, b in zip([0] + g, g + [0])]
        free = k - len(g)
        h = [rnd.randrange(q) for _ in range(free)] + [rnd.randrange(1, q)]
        prod = [0] * k
        for i, hi in enumerate(h):
            for j, gj in enumerate(g):
                if i + j < k:
                    prod[i + j] = (prod[i + j] + hi * gj) % q
        shift = frs_encode(frs, prod)
        support = [j for j in range(N) if any(shift[j])]
        for pos in rnd.sample(support, min(budget, len(support))):
            yield Write(pos, shift[pos])

    return strategy


STRATEGIES = {
    "none": lambda p: null_strategy,
    "random-writer": lambda p: random_writer,
    "two-pair": lambda p: default_two_pair(ChannelSpec.from_params(p)),
    "codeword-shift": codeword_shift_strategy,
    "echo": lambda p: echo_strategy,
    "overreach": lambda p: overreaching_writer,
}


# -- secrecy audits ------------------------------------------------------------


@dataclass(frozen=True)
class SecrecyLayout:
    """Where the evasive point s and the filler a sit among the FRS coefficients.

    ``filler`` lists the coefficient indices carrying a; s takes the first
    ``n`` indices not used by the filler.  The construction puts a right
    after s, at indices n .. n + u*rho_r*N - 1.
    """

    q: int
    u: int
    N: int
    read_budget: int
    n: int
    filler: tuple[int, ...]
    points: tuple[int, ...]

    @classmethod
    def from_params(cls, p: AwtpParams, filler=None) -> "SecrecyLayout":
        if filler is None:
            filler = range(p.n, p.n + p.filler_length)
        return cls(p.q, p.u, p.N, p.read_budget, p.n, tuple(filler), p.frs.points)

    @classmethod
    def frs_layer(cls, q: int, u: int, N: int, rho_r, n: int, filler=None) -> "SecrecyLayout":
        """Layout of a bare FRS code with no evasive or AMD layer in front."""
        from .fields import find_generator, make_prime_field

        R = exact(rho_r) * N
        if R.denominator != 1:
            raise InfeasibleParameters(f"rho_r*N = {R} is not an integer")
        if filler is None:
            filler = range(n, n + u * int(R))
        g = int(find_generator(make_prime_field(q)))
        return cls(q, u, N, int(R), n, tuple(filler), tuple(pow(g, i, q) for i in range(u * N)))

    def with_filler(self, filler) -> "SecrecyLayout":
        return SecrecyLayout(self.q, self.u, self.N, self.read_budget, self.n, tuple(filler), self.points)

    @property
    def message(self) -> tuple[int, ...]:
        used = set(self.filler)
        return tuple(itertools.islice((i for i in itertools.count() if i not in used), self.n))

    def rows(self, read_set: Sequence[int]) -> list[int]:
        return [self.points[j * self.u + s] for j in read_set for s in range(self.u)]

    def blocks(self, read_set: Sequence[int]):
        """Matrices (F, E) with view = E s + F a on ``read_set``."""
        q, pts = self.q, self.rows(read_set)
        F = np.array([[pow(a, i, q) for i in self.filler] for a in pts], dtype=np.int64)
        E = np.array([[pow(a, i, q) for i in self.message] for a in pts], dtype=np.int64)
        return F.reshape(len(pts), len(self.filler)), E.reshape(len(pts), self.n)


def _as_layout(p) -> SecrecyLayout:
    return p if isinstance(p, SecrecyLayout) else SecrecyLayout.from_params(p)


@dataclass
class SecrecyReport:
    perfect: bool
    sampled: bool
    read_sets_checked: int
    invertible: bool
    failing: list[tuple[int, ...]] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "perfect": self.perfect,
            "certification": "sampled" if self.sampled else "exhaustive",
            "read_sets_checked": self.read_sets_checked,
            "filler_matrices_invertible": self.invertible,
            "failing_read_sets": [list(r) for r in self.failing[:10]],
        }


def read_sets(N: int, size: int, rnd=None, limit: int = 10**5, samples: int = 10**4):
    """All size-subsets of range(N), or a uniform sample when there are too many."""
    if math.comb(N, size) <= limit:
        return list(itertools.combinations(range(N), size)), False
    rnd = rnd or random.Random(0)
    return [tuple(sorted(rnd.sample(range(N), size))) for _ in range(samples)], True


def secrecy_audit_rank(p, rnd=None) -> SecrecyReport:
    """Certify that every read set's view is independent of the evasive point.

    With view = E s + F a for uniform filler a, the view has the same
    distribution for every s exactly when the columns of E lie in the
    column span of F.  In the standard layout F is square, and that
    condition is the same as F being invertible; both are reported.
    """
    from .linalg import rank

    lay = _as_layout(p)
    q = lay.q
    sets, sampled = read_sets(lay.N, lay.read_budget, rnd)
    failing = []
    invertible = True
    for R in sets:
        F, E = lay.blocks(R)
        if not len(F):
            continue
        rf = rank(F, q) if F.size else 0
        if rf != len(F) or F.shape[1] != len(F):
            invertible = False
        if rank(np.concatenate([F, E], axis=1), q) != rf:
            failing.append(tuple(R))
    return SecrecyReport(not failing, sampled, len(sets), invertible, failing)


EXHAUSTIVE_LIMIT = 10**6


def view_distribution(p, s, read_set) -> Counter:
    """Counts of each view of ``read_set`` over every filler vector, for fixed s."""
    lay = _as_layout(p)
    q, f = lay.q, len(lay.filler)
    if q**f > EXHAUSTIVE_LIMIT:
        raise TooLarge(f"q^{f} filler vectors exceed {EXHAUSTIVE_LIMIT}")
    if len(s) != lay.n:
        raise ValueError(f"evasive point must have {lay.n} coordinates")
    F, E = lay.blocks(read_set)
    if not len(E):
        return Counter({(): q**f})
    base = (E @ (np.array(s, dtype=np.int64) % q)) % q
    fillers = np.array(list(itertools.product(range(q), repeat=f)), dtype=np.int64).reshape(q**f, f)
    views = (base[None, :] + fillers @ F.T) % q
    return Counter(map(tuple, views.tolist()))


def secrecy_audit_exhaustive(p, s0, s1, read_set) -> Fraction:
    """Exact statistical distance between the views of s0 and s1 on ``read_set``."""
    d0 = view_distribution(p, s0, read_set)
    d1 = view_distribution(p, s1, read_set)
    n0, n1 = sum(d0.values()), sum(d1.values())
    keys = set(d0) | set(d1)
    return sum((abs(Fraction(d0[k], n0) - Fraction(d1[k], n1)) for k in keys), Fraction(0)) / 2


# -- reliability ------------------------------------------------------------------


def wilson_interval(failures: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    from scipy.stats import binomtest

    ci = binomtest(failures, trials).proportion_ci(confidence_level=confidence, method="wilson")
    return float(ci.low), float(ci.high)


@dataclass
class ReliabilityReport:
    trials: int
    outcomes: Counter
    failures: int
    frequency: Fraction
    interval: tuple[float, float]

    def as_dict(self) -> dict:
        return {
            "trials": self.trials,
            "failures": self.failures,
            "frequency": float(self.frequency),
            "wilson95": list(self.interval),
            "outcomes": dict(sorted(self.outcomes.items())),
        }


def classify(outcome, m) -> str:
    if isinstance(outcome, Message):
        return "ok" if outcome.message == tuple(m) else "wrong_message"
    return type(outcome).__name__.lower()


def run_trial(p: AwtpParams, spec: ChannelSpec, strategy: Strategy, enc_seed: int, adv_seed: int):
    rnd = random.Random(enc_seed)
    m = [rnd.randrange(p.q) for _ in range(p.message_length)]
    c = awtp_encode(p, m, rnd)
    y, tr = transmit(c, spec, strategy, adv_seed)
    return m, c, tr, awtp_decode(p, y)


def reliability_estimate(p: AwtpParams, spec: ChannelSpec, strategy: Strategy, trials: int, rnd) -> ReliabilityReport:
    if trials < 1:
        raise ValueError("need at least one trial")
    counts: Counter = Counter()
    for _ in range(trials):
        enc_seed, adv_seed = rnd.getrandbits(63), rnd.getrandbits(63)
        m, _, _, outcome = run_trial(p, spec, strategy, enc_seed, adv_seed)
        counts[classify(outcome, m)] += 1
    failures = trials - counts["ok"]
    return ReliabilityReport(trials, counts, failures, Fraction(failures, trials), wilson_interval(failures, trials))
