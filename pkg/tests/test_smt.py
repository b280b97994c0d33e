import random
from fractions import Fraction

import pytest

from wiretap.awtp import rate
from wiretap.channel import reliability_estimate, transmit
from wiretap.errors import DomainError, NotRestricted
from wiretap.smt import (
    permutation_invariant,
    permute,
    smt_from_awtp,
    smt_lower_bound,
    transmission_rate,
    unpermute,
    wire_replacement,
)


@pytest.fixture(scope="module")
def proto(ref):
    return smt_from_awtp(ref.replace(rho_w=Fraction(1, 6)))


def test_wrap_reference(proto):
    assert (proto.N, proto.t, proto.alphabet_size) == (6, 1, 37**6)
    assert transmission_rate(proto) == 18
    assert transmission_rate(proto) * rate(proto.params) == 1


def test_wrap_requires_restricted(ref):
    with pytest.raises(NotRestricted):
        smt_from_awtp(ref)


def test_zero_threshold(ref):
    p = smt_from_awtp(ref.replace(rho_r=0, rho_w=0))
    assert p.t == 0
    assert smt_lower_bound(p.N, p.t, 0, p.alphabet_size) == 1


def test_lower_bound_examples():
    assert smt_lower_bound(5, 2, 0, 2) == 5
    for t in range(1, 6):
        assert smt_lower_bound(2 * t + 1, t, 0) == 2 * t + 1
    assert smt_lower_bound(7, 0, 0) == 1
    assert isinstance(smt_lower_bound(5, 2, 0), Fraction)
    # eps > 0 shrinks the bound below the perfect case
    assert smt_lower_bound(5, 2, Fraction(1, 16), 256) < 5
    assert smt_lower_bound(5, 2, Fraction(1, 16), 256) == pytest.approx(5 / (1 + 4 * (1 / 16) * 1.5))


@pytest.mark.parametrize("args", [(4, 2, 0), (0, 0, 0), (5, -1, 0), (5, 1, 1), (5, 1, -0.1), (5, 1, 0.1, 1)])
def test_lower_bound_domain(args):
    with pytest.raises(DomainError):
        smt_lower_bound(*args)


def test_rate_respects_lower_bound(proto):
    assert transmission_rate(proto) >= smt_lower_bound(proto.N, proto.t, 0, proto.alphabet_size)


def test_wire_replacement_is_additive(proto):
    spec = proto.channel()
    c = proto.send([3, 4], random.Random(0))
    for seed in range(30):
        y, tr = transmit(c, spec, wire_replacement, seed)
        assert tr.read_set == tr.write_set and len(tr.write_set) == proto.t
        S = set(tr.write_set)
        assert set(tr.support) == S
        for i in range(proto.N):
            assert (y[i] != c[i]) == (i in S)
            assert y[i] == tuple((a + b) % 37 for a, b in zip(c[i], tr.error[i]))
        assert proto.receive(y).message == (3, 4)


def test_reliability_under_wire_replacement(proto):
    rep = reliability_estimate(proto.params, proto.channel(), wire_replacement, 200, random.Random(1))
    assert rep.failures == 0


def test_permutation_helpers():
    perm = [2, 0, 1]
    assert permute("abc", perm) == ("c", "a", "b")
    assert unpermute(permute("abc", perm), perm) == tuple("abc")


def test_permutation_invariance(proto):
    rnd = random.Random(2)
    for _ in range(20):
        c = proto.send([rnd.randrange(37), rnd.randrange(37)], rnd)
        e = [(0,) * 6] * 6
        e[rnd.randrange(6)] = tuple(rnd.randrange(37) for _ in range(6))
        perm = list(range(6))
        rnd.shuffle(perm)
        assert permutation_invariant(proto, c, e, perm)
