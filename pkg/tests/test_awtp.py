import json
import math
import os
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import DATA, REFERENCE
from wiretap.awtp import (
    Ambiguous,
    AwtpParams,
    Message,
    NoCandidate,
    asymptotic_write_limit,
    awtp_decode,
    awtp_encode,
    candidates,
    capacity_bound,
    check_params,
    codeword_from_json,
    codeword_to_json,
    decoding_error_bound,
    dump_params,
    encode_trace,
    params_from_dict,
    params_to_dict,
    rate,
)
from wiretap.errors import ConfigError, DomainError, InfeasibleParameters, WrongLength


def test_reference_report(ref):
    rep = check_params(ref)
    assert rep.ok
    assert (ref.n, ref.n1, ref.k) == (8, 4, 14)
    assert rep.t_star == 4 and rep.correctable == 2
    assert rep.asymptotic is False
    assert rate(ref) == Fraction(1, 18)


def test_asymptotic_condition_by_hand(ref):
    # v/(v+1) - v/(v+1) * ((v/(v-1))(uR+3) + u rho_r) / (u-v+1) with uR = 1/3
    lead = Fraction(2, 3)
    want = lead - lead * (2 * (Fraction(1, 3) + 3) + 1) / 5
    assert asymptotic_write_limit(ref) == want
    assert want < 0


def test_write_budget_over_limit_fails(ref):
    rep = check_params(ref.replace(rho_w=Fraction(1, 2)))
    assert not rep.ok and not rep.operative


def test_no_adversary_is_feasible(ref):
    p = ref.replace(rho_r=0, rho_w=0)
    assert check_params(p).ok
    assert p.k == p.n


@pytest.mark.parametrize(
    "change",
    [dict(q=36), dict(q=31), dict(w=5), dict(v=7), dict(d=0), dict(d=35), dict(rho_r=Fraction(1, 4)), dict(b=1, d=3)],
)
def test_structural_failures(ref, change):
    assert not check_params(ref.replace(**change)).ok


def test_rate_examples(ref):
    assert rate(ref.replace(d=0)) == 0
    assert rate(ref) * ref.u * ref.N == ref.d * ref.mu


def test_capacity_examples():
    assert capacity_bound(0.3, 0.2, 0) == 0.5
    assert capacity_bound(0.25, 0.25, Fraction(1, 16), 256) == 0.546875
    assert capacity_bound(0, 0, 0) == 1
    for bad in [(-0.1, 0, 0), (0, 0, 1), (0, 0, -0.5)]:
        with pytest.raises(DomainError):
            capacity_bound(*bad)
    with pytest.raises(DomainError):
        capacity_bound(0.1, 0.1, 0.1, 1)


def test_capacity_monotone():
    grid = [Fraction(i, 20) for i in range(11)]
    for a, b in zip(grid, grid[1:]):
        assert capacity_bound(b, 0.2) <= capacity_bound(a, 0.2)
        assert capacity_bound(0.2, b) <= capacity_bound(0.2, a)
    # the paper family's rate 1 - rho_r - rho_w - xi stays below the bound
    for xi in (Fraction(1, 100), Fraction(1, 10)):
        assert 1 - Fraction(3, 10) - Fraction(1, 5) - xi < capacity_bound(0.3, 0.2)


def test_error_bound(ref):
    assert decoding_error_bound(ref, 1) == Fraction(3, 37)
    assert decoding_error_bound(ref, 20) == 1


def test_golden_reference_encode(ref):
    with open(os.path.join(DATA, "reference_encode.json")) as fh:
        doc = json.load(fh)
    p, seed = params_from_dict(doc["params"])
    assert p == ref
    q, u, N = 37, 6, 6
    tr = encode_trace(p, doc["message"], random.Random(seed))
    assert [list(c) for c in tr.codeword] == doc["codeword"]

    # stage 1: AMD tag, recomputed by plain powers
    x, r, t = doc["amd"]["x"], doc["amd"]["r"], doc["amd"]["t"]
    assert [v for b in x for v in b] == doc["message"]
    assert tuple(t) == oracles.amd_tag([tuple(b) for b in x], tuple(r), (0, 1), q)
    # stage 2: zero padding to n1 and evasive embedding
    assert doc["padded"] == [v for b in x for v in b] + r + t + [0] * (p.n1 - p.amd_length)
    A = oracles.cauchy([1, 2], [3, 4, 5, 6], q)
    coprime = [e for e in range(4, 36) if math.gcd(e, 36) == 1][:2]
    degrees = tuple(sorted(coprime, reverse=True)) + (3, 2)
    assert degrees == (7, 5, 3, 2)
    assert p.system.degrees == degrees
    s = doc["s"]
    assert oracles.member(A, degrees, s, q)
    for blk in range(p.b):
        block = s[4 * blk:4 * blk + 4]
        free = doc["padded"][2 * blk:2 * blk + 2]
        assert oracles.block_completions(A, degrees, [2, 3], free, q) == [tuple(block)]
    # stage 3: coefficient layout s || a
    assert len(doc["a"]) == u * p.read_budget
    assert list(tr.coefficients) == s + doc["a"]
    # stage 4: FRS evaluation at consecutive powers of the smallest generator
    g = oracles.smallest_generator(q)
    assert [list(c) for c in oracles.frs_encode(s + doc["a"], q, u, N, g)] == doc["codeword"]
    assert awtp_decode(p, [tuple(c) for c in doc["codeword"]]) == Message(tuple(doc["message"]))


def test_round_trip_zero_error(ref):
    rnd = random.Random(3)
    for _ in range(30):
        m = [rnd.randrange(37) for _ in range(2)]
        assert awtp_decode(ref, awtp_encode(ref, m, rnd)) == Message(tuple(m))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 36), min_size=2, max_size=2), st.integers(0, 2**32), st.sets(st.integers(0, 5), max_size=2))
def test_round_trip_bounded_error(m, seed, positions):
    p = AwtpParams(**REFERENCE)
    rnd = random.Random(seed)
    y = [list(sym) for sym in awtp_encode(p, m, rnd)]
    for pos in positions:
        y[pos] = [rnd.randrange(37) for _ in range(6)]
    out = awtp_decode(p, y)
    # a forged AMD codeword could in principle pass; it never has at this size
    assert out == Message(tuple(m)) or isinstance(out, Ambiguous)


def test_encode_checks(ref):
    with pytest.raises(WrongLength):
        awtp_encode(ref, [1, 2, 3], random.Random(0))
    with pytest.raises(InfeasibleParameters):
        awtp_encode(ref.replace(rho_w=Fraction(1, 2)), [1, 2], random.Random(0))


def test_heavy_corruption_gives_explicit_outcome(ref):
    rnd = random.Random(9)
    outcomes = set()
    for _ in range(30):
        y = [[rnd.randrange(37) for _ in range(6)] for _ in range(6)]
        outcomes.add(type(awtp_decode(ref, y)))
    assert outcomes <= {Message, Ambiguous, NoCandidate}
    assert NoCandidate in outcomes


def test_random_pick_mode(ref, monkeypatch):
    import wiretap.awtp as mod

    monkeypatch.setattr(mod, "candidates", lambda p, y: [(1, 2), (3, 4)])
    assert awtp_decode(ref, None) == Ambiguous(2)
    assert awtp_decode(ref, None, random.Random(0)).message in {(1, 2), (3, 4)}


def test_candidates_reject_nonzero_padding():
    # b = 3 leaves 2 padding positions after the 4 AMD symbols
    p = AwtpParams(q=37, u=6, v=2, N=6, mu=1, d=2, w=4, b=3, rho_r=0, rho_w=Fraction(1, 6))
    assert p.report.ok
    from wiretap.evasive import se_encode
    from wiretap.frs import frs_encode

    good = list(encode_trace(p, [3, 4], random.Random(0)).padded)
    bad = good[:-1] + [1]
    c = frs_encode(p.frs, se_encode(p.system, bad))
    assert candidates(p, c) == []
    assert awtp_decode(p, c) == NoCandidate()


def test_params_serialisation(ref):
    doc = params_to_dict(ref, 5)
    assert set(doc) == {"q", "u", "v", "N", "mu", "d", "w", "b", "rho_r", "rho_w", "seed"}
    assert params_from_dict(json.loads(json.dumps(doc))) == (ref, 5)
    assert json.loads(dump_params(ref, 5)) == doc
    for broken in [dict(doc, extra=1), {k: v for k, v in doc.items() if k != "q"}, dict(doc, q="37"), dict(doc, rho_r="x")]:
        with pytest.raises(ConfigError):
            params_from_dict(broken)
    with pytest.raises(ConfigError):
        params_from_dict([1, 2])
    # decimal strings and floats are read exactly
    assert params_from_dict(dict(doc, rho_r=0.5))[0].rho_r == Fraction(1, 2)


def test_codeword_serialisation(ref):
    c = awtp_encode(ref, [1, 2], random.Random(0))
    assert codeword_from_json(json.loads(json.dumps(codeword_to_json(c))), ref) == c
    with pytest.raises(WrongLength):
        codeword_from_json([[1, 2]], ref)
