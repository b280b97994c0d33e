"""Command-line entry point: ``wiretap <command> --params P.json ...``.

Every command writes line-delimited JSON records (keys sorted, no
timestamps) so identical inputs give byte-identical reports.  ``bounds``
writes CSV instead.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import random
import sys
from fractions import Fraction

from . import channel
from .awtp import (
    AwtpParams,
    Message,
    awtp_decode,
    awtp_encode,
    capacity_bound,
    decoding_error_bound,
    exact,
    load_params,
    params_to_dict,
    rate,
)
from .errors import (
    ConfigError,
    DomainError,
    InfeasibleParameters,
    NotRestricted,
    TooLarge,
    WiretapError,
    WrongLength,
)
from .frs import FrsParams, brute_force_list, frs_agreement_threshold, frs_encode, frs_list_decode, list_within
from .smt import smt_from_awtp, smt_lower_bound, transmission_rate, wire_replacement

SCHEMA_VERSION = 1

EXIT_OK, EXIT_CONFIG, EXIT_INFEASIBLE, EXIT_AUDIT, EXIT_ORACLE = 0, 2, 3, 4, 5

ADVERSARIES = dict(channel.STRATEGIES)
ADVERSARIES["wire-replacement"] = lambda p: wire_replacement


class Exit(Exception):
    def __init__(self, code: int, message: str = ""):
        super().__init__(message)
        self.code = code


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def dump_records(records) -> str:
    return "".join(json.dumps(_jsonable(r), sort_keys=True) + "\n" for r in records)


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _header(args, p: AwtpParams, seed: int) -> dict:
    return {
        "record": "header",
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "params": params_to_dict(p, seed),
        "seed": seed,
    }


def _load(args) -> tuple[AwtpParams, int]:
    if not args.params:
        raise ConfigError("--params is required")
    p, seed = load_params(args.params)
    if args.seed is not None:
        seed = args.seed
    return p, seed


def _require_feasible(p: AwtpParams) -> None:
    if not p.report.ok:
        raise InfeasibleParameters("; ".join(p.report.failures))


# -- message and codeword files ----------------------------------------------------


def read_messages(path, p: AwtpParams) -> list[list[int]]:
    out = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                m = [int(tok) for tok in line.split()]
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: {exc}") from exc
            if len(m) != p.message_length or any(not 0 <= x < p.q for x in m):
                raise ConfigError(f"{path}:{lineno}: need {p.message_length} integers in [0, {p.q})")
            out.append(m)
    return out


def write_codewords(codewords) -> str:
    blocks = ["".join(" ".join(map(str, sym)) + "\n" for sym in c) for c in codewords]
    return "\n".join(blocks)


def read_codewords(path, p: AwtpParams) -> list[tuple]:
    with open(path) as fh:
        rows = [line.split() for line in fh]
    words, cur = [], []
    for row in rows + [[]]:
        if row:
            try:
                cur.append(tuple(int(t) for t in row))
            except ValueError as exc:
                raise ConfigError(f"{path}: {exc}") from exc
        elif cur:
            words.append(cur)
            cur = []
    for w in words:
        if len(w) != p.N or any(len(sym) != p.u for sym in w):
            raise ConfigError(f"{path}: codewords must be {p.N} lines of {p.u} integers")
    return [tuple(w) for w in words]


# -- commands -------------------------------------------------------------------------


def cmd_params(args) -> int:
    if args.action != "check":
        raise ConfigError(f"unknown params action {args.action!r}")
    p, seed = _load(args)
    rep = p.report
    body = {"record": "feasibility", **rep.as_dict()}
    if rep.ok:
        body.update(
            n=p.n, n1=p.n1, k=p.k, rate=rate(p),
            read_budget=p.read_budget, write_budget=p.write_budget,
        )
    _emit(dump_records([_header(args, p, seed), body]), args.out)
    return EXIT_OK if rep.ok else EXIT_INFEASIBLE


def cmd_encode(args) -> int:
    p, seed = _load(args)
    _require_feasible(p)
    msgs = read_messages(args.input, p)
    rnd = random.Random(seed)
    _emit(write_codewords(awtp_encode(p, m, rnd) for m in msgs), args.out)
    return EXIT_OK


def cmd_decode(args) -> int:
    p, seed = _load(args)
    _require_feasible(p)
    words = read_codewords(args.input, p)
    rnd = random.Random(seed) if args.pick else None
    lines = []
    for y in words:
        out = awtp_decode(p, y, rnd)
        if isinstance(out, Message):
            lines.append(" ".join(map(str, out.message)))
        else:
            lines.append("# " + type(out).__name__.lower())
            sys.stderr.write(f"decode failed: {out}\n")
    _emit("".join(line + "\n" for line in lines), args.out)
    return EXIT_OK


def _adversary(name: str, p: AwtpParams):
    try:
        return ADVERSARIES[name](p)
    except KeyError:
        raise ConfigError(f"unknown adversary {name!r}; choose from {sorted(ADVERSARIES)}") from None


def _campaign(p, spec, strategy, trials, seed) -> dict:
    rep = channel.reliability_estimate(p, spec, strategy, trials, random.Random(seed))
    return {"record": "reliability", **rep.as_dict(), "amd_bound_per_candidate": decoding_error_bound(p, 1)}


def cmd_simulate(args) -> int:
    p, seed = _load(args)
    _require_feasible(p)
    spec = channel.ChannelSpec.from_params(p, restricted=args.restricted)
    strategy = _adversary(args.adversary, p)
    body = _campaign(p, spec, strategy, args.trials, seed)
    body.update(adversary=args.adversary, restricted=args.restricted)
    _emit(dump_records([_header(args, p, seed), body]), args.out)
    return EXIT_OK


def cmd_audit(args) -> int:
    p, seed = _load(args)
    _require_feasible(p)
    rnd = random.Random(seed)
    rank = channel.secrecy_audit_rank(p, rnd)
    records = [_header(args, p, seed), {"record": "rank_audit", **rank.as_dict()}]
    perfect = rank.perfect
    if p.q ** p.filler_length <= channel.EXHAUSTIVE_LIMIT:
        from .evasive import random_point

        sets, _ = channel.read_sets(p.N, p.read_budget, rnd)
        worst = Fraction(0)
        for _ in range(args.trials):
            s0, s1 = random_point(p.system, rnd), random_point(p.system, rnd)
            R = sets[rnd.randrange(len(sets))]
            worst = max(worst, channel.secrecy_audit_exhaustive(p, s0, s1, R))
        records.append({"record": "exhaustive_audit", "pairs": args.trials, "max_statistical_distance": worst})
        perfect = perfect and worst == 0
    else:
        records.append({"record": "exhaustive_audit", "skipped": f"q^{p.filler_length} filler vectors exceed the cap"})
    records.append({"record": "verdict", "perfect_secrecy": perfect})
    _emit(dump_records(records), args.out)
    return EXIT_OK if perfect else EXIT_AUDIT


def _parse_grid(text: str) -> dict:
    axes = {"rho_r": ["0"], "rho_w": ["0"], "eps": ["0"], "sigma": ["2"]}
    if not text:
        raise ConfigError("--grid is required, e.g. 'rho_r=0.1,0.2;rho_w=0.2;eps=0;sigma=2'")
    for part in text.split(";"):
        if not part.strip():
            continue
        key, sep, vals = part.partition("=")
        key = key.strip()
        if not sep or key not in axes:
            raise ConfigError(f"bad grid entry {part!r}; keys are {sorted(axes)}")
        axes[key] = [v.strip() for v in vals.split(",") if v.strip()]
    try:
        return {
            "rho_r": [exact(x) for x in axes["rho_r"]],
            "rho_w": [exact(x) for x in axes["rho_w"]],
            "eps": [exact(x) for x in axes["eps"]],
            "sigma": [int(x) for x in axes["sigma"]],
        }
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad grid value: {exc}") from exc


def _num(x) -> str:
    if isinstance(x, Fraction):
        return repr(float(x)) if x.denominator != 1 else str(x.numerator)
    return repr(x)


def cmd_bounds(args) -> int:
    grid = _parse_grid(args.grid)
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["rho_r", "rho_w", "eps", "sigma", "capacity_bound", "smt_rate_bound"])
    for rr, rw, e, sigma in itertools.product(grid["rho_r"], grid["rho_w"], grid["eps"], grid["sigma"]):
        try:
            cap = _num(capacity_bound(rr, rw, e, sigma))
        except DomainError:
            cap = ""
        smt = ""
        if rr == rw:
            try:
                smt = _num(smt_lower_bound(rr.denominator, rr.numerator, e, sigma))
            except DomainError:
                pass
        wr.writerow([_num(rr), _num(rw), _num(e), sigma, cap, smt])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_smt(args) -> int:
    p, seed = _load(args)
    proto = smt_from_awtp(p)
    strategy = _adversary(args.adversary, p)
    body = {
        "record": "smt",
        "wires": proto.N,
        "threshold": proto.t,
        "alphabet_size": proto.alphabet_size,
        "transmission_rate": transmission_rate(proto),
        "lower_bound": smt_lower_bound(proto.N, proto.t, 0, proto.alphabet_size),
    }
    rel = _campaign(p, proto.channel(), strategy, args.trials, seed)
    rel.update(adversary=args.adversary, restricted=True)
    _emit(dump_records([_header(args, p, seed), body, rel]), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    p, seed = _load(args)
    k = args.k if args.k is not None else p.k
    frs = FrsParams(p.field, p.u, p.N, k, p.gamma, p.v)
    radius = p.N - frs_agreement_threshold(frs)
    if radius < 0:
        raise InfeasibleParameters("agreement threshold exceeds N")
    if p.q**k > 10**6:
        raise TooLarge(f"q^k = {p.q**k} is too large for brute force")
    rnd = random.Random(seed)
    mismatches = []
    for trial in range(args.trials):
        if trial % 4 == 3:
            y = tuple(tuple(rnd.randrange(p.q) for _ in range(p.u)) for _ in range(p.N))
        else:
            y = list(frs_encode(frs, [rnd.randrange(p.q) for _ in range(k)]))
            for pos in rnd.sample(range(p.N), rnd.randint(0, radius)):
                y[pos] = tuple(rnd.randrange(p.q) for _ in range(p.u))
            y = tuple(y)
        got = list_within(frs, frs_list_decode(frs, y), y, radius)
        want = brute_force_list(frs, y, radius)
        if got != want:
            mismatches.append({"trial": trial, "word": y, "decoder": got, "brute_force": want})
    verdict = "PASS" if not mismatches else "FAIL"
    body = {
        "record": "oracle",
        "k": k,
        "radius": radius,
        "trials": args.trials,
        "mismatches": mismatches[:10],
        "summary": f"list-decode matches brute force: {verdict}",
    }
    _emit(dump_records([_header(args, p, seed), body]), args.out)
    print(body["summary"], file=sys.stderr)
    return EXIT_OK if not mismatches else EXIT_ORACLE


COMMANDS = {
    "params": cmd_params,
    "encode": cmd_encode,
    "decode": cmd_decode,
    "simulate": cmd_simulate,
    "audit-secrecy": cmd_audit,
    "bounds": cmd_bounds,
    "smt": cmd_smt,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--params", help="JSON parameter document")
    common.add_argument("--seed", type=int, help="master seed (defaults to the document's seed)")
    common.add_argument("--out", help="output path (default stdout)")

    ap = argparse.ArgumentParser(prog="wiretap", description="Adversarial wiretap codes: experiments and audits.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("params", parents=[common], help="feasibility report")
    s.add_argument("action", choices=["check"])

    s = sub.add_parser("encode", parents=[common], help="message file to codeword file")
    s.add_argument("input")

    s = sub.add_parser("decode", parents=[common], help="codeword file to message file")
    s.add_argument("input")
    s.add_argument("--pick", action="store_true", help="choose uniformly among several valid candidates")

    runs = (
        ("simulate", "random-writer", "reliability campaign against an adversary"),
        ("smt", "wire-replacement", "secure message transmission wrapper (restricted mode)"),
    )
    for name, default, text in runs:
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("--adversary", default=default, help=f"one of {sorted(ADVERSARIES)}")
        s.add_argument("--trials", type=int, default=1000)
        if name == "simulate":
            s.add_argument("--restricted", action="store_true", help="force S_r = S_w")

    s = sub.add_parser("audit-secrecy", parents=[common], help="rank and exhaustive secrecy audits")
    s.add_argument("--trials", type=int, default=10, help="random pairs for the exhaustive audit")

    s = sub.add_parser("bounds", parents=[common], help="capacity and SMT bound table (CSV)")
    s.add_argument("--grid", required=True)

    s = sub.add_parser("oracle", parents=[common], help="list decoder against brute force")
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--k", type=int, help="override the FRS dimension")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "trials", 1) is not None and getattr(args, "trials", 1) < 1:
        print("error: --trials must be positive", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, WrongLength, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InfeasibleParameters, NotRestricted, TooLarge, DomainError) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except WiretapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
