"""The adversarial wiretap code: AMD tag, evasive-set embedding, FRS layer.

Encoding a message ``m`` of ``d`` blocks over F_{q^mu}:

1. AMD-encode ``m`` into ``(x, r, t)``, ``(d + 2) * mu`` symbols over F_q;
2. zero-pad to ``n1`` symbols and map into the evasive set, giving ``s``
   of length ``n``;
3. append ``u * rho_r * N`` uniform filler symbols ``a``; ``s || a`` are the
   ``k`` coefficients of the FRS message polynomial;
4. FRS-encode.

Decoding list-decodes the FRS layer to an affine space, keeps its first
``n`` coordinates, intersects with the evasive set and returns the unique
candidate that passes AMD verification.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .amd import AmdCodeword, AmdParams, amd_encode, amd_failure_bound, amd_verify
from .errors import (
    ConfigError,
    DomainError,
    InfeasibleParameters,
    InterpolationFailed,
    WiretapError,
    WrongLength,
)
from .evasive import EvasiveSystem, build_evasive_system, se_decode, se_encode, se_intersect
from .fields import ExtField, PrimeField, find_generator, make_extension_field, make_prime_field
from .frs import FrsParams, check_word, frs_agreement_threshold, frs_encode, frs_list_decode

PARAM_KEYS = ("q", "u", "v", "N", "mu", "d", "w", "b", "rho_r", "rho_w", "seed")


def exact(x) -> Fraction:
    """Exact rational from an int, Fraction, ``"a/b"`` string or decimal float."""
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise DomainError(f"non-finite value {x}")
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational")


@dataclass(frozen=True)
class AwtpParams:
    q: int
    u: int
    v: int
    N: int
    mu: int
    d: int
    w: int
    b: int
    rho_r: Fraction
    rho_w: Fraction

    def __post_init__(self):
        object.__setattr__(self, "rho_r", exact(self.rho_r))
        object.__setattr__(self, "rho_w", exact(self.rho_w))
        for name in ("q", "u", "v", "N", "mu", "w", "b"):
            if getattr(self, name) < 1:
                raise InfeasibleParameters(f"{name} must be positive")
        if self.d < 0:
            raise InfeasibleParameters("d must be non-negative")

    @cached_property
    def field(self) -> PrimeField:
        return make_prime_field(self.q)

    @cached_property
    def ext(self) -> ExtField:
        return make_extension_field(self.field, self.mu)

    @cached_property
    def gamma(self) -> int:
        return int(find_generator(self.field))

    @property
    def n(self) -> int:
        return self.w * self.b

    @property
    def n1(self) -> int:
        return (self.w - self.v) * self.b

    @property
    def amd_length(self) -> int:
        return (self.d + 2) * self.mu

    @property
    def message_length(self) -> int:
        return self.d * self.mu

    def _budget(self, rho: Fraction) -> int:
        x = rho * self.N
        if x.denominator != 1:
            raise InfeasibleParameters(f"rho*N = {x} is not an integer")
        return int(x)

    @property
    def read_budget(self) -> int:
        return self._budget(self.rho_r)

    @property
    def write_budget(self) -> int:
        return self._budget(self.rho_w)

    @property
    def filler_length(self) -> int:
        return self.u * self.read_budget

    @property
    def k(self) -> int:
        return self.n + self.filler_length

    @cached_property
    def amd(self) -> AmdParams:
        return AmdParams(self.d, self.ext)

    @cached_property
    def system(self) -> EvasiveSystem:
        return build_evasive_system(self.field, self.v, self.b)

    @cached_property
    def frs(self) -> FrsParams:
        return FrsParams(self.field, self.u, self.N, self.k, self.gamma, self.v)

    @cached_property
    def report(self) -> "FeasibilityReport":
        return check_params(self)

    def replace(self, **changes) -> "AwtpParams":
        values = {name: getattr(self, name) for name in PARAM_KEYS if name != "seed"}
        values.update(changes)
        return AwtpParams(**values)


@dataclass
class FeasibilityReport:
    checks: dict[str, bool] = field(default_factory=dict)
    details: dict[str, str] = field(default_factory=dict)
    t_star: int | None = None
    correctable: int | None = None
    operative: bool = False
    asymptotic: bool | None = None

    @property
    def ok(self) -> bool:
        return self.operative and all(self.checks.values())

    @property
    def failures(self) -> list[str]:
        out = [f"{name}: {self.details.get(name, 'failed')}" for name, ok in self.checks.items() if not ok]
        if not self.operative:
            out.append(f"operative: {self.details.get('operative', 'failed')}")
        return out

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": dict(self.checks),
            "failures": self.failures,
            "t_star": self.t_star,
            "correctable": self.correctable,
            "operative": self.operative,
            "asymptotic": self.asymptotic,
        }


def asymptotic_write_limit(p: AwtpParams) -> Fraction | None:
    """Right-hand side of the sufficient condition on rho_w for large N (None for v = 1)."""
    v, u = p.v, p.u
    if v < 2 or u - v + 1 <= 0:
        return None
    uR = Fraction(p.message_length, p.N)
    lead = Fraction(v, v + 1)
    return lead - lead * (Fraction(v, v - 1) * (uR + 3) + u * p.rho_r) / (u - v + 1)


def check_params(p: AwtpParams) -> FeasibilityReport:
    rep = FeasibilityReport()

    def check(name, ok, detail=""):
        rep.checks[name] = bool(ok)
        if not ok:
            rep.details[name] = detail

    try:
        p.field
        check("q_prime", True)
    except WiretapError as exc:
        check("q_prime", False, str(exc))
        return rep
    check("q_gt_Nu", p.q > p.N * p.u, f"q={p.q} <= N*u={p.N * p.u}")
    check("w_eq_v2", p.w == p.v * p.v, f"w={p.w} != v^2={p.v * p.v}")
    check("v_range", 1 <= p.v <= p.u, f"v={p.v} not in [1, u={p.u}]")
    check("d_positive", p.d >= 1, "d must be >= 1")
    check("d_plus_2", (p.d + 2) % p.q != 0, f"q divides d+2={p.d + 2}")
    check("rho_range", 0 <= p.rho_r <= 1 and 0 <= p.rho_w <= 1, "fractions must lie in [0, 1]")
    integral = (p.rho_r * p.N).denominator == 1 and (p.rho_w * p.N).denominator == 1
    check("rho_integral", integral, "rho_r*N and rho_w*N must be integers")
    check("amd_fits", p.n1 >= p.amd_length, f"n1={p.n1} < (d+2)*mu={p.amd_length}")
    try:
        p.system
        check("evasive_system", True)
    except WiretapError as exc:
        check("evasive_system", False, str(exc))
    if not integral:
        return rep
    check("k_le_uN", p.k <= p.u * p.N, f"k={p.k} > u*N={p.u * p.N}")
    if not (rep.checks["q_gt_Nu"] and rep.checks["v_range"] and rep.checks["k_le_uN"]):
        return rep
    frs = p.frs
    check("interpolation", frs.interpolation_degree >= 0, f"k={p.k} leaves no interpolation degree")
    rep.t_star = frs_agreement_threshold(frs)
    rep.correctable = p.N - rep.t_star
    rep.operative = p.write_budget <= rep.correctable
    if not rep.operative:
        rep.details["operative"] = f"rho_w*N={p.write_budget} > N - t*={rep.correctable}"
    limit = asymptotic_write_limit(p)
    rep.asymptotic = None if limit is None else p.rho_w < limit
    return rep


def rate(p: AwtpParams) -> Fraction:
    return Fraction(p.d * p.mu, p.u * p.N)


def decoding_error_bound(p: AwtpParams, list_size: int) -> Fraction:
    """Union bound list_size * (d+1)/q^mu on an undetected AMD forgery."""
    return min(Fraction(1), list_size * amd_failure_bound(p.amd))


def capacity_bound(rho_r, rho_w, eps=0, sigma_size=2) -> float:
    """Upper bound 1 - rho_r - rho_w + 2 eps rho_r (1 + log_|Sigma|(1/eps))."""
    try:
        rr, rw, e = exact(rho_r), exact(rho_w), exact(eps)
    except (TypeError, ValueError) as exc:
        raise DomainError(str(exc)) from exc
    if rr < 0 or rw < 0:
        raise DomainError("read/write fractions must be non-negative")
    if not 0 <= e < 1:
        raise DomainError("eps must lie in [0, 1)")
    if sigma_size < 2:
        raise DomainError("alphabet needs at least two symbols")
    base = 1 - rr - rw
    if e == 0:
        return float(base)
    leak = 2 * float(e) * float(rr) * (1 + math.log2(1 / e) / math.log2(sigma_size))
    return float(base) + leak


def asymptotic_parameters(xi) -> dict:
    """Folding and decoding parameters of the large-N recipe, for reference only."""
    xi1 = exact(xi) / 13
    return {"xi1": xi1, "u": 1 / xi1**2, "v": 1 / xi1, "target_rate": "1 - rho_r - rho_w - xi"}


# -- encoding -----------------------------------------------------------------


@dataclass(frozen=True)
class EncodingTrace:
    """Every intermediate value of one encoding, for audits and golden tests."""

    amd: AmdCodeword
    padded: tuple[int, ...]
    s: tuple[int, ...]
    a: tuple[int, ...]
    codeword: tuple[tuple[int, ...], ...]

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self.s + self.a


def _message_blocks(p: AwtpParams, m) -> list[tuple]:
    flat: list[int] = []
    for item in m:
        if isinstance(item, (tuple, list)):
            flat.extend(int(c) for c in item)
        else:
            flat.append(int(item))
    if len(flat) != p.message_length:
        raise WrongLength(f"expected {p.message_length} message symbols, got {len(flat)}")
    mu = p.mu
    return [p.ext.from_vector(flat[i * mu:(i + 1) * mu]) for i in range(p.d)]


def encode_trace(p: AwtpParams, m, rnd) -> EncodingTrace:
    if not p.report.ok:
        raise InfeasibleParameters("; ".join(p.report.failures))
    amd_cw = amd_encode(p.amd, _message_blocks(p, m), rnd)
    padded = tuple(amd_cw.flatten()) + (0,) * (p.n1 - p.amd_length)
    s = se_encode(p.system, padded)
    a = tuple(rnd.randrange(p.q) for _ in range(p.filler_length))
    codeword = frs_encode(p.frs, s + a)
    return EncodingTrace(amd_cw, padded, s, a, codeword)


def awtp_encode(p: AwtpParams, m, rnd) -> tuple[tuple[int, ...], ...]:
    return encode_trace(p, m, rnd).codeword


# -- decoding -----------------------------------------------------------------


@dataclass(frozen=True)
class DecodeOutcome:
    pass


@dataclass(frozen=True)
class Message(DecodeOutcome):
    message: tuple[int, ...]


@dataclass(frozen=True)
class Ambiguous(DecodeOutcome):
    count: int


@dataclass(frozen=True)
class NoCandidate(DecodeOutcome):
    pass


def candidates(p: AwtpParams, y) -> list[tuple[int, ...]]:
    """Flattened messages of every list entry that passes the AMD check."""
    y = check_word(p.frs, y)
    try:
        space = frs_list_decode(p.frs, y)
    except InterpolationFailed:
        return []
    H = space.restrict(p.n)
    valid = []
    for s in se_intersect(p.system, H):
        vec = se_decode(p.system, s)
        if any(vec[p.amd_length:]):
            continue
        cw = AmdCodeword.unflatten(p.amd, vec[:p.amd_length])
        x = amd_verify(p.amd, cw)
        if x:
            valid.append(tuple(c for block in x for c in block))
    return valid


def awtp_decode(p: AwtpParams, y, rnd=None) -> DecodeOutcome:
    """Decode ``y``; with ``rnd`` given, an ambiguous list yields a uniform valid candidate."""
    valid = candidates(p, y)
    if len(valid) == 1:
        return Message(valid[0])
    if not valid:
        return NoCandidate()
    if rnd is not None:
        return Message(valid[rnd.randrange(len(valid))])
    return Ambiguous(len(valid))


# -- serialisation ------------------------------------------------------------


def _fraction_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def params_to_dict(p: AwtpParams, seed: int = 0) -> dict:
    out = {name: getattr(p, name) for name in PARAM_KEYS if name != "seed"}
    out["rho_r"] = _fraction_text(p.rho_r)
    out["rho_w"] = _fraction_text(p.rho_w)
    out["seed"] = seed
    return out


def params_from_dict(doc: dict) -> tuple[AwtpParams, int]:
    if not isinstance(doc, dict):
        raise ConfigError("parameter document must be a mapping")
    keys = set(doc)
    missing = [k for k in PARAM_KEYS if k not in keys]
    extra = sorted(keys - set(PARAM_KEYS))
    if missing or extra:
        raise ConfigError(f"parameter keys: missing {missing}, unexpected {extra}")
    try:
        ints = {k: doc[k] for k in PARAM_KEYS if k not in ("rho_r", "rho_w")}
        for k, val in ints.items():
            if isinstance(val, bool) or not isinstance(val, int):
                raise ConfigError(f"{k} must be an integer")
        seed = ints.pop("seed")
        p = AwtpParams(**ints, rho_r=exact(doc["rho_r"]), rho_w=exact(doc["rho_w"]))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc
    return p, seed


def load_params(path) -> tuple[AwtpParams, int]:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read parameters from {path}: {exc}") from exc
    return params_from_dict(doc)


def dump_params(p: AwtpParams, seed: int = 0) -> str:
    return json.dumps(params_to_dict(p, seed), indent=2) + "\n"


def codeword_to_json(c: Sequence[Sequence[int]]) -> list[list[int]]:
    return [list(map(int, sym)) for sym in c]


def codeword_from_json(doc, p: AwtpParams) -> tuple[tuple[int, ...], ...]:
    return check_word(p.frs, doc)
