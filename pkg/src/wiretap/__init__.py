"""Adversarial wiretap codes from folded Reed-Solomon codes, subspace-evasive sets and AMD codes."""

from .awtp import (
    AwtpParams,
    Ambiguous,
    Message,
    NoCandidate,
    awtp_decode,
    awtp_encode,
    capacity_bound,
    check_params,
    rate,
)
from .channel import ChannelSpec, transmit
from .smt import smt_from_awtp, smt_lower_bound, transmission_rate

__version__ = "0.1.0"

__all__ = [
    "AwtpParams",
    "Ambiguous",
    "ChannelSpec",
    "Message",
    "NoCandidate",
    "awtp_decode",
    "awtp_encode",
    "capacity_bound",
    "check_params",
    "rate",
    "smt_from_awtp",
    "smt_lower_bound",
    "transmission_rate",
    "transmit",
]
