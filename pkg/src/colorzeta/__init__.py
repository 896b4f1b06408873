"""Finite and symmetrized colored multiple zeta values: exact per-prime
evaluation, high-precision regularized values, relation generation and
rank bounds over cyclotomic fields."""

from .cyclotomic import (
    CycNumber,
    EmbedDenominatorError,
    ModCycNumber,
    PrimeContext,
    ZeroDivisorError,
    embed_cyc,
    embed_rational,
    get_prime_context,
)
from .words import (
    SignedWord,
    XWord,
    YWord,
    parse_xword,
    parse_yword,
    xword,
    yword,
)
from .wordalg import LinComb, RegDecomposition, reg_decompose, shuffle, stuffle

__all__ = [
    "CycNumber",
    "ModCycNumber",
    "PrimeContext",
    "ZeroDivisorError",
    "EmbedDenominatorError",
    "embed_cyc",
    "embed_rational",
    "get_prime_context",
    "YWord",
    "XWord",
    "SignedWord",
    "yword",
    "xword",
    "parse_yword",
    "parse_xword",
    "LinComb",
    "RegDecomposition",
    "reg_decompose",
    "stuffle",
    "shuffle",
]

__version__ = "0.1.0"
