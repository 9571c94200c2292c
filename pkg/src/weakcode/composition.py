"""Enumerative coding of constant-composition words.

Payload rows carry one codeword of ``C1 x C2``: ``c1`` fills the columns that
sit below a 0 and ``c2`` those below a 1.  Words are ranked lexicographically
with ``0 < 1``.
"""
from __future__ import annotations

from math import comb
from typing import NamedTuple

from .chain import BinaryChain


class RankOutOfRange(ValueError):
    pass


class CompositionMismatch(ValueError):
    pass


class CompositionPair(NamedTuple):
    c1: str
    c2: str


def row_capacity(chain: BinaryChain) -> tuple[int, int]:
    """Number of distinct payload rows and the whole bits each one can carry."""
    B = comb(chain.n1, chain.c01) * comb(chain.n2, chain.c11)
    return B, B.bit_length() - 1


def unrank_cc(length: int, ones: int, rank: int) -> str:
    if not 0 <= ones <= length:
        raise ValueError(f"cannot place {ones} ones in {length} positions")
    if not 0 <= rank < comb(length, ones):
        raise RankOutOfRange(f"rank {rank} outside [0, {comb(length, ones)})")
    out = []
    for remaining in range(length, 0, -1):
        # words that put a 0 here come first
        zero_first = comb(remaining - 1, ones)
        if rank < zero_first:
            out.append("0")
        else:
            out.append("1")
            rank -= zero_first
            ones -= 1
    return "".join(out)


def rank_cc(word: str, ones: int) -> int:
    if word.count("1") != ones:
        raise CompositionMismatch(f"{word!r} has {word.count('1')} ones, expected {ones}")
    rank = 0
    left = ones
    for i, bit in enumerate(word):
        if bit == "1":
            rank += comb(len(word) - i - 1, left)
            left -= 1
    return rank


def unrank_message(chain: BinaryChain, index: int) -> CompositionPair:
    B, _ = row_capacity(chain)
    if not 0 <= index < B:
        raise RankOutOfRange(f"message index {index} outside [0, {B})")
    B2 = comb(chain.n2, chain.c11)
    hi, lo = divmod(index, B2)
    return CompositionPair(unrank_cc(chain.n1, chain.c01, hi), unrank_cc(chain.n2, chain.c11, lo))


def rank_message(chain: BinaryChain, pair: CompositionPair) -> int:
    c1, c2 = pair
    if len(c1) != chain.n1 or len(c2) != chain.n2:
        raise CompositionMismatch(
            f"section lengths {len(c1)}/{len(c2)}, expected {chain.n1}/{chain.n2}"
        )
    B2 = comb(chain.n2, chain.c11)
    return rank_cc(c1, chain.c01) * B2 + rank_cc(c2, chain.c11)
