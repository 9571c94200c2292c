"""Encoder/decoder for whole codewords, plus the binary container format.

Layout of an encoded array (rows 1-based, ``K = 1 + m + Z`` rows):

    row 1           U_pi
    rows 2..m+1     payload, one message per row
    rows m+2..K     transition rows ending at sigma_left(U_pi)

Columns are always stitched left to right, sharing one boundary symbol.
"""
from __future__ import annotations

import struct
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .array import (
    CompositionViolation,
    build_u_pi,
    complement,
    extract_row,
    place_row,
    sigma_left,
    validate_array,
)
from .chain import EDGES, BinaryChain, ChainError, compute_Z, validate_chain
from .composition import rank_message, unrank_message
from .planner import plan_transition

MAGIC = b"WRBR"
VERSION = 1
_HEADER = struct.Struct(">4sB8I")


class NotExtendable(ValueError):
    pass


class BadLength(ValueError):
    pass


class ContainerError(ValueError):
    pass


class BadMagic(ContainerError):
    pass


class BadVersion(ContainerError):
    pass


class TruncatedFile(ContainerError):
    pass


class HeaderInconsistent(ContainerError):
    pass


@dataclass(frozen=True)
class Codeword:
    bits: str
    chain: BinaryChain
    m: int

    @property
    def N(self) -> int:
        return len(self.bits)


@dataclass
class DecodeReport:
    messages: list[int]
    row_status: list[str]
    structural_checks: dict[str, bool] = field(default_factory=dict)

    @property
    def clean(self) -> bool:
        return all(status == "clean" for status in self.row_status)

    def to_dict(self) -> dict:
        return {
            "messages": self.messages,
            "row_status": self.row_status,
            "structural_checks": self.structural_checks,
        }


def codeword_length(chain: BinaryChain, m: int) -> int:
    return (m + compute_Z(chain)) * chain.n + 1


def columns(rows: Sequence[str]) -> list[str]:
    return ["".join(col) for col in zip(*rows)]


def stitch(rows: Sequence[str], order: Sequence[int] | None = None) -> str:
    """Concatenate the array's columns with one-symbol overlap.

    ``order`` lists 1-based column indices; default is left to right.
    """
    cols = columns(rows)
    if order is None:
        order = range(1, len(cols) + 1)
    picked = [cols[j - 1] for j in order]
    word = picked[0]
    for prev_j, j, col in zip(order, list(order)[1:], picked[1:]):
        if word[-1] != col[0]:
            raise NotExtendable(f"column {prev_j} ends in {word[-1]}, column {j} starts with {col[0]}")
        word += col[1:]
    return word


def split(word: str, chain: BinaryChain, m: int) -> list[str]:
    """Rebuild the ``(1+m+Z) x n`` array from a stitched word."""
    expected = codeword_length(chain, m)
    if len(word) != expected:
        raise BadLength(f"word has length {len(word)}, expected {expected}")
    K = 1 + m + compute_Z(chain)
    cols = [word[j * (K - 1) : j * (K - 1) + K] for j in range(chain.n)]
    return ["".join(col[i] for col in cols) for i in range(K)]


def assemble(chain: BinaryChain, messages: Sequence[int]) -> list[str]:
    """Canonical-domain array for ``messages``."""
    rows = [build_u_pi(chain)]
    for index in messages:
        rows.append(place_row(rows[-1], unrank_message(chain, index)))
    rows += plan_transition(chain, rows[-1])
    return rows


def encode(chain: BinaryChain, messages: Sequence[int]) -> Codeword:
    word = stitch(assemble(chain, messages))
    if chain.complemented:
        word = complement(word)
    return Codeword(word, chain, len(messages))


def decode(chain: BinaryChain, m: int, word: str) -> DecodeReport:
    """Recover the messages; corrupted payload rows are flagged, not raised."""
    if chain.complemented:
        word = complement(word)
    rows = split(word, chain, m)
    u_pi = build_u_pi(chain)
    messages: list[int] = []
    status: list[str] = []
    prev = u_pi
    for row in rows[1 : m + 1]:
        try:
            messages.append(rank_message(chain, extract_row(chain, prev, row)))
            status.append("clean")
        except CompositionViolation:
            messages.append(0)
            status.append("detected")
        prev = row
    checks = {
        "first_row": rows[0] == u_pi,
        "final_row": rows[-1] == sigma_left(u_pi),
        "transition_valid": validate_array(chain, rows[m:]).ok,
    }
    return DecodeReport(messages, status, checks)


def pattern_counts(word: str) -> dict[str, int]:
    found = Counter(word[i : i + 2] for i in range(len(word) - 1))
    return {e: found[e] for e in EDGES}


def write_container(codeword: Codeword, payload_bit_length: int) -> bytes:
    chain = codeword.chain
    counts = chain.original_counts()
    header = _HEADER.pack(
        MAGIC, VERSION, chain.n, counts["00"], counts["01"], counts["10"], counts["11"],
        codeword.m, compute_Z(chain), payload_bit_length,
    )
    bits = codeword.bits
    pad = -len(bits) % 8
    body = int(bits + "0" * pad, 2).to_bytes((len(bits) + pad) // 8, "big") if bits else b""
    return header + body


def read_container(data: bytes) -> tuple[Codeword, int]:
    if len(data) < 4 or data[:4] != MAGIC:
        raise BadMagic(f"expected magic {MAGIC!r}, got {data[:4]!r}")
    if len(data) < 5:
        raise TruncatedFile("missing version byte")
    if data[4] != VERSION:
        raise BadVersion(f"unsupported container version {data[4]}")
    if len(data) < _HEADER.size:
        raise TruncatedFile(f"header needs {_HEADER.size} bytes, got {len(data)}")
    _, _, n, c00, c01, c10, c11, m, Z, payload_bits = _HEADER.unpack_from(data)
    try:
        chain = validate_chain(n, c00, c01, c10, c11)
    except ChainError as exc:
        raise HeaderInconsistent(f"header chain is invalid: {exc}") from exc
    if Z != compute_Z(chain):
        raise HeaderInconsistent(f"header Z={Z}, chain gives Z={compute_Z(chain)}")
    N = (m + Z) * n + 1
    body = data[_HEADER.size :]
    nbytes = (N + 7) // 8
    if len(body) < nbytes:
        raise TruncatedFile(f"codeword needs {nbytes} bytes, got {len(body)}")
    bits = format(int.from_bytes(body[:nbytes], "big"), f"0{nbytes * 8}b")[:N]
    return Codeword(bits, chain, m), payload_bits
