"""Row-by-row arrays whose consecutive row pairs realize the chain's edges.

Rows are strings over ``"01"``.  An array is any sequence of equal-length rows.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .chain import EDGES, BinaryChain
from .composition import CompositionPair


class CompositionViolation(ValueError):
    """Extracted sections do not have the chain's composition.

    ``pair`` holds whatever was read, so callers can inspect the damage.
    """

    def __init__(self, which: str, pair: CompositionPair, detail: str):
        super().__init__(f"{which}: {detail}")
        self.which = which
        self.pair = pair


def build_u_pi(chain: BinaryChain) -> str:
    return "0" * chain.n1 + "1" * chain.n2


def sigma_left(row: str) -> str:
    return row[1:] + row[:1]


def complement(word: str) -> str:
    return word.translate(str.maketrans("01", "10"))


def is_composition_row(chain: BinaryChain, row: str) -> bool:
    return len(row) == chain.n and row.count("1") == chain.n2 and set(row) <= {"0", "1"}


def place_row(prev: str, pair: CompositionPair) -> str:
    """Write ``c1`` under the zeros of ``prev`` and ``c2`` under its ones."""
    sections = {"0": iter(pair.c1), "1": iter(pair.c2)}
    return "".join(next(sections[bit]) for bit in prev)


def split_by_reference(prev: str, row: str) -> CompositionPair:
    """Undo :func:`place_row` without any composition check."""
    c1 = "".join(b for a, b in zip(prev, row) if a == "0")
    c2 = "".join(b for a, b in zip(prev, row) if a == "1")
    return CompositionPair(c1, c2)


def extract_row(chain: BinaryChain, prev: str, row: str) -> CompositionPair:
    pair = split_by_reference(prev, row)
    for which, word, length, ones in (
        ("c1", pair.c1, chain.n1, chain.c01),
        ("c2", pair.c2, chain.n2, chain.c11),
    ):
        if len(word) != length:
            raise CompositionViolation(which, pair, f"length {len(word)}, expected {length}")
        if word.count("1") != ones:
            raise CompositionViolation(
                which, pair, f"{word.count('1')} ones, expected {ones}"
            )
    return pair


def edge_counts(top: str, bottom: str) -> dict[str, int]:
    """How often each edge appears as a column of the two-row array."""
    found = Counter(a + b for a, b in zip(top, bottom))
    return {e: found[e] for e in EDGES}


@dataclass
class ArrayReport:
    a1: bool = True
    a2: bool = True
    # (column, row) of each forbidden edge; rows are 1-based, edge starts there
    a1_violations: list[tuple[int, int, str]] = field(default_factory=list)
    # (top row, bottom row, edge, found, expected)
    a2_violations: list[tuple[int, int, str, int, int]] = field(default_factory=list)
    shape_errors: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.a1 and self.a2 and not self.shape_errors

    def first_a2(self) -> tuple[int, int, str, int, int] | None:
        return self.a2_violations[0] if self.a2_violations else None


def validate_array(chain: BinaryChain, rows: Sequence[str]) -> ArrayReport:
    """Check (A1) and (A2) on every column and every consecutive row pair."""
    report = ArrayReport()
    if len(rows) < 2:
        report.shape_errors.append(f"need at least 2 rows, got {len(rows)}")
    for i, row in enumerate(rows, start=1):
        if len(row) != chain.n:
            report.shape_errors.append(f"row {i} has length {len(row)}, expected {chain.n}")
    if report.shape_errors:
        report.a1 = report.a2 = False
        return report

    forbidden = {e for e in EDGES if chain.count(e) == 0}
    for i in range(len(rows) - 1):
        counts = edge_counts(rows[i], rows[i + 1])
        for e in EDGES:
            if counts[e] != chain.count(e):
                report.a2 = False
                report.a2_violations.append((i + 1, i + 2, e, counts[e], chain.count(e)))
        for j, (a, b) in enumerate(zip(rows[i], rows[i + 1]), start=1):
            if a + b in forbidden:
                report.a1 = False
                report.a1_violations.append((j, i + 1, a + b))
    return report
