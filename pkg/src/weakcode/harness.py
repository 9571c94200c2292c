"""Fault injection and payload-survival measurement.

Codeword positions are 1-based throughout this module, matching how arrays
and stitched words are described (row 1 is U_pi, position 1 is the first
symbol of column 1).
"""
from __future__ import annotations

import csv
import io
import itertools
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .array import split_by_reference
from .chain import BinaryChain, compute_Z
from .codec import decode, encode, stitch

REGIONS = ("u_pi_row", "payload", "transition")


class PositionOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class ChannelSpec:
    """One of ``fixed_positions``, ``random_flips`` or ``bsc``."""

    kind: str
    positions: tuple[int, ...] = ()
    count: int = 0
    epsilon: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("fixed_positions", "random_flips", "bsc"):
            raise ValueError(f"unknown channel kind {self.kind!r}")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must lie in [0, 1], got {self.epsilon}")
        if self.count < 0:
            raise ValueError("flip count must be non-negative")

    @classmethod
    def fixed(cls, positions: Iterable[int]) -> "ChannelSpec":
        return cls("fixed_positions", positions=tuple(positions))

    @classmethod
    def flips(cls, count: int, seed: int) -> "ChannelSpec":
        return cls("random_flips", count=count, seed=seed)

    @classmethod
    def bsc(cls, epsilon: float, seed: int) -> "ChannelSpec":
        return cls("bsc", epsilon=epsilon, seed=seed)

    def describe(self) -> str:
        if self.kind == "fixed_positions":
            return "fixed(" + " ".join(map(str, self.positions)) + ")"
        if self.kind == "random_flips":
            return f"flips({self.count})"
        return f"bsc({self.epsilon})"


def _flip(word: str, positions: Iterable[int]) -> str:
    bits = list(word)
    for p in positions:
        bits[p - 1] = "1" if bits[p - 1] == "0" else "0"
    return "".join(bits)


def inject(
    word: str,
    channel: ChannelSpec,
    allowed: Sequence[int] | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[str, list[int]]:
    """Corrupt ``word``; random channels draw only from ``allowed`` when given.

    ``rng`` overrides the generator seeded from ``channel.seed``.
    """
    N = len(word)
    pool = np.arange(1, N + 1) if allowed is None else np.asarray(sorted(allowed), dtype=int)
    if pool.size and (pool.min() < 1 or pool.max() > N):
        raise PositionOutOfRange(f"allowed positions must lie in [1, {N}]")
    if channel.kind == "fixed_positions":
        for p in channel.positions:
            if not 1 <= p <= N:
                raise PositionOutOfRange(f"position {p} outside [1, {N}]")
        flipped = sorted(set(channel.positions))
        return _flip(word, flipped), flipped

    if rng is None:
        rng = np.random.default_rng(channel.seed)
    if channel.kind == "random_flips":
        if channel.count > pool.size:
            raise PositionOutOfRange(f"cannot flip {channel.count} of {pool.size} positions")
        flipped = sorted(int(p) for p in rng.choice(pool, size=channel.count, replace=False))
    else:
        flipped = [int(p) for p in pool[rng.random(pool.size) < channel.epsilon]]
    return _flip(word, flipped), flipped


def covering_cells(chain: BinaryChain, m: int, position: int) -> list[tuple[int, int]]:
    """``(column, row)`` cells that hold a codeword position (two at boundaries)."""
    K = 1 + m + compute_Z(chain)
    cells = []
    for col in range(1, chain.n + 1):
        row = position - (col - 1) * (K - 1)
        if 1 <= row <= K:
            cells.append((col, row))
    return cells


def classify_positions(chain: BinaryChain, m: int) -> dict[int, str]:
    N = (m + compute_Z(chain)) * chain.n + 1
    regions = {}
    for p in range(1, N + 1):
        rows = {row for _, row in covering_cells(chain, m, p)}
        if any(2 <= row <= m + 1 for row in rows):
            regions[p] = "payload"
        elif rows == {1} and len(covering_cells(chain, m, p)) == 1:
            regions[p] = "u_pi_row"
        else:
            regions[p] = "transition"
    return regions


@dataclass
class TrialReport:
    trials: int = 0
    recovered: int = 0
    detected: int = 0
    undetected: int = 0
    per_region: dict[str, int] = field(default_factory=lambda: dict.fromkeys(REGIONS, 0))

    def merge(self, other: "TrialReport") -> "TrialReport":
        return TrialReport(
            self.trials + other.trials,
            self.recovered + other.recovered,
            self.detected + other.detected,
            self.undetected + other.undetected,
            {r: self.per_region[r] + other.per_region[r] for r in REGIONS},
        )

    def to_dict(self) -> dict:
        return asdict(self)


def _trial(chain, m, messages, word, channel, allowed, regions, seed_seq) -> TrialReport:
    corrupted, flipped = inject(word, channel, allowed, np.random.default_rng(seed_seq))
    report = decode(chain, m, corrupted)
    out = TrialReport(trials=1)
    for p in flipped:
        out.per_region[regions[p]] += 1
    if report.clean and report.messages == list(messages):
        out.recovered = 1
    elif not report.clean:
        out.detected = 1
    else:
        out.undetected = 1
    return out


def run_trials(
    chain: BinaryChain,
    m: int,
    messages: Sequence[int],
    channel: ChannelSpec,
    trials: int,
    region: str | None = None,
) -> TrialReport:
    """Encode once, corrupt and decode ``trials`` times, and tally outcomes.

    Each trial gets its own generator spawned from ``channel.seed``, so the
    result does not depend on the order trials are evaluated in.  ``region``
    confines random flips to one class of positions.
    """
    if len(messages) != m:
        raise ValueError(f"expected {m} messages, got {len(messages)}")
    word = encode(chain, messages).bits
    regions = classify_positions(chain, m)
    allowed = None if region is None else [p for p, r in regions.items() if r == region]
    seeds = np.random.SeedSequence(channel.seed).spawn(trials)
    total = TrialReport()
    for seed_seq in seeds:
        total = total.merge(_trial(chain, m, messages, word, channel, allowed, regions, seed_seq))
    return total


def report_csv_line(chain: BinaryChain, m: int, channel: ChannelSpec, report: TrialReport) -> str:
    counts = chain.original_counts()
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow([
        f"{chain.n}:{counts['00']},{counts['01']},{counts['10']},{counts['11']}",
        m, channel.describe(), report.trials, report.recovered, report.detected, report.undetected,
    ])
    return buf.getvalue()


CSV_HEADER = "chain,m,channel,trials,recovered,detected,undetected\n"


# The fixed-order scheme is compared against marker-based reassembly, where
# the decoder recovers column order from distinct column prefixes.  The array
# below encodes two messages that way on the chain n=8, counts (4, 2, 2, 0).

BASELINE_ARRAY = (
    "00000011",
    "00001100",
    "00010010",
    "00100100",
    "01010000",
    "10000100",
    "00000011",
    "00110000",
    "10000100",
)


@dataclass(frozen=True)
class BaselineFixture:
    array: tuple[str, ...] = BASELINE_ARRAY
    marker_rows: int = 5
    payload_rows: tuple[int, ...] = (6, 7)
    stitch_order: tuple[int, ...] = (1, 7, 2, 3, 4, 5, 6, 8)

    @property
    def markers(self) -> dict[int, str]:
        return {
            j: "".join(row[j - 1] for row in self.array[: self.marker_rows])
            for j in range(1, len(self.array[0]) + 1)
        }

    def word(self) -> str:
        return stitch(self.array, self.stitch_order)


@dataclass
class BaselineResult:
    payloads: list[str] | None
    ambiguous: bool = False
    candidates: list[list[str]] = field(default_factory=list)


def flip_cells(array: Sequence[str], cells: Iterable[tuple[int, int]]) -> list[str]:
    """Flip the 1-based ``(row, column)`` entries of an array."""
    rows = [list(r) for r in array]
    for i, j in cells:
        rows[i - 1][j - 1] = "1" if rows[i - 1][j - 1] == "0" else "0"
    return ["".join(r) for r in rows]


def _baseline_payloads(fixture: BaselineFixture, rows: Sequence[str], identity: dict[int, int]) -> list[str]:
    # identity maps original column -> received column
    n = len(rows[0])
    ordered = ["".join(row[identity[j] - 1] for j in range(1, n + 1)) for row in rows]
    prev = fixture.array[fixture.marker_rows - 1]
    out = []
    for i in fixture.payload_rows:
        c1, c2 = split_by_reference(prev, ordered[i - 1])
        out.append(c1 + c2)
        prev = ordered[i - 1]
    return out


def baseline_reassemble(array: Sequence[str], fixture: BaselineFixture = BaselineFixture()) -> BaselineResult:
    """Marker-based column recovery followed by row-by-row payload extraction."""
    if len(array) != len(fixture.array) or any(len(r) != len(fixture.array[0]) for r in array):
        raise ValueError("array shape does not match the fixture")
    markers = fixture.markers
    by_marker = {marker: j for j, marker in markers.items()}
    claims: dict[int, list[int]] = {j: [] for j in markers}
    for col in range(1, len(array[0]) + 1):
        seen = "".join(row[col - 1] for row in array[: fixture.marker_rows])
        if seen in by_marker:
            claims[by_marker[seen]].append(col)

    settled = {j: cols[0] for j, cols in claims.items() if len(cols) == 1}
    if len(settled) == len(markers):
        return BaselineResult(_baseline_payloads(fixture, array, settled))

    open_ids = [j for j in markers if j not in settled]
    open_cols = [c for c in range(1, len(array[0]) + 1) if c not in settled.values()]
    candidates = []
    for perm in itertools.permutations(open_cols):
        identity = {**settled, **dict(zip(open_ids, perm))}
        payloads = _baseline_payloads(fixture, array, identity)
        if payloads not in candidates:
            candidates.append(payloads)
    return BaselineResult(None, ambiguous=True, candidates=candidates)


def baseline_scenarios(fixture: BaselineFixture = BaselineFixture()) -> list[tuple[str, BaselineResult]]:
    return [
        ("unmodified", baseline_reassemble(fixture.array, fixture)),
        ("flip (4,5) and (4,6)", baseline_reassemble(flip_cells(fixture.array, [(4, 5), (4, 6)]), fixture)),
        ("flip (2,1)", baseline_reassemble(flip_cells(fixture.array, [(2, 1)]), fixture)),
    ]

