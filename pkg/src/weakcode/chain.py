"""Integer Markov chains on primitive subgraphs of the binary de Bruijn graph.

A chain is given by edge multiplicities ``c00, c01, c10, c11`` that sum to the
block width ``n``.  Everything downstream works with these integers, so the
frequency contract of the codec is exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

EDGES = ("00", "01", "10", "11")


class ChainError(ValueError):
    """Base class for invalid chain parameters."""


class BadTotal(ChainError):
    pass


class NonStationary(ChainError):
    pass


class NotPrimitive(ChainError):
    pass


class BudgetExceeded(ChainError):
    """The transition planner would need more than Z rows for some start row."""


class OutOfRange(ValueError):
    pass


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class BinaryChain:
    """Validated chain, stored in canonical orientation (``c00 >= c11``).

    ``complemented`` records whether the caller's bit labels were swapped to
    reach that orientation.  Construct through :func:`validate_chain`.
    """

    n: int
    c00: int
    c01: int
    c10: int
    c11: int
    complemented: bool = False

    @property
    def n1(self) -> int:
        return self.c00 + self.c01

    @property
    def n2(self) -> int:
        return self.c10 + self.c11

    @property
    def n_star(self) -> int:
        return self.c11

    @property
    def lb(self) -> int:
        # minimum 1-1 flow count for a direct two-step transition
        return self.c11 + self.c10 - self.c00

    @property
    def Z(self) -> int:
        return compute_Z(self)

    def count(self, edge: str) -> int:
        """Multiplicity of ``edge`` in the canonical domain."""
        return {"00": self.c00, "01": self.c01, "10": self.c10, "11": self.c11}[edge]

    def counts(self) -> dict[str, int]:
        return {e: self.count(e) for e in EDGES}

    def original_counts(self) -> dict[str, int]:
        """Multiplicities in the caller's orientation."""
        if not self.complemented:
            return self.counts()
        return {"00": self.c11, "01": self.c10, "10": self.c01, "11": self.c00}


def _raise_violations(violations: list[tuple[type, str]]) -> None:
    kinds = tuple(dict.fromkeys(kind for kind, _ in violations))
    message = "; ".join(text for _, text in violations)
    if len(kinds) == 1:
        raise kinds[0](message)
    # an input breaking several rules is an instance of every matching error
    raise type("ChainError", kinds, {})(message)


def validate_chain(n: int, c00: int, c01: int, c10: int, c11: int) -> BinaryChain:
    """Check the multiplicities and return the chain in canonical orientation.

    All violated rules are reported together; the raised exception is an
    instance of each corresponding error class.
    """
    for name, value in (("n", n), ("c00", c00), ("c01", c01), ("c10", c10), ("c11", c11)):
        if not isinstance(value, int) or isinstance(value, bool):
            raise TypeError(f"{name} must be an int, got {value!r}")
    if n < 1:
        raise BadTotal(f"block width must be positive, got {n}")
    if min(c00, c01, c10, c11) < 0:
        raise ChainError("edge multiplicities must be non-negative")

    violations: list[tuple[type, str]] = []
    total = c00 + c01 + c10 + c11
    if total != n:
        violations.append((BadTotal, f"multiplicities sum to {total}, expected n={n}"))
    if c01 != c10:
        violations.append((NonStationary, f"c01={c01} differs from c10={c10}"))
    if c01 == 0 or c10 == 0:
        violations.append((NotPrimitive, "edges 01 and 10 must both be present"))
    elif c00 == 0 and c11 == 0:
        violations.append((NotPrimitive, "at least one self-loop must be present"))
    if violations:
        _raise_violations(violations)

    if c11 > c00:
        chain = BinaryChain(n, c11, c10, c01, c00, complemented=True)
    else:
        chain = BinaryChain(n, c00, c01, c10, c11)
    max_steps_check(chain)
    return chain


def compute_Z(chain: BinaryChain) -> int:
    """Fixed number of rows appended after the payload."""
    launch = 2 * (2 + ceil_div(chain.c10 + chain.c11 - chain.c00, chain.c00))
    case2 = 2 * (1 + ceil_div(chain.c11, 2 * chain.c01))
    return max(launch, case2)


def m_range(chain: BinaryChain) -> range:
    """Achievable 1-1 flow counts between two composition rows."""
    return range(max(0, chain.n2 - chain.n1), chain.n2 + 1)


def steps_required(chain: BinaryChain, M: int) -> int:
    """Rows the planner emits (before padding) when starting with ``M`` 1-1 flows."""
    if M not in m_range(chain):
        raise OutOfRange(f"M={M} outside {m_range(chain)}")
    steps = 0
    target = max(chain.n_star, chain.lb)
    while M < target:
        if M >= chain.n_star:
            M += chain.c00
        elif chain.n_star - M >= chain.c10:
            M += 2 * chain.c10
        else:
            M = chain.n_star
        steps += 2
    return steps + 2


def max_steps_check(chain: BinaryChain) -> int:
    """Worst-case planner length over every start row; must not exceed Z."""
    worst = max(steps_required(chain, M) for M in m_range(chain))
    Z = compute_Z(chain)
    if worst > Z:
        raise BudgetExceeded(f"planner needs {worst} rows but Z={Z} for {chain}")
    return worst


def chain_from_dict(data: dict) -> BinaryChain:
    counts = data["counts"]
    return validate_chain(
        int(data["n"]), int(counts["00"]), int(counts["01"]), int(counts["10"]), int(counts["11"])
    )


def chain_to_dict(chain: BinaryChain) -> dict:
    return {"n": chain.n, "counts": chain.original_counts()}


def load_chain(path: str | Path) -> BinaryChain:
    with open(path) as fh:
        return chain_from_dict(json.load(fh))
