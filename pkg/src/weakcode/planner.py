"""Transition rows from the last payload row to the fixed target row.

Each column of a pair ``(r, s)`` is a *flow* from ``r[j]`` to ``s[j]``.  All
constructions here group columns by flow class and fill each class left to
right, so the output is fully determined by the inputs.
"""
from __future__ import annotations

from dataclasses import dataclass

from .array import build_u_pi, is_composition_row, sigma_left
from .chain import BinaryChain, BudgetExceeded, compute_Z


class TwoStepInfeasible(ValueError):
    pass


class PreconditionViolated(ValueError):
    pass


class BadComposition(ValueError):
    pass


@dataclass(frozen=True)
class FlowProfile:
    M: int
    m00: int
    m01: int
    m10: int


def flow_profile(r: str, s: str) -> FlowProfile:
    counts = {"00": 0, "01": 0, "10": 0, "11": 0}
    for a, b in zip(r, s):
        counts[a + b] += 1
    return FlowProfile(counts["11"], counts["00"], counts["01"], counts["10"])


def _classes(r: str, s: str) -> dict[str, list[int]]:
    out: dict[str, list[int]] = {"00": [], "01": [], "10": [], "11": []}
    for j, (a, b) in enumerate(zip(r, s)):
        out[a + b].append(j)
    return out


def _check_rows(chain: BinaryChain, *rows: str) -> None:
    for row in rows:
        if not is_composition_row(chain, row):
            raise PreconditionViolated(
                f"{row!r} is not a row with {chain.n1} zeros and {chain.n2} ones"
            )


def two_step(chain: BinaryChain, r: str, s: str) -> str:
    """Middle row of a direct ``r -> mid -> s`` transition."""
    _check_rows(chain, r, s)
    M = flow_profile(r, s).M
    if M < max(chain.n_star, chain.lb):
        raise TwoStepInfeasible(f"M={M} < max(n*={chain.n_star}, LB={chain.lb})")
    cls = _classes(r, s)
    mid = ["0"] * chain.n
    via_zero = chain.n1 - 2 * chain.n2 + M + chain.n_star
    for j in cls["00"][via_zero:]:
        mid[j] = "1"
    for j in cls["11"][: chain.n_star]:
        mid[j] = "1"
    return "".join(mid)


def _fill(n: int, plan: list[tuple[list[int], str, str]]) -> tuple[str, str]:
    top = ["0"] * n
    bottom = ["0"] * n
    for columns, a, b in plan:
        for j in columns:
            top[j] = a
            bottom[j] = b
    return "".join(top), "".join(bottom)


def boost_case1(chain: BinaryChain, r: str, s: str) -> tuple[str, str]:
    """Launch/landing rows raising the 1-1 flow count by ``c00`` (needs n* <= M < LB)."""
    _check_rows(chain, r, s)
    M = flow_profile(r, s).M
    if not chain.n_star <= M < chain.lb:
        raise PreconditionViolated(f"case 1 needs {chain.n_star} <= M < {chain.lb}, got M={M}")
    cls = _classes(r, s)
    b = chain.c01 - (chain.n1 - chain.n2 + M)
    k = chain.n_star
    return _fill(chain.n, [
        (cls["11"][:k], "1", "1"),
        (cls["11"][k:], "0", "0"),
        (cls["00"], "1", "1"),
        (cls["01"][:b], "1", "0"),
        (cls["01"][b:], "0", "0"),
        (cls["10"][:b], "0", "1"),
        (cls["10"][b:], "0", "0"),
    ])


def boost_case2a(chain: BinaryChain, r: str, s: str) -> tuple[str, str]:
    """Raise M by ``2*c10`` when ``n* - M >= c10``."""
    _check_rows(chain, r, s)
    M = flow_profile(r, s).M
    if not (M < chain.n_star and chain.n_star - M >= chain.c10):
        raise PreconditionViolated(
            f"case 2a needs M < n* and n* - M >= c10; M={M}, n*={chain.n_star}, c10={chain.c10}"
        )
    cls = _classes(r, s)
    c10 = chain.c10
    mid = chain.n_star - M - c10
    return _fill(chain.n, [
        (cls["11"], "1", "1"),
        (cls["10"][:c10], "1", "1"),
        (cls["10"][c10 : c10 + mid], "1", "0"),
        (cls["10"][c10 + mid :], "0", "0"),
        (cls["01"][:c10], "1", "1"),
        (cls["01"][c10 : c10 + mid], "0", "1"),
        (cls["01"][c10 + mid :], "0", "0"),
        (cls["00"], "0", "0"),
    ])


def boost_case2b(chain: BinaryChain, r: str, s: str) -> tuple[str, str]:
    """Raise M to exactly n* when ``0 < n* - M < c10``."""
    _check_rows(chain, r, s)
    M = flow_profile(r, s).M
    d = chain.n_star - M
    if not (M < chain.n_star and d < chain.c10):
        raise PreconditionViolated(
            f"case 2b needs M < n* and n* - M < c10; M={M}, n*={chain.n_star}, c10={chain.c10}"
        )
    cls = _classes(r, s)
    rest = chain.c10 - d
    return _fill(chain.n, [
        (cls["11"], "1", "1"),
        (cls["10"][:d], "1", "1"),
        (cls["10"][d : d + rest], "0", "1"),
        (cls["10"][d + rest :], "0", "0"),
        (cls["01"][:d], "0", "1"),
        (cls["01"][d : d + chain.c10], "1", "0"),
        (cls["01"][d + chain.c10 :], "0", "0"),
        (cls["00"], "0", "0"),
    ])


def close_gap(chain: BinaryChain, r: str) -> list[str]:
    """Rows after ``r`` up to the first arrival at ``sigma_left(U_pi)``.

    Boosting rows are added symmetrically around the open gap until a direct
    two-step transition fits.
    """
    if not is_composition_row(chain, r):
        raise BadComposition(f"{r!r} is not a row with {chain.n1} zeros and {chain.n2} ones")
    s = sigma_left(build_u_pi(chain))
    Z = compute_Z(chain)
    prefix: list[str] = []
    suffix: list[str] = []
    top, bottom = r, s
    while True:
        M = flow_profile(top, bottom).M
        if M >= max(chain.n_star, chain.lb):
            break
        if M >= chain.n_star:
            top, bottom = boost_case1(chain, top, bottom)
        elif chain.n_star - M >= chain.c10:
            top, bottom = boost_case2a(chain, top, bottom)
        else:
            top, bottom = boost_case2b(chain, top, bottom)
        prefix.append(top)
        suffix.insert(0, bottom)
        if 2 * len(prefix) + 2 > Z:
            raise BudgetExceeded(f"transition from {r!r} needs more than Z={Z} rows")
    return prefix + [two_step(chain, top, bottom)] + suffix + [s]


def plan_transition(chain: BinaryChain, r: str) -> list[str]:
    """Exactly ``Z`` rows leading from ``r`` to ``sigma_left(U_pi)``.

    Once the target is reached it is held by self-transitions, two rows at a
    time, until ``Z`` rows have been produced.
    """
    rows = close_gap(chain, r)
    s = rows[-1]
    hold = two_step(chain, s, s)
    while len(rows) < compute_Z(chain):
        rows += [hold, s]
    return rows
