import random

from hypothesis import strategies as st

from weakcode.chain import validate_chain

REFERENCE_ARRAY = [
    "00000011",
    "10010000",
    "00000011",
    "00101000",
    "00000110",
    "00011000",
    "00000110",
]


def random_chain(rng: random.Random, max_n: int = 40):
    c01 = rng.randint(1, max_n // 2 - 1)
    rest = rng.randint(1, max_n - 2 * c01)
    c00 = rng.randint(0, rest)
    return validate_chain(2 * c01 + rest, c00, c01, c01, rest - c00)


def random_row(rng: random.Random, chain) -> str:
    bits = ["0"] * chain.n1 + ["1"] * chain.n2
    rng.shuffle(bits)
    return "".join(bits)


@st.composite
def chains(draw, max_n: int = 40):
    c01 = draw(st.integers(1, max_n // 2 - 1))
    rest = draw(st.integers(1, max_n - 2 * c01))
    c00 = draw(st.integers(0, rest))
    return validate_chain(2 * c01 + rest, c00, c01, c01, rest - c00)


@st.composite
def rows_for(draw, chain):
    ones = draw(st.permutations(range(chain.n)))[: chain.n2]
    return "".join("1" if j in ones else "0" for j in range(chain.n))
