import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from weakcode.array import complement
from weakcode.chain import compute_Z, validate_chain
from weakcode.codec import (
    BadLength,
    BadMagic,
    BadVersion,
    Codeword,
    HeaderInconsistent,
    NotExtendable,
    TruncatedFile,
    decode,
    encode,
    pattern_counts,
    read_container,
    split,
    stitch,
    write_container,
)
from weakcode.composition import RankOutOfRange, row_capacity
from weakcode.harness import BASELINE_ARRAY, covering_cells

from helpers import REFERENCE_ARRAY, chains


def count_pattern(word, pattern):
    return sum(word.startswith(pattern, i) for i in range(len(word)))


def test_pattern_counts_small():
    assert pattern_counts("000") == {"00": 2, "01": 0, "10": 0, "11": 0}


@given(st.text("01", min_size=2, max_size=200))
def test_pattern_counts_oracle(word):
    counts = pattern_counts(word)
    assert counts == {p: count_pattern(word, p) for p in ("00", "01", "10", "11")}
    assert sum(counts.values()) == len(word) - 1


def test_stitch_reference_array():
    word = stitch(REFERENCE_ARRAY)
    assert len(word) == 49
    assert pattern_counts(word) == {"00": 24, "01": 12, "10": 12, "11": 0}


def test_stitch_baseline_order():
    word = stitch(BASELINE_ARRAY, (1, 7, 2, 3, 4, 5, 6, 8))
    assert len(word) == 65
    assert pattern_counts(word) == {"00": 32, "01": 16, "10": 16, "11": 0}


def test_stitch_two_rows():
    assert stitch(["00000011", "00000110"]) == "000000110"


def test_stitch_not_extendable():
    with pytest.raises(NotExtendable):
        stitch(["00010000", "00000000"])


def test_split_round_trip(ex_chain):
    assert split(stitch(REFERENCE_ARRAY), ex_chain, 2) == REFERENCE_ARRAY


def test_split_bad_length(ex_chain):
    with pytest.raises(BadLength):
        split("0" * 48, ex_chain, 2)


def test_encode_reference_messages(ex_chain):
    word = encode(ex_chain, [12, 0])
    assert word.N == 49
    assert pattern_counts(word.bits) == {"00": 24, "01": 12, "10": 12, "11": 0}
    rows = split(word.bits, ex_chain, 2)
    assert rows[:3] == REFERENCE_ARRAY[:3]


def test_encode_no_messages(ex_chain):
    word = encode(ex_chain, [])
    assert word.N == 33
    assert pattern_counts(word.bits) == {"00": 16, "01": 8, "10": 8, "11": 0}


def test_encode_rank_out_of_range(ex_chain):
    with pytest.raises(RankOutOfRange):
        encode(ex_chain, [15])


def test_decode_round_trip(ex_chain):
    report = decode(ex_chain, 2, encode(ex_chain, [12, 0]).bits)
    assert report.messages == [12, 0]
    assert report.row_status == ["clean", "clean"]
    assert all(report.structural_checks.values())


def test_decode_reference_word(ex_chain):
    # transition rows differ from ours; the payload is all that matters
    report = decode(ex_chain, 2, stitch(REFERENCE_ARRAY))
    assert report.messages == [12, 0] and report.clean
    assert all(report.structural_checks.values())


def flip(word, position):
    i = position - 1
    return word[:i] + ("1" if word[i] == "0" else "0") + word[i + 1 :]


def test_decode_transition_flip(ex_chain):
    word = stitch(REFERENCE_ARRAY)
    report = decode(ex_chain, 2, flip(word, 30))
    assert report.messages == [12, 0] and report.clean
    # position 30 is row 6 of column 5: the final row is untouched
    assert report.structural_checks["final_row"]
    assert not report.structural_checks["transition_valid"]


def test_decode_payload_flip(ex_chain):
    report = decode(ex_chain, 2, flip(stitch(REFERENCE_ARRAY), 2))
    assert report.row_status[0] == "detected"


def test_decode_bad_length(ex_chain):
    with pytest.raises(BadLength):
        decode(ex_chain, 2, "0" * 48)


def test_injective_small(ex_chain):
    words = {encode(ex_chain, [a, b]).bits for a, b in itertools.product(range(15), repeat=2)}
    assert len(words) == 225


def test_complemented_chain():
    chain = validate_chain(8, 0, 2, 2, 4)
    word = encode(chain, [12, 0])
    assert pattern_counts(word.bits) == {"00": 0, "01": 12, "10": 12, "11": 24}
    assert word.bits == complement(encode(validate_chain(8, 4, 2, 2, 0), [12, 0]).bits)
    assert decode(chain, 2, word.bits).messages == [12, 0]


@settings(max_examples=200)
@given(chains(), st.integers(0, 6), st.integers(0, 2**32 - 1))
def test_exact_frequencies_and_round_trip(chain, m, seed):
    rng = random.Random(seed)
    B, _ = row_capacity(chain)
    messages = [rng.randrange(B) for _ in range(m)]
    word = encode(chain, messages)
    Z = compute_Z(chain)
    assert word.N == (m + Z) * chain.n + 1
    counts = pattern_counts(word.bits)
    assert counts == {e: c * (m + Z) for e, c in chain.original_counts().items()}
    assert decode(chain, m, word.bits).messages == messages


def test_decode_round_trip_many():
    rng = random.Random(2024)
    for _ in range(10_000):
        chain = validate_chain(*rng.choice([(8, 4, 2, 2, 0), (10, 1, 4, 4, 1), (10, 4, 1, 1, 4), (9, 1, 2, 2, 4)]))
        B, _ = row_capacity(chain)
        messages = [rng.randrange(B) for _ in range(rng.randint(0, 4))]
        assert decode(chain, len(messages), encode(chain, messages).bits).messages == messages


def test_fixed_order_resilience(ex_chain):
    word = encode(ex_chain, [12, 0]).bits
    for p in range(1, len(word) + 1):
        rows = {row for _, row in covering_cells(ex_chain, 2, p)}
        if rows & {2, 3}:
            continue
        assert decode(ex_chain, 2, flip(word, p)).messages == [12, 0]


def test_container_round_trip(ex_chain):
    word = encode(ex_chain, [12, 0])
    data = write_container(word, 6)
    assert data[:5] == b"WRBR\x01"
    assert len(data) == 5 + 32 + 7
    assert read_container(data) == (word, 6)


def test_container_complemented_round_trip():
    chain = validate_chain(10, 1, 4, 4, 1)
    word = encode(chain, [3, 24, 7])
    assert read_container(write_container(word, 12)) == (word, 12)
    chain = validate_chain(8, 0, 2, 2, 4)
    word = encode(chain, [1])
    assert read_container(write_container(word, 3)) == (word, 3)


def test_container_errors(ex_chain):
    data = bytearray(write_container(encode(ex_chain, [12, 0]), 6))
    with pytest.raises(BadMagic):
        read_container(b"WRBX" + bytes(data[4:]))
    with pytest.raises(BadVersion):
        read_container(bytes(data[:4]) + b"\x02" + bytes(data[5:]))
    with pytest.raises(TruncatedFile):
        read_container(bytes(data[:20]))
    with pytest.raises(TruncatedFile):
        read_container(bytes(data[:-1]))
    bad_z = bytearray(data)
    bad_z[5 + 6 * 4 : 5 + 7 * 4] = (6).to_bytes(4, "big")
    with pytest.raises(HeaderInconsistent):
        read_container(bytes(bad_z))


def test_codeword_length_property(ex_chain):
    word = Codeword("0" * 49, ex_chain, 2)
    assert word.N == 49
