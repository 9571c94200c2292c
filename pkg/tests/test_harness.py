import pytest

from weakcode.codec import decode, encode
from weakcode.harness import (
    BaselineFixture,
    ChannelSpec,
    PositionOutOfRange,
    baseline_reassemble,
    classify_positions,
    covering_cells,
    flip_cells,
    inject,
    report_csv_line,
    run_trials,
)


def test_inject_fixed():
    assert inject("000000", ChannelSpec.fixed([1, 6])) == ("100001", [1, 6])


def test_inject_fixed_out_of_range():
    with pytest.raises(PositionOutOfRange):
        inject("000000", ChannelSpec.fixed([7]))


def test_inject_bsc_zero():
    word = "0110100111"
    assert inject(word, ChannelSpec.bsc(0.0, 5)) == (word, [])


def test_inject_bsc_one():
    assert inject("0101", ChannelSpec.bsc(1.0, 5))[0] == "1010"


def test_inject_random_flips():
    word = "0" * 40
    out, flipped = inject(word, ChannelSpec.flips(3, 42))
    assert sum(a != b for a, b in zip(word, out)) == 3 == len(flipped)
    assert inject(word, ChannelSpec.flips(3, 42)) == (out, flipped)


def test_inject_respects_allowed():
    out, flipped = inject("0" * 20, ChannelSpec.flips(4, 1), allowed=[2, 3, 5, 7, 11])
    assert set(flipped) <= {2, 3, 5, 7, 11}


def test_channel_validation():
    with pytest.raises(ValueError):
        ChannelSpec.bsc(1.5, 0)
    with pytest.raises(ValueError):
        ChannelSpec("erasure")


def test_classify_positions(ex_chain):
    regions = classify_positions(ex_chain, 2)
    assert len(regions) == 49
    assert regions[1] == "u_pi_row"
    assert regions[2] == "payload"
    assert covering_cells(ex_chain, 2, 30) == [(5, 6)]
    assert regions[30] == "transition"
    # column boundaries are shared between row 7 and the next column's row 1
    assert covering_cells(ex_chain, 2, 7) == [(1, 7), (2, 1)]
    assert regions[7] == "transition"
    assert sum(r == "payload" for r in regions.values()) == 2 * 8


def test_region_soundness(ex_chain):
    word = encode(ex_chain, [12, 0]).bits
    for p, region in classify_positions(ex_chain, 2).items():
        if region == "payload":
            continue
        corrupted, _ = inject(word, ChannelSpec.fixed([p]))
        assert decode(ex_chain, 2, corrupted).messages == [12, 0]


def test_every_payload_flip_is_detected(ex_chain):
    word = encode(ex_chain, [12, 0]).bits
    for p, region in classify_positions(ex_chain, 2).items():
        if region == "payload":
            corrupted, _ = inject(word, ChannelSpec.fixed([p]))
            assert not decode(ex_chain, 2, corrupted).clean


def test_trials_zero_rate(ex_chain):
    report = run_trials(ex_chain, 2, [12, 0], ChannelSpec.bsc(0.0, 1), 100)
    assert report.recovered == 100


def test_trials_transition_region(ex_chain):
    report = run_trials(ex_chain, 2, [12, 0], ChannelSpec.flips(3, 11), 300, region="transition")
    assert report.recovered == 300
    assert report.per_region["transition"] == 900


def test_trials_payload_flip_detected(ex_chain):
    report = run_trials(ex_chain, 2, [12, 0], ChannelSpec.fixed([2]), 25)
    assert report.detected == 25


def test_trials_deterministic_and_consistent(ex_chain):
    channel = ChannelSpec.bsc(0.05, 99)
    a = run_trials(ex_chain, 2, [12, 0], channel, 200)
    b = run_trials(ex_chain, 2, [12, 0], channel, 200)
    assert a == b
    assert a.recovered + a.detected + a.undetected == a.trials == 200


def test_csv_line(ex_chain):
    channel = ChannelSpec.bsc(0.0, 1)
    report = run_trials(ex_chain, 2, [12, 0], channel, 10)
    assert report_csv_line(ex_chain, 2, channel, report) == '"8:4,2,2,0",2,bsc(0.0),10,10,0,0\n'


def test_fixture_markers_distinct():
    fixture = BaselineFixture()
    markers = fixture.markers
    assert len(set(markers.values())) == 8
    assert markers == {1: "00000", 2: "00001", 3: "00010", 4: "00101",
                       5: "01000", 6: "01010", 7: "10100", 8: "10000"}
    assert len(fixture.word()) == 65


def test_baseline_clean():
    result = baseline_reassemble(BaselineFixture().array)
    assert not result.ambiguous
    assert result.payloads == ["10010000", "00001100"]


def test_baseline_swap_goes_unnoticed():
    array = flip_cells(BaselineFixture().array, [(4, 5), (4, 6)])
    result = baseline_reassemble(array)
    assert not result.ambiguous
    assert result.payloads == ["10100000", "00001100"]


def test_baseline_collision_is_ambiguous():
    array = flip_cells(BaselineFixture().array, [(2, 1)])
    result = baseline_reassemble(array)
    assert result.ambiguous and result.payloads is None
    assert len(result.candidates) == 2
    assert ["10010000", "00001100"] in result.candidates


def test_baseline_shape_check():
    with pytest.raises(ValueError):
        baseline_reassemble(["0" * 8] * 7)
