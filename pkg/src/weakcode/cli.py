"""Command-line entry point: ``weakcode <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 invalid chain, 3 decode reported
corruption, 4 I/O or format error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import codec
from .chain import BinaryChain, ChainError, compute_Z, load_chain
from .composition import row_capacity
from .harness import (
    CSV_HEADER,
    ChannelSpec,
    baseline_scenarios,
    inject,
    report_csv_line,
    run_trials,
)

EXIT_OK, EXIT_USAGE, EXIT_CHAIN, EXIT_CORRUPT, EXIT_IO = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def bytes_to_bits(data: bytes) -> str:
    return "".join(format(b, "08b") for b in data)


def bits_to_bytes(bits: str) -> bytes:
    bits = bits[: len(bits) - len(bits) % 8]
    return int(bits, 2).to_bytes(len(bits) // 8, "big") if bits else b""


def frame_messages(bits: str, bits_per_row: int, m: int | None = None) -> list[int]:
    """Cut a bit string into ``bits_per_row`` chunks, zero-padding the last one."""
    if bits and bits_per_row == 0:
        raise UsageError("this chain carries no information per row; pass --messages")
    needed = -(-len(bits) // bits_per_row) if bits else 0
    if m is None:
        m = needed
    elif m < needed:
        raise UsageError(f"--m {m} is too small, the input needs {needed} rows")
    padded = bits.ljust(m * bits_per_row, "0")
    return [int(padded[i * bits_per_row : (i + 1) * bits_per_row] or "0", 2) for i in range(m)]


def unframe_messages(messages: list[int], bits_per_row: int, length: int) -> str:
    bits = "".join(format(x, f"0{bits_per_row}b")[-bits_per_row:] if bits_per_row else "" for x in messages)
    return bits[:length]


def _read_codeword(path: str, chain: BinaryChain | None) -> tuple[codec.Codeword, int, bool]:
    """Load a container or an ASCII 0/1 file; returns (codeword, payload bits, was_text)."""
    data = Path(path).read_bytes()
    if data[:4] == codec.MAGIC:
        word, payload_bits = codec.read_container(data)
        if chain is not None and chain != word.chain:
            raise ChainError("--chain does not match the container header")
        return word, payload_bits, False
    text = data.decode("ascii", errors="replace").strip()
    if not text or set(text) - {"0", "1"}:
        raise codec.ContainerError(f"{path} is neither a container nor a 0/1 text codeword")
    if chain is None:
        raise UsageError("--chain is required for text codewords")
    rows, rem = divmod(len(text) - 1, chain.n)
    m = rows - compute_Z(chain)
    if rem or m < 0:
        raise codec.BadLength(f"length {len(text)} does not fit this chain")
    _, bpr = row_capacity(chain)
    return codec.Codeword(text, chain, m), m * bpr, True


def _write_codeword(path: str, word: codec.Codeword, payload_bits: int, text: bool) -> None:
    if text:
        Path(path).write_text(word.bits + "\n")
    else:
        Path(path).write_bytes(codec.write_container(word, payload_bits))


def cmd_analyze(args) -> int:
    chain = load_chain(args.chain)
    B, bpr = row_capacity(chain)
    counts = chain.original_counts()
    Z = compute_Z(chain)
    print(f"n={chain.n}")
    print("counts=" + " ".join(f"{e}:{c}" for e, c in counts.items()))
    print(f"complemented={chain.complemented}")
    print(f"n1={chain.n1} n2={chain.n2} n*={chain.n_star} LB={chain.lb}")
    print(f"Z={Z}")
    print(f"B={B}")
    print(f"bits_per_row={bpr}")
    print(f"rate={bpr / chain.n:.6f}")
    if args.m is not None:
        print(f"N={(args.m + Z) * chain.n + 1}")
    return EXIT_OK


def cmd_encode(args) -> int:
    chain = load_chain(args.chain)
    _, bpr = row_capacity(chain)
    if args.messages is not None:
        messages = _int_list(args.messages)
        payload_bits = 0
    else:
        if args.input is None:
            raise UsageError("encode needs --in or --messages")
        bits = bytes_to_bits(Path(args.input).read_bytes())
        messages = frame_messages(bits, bpr, args.m)
        payload_bits = len(bits)
    word = codec.encode(chain, messages)
    _write_codeword(args.out, word, payload_bits, args.text)
    print(f"encoded m={word.m} rows into N={word.N} symbols")
    return EXIT_OK


def cmd_decode(args) -> int:
    chain = load_chain(args.chain) if args.chain else None
    word, payload_bits, _ = _read_codeword(args.input, chain)
    report = codec.decode(word.chain, word.m, word.bits)
    _, bpr = row_capacity(word.chain)
    Path(args.out).write_bytes(bits_to_bytes(unframe_messages(report.messages, bpr, payload_bits)))
    if args.report:
        Path(args.report).write_text(json.dumps(report.to_dict(), indent=2) + "\n")
    detected = [i + 1 for i, s in enumerate(report.row_status) if s != "clean"]
    if detected:
        print(f"corruption detected in payload rows {detected}", file=sys.stderr)
        return EXIT_CORRUPT
    return EXIT_OK


def _channel_from_args(args) -> ChannelSpec:
    if args.positions is not None:
        return ChannelSpec.fixed(_int_list(args.positions))
    if args.flips is not None:
        return ChannelSpec.flips(args.flips, args.seed)
    if args.epsilon is not None:
        return ChannelSpec.bsc(args.epsilon, args.seed)
    raise UsageError("choose one of --positions, --flips or --epsilon")


def cmd_corrupt(args) -> int:
    chain = load_chain(args.chain) if args.chain else None
    word, payload_bits, was_text = _read_codeword(args.input, chain)
    corrupted, flipped = inject(word.bits, _channel_from_args(args))
    _write_codeword(args.out, codec.Codeword(corrupted, word.chain, word.m), payload_bits, was_text)
    print("flipped " + (" ".join(map(str, flipped)) or "nothing"))
    return EXIT_OK


def cmd_trial(args) -> int:
    chain = load_chain(args.chain)
    B, _ = row_capacity(chain)
    channel = _channel_from_args(args)
    messages = [int(x) for x in np.random.default_rng(args.seed).integers(0, B, size=args.m)]
    report = run_trials(chain, args.m, messages, channel, args.trials, region=args.region)
    line = report_csv_line(chain, args.m, channel, report)
    if args.out:
        Path(args.out).write_text(CSV_HEADER + line)
    else:
        sys.stdout.write(CSV_HEADER + line)
    if args.json:
        detail = {"messages": messages, "channel": channel.describe(), "region": args.region,
                  **report.to_dict()}
        Path(args.json).write_text(json.dumps(detail, indent=2) + "\n")
    return EXIT_OK


def cmd_demo_baseline(args) -> int:
    for name, result in baseline_scenarios():
        if result.ambiguous:
            print(f"{name}: ambiguous, {len(result.candidates)} candidate reconstructions")
            for cand in result.candidates:
                print("    " + " ".join(cand))
        else:
            print(f"{name}: payload " + " ".join(result.payloads))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="weakcode", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="print chain parameters")
    p.add_argument("--chain", required=True)
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("encode", help="encode a byte file")
    p.add_argument("--chain", required=True)
    p.add_argument("--in", dest="input")
    p.add_argument("--out", required=True)
    p.add_argument("--messages", help="comma-separated message indices instead of --in")
    p.add_argument("--m", type=int, help="number of payload rows (default: fit the input)")
    p.add_argument("--text", action="store_true", help="write the codeword as one 0/1 line")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode a codeword file")
    p.add_argument("--chain", help="required for text codewords")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_decode)

    for name, func, help_ in (("corrupt", cmd_corrupt, "flip codeword bits"),
                              ("trial", cmd_trial, "run fault-injection trials")):
        p = sub.add_parser(name, help=help_)
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--positions", help="1-based positions, comma-separated")
        group.add_argument("--flips", type=int)
        group.add_argument("--epsilon", type=float)
        p.add_argument("--seed", type=int, default=0)
        p.set_defaults(func=func)
    corrupt, trial = sub.choices["corrupt"], sub.choices["trial"]
    corrupt.add_argument("--chain")
    corrupt.add_argument("--in", dest="input", required=True)
    corrupt.add_argument("--out", required=True)
    trial.add_argument("--chain", required=True)
    trial.add_argument("--m", type=int, required=True)
    trial.add_argument("--trials", type=int, default=1000)
    trial.add_argument("--region", choices=["u_pi_row", "payload", "transition"])
    trial.add_argument("--out")
    trial.add_argument("--json")

    p = sub.add_parser("demo-baseline", help="marker-based reassembly failure cases")
    p.set_defaults(func=cmd_demo_baseline)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"weakcode: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ChainError as exc:
        print(f"weakcode: invalid chain: {exc}", file=sys.stderr)
        return EXIT_CHAIN
    except (OSError, json.JSONDecodeError, KeyError, codec.ContainerError, codec.BadLength) as exc:
        print(f"weakcode: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"weakcode: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
