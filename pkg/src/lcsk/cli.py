"""Command-line front end.

    lcsk [run options]          compute LCSk / LCSk+ of two sequences
    lcsk bench [bench options]  match pairs vs. peak live chain nodes per k

Exit codes: 0 success, 1 input or feasibility error, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .core import BYTE_ALPHABET, DNA_ALPHABET, AlphabetError, Sequence
from .matchgen import AlphabetTooLarge
from .oracle import dominant_points, dp_table
from .reconstruct import chain_segments
from .solver import Generator, Mode, RowStrategy, SolverConfig, UpdateRule, solve

PROG = "lcsk"

GENERATORS = {"auto": Generator.AUTO, "hashing": Generator.HASHING, "sa": Generator.SUFFIX_ARRAY}
STRATEGIES = {"auto": RowStrategy.AUTO, "sparse": RowStrategy.FORCE_SPARSE, "dense": RowStrategy.FORCE_DENSE}


class InputError(Exception):
    """Bad input file or content; reported with exit code 1."""


def read_fasta(text: str) -> str:
    """Sequence of the single record in ``text``, line breaks removed."""
    header_seen = False
    parts = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        if line.startswith(">"):
            if header_seen:
                raise InputError(f"line {lineno}: only single-record FASTA input is supported")
            header_seen = True
            continue
        if not header_seen:
            raise InputError(f"line {lineno}: FASTA input must start with a '>' header")
        parts.append(line)
    if not header_seen:
        raise InputError("empty FASTA input")
    return "".join(parts)


def load_sequence(text: Optional[str], path: Optional[str], *, fasta: bool, fold_case: bool, alphabet: str) -> Sequence:
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as e:
            raise InputError(f"cannot read {path}: {e}") from e
        if fasta:
            text = read_fasta(text)
        elif text.endswith("\n"):
            text = text[:-1].rstrip("\r")
    if fold_case:
        text = text.upper()
    try:
        if alphabet == "byte":
            return Sequence(tuple(text.encode("utf-8")), BYTE_ALPHABET)
        if alphabet == "dna":
            return Sequence.from_text(text, DNA_ALPHABET)
        return Sequence.from_text(text)
    except AlphabetError as e:
        raise InputError(str(e)) from e


@dataclass
class RunReport:
    mode: str
    k: int
    m: int
    n: int
    length: int
    chain: Optional[list] = None
    stats: dict = field(default_factory=dict)
    wall_time: float = 0.0
    generator_used: str = ""
    strategy_histogram: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "k": self.k,
            "m": self.m,
            "n": self.n,
            "length": self.length,
            "chain": [list(s) for s in self.chain] if self.chain is not None else None,
            "stats": self.stats,
            "wall_time": self.wall_time,
            "generator_used": self.generator_used,
            "strategy_histogram": self.strategy_histogram,
        }

    def to_text(self, with_stats: bool) -> str:
        hist = " ".join(f"{k}={v}" for k, v in self.strategy_histogram.items())
        lines = [
            f"mode: {self.mode}",
            f"k: {self.k}",
            f"m: {self.m}",
            f"n: {self.n}",
            f"length: {self.length}",
            f"generator_used: {self.generator_used}",
            f"strategy_histogram: {hist}",
            f"wall_time: {self.wall_time!r}",
        ]
        if with_stats:
            for key, value in self.stats.items():
                lines.append(f"{key}: {_fmt_factor(value) if key == 'compression_factor' else value}")
        if self.chain is not None:
            lines.append("chain:")
            lines.extend(f"{i} {j} {ln}" for i, j, ln in self.chain)
        return "\n".join(lines)


def _fmt_factor(value) -> str:
    return "-" if value is None else repr(value)


def _add_input_options(p: argparse.ArgumentParser, b_required: bool) -> None:
    ga = p.add_mutually_exclusive_group(required=True)
    ga.add_argument("--a", metavar="FILE", help="first sequence file")
    ga.add_argument("--a-str", metavar="STR", help="first sequence given inline")
    gb = p.add_mutually_exclusive_group(required=b_required)
    gb.add_argument("--b", metavar="FILE", help="second sequence file")
    gb.add_argument("--b-str", metavar="STR", help="second sequence given inline")
    p.add_argument("--fasta", action="store_true", help="read files as single-record FASTA")
    p.add_argument("--fold-case", action="store_true", help="upper-case both inputs before comparing")
    p.add_argument("--alphabet", choices=["auto", "dna", "byte"], default="auto")
    p.add_argument("--generator", choices=list(GENERATORS), default="auto")
    p.add_argument("--strategy", choices=list(STRATEGIES), default="auto")
    p.add_argument("--json", action="store_true", help="print one JSON document")


def _run_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog=PROG, description="LCSk / LCSk+ of two sequences (subcommand: bench)")
    p.add_argument("--mode", choices=["lcsk", "lcskplus"], default="lcskplus")
    p.add_argument("-k", type=int, required=True)
    _add_input_options(p, b_required=True)
    p.add_argument("--lcskplus-update", choices=["kstep", "tree"], default="kstep")
    p.add_argument("--reconstruct", action="store_true", help="also report an optimal chain")
    p.add_argument("--stats", action="store_true", help="include memory statistics in text output")
    return p


def _k_range(text: str) -> list:
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}")
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad k range {text!r}")
    return list(range(lo, hi + 1))


def _bench_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog=f"{PROG} bench",
        description="Per k: total match pairs, peak live chain nodes and their ratio. "
        "Compares --a with itself unless --b is given.",
    )
    p.add_argument("--mode", choices=["lcsk", "lcskplus"], default="lcsk")
    gk = p.add_mutually_exclusive_group(required=True)
    gk.add_argument("-k", type=int)
    gk.add_argument("--k-range", type=_k_range, metavar="LO..HI")
    ga = p.add_mutually_exclusive_group(required=True)
    ga.add_argument("--a", metavar="FILE")
    ga.add_argument("--a-str", metavar="STR")
    ga.add_argument("--random-dna", type=int, metavar="LENGTH", help="uniform random DNA of this length")
    gb = p.add_mutually_exclusive_group()
    gb.add_argument("--b", metavar="FILE")
    gb.add_argument("--b-str", metavar="STR")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--label", help="label column (defaults to the input name)")
    p.add_argument("--fasta", action="store_true")
    p.add_argument("--fold-case", action="store_true")
    p.add_argument("--alphabet", choices=["auto", "dna", "byte"], default="auto")
    p.add_argument("--generator", choices=list(GENERATORS), default="auto")
    p.add_argument("--strategy", choices=list(STRATEGIES), default="auto")
    p.add_argument("--json", action="store_true")
    return p


def _oracle_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog=f"{PROG} oracle", description="quadratic reference DP (debugging aid)")
    p.add_argument("--mode", choices=["lcsk", "lcskplus"], default="lcskplus")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--a-str", required=True)
    p.add_argument("--b-str", required=True)
    p.add_argument("--dominant", action="store_true", help="also list dominant points (i j q)")
    return p


def _load_pair(args, a: Optional[Sequence] = None):
    opts = dict(fasta=args.fasta, fold_case=args.fold_case, alphabet=args.alphabet)
    if a is None:
        a = load_sequence(args.a_str, args.a, **opts)
    if args.b is None and args.b_str is None:
        return a, a
    return a, load_sequence(args.b_str, args.b, **opts)


def _do_run(args, out) -> int:
    if args.k < 1:
        raise _Usage("-k must be >= 1")
    if args.lcskplus_update == "tree" and args.mode != "lcskplus":
        raise _Usage("--lcskplus-update tree requires --mode lcskplus")
    a, b = _load_pair(args)
    config = SolverConfig(
        mode=Mode(args.mode),
        k=args.k,
        row_strategy=STRATEGIES[args.strategy],
        lcskplus_update=UpdateRule(args.lcskplus_update),
        reconstruct=args.reconstruct,
        generator=GENERATORS[args.generator],
    )
    t0 = time.perf_counter()
    result = solve(a, b, config)
    wall = time.perf_counter() - t0
    chain = None
    if args.reconstruct:
        chain = chain_segments(result.chain, args.k, merge_runs=config.mode is Mode.LCSKPLUS)
    report = RunReport(
        mode=args.mode,
        k=args.k,
        m=len(a),
        n=len(b),
        length=result.length,
        chain=chain,
        stats=result.stats.as_dict(),
        wall_time=wall,
        generator_used=result.generator_used,
        strategy_histogram=result.strategy_histogram,
    )
    if args.json:
        out.write(json.dumps(report.as_dict()) + "\n")
    else:
        out.write(report.to_text(args.stats) + "\n")
    return 0


def bench_rows(a: Sequence, b: Sequence, ks: list, label: str, mode: Mode = Mode.LCSK, **config) -> list:
    rows = []
    for k in ks:
        result = solve(a, b, SolverConfig(mode=mode, k=k, reconstruct=True, **config))
        st = result.stats
        rows.append(
            {
                "k": k,
                "label": label,
                "match_pairs": st.match_pairs_total,
                "max_in_memory": st.max_nodes_in_memory,
                "compression_factor": st.compression_factor,
            }
        )
    return rows


def format_bench_table(rows: list) -> str:
    header = ["k", "label", "match pairs", "max in memory", "compression factor"]
    body = [
        [
            str(r["k"]),
            r["label"],
            str(r["match_pairs"]),
            str(r["max_in_memory"]),
            "-" if r["compression_factor"] is None else f"{r['compression_factor']:.2f}",
        ]
        for r in rows
    ]
    widths = [max(len(x) for x in col) for col in zip(header, *body)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(line, widths)) for line in [header] + body]
    return "\n".join(lines)


def _do_bench(args, out) -> int:
    ks = args.k_range if args.k_range is not None else [args.k]
    if ks[0] < 1:
        raise _Usage("-k must be >= 1")
    if args.random_dna is not None:
        rng = random.Random(args.seed)
        text = "".join(rng.choice("ACGT") for _ in range(args.random_dna))
        a, b = _load_pair(args, Sequence.from_text(text, DNA_ALPHABET))
        label = args.label or f"random-dna-{args.random_dna}"
    else:
        a, b = _load_pair(args)
        label = args.label or (Path(args.a).stem if args.a else "a-str")
    rows = bench_rows(
        a, b, ks, label, Mode(args.mode), row_strategy=STRATEGIES[args.strategy], generator=GENERATORS[args.generator]
    )
    if args.json:
        out.write(json.dumps(rows) + "\n")
    else:
        out.write(format_bench_table(rows) + "\n")
    return 0


def _do_oracle(args, out) -> int:
    table = dp_table(args.a_str, args.b_str, args.k, args.mode)
    out.write(f"length: {table.value}\n")
    if args.dominant:
        for i, j, q in sorted(dominant_points(table), key=lambda p: (p[2], p[0], p[1])):
            out.write(f"{i} {j} {q}\n")
    return 0


class _Usage(Exception):
    pass


def run(argv=None, out=None, err=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    err = err or sys.stderr
    if argv and argv[0] == "bench":
        parser, action, argv = _bench_parser(), _do_bench, argv[1:]
    elif argv and argv[0] == "oracle":
        parser, action, argv = _oracle_parser(), _do_oracle, argv[1:]
    else:
        parser, action = _run_parser(), _do_run
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return action(args, out)
    except _Usage as e:
        err.write(f"{parser.prog}: error: {e}\n")
        return 2
    except (InputError, AlphabetTooLarge) as e:
        err.write(f"{PROG}: error: {e}\n")
        return 1


def main() -> None:
    sys.exit(run())
