"""Domain types shared by the matcher, the sweep and the reconstruction store.

Coordinates are 0-based with half-open substrings ``X[i:j)``.  The compressed
row stores *end columns shifted by one* (column ``j`` is stored as ``j + 1``)
so that ``thresholds[0] == 0`` acts as a clean sentinel: a start point at
column ``j`` is queried with key ``j + 1`` and finds chains whose stored end
is ``<= j``, i.e. whose real end column is ``< j``.  The primitives themselves
are unit agnostic; only the solver applies the shift.
"""
from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Union

INF = math.inf

DNA_ALPHABET = frozenset(map(ord, "ACGT"))
BYTE_ALPHABET = frozenset(range(256))


class AlphabetError(ValueError):
    """A symbol falls outside the declared alphabet."""


@dataclass(frozen=True)
class Sequence:
    """An input string as a tuple of integer code points."""

    symbols: tuple
    alphabet: Optional[frozenset] = None

    def __post_init__(self):
        if self.alphabet is not None:
            bad = set(self.symbols) - self.alphabet
            if bad:
                shown = ", ".join(repr(_show(c)) for c in sorted(bad)[:5])
                raise AlphabetError(f"symbols outside the declared alphabet: {shown}")

    @classmethod
    def from_text(cls, text: str, alphabet: Optional[frozenset] = None) -> "Sequence":
        return cls(tuple(map(ord, text)), alphabet)

    @property
    def length(self) -> int:
        return len(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __getitem__(self, item):
        return self.symbols[item]

    def text(self) -> str:
        return "".join(map(chr, self.symbols))


def _show(c: int) -> str:
    try:
        return chr(c)
    except (ValueError, OverflowError):
        return str(c)


SequenceLike = Union[Sequence, str, bytes, Iterable[int]]


def as_sequence(x: SequenceLike) -> Sequence:
    if isinstance(x, Sequence):
        return x
    if isinstance(x, str):
        return Sequence.from_text(x)
    return Sequence(tuple(x))


class MatchPair(NamedTuple):
    """Start ``(i, j)`` of a length-``k`` match ``A[i:i+k) == B[j:j+k)``."""

    i: int
    j: int
    k: int

    @property
    def start(self) -> tuple:
        return (self.i, self.j)

    @property
    def end(self) -> tuple:
        return (self.i + self.k - 1, self.j + self.k - 1)


def precedes(g: MatchPair, p: MatchPair) -> bool:
    """True when ``g`` ends strictly above-left of where ``p`` starts."""
    return g.i + g.k <= p.i and g.j + g.k <= p.j


def continues(p: MatchPair, g: MatchPair) -> bool:
    """True when ``p`` starts one step down-right of ``g``."""
    return p.i == g.i + 1 and p.j == g.j + 1


@dataclass
class RowEvents:
    """Start and end events of one row.

    ``starts`` holds start columns of pairs starting in ``row``; ``ends`` holds
    the *start* columns of pairs starting in ``row - k + 1`` (their end column
    is ``j + k - 1``).  Both ascend.  The lists may be shared with the
    generator and must not be mutated.
    """

    row: int
    k: int
    starts: list = field(default_factory=list)
    ends: list = field(default_factory=list)

    @property
    def start_pairs(self) -> list:
        return [MatchPair(self.row, j, self.k) for j in self.starts]

    @property
    def end_pairs(self) -> list:
        i = self.row - self.k + 1
        return [MatchPair(i, j, self.k) for j in self.ends]


class CompressedRow:
    """Non-decreasing threshold array compressing one DP row.

    ``thresholds[d]`` is the smallest (stored) column reaching score ``d``;
    any index past the end reads as infinity.
    """

    __slots__ = ("thresholds",)

    def __init__(self, thresholds: Optional[Iterable] = None):
        th = [0] if thresholds is None else list(thresholds)
        while len(th) > 1 and th[-1] == INF:
            th.pop()
        if not th or th[0] != 0:
            raise ValueError("thresholds[0] must be 0")
        self.thresholds = th

    @property
    def best(self) -> int:
        return len(self.thresholds) - 1

    def __getitem__(self, d: int):
        th = self.thresholds
        return th[d] if d < len(th) else INF

    def __len__(self):
        return len(self.thresholds)

    def __repr__(self):
        return f"CompressedRow({self.thresholds!r})"

    def query(self, x) -> int:
        """Return the ``d`` with ``thresholds[d] < x <= thresholds[d+1]``."""
        return bisect_left(self.thresholds, x) - 1

    def update_min(self, d: int, x) -> bool:
        """``thresholds[d] = min(thresholds[d], x)``; True if it changed."""
        th = self.thresholds
        if d < len(th):
            if x >= th[d]:
                return False
            th[d] = x
        else:
            assert d == len(th), "threshold array may only grow by one slot"
            th.append(x)
        assert th[d - 1] <= x, "sweep order violated: thresholds not monotone"
        return True

    def prefix_update_min(self, d: int, x, span: int) -> int:
        """Lower ``thresholds[d], thresholds[d-1], ...`` to ``x``.

        Walks at most ``span`` entries downward and stops at the first entry
        already ``<= x``.  Returns how many entries were lowered (they are
        ``d, d-1, ..., d-count+1``).
        """
        th = self.thresholds
        if d >= len(th):
            th.extend([INF] * (d + 1 - len(th)))
        count = 0
        t = d
        while count < span and th[t] > x:
            th[t] = x
            count += 1
            t -= 1
        assert th[d - count] <= x, "sweep order violated: thresholds not monotone"
        return count


def row_query(row: CompressedRow, j) -> int:
    return row.query(j)


def row_update_min(row: CompressedRow, d: int, j) -> CompressedRow:
    row.update_min(d, j)
    return row


def row_prefix_update_min(row: CompressedRow, d: int, j, span: int) -> CompressedRow:
    row.prefix_update_min(d, j, span)
    return row


class ChainNode:
    """One match pair on a reconstruction path, with an explicit refcount."""

    __slots__ = ("pair", "dp", "predecessor", "refcount")

    def __init__(self, pair: MatchPair, dp: int, predecessor: Optional["ChainNode"] = None):
        self.pair = pair
        self.dp = dp
        self.predecessor = predecessor
        self.refcount = 0

    def __repr__(self):
        return f"ChainNode({tuple(self.pair[:2])}, dp={self.dp}, refs={self.refcount})"


@dataclass
class MemoryStats:
    match_pairs_total: int = 0
    max_nodes_in_memory: int = 0
    node_bytes: int = 0

    @property
    def compression_factor(self) -> Optional[float]:
        """``r / peak``; None when there were no match pairs."""
        if self.match_pairs_total == 0:
            return None
        if self.max_nodes_in_memory == 0:
            return 1.0
        return self.match_pairs_total / self.max_nodes_in_memory

    def as_dict(self) -> dict:
        return {
            "match_pairs_total": self.match_pairs_total,
            "max_nodes_in_memory": self.max_nodes_in_memory,
            "compression_factor": self.compression_factor,
            "node_bytes": self.node_bytes,
        }


@dataclass
class SolveResult:
    length: int
    chain: Optional[list] = None
    stats: MemoryStats = field(default_factory=MemoryStats)
    generator_used: str = ""
    strategy_histogram: dict = field(default_factory=dict)
