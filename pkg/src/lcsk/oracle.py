"""Slow, obviously-correct references used to check the sweep.

Nothing here shares code with the solver: full DP tables straight from the
recurrences, a direct checker for chain decompositions, and brute-force
match-pair enumeration.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import SequenceLike, as_sequence

LCSK = "lcsk"
LCSKPLUS = "lcskplus"


def _mode_name(mode) -> str:
    name = getattr(mode, "value", mode)
    if name not in (LCSK, LCSKPLUS):
        raise ValueError(f"unknown mode {mode!r}")
    return name


@dataclass
class DpTable:
    values: list
    mode: str
    k: int

    @property
    def value(self) -> int:
        return self.values[-1][-1]


def dp_table(a: SequenceLike, b: SequenceLike, k: int, mode) -> DpTable:
    """``values[i][j]`` is the score of ``A[0:i)`` against ``B[0:j)``.

    LCSk counts blocks; LCSk+ counts characters and tries every block length
    ``k' >= k`` ending at ``(i, j)``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    mode = _mode_name(mode)
    a, b = as_sequence(a).symbols, as_sequence(b).symbols
    m, n = len(a), len(b)
    T = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        row, up = T[i], T[i - 1]
        for j in range(1, n + 1):
            best = max(up[j], row[j - 1])
            if mode == LCSK:
                if i >= k and j >= k and a[i - k : i] == b[j - k : j]:
                    best = max(best, T[i - k][j - k] + 1)
            else:
                # A[i-t:i) == B[j-t:j) holds for every t below the first mismatch
                t = 1
                while t <= min(i, j) and a[i - t] == b[j - t]:
                    if t >= k:
                        best = max(best, T[i - t][j - t] + t)
                    t += 1
            row[j] = best
    return DpTable(T, mode, k)


class InvalidChain(ValueError):
    def __init__(self, reason: str, index: int):
        super().__init__(f"segment {index}: {reason}")
        self.reason = reason
        self.index = index


def validate_chain(a: SequenceLike, b: SequenceLike, k: int, mode, chain) -> int:
    """Check a decomposition of ``(i, j, length)`` segments and return its score.

    Raises :class:`InvalidChain` naming the first violated condition.
    """
    mode = _mode_name(mode)
    a, b = as_sequence(a).symbols, as_sequence(b).symbols
    segments = list(getattr(chain, "segments", chain))
    score = 0
    for s, (i, j, ln) in enumerate(segments):
        if mode == LCSK and ln != k:
            raise InvalidChain("wrong length", s)
        if ln < k:
            raise InvalidChain("too short", s)
        if i < 0 or j < 0 or i + ln > len(a) or j + ln > len(b):
            raise InvalidChain("out of range", s)
        if a[i : i + ln] != b[j : j + ln]:
            raise InvalidChain("substring mismatch", s)
        if s:
            pi, pj, pl = segments[s - 1]
            if pi + pl > i or pj + pl > j:
                raise InvalidChain("overlap", s)
        score += 1 if mode == LCSK else ln
    return score


@dataclass
class ChainDecomposition:
    segments: list

    @property
    def prefix_offsets(self) -> list:
        out, p = [], 0
        for _, _, ln in self.segments:
            out.append(p)
            p += ln
        return out


def dominant_points(table: DpTable) -> set:
    """Cells ``(i, j, q)`` with ``q > 0`` not weakly dominated above-left.

    Coordinates are table coordinates: cell ``(i, j)`` covers ``A[0:i)`` and
    ``B[0:j)``.  A cell is kept when no other cell of the same value lies at
    ``i' <= i, j' <= j``.
    """
    T = table.values
    out = set()
    for i in range(1, len(T)):
        for j in range(1, len(T[i])):
            q = T[i][j]
            # monotone table: any same-valued cell above-left implies a neighbour
            if q > 0 and T[i - 1][j] < q and T[i][j - 1] < q:
                out.add((i, j, q))
    return out


def brute_force_pairs(a: SequenceLike, b: SequenceLike, k: int) -> set:
    """Every ``(i, j)`` with ``A[i:i+k) == B[j:j+k)`` by direct comparison."""
    a, b = as_sequence(a).symbols, as_sequence(b).symbols
    return {
        (i, j)
        for i in range(len(a) - k + 1)
        for j in range(len(b) - k + 1)
        if a[i : i + k] == b[j : j + k]
    }
