"""Enumerate k-length match pairs of two sequences row by row.

Two back ends produce the same stream: a perfect k-mer hash (k-mer read as a
k-digit number in base |alphabet|) and a suffix array with LCP grouping over
``B + sep + A``.  Each stream yields ``(row, columns)`` for every row
``0 .. m-1`` with the start columns of that row in ascending order.
"""
from __future__ import annotations

from collections import deque
from typing import Iterator, Optional

import numpy as np

from .core import RowEvents, Sequence, SequenceLike, as_sequence

HASHING = "hashing"
SUFFIX_ARRAY = "suffix-array"

WORD_LIMIT = 1 << 64

_EMPTY: list = []


class AlphabetTooLarge(ValueError):
    """``|alphabet| ** k`` does not fit a 64-bit word."""


def alphabet_of(a: Sequence, b: Sequence) -> list:
    """Sorted alphabet: the declared ones if any, else the symbols seen."""
    declared = [s.alphabet for s in (a, b) if s.alphabet is not None]
    if declared:
        return sorted(frozenset().union(*declared) | set(a.symbols) | set(b.symbols))
    return sorted(set(a.symbols) | set(b.symbols))


def hashing_feasible(sigma: int, k: int) -> bool:
    return sigma <= 1 or sigma ** k <= WORD_LIMIT


class MatchPairStream:
    """Single-consumer iterator over ``(row, ascending start columns)``.

    Column lists may be shared between rows and with the index; treat them
    as read-only.
    """

    def __init__(self, k: int, source: str, m: int, row_fn):
        self.k = k
        self.source = source
        self.m = m
        self.cursor = 0
        self._row_fn = row_fn

    def __iter__(self) -> Iterator:
        row_fn = self._row_fn
        while self.cursor < self.m:
            i = self.cursor
            self.cursor += 1
            yield i, row_fn(i)

    def pairs(self) -> list:
        return [(i, j) for i, cols in self for j in cols]


def _kmer_fingerprints(symbols: tuple, k: int, rank: dict, sigma: int) -> list:
    n = len(symbols)
    if n < k:
        return []
    digits = [rank[c] for c in symbols]
    top = sigma ** (k - 1)
    h = 0
    for c in digits[:k]:
        h = h * sigma + c
    out = [h]
    for t in range(k, n):
        h = (h - digits[t - k] * top) * sigma + digits[t]
        out.append(h)
    return out


def build_kmer_index(b: Sequence, k: int, alphabet: list) -> dict:
    """Map each k-mer fingerprint of ``b`` to its ascending start columns."""
    sigma = len(alphabet)
    rank = {c: r for r, c in enumerate(alphabet)}
    table: dict = {}
    for j, h in enumerate(_kmer_fingerprints(b.symbols, k, rank, sigma)):
        cols = table.get(h)
        if cols is None:
            table[h] = [j]
        else:
            cols.append(j)
    return table


def generate_by_hashing(a: SequenceLike, b: SequenceLike, k: int) -> MatchPairStream:
    if k < 1:
        raise ValueError("k must be >= 1")
    a, b = as_sequence(a), as_sequence(b)
    alphabet = alphabet_of(a, b)
    sigma = len(alphabet)
    if not hashing_feasible(sigma, k):
        raise AlphabetTooLarge(
            f"|alphabet|^k = {sigma}^{k} does not fit in 64 bits; use the suffix-array generator"
        )
    table = build_kmer_index(b, k, alphabet)
    rank = {c: r for r, c in enumerate(alphabet)}
    fps = _kmer_fingerprints(a.symbols, k, rank, sigma) if table else []
    last = len(fps)

    def row(i):
        if i >= last:
            return _EMPTY
        return table.get(fps[i], _EMPTY)

    return MatchPairStream(k, HASHING, len(a), row)


def build_suffix_array(s) -> list:
    """Suffix array by prefix doubling, O(n log^2 n) in vectorised sorts."""
    s = np.asarray(as_sequence(s).symbols, dtype=np.int64)
    n = len(s)
    if n == 0:
        return []
    _, rank = np.unique(s, return_inverse=True)
    rank = rank.astype(np.int64).reshape(n)
    h = 1
    while True:
        # suffixes running off the end sort before any real symbol
        second = np.zeros(n, dtype=np.int64)
        if h < n:
            second[: n - h] = rank[h:] + 1
        sa = np.lexsort((second, rank))
        r_sorted, s_sorted = rank[sa], second[sa]
        bump = np.zeros(n, dtype=np.int64)
        bump[1:] = (r_sorted[1:] != r_sorted[:-1]) | (s_sorted[1:] != s_sorted[:-1])
        rank = np.empty(n, dtype=np.int64)
        rank[sa] = np.cumsum(bump)
        if rank[sa[-1]] == n - 1:
            return sa.tolist()
        h *= 2


def build_lcp(s, sa: list) -> list:
    """Kasai's algorithm: ``lcp[t]`` is the common prefix of ``sa[t-1]`` and ``sa[t]``."""
    s = as_sequence(s).symbols
    n = len(s)
    lcp = [0] * n
    rank = [0] * n
    for t, p in enumerate(sa):
        rank[p] = t
    h = 0
    for p in range(n):
        t = rank[p]
        if t == 0:
            h = 0
            continue
        q = sa[t - 1]
        while p + h < n and q + h < n and s[p + h] == s[q + h]:
            h += 1
        lcp[t] = h
        if h:
            h -= 1
    return lcp


def suffix_structures(a: Sequence, b: Sequence) -> tuple:
    """``(text, sa, lcp)`` for ``B + sep + A`` with symbols remapped to ranks >= 1."""
    alphabet = alphabet_of(a, b)
    rank = {c: r + 1 for r, c in enumerate(alphabet)}
    text = [rank[c] for c in b.symbols] + [0] + [rank[c] for c in a.symbols]
    sa = build_suffix_array(text)
    return text, sa, build_lcp(text, sa)


def generate_by_suffix_array(a: SequenceLike, b: SequenceLike, k: int) -> MatchPairStream:
    if k < 1:
        raise ValueError("k must be >= 1")
    a, b = as_sequence(a), as_sequence(b)
    m, n = len(a), len(b)
    rows: list = [_EMPTY] * m
    if m >= k and n >= k:
        _, sa, lcp = suffix_structures(a, b)
        total = len(sa)
        start = 0
        # maximal runs of sa with adjacent lcp >= k share a k-prefix
        for t in range(1, total + 1):
            if t < total and lcp[t] >= k:
                continue
            if t - start > 1:
                group = sa[start:t]
                cols = sorted(p for p in group if p < n)
                if cols:
                    for p in group:
                        if p > n:
                            rows[p - n - 1] = cols
            start = t
    return MatchPairStream(k, SUFFIX_ARRAY, m, rows.__getitem__)


def generate(a: SequenceLike, b: SequenceLike, k: int, generator: str = "auto") -> MatchPairStream:
    """Pick a back end: hashing when the k-mer fits a word, else suffix array."""
    a, b = as_sequence(a), as_sequence(b)
    if generator == HASHING:
        return generate_by_hashing(a, b, k)
    if generator == SUFFIX_ARRAY:
        return generate_by_suffix_array(a, b, k)
    if generator != "auto":
        raise ValueError(f"unknown generator {generator!r}")
    if hashing_feasible(len(alphabet_of(a, b)), k):
        return generate_by_hashing(a, b, k)
    return generate_by_suffix_array(a, b, k)


class EventBuffer:
    """Turns a row stream into per-row start/end events.

    Only the ``k`` most recent rows are retained, since a pair starting in
    row ``i`` ends in row ``i + k - 1``.
    """

    def __init__(self, stream: MatchPairStream):
        self.k = stream.k
        self._rows = iter(stream)
        self._window: deque = deque(maxlen=stream.k)
        self.next_row = 0
        self.pairs_seen = 0

    def events_for_row(self, i: int) -> RowEvents:
        if i < self.next_row:
            raise ValueError(f"row {i} already consumed (next is {self.next_row})")
        while self.next_row <= i:
            row, cols = next(self._rows, (self.next_row, _EMPTY))
            self._window.append(cols)
            self.pairs_seen += len(cols)
            self.next_row = row + 1
        starts = self._window[-1]
        ends = self._window[0] if i >= self.k - 1 else _EMPTY
        return RowEvents(i, self.k, starts, ends)


def events_for_row(buffer: EventBuffer, i: int) -> RowEvents:
    return buffer.events_for_row(i)

