"""Row-major sparse DP sweep computing LCSk (blocks) and LCSk+ (characters).

Each row first answers every start-point read against the threshold array as
it stood after the previous row, then applies every end-point write.  Reads
use either a per-point binary search (sparse rows) or one merged linear scan
(dense rows), chosen per row from a cost estimate.
"""
from __future__ import annotations

import enum
import math
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass, replace
from typing import Optional

from .core import INF, CompressedRow, MatchPair, MemoryStats, RowEvents, SequenceLike, SolveResult, as_sequence
from .matchgen import EventBuffer, generate
from .reconstruct import NODE_BYTES, ChainStore, extract_chain


class Mode(enum.Enum):
    LCSK = "lcsk"
    LCSKPLUS = "lcskplus"


class RowStrategy(enum.Enum):
    AUTO = "auto"
    FORCE_SPARSE = "sparse"
    FORCE_DENSE = "dense"


class Strategy(enum.Enum):
    SPARSE = "sparse"
    DENSE = "dense"


class UpdateRule(enum.Enum):
    KSTEP = "kstep"
    TREE = "tree"


class Generator(enum.Enum):
    AUTO = "auto"
    HASHING = "hashing"
    SUFFIX_ARRAY = "suffix-array"


@dataclass(frozen=True)
class SolverConfig:
    mode: Mode = Mode.LCSKPLUS
    k: int = 1
    row_strategy: RowStrategy = RowStrategy.AUTO
    lcskplus_update: UpdateRule = UpdateRule.KSTEP
    reconstruct: bool = False
    generator: Generator = Generator.AUTO

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.lcskplus_update is UpdateRule.TREE and self.mode is not Mode.LCSKPLUS:
            raise ValueError("the tree update rule only applies to LCSk+")


# Multiplies the binary-search estimate; raise it to favour dense scans.
SPARSE_COST_FACTOR = 1.0


def choose_row_strategy(r_i: int, l: int, row_strategy: RowStrategy = RowStrategy.AUTO) -> Strategy:
    if row_strategy is RowStrategy.FORCE_SPARSE:
        return Strategy.SPARSE
    if row_strategy is RowStrategy.FORCE_DENSE:
        return Strategy.DENSE
    sparse_cost = SPARSE_COST_FACTOR * r_i * math.ceil(math.log2(l + 2))
    return Strategy.SPARSE if sparse_cost < r_i + l else Strategy.DENSE


class PrefixMinTree:
    """Complete binary tree supporting point query and prefix ``min=`` update.

    ``levels[0]`` are the leaves, ``levels[-1]`` the root.  A point query is
    the minimum along the root-to-leaf path.  Capacity doubles on demand by
    making the old root the left child of a fresh root.

    With ``store`` given, every tree node also remembers the chain node that
    set its value and holds a counted reference to it.
    """

    def __init__(self, capacity: int = 1, store: Optional[ChainStore] = None):
        cap = 1
        while cap < capacity:
            cap *= 2
        self.levels = []
        width = cap
        while True:
            self.levels.append([INF] * width)
            if width == 1:
                break
            width //= 2
        self.store = store
        self.owners = [[None] * len(lvl) for lvl in self.levels] if store is not None else None

    @property
    def capacity(self) -> int:
        return len(self.levels[0])

    def _grow(self) -> None:
        for lvl in self.levels:
            lvl.extend([INF] * len(lvl))
        self.levels.append([INF])
        if self.owners is not None:
            for lvl in self.owners:
                lvl.extend([None] * len(lvl))
            self.owners.append([None])

    def query(self, i: int):
        if i >= self.capacity:
            return INF
        return min(lvl[i >> t] for t, lvl in enumerate(self.levels))

    def query_owner(self, i: int) -> tuple:
        best, owner = INF, None
        if i >= self.capacity:
            return best, owner
        for t, lvl in enumerate(self.levels):
            v = lvl[i >> t]
            if v < best:
                best = v
                if self.owners is not None:
                    owner = self.owners[t][i >> t]
        return best, owner

    def prefix_update(self, i: int, v, owner=None) -> None:
        """Lower every element of ``[0 .. i]`` to at most ``v``."""
        while self.capacity <= i:
            self._grow()
        top = len(self.levels) - 1
        if i + 1 == self.capacity:
            self._lower(top, 0, v, owner)
            return
        x = i + 1
        for t in range(top):
            if x & 1:
                self._lower(t, x - 1, v, owner)
            x >>= 1

    def _lower(self, t: int, x: int, v, owner) -> None:
        lvl = self.levels[t]
        if v < lvl[x]:
            lvl[x] = v
            if self.owners is not None:
                if owner is not None:
                    owner.refcount += 1
                old = self.owners[t][x]
                self.owners[t][x] = owner
                self.store.release(old)

    def release_all(self) -> None:
        if self.owners is None:
            return
        for lvl in self.owners:
            for x, node in enumerate(lvl):
                lvl[x] = None
                self.store.release(node)


def tree_query(tree: PrefixMinTree, i: int):
    return tree.query(i)


def tree_prefix_update(tree: PrefixMinTree, i: int, v) -> None:
    tree.prefix_update(i, v)


def _dense_reads(get, top: int, keys: list) -> list:
    if any(keys[t] > keys[t + 1] for t in range(len(keys) - 1)):
        order = sorted(range(len(keys)), key=keys.__getitem__)
        reads = _dense_reads(get, top, [keys[t] for t in order])
        out = [0] * len(keys)
        for t, d in zip(order, reads):
            out[t] = d
        return out
    out = []
    d = 0
    for x in keys:
        while d < top and get(d + 1) < x:
            d += 1
        out.append(d)
    return out


class ArrayState:
    """Threshold array (plus owning slots when reconstructing)."""

    def __init__(self, row: Optional[CompressedRow] = None, store: Optional[ChainStore] = None):
        self.row = row if row is not None else CompressedRow()
        self.store = store
        self.slots = [None] * len(self.row) if store is not None else None

    @property
    def best(self) -> int:
        return self.row.best

    def reads(self, keys: list, strategy: Strategy) -> list:
        th = self.row.thresholds
        if strategy is Strategy.SPARSE:
            return [bisect_left(th, x) - 1 for x in keys]
        return _dense_reads(th.__getitem__, len(th) - 1, keys)

    def owner(self, d: int):
        return self.slots[d] if self.slots is not None else None

    def lower(self, d: int, x: int, span: int, node) -> int:
        if span == 1:
            count = 1 if self.row.update_min(d, x) else 0
        else:
            count = self.row.prefix_update_min(d, x, span)
        if node is not None:
            for t in range(d - count + 1, d + 1):
                self.store.slot_replace(self.slots, t, node)
        return count

    def best_owner(self):
        return self.owner(self.best) if self.slots is not None else None

    def roots(self) -> list:
        return list(self.slots or [])

    def release_all(self) -> None:
        if self.slots is not None:
            for t, node in enumerate(self.slots):
                self.slots[t] = None
                self.store.release(node)


class TreeState:
    """Prefix-min tree standing in for the threshold array (LCSk+ only)."""

    def __init__(self, store: Optional[ChainStore] = None):
        self.tree = PrefixMinTree(store=store)
        self.tree.prefix_update(0, 0)
        self._best = 0

    @property
    def best(self) -> int:
        return self._best

    def reads(self, keys: list, strategy: Strategy) -> list:
        q = self.tree.query
        if strategy is Strategy.DENSE:
            return _dense_reads(q, self._best, keys)
        out = []
        for x in keys:
            lo, hi = 0, self._best  # largest d in [lo, hi] with value < x
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if q(mid) < x:
                    lo = mid
                else:
                    hi = mid - 1
            out.append(lo)
        return out

    def owner(self, d: int):
        return self.tree.query_owner(d)[1]

    def lower(self, d: int, x: int, span: int, node) -> int:
        self.tree.prefix_update(d, x, node)
        if d > self._best:
            self._best = d
        return span

    def best_owner(self):
        return self.owner(self._best)

    def roots(self) -> list:
        if self.tree.owners is None:
            return []
        return [n for lvl in self.tree.owners for n in lvl]

    def release_all(self) -> None:
        self.tree.release_all()


@dataclass
class RowOutcome:
    reads: list
    preds: Optional[list]
    dps: list
    ends: dict  # start column of each ending pair -> (dp, node)


def _as_state(row):
    return ArrayState(row) if isinstance(row, CompressedRow) else row


def _read_row(events: RowEvents, state, strategy: Strategy, store: Optional[ChainStore]):
    reads = state.reads([j + 1 for j in events.starts], strategy)
    preds = None
    if store is not None:
        preds = [ChainStore.acquire(state.owner(d)) if d else None for d in reads]
    return reads, preds


def process_row_lcsk(
    events: RowEvents,
    row,
    strategy: Strategy = Strategy.SPARSE,
    pending: tuple = ((), None),
    store: Optional[ChainStore] = None,
) -> RowOutcome:
    """One row of the LCSk sweep.

    ``pending`` is ``(reads, preds)`` recorded when the pairs ending in this
    row were read at their start row; for ``k == 1`` that is this very row
    and may be passed as ``None``.
    """
    state = _as_state(row)
    k = events.k
    reads, preds = _read_row(events, state, strategy, store)
    if pending is None:
        pending = (reads, preds)
    end_reads, end_preds = pending
    assert len(end_reads) == len(events.ends)
    i0 = events.row - k + 1
    dps = []
    for t, j in enumerate(events.ends):
        dp = end_reads[t] + 1
        dps.append(dp)
        if store is None:
            state.lower(dp, j + k, 1, None)
            continue
        pred = end_preds[t]
        node = store.record_pair(MatchPair(i0, j, k), dp, pred)
        state.lower(dp, j + k, 1, node)
        store.discard_if_unreferenced(node)
        store.release(pred)
    return RowOutcome(reads, preds, dps, {})


def process_row_lcskplus(
    events: RowEvents,
    row,
    strategy: Strategy = Strategy.SPARSE,
    pending: tuple = ((), None),
    previous_ends: Optional[dict] = None,
    store: Optional[ChainStore] = None,
) -> RowOutcome:
    """One row of the LCSk+ sweep.

    ``previous_ends`` maps the start column of each pair that ended in the
    previous row to ``(dp, node)``; a pair starting one step down-right of
    such a pair may continue it.  Ties go to the continuation.
    """
    state = _as_state(row)
    k = events.k
    previous_ends = previous_ends or {}
    reads, preds = _read_row(events, state, strategy, store)
    if pending is None:
        pending = (reads, preds)
    end_reads, end_preds = pending
    assert len(end_reads) == len(events.ends)
    i0 = events.row - k + 1
    dps = []
    ends = {}
    for t, j in enumerate(events.ends):
        d = end_reads[t]
        dp, span = d + k, k
        pred = end_preds[t] if store is not None else None
        via = pred
        g = previous_ends.get(j - 1)
        if g is not None and g[0] + 1 >= dp:
            dp, span, via = g[0] + 1, 1, g[1]
        dps.append(dp)
        if store is None:
            state.lower(dp, j + k, span, None)
            ends[j] = (dp, None)
            continue
        node = store.record_pair(MatchPair(i0, j, k), dp, via)
        state.lower(dp, j + k, span, node)
        ends[j] = (dp, ChainStore.acquire(node))
        store.release(pred)
    return RowOutcome(reads, preds, dps, ends)


class Sweep:
    """Drives the row functions over a full event stream."""

    def __init__(self, config: SolverConfig):
        self.config = config
        self.k = config.k
        self.store = ChainStore() if config.reconstruct else None
        if config.lcskplus_update is UpdateRule.TREE:
            self.state = TreeState(self.store)
        else:
            self.state = ArrayState(store=self.store)
        self.pending: deque = deque()
        self.previous_ends: dict = {}
        self.histogram = {Strategy.SPARSE.value: 0, Strategy.DENSE.value: 0}
        self.pairs = 0

    def step(self, events: RowEvents) -> RowOutcome:
        cfg = self.config
        strategy = choose_row_strategy(len(events.starts), self.state.best, cfg.row_strategy)
        self.histogram[strategy.value] += 1
        self.pairs += len(events.starts)
        pending = None
        if self.k > 1:
            pending = self.pending.popleft() if events.row >= self.k - 1 else ((), None)
        if cfg.mode is Mode.LCSK:
            out = process_row_lcsk(events, self.state, strategy, pending, self.store)
        else:
            out = process_row_lcskplus(events, self.state, strategy, pending, self.previous_ends, self.store)
            self._drop_previous()
            self.previous_ends = out.ends
        if self.k > 1:
            self.pending.append((out.reads, out.preds))
        return out

    def _drop_previous(self) -> None:
        if self.store is not None:
            for _, node in self.previous_ends.values():
                self.store.release(node)
        self.previous_ends = {}

    def finish(self) -> tuple:
        """Release transient references; return ``(length, chain or None)``."""
        self._drop_previous()
        if self.store is not None:
            while self.pending:
                _, preds = self.pending.popleft()
                for node in preds or ():
                    self.store.release(node)
        chain = extract_chain(self.state.best_owner()) if self.store is not None else None
        return self.state.best, chain


def solve(a: SequenceLike, b: SequenceLike, config: Optional[SolverConfig] = None, **overrides) -> SolveResult:
    """Compute LCSk or LCSk+ of ``a`` and ``b``.

    ``overrides`` are :class:`SolverConfig` fields, handy for one-off calls:
    ``solve("ABCBA", "ABCBA", mode=Mode.LCSK, k=3)``.
    """
    if config is None:
        config = SolverConfig(**overrides)
    elif overrides:
        config = replace(config, **overrides)
    a, b = as_sequence(a), as_sequence(b)
    stream = generate(a, b, config.k, config.generator.value)
    buffer = EventBuffer(stream)
    sweep = Sweep(config)
    for i in range(len(a)):
        sweep.step(buffer.events_for_row(i))
    length, chain = sweep.finish()
    stats = MemoryStats(match_pairs_total=sweep.pairs)
    if sweep.store is not None:
        stats.max_nodes_in_memory = sweep.store.peak
        stats.node_bytes = NODE_BYTES
    return SolveResult(
        length=length,
        chain=chain,
        stats=stats,
        generator_used=stream.source,
        strategy_histogram=sweep.histogram,
    )
