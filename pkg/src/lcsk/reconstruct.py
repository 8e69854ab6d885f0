"""Reference-counted chain store used to rebuild an optimal chain.

Every match pair becomes a :class:`~lcsk.core.ChainNode` holding a counted
reference to its predecessor.  Threshold slots, pending start reads and the
previous row's end records hold counted references too.  A node whose count
drops to zero is freed immediately, which may cascade down its predecessor
path; the cascade is an explicit loop so very long chains cannot exhaust the
call stack.
"""
from __future__ import annotations

import sys
from typing import Iterable, Optional

from .core import ChainNode, MatchPair

NODE_BYTES = sys.getsizeof(ChainNode(MatchPair(0, 0, 1), 0))


class ChainStore:
    """Allocation bookkeeping for chain nodes: live count and peak."""

    def __init__(self):
        self.live = 0
        self.peak = 0
        self.allocated = 0

    def record_pair(self, pair: MatchPair, dp: int, predecessor: Optional[ChainNode] = None) -> ChainNode:
        """Create a node for ``pair``.

        The new node starts with no referents; the caller either stores it
        somewhere via :meth:`acquire` / :meth:`slot_replace` or hands it to
        :meth:`discard_if_unreferenced`.
        """
        node = ChainNode(pair, dp, predecessor)
        if predecessor is not None:
            predecessor.refcount += 1
        self.allocated += 1
        self.live += 1
        if self.live > self.peak:
            self.peak = self.live
        return node

    @staticmethod
    def acquire(node: Optional[ChainNode]) -> Optional[ChainNode]:
        if node is not None:
            node.refcount += 1
        return node

    def release(self, node: Optional[ChainNode]) -> None:
        if node is None:
            return
        node.refcount -= 1
        self._collect(node)

    def discard_if_unreferenced(self, node: ChainNode) -> None:
        self._collect(node)

    def _collect(self, node: Optional[ChainNode]) -> None:
        while node is not None and node.refcount == 0:
            self.live -= 1
            pred = node.predecessor
            node.predecessor = None
            node.refcount = -1  # freed marker
            if pred is not None:
                pred.refcount -= 1
            node = pred

    def slot_replace(self, slots: list, d: int, node: ChainNode) -> None:
        """Point ``slots[d]`` at ``node`` and drop the reference it held."""
        node.refcount += 1
        if d >= len(slots):
            slots.extend([None] * (d + 1 - len(slots)))
        old = slots[d]
        slots[d] = node
        self.release(old)


def record_pair(store: ChainStore, pair: MatchPair, dp: int, predecessor: Optional[ChainNode] = None) -> ChainNode:
    return store.record_pair(pair, dp, predecessor)


def slot_replace(store: ChainStore, slots: list, d: int, node: ChainNode) -> None:
    store.slot_replace(slots, d, node)


def extract_chain(best_node: Optional[ChainNode]) -> list:
    """Follow predecessor links back from ``best_node``; oldest pair first."""
    chain = []
    node = best_node
    while node is not None:
        chain.append(node.pair)
        node = node.predecessor
    chain.reverse()
    return chain


def chain_segments(chain: list, k: int, merge_runs: bool) -> list:
    """Turn a pair chain into ``(i, j, length)`` segments.

    With ``merge_runs`` consecutive pairs where one continues the other are
    fused into one longer segment.
    """
    segments: list = []
    for p in chain:
        if merge_runs and segments:
            i, j, ln = segments[-1]
            if p.i == i + ln - k + 1 and p.j == j + ln - k + 1:
                segments[-1] = (i, j, ln + 1)
                continue
        segments.append((p.i, p.j, k))
    return segments


def reachable_nodes(roots: Iterable) -> set:
    """Ids of every node reachable from ``roots`` (leak accounting)."""
    seen: set = set()
    for node in roots:
        while node is not None and id(node) not in seen:
            seen.add(id(node))
            node = node.predecessor
    return seen
