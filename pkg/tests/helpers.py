"""Test-only brute force, kept apart from the package's own oracle."""
import random
from functools import lru_cache

ALPHABETS = {1: "a", 2: "ab", 4: "ACGT", 20: "ACDEFGHIKLMNPQRSTVWY"}


def random_instance(rng: random.Random, max_len=60, sigmas=(1, 2, 4, 20), ks=range(1, 6)):
    sigma = rng.choice(sigmas)
    letters = ALPHABETS[sigma]
    m = rng.randint(0, max_len)
    n = rng.randint(0, max_len)
    a = "".join(rng.choice(letters) for _ in range(m))
    b = "".join(rng.choice(letters) for _ in range(n))
    return a, b, rng.choice(list(ks))


def all_segments(a, b, k, plus):
    """Every common substring occurrence usable as one chain segment."""
    segs = []
    for i in range(len(a)):
        for j in range(len(b)):
            ln = 0
            while i + ln < len(a) and j + ln < len(b) and a[i + ln] == b[j + ln]:
                ln += 1
                if ln == k or (plus and ln > k):
                    segs.append((i, j, ln))
    return segs


def best_chain_ending(a, b, k, plus):
    """{segment: best score of any chain whose last segment is it}, by exhaustive DAG search."""
    segs = all_segments(a, b, k, plus)

    @lru_cache(maxsize=None)
    def best(seg):
        i, j, ln = seg
        own = ln if plus else 1
        prev = [best(g) for g in segs if g[0] + g[2] <= i and g[1] + g[2] <= j]
        return own + max(prev, default=0)

    return {s: best(s) for s in segs}


def brute_prefix_value(ending, i, j):
    """Best chain confined to A[0:i), B[0:j)."""
    return max((v for (si, sj, ln), v in ending.items() if si + ln <= i and sj + ln <= j), default=0)
