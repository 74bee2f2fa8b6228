"""Isomorph-free enumeration of subsets under an explicitly enumerated group.

A subset is represented by its sorted tuple; the orbit representative is the
lexicographically smallest sorted image.  Dropping the largest element of a
representative leaves a representative, so representatives can be grown
element by element (orderly generation) and a failed canonicity test prunes
the whole branch.
"""

from __future__ import annotations

from typing import Callable, Iterator, Optional

import numpy as np

from .engine import SearchBudgetExceeded


def is_lex_min(action: np.ndarray, subset: tuple[int, ...]) -> bool:
    """True iff ``subset`` is the lex-smallest sorted image under ``action`` rows."""
    if not subset:
        return True
    target = np.asarray(subset, dtype=np.int64)
    imgs = np.sort(action[:, list(subset)].astype(np.int64), axis=1)
    diff = imgs - target
    nz = diff != 0
    first = nz.argmax(axis=1)
    lower = nz.any(axis=1) & (diff[np.arange(len(diff)), first] < 0)
    return not bool(lower.any())


def setwise_stabilizer_size(action: np.ndarray, subset: tuple[int, ...]) -> int:
    mask = np.zeros(action.shape[1], dtype=bool)
    mask[list(subset)] = True
    return int(mask[action[:, list(subset)]].all(axis=1).sum()) if subset else len(action)


def pointwise_stabilizer_size(action: np.ndarray, subset: tuple[int, ...]) -> int:
    if not subset:
        return len(action)
    cols = list(subset)
    return int((action[:, cols] == np.asarray(cols)).all(axis=1).sum())


class _Counter:
    def __init__(self, budget: Optional[int]):
        self.budget = budget
        self.tests = 0

    def tick(self) -> None:
        self.tests += 1
        if self.budget is not None and self.tests > self.budget:
            raise SearchBudgetExceeded(self.budget)


def subset_representatives(action: np.ndarray, m: int, *,
                           accept: Optional[Callable[[tuple[int, ...]], bool]] = None,
                           shard: tuple[int, int] = (0, 1),
                           budget: Optional[int] = None,
                           counter: Optional[_Counter] = None) -> Iterator[tuple[int, ...]]:
    """Yield lex-min orbit representatives of ``m``-subsets in lexicographic order.

    ``accept`` must be a prefix-closed predicate invariant under the group
    (e.g. a pairwise distance floor); rejected prefixes are pruned.  With
    ``shard=(i, k)`` only the branches whose canonical prefix of length
    ``min(m, 2)`` has rank ``i`` modulo ``k`` are explored; the union over all
    shards is the full stream.
    """
    npoints = action.shape[1]
    counter = counter or _Counter(budget)
    index, count = shard
    split_depth = min(m, 2)
    rank = [0]

    def extend(prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == m:
            yield prefix
            return
        start = prefix[-1] + 1 if prefix else 0
        stop = npoints - (m - len(prefix) - 1)
        for x in range(start, stop):
            cand = prefix + (x,)
            if accept is not None and not accept(cand):
                continue
            counter.tick()
            if not is_lex_min(action, cand):
                continue
            if len(cand) == split_depth and count > 1:
                mine = rank[0] % count == index
                rank[0] += 1
                if not mine:
                    continue
            yield from extend(cand)

    if m == 0:
        if index == 0:
            yield ()
        return
    yield from extend(())
