"""Exact cost of (edge-)distinguishing by isomorph-free red-subset enumeration.

Red sets are enumerated size by size as lex-min orbit representatives under
the automorphism group of the uncolored graph.  A red set is distinguishing
iff only the identity maps it onto itself, which is read off the enumerated
group directly.  A size level counts as refuted only after it completes.
"""

from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .graph import EDGE, VERTEX, Graph, GraphError, TwoColoring
from .symmetry import AutGroup, SearchBudgetExceeded, automorphism_group, edge_elements, is_distinguishing
from .symmetry.subsets import _Counter, subset_representatives

WORKERS_ENV = "SYMBREAK_WORKERS"


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class CostResult:
    graph_spec: str
    mode: str
    value: Optional[int]
    witness: Optional[TwoColoring]
    refuted_below: bool
    refuted_through: int
    status: str  # "found", "not-found" or "budget"
    tests: int = 0  # canonicity tests run; depends on sharding, so kept out of the JSON

    def to_json(self) -> str:
        w = None
        if self.witness is not None:
            w = {"red_vertices": sorted(self.witness.red_vertices),
                 "red_edges": sorted(list(e) for e in self.witness.red_edges)}
        return json.dumps({
            "graph_spec": self.graph_spec, "mode": self.mode, "value": self.value, "witness": w,
            "refuted_below": self.refuted_below, "refuted_through": self.refuted_through,
            "status": self.status,
        })


def _first_distinguishing(action: np.ndarray, m: int, shard: tuple[int, int],
                          budget: Optional[int]) -> tuple[Optional[tuple[int, ...]], int, bool]:
    """First (lex-min) distinguishing representative in one shard, tests used, budget hit."""
    counter = _Counter(budget)
    try:
        for rep in subset_representatives(action, m, shard=shard, counter=counter):
            cols = list(rep)
            mask = np.zeros(action.shape[1], dtype=bool)
            mask[cols] = True
            if int(mask[action[:, cols]].all(axis=1).sum()) == 1:
                return rep, counter.tests, False
    except SearchBudgetExceeded:
        return None, counter.tests, True
    return None, counter.tests, False


def _checkpoint_key(g: Graph, mode: str, order: int) -> str:
    h = hashlib.sha256(repr((g.order, g.edges, mode, order)).encode()).hexdigest()
    return h[:16]


def _load_checkpoint(path: Optional[Path], key: str) -> int:
    if path is None or not path.exists():
        return 0
    data = json.loads(path.read_text())
    return int(data.get("refuted_through", 0)) if data.get("key") == key else 0


def _save_checkpoint(path: Optional[Path], key: str, spec: str, mode: str, done: int) -> None:
    if path is None:
        return
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps({"key": key, "graph_spec": spec, "mode": mode, "refuted_through": done}))
    tmp.replace(path)


def exact_cost(g: Graph, mode: str, max_size: Optional[int] = None, budget: Optional[int] = None, *,
               group: Optional[AutGroup] = None, graph_spec: str = "", workers: int = 1,
               checkpoint: Optional[str | Path] = None) -> CostResult:
    """Smallest red-set size admitting a distinguishing 2-coloring (vertex or edge mode).

    ``group`` may be supplied (e.g. the product-structure group); it must be
    the full automorphism group of ``g``.  ``budget`` caps canonicity tests
    per shard.  ``checkpoint`` names a JSON file recording the last fully
    refuted size; a rerun with the same graph and mode resumes after it.
    The witness is the lex-min distinguishing representative of the first
    successful size, independent of ``workers``.
    """
    if mode not in (VERTEX, EDGE):
        raise GraphError(f"mode must be 'vertex' or 'edge', got {mode!r}")
    group = group or automorphism_group(g)
    if group.degree != g.order:
        raise GraphError("group degree does not match the graph")
    npoints = g.order if mode == VERTEX else g.size
    if max_size is None:
        max_size = npoints // 2
    if group.order == 1:
        empty = TwoColoring(mode)
        return CostResult(graph_spec, mode, 0, empty, True, -1, "found")
    elements = group.elements()
    action = elements if mode == VERTEX else edge_elements(elements, g)
    path = Path(checkpoint) if checkpoint else None
    key = _checkpoint_key(g, mode, group.order)
    done = _load_checkpoint(path, key)
    tests = 0
    workers = max(1, workers)
    for m in range(max(1, done + 1), max_size + 1):
        shards = [(i, workers) for i in range(workers)]
        if workers == 1:
            results = [_first_distinguishing(action, m, shards[0], budget)]
        else:
            with ProcessPoolExecutor(workers) as ex:
                results = list(ex.map(_first_distinguishing, [action] * workers, [m] * workers, shards,
                                      [budget] * workers))
        tests += sum(r[1] for r in results)
        hits = [r[0] for r in results if r[0] is not None]
        if hits:
            rep = min(hits)
            witness = _witness(g, mode, rep)
            if not is_distinguishing(g, witness):
                raise GraphError("witness failed the independent distinguishing check")
            return CostResult(graph_spec, mode, m, witness, True, m - 1, "found", tests)
        if any(r[2] for r in results):
            return CostResult(graph_spec, mode, None, None, False, m - 1, "budget", tests)
        done = m
        _save_checkpoint(path, key, graph_spec, mode, done)
    return CostResult(graph_spec, mode, None, None, False, max_size, "not-found", tests)


def _witness(g: Graph, mode: str, rep: tuple[int, ...]) -> TwoColoring:
    if mode == VERTEX:
        return TwoColoring.vertices(rep)
    return TwoColoring.edges(g.edges[i] for i in rep)


def verify_bound(g: Graph, mode: str, claimed: int, witness: TwoColoring) -> bool:
    """True iff the witness has exactly ``claimed`` red elements and is distinguishing."""
    witness.check_hosted(g)
    if witness.mode != mode:
        raise GraphError(f"witness mode {witness.mode!r} differs from {mode!r}")
    return witness.red_count == claimed and is_distinguishing(g, witness)


def no_distinguishing_of_size(g: Graph, mode: str, m: int, group: Optional[AutGroup] = None) -> bool:
    """True iff no red set of exactly ``m`` elements distinguishes ``g`` (orbit-representative scan)."""
    group = group or automorphism_group(g)
    elements = group.elements()
    action = elements if mode == VERTEX else edge_elements(elements, g)
    rep, _, _ = _first_distinguishing(action, m, (0, 1), None)
    return rep is None
