"""Brute-force ground truth: explicit upset construction with exact counts
of elements, Hasse edges, and intervals, the covering/interval coefficient
maps, meet-decomposition counts, and the extremal census over all
Mockingbird combinators of a degree.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Optional

from .forests import (
    DupForest,
    compact_key,
    forest_upset,
    key_successors,
    ladder,
    meet,
)
from .posets import DEFAULT_BUDGET, ExploredPoset, down_sets, poset_analysis
from .rewrite import extremal_by_pattern
from .terms import Term, app, basic


class OracleError(ValueError):
    pass


@dataclass
class OracleCounts:
    d: int
    elements: int
    hasse_edges: int
    intervals: Optional[int]
    cover_equals_step: Optional[bool]


MAX_EXACT_D = 4       # full in-memory poset with transitive reduction
MAX_STREAM_D = 5      # element/step-edge counting by streaming over keys


def oracle_poset_counts(d: int, with_intervals: bool = True,
                        budget: int = DEFAULT_BUDGET) -> OracleCounts:
    """Counts for the upset of the d-ladder by explicit construction.

    For d <= 4 the whole poset is built: hasse_edges is the exact
    transitive reduction and cover_equals_step compares it against the
    single-step relation.  d = 5 (3.26M elements) streams over compact
    string keys, counting elements and single-step edges; there
    hasse_edges reports the step-edge count (covering equals single step
    on every exactly checked instance) and cover_equals_step is None.
    Interval counting is limited to d <= 4.
    """
    if d < 0:
        raise OracleError("ladder index must be >= 0")
    if d > MAX_STREAM_D:
        raise OracleError(f"d = {d} is infeasible for explicit construction")
    if d > MAX_EXACT_D:
        if with_intervals:
            raise OracleError(f"interval counting is infeasible for d = {d}")
        elements, step_edges = _ladder_stream_counts(d)
        return OracleCounts(d=d, elements=elements, hasse_edges=step_edges,
                            intervals=None, cover_equals_step=None)

    g = forest_upset(ladder(d), budget=budget)
    poset_analysis(g, check_lattice=False)
    intervals = None
    if with_intervals:
        intervals = sum(r.bit_count() for r in g.reach)
    return OracleCounts(
        d=d,
        elements=len(g.nodes),
        hasse_edges=len(g.hasse_edges),
        intervals=intervals,
        cover_equals_step=g.hasse_edges == g.nonloop_edges(),
    )


def _ladder_stream_counts(d: int) -> tuple[int, int]:
    """Element and single-step edge counts of the d-ladder upset, keeping
    only compact string keys in memory."""
    start = compact_key(ladder(d))
    seen = {start}
    queue = deque([start])
    edges = 0
    while queue:
        s = queue.popleft()
        succ = key_successors(s)
        edges += len(succ)
        for s2 in succ:
            if s2 not in seen:
                seen.add(s2)
                queue.append(s2)
    return len(seen), edges


def _analyzed_upset(f: DupForest, budget: int) -> ExploredPoset:
    g = forest_upset(f, budget=budget)
    return poset_analysis(g, check_lattice=False)


def oracle_ni(f: DupForest, budget: int = DEFAULT_BUDGET) -> dict[DupForest, int]:
    """In-degree of every element of the upset of f under the single-step
    relation: the number of forests each element covers.  Zero entries are
    omitted."""
    g = _analyzed_upset(f, budget)
    counts: dict[DupForest, int] = {}
    for i, j in g.nonloop_edges():
        target = g.nodes[j]
        counts[target] = counts.get(target, 0) + 1
    return counts


def oracle_ns(f: DupForest, budget: int = DEFAULT_BUDGET) -> dict[DupForest, int]:
    """Down-set size of every element within the upset of f: the number of
    elements g with f <= g <= f'."""
    g = _analyzed_upset(f, budget)
    down = down_sets(g)
    return {g.nodes[j]: down[j].bit_count() for j in range(len(g.nodes))}


def oracle_md_k(f: DupForest, k: int,
                budget: int = DEFAULT_BUDGET) -> dict[DupForest, int]:
    """For every element f' of the upset of f, the number of k-tuples of
    elements of the upset of f' whose iterated meet equals f'.  Exhaustive
    over |upset|^k tuples: tiny instances only."""
    if k < 1:
        raise OracleError("k must be >= 1")
    g = _analyzed_upset(f, budget)
    n = len(g.nodes)
    out: dict[DupForest, int] = {}
    for i in range(n):
        base = g.nodes[i]
        above = [g.nodes[j] for j in range(n) if g.reach[i] >> j & 1]
        if len(above) ** k > 1_000_000:
            raise OracleError("meet-decomposition enumeration is infeasible here")
        count = 0
        for combo in product(above, repeat=k):
            m = combo[0]
            for x in combo[1:]:
                m = meet(m, x)
            if m == base:
                count += 1
        out[base] = count
    return out


# ---------------------------------------------------------------------------
# Extremal census over all combinators of a degree

_M = basic("M")
_TREES_BY_DEGREE: list[list[Term]] = [[_M]]


def all_combinators(degree: int) -> list[Term]:
    """All binary application trees with the given number of applications
    over the single leaf M (Catalan many)."""
    if degree < 0:
        raise OracleError("degree must be >= 0")
    while len(_TREES_BY_DEGREE) <= degree:
        d = len(_TREES_BY_DEGREE)
        level = [
            app(left, right)
            for i in range(d)
            for left in _TREES_BY_DEGREE[i]
            for right in _TREES_BY_DEGREE[d - 1 - i]
        ]
        _TREES_BY_DEGREE.append(level)
    return list(_TREES_BY_DEGREE[degree])


def oracle_extremal_census(degree: int) -> dict[str, int]:
    """Classify every combinator of the degree as maximal/minimal by
    pattern avoidance and return the totals."""
    if degree > 10:
        raise OracleError("census limited to degree <= 10")
    total = maximal = minimal = 0
    for t in all_combinators(degree):
        total += 1
        flags = extremal_by_pattern(t)
        maximal += flags["maximal"]
        minimal += flags["minimal"]
    return {"total": total, "maximal": maximal, "minimal": minimal}
