"""Explicit finite digraphs of one-step rewrites and their order analysis.

An :class:`ExploredPoset` is produced by breadth-first exploration (of term
rewriting or forest duplication) and carries the raw step edges, including
self-loops.  :func:`poset_analysis` derives the order-theoretic data:
acyclicity, Hasse diagram (transitive reduction), extremal elements, and the
lattice property checked brute-force over the explicit reachability relation.

Reachability is held as one Python integer bitset per node, which keeps the
pairwise lattice check practical up to a few thousand nodes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Optional

DEFAULT_BUDGET = 10_000_000


class ExplorationError(ValueError):
    pass


class IncompleteExplorationError(ExplorationError):
    """Raised when an analysis requires a complete component."""


@dataclass
class ExploredPoset:
    nodes: list  # BFS discovery order; node 0 is the start
    step_edges: set[tuple[int, int]]  # includes self-loops
    is_complete: bool
    hasse_edges: Optional[set[tuple[int, int]]] = None
    is_acyclic: Optional[bool] = None
    is_lattice: Optional[bool] = None
    minimal: Optional[set[int]] = None
    maximal: Optional[set[int]] = None
    # reachability bitsets (reach[i] has bit j iff i <= j), filled by analysis
    reach: Optional[list[int]] = field(default=None, repr=False)

    @property
    def analyzed(self) -> bool:
        return self.is_acyclic is not None

    def nonloop_edges(self) -> set[tuple[int, int]]:
        return {(i, j) for (i, j) in self.step_edges if i != j}

    def self_loops(self) -> set[tuple[int, int]]:
        return {(i, j) for (i, j) in self.step_edges if i == j}

    def index_of(self, node: Hashable) -> int:
        return self.nodes.index(node)

    def to_json_dict(self, label: Callable[[Any], str]) -> dict:
        flags = {
            "is_complete": self.is_complete,
            "is_acyclic": self.is_acyclic,
            "is_lattice": self.is_lattice,
        }
        out = {
            "nodes": [label(n) for n in self.nodes],
            "step_edges": sorted(self.step_edges),
            "hasse_edges": sorted(self.hasse_edges) if self.hasse_edges is not None else None,
            "flags": flags,
        }
        if self.minimal is not None:
            out["minimal"] = sorted(self.minimal)
        if self.maximal is not None:
            out["maximal"] = sorted(self.maximal)
        return out


def explore(start: Hashable,
            neighbors: Callable[[Any], Iterable],
            budget: int = DEFAULT_BUDGET,
            sort_key: Callable[[Any], Any] = None,
            edge_source: Callable[[Any], Iterable] = None) -> ExploredPoset:
    """Generic deduplicated BFS closure.

    ``neighbors`` drives discovery; ``edge_source`` (defaults to neighbors)
    lists the step successors used to record directed edges.  Discovery order
    is deterministic: neighbor sets are sorted by ``sort_key``.
    """
    if budget < 1:
        raise ExplorationError("budget must be >= 1")
    if sort_key is None:
        sort_key = repr
    if edge_source is None:
        edge_source = neighbors

    index: dict[Hashable, int] = {start: 0}
    nodes: list = [start]
    queue: deque = deque([start])
    complete = True

    while queue:
        u = queue.popleft()
        for v in sorted(set(neighbors(u)), key=sort_key):
            if v not in index:
                if len(nodes) >= budget:
                    complete = False
                    continue
                index[v] = len(nodes)
                nodes.append(v)
                queue.append(v)

    edges: set[tuple[int, int]] = set()
    for u, i in index.items():
        for v in edge_source(u):
            j = index.get(v)
            if j is not None:
                edges.add((i, j))

    return ExploredPoset(nodes=nodes, step_edges=edges, is_complete=complete)


def _topological_order(n: int, adj: list[list[int]]) -> Optional[list[int]]:
    indeg = [0] * n
    for u in range(n):
        for v in adj[u]:
            indeg[v] += 1
    queue = deque(i for i in range(n) if indeg[i] == 0)
    order = []
    while queue:
        u = queue.popleft()
        order.append(u)
        for v in adj[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    return order if len(order) == n else None


def _reachability(n: int, adj: list[list[int]],
                  topo: Optional[list[int]]) -> list[int]:
    reach = [1 << i for i in range(n)]
    if topo is not None:
        for u in reversed(topo):
            r = reach[u]
            for v in adj[u]:
                r |= reach[v]
            reach[u] = r
        return reach
    # cyclic fallback: per-node BFS (only hit on small degenerate inputs)
    for s in range(n):
        seen = 1 << s
        stack = [s]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                bit = 1 << v
                if not seen & bit:
                    seen |= bit
                    stack.append(v)
        reach[s] = seen
    return reach


def poset_analysis(g: ExploredPoset, check_lattice: bool = True) -> ExploredPoset:
    """Fill acyclicity, Hasse edges, extremal sets, and the lattice flag.

    Self-loops are ignored throughout.  The lattice check asks, for every
    node pair, for a unique least upper bound and a unique greatest lower
    bound within the component, straight from the reachability bitsets; it
    is quadratic in the node count and can be skipped for large posets
    (is_lattice then stays None).  Requires a complete exploration.  On a
    cyclic graph only the flags and extremal sets are meaningful;
    hasse_edges is left empty.
    """
    if not g.is_complete:
        raise IncompleteExplorationError(
            "poset_analysis requires a complete exploration")
    n = len(g.nodes)
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, j in g.step_edges:
        if i != j:
            adj[i].append(j)

    topo = _topological_order(n, adj)
    g.is_acyclic = topo is not None
    reach = _reachability(n, adj, topo)
    g.reach = reach

    above = 0  # union over i of reach[i] minus i itself
    for i in range(n):
        above |= reach[i] & ~(1 << i)
    g.minimal = {i for i in range(n) if not (above >> i) & 1}
    g.maximal = {i for i in range(n) if reach[i] == 1 << i}

    if not g.is_acyclic:
        g.hasse_edges = set()
        g.is_lattice = False
        return g

    # Cover edges: a step edge u->v is a cover iff no other successor of u
    # already reaches v.
    hasse: set[tuple[int, int]] = set()
    for u in range(n):
        succs = adj[u]
        for v in succs:
            bit = 1 << v
            if not any(w != v and reach[w] & bit for w in succs):
                hasse.add((u, v))
    g.hasse_edges = hasse

    if not check_lattice:
        return g

    up_index = {reach[i]: i for i in range(n)}
    down = [1 << i for i in range(n)]
    for i in range(n):
        r = reach[i]
        j = 0
        while r:
            if r & 1 and j != i:
                down[j] |= 1 << i
            r >>= 1
            j += 1
    down_index = {down[i]: i for i in range(n)}

    g.is_lattice = True
    for a in range(n):
        da = down[a]
        for b in range(a + 1, n):
            if (reach[a] & reach[b]) not in up_index or \
                    (da & down[b]) not in down_index:
                g.is_lattice = False
                return g
    return g


def brute_lub(g: ExploredPoset, a: int, b: int) -> Optional[int]:
    """Unique least upper bound of nodes a, b from explicit reachability,
    or None if it does not exist. Requires prior poset_analysis."""
    if g.reach is None:
        raise ExplorationError("run poset_analysis first")
    common = g.reach[a] & g.reach[b]
    if common == 0:
        return None
    # the LUB, if any, is the x in common whose whole up-set equals common
    for x in _bits(common):
        if g.reach[x] == common:
            return x
    return None


def brute_glb(g: ExploredPoset, a: int, b: int) -> Optional[int]:
    if g.reach is None:
        raise ExplorationError("run poset_analysis first")
    n = len(g.nodes)
    down_a = 0
    down_b = 0
    bit_a, bit_b = 1 << a, 1 << b
    for i in range(n):
        if g.reach[i] & bit_a:
            down_a |= 1 << i
        if g.reach[i] & bit_b:
            down_b |= 1 << i
    common = down_a & down_b
    for x in _bits(common):
        down_x = 0
        for i in range(n):
            if g.reach[i] & (1 << x):
                down_x |= 1 << i
        if down_x == common:
            return x
    return None


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def down_sets(g: ExploredPoset) -> list[int]:
    """Transpose of the reachability bitsets: down[j] has bit i iff i <= j."""
    if g.reach is None:
        raise ExplorationError("run poset_analysis first")
    n = len(g.nodes)
    down = [0] * n
    for i in range(n):
        r = g.reach[i]
        bit_i = 1 << i
        j = 0
        while r:
            if r & 1:
                down[j] |= bit_i
            r >>= 1
            j += 1
    return down
