"""Translation from Mockingbird terms to duplicative forests and
verification that the term upset and the forest upset are isomorphic posets.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .forests import (
    DupForest,
    EMPTY,
    WHITE,
    compact_key,
    forest_upset,
    key_successors,
)
from .posets import DEFAULT_BUDGET, ExplorationError
from .rewrite import explore_component, load_system
from .terms import (
    Application,
    Basic,
    Term,
    TermError,
    Variable,
    app,
    basic,
    render_term,
    replace_at,
    subterm_at,
)

_SYS_M = load_system("builtin:M")
_M = basic("M")

_FR_MEMO: dict[Term, DupForest] = {}


def clear_fr_memo() -> None:
    _FR_MEMO.clear()


def fr_map(t: Term) -> DupForest:
    """Forest translation of a term over {M} (variables allowed as inert
    leaves).  Leaves and MM map to the empty forest; M applied to a leaf is
    a lone white node; M applied to an application wraps a white node around
    the argument's forest; a left application concatenates; a variable head
    is transparent.  The image is always white-only."""
    cached = _FR_MEMO.get(t)
    if cached is not None:
        return cached
    result = _fr(t)
    _FR_MEMO[t] = result
    return result


def _fr(t: Term) -> DupForest:
    if isinstance(t, Variable):
        return EMPTY
    if isinstance(t, Basic):
        if t.name != "M":
            raise TermError(f"foreign combinator {t.name} (alphabet is {{M}})")
        return EMPTY
    left, right = t.left, t.right
    if isinstance(left, Application):
        return fr_map(left) + fr_map(right)
    if isinstance(left, Variable):
        return fr_map(right)
    if left.name != "M":
        raise TermError(f"foreign combinator {left.name} (alphabet is {{M}})")
    if isinstance(right, Application):
        return ((WHITE, fr_map(right)),)
    if isinstance(right, Basic) and right.name != "M":
        raise TermError(f"foreign combinator {right.name} (alphabet is {{M}})")
    if isinstance(right, Variable):
        return ((WHITE, EMPTY),)
    return EMPTY  # M M


def right_comb(d: int) -> Term:
    """M applied to itself d times, associated to the right: r_d = M r_{d-1}."""
    if d < 0:
        raise TermError("right comb index must be >= 0")
    t: Term = _M
    for _ in range(d):
        t = app(_M, t)
    return t


@dataclass
class IsoReport:
    term: Term
    term_count: int
    forest_count: int
    fr_injective_on_upset: bool
    cover_preserving: bool
    method: str  # "fr" | "digraph"
    verdict: str  # "isomorphic" | "mismatch(<details>)"

    @property
    def isomorphic(self) -> bool:
        return self.verdict == "isomorphic"


def progressing_redexes(t: Term) -> list[tuple[int, ...]]:
    """Paths of the subterms M s with s != M, listed in the order in which
    the forest translation creates white nodes.

    Firing one of these is exactly the non-loop part of the step relation
    (M M only rewrites to itself), and distinct paths always give distinct
    results.  The order matches the pre-order of the white nodes of the
    forest translation.
    """
    out: list[tuple[int, ...]] = []

    def scan(u: Term, path: tuple[int, ...]) -> None:
        if not isinstance(u, Application):
            return
        left, right = u.left, u.right
        if isinstance(left, Application):
            scan(left, path + (0,))
            scan(right, path + (1,))
            return
        if isinstance(left, Variable):
            scan(right, path + (1,))
            return
        # left is the combinator M
        if isinstance(right, Variable):
            out.append(path)
        elif isinstance(right, Application):
            out.append(path)
            scan(right, path + (1,))
        # right = M: the redex M M only loops and creates no white node

    scan(t, ())
    return out


def fire_redex(t: Term, path: tuple[int, ...]) -> Term:
    """Rewrite the redex M s at the path into s s."""
    s = subterm_at(t, path).right
    return replace_at(t, path, app(s, s))


def verify_fr_isomorphism(t: Term, budget: int = DEFAULT_BUDGET) -> IsoReport:
    """Check that the upset of t and the upset of fr_map(t) are isomorphic
    posets, using fr transported along rewrite steps as the candidate map.

    fr itself collapses every term to a white-only forest, so it cannot be
    the isomorphism; instead its local structure is transported: the i-th
    progressing redex of a term is paired with the i-th white node of its
    assigned forest, and firing the redex is matched with blackening the
    node.  The product graph is explored breadth-first from (t, fr(t)).  If
    the resulting term-to-forest assignment is well defined (independent of
    the path taken) and injective, and the out-degrees agree everywhere,
    then it is a bijection matching non-loop steps on both sides — a poset
    isomorphism witnessed constructively.  If the transport breaks down,
    both posets are built explicitly and compared by generic digraph
    isomorphism (feasible for small components only).
    """
    start_key = compact_key(fr_map(t))
    assignment: dict[Term, str] = {t: start_key}
    forest_keys: set[str] = {start_key}
    queue: deque[Term] = deque([t])
    consistent = True
    injective = True
    detail = ""

    while queue and consistent and injective:
        u = queue.popleft()
        key = assignment[u]
        redexes = progressing_redexes(u)
        blackenings = key_successors(key)
        if len(redexes) != len(blackenings):
            consistent = False
            detail = f"out-degree mismatch at {render_term(u)}"
            break
        for path, key2 in zip(redexes, blackenings):
            v = fire_redex(u, path)
            seen_key = assignment.get(v)
            if seen_key is not None:
                if seen_key != key2:
                    consistent = False
                    detail = f"transport conflict at {render_term(v)}"
                    break
                continue
            if key2 in forest_keys:
                injective = False
                detail = f"forest collision at {render_term(v)}"
                break
            if len(assignment) >= budget:
                raise ExplorationError("budget exhausted during verification")
            assignment[v] = key2
            forest_keys.add(key2)
            queue.append(v)

    if consistent and injective:
        # Whether literal fr is injective on the upset is incidental to the
        # verdict; report it when cheap to know.
        fr_injective = False
        if len(assignment) <= 10_000:
            images = {compact_key(fr_map(u)) for u in assignment}
            fr_injective = len(images) == len(assignment)
        return IsoReport(
            term=t, term_count=len(assignment), forest_count=len(forest_keys),
            fr_injective_on_upset=fr_injective, cover_preserving=True,
            method="fr-transport", verdict="isomorphic")

    # The transported map is not the witnessing isomorphism here; fall back
    # to generic digraph isomorphism of the two step graphs (no self-loops).
    import networkx as nx

    term_poset = explore_component(_SYS_M, t, "up", budget=budget)
    forest_poset = forest_upset(fr_map(t), budget=budget)
    g1 = nx.DiGraph(term_poset.nonloop_edges())
    g1.add_nodes_from(range(len(term_poset.nodes)))
    g2 = nx.DiGraph(forest_poset.nonloop_edges())
    g2.add_nodes_from(range(len(forest_poset.nodes)))
    iso = nx.is_isomorphic(g1, g2)
    verdict = "isomorphic" if iso else f"mismatch({detail or 'digraphs differ'})"
    return IsoReport(
        term=t, term_count=len(term_poset.nodes),
        forest_count=len(forest_poset.nodes),
        fr_injective_on_upset=False, cover_preserving=consistent,
        method="digraph", verdict=verdict)
