"""Duplicative forests: planar trees of white/black nodes, the duplication
step, upset exploration, and the recursive meet/join lattice operations.

A forest is a tuple of trees; a tree is a pair ``(color, children)`` with
color ``"w"`` or ``"b"`` and children again a forest.  Plain nested tuples
keep forests hashable and cheap to deduplicate during exploration.
"""

from __future__ import annotations

from typing import Iterator

from .posets import DEFAULT_BUDGET, ExploredPoset, explore

WHITE = "w"
BLACK = "b"

DupTree = tuple  # (color, DupForest)
DupForest = tuple  # tuple of DupTree

EMPTY: DupForest = ()


class ForestError(ValueError):
    """Malformed forest text or invalid forest operation input."""


class IncompatibleForests(ForestError):
    """meet/join called on forests that share no common upset."""


def tree(color: str, children: DupForest = EMPTY) -> DupTree:
    if color not in (WHITE, BLACK):
        raise ForestError(f"invalid color {color!r}")
    return (color, children)


# ---------------------------------------------------------------------------
# Parsing and printing
#
# Grammar: forest := tree*; tree := ('w'|'b') ('(' forest ')')?.
# Whitespace between trees is optional, so both the spaced rendering
# ("b(w w) w") and the compact key ("b(ww)w") parse back to the same value.


def parse_forest(text: str) -> DupForest:
    pos = 0
    n = len(text)

    def parse_trees() -> DupForest:
        nonlocal pos
        trees: list[DupTree] = []
        while True:
            while pos < n and text[pos].isspace():
                pos += 1
            if pos >= n or text[pos] == ")":
                return tuple(trees)
            c = text[pos]
            if c not in (WHITE, BLACK):
                raise ForestError(f"expected 'w' or 'b' at position {pos}, got {c!r}")
            pos += 1
            children: DupForest = EMPTY
            if pos < n and text[pos] == "(":
                open_pos = pos
                pos += 1
                children = parse_trees()
                if pos >= n or text[pos] != ")":
                    raise ForestError(f"unbalanced parenthesis at position {open_pos}")
                pos += 1
            trees.append((c, children))

    forest = parse_trees()
    if pos != n:
        raise ForestError(f"trailing input at position {pos}")
    return forest


def render_forest(f: DupForest) -> str:
    """Human-readable rendering with spaces between sibling trees."""
    parts = []
    for color, children in f:
        if children:
            parts.append(f"{color}({render_forest(children)})")
        else:
            parts.append(color)
    return " ".join(parts)


def compact_key(f: DupForest) -> str:
    """Space-free rendering; still unambiguous, used as a sort/dedup key."""
    out = []
    for color, children in f:
        out.append(color)
        if children:
            out.append("(")
            out.append(compact_key(children))
            out.append(")")
    return "".join(out)


# ---------------------------------------------------------------------------
# Constructors and metrics


def ladder(d: int) -> DupForest:
    """The chain of d white nodes; ladder(0) is the empty forest."""
    if d < 0:
        raise ForestError("ladder index must be >= 0")
    f = EMPTY
    for _ in range(d):
        f = ((WHITE, f),)
    return f


def forest_height(f: DupForest) -> int:
    """Number of nodes on a longest root-to-leaf chain; height(ladder(d)) = d."""
    return max((1 + forest_height(children) for _, children in f), default=0)


def node_count(f: DupForest) -> int:
    return sum(1 + node_count(children) for _, children in f)


def black_count(f: DupForest) -> int:
    return sum((color == BLACK) + black_count(children) for color, children in f)


def white_count(f: DupForest) -> int:
    return sum((color == WHITE) + white_count(children) for color, children in f)


def is_white_only(f: DupForest) -> bool:
    return all(color == WHITE and is_white_only(children) for color, children in f)


# ---------------------------------------------------------------------------
# The duplication step


def _tree_successors(t: DupTree) -> Iterator[DupTree]:
    color, children = t
    if color == WHITE:
        yield (BLACK, children + children)
    for g in _forest_successors(children):
        yield (color, g)


def _forest_successors(f: DupForest) -> Iterator[DupForest]:
    for i, t in enumerate(f):
        for t2 in _tree_successors(t):
            yield f[:i] + (t2,) + f[i + 1:]


def forest_step_successors(f: DupForest) -> set[DupForest]:
    """One result per white node: recolor it black and duplicate its child
    forest in place (g becomes g followed by a copy of g)."""
    return set(_forest_successors(f))


def key_successors(s: str) -> list[str]:
    """Duplication successors of a compact forest key by string surgery,
    ordered by the pre-order position of the blackened white node.

    Distinct white positions always yield distinct results, so the list is
    duplicate-free and its length is the number of white nodes.
    """
    out = []
    for i, c in enumerate(s):
        if c != WHITE:
            continue
        if i + 1 < len(s) and s[i + 1] == "(":
            depth = 1
            j = i + 2
            while depth:
                if s[j] == "(":
                    depth += 1
                elif s[j] == ")":
                    depth -= 1
                j += 1
            inner = s[i + 2:j - 1]
            out.append(f"{s[:i]}b({inner}{inner}){s[j:]}")
        else:
            out.append(f"{s[:i]}b{s[i + 1:]}")
    return out


def forest_upset(f: DupForest, budget: int = DEFAULT_BUDGET) -> ExploredPoset:
    """BFS closure of the duplication step from f; always finite because the
    black count strictly increases along every step."""
    return explore(f, forest_step_successors, budget=budget,
                   sort_key=compact_key)


# ---------------------------------------------------------------------------
# Meet and join (greatest lower bound / least upper bound in a common upset)


def _split_half(f: DupForest) -> tuple[DupForest, DupForest]:
    if len(f) % 2:
        raise IncompatibleForests(
            f"black node with odd child count: {render_forest(f)!r}")
    half = len(f) // 2
    return f[:half], f[half:]


def meet(f1: DupForest, f2: DupForest) -> DupForest:
    """Componentwise greatest lower bound of forests in a common upset."""
    if len(f1) != len(f2):
        raise IncompatibleForests(
            f"forest length mismatch: {render_forest(f1)!r} vs {render_forest(f2)!r}")
    return tuple(_tree_meet(t1, t2) for t1, t2 in zip(f1, f2))


def _tree_meet(t1: DupTree, t2: DupTree) -> DupTree:
    c1, g1 = t1
    c2, g2 = t2
    if c1 == c2:
        return (c1, meet(g1, g2))
    if c1 == BLACK:
        t1, t2 = t2, t1
        g1, g2 = g2, g1
    # white over g1 meets black over g2 = g' followed by g''
    left, right = _split_half(g2)
    return (WHITE, meet(meet(g1, left), right))


def join(f1: DupForest, f2: DupForest) -> DupForest:
    """Componentwise least upper bound of forests in a common upset."""
    if len(f1) != len(f2):
        raise IncompatibleForests(
            f"forest length mismatch: {render_forest(f1)!r} vs {render_forest(f2)!r}")
    return tuple(_tree_join(t1, t2) for t1, t2 in zip(f1, f2))


def _tree_join(t1: DupTree, t2: DupTree) -> DupTree:
    c1, g1 = t1
    c2, g2 = t2
    if c1 == c2:
        return (c1, join(g1, g2))
    if c1 == BLACK:
        t1, t2 = t2, t1
        g1, g2 = g2, g1
    left, right = _split_half(g2)
    return (BLACK, join(g1, left) + join(g1, right))
