"""Independent brute-force oracles for cross-checking the library.

Everything here is deliberately naive: permutation enumeration for copy
counts, full edge-subset scans for extremal values, plain minimax with no
pruning or tables for game values.  Keep these implementations independent
of the library code paths they check.
"""

from __future__ import annotations

from itertools import combinations, permutations

from conblock.engine import (
    BLOCKER,
    CONSTRUCTOR,
    Position,
    RuleSet,
    apply_move,
)
from conblock.graphs import SimpleGraph
from conblock.patterns import Pattern


def naive_aut(pat: Pattern) -> int:
    edge_set = set(pat.edges)
    total = 0
    for perm in permutations(range(pat.n)):
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in edge_set for u, v in pat.edges):
            total += 1
    return total


def naive_count_copies(pat: Pattern, g: SimpleGraph) -> int:
    """All injective vertex maps preserving pattern edges, over |Aut|."""
    if pat.n > g.n:
        return 0
    labeled = 0
    verts = range(g.n)
    for images in permutations(verts, pat.n):
        if all(g.has_edge(images[u], images[v]) for u, v in pat.edges):
            labeled += 1
    aut = naive_aut(pat)
    assert labeled % aut == 0
    return labeled // aut


def all_graphs(n: int):
    """Every labeled graph on n vertices (2^C(n,2) of them)."""
    pairs = list(combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield SimpleGraph.from_edges(
            n, [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
        )


def naive_extremal(n: int, h: Pattern, f: Pattern) -> int:
    """max N(H, G) over F-free G on n vertices, by full subset scan."""
    best = 0
    for g in all_graphs(n):
        if naive_count_copies(f, g) == 0:
            best = max(best, naive_count_copies(h, g))
    return best


def naive_legal_moves(pos: Position) -> list[tuple[int, int]]:
    """Legality by definition: try the move, count forbidden copies."""
    out = []
    for u, v in pos.unclaimed_edges():
        if pos.to_move == BLOCKER:
            out.append((u, v))
            continue
        plus = pos.cons.with_edge(u, v)
        if naive_count_copies(pos.rules.F, plus) != 0:
            continue
        fn = pos.rules.fn_rule
        if fn is not None and fn.forbidden_mask(pos, v) >> u & 1:
            continue
        out.append((u, v))
    return out


def _constructor_stuck(pos: Position) -> bool:
    saved = pos.to_move
    probe = Position(pos.rules, pos.cons, pos.blok, CONSTRUCTOR, pos.move_count, pos.last_move)
    stuck = len(naive_legal_moves(probe)) == 0
    del saved
    return stuck


def naive_terminal(pos: Position) -> bool:
    if pos.unclaimed_count == 0:
        return True
    if pos.rules.fn_rule is not None and pos.to_move != CONSTRUCTOR:
        return False
    return _constructor_stuck(pos)


def naive_game_value(rules: RuleSet, memo: dict | None = None) -> int:
    """Plain minimax, no alpha-beta, no transposition table (memo optional
    but keyed on the raw position, so duplicated subtrees still recompute
    through different claim orders are shared)."""
    if memo is None:
        memo = {}

    def value(pos: Position) -> int:
        key = (tuple(pos.cons.adj), tuple(pos.blok.adj), pos.to_move)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if naive_terminal(pos):
            result = naive_count_copies(rules.H, pos.cons)
        else:
            children = [
                value(apply_move(pos, mv)) for mv in naive_legal_moves(pos)
            ]
            result = max(children) if pos.to_move == CONSTRUCTOR else min(children)
        memo[key] = result
        return result

    return value(Position.initial(rules))
