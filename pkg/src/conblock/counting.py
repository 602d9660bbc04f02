"""Subgraph-copy counting and F-freeness tests.

``count_copies`` counts unlabeled copies (subgraphs of G isomorphic to H,
i.e. labeled embeddings divided by |Aut(H)|).  The generic path is anchored
backtracking that extends a partial embedding along pattern edges, so its
cost tracks the number of embeddings rather than n^|H|; stars, triangles and
P4 additionally get closed-form fast paths because final-score evaluation on
10^4-vertex boards runs through here.
"""

from __future__ import annotations

from math import comb

from .graphs import SimpleGraph, iter_bits
from .patterns import (
    KIND_GENERAL,
    MAX_PATTERN_VERTICES,
    Pattern,
    UnsupportedPatternError,
)


def count_stars(leaves: int, g: SimpleGraph) -> int:
    """Number of stars with the given leaf count: sum_v C(d(v), leaves).

    For leaves = 1 this is the edge count (each edge counted once, not per
    endpoint).
    """
    if leaves < 1:
        raise ValueError("leaves must be >= 1")
    if leaves == 1:
        return g.edge_count
    return sum(comb(a.bit_count(), leaves) for a in g.adj)


def count_triangles(g: SimpleGraph) -> int:
    adj = g.adj
    total = 0
    for u, v in g.edges():
        total += (adj[u] & adj[v]).bit_count()
    return total // 3


def count_p4(g: SimpleGraph) -> int:
    """Paths on 4 vertices: sum over edges of (d(u)-1)(d(v)-1) minus 3 per
    triangle (the common-neighbor degenerate choices)."""
    adj = g.adj
    degs = g.degrees()
    total = 0
    tri = 0
    for u, v in g.edges():
        total += (degs[u] - 1) * (degs[v] - 1)
        tri += (adj[u] & adj[v]).bit_count()
    return total - tri  # tri == 3 * (number of triangles)


def _ordered_pattern(pat: Pattern) -> tuple[list[int], list[list[int]], list[int]]:
    """Embedding order for backtracking.

    Returns (order, earlier_neighbors, earlier_non_neighbors) where vertex
    order[i] has its pattern-neighbors among order[:i] listed; components are
    chained so each vertex after a component root anchors to an earlier one.
    """
    n = pat.n
    adj = [set() for _ in range(n)]
    for u, v in pat.edges:
        adj[u].add(v)
        adj[v].add(u)
    order: list[int] = []
    placed = [False] * n
    degs = [len(a) for a in adj]
    while len(order) < n:
        # next root: max degree among unplaced with no placed neighbor
        candidates = [v for v in range(n) if not placed[v]]
        anchored = [v for v in candidates if any(placed[u] for u in adj[v])]
        while anchored:
            v = max(anchored, key=lambda x: (sum(placed[u] for u in adj[x]), degs[x]))
            order.append(v)
            placed[v] = True
            candidates = [w for w in range(n) if not placed[w]]
            anchored = [w for w in candidates if any(placed[u] for u in adj[w])]
        if len(order) < n:
            root = max((v for v in range(n) if not placed[v]), key=lambda x: degs[x])
            order.append(root)
            placed[root] = True
    pos = {v: i for i, v in enumerate(order)}
    earlier_nbrs = [[pos[u] for u in adj[v] if pos[u] < pos[v]] for v in order]
    earlier_non = [
        [j for j in range(pos[v]) if order[j] not in adj[v]] for v in order
    ]
    return order, earlier_nbrs, earlier_non


def count_labeled_embeddings(pat: Pattern, g: SimpleGraph) -> int:
    """Injective maps of the pattern vertex set into G preserving edges.

    Non-edges of the pattern may land on edges of G (subgraph copies, not
    induced).
    """
    if pat.n > g.n:
        return 0
    _, earlier_nbrs, _ = _ordered_pattern(pat)
    k = pat.n
    adj = g.adj
    full = g.vertices_mask()
    images = [0] * k
    used = 0

    def extend(i: int) -> int:
        nonlocal used
        if i == k:
            return 1
        nbrs = earlier_nbrs[i]
        if nbrs:
            cand = full
            for j in nbrs:
                cand &= adj[images[j]]
            cand &= ~used
        else:
            cand = full & ~used
        total = 0
        for v in iter_bits(cand):
            images[i] = v
            used_prev = used
            used |= 1 << v
            total += extend(i + 1)
            used = used_prev
        return total

    return extend(0)


def count_copies(pat: Pattern, g: SimpleGraph) -> int:
    """Number of subgraphs of G isomorphic to the pattern."""
    if pat.n > MAX_PATTERN_VERTICES:
        raise UnsupportedPatternError(
            f"patterns above {MAX_PATTERN_VERTICES} vertices are unsupported"
        )
    if pat.is_clique(2):
        return g.edge_count
    leaves = pat.star_leaves()
    if leaves is not None:
        return count_stars(leaves, g)
    if pat.is_clique(3):
        return count_triangles(g)
    if pat.is_path(4):
        return count_p4(g)
    labeled = count_labeled_embeddings(pat, g)
    assert labeled % pat.aut == 0, "embedding count not divisible by |Aut|"
    return labeled // pat.aut


def count_embeddings_through_edge(pat: Pattern, g: SimpleGraph, u: int, v: int) -> int:
    """Labeled embeddings of a connected pattern mapping some pattern edge
    onto the graph edge uv (in either orientation)."""
    adj = g.adj
    k = pat.n
    full = g.vertices_mask()
    total = 0
    for a, b in pat.edges:
        for pu, pv, iu, iv in ((a, b, u, v), (a, b, v, u)):
            order, earlier_nbrs, _ = _anchored_order(pat, pu, pv)
            images = [0] * k
            images[0] = iu
            images[1] = iv
            used0 = (1 << iu) | (1 << iv)

            def extend(i: int, used: int) -> int:
                if i == k:
                    return 1
                cand = full
                for j in earlier_nbrs[i]:
                    cand &= adj[images[j]]
                cand &= ~used
                sub = 0
                for w in iter_bits(cand):
                    images[i] = w
                    sub += extend(i + 1, used | (1 << w))
                return sub

            total += extend(2, used0)
    return total


_ANCHOR_CACHE: dict = {}


def _anchored_order(pat: Pattern, a: int, b: int):
    """Embedding order starting from the anchored pattern edge (a, b)."""
    key = (pat.n, pat.edges, a, b)
    hit = _ANCHOR_CACHE.get(key)
    if hit is not None:
        return hit
    n = pat.n
    adj = [set() for _ in range(n)]
    for u, v in pat.edges:
        adj[u].add(v)
        adj[v].add(u)
    order = [a, b]
    placed = {a, b}
    while len(order) < n:
        anchored = [v for v in range(n) if v not in placed and any(u in placed for u in adj[v])]
        if anchored:
            v = max(anchored, key=lambda x: sum(u in placed for u in adj[x]))
        else:
            v = next(w for w in range(n) if w not in placed)
        order.append(v)
        placed.add(v)
    pos = {v: i for i, v in enumerate(order)}
    earlier_nbrs = [[pos[u] for u in adj[v] if pos[u] < pos[v]] for v in order]
    result = (order, earlier_nbrs, None)
    _ANCHOR_CACHE[key] = result
    return result


def copies_through_edge(pat: Pattern, g_with_edge: SimpleGraph, u: int, v: int) -> int:
    """Unlabeled copies of the pattern that use the edge uv.

    ``g_with_edge`` must already contain uv.  Every copy containing uv is hit
    by exactly |Aut| anchored labeled embeddings, so division is exact.  For
    a graph that was F-free before uv was added, this is the count delta.
    """
    if not pat.is_connected():
        raise UnsupportedPatternError("edge-anchored counting needs a connected pattern")
    leaves = pat.star_leaves()
    if leaves is not None:
        # stars through uv: centered at u or at v
        du = g_with_edge.degree(u)
        dv = g_with_edge.degree(v)
        if leaves == 1:
            return 1
        return comb(du - 1, leaves - 1) + comb(dv - 1, leaves - 1)
    if pat.is_clique(3):
        return (g_with_edge.adj[u] & g_with_edge.adj[v]).bit_count()
    labeled = count_embeddings_through_edge(pat, g_with_edge, u, v)
    assert labeled % pat.aut == 0
    return labeled // pat.aut


def creates_copy(pat: Pattern, g: SimpleGraph, u: int, v: int) -> bool:
    """Would adding the edge uv to F-free G create a copy of the pattern?

    Degree test for stars, common-neighborhood test for triangles, anchored
    embedding search otherwise.
    """
    leaves = pat.star_leaves()
    if leaves is not None:
        if leaves == 1:
            return True
        return g.degree(u) >= leaves - 1 or g.degree(v) >= leaves - 1
    if pat.is_clique(3):
        return bool(g.adj[u] & g.adj[v])
    if pat.is_connected():
        return _has_embedding_through(pat, g, u, v)
    plus = g.with_edge(u, v)
    return count_copies(pat, plus) > 0


def _has_embedding_through(pat: Pattern, g: SimpleGraph, u: int, v: int) -> bool:
    """Existence version of the anchored search, on G + uv without building it."""
    adj_u = g.adj[u] | (1 << v)
    adj_v = g.adj[v] | (1 << u)
    adj = g.adj

    def row(x: int) -> int:
        if x == u:
            return adj_u
        if x == v:
            return adj_v
        return adj[x]

    k = pat.n
    full = g.vertices_mask()
    images = [0] * k
    for a, b in pat.edges:
        for iu, iv in ((u, v), (v, u)):
            order, earlier_nbrs, _ = _anchored_order(pat, a, b)
            images[0] = iu
            images[1] = iv

            def extend(i: int, used: int) -> bool:
                if i == k:
                    return True
                cand = full
                for j in earlier_nbrs[i]:
                    cand &= row(images[j])
                cand &= ~used
                for w in iter_bits(cand):
                    images[i] = w
                    if extend(i + 1, used | (1 << w)):
                        return True
                return False

            if extend(2, (1 << iu) | (1 << iv)):
                return True
    return False
