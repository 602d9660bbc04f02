"""Undirected simple graphs on vertices 0..n-1, with bitmask adjacency rows.

Adjacency rows are plain Python integers, so the same representation covers
desk-scale boards (n <= 8 for the exact solver) and simulation boards up to
n ~ 10^4.  Graphs are immutable by convention: ``with_edge`` returns a new
graph that shares all untouched adjacency rows with its parent, which keeps
per-move cost in long games at O(n) pointer copies.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator

INFINITE_GIRTH = math.inf


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    """Index of the lowest set bit; mask must be nonzero."""
    return (mask & -mask).bit_length() - 1


def edge_index(n: int, u: int, v: int) -> int:
    """Rank of the pair (u, v), u < v, in lexicographic order of all pairs."""
    if u > v:
        u, v = v, u
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def edge_from_index(n: int, idx: int) -> tuple[int, int]:
    """Inverse of :func:`edge_index`."""
    u = 0
    row = n - 1
    while idx >= row:
        idx -= row
        u += 1
        row -= 1
    return u, u + 1 + idx


class SimpleGraph:
    """Simple undirected graph; no loops, adjacency kept symmetric."""

    __slots__ = ("n", "adj", "edge_count")

    def __init__(self, n: int, adj: list[int] | None = None, edge_count: int = 0):
        self.n = n
        self.adj = adj if adj is not None else [0] * n
        self.edge_count = edge_count

    @classmethod
    def empty(cls, n: int) -> "SimpleGraph":
        return cls(n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        g = cls(n)
        adj = g.adj
        m = 0
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop edge ({u},{v})")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if not adj[u] >> v & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
                m += 1
        g.edge_count = m
        return g

    def with_edge(self, u: int, v: int) -> "SimpleGraph":
        """New graph with edge uv added; shares unmodified adjacency rows."""
        if u == v:
            raise ValueError("loop edge")
        if self.adj[u] >> v & 1:
            raise ValueError(f"edge ({u},{v}) already present")
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return SimpleGraph(self.n, adj, self.edge_count + 1)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def neighbors(self, v: int) -> int:
        """Neighbor set of v as a bitmask."""
        return self.adj[v]

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as (u, v) with u < v, lexicographic."""
        for u in range(self.n):
            upper = self.adj[u] >> (u + 1) << (u + 1)
            for v in iter_bits(upper):
                yield u, v

    def vertices_mask(self) -> int:
        return (1 << self.n) - 1

    def isolated_mask(self) -> int:
        """Bitmask of vertices with degree zero."""
        m = 0
        for v in range(self.n):
            if not self.adj[v]:
                m |= 1 << v
        return m

    def component_containing(self, v: int, size_cap: int | None = None) -> int:
        """Bitmask of v's connected component.

        With ``size_cap``, stops early once more than that many vertices are
        seen and returns the partial mask (callers use this to test
        "component has at most cap vertices" cheaply).
        """
        seen = 1 << v
        frontier = self.adj[v] & ~seen
        while frontier:
            seen |= frontier
            if size_cap is not None and seen.bit_count() > size_cap:
                return seen
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= self.adj[u]
            frontier = nxt & ~seen
        return seen

    def components(self) -> list[int]:
        """All connected components as bitmasks (singletons included)."""
        left = self.vertices_mask()
        out = []
        while left:
            v = lowest_bit(left)
            comp = self.component_containing(v)
            out.append(comp)
            left &= ~comp
        return out

    def copy_mutable(self) -> "SimpleGraph":
        return SimpleGraph(self.n, list(self.adj), self.edge_count)

    def add_edge_inplace(self, u: int, v: int) -> None:
        """In-place edge add; only for graphs not yet shared."""
        if self.adj[u] >> v & 1:
            raise ValueError(f"edge ({u},{v}) already present")
        self.adj[u] |= 1 << v
        self.adj[v] |= 1 << u
        self.edge_count += 1

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SimpleGraph)
            and self.n == other.n
            and self.adj == other.adj
        )

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.adj)))

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, m={self.edge_count})"


def distance_ball(g: SimpleGraph, v: int, r: int) -> int:
    """Vertices at graph distance in [1, r] from v, as a bitmask (v excluded)."""
    if r <= 0:
        return 0
    seen = 1 << v
    frontier = g.adj[v]
    ball = 0
    depth = 0
    while frontier and depth < r:
        frontier &= ~seen
        ball |= frontier
        seen |= frontier
        depth += 1
        if depth == r:
            break
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= g.adj[u]
        frontier = nxt
    return ball


def _bfs_shortest_cycle_through(g: SimpleGraph, root: int, depth_cap: int) -> int | None:
    """Length of the shortest cycle detectable by BFS from root, or None.

    BFS from a vertex on a shortest cycle detects its exact length, so the
    minimum over all roots is the girth.  ``depth_cap`` bounds the search
    depth; cycles longer than 2*depth_cap + 1 may be missed.
    """
    dist = {root: 0}
    frontier = [root]
    best = None
    depth = 0
    while frontier and depth <= depth_cap:
        nxt = []
        for x in frontier:
            dx = dist[x]
            for y in iter_bits(g.adj[x]):
                if y not in dist:
                    dist[y] = dx + 1
                    nxt.append(y)
                elif dist[y] >= dx:
                    # non-tree edge closing a cycle through the BFS tree
                    cyc = dx + dist[y] + 1
                    if best is None or cyc < best:
                        best = cyc
        if best is not None and best <= 2 * depth + 1:
            return best
        frontier = nxt
        depth += 1
    return best


def girth(g: SimpleGraph) -> float:
    """Length of a shortest cycle; INFINITE_GIRTH for forests."""
    best: float = INFINITE_GIRTH
    for v in range(g.n):
        if g.adj[v].bit_count() < 2:
            continue
        cap = g.n if best is INFINITE_GIRTH else int(best) // 2 + 1
        c = _bfs_shortest_cycle_through(g, v, cap)
        if c is not None and c < best:
            best = c
            if best == 3:
                break
    return best


def girth_exceeds(g: SimpleGraph, m: int) -> bool:
    """True iff the graph has no cycle of length <= m.

    Runs truncated BFS (depth m//2 + 1) from every vertex; cost stays near
    O(n * max_degree^(m/2)), which is what makes girth audits feasible on
    sparse 10^4-vertex boards.
    """
    for v in range(g.n):
        if g.adj[v].bit_count() < 2:
            continue
        c = _bfs_shortest_cycle_through(g, v, m // 2 + 1)
        if c is not None and c <= m:
            return False
    return True
