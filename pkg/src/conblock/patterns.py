"""Small fixed pattern graphs (cliques, paths, stars, trees) used as H and F.

Patterns are frozen value objects.  Construction canonicalizes the degenerate
aliases (a 1-leaf star, a 2-vertex path and a 2-vertex clique are all K2; a
2-leaf star is P3) so equality tests and strategy dispatch see one shape per
graph.  Automorphism counts come from brute force over vertex permutations,
which is exact and cheap at the <= 8 vertex sizes supported here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

MAX_PATTERN_VERTICES = 8

KIND_CLIQUE = "clique"
KIND_PATH = "path"
KIND_STAR = "star"
KIND_TREE = "tree"
KIND_GENERAL = "general"


class UnsupportedPatternError(ValueError):
    """Pattern outside the supported size/shape envelope."""


def _normalize_edges(edges) -> tuple[tuple[int, int], ...]:
    out = set()
    for u, v in edges:
        if u == v:
            raise UnsupportedPatternError(f"loop edge ({u},{v}) in pattern")
        out.add((min(u, v), max(u, v)))
    return tuple(sorted(out))


def _path_edges(r: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, i + 1) for i in range(r - 1))


def _star_edges(leaves: int) -> tuple[tuple[int, int], ...]:
    return tuple((0, i) for i in range(1, leaves + 1))


def _clique_edges(r: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(r) for j in range(i + 1, r))


_AUT_CACHE: dict[tuple[int, tuple[tuple[int, int], ...]], int] = {}


def automorphism_count(n: int, edges: tuple[tuple[int, int], ...]) -> int:
    """Number of vertex permutations preserving the edge set (brute force)."""
    key = (n, edges)
    cached = _AUT_CACHE.get(key)
    if cached is not None:
        return cached
    edge_set = set(edges)
    count = 0
    for perm in permutations(range(n)):
        for u, v in edges:
            pu, pv = perm[u], perm[v]
            if (min(pu, pv), max(pu, pv)) not in edge_set:
                break
        else:
            count += 1
    _AUT_CACHE[key] = count
    return count


def _edges_isomorphic(n: int, e1, e2) -> bool:
    if len(e1) != len(e2):
        return False
    deg1, deg2 = [0] * n, [0] * n
    for u, v in e1:
        deg1[u] += 1
        deg1[v] += 1
    for u, v in e2:
        deg2[u] += 1
        deg2[v] += 1
    if sorted(deg1) != sorted(deg2):
        return False
    set2 = set(e2)
    for perm in permutations(range(n)):
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in set2 for u, v in e1):
            return True
    return False


@dataclass(frozen=True)
class Pattern:
    """A fixed small graph with cached automorphism count."""

    kind: str
    n: int
    edges: tuple[tuple[int, int], ...]
    token: str
    aut: int = field(compare=False)

    @staticmethod
    def _make(kind: str, n: int, edges, token: str) -> "Pattern":
        edges = _normalize_edges(edges)
        if n > MAX_PATTERN_VERTICES:
            raise UnsupportedPatternError(
                f"pattern on {n} vertices exceeds the {MAX_PATTERN_VERTICES}-vertex limit"
            )
        if n < 2:
            raise UnsupportedPatternError("patterns need at least 2 vertices")
        return Pattern(kind, n, edges, token, automorphism_count(n, edges))

    @classmethod
    def clique(cls, r: int) -> "Pattern":
        if r < 2:
            raise UnsupportedPatternError("clique needs r >= 2")
        return cls._make(KIND_CLIQUE, r, _clique_edges(r), f"K{r}")

    @classmethod
    def path(cls, r: int) -> "Pattern":
        if r < 2:
            raise UnsupportedPatternError("path needs r >= 2 vertices")
        if r == 2:
            return cls.clique(2)
        return cls._make(KIND_PATH, r, _path_edges(r), f"P{r}")

    @classmethod
    def star(cls, leaves: int) -> "Pattern":
        if leaves < 1:
            raise UnsupportedPatternError("star needs >= 1 leaf")
        if leaves == 1:
            return cls.clique(2)
        if leaves == 2:
            return cls.path(3)
        return cls._make(KIND_STAR, leaves + 1, _star_edges(leaves), f"S{leaves}")

    @classmethod
    def tree(cls, edges) -> "Pattern":
        edges = _normalize_edges(edges)
        if not edges:
            raise UnsupportedPatternError("pattern needs at least one edge")
        n = max(max(e) for e in edges) + 1
        if len(edges) != n - 1 or not _connected(n, edges):
            raise UnsupportedPatternError("tree pattern must be a connected acyclic edge list")
        p = cls._as_named_shape(n, edges)
        if p is not None:
            return p
        token = "T:" + ",".join(f"{u}-{v}" for u, v in edges)
        return cls._make(KIND_TREE, n, edges, token)

    @classmethod
    def general(cls, edges) -> "Pattern":
        edges = _normalize_edges(edges)
        if not edges:
            raise UnsupportedPatternError("pattern needs at least one edge")
        n = max(max(e) for e in edges) + 1
        if len(edges) == n - 1 and _connected(n, edges):
            return cls.tree(edges)
        p = cls._as_named_shape(n, edges)
        if p is not None:
            return p
        token = "G:" + ",".join(f"{u}-{v}" for u, v in edges)
        return cls._make(KIND_GENERAL, n, edges, token)

    @classmethod
    def _as_named_shape(cls, n: int, edges) -> "Pattern | None":
        """Collapse edge-list input onto the K/P/S shapes when isomorphic."""
        m = len(edges)
        if m == n * (n - 1) // 2:
            return cls.clique(n)
        if m == n - 1:
            degs = [0] * n
            for u, v in edges:
                degs[u] += 1
                degs[v] += 1
            if max(degs) == n - 1:
                return cls.star(n - 1)
            if sorted(degs) == [1, 1] + [2] * (n - 2):
                if _edges_isomorphic(n, tuple(edges), _path_edges(n)):
                    return cls.path(n)
        return None

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        """Parse a pattern token (K3 / P4 / S2 / T:0-1,1-2 / G:...) or an
        edge-list block with one "u v" pair per line."""
        text = text.strip()
        if not text:
            raise UnsupportedPatternError("empty pattern token")
        if "\n" in text or (" " in text and ":" not in text):
            edges = []
            for line in text.splitlines():
                line = line.strip()
                if not line:
                    continue
                parts = line.split()
                if len(parts) != 2:
                    raise UnsupportedPatternError(f"bad edge line {line!r}")
                edges.append((int(parts[0]), int(parts[1])))
            return cls.general(edges)
        tok = text.upper()
        if tok.startswith(("T:", "G:")):
            body = text[2:]
            try:
                edges = [
                    tuple(int(x) for x in pair.split("-"))
                    for pair in body.split(",")
                    if pair
                ]
            except ValueError as exc:
                raise UnsupportedPatternError(f"bad edge list {body!r}") from exc
            return cls.tree(edges) if tok.startswith("T:") else cls.general(edges)
        if len(tok) >= 2 and tok[0] in "KPS" and tok[1:].isdigit():
            r = int(tok[1:])
            if tok[0] == "K":
                return cls.clique(r)
            if tok[0] == "P":
                return cls.path(r)
            return cls.star(r)
        raise UnsupportedPatternError(f"unrecognized pattern token {text!r}")

    # -- shape predicates (isomorphism-robust, so T:-style input still matches)

    def is_clique(self, r: int) -> bool:
        return self.n == r and len(self.edges) == r * (r - 1) // 2

    def is_path(self, r: int) -> bool:
        if self.n != r or len(self.edges) != r - 1:
            return False
        if self.kind == KIND_PATH or (r == 2 and self.kind == KIND_CLIQUE):
            return True
        return _edges_isomorphic(self.n, self.edges, _path_edges(r))

    def is_star(self, leaves: int) -> bool:
        if self.n != leaves + 1 or len(self.edges) != leaves:
            return False
        return self.max_degree() == leaves

    def star_leaves(self) -> int | None:
        """If the pattern is a star (any leaf count), its leaf count."""
        if len(self.edges) == self.n - 1 and self.max_degree() == self.n - 1:
            return self.n - 1
        return None

    def max_degree(self) -> int:
        degs = [0] * self.n
        for u, v in self.edges:
            degs[u] += 1
            degs[v] += 1
        return max(degs)

    def degree_of(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def is_connected(self) -> bool:
        return _connected(self.n, self.edges)

    def is_tree(self) -> bool:
        return len(self.edges) == self.n - 1 and self.is_connected()

    def isomorphic_to(self, other: "Pattern") -> bool:
        return self.n == other.n and _edges_isomorphic(self.n, self.edges, other.edges)

    def __str__(self) -> str:
        return self.token


def _connected(n: int, edges) -> bool:
    if n == 1:
        return True
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    seen = 1
    frontier = adj[0]
    while frontier & ~seen:
        frontier &= ~seen
        seen |= frontier
        nxt = 0
        m = frontier
        while m:
            low = m & -m
            nxt |= adj[low.bit_length() - 1]
            m ^= low
    return seen == (1 << n) - 1


K2 = Pattern.clique(2)
P3 = Pattern.path(3)
P4 = Pattern.path(4)
P5 = Pattern.path(5)
K3 = Pattern.clique(3)
K4 = Pattern.clique(4)
S3 = Pattern.star(3)
