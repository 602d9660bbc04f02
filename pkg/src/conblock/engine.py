"""Rules, legality, terminality and play-out for Constructor-Blocker games.

Two players alternately claim unclaimed edges of K_n.  Constructor's graph
must stay F-free at all times (and, when a forbidden-neighborhood rule is
active, he may not join mutually forbidden endpoints); Blocker claims freely.
The game ends when every edge is claimed or Constructor has no legal edge,
and the score is the number of H-copies in Constructor's final graph.

Positions are immutable snapshots; ``apply_move`` returns a new position that
shares untouched adjacency rows with its parent, so long games on large
boards stay cheap.  ``play`` drives a full game between two strategies with
seeded randomness and produces a replayable transcript.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, Protocol, runtime_checkable

from .counting import count_copies, creates_copy
from .graphs import SimpleGraph, distance_ball, iter_bits, lowest_bit
from .patterns import Pattern

CONSTRUCTOR = "C"
BLOCKER = "B"


class IllegalMoveError(ValueError):
    """Move rejected by the rules; ``reason`` is one of claimed /
    F-violation / FN-violation / out-of-range."""

    def __init__(self, move, reason: str):
        super().__init__(f"illegal move {move}: {reason}")
        self.move = move
        self.reason = reason


class ForfeitError(RuntimeError):
    """A strategy produced an illegal move (or falsely claimed to be stuck)."""

    def __init__(self, side: str, strategy_name: str, detail: str):
        super().__init__(f"{side} ({strategy_name}) forfeits: {detail}")
        self.side = side
        self.strategy_name = strategy_name


class RuleViolationError(RuntimeError):
    """Forbidden-neighborhood provider broke its own contract (test hook)."""


class ConfigurationError(ValueError):
    """Strategy or rule set wired up for the wrong game."""


@runtime_checkable
class ForbiddenNeighborhoodRule(Protocol):
    """Per-move symmetric forbidden neighborhoods F_v of size at most bound."""

    bound: int

    def forbidden_mask(self, position: "Position", v: int) -> int:
        """Bitmask of vertices currently forbidden as partners of v."""
        ...


class DistanceBallRule:
    """Forbids edges joining vertices within the given distance in
    Constructor's graph.  Keeping such edges out of an S_{k+1}-free build
    forces girth above radius + 1.

    ``bound`` is the declared size cap C used by strategy thresholds; with
    degree cap k the radius-r ball can in the worst case hold
    k*((k-1)^r - 1)/(k-2) vertices, which for r >= 3 exceeds the headline
    k*(k-1)^(r-1) figure, so the cap is advisory unless ``strict`` is set.
    """

    def __init__(self, radius: int, bound: int, strict: bool = False):
        self.radius = radius
        self.bound = bound
        self.strict = strict

    def forbidden_mask(self, position: "Position", v: int) -> int:
        return distance_ball(position.cons, v, self.radius)


def tree_star_fn_rule(tree: Pattern, k: int) -> DistanceBallRule:
    """Distance-ball rule sized for building many copies of the given tree
    under degree cap k: radius |T|-1, declared bound k*(k-1)^(|T|-2)."""
    t = tree.n
    return DistanceBallRule(radius=t - 1, bound=k * (k - 1) ** (t - 2))


@dataclass(frozen=True)
class RuleSet:
    """Game parameters: board size, scored pattern H, forbidden pattern F,
    starting player, optional forbidden-neighborhood provider."""

    n: int
    H: Pattern
    F: Pattern
    starter: str = CONSTRUCTOR
    fn_rule: ForbiddenNeighborhoodRule | None = None

    def __post_init__(self):
        if self.n < 2:
            raise ConfigurationError("board needs at least 2 vertices")
        if self.starter not in (CONSTRUCTOR, BLOCKER):
            raise ConfigurationError(f"bad starter {self.starter!r}")

    @property
    def C(self) -> int:
        return self.fn_rule.bound if self.fn_rule is not None else 0

    @property
    def total_edges(self) -> int:
        return self.n * (self.n - 1) // 2


class Position:
    """Full game state; immutable snapshot."""

    __slots__ = ("rules", "cons", "blok", "to_move", "move_count", "last_move")

    def __init__(self, rules, cons, blok, to_move, move_count, last_move):
        self.rules = rules
        self.cons = cons
        self.blok = blok
        self.to_move = to_move
        self.move_count = move_count
        self.last_move = last_move

    @classmethod
    def initial(cls, rules: RuleSet, preclaimed_blocker=()) -> "Position":
        """Start-of-game position; ``preclaimed_blocker`` seeds Blocker's
        graph (used to pose endgame sub-games on partially claimed boards)."""
        blok = SimpleGraph.from_edges(rules.n, preclaimed_blocker)
        return cls(rules, SimpleGraph.empty(rules.n), blok, rules.starter, 0, None)

    def claimed_row(self, v: int) -> int:
        return self.cons.adj[v] | self.blok.adj[v]

    def is_claimed(self, u: int, v: int) -> bool:
        return bool(self.claimed_row(u) >> v & 1)

    @property
    def unclaimed_count(self) -> int:
        return self.rules.total_edges - self.cons.edge_count - self.blok.edge_count

    def unclaimed_edges(self) -> Iterator[tuple[int, int]]:
        n = self.rules.n
        for u in range(n):
            free = ~self.claimed_row(u) & ((1 << n) - 1) >> (u + 1) << (u + 1)
            for v in iter_bits(free):
                yield u, v

    def other(self) -> str:
        return BLOCKER if self.to_move == CONSTRUCTOR else CONSTRUCTOR

    def __repr__(self):
        return (
            f"Position(move {self.move_count}, {self.to_move} to move, "
            f"|C|={self.cons.edge_count}, |B|={self.blok.edge_count})"
        )


def constructor_violation(pos: Position, u: int, v: int) -> str | None:
    """Why Constructor may not claim uv right now, or None if legal."""
    n = pos.rules.n
    if not (0 <= u < n and 0 <= v < n) or u == v:
        return "out-of-range"
    if pos.is_claimed(u, v):
        return "claimed"
    if creates_copy(pos.rules.F, pos.cons, u, v):
        return "F-violation"
    fn = pos.rules.fn_rule
    if fn is not None:
        mask_v = fn.forbidden_mask(pos, v)
        if mask_v >> u & 1:
            return "FN-violation"
        if getattr(fn, "strict", False):
            _audit_fn_query(pos, fn, u, v, mask_v)
    return None


def _audit_fn_query(pos, fn, u, v, mask_v):
    mask_u = fn.forbidden_mask(pos, u)
    if bool(mask_u >> v & 1) != bool(mask_v >> u & 1):
        raise RuleViolationError(f"asymmetric forbidden neighborhoods for ({u},{v})")
    if mask_v.bit_count() > fn.bound or mask_u.bit_count() > fn.bound:
        raise RuleViolationError("forbidden neighborhood exceeds declared bound")


def blocker_violation(pos: Position, u: int, v: int) -> str | None:
    n = pos.rules.n
    if not (0 <= u < n and 0 <= v < n) or u == v:
        return "out-of-range"
    if pos.is_claimed(u, v):
        return "claimed"
    return None


def legal_moves(pos: Position) -> list[tuple[int, int]]:
    """All legal edges for the side to move.  Materializes the whole set;
    hot paths use ``has_constructor_move`` / direct probes instead."""
    if pos.to_move == BLOCKER:
        return list(pos.unclaimed_edges())
    return [e for e in pos.unclaimed_edges() if constructor_violation(pos, *e) is None]


def apply_move(pos: Position, move: tuple[int, int]) -> Position:
    """Validate and apply a move for the side to move."""
    u, v = move
    if u > v:
        u, v = v, u
    if pos.to_move == CONSTRUCTOR:
        reason = constructor_violation(pos, u, v)
        if reason is not None:
            raise IllegalMoveError((u, v), reason)
        cons, blok = pos.cons.with_edge(u, v), pos.blok
    else:
        reason = blocker_violation(pos, u, v)
        if reason is not None:
            raise IllegalMoveError((u, v), reason)
        cons, blok = pos.cons, pos.blok.with_edge(u, v)
    return Position(pos.rules, cons, blok, pos.other(), pos.move_count + 1, (u, v))


class MoveFinder:
    """Exact 'Constructor has a legal edge' test with a cached witness.

    The witness edge makes the common case O(1); a fresh search runs only
    when the witness dies.  Star and path forbidden graphs get structural
    searches (degree classes, component path-profiles) so the test stays
    cheap on 10^4-vertex boards; everything else falls back to a scan of the
    unclaimed edges.
    """

    def __init__(self, rules: RuleSet):
        self.rules = rules
        self.witness: tuple[int, int] | None = None
        star = rules.F.star_leaves()
        self.degree_cap = star - 2 if star is not None else None  # max degree before the move
        self.path_len = rules.F.n if star is None and rules.F.is_path(rules.F.n) else None
        # lazily synced degree state for star mode
        self._cursor = -1
        self._deficient = 0

    def has_constructor_move(self, pos: Position) -> bool:
        if pos.unclaimed_count == 0:
            return False
        w = self.witness
        if w is not None and self._witness_ok(pos, w):
            return True
        self.witness = self._find(pos)
        return self.witness is not None

    def _witness_ok(self, pos, w) -> bool:
        return constructor_violation(pos, *w) is None

    # -- search strategies ------------------------------------------------

    def _find(self, pos: Position) -> tuple[int, int] | None:
        if self.degree_cap is not None:
            return self._find_star(pos)
        if self.path_len is not None:
            return self._find_path(pos)
        return self._find_generic(pos)

    def _sync_star_state(self, pos: Position) -> None:
        if self._cursor == pos.move_count:
            return
        cap = self.degree_cap
        mask = 0
        for v in range(pos.rules.n):
            if pos.cons.adj[v].bit_count() <= cap:
                mask |= 1 << v
        self._deficient = mask
        self._cursor = pos.move_count

    def _find_star(self, pos: Position) -> tuple[int, int] | None:
        self._sync_star_state(pos)
        fn = pos.rules.fn_rule
        deficient = self._deficient
        # scan from the high end: strategies grow from low indices, so high
        # witnesses survive longer
        remaining = deficient
        while remaining:
            u = remaining.bit_length() - 1
            remaining ^= 1 << u
            cand = deficient & ~pos.claimed_row(u) & ~(1 << u)
            if fn is not None and cand:
                cand &= ~fn.forbidden_mask(pos, u)
            if cand:
                v = lowest_bit(cand)
                return (min(u, v), max(u, v))
        return None

    def _find_path(self, pos: Position) -> tuple[int, int] | None:
        r = self.path_len
        cons = pos.cons
        n = pos.rules.n
        comps = cons.components()
        comp_of = {}
        for mask in comps:
            for v in iter_bits(mask):
                comp_of[v] = mask
        lam = [0] * n
        class_mask: dict[int, int] = {}
        for v in range(n):
            lv = _longest_path_from(cons, v, r - 1)
            lam[v] = lv
            class_mask[lv] = class_mask.get(lv, 0) | (1 << v)
        # cross-component pairs: joining is legal iff lam(u) + lam(v) <= r-1
        prefix: dict[int, int] = {}
        acc = 0
        for a in sorted(class_mask):
            acc |= class_mask[a]
            prefix[a] = acc
        fn = pos.rules.fn_rule
        for u in range(n):
            cap = (r - 1) - lam[u]
            if cap < 1:
                continue
            best_a = max((a for a in prefix if a <= cap), default=None)
            if best_a is None:
                continue
            cand = prefix[best_a] & ~pos.claimed_row(u) & ~comp_of[u]
            if fn is not None and cand:
                cand &= ~fn.forbidden_mask(pos, u)
            if cand:
                v = lowest_bit(cand)
                return (min(u, v), max(u, v))
        # same-component pairs need the full test
        for mask in comps:
            if mask.bit_count() < 3:
                continue
            for u in iter_bits(mask):
                cand = mask & ~pos.claimed_row(u)
                cand >>= u + 1
                for off in iter_bits(cand):
                    v = u + 1 + off
                    if constructor_violation(pos, u, v) is None:
                        return (u, v)
        return None

    def _find_generic(self, pos: Position) -> tuple[int, int] | None:
        for u, v in pos.unclaimed_edges():
            if constructor_violation(pos, u, v) is None:
                return (u, v)
        return None


def _longest_path_from(g: SimpleGraph, v: int, cap: int) -> int:
    """Vertices on the longest simple path starting at v, capped at ``cap``.

    Exact because callers only use it on graphs whose components contain no
    path longer than the cap (F-free Constructor graphs)."""
    best = 1

    def dfs(x: int, used: int, length: int) -> bool:
        nonlocal best
        if length > best:
            best = length
            if best >= cap:
                return True
        for y in iter_bits(g.adj[x] & ~used):
            if dfs(y, used | (1 << y), length + 1):
                return True
        return False

    dfs(v, 1 << v, 1)
    return best


def has_constructor_move(pos: Position) -> bool:
    """Stateless exact test (one-shot MoveFinder)."""
    return MoveFinder(pos.rules).has_constructor_move(pos)


def is_terminal(pos: Position) -> bool:
    """True iff no unclaimed edges remain or Constructor has no legal edge.

    Without a forbidden-neighborhood rule the Constructor-stuck condition
    ends the game regardless of whose turn it is (Blocker's residual moves
    cannot change the score).  With an active rule the forbidden sets may
    change between moves, so stuck-ness is only evaluated on Constructor's
    turn.
    """
    if pos.unclaimed_count == 0:
        return True
    if pos.rules.fn_rule is not None and pos.to_move != CONSTRUCTOR:
        return False
    return not has_constructor_move(pos)


@dataclass
class GameResult:
    """Transcript, final graphs and score of one played game."""

    rules: RuleSet
    seed: int
    transcript: list[tuple[str, int, int]]
    final_cons: SimpleGraph
    final_blok: SimpleGraph
    score: int
    meta: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "n": self.rules.n,
            "H": self.rules.H.token,
            "F": self.rules.F.token,
            "starter": self.rules.starter,
            "seed": self.seed,
            "transcript": [[s, u, v] for s, u, v in self.transcript],
            "score": self.score,
        }


def replay_transcript(
    rules: RuleSet, transcript, preclaimed_blocker=()
) -> Position:
    """Re-apply a transcript move by move, validating legality throughout."""
    pos = Position.initial(rules, preclaimed_blocker)
    for side, u, v in transcript:
        if side != pos.to_move:
            raise IllegalMoveError((u, v), f"out of turn ({side} claimed on {pos.to_move}'s move)")
        pos = apply_move(pos, (u, v))
    return pos


def spawn_rngs(seed: int, count: int = 2) -> list[random.Random]:
    """Independent child streams derived from one seed."""
    master = random.Random(seed)
    return [random.Random(master.getrandbits(64)) for _ in range(count)]


def play(
    rules: RuleSet,
    constructor,
    blocker,
    seed: int = 0,
    *,
    preclaimed_blocker=(),
    collect_transcript: bool = True,
    audit: bool = False,
) -> GameResult:
    """Alternate moves from the starter until the game ends.

    Deterministic given (rules, strategies, seed).  A strategy that returns
    an illegal move, or claims to be stuck while a legal move exists,
    forfeits with a ForfeitError naming the offender.  ``audit`` re-verifies
    the final graphs against the transcript.
    """
    rng_c, rng_b = spawn_rngs(seed)
    constructor.reset(rules, rng_c)
    blocker.reset(rules, rng_b)
    pos = Position.initial(rules, preclaimed_blocker)
    finder = MoveFinder(rules)
    transcript: list[tuple[str, int, int]] = []
    check_every_half_move = rules.fn_rule is None
    while True:
        if pos.unclaimed_count == 0:
            break
        if check_every_half_move or pos.to_move == CONSTRUCTOR:
            if not finder.has_constructor_move(pos):
                break
        side = pos.to_move
        strat = constructor if side == CONSTRUCTOR else blocker
        move = strat.choose(pos)
        if move is None:
            if side == BLOCKER:
                raise ForfeitError(side, getattr(strat, "name", "?"), "passed with unclaimed edges left")
            if finder.has_constructor_move(pos):
                raise ForfeitError(
                    side, getattr(strat, "name", "?"),
                    f"claimed stuck but {finder.witness} is legal",
                )
            break
        try:
            pos = apply_move(pos, move)
        except IllegalMoveError as exc:
            raise ForfeitError(side, getattr(strat, "name", "?"), str(exc)) from exc
        if collect_transcript:
            transcript.append((side, *pos.last_move))
    score = count_copies(rules.H, pos.cons)
    meta = {
        "constructor": getattr(constructor, "name", type(constructor).__name__),
        "blocker": getattr(blocker, "name", type(blocker).__name__),
        "moves": pos.move_count,
    }
    for label, strat in (("constructor", constructor), ("blocker", blocker)):
        flags = getattr(strat, "flags", None)
        if flags:
            meta.setdefault("flags", {})[label] = sorted(flags)
    result = GameResult(rules, seed, transcript, pos.cons, pos.blok, score, meta)
    if audit:
        _audit_result(result, preclaimed_blocker)
    return result


def _audit_result(result: GameResult, preclaimed_blocker=()) -> None:
    end = replay_transcript(result.rules, result.transcript, preclaimed_blocker)
    if end.cons != result.final_cons or end.blok != result.final_blok:
        raise AssertionError("transcript replay does not reproduce final graphs")
    if count_copies(result.rules.F, end.cons) != 0:
        raise AssertionError("Constructor's final graph contains a forbidden copy")
    if count_copies(result.rules.H, end.cons) != result.score:
        raise AssertionError("replayed score mismatch")
