"""Finite games, strategies, and strategy isomorphisms.

A game is a finite arena (moves with polarity, kind, and a justifying
enabler) together with an explicit prefix-closed set of legal
alternating plays.  A strategy is a deterministic, even-prefix-closed
set of plays.  A strategy isomorphism is a structure-preserving
bijection between the moves two strategies actually use, inducing a
bijection of their position sets.

Strict equality of games and strategies erases the display name: two
strategies are "the same on the nose" exactly when they have the same
arena content and the same position sets.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional, Sequence

from .values import Value, fdict, keyof, sort_values

OPPONENT = "O"
PROPONENT = "P"
QUESTION = "Q"
ANSWER = "A"


class SizeGuardExceeded(Exception):
    """An exhaustive operation would exceed the configured bound."""

    def __init__(self, what: str, estimate: int, bound: int):
        self.what = what
        self.estimate = estimate
        self.bound = bound
        super().__init__(f"{what}: ~{estimate} candidates exceeds bound {bound}")


class SizeGuard(Value):
    """Global bounds for all exhaustive operations."""

    __slots__ = ("max_moves", "max_play_len", "max_candidates")

    def __init__(self, max_moves: int = 8, max_play_len: int = 8,
                 max_candidates: int = 100_000):
        self.max_moves = max_moves
        self.max_play_len = max_play_len
        self.max_candidates = max_candidates

    def _key(self):
        return ("guard", self.max_moves, self.max_play_len, self.max_candidates)

    def check(self, what: str, estimate: int, bound: Optional[int] = None):
        bound = self.max_candidates if bound is None else bound
        if estimate > bound:
            raise SizeGuardExceeded(what, estimate, bound)


DEFAULT_GUARD = SizeGuard()


class Move(Value):
    """One move of an arena.

    ``enabler`` names the justifying move; it is absent exactly for
    initial moves, which must be Opponent Questions.
    """

    __slots__ = ("id", "polarity", "kind", "enabler")

    def __init__(self, id: str, polarity: str, kind: str,
                 enabler: Optional[str] = None):
        if polarity not in (OPPONENT, PROPONENT):
            raise ValueError(f"bad polarity {polarity!r}")
        if kind not in (QUESTION, ANSWER):
            raise ValueError(f"bad kind {kind!r}")
        self.id = id
        self.polarity = polarity
        self.kind = kind
        self.enabler = enabler

    def _key(self):
        return ("move", self.id, self.polarity, self.kind,
                "" if self.enabler is None else self.enabler)

    def __repr__(self):
        en = "" if self.enabler is None else f"({self.enabler})"
        return f"{self.id}:{self.polarity}{self.kind}{en}"


class Play(Value):
    """A justified sequence: (move id, justifier index) occurrences.

    The justifier index points to an earlier occurrence of the move's
    enabler, and is absent for initial moves.
    """

    __slots__ = ("occurrences",)

    def __init__(self, occurrences: Iterable = ()):
        occ = []
        for o in occurrences:
            mid, j = o
            occ.append((mid, None if j is None else int(j)))
        self.occurrences = tuple(occ)

    def _key(self):
        return ("play",) + tuple(
            (mid, -1 if j is None else j) for mid, j in self.occurrences
        )

    def __len__(self):
        return len(self.occurrences)

    def extend(self, mid: str, j: Optional[int]) -> "Play":
        return Play(self.occurrences + ((mid, j),))

    def prefix(self, n: int) -> "Play":
        return Play(self.occurrences[:n])

    def move_ids(self):
        return tuple(mid for mid, _ in self.occurrences)

    def __repr__(self):
        if not self.occurrences:
            return "<e>"
        parts = []
        for mid, j in self.occurrences:
            parts.append(mid if j is None else f"{mid}@{j}")
        return ".".join(parts)


EMPTY_PLAY = Play()


class Game(Value):
    """Finite arena plus an explicit set of legal plays.

    The name is for display only and not part of strict equality.
    """

    __slots__ = ("moves", "plays", "name")

    def __init__(self, moves: Iterable[Move], plays: Iterable[Play],
                 name: str = ""):
        self.moves = fdict({m.id: m for m in moves})
        self.plays = frozenset(plays)
        self.name = name

    def _key(self):
        return ("game", self.moves.key(),
                tuple(sorted(p.key() for p in self.plays)))

    def move(self, mid: str) -> Move:
        return self.moves[mid]

    def even_plays(self):
        return [p for p in sort_values(self.plays) if len(p) % 2 == 0]

    def extensions(self, play: Play):
        """One-move extensions of ``play`` within this game's plays."""
        n = len(play)
        return [p for p in sort_values(self.plays)
                if len(p) == n + 1 and p.occurrences[:n] == play.occurrences]

    def __repr__(self):
        return f"Game({self.name or '?'}, {len(self.moves)} moves, {len(self.plays)} plays)"


EMPTY_GAME = Game((), (EMPTY_PLAY,), name="I")


def check_play(game: Game, play: Play):
    """Violations of the play invariants over the game's moves."""
    out = []
    for i, (mid, j) in enumerate(play.occurrences):
        m = game.moves.get(mid)
        if m is None:
            out.append(f"play {play!r}: move {mid!r} not in game")
            continue
        expected = OPPONENT if i % 2 == 0 else PROPONENT
        if m.polarity != expected:
            out.append(f"play {play!r}: occurrence {i} ({mid}) breaks "
                       f"O/P alternation (expected {expected})")
        if m.enabler is None:
            if j is not None:
                out.append(f"play {play!r}: initial move {mid} at {i} "
                           f"carries a justifier")
        else:
            if j is None:
                out.append(f"play {play!r}: non-initial move {mid} at {i} "
                           f"lacks a justifier")
            elif not (0 <= j < i):
                out.append(f"play {play!r}: justifier {j} of occurrence {i} "
                           f"is out of range")
            elif play.occurrences[j][0] != m.enabler:
                out.append(f"play {play!r}: occurrence {i} ({mid}) is "
                           f"justified by {play.occurrences[j][0]}, "
                           f"expected enabler {m.enabler}")
    return out


def validate_game(game: Game) -> list:
    """Report every violated game invariant; empty iff valid."""
    report = []
    for m in game.moves.values():
        if m.enabler is None:
            if m.polarity != OPPONENT or m.kind != QUESTION:
                report.append(f"initial move {m.id} must be an Opponent "
                              f"Question, got {m.polarity}{m.kind}")
        elif m.enabler not in game.moves:
            report.append(f"move {m.id}: enabler {m.enabler!r} names no "
                          f"move of the game")
    if EMPTY_PLAY not in game.plays:
        report.append("the empty play is missing")
    for p in sort_values(game.plays):
        report.extend(check_play(game, p))
        if len(p) > 0 and p.prefix(len(p) - 1) not in game.plays:
            report.append(f"plays not prefix-closed: prefix of {p!r} missing")
    return report


class Strategy(Value):
    """Deterministic, even-prefix-closed set of plays on a game.

    The name is display only; strict equality is by arena content and
    position set.
    """

    __slots__ = ("game", "positions", "name")

    def __init__(self, game: Game, positions: Iterable[Play], name: str = ""):
        self.game = game
        self.positions = frozenset(positions)
        self.name = name

    def _key(self):
        return ("strategy", self.game.key(),
                tuple(sorted(p.key() for p in self.positions)))

    def named(self, name: str) -> "Strategy":
        return Strategy(self.game, self.positions, name)

    def move_ids(self) -> frozenset:
        out = set()
        for p in self.positions:
            out.update(p.move_ids())
        return frozenset(out)

    def response(self, odd: Play) -> Optional[Play]:
        """The unique position extending ``odd`` by one move, if any."""
        n = len(odd)
        for p in self.positions:
            if len(p) == n + 1 and p.occurrences[:n] == odd.occurrences:
                return p
        return None

    def is_total(self) -> bool:
        """Responds to every Opponent extension of every position."""
        for s in self.positions:
            for ext in self.game.extensions(s):
                if self.response(ext) is None:
                    return False
        return True

    def __repr__(self):
        return f"Strategy({self.name or sorted(map(repr, self.positions))})"


def validate_strategy(s: Strategy) -> list:
    """Violations of the strategy invariants; empty iff valid."""
    report = []
    if EMPTY_PLAY not in s.positions:
        report.append("empty position missing")
    by_prefix = {}
    for p in s.positions:
        if len(p) % 2 != 0:
            report.append(f"odd-length position {p!r}")
            continue
        if p not in s.game.plays:
            report.append(f"position {p!r} is not a play of the game")
        if len(p) >= 2:
            if p.prefix(len(p) - 2) not in s.positions:
                report.append(f"even-prefix closure fails at {p!r}")
            stem = p.occurrences[:-1]
            seen = by_prefix.setdefault(stem, p.occurrences[-1])
            if seen != p.occurrences[-1]:
                report.append(f"determinacy fails after {Play(stem)!r}: "
                              f"{seen} vs {p.occurrences[-1]}")
    return report


def _count_strategies(game: Game, even: Play, memo) -> int:
    if even in memo:
        return memo[even]
    total = 1
    for oext in game.extensions(even):
        branch = 1  # the silent option
        for pext in game.extensions(oext):
            branch += _count_strategies(game, pext, memo)
        total *= branch
    memo[even] = total
    return total


def _expand_strategies(game: Game, even: Play, memo):
    """All position sets (excluding ``even`` itself) continuing ``even``."""
    if even in memo:
        return memo[even]
    per_question = []
    for oext in game.extensions(even):
        options = [frozenset()]
        for pext in game.extensions(oext):
            for sub in _expand_strategies(game, pext, memo):
                options.append(frozenset({pext}) | sub)
        per_question.append(options)
    out = []
    for combo in itertools.product(*per_question):
        acc = frozenset()
        for c in combo:
            acc |= c
        out.append(acc)
    if not per_question:
        out = [frozenset()]
    memo[even] = out
    return out


def enumerate_strategies(game: Game, guard: SizeGuard = DEFAULT_GUARD):
    """Exactly the strategies of the game, by exhaustive construction."""
    est = _count_strategies(game, EMPTY_PLAY, {})
    guard.check("enumerate_strategies", est, guard.max_candidates)
    out = []
    for body in _expand_strategies(game, EMPTY_PLAY, {}):
        out.append(Strategy(game, frozenset({EMPTY_PLAY}) | body))
    return sort_values(out)


class StrategyIso(Value):
    """Bijection between the moves used by two strategies.

    The bijection preserves polarity, kind, and the enabler relation;
    translating positions move-wise maps the source's position set
    bijectively onto the target's.
    """

    __slots__ = ("source", "target", "move_map")

    def __init__(self, source: Strategy, target: Strategy, move_map):
        self.source = source
        self.target = target
        self.move_map = move_map if isinstance(move_map, fdict) else fdict(move_map)

    def _key(self):
        return ("iso", self.source.key(), self.target.key(),
                self.move_map.key())

    def __repr__(self):
        m = ",".join(f"{a}>{b}" for a, b in self.move_map.items())
        return f"Iso[{m}]"


def validate_iso(f: StrategyIso) -> list:
    report = []
    src_ids = f.source.move_ids()
    dst_ids = f.target.move_ids()
    if frozenset(f.move_map.keys()) != src_ids:
        report.append("move_map domain differs from moves used by source")
    if frozenset(f.move_map.values()) != dst_ids:
        report.append("move_map image differs from moves used by target")
    if len(set(f.move_map.values())) != len(f.move_map):
        report.append("move_map is not injective")
    for a, b in f.move_map.items():
        ma = f.source.game.moves.get(a)
        mb = f.target.game.moves.get(b)
        if ma is None or mb is None:
            report.append(f"unknown move in pair {a}>{b}")
            continue
        if ma.polarity != mb.polarity or ma.kind != mb.kind:
            report.append(f"{a}>{b} does not preserve polarity/kind")
        ea, eb = ma.enabler, mb.enabler
        if (ea is None) != (eb is None):
            report.append(f"{a}>{b} does not preserve initiality")
        elif ea is not None and ea in f.move_map and f.move_map[ea] != eb:
            report.append(f"{a}>{b} does not preserve the enabler relation")
    translated = set()
    for p in f.source.positions:
        try:
            translated.add(iso_apply(f, p))
        except KeyError:
            report.append(f"position {p!r} uses a move outside move_map")
            return report
    if translated != set(f.target.positions):
        report.append("induced play translation does not map positions "
                      "onto positions")
    return report


def iso_apply(f: StrategyIso, play: Play) -> Play:
    """Translate a play move-wise along the bijection."""
    return Play(tuple((f.move_map[mid], j) for mid, j in play.occurrences))


def iso_compose(f: StrategyIso, g: StrategyIso) -> StrategyIso:
    """Apply ``f`` first, then ``g`` (requires f.target = g.source)."""
    if f.target != g.source:
        raise ValueError("iso_compose: endpoint mismatch")
    return StrategyIso(f.source, g.target,
                       {a: g.move_map[b] for a, b in f.move_map.items()})


def iso_invert(f: StrategyIso) -> StrategyIso:
    return StrategyIso(f.target, f.source,
                       {b: a for a, b in f.move_map.items()})


def identity_iso(s: Strategy) -> StrategyIso:
    return StrategyIso(s, s, {m: m for m in s.move_ids()})


def strategy_isos(src: Strategy, dst: Strategy,
                  guard: SizeGuard = DEFAULT_GUARD):
    """All strategy isomorphisms from ``src`` to ``dst``."""
    a_ids = sort_values(src.move_ids())
    b_ids = sort_values(dst.move_ids())
    if len(a_ids) != len(b_ids):
        return []
    est = 1
    for i in range(len(a_ids)):
        est *= (i + 1)
    guard.check("strategy_isos", est, guard.max_candidates)

    def profile(game, mid):
        m = game.moves[mid]
        return (m.polarity, m.kind, m.enabler is None)

    out = []

    def assign(i, mapping, used):
        if i == len(a_ids):
            cand = StrategyIso(src, dst, dict(mapping))
            if not validate_iso(cand):
                out.append(cand)
            return
        a = a_ids[i]
        for b in b_ids:
            if b in used:
                continue
            if profile(src.game, a) != profile(dst.game, b):
                continue
            ea = src.game.moves[a].enabler
            eb = dst.game.moves[b].enabler
            if ea is not None and ea in mapping and mapping[ea] != eb:
                continue
            mapping[a] = b
            used.add(b)
            assign(i + 1, mapping, used)
            del mapping[a]
            used.discard(b)

    assign(0, {}, set())
    return sort_values(out)


# ---------------------------------------------------------------------------
# Compound arenas: with-products and linear implication.
#
# In A -o B the left component is polarity-flipped.  When B has several
# initial moves the left component is copied once per opener so that
# every move keeps a single enabler; copies are tagged l0., l1., ... in
# the sorted order of B's initial moves.
# ---------------------------------------------------------------------------

_IMPL_COMPONENTS: dict = {}
_WITH_ARITY: dict = {}


def _flip(p: str) -> str:
    return PROPONENT if p == OPPONENT else OPPONENT


def with_game(components: Sequence[Game], name: str = "") -> Game:
    """Product arena: each play lives inside exactly one tagged component."""
    moves = []
    plays = {EMPTY_PLAY}
    for i, g in enumerate(components):
        tag = f"c{i}."
        for m in g.moves.values():
            moves.append(Move(tag + m.id, m.polarity, m.kind,
                              None if m.enabler is None else tag + m.enabler))
        for p in g.plays:
            plays.add(Play(tuple((tag + mid, j) for mid, j in p.occurrences)))
    game = Game(moves, plays, name or "&(" + ",".join(g.name for g in components) + ")")
    _WITH_ARITY[game.key()] = len(components)
    return game


def pair_strategies(components: Sequence[Strategy], name: str = "") -> Strategy:
    """Tagged disjoint union of strategies, one per product component."""
    games = [s.game for s in components]
    game = with_game(games)
    positions = {EMPTY_PLAY}
    for i, s in enumerate(components):
        tag = f"c{i}."
        for p in s.positions:
            positions.add(Play(tuple((tag + mid, j) for mid, j in p.occurrences)))
    return Strategy(game, positions, name)


def project_component(s: Strategy, i: int) -> Strategy:
    """Recover the i-th component of a paired strategy."""
    tag = f"c{i}."
    moves = []
    for m in s.game.moves.values():
        if m.id.startswith(tag):
            moves.append(Move(m.id[len(tag):], m.polarity, m.kind,
                              None if m.enabler is None else m.enabler[len(tag):]))
    plays = {EMPTY_PLAY}
    for p in s.game.plays:
        if all(mid.startswith(tag) for mid, _ in p.occurrences):
            plays.add(Play(tuple((mid[len(tag):], j) for mid, j in p.occurrences)))
    game = Game(moves, plays)
    positions = {EMPTY_PLAY}
    for p in s.positions:
        if p.occurrences and all(mid.startswith(tag) for mid, _ in p.occurrences):
            positions.add(Play(tuple((mid[len(tag):], j) for mid, j in p.occurrences)))
    return Strategy(game, positions, s.name)


def _initial_moves(game: Game):
    return [m for m in sort_values(game.moves.values()) if m.enabler is None]


def linear_implication(left: Game, right: Game,
                       guard: SizeGuard = DEFAULT_GUARD) -> Game:
    """The arena ``left -o right`` with explicitly generated plays."""
    openers = _initial_moves(right)
    moves = []
    for m in right.moves.values():
        moves.append(Move("r." + m.id, m.polarity, m.kind,
                          None if m.enabler is None else "r." + m.enabler))
    copy_tags = []
    for k, opener in enumerate(openers):
        tag = f"l{k}."
        copy_tags.append(tag)
        for m in left.moves.values():
            enabler = ("r." + opener.id if m.enabler is None
                       else tag + m.enabler)
            moves.append(Move(tag + m.id, _flip(m.polarity), m.kind, enabler))
    game_moves = fdict({m.id: m for m in moves})

    def project_ok(occ):
        # right projection
        ridx = [i for i, (mid, _) in enumerate(occ) if mid.startswith("r.")]
        rmap = {gi: li for li, gi in enumerate(ridx)}
        rocc = []
        for gi in ridx:
            mid, j = occ[gi]
            rocc.append((mid[2:], None if j is None else rmap.get(j, -1)))
        if any(j == -1 for _, j in rocc):
            return False
        if Play(rocc) not in right.plays:
            return False
        for tag in copy_tags:
            lidx = [i for i, (mid, _) in enumerate(occ) if mid.startswith(tag)]
            lmap = {gi: li for li, gi in enumerate(lidx)}
            locc = []
            for gi in lidx:
                mid, j = occ[gi]
                base = mid[len(tag):]
                if left.moves[base].enabler is None:
                    locc.append((base, None))
                else:
                    locc.append((base, lmap.get(j, -1)))
            if any(j == -1 for _, j in locc):
                return False
            if Play(locc) not in left.plays:
                return False
        return True

    plays = {EMPTY_PLAY}
    frontier = [EMPTY_PLAY]
    while frontier:
        play = frontier.pop()
        if len(play) >= guard.max_play_len:
            continue
        expected = OPPONENT if len(play) % 2 == 0 else PROPONENT
        for m in game_moves.values():
            if m.polarity != expected:
                continue
            if m.enabler is None:
                cands = [None]
            else:
                cands = [i for i, (mid, _) in enumerate(play.occurrences)
                         if mid == m.enabler]
            for j in cands:
                occ = play.occurrences + ((m.id, j),)
                if project_ok(occ):
                    p2 = Play(occ)
                    if p2 not in plays:
                        guard.check("linear_implication plays",
                                    len(plays) + 1, guard.max_candidates)
                        plays.add(p2)
                        frontier.append(p2)
    game = Game(moves, plays, f"({left.name}-o{right.name})")
    _IMPL_COMPONENTS[game.key()] = (left, right)
    return game


def implication_components(game: Game):
    comp = _IMPL_COMPONENTS.get(game.key())
    if comp is None:
        raise ValueError("game was not built by linear_implication")
    return comp


def _opener_index(right: Game, opener_id: str) -> int:
    for k, m in enumerate(_initial_moves(right)):
        if m.id == opener_id:
            return k
    raise ValueError(f"{opener_id} is not an initial move")


def _mirror_strategy(left: Game, right: Game, to_left, to_right,
                     guard: SizeGuard = DEFAULT_GUARD) -> Strategy:
    """Copy-cat-like strategy on ``left -o right``.

    ``to_left``/``to_right`` translate underlying move ids across sides.
    """
    game = linear_implication(left, right, guard)
    positions = {EMPTY_PLAY}
    frontier = [EMPTY_PLAY]
    while frontier:
        s = frontier.pop()
        for oext in game.extensions(s):
            mid, j = oext.occurrences[-1]
            here = len(s)
            if mid.startswith("r."):
                base = to_left(mid[2:])
                if j is None:
                    k = _opener_index(right, mid[2:])
                    mirror = (f"l{k}.{base}", here)
                else:
                    # non-initial right move: mirror into the partner copy
                    pj = j + 1 if j % 2 == 0 else j - 1
                    ltag = oext.occurrences[pj][0].split(".", 1)[0]
                    mirror = (f"{ltag}.{base}", pj)
            else:
                tag, base = mid.split(".", 1)
                tbase = to_right(base)
                if left.moves[base].enabler is None:
                    # left-initial occurrence mirrors to a right initial
                    mirror = (f"r.{tbase}", None)
                else:
                    pj = j + 1 if j % 2 == 0 else j - 1
                    mirror = (f"r.{tbase}", pj)
            cand = Play(oext.occurrences + (mirror,))
            if cand in game.plays and cand not in positions:
                positions.add(cand)
                frontier.append(cand)
    return Strategy(game, positions)


def copycat(game: Game, guard: SizeGuard = DEFAULT_GUARD) -> Strategy:
    """The identity of strategy composition: replay the other side."""
    ident = lambda m: m
    return _mirror_strategy(game, game, ident, ident, guard).named(
        f"cc_{game.name}")


def iso_as_strategy(f: StrategyIso, guard: SizeGuard = DEFAULT_GUARD) -> Strategy:
    """Encode an isomorphism as a twisted copy-cat on source -o target."""
    fwd = dict(f.move_map.items())
    bwd = {b: a for a, b in fwd.items()}
    return _mirror_strategy(f.source.game, f.target.game,
                            lambda m: bwd[m], lambda m: fwd[m], guard)


def lift_constant(t: Strategy, left: Game,
                  guard: SizeGuard = DEFAULT_GUARD) -> Strategy:
    """Play ``t`` on the right of ``left -o t.game``, ignoring the left."""
    game = linear_implication(left, t.game, guard)
    positions = {Play(tuple(("r." + mid, j) for mid, j in p.occurrences))
                 for p in t.positions}
    return Strategy(game, positions, t.name)


def project_right(s: Strategy) -> Strategy:
    """Inverse of lift_constant on strategies that never move left."""
    _, right = implication_components(s.game)
    positions = set()
    for p in s.positions:
        if all(mid.startswith("r.") for mid, _ in p.occurrences):
            positions.add(Play(tuple((mid[2:], j) for mid, j in p.occurrences)))
    return Strategy(right, positions, s.name)


# ---------------------------------------------------------------------------
# Composition by synchronize-and-hide.
# ---------------------------------------------------------------------------

class _Event:
    __slots__ = ("w", "ps", "pt")

    def __init__(self, w=None, ps=None, pt=None):
        self.w = w
        self.ps = ps
        self.pt = pt


class _Dialogue:
    """Interaction state between s : A -o B and t : B -o C."""

    def __init__(self, s, t, A, B, C, wgame):
        self.s, self.t = s, t
        self.A, self.B, self.C = A, B, C
        self.wgame = wgame
        self.events = []
        self.w = []   # event indices visible in w
        self.ps = []  # event indices in s's position
        self.pt = []  # event indices in t's position

    def clone(self):
        d = _Dialogue(self.s, self.t, self.A, self.B, self.C, self.wgame)
        d.events = list(self.events)
        d.w, d.ps, d.pt = list(self.w), list(self.ps), list(self.pt)
        return d

    def _append(self, w=None, ps=None, pt=None):
        e = _Event(w, ps, pt)
        idx = len(self.events)
        self.events.append(e)
        if w is not None:
            self.w.append(idx)
        if ps is not None:
            self.ps.append(idx)
        if pt is not None:
            self.pt.append(idx)
        return idx

    def w_play(self):
        return Play(tuple(self.events[i].w for i in self.w))

    def ps_play(self):
        return Play(tuple(self.events[i].ps for i in self.ps))

    def pt_play(self):
        return Play(tuple(self.events[i].pt for i in self.pt))

    def _to_ambient(self, event_idx: int, ambient: str) -> int:
        """Index of an event inside an ambient, chasing hidden openers."""
        chain = {"w": self.w, "ps": self.ps, "pt": self.pt}[ambient]
        if event_idx in chain:
            return chain.index(event_idx)
        e = self.events[event_idx]
        # hidden B opener: its pt occurrence is justified by a C opener
        if ambient == "w" and e.pt is not None:
            j = e.pt[1]
            if j is not None:
                return self._to_ambient(self.pt[j], "w")
        raise ValueError("cannot translate event into ambient " + ambient)

    def feed_w(self, mid: str, j):
        """Record an external Opponent move, then run until P answers."""
        if mid.startswith("r."):
            pt_j = None if j is None else self._pt_index_of_w(j)
            idx = self._append(w=(mid, j), pt=(mid, pt_j))
            return self._run_t()
        # external move in A: feed to s's left side
        tag, base = mid.split(".", 1)
        ps_j = self._ps_left_justifier(mid, j)
        ps_mid = self._ps_left_tag(j) + "." + base
        idx = self._append(w=(mid, j), ps=(ps_mid, ps_j))
        return self._run_s()

    def _pt_index_of_w(self, wj: int) -> int:
        return self._to_ambient(self.w[wj], "pt") if wj is not None else None

    def _ps_left_tag(self, wj) -> str:
        # the A-copy used by s is fixed by the thread's B opener; find it
        # via the existing left occurrences of the same thread, falling
        # back to the sole left copy when unambiguous.
        for i in reversed(self.ps):
            mid, _ = self.events[i].ps
            if mid.startswith("l"):
                return mid.split(".", 1)[0]
        return "l0"

    def _ps_left_justifier(self, w_mid: str, wj):
        base = w_mid.split(".", 1)[1]
        if self.A.moves[base].enabler is None:
            # A-initial: justified in ps by the B opener of this thread
            for li, i in enumerate(self.ps):
                mid, _ = self.events[i].ps
                if mid.startswith("r.") and self.B.moves[mid[2:]].enabler is None:
                    pass
            # locate s's pending B opener: last r-initial in ps
            for li in range(len(self.ps) - 1, -1, -1):
                mid, _ = self.events[self.ps[li]].ps
                if mid.startswith("r.") and self.B.moves[mid[2:]].enabler is None:
                    return li
            raise ValueError("no B opener to justify an A-initial move")
        return self._to_ambient(self.w[wj], "ps")

    def _run_t(self):
        """t to move; externalize in C or bounce through B and s."""
        resp = self.t.response(self.pt_play())
        if resp is None:
            return None
        mid, j = resp.occurrences[-1]
        if mid.startswith("r."):
            w_j = None if j is None else self._to_ambient(self.pt[j], "w")
            self._append(w=(mid, w_j), pt=(mid, j))
            return self.w_play()
        # t moved in B: feed to s's right side
        tag, base = mid.split(".", 1)
        if self.B.moves[base].enabler is None:
            ps_j = None
        else:
            ps_j = self._to_ambient(self.pt[j], "ps")
        self._append(ps=("r." + base, ps_j), pt=(mid, j))
        return self._run_s()

    def _run_s(self):
        """s to move; externalize in A or bounce through B and t."""
        resp = self.s.response(self.ps_play())
        if resp is None:
            return None
        mid, j = resp.occurrences[-1]
        if mid.startswith("r."):
            # s moved in B: feed to t's left copy for the current C opener
            base = mid[2:]
            pt_tag = self._pt_left_tag()
            if self.B.moves[base].enabler is None:
                pt_j = self._pt_c_opener_index()
            else:
                pt_j = self._to_ambient(self.ps[j], "pt")
            self._append(ps=(mid, j), pt=(pt_tag + "." + base, pt_j))
            return self._run_t()
        # s moved in A: externalize
        tag, base = mid.split(".", 1)
        w_tag = "l" + str(self._w_copy_index())
        if self.A.moves[base].enabler is None:
            w_j = self._w_c_opener_index()
        else:
            w_j = self._to_ambient(self.ps[j], "w")
        self._append(w=(w_tag + "." + base, w_j), ps=(mid, j))
        return self.w_play()

    def _pt_left_tag(self) -> str:
        for i in reversed(self.pt):
            mid, _ = self.events[i].pt
            if mid.startswith("l"):
                return mid.split(".", 1)[0]
        k = self._c_opener_copy()
        return f"l{k}"

    def _c_opener_copy(self) -> int:
        for li in range(len(self.pt) - 1, -1, -1):
            mid, _ = self.events[self.pt[li]].pt
            if mid.startswith("r.") and self.C.moves[mid[2:]].enabler is None:
                return _opener_index(self.C, mid[2:])
        raise ValueError("no C opener in play")

    def _pt_c_opener_index(self) -> int:
        for li in range(len(self.pt) - 1, -1, -1):
            mid, _ = self.events[self.pt[li]].pt
            if mid.startswith("r.") and self.C.moves[mid[2:]].enabler is None:
                return li
        raise ValueError("no C opener in play")

    def _w_c_opener_index(self) -> int:
        for li in range(len(self.w) - 1, -1, -1):
            mid, _ = self.events[self.w[li]].w
            if mid.startswith("r.") and self.C.moves[mid[2:]].enabler is None:
                return li
        raise ValueError("no C opener in w")

    def _w_copy_index(self) -> int:
        return self._c_opener_copy()


def compose_strategies(s: Strategy, t: Strategy,
                       guard: SizeGuard = DEFAULT_GUARD) -> Strategy:
    """Synchronize ``s : A -o B`` with ``t : B -o C`` and hide B."""
    A, B1 = implication_components(s.game)
    B2, C = implication_components(t.game)
    if B1 != B2:
        raise ValueError("compose_strategies: middle games disagree")
    wgame = linear_implication(A, C, guard)
    root = _Dialogue(s, t, A, B1, C, wgame)
    positions = {EMPTY_PLAY}
    frontier = [(EMPTY_PLAY, root)]
    while frontier:
        play, dlg = frontier.pop()
        for oext in wgame.extensions(play):
            mid, j = oext.occurrences[-1]
            d2 = dlg.clone()
            w2 = d2.feed_w(mid, j)
            if w2 is None:
                continue
            if w2 not in wgame.plays:
                raise AssertionError(f"illegal composite position {w2!r}")
            if w2 not in positions:
                positions.add(w2)
                frontier.append((w2, d2))
    return Strategy(wgame, positions, f"({t.name}o{s.name})")


# ---------------------------------------------------------------------------
# Named fixtures.
# ---------------------------------------------------------------------------

def _bool_game() -> Game:
    q_tt = Move("q_tt", OPPONENT, QUESTION)
    q_ff = Move("q_ff", OPPONENT, QUESTION)
    tt = Move("tt", PROPONENT, ANSWER, "q_tt")
    ff = Move("ff", PROPONENT, ANSWER, "q_ff")
    plays = [EMPTY_PLAY,
             Play((("q_tt", None),)), Play((("q_tt", None), ("tt", 0))),
             Play((("q_ff", None),)), Play((("q_ff", None), ("ff", 0)))]
    return Game((q_tt, q_ff, tt, ff), plays, "BOOL")


def _bool_game_primed() -> Game:
    """A disjoint copy of the boolean game with renamed moves."""
    q_tt = Move("q_tt'", OPPONENT, QUESTION)
    q_ff = Move("q_ff'", OPPONENT, QUESTION)
    tt = Move("tt'", PROPONENT, ANSWER, "q_tt'")
    ff = Move("ff'", PROPONENT, ANSWER, "q_ff'")
    plays = [EMPTY_PLAY,
             Play((("q_tt'", None),)), Play((("q_tt'", None), ("tt'", 0))),
             Play((("q_ff'", None),)), Play((("q_ff'", None), ("ff'", 0)))]
    return Game((q_tt, q_ff, tt, ff), plays, "BOOL'")


def _n2_game() -> Game:
    q = Move("q", OPPONENT, QUESTION)
    a0 = Move("a0", PROPONENT, ANSWER, "q")
    a1 = Move("a1", PROPONENT, ANSWER, "q")
    plays = [EMPTY_PLAY, Play((("q", None),)),
             Play((("q", None), ("a0", 0))), Play((("q", None), ("a1", 0)))]
    return Game((q, a0, a1), plays, "N2")


def _fixtures() -> dict:
    out = {}
    bool_g = _bool_game()
    n2 = _n2_game()
    out["I"] = EMPTY_GAME
    out["BOOL"] = bool_g
    out["BOOL'"] = _bool_game_primed()
    out["N2"] = n2
    empty_strat = Strategy(EMPTY_GAME, {EMPTY_PLAY}, "e")
    out["epsilon"] = empty_strat
    bullet = Strategy(bool_g, {EMPTY_PLAY,
                               Play((("q_tt", None), ("tt", 0))),
                               Play((("q_ff", None), ("ff", 0)))}, "bullet")
    out["bullet"] = bullet
    out["bool-tt"] = Strategy(bool_g, {EMPTY_PLAY,
                                       Play((("q_tt", None), ("tt", 0)))},
                              "bool-tt")
    out["bool-ff"] = Strategy(bool_g, {EMPTY_PLAY,
                                       Play((("q_ff", None), ("ff", 0)))},
                              "bool-ff")
    primed = out["BOOL'"]
    out["bullet'"] = Strategy(primed, {EMPTY_PLAY,
                                       Play((("q_tt'", None), ("tt'", 0))),
                                       Play((("q_ff'", None), ("ff'", 0)))},
                              "bullet'")
    zero = Strategy(n2, {EMPTY_PLAY, Play((("q", None), ("a0", 0)))}, "zero")
    one = Strategy(n2, {EMPTY_PLAY, Play((("q", None), ("a1", 0)))}, "one")
    out["zero"] = zero
    out["one"] = one
    out["cp"] = identity_iso(bullet)
    out["rv"] = StrategyIso(bullet, bullet,
                            {"q_tt": "q_ff", "q_ff": "q_tt",
                             "tt": "ff", "ff": "tt"})
    out["cp'"] = identity_iso(out["bullet'"])
    out["rv'"] = StrategyIso(out["bullet'"], out["bullet'"],
                             {"q_tt'": "q_ff'", "q_ff'": "q_tt'",
                              "tt'": "ff'", "ff'": "tt'"})
    out["N2-swap"] = StrategyIso(zero, one, {"q": "q", "a0": "a1"})
    return out


_FIXTURES = None


def fixture(name: str):
    """Canonical named game, strategy, or isomorphism."""
    global _FIXTURES
    if _FIXTURES is None:
        _FIXTURES = _fixtures()
    try:
        return _FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: "
                       f"{sorted(_FIXTURES)}") from None
