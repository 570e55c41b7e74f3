"""
Pairings, negative groups and groupings of reduced cyclic words.

A cancellation state is the reduced word together with the set of
positions that are still active.  Two moves are available:

* a *pairing* ``a_i^{+-1} P a_i^{-+1}`` where ``P`` is a (linear) positive
  word of active letters; the whole subword, interior included, leaves the
  active word;
* a *negative group* ``a_j^{-1} a_i^{-1}`` (``i != j``) of adjacent active
  letters.

A grouping is the chord set of a cancellation sequence ending in a positive
word.  Chords are compared by endpoints only, so two sequences producing
the same chords give the same grouping.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from .errors import ChordNotApplicable, SearchBudgetExceeded
from .ray_words import CyclicWord

DEFAULT_STATE_CAP = 10 ** 7


class ChordKind(enum.Enum):
    PAIRING = "P"
    NEGATIVE_GROUP = "NG"


@dataclass(frozen=True, order=True)
class Chord:
    """Endpoints ``p < q`` are 1-based positions in the presented word.

    ``wraps`` records that the cancelled subword ran from ``q`` forward past
    the end of the presentation to ``p``; it is not part of chord identity.
    """

    p: int
    q: int
    kind: ChordKind = field(compare=False)
    wraps: bool = field(default=False, compare=False)

    def __post_init__(self):
        if not self.p < self.q:
            raise ValueError(f"chord endpoints must satisfy p < q, got {self.p}, {self.q}")

    @property
    def label(self) -> str:
        return f"{self.p}{self.q}"

    def crosses(self, other: "Chord") -> bool:
        return (self.p < other.p < self.q < other.q) or (other.p < self.p < other.q < self.q)

    def __repr__(self):
        return f"Chord({self.p},{self.q},{self.kind.value})"


def is_positive(word: CyclicWord | Iterable[int]) -> bool:
    """All letters positive and no two cyclically adjacent letters equal.

    A single letter is positive: it is not adjacent to a distinct copy of
    itself.
    """
    letters = tuple(word.letters if isinstance(word, CyclicWord) else word)
    if any(x < 0 for x in letters):
        return False
    m = len(letters)
    if m < 2:
        return True
    return all(letters[i] != letters[(i + 1) % m] for i in range(m))


@dataclass(frozen=True)
class Move:
    chord: Chord
    removed: frozenset  # 0-based positions leaving the active word


@dataclass(frozen=True)
class CancellationState:
    word: CyclicWord
    alive: tuple[int, ...]  # 0-based active positions in cyclic order

    @classmethod
    def start(cls, word: CyclicWord) -> "CancellationState":
        return cls(word, tuple(range(len(word))))

    @property
    def letters(self) -> tuple[int, ...]:
        return tuple(self.word.letters[i] for i in self.alive)

    @property
    def positions(self) -> tuple[int, ...]:
        """1-based original positions of the active letters."""
        return tuple(i + 1 for i in self.alive)

    def as_word(self) -> CyclicWord:
        return CyclicWord(self.letters)

    def is_positive(self) -> bool:
        return is_positive(self.letters)

    def moves(self) -> list[Move]:
        return _moves(self.word.letters, self.alive)

    def apply(self, move: Move) -> "CancellationState":
        return CancellationState(self.word, tuple(i for i in self.alive if i not in move.removed))


def _make_chord(a: int, b: int, kind: ChordKind) -> Chord:
    """Chord for a subword running forward from 0-based ``a`` to ``b``."""
    if a < b:
        return Chord(a + 1, b + 1, kind, wraps=False)
    return Chord(b + 1, a + 1, kind, wraps=True)


def _moves(letters: tuple[int, ...], alive: tuple[int, ...]) -> list[Move]:
    k = len(alive)
    out = []
    seen_ng = set()
    for s in range(k):
        first = letters[alive[s]]
        # negative group with the next active letter
        if k >= 2:
            nxt = letters[alive[(s + 1) % k]]
            if first < 0 and nxt < 0 and first != nxt:
                chord = _make_chord(alive[s], alive[(s + 1) % k], ChordKind.NEGATIVE_GROUP)
                key = (chord.p, chord.q, chord.wraps)
                if key not in seen_ng:
                    seen_ng.add(key)
                    out.append(Move(chord, frozenset((alive[s], alive[(s + 1) % k]))))
        # pairings opening at s: walk forward over a positive interior
        prev = None
        for j in range(1, k):
            x = letters[alive[(s + j) % k]]
            if x == -first:
                span = frozenset(alive[(s + t) % k] for t in range(j + 1))
                out.append(Move(_make_chord(alive[s], alive[(s + j) % k], ChordKind.PAIRING), span))
            if x < 0 or x == prev:
                break
            prev = x
    return out


def find_cancellable(word: CyclicWord | CancellationState) -> list[Chord]:
    """Every chord that can be cancelled right now (a pairing whose two
    sides are both positive shows up twice, once per side)."""
    state = word if isinstance(word, CancellationState) else CancellationState.start(word)
    return [mv.chord for mv in state.moves()]


def cancel(word: CyclicWord | CancellationState, chord: Chord) -> CancellationState:
    """Cancel ``chord`` if it is currently a pairing or negative group.

    ``chord.wraps`` selects which side is cancelled when both are possible.
    """
    state = word if isinstance(word, CancellationState) else CancellationState.start(word)
    options = [mv for mv in state.moves() if mv.chord == chord]
    if not options:
        raise ChordNotApplicable(f"{chord!r} is not cancellable in {state.as_word()}")
    pick = [mv for mv in options if mv.chord.wraps == chord.wraps] or options
    return state.apply(pick[0])


# ---------------------------------------------------------------- search

class _Search:
    def __init__(self, word: CyclicWord, state_cap: int):
        self.letters = word.letters
        self.m = len(word)
        self.cap = state_cap
        self.memo: dict[int, frozenset] = {}
        self.terminals: set[int] = set()

    def alive(self, mask: int) -> tuple[int, ...]:
        return tuple(i for i in range(self.m) if mask >> i & 1)

    def _remember(self, mask, value):
        if len(self.memo) >= self.cap:
            raise SearchBudgetExceeded(
                f"more than {self.cap} cancellation states for a word of length {self.m}")
        self.memo[mask] = value

    def groupings(self, mask: int) -> frozenset:
        """Chord sets completing ``mask`` to a positive word."""
        if mask in self.memo:
            return self.memo[mask]
        alive = self.alive(mask)
        letters = tuple(self.letters[i] for i in alive)
        if is_positive(letters):
            result = frozenset([frozenset()])
        else:
            moves = _moves(self.letters, alive)
            if not moves:
                self.terminals.add(mask)
            acc = set()
            for mv in moves:
                rest = mask
                for i in mv.removed:
                    rest &= ~(1 << i)
                for tail in self.groupings(rest):
                    acc.add(tail | {mv.chord})
            result = frozenset(acc)
        self._remember(mask, result)
        return result


@dataclass(frozen=True)
class WeightedTree:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]  # (outer, inner, label)
    region_words: tuple[tuple[int, ...], ...] = field(compare=False, default=())

    def to_dot(self, name: str = "grouping") -> str:
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            lines.append(f"  {v};")
        for a, b, label in self.edges:
            lines.append(f'  {a} -- {b} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines)


@dataclass(frozen=True)
class Grouping:
    chords: tuple[Chord, ...]
    residual_positions: tuple[int, ...] = field(compare=False)
    residual: tuple[int, ...] = field(compare=False)
    word_length: int = field(compare=False)

    @property
    def negative_group_count(self) -> int:
        return sum(c.kind is ChordKind.NEGATIVE_GROUP for c in self.chords)

    @property
    def pairing_count(self) -> int:
        return sum(c.kind is ChordKind.PAIRING for c in self.chords)

    def chord_set(self) -> frozenset:
        return frozenset((c.p, c.q) for c in self.chords)

    def tree(self) -> WeightedTree:
        return grouping_to_tree(self, self.word_length)

    def describe(self) -> str:
        parts = [f"({c.p},{c.q}){c.kind.value}" for c in self.chords]
        res = " ".join(str(x) for x in self.residual) or "(empty)"
        return "{" + ", ".join(parts) + "} residual " + res


def _regions(chords: Iterable[Chord], m: int) -> list[int]:
    """Region id of each gap; gap t sits between positions t and t+1 (gap 0
    between m and 1).  Region ids follow their first gap."""
    opens = {c.p: c for c in chords}
    closes = {c.q for c in chords}
    if m == 0:
        return [0]
    region = [0] * m
    stack = []
    current, fresh = 0, 1
    for t in range(1, m):
        if t in opens:
            stack.append(current)
            current, fresh = fresh, fresh + 1
        elif t in closes:
            current = stack.pop()
        region[t] = current
    return region


def grouping_to_tree(grouping: Grouping | Iterable[Chord], word_length: int) -> WeightedTree:
    """Dual tree of the chord diagram; vertex D1 holds the start gap."""
    chords = grouping.chords if isinstance(grouping, Grouping) else tuple(grouping)
    region = _regions(chords, word_length)
    count = max(region) + 1 if region else 1
    names = tuple(f"D{i + 1}" for i in range(count))
    edges = tuple((names[region[c.p - 1]], names[region[c.p]], c.label)
                  for c in sorted(chords))
    endpoints = {c.p for c in chords} | {c.q for c in chords}
    words = [[] for _ in range(count)]
    for pos in range(1, word_length + 1):
        if pos not in endpoints:
            words[region[pos % word_length]].append(pos)
    return WeightedTree(names, edges, tuple(tuple(w) for w in words))


def _residual_for_root(word: CyclicWord, chords: tuple[Chord, ...], root: int):
    """Cancel ``chords`` leaves-first with ``root`` kept as the last region.

    Returns the final state, or None if some cancellation is illegal or the
    remainder is not positive.
    """
    m = len(word)
    region = _regions(chords, m)
    count = max(region) + 1
    adj = {r: [] for r in range(count)}
    for c in chords:
        inner, outer = region[c.p], region[c.p - 1]
        adj[inner].append((outer, c))
        adj[outer].append((inner, c))
    depth = {root: 0}
    stack = [root]
    child_side = {}
    while stack:
        r = stack.pop()
        for s, c in adj[r]:
            if s not in depth:
                depth[s] = depth[r] + 1
                child_side[c] = s
                stack.append(s)
    order = sorted(chords, key=lambda c: -depth[child_side[c]])
    state = CancellationState.start(word)
    for c in order:
        inside = region[c.p] == child_side[c]
        target = Chord(c.p, c.q, c.kind, wraps=not inside)
        hits = [mv for mv in state.moves() if mv.chord == target and mv.chord.wraps == target.wraps]
        if not hits:
            return None
        state = state.apply(hits[0])
    return state if state.is_positive() else None


def _make_grouping(word: CyclicWord, chord_set: frozenset) -> Grouping:
    chords = tuple(sorted(chord_set))
    m = len(word)
    count = len(chords) + 1
    for root in range(count):
        state = _residual_for_root(word, chords, root)
        if state is not None:
            return Grouping(chords, state.positions, state.letters, m)
    raise AssertionError(f"chord set {chords} admits no cancellation order")


@dataclass(frozen=True)
class SearchResult:
    groupings: tuple[Grouping, ...]
    remainders: tuple[CancellationState, ...]
    states: int


def search_word(word: CyclicWord, state_cap: int = DEFAULT_STATE_CAP) -> SearchResult:
    """Groupings and stuck remainders from one memoized search."""
    search = _Search(word, state_cap)
    sets = search.groupings((1 << len(word)) - 1)
    groupings = sorted((_make_grouping(word, s) for s in sets), key=lambda g: g.chords)
    remainders = sorted((CancellationState(word, search.alive(mask)) for mask in search.terminals),
                        key=lambda st: st.alive)
    return SearchResult(tuple(groupings), tuple(remainders), len(search.memo))


def enumerate_groupings(word: CyclicWord, state_cap: int = DEFAULT_STATE_CAP) -> list[Grouping]:
    """All groupings of a reduced word, sorted by chord list."""
    return list(search_word(word, state_cap).groupings)


def maximal_remainders(word: CyclicWord, state_cap: int = DEFAULT_STATE_CAP) -> list[CancellationState]:
    """Every stuck, non-positive state reachable by cancellation, ordered by
    surviving positions."""
    return list(search_word(word, state_cap).remainders)


def groupings_equivalent(g1: Grouping, g2: Grouping) -> bool:
    # Edge labels are distinct position pairs, so a label-preserving tree
    # isomorphism exists exactly when the chord sets agree.
    return g1.chord_set() == g2.chord_set()


def non_crossing(chords: Iterable[Chord]) -> bool:
    chords = list(chords)
    return not any(a.crosses(b) for i, a in enumerate(chords) for b in chords[i + 1:])
