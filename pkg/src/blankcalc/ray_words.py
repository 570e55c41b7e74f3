"""
Ray systems and Blank words.

Rays follow a breadth-first spanning tree of the dual graph rooted at the
base face, so every ray crosses the curve as few times as possible.  Rays
sharing a dual edge run as a parallel bundle whose left-to-right order is
inherited from the counterclockwise order of child edges around each face,
which keeps the bundles planar (no two rays cross).

Letters are non-zero ints: ``+i`` for a_i and ``-i`` for a_i^{-1}.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .curve_map import FaceDecomposition, SphericalCurve
from .errors import MalformedInput


def letter_key(letter: int) -> tuple[int, int]:
    return (abs(letter), 0 if letter > 0 else 1)


def canonical_rotation(letters: tuple[int, ...]) -> tuple[int, ...]:
    if not letters:
        return ()
    keys = [letter_key(x) for x in letters]
    m = len(keys)
    best = min(range(m), key=lambda i: keys[i:] + keys[:i])
    return letters[best:] + letters[:best]


@dataclass(frozen=True)
class CyclicWord:
    """A cyclic word presented from a fixed start; positions are 1..m."""

    letters: tuple[int, ...]
    reduced: bool = False

    def __post_init__(self):
        if any(x == 0 or not isinstance(x, int) for x in self.letters):
            raise MalformedInput("letters must be non-zero integers")

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join(str(x) for x in self.letters)

    def canonical(self) -> "CyclicWord":
        return CyclicWord(canonical_rotation(self.letters), self.reduced)

    def same_cyclic_word(self, other: "CyclicWord") -> bool:
        return canonical_rotation(self.letters) == canonical_rotation(other.letters)

    def pretty(self) -> str:
        if not self.letters:
            return "(empty)"
        return " ".join(f"a{x}" if x > 0 else f"a{-x}^-1" for x in self.letters)


def parse_word(text: str) -> CyclicWord:
    """Whitespace separated signed integers, e.g. ``"2 -3 -1 -4"``."""
    letters = []
    for token in text.replace(",", " ").split():
        try:
            value = int(token)
        except ValueError:
            raise MalformedInput(f"bad letter {token!r}") from None
        if value == 0:
            raise MalformedInput("letter 0 is not allowed")
        letters.append(value)
    return CyclicWord(tuple(letters))


def reduce_word(word: CyclicWord | Iterable[int]) -> CyclicWord:
    """Free cyclic reduction; survivors keep their relative order."""
    letters = word.letters if isinstance(word, CyclicWord) else tuple(word)
    stack = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    lo, hi = 0, len(stack)
    while hi - lo >= 2 and stack[lo] == -stack[hi - 1]:
        lo += 1
        hi -= 1
    return CyclicWord(tuple(stack[lo:hi]), reduced=True)


def is_reduced(letters: tuple[int, ...]) -> bool:
    m = len(letters)
    if m < 2:
        return True
    return all(letters[i] != -letters[(i + 1) % m] for i in range(m))


@dataclass(frozen=True)
class RaySystem:
    base_face: int
    parent: tuple[int | None, ...]       # per face
    parent_arc: tuple[int | None, ...]   # per face
    depth: tuple[int, ...]               # per face
    ray_of_face: dict                    # face -> ray index (1-based)
    face_of_ray: tuple[int, ...]         # index 0 unused
    paths: tuple[tuple[int, ...], ...]   # per ray (index 0 empty): arcs crossed
    arc_loads: tuple[tuple[int, ...], ...]  # per arc: letters in curve order

    @property
    def ray_count(self) -> int:
        return len(self.face_of_ray) - 1


def build_rays(dec: FaceDecomposition, own_ray_last: bool = False,
               reverse_scan: bool = False) -> RaySystem:
    """Breadth-first dual tree plus planar bundle order.

    ``own_ray_last`` puts a face's own ray at the right end of the bundle
    leaving it instead of the left; ``reverse_scan`` walks face boundaries
    backwards during the search.  Both are alternative valid ray systems.
    """
    if dec.base_face is None:
        raise ValueError("numbering must be computed before building rays")
    base = dec.base_face
    nf = dec.face_count
    parent = [None] * nf
    parent_arc = [None] * nf
    depth = [-1] * nf
    depth[base] = 0
    order = [base]
    queue = deque([base])
    while queue:
        f = queue.popleft()
        boundary = dec.faces[f][::-1] if reverse_scan else dec.faces[f]
        for arc, _ in boundary:
            g = dec.other_side(arc, f)
            if depth[g] < 0:
                depth[g] = depth[f] + 1
                parent[g], parent_arc[g] = f, arc
                order.append(g)
                queue.append(g)

    non_base = [f for f in range(nf) if f != base]
    ray_of_face = {f: i + 1 for i, f in enumerate(non_base)}
    face_of_ray = (-1,) + tuple(non_base)

    # Bundles leaving each face toward its parent, left to right for a
    # traveller heading to the base.  Children are listed counterclockwise
    # starting just after the parent arc.
    bundle = {}
    for f in reversed(order):
        if f == base:
            continue
        cycle = [arc for arc, _ in dec.faces[f]]
        start = cycle.index(parent_arc[f])
        strands = []
        for k in range(1, len(cycle)):
            arc = cycle[(start + k) % len(cycle)]
            g = dec.other_side(arc, f)
            if parent_arc[g] == arc and parent[g] == f:
                strands.extend(bundle[g])
        own = [ray_of_face[f]]
        bundle[f] = strands + own if own_ray_last else own + strands

    loads = [()] * len(dec.left_face)
    for f in non_base:
        arc = parent_arc[f]
        if dec.left_face[arc] == f:
            # left-to-right crossing: letters a_i, met in reverse bundle order
            loads[arc] = tuple(r for r in reversed(bundle[f]))
        else:
            loads[arc] = tuple(-r for r in bundle[f])
    paths = [()]
    for f in non_base:
        path = []
        while f != base:
            path.append(parent_arc[f])
            f = parent[f]
        paths.append(tuple(path))
    return RaySystem(
        base_face=base,
        parent=tuple(parent),
        parent_arc=tuple(parent_arc),
        depth=tuple(depth),
        ray_of_face=ray_of_face,
        face_of_ray=face_of_ray,
        paths=tuple(paths),
        arc_loads=tuple(loads),
    )


def extract_word(curve: SphericalCurve, dec: FaceDecomposition,
                 rays: RaySystem, canonical: bool = True) -> CyclicWord:
    """Read the ray crossings along the curve (unreduced)."""
    letters = []
    for arc in range(curve.arc_count):
        letters.extend(rays.arc_loads[arc])
    word = CyclicWord(tuple(letters))
    return word.canonical() if canonical else word


def curve_word(curve: SphericalCurve, dec: FaceDecomposition, **choices) -> CyclicWord:
    """Reduced word of a numbered curve, canonically rotated."""
    rays = build_rays(dec, **choices)
    return reduce_word(extract_word(curve, dec, rays)).canonical()


__all__ = [
    "CyclicWord", "RaySystem", "build_rays", "canonical_rotation", "curve_word",
    "extract_word", "is_reduced", "letter_key", "parse_word", "reduce_word"
]
