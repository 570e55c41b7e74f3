"""
Spherical normal curves as signed Gauss codes.

A curve with ``n`` crossings is stored as its traversal: the ``2n`` visits
``(crossing, ordinal)`` in the order the oriented curve passes them.  Arc
``k`` runs from visit ``k`` to visit ``k + 1`` (cyclically).  Each crossing
carries a chirality bit which fixes the counterclockwise order of its four
darts, and from that rotation system we trace faces, number them and smooth
the crossings.

Darts are pairs ``(arc, end)`` with ``end == TAIL`` for the dart where the
arc leaves a crossing and ``end == HEAD`` where it arrives.  Face tracing
walks *sides* ``(arc, side)``: side ``LEFT`` is walked forwards along the
arc, side ``RIGHT`` backwards, so the face being traced is always on the
walker's left.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

from .errors import (
    InconsistentNumbering,
    MalformedInput,
    NotDoubleOccurrence,
    NotSpherical,
)

FORMAT = "gauss-chirality-v1"

TAIL, HEAD = 0, 1
LEFT, RIGHT = 0, 1


@dataclass(frozen=True)
class SphericalCurve:
    crossing_count: int
    traversal: tuple[tuple[int, int], ...]
    chirality: tuple[str, ...]  # chirality[c - 1] for crossing c

    def chirality_of(self, crossing: int) -> str:
        return self.chirality[crossing - 1]

    @property
    def arc_count(self) -> int:
        return max(1, len(self.traversal))

    def to_document(self) -> dict:
        return {
            "format": FORMAT,
            "crossings": self.crossing_count,
            "traversal": [list(v) for v in self.traversal],
            "chirality": {str(c + 1): s for c, s in enumerate(self.chirality)},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_document(), sort_keys=True)


@dataclass(frozen=True)
class FaceDecomposition:
    """Faces of the curve complement plus, once numbered, their labels.

    ``faces[f]`` is the boundary cycle of face ``f`` as a tuple of sides
    ``(arc, side)`` in walking order, i.e. counterclockwise seen from inside
    the face.  ``psi``/``psi_n``/``base_face`` stay ``None`` until
    :func:`compute_numbering` fills them.
    """

    faces: tuple[tuple[tuple[int, int], ...], ...]
    left_face: tuple[int, ...]
    right_face: tuple[int, ...]
    psi: tuple[int, ...] | None = None
    psi_n: tuple[int, ...] | None = None
    base_face: int | None = None

    @property
    def face_count(self) -> int:
        return len(self.faces)

    @property
    def degrees(self) -> tuple[int, ...] | None:
        # Relative degrees; the absolute preimage count adds omega_1.
        return self.psi_n

    def face_of_side(self, arc: int, side: int) -> int:
        return self.left_face[arc] if side == LEFT else self.right_face[arc]

    def other_side(self, arc: int, face: int) -> int:
        if self.left_face[arc] == face:
            return self.right_face[arc]
        return self.left_face[arc]


@dataclass(frozen=True)
class SmoothedDiagram:
    circles: tuple[tuple[int, ...], ...]
    signs: tuple[int, ...]

    @property
    def tau(self) -> int:
        return sum(self.signs)


# ---------------------------------------------------------------- parsing

def _as_int(value, what):
    if isinstance(value, bool) or not isinstance(value, int):
        if isinstance(value, str) and value.strip().lstrip("-").isdigit():
            return int(value)
        raise MalformedInput(f"{what} must be an integer, got {value!r}")
    return value


def curve_from_document(doc: Mapping) -> SphericalCurve:
    """Validate a gauss-chirality-v1 mapping and build the curve."""
    if not isinstance(doc, Mapping):
        raise MalformedInput("document must be a key/value mapping")
    if doc.get("format") != FORMAT:
        raise MalformedInput(f"format must be {FORMAT!r}, got {doc.get('format')!r}")
    for key in ("crossings", "traversal", "chirality"):
        if key not in doc:
            raise MalformedInput(f"missing field {key!r}")
    n = _as_int(doc["crossings"], "crossings")
    if n < 0:
        raise MalformedInput("crossings must be non-negative")

    raw = doc["traversal"]
    if not isinstance(raw, Sequence) or isinstance(raw, str):
        raise MalformedInput("traversal must be a list of [crossing, ordinal] pairs")
    if len(raw) != 2 * n:
        raise MalformedInput(f"traversal has {len(raw)} visits, expected {2 * n}")
    traversal = []
    for item in raw:
        if not isinstance(item, Sequence) or isinstance(item, str) or len(item) != 2:
            raise MalformedInput(f"bad visit record {item!r}")
        c, o = _as_int(item[0], "crossing id"), _as_int(item[1], "visit ordinal")
        if not 1 <= c <= n:
            raise MalformedInput(f"crossing id {c} outside 1..{n}")
        if o not in (1, 2):
            raise MalformedInput(f"visit ordinal must be 1 or 2, got {o}")
        traversal.append((c, o))

    chir = doc["chirality"]
    if not isinstance(chir, Mapping):
        raise MalformedInput("chirality must map crossing ids to 'L' or 'R'")
    bits = {}
    for key, value in chir.items():
        c = _as_int(key, "chirality key")
        if value not in ("L", "R"):
            raise MalformedInput(f"chirality of {c} must be 'L' or 'R', got {value!r}")
        bits[c] = value
    if set(bits) != set(range(1, n + 1)):
        raise MalformedInput("chirality must name every crossing exactly once")

    curve = SphericalCurve(n, tuple(traversal), tuple(bits[c] for c in range(1, n + 1)))
    _check_double_occurrence(curve)
    dec = trace_faces(curve)  # raises NotSpherical
    del dec
    return curve


def parse_curve(text: str) -> SphericalCurve:
    """Parse a gauss-chirality-v1 JSON document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"not a JSON document: {exc}") from None
    return curve_from_document(doc)


def make_curve(traversal, chirality) -> SphericalCurve:
    """Convenience constructor; ``chirality`` is a string like ``"RL"`` or a
    mapping.  Runs the full validation."""
    n = len(traversal) // 2
    if isinstance(chirality, str):
        chir = {str(i + 1): s for i, s in enumerate(chirality)}
    else:
        chir = {str(k): v for k, v in dict(chirality).items()}
    return curve_from_document({
        "format": FORMAT,
        "crossings": n,
        "traversal": [list(v) for v in traversal],
        "chirality": chir,
    })


def _check_double_occurrence(curve: SphericalCurve) -> None:
    seen = set()
    for visit in curve.traversal:
        if visit in seen:
            raise NotDoubleOccurrence(
                f"crossing {visit[0]} has visit ordinal {visit[1]} twice")
        seen.add(visit)
    for c in range(1, curve.crossing_count + 1):
        if (c, 1) not in seen or (c, 2) not in seen:
            raise NotDoubleOccurrence(f"crossing {c} is not visited exactly twice")


# ------------------------------------------------------- combinatorial map

def visit_index(curve: SphericalCurve) -> dict[tuple[int, int], int]:
    return {v: i for i, v in enumerate(curve.traversal)}


def rotation_system(curve: SphericalCurve) -> dict[int, tuple[tuple[int, int], ...]]:
    """Counterclockwise dart order at each crossing.

    R: (first-in, second-out, first-out, second-in)
    L: (first-in, second-in, first-out, second-out)
    """
    m = len(curve.traversal)
    where = visit_index(curve)
    rot = {}
    for c in range(1, curve.crossing_count + 1):
        v1, v2 = where[(c, 1)], where[(c, 2)]
        fi, fo = ((v1 - 1) % m, HEAD), (v1, TAIL)
        si, so = ((v2 - 1) % m, HEAD), (v2, TAIL)
        if curve.chirality_of(c) == "R":
            rot[c] = (fi, so, fo, si)
        else:
            rot[c] = (fi, si, fo, so)
    return rot


def _dart_vertex(curve: SphericalCurve, dart: tuple[int, int]) -> int:
    arc, end = dart
    m = len(curve.traversal)
    return curve.traversal[arc if end == TAIL else (arc + 1) % m][0]


def _arrival_side(dart: tuple[int, int]) -> tuple[int, int]:
    """Side whose walk ends by arriving along ``dart``."""
    arc, end = dart
    return (arc, LEFT) if end == HEAD else (arc, RIGHT)


def trace_faces(curve: SphericalCurve) -> FaceDecomposition:
    n = curve.crossing_count
    if n == 0:
        return FaceDecomposition(faces=(((0, LEFT),), ((0, RIGHT),)),
                                 left_face=(0,), right_face=(1,))
    rot = rotation_system(curve)
    cw_next = {}
    for darts in rot.values():
        for i, d in enumerate(darts):
            cw_next[d] = darts[i - 1]

    def step(side):
        arc, s = side
        arriving = (arc, HEAD) if s == LEFT else (arc, TAIL)
        out_arc, out_end = cw_next[arriving]
        return (out_arc, LEFT) if out_end == TAIL else (out_arc, RIGHT)

    m = 2 * n
    owner = {}
    faces = []
    for arc in range(m):
        for s in (LEFT, RIGHT):
            if (arc, s) in owner:
                continue
            cycle = []
            cur = (arc, s)
            while cur not in owner:
                owner[cur] = len(faces)
                cycle.append(cur)
                cur = step(cur)
            faces.append(tuple(cycle))
    if len(faces) != n + 2:
        raise NotSpherical(
            f"{len(faces)} faces for {n} crossings; a spherical curve has {n + 2}")
    left = tuple(owner[(a, LEFT)] for a in range(m))
    right = tuple(owner[(a, RIGHT)] for a in range(m))
    return FaceDecomposition(faces=tuple(faces), left_face=left, right_face=right)


def propagate_numbering(dec: FaceDecomposition, seed_face: int = 0) -> list[int]:
    """Breadth-first spread of the left = right + 1 rule from ``seed_face``
    (which gets 0)."""
    adj = [[] for _ in range(dec.face_count)]
    for arc, (lf, rf) in enumerate(zip(dec.left_face, dec.right_face)):
        adj[lf].append((rf, -1, arc))
        adj[rf].append((lf, +1, arc))
    psi = [None] * dec.face_count
    psi[seed_face] = 0
    queue = deque([seed_face])
    while queue:
        f = queue.popleft()
        for g, delta, arc in adj[f]:
            want = psi[f] + delta
            if psi[g] is None:
                psi[g] = want
                queue.append(g)
            elif psi[g] != want:
                raise InconsistentNumbering(
                    f"face {g} gets both {psi[g]} and {want} across arc {arc}")
    if any(v is None for v in psi):
        raise InconsistentNumbering("face adjacency graph is disconnected")
    return psi


def compute_numbering(dec: FaceDecomposition, base_choice: int = 0) -> FaceDecomposition:
    """Fill in psi, the normal numbering and the base face.

    ``base_choice`` picks among faces of minimal normal numbering (sorted by
    id, taken modulo their number); 0 is the default lowest-id tie-break.
    """
    psi = propagate_numbering(dec)
    low = min(psi)
    psi_n = tuple(v - low for v in psi)
    minimal = [f for f, v in enumerate(psi_n) if v == 0]
    base = minimal[base_choice % len(minimal)]
    return replace(dec, psi=tuple(psi), psi_n=psi_n, base_face=base)


def sector_faces(curve: SphericalCurve, dec: FaceDecomposition):
    """For each crossing, the faces in its four corners.

    Yields ``(crossing, [(dart_a, dart_b, face), ...])`` where the corner
    lies counterclockwise between ``dart_a`` and ``dart_b``.
    """
    for c, darts in rotation_system(curve).items():
        corners = []
        for i in range(4):
            a, b = darts[i], darts[(i + 1) % 4]
            corners.append((a, b, dec.face_of_side(*_arrival_side(b))))
        yield c, corners


class _UnionFind:
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def smooth_and_wind(curve: SphericalCurve, dec: FaceDecomposition) -> SmoothedDiagram:
    """Smooth every crossing along the orientation and sign the circles.

    A circle counts +1 when the region holding the base face lies on its
    right, -1 when on its left; tau is the sum.
    """
    if dec.base_face is None:
        raise ValueError("numbering must be computed before smoothing")
    n = curve.crossing_count
    if n == 0:
        sign = 1 if dec.right_face[0] == dec.base_face else -1
        return SmoothedDiagram(circles=((0,),), signs=(sign,))

    m = 2 * n
    where = visit_index(curve)
    partner = [where[(c, 3 - o)] for c, o in curve.traversal]
    circles = []
    seen = set()
    for start in range(m):
        if start in seen:
            continue
        circle = []
        arc = start
        while arc not in seen:
            seen.add(arc)
            circle.append(arc)
            arc = partner[(arc + 1) % m]
        circles.append(tuple(circle))

    # Corners not cut off by a smoothed strand merge into one region.
    uf = _UnionFind(dec.face_count)
    for c, corners in sector_faces(curve, dec):
        v1, v2 = where[(c, 1)], where[(c, 2)]
        joined = {frozenset({((v1 - 1) % m, HEAD), (v2, TAIL)}),
                  frozenset({((v2 - 1) % m, HEAD), (v1, TAIL)})}
        open_faces = [f for a, b, f in corners if frozenset({a, b}) not in joined]
        if len(open_faces) != 2:
            raise AssertionError(f"crossing {c}: expected two open corners")
        uf.union(*open_faces)
    regions = sorted({uf.find(f) for f in range(dec.face_count)})
    if len(regions) != len(circles) + 1:
        raise AssertionError(
            f"{len(regions)} smoothed regions for {len(circles)} circles")

    sides = []
    adj = {r: [] for r in regions}
    for circle in circles:
        lf = {uf.find(dec.left_face[a]) for a in circle}
        rf = {uf.find(dec.right_face[a]) for a in circle}
        if len(lf) != 1 or len(rf) != 1:
            raise AssertionError("smoothed circle does not separate two regions")
        lr, rr = lf.pop(), rf.pop()
        sides.append((lr, rr))
        adj[lr].append(rr)
        adj[rr].append(lr)
    root = uf.find(dec.base_face)
    dist = {root: 0}
    queue = deque([root])
    while queue:
        r = queue.popleft()
        for s in adj[r]:
            if s not in dist:
                dist[s] = dist[r] + 1
                queue.append(s)
    signs = tuple(1 if dist[rr] < dist[lr] else -1 for lr, rr in sides)
    return SmoothedDiagram(circles=tuple(circles), signs=signs)


@dataclass(frozen=True)
class CurveAnalysis:
    curve: SphericalCurve
    faces: FaceDecomposition
    smoothing: SmoothedDiagram = field(repr=False)

    @property
    def tau(self) -> int:
        return self.smoothing.tau


def analyze(curve: SphericalCurve, base_choice: int = 0) -> CurveAnalysis:
    dec = compute_numbering(trace_faces(curve), base_choice=base_choice)
    return CurveAnalysis(curve, dec, smooth_and_wind(curve, dec))
