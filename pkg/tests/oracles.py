"""Independent checks used by the test-suite (not part of the package)."""
from blankcalc.curve_map import TAIL, HEAD, rotation_system, visit_index


class _Map:
    def __init__(self):
        self.rot = {}      # vertex -> list of darts, counterclockwise
        self.alpha = {}    # dart -> opposite dart
        self.next_id = 0

    def vertex(self, name):
        self.rot.setdefault(name, [])

    def edge(self):
        a, b = self.next_id, self.next_id + 1
        self.next_id += 2
        self.alpha[a], self.alpha[b] = b, a
        return a, b

    def faces(self):
        sigma = {}
        for darts in self.rot.values():
            for i, d in enumerate(darts):
                sigma[d] = darts[(i + 1) % len(darts)]
        seen, count = set(), 0
        for d in self.alpha:
            if d in seen:
                continue
            count += 1
            while d not in seen:
                seen.add(d)
                d = sigma[self.alpha[d]]
        return count


def ray_map_euler(curve, dec, rays):
    """Euler characteristic of the curve plus its ray system as one map.

    Rotations at crossings come from the chirality bits, at ray/curve
    intersections from the crossing direction, and at the base point from
    the bundle orders; the result is 2 exactly when no two rays cross.
    """
    mp = _Map()
    n = curve.crossing_count
    m = curve.arc_count
    # arc k: tail vertex, its ray points, head vertex, joined by segments
    arc_end_dart = {}
    point_darts = {}  # (arc, idx) -> dict(fwd, back, child, parent)
    for k in range(m):
        load = rays.arc_loads[k]
        chain = [("x", k, i) for i in range(len(load))]
        for v in chain:
            mp.vertex(v)
            point_darts[v] = {}
        prev = None  # dart at the tail end of the open segment
        if n:
            a, b = mp.edge()
            arc_end_dart[(k, TAIL)] = a
            prev = b
        for i, v in enumerate(chain):
            if prev is None:
                first = v
            else:
                point_darts[v]["back"] = prev
            a, b = mp.edge()
            point_darts[v]["fwd"] = a
            prev = b
        if n:
            arc_end_dart[(k, HEAD)] = prev
        else:
            point_darts[first]["back"] = prev
    for c, darts in rotation_system(curve).items():
        mp.vertex(("c", c))
        mp.rot[("c", c)] = [arc_end_dart[d] for d in darts]

    # ray segments
    where = {}
    for k in range(m):
        for i, letter in enumerate(rays.arc_loads[k]):
            where[(abs(letter), k)] = (("x", k, i), letter > 0)
    base_darts = {}
    for r in range(1, rays.ray_count + 1):
        mp.vertex(("p", r))
        a, b = mp.edge()
        mp.rot[("p", r)] = [a]
        prev = b
        for arc in rays.paths[r]:
            v, _ = where[(r, arc)]
            point_darts[v]["child"] = prev
            a, b = mp.edge()
            point_darts[v]["parent"] = a
            prev = b
        base_darts[r] = prev
    for v, d in point_darts.items():
        _, k, i = v
        positive = rays.arc_loads[k][i] > 0
        if positive:  # child side on the left of the arc
            mp.rot[v] = [d["fwd"], d["child"], d["back"], d["parent"]]
        else:
            mp.rot[v] = [d["fwd"], d["parent"], d["back"], d["child"]]

    # base point: bundles in face order, each left to right
    mp.vertex("x0")
    order = []
    base = rays.base_face
    for arc, _ in dec.faces[base]:
        child = dec.other_side(arc, base)
        if rays.parent_arc[child] == arc:
            load = rays.arc_loads[arc]
            lr = [abs(x) for x in (reversed(load) if load[0] > 0 else load)]
            order.extend(lr)
    mp.rot["x0"] = [base_darts[r] for r in order]

    V = len(mp.rot)
    E = len(mp.alpha) // 2
    return V - E + mp.faces()


def winding_from_faces(curve, dec):
    """Rotation number from face windings, independent of smoothing.

    With the base face sent to infinity, the rotation number is the sum of
    the bounded faces' windings minus, for each crossing, the mean winding
    of its four corners.
    """
    psi = dec.psi
    w = [psi[f] - psi[dec.base_face] for f in range(dec.face_count)]
    total4 = 4 * sum(w[f] for f in range(dec.face_count) if f != dec.base_face)
    visits = visit_index(curve)
    m = curve.arc_count
    for c in range(1, curve.crossing_count + 1):
        v = visits[(c, 1)]
        a, b = (v - 1) % m, v
        total4 -= w[dec.left_face[a]] + w[dec.right_face[a]] + w[dec.left_face[b]] + w[dec.right_face[b]]
    assert total4 % 4 == 0
    return total4 // 4


def normal_forms(letters, memo=None):
    """Every cyclic word reachable by deleting adjacent inverse pairs until
    none is left, each given as its least rotation."""
    if memo is None:
        memo = {}
    key = least_rotation(letters)
    if key in memo:
        return memo[key]
    m = len(letters)
    spots = [i for i in range(m) if m >= 2 and letters[i] == -letters[(i + 1) % m]]
    if not spots:
        result = frozenset([key])
    else:
        result = set()
        for i in spots:
            j = (i + 1) % m
            rest = tuple(letters[t] for t in range(m) if t not in (i, j))
            result |= normal_forms(rest, memo)
        result = frozenset(result)
    memo[key] = result
    return result


def least_rotation(letters):
    letters = tuple(letters)
    if not letters:
        return ()
    return min(letters[r:] + letters[:r] for r in range(len(letters)))


def words_up_to_symmetry(length, indices, prefix=()):
    """Cyclic words of a given length over ``indices`` rays, one per class
    under relabelling rays and flipping the sign of a ray.

    Words are built so that rays first appear in increasing order with a
    positive sign; ``prefix`` fixes the opening letters (it must itself
    follow that rule).
    """
    used = max((abs(x) for x in prefix), default=0)

    def grow(word, used):
        if len(word) == length:
            yield tuple(word)
            return
        for i in range(1, used + 1):
            for x in (i, -i):
                word.append(x)
                yield from grow(word, used)
                word.pop()
        if used < indices:
            word.append(used + 1)
            yield from grow(word, used + 1)
            word.pop()

    yield from grow(list(prefix), used)
