import random
from collections import Counter

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from blankcalc.curve_map import analyze, make_curve
from blankcalc.errors import MalformedInput
from blankcalc.ray_words import (
    CyclicWord, build_rays, canonical_rotation, curve_word, extract_word, is_reduced,
    parse_word, reduce_word,
)
from conftest import curves, word, words
from oracles import least_rotation, normal_forms, ray_map_euler, words_up_to_symmetry

CHOICES = [dict(), dict(own_ray_last=True), dict(reverse_scan=True),
           dict(own_ray_last=True, reverse_scan=True)]


def dual_graph(dec):
    g = nx.MultiGraph()
    g.add_nodes_from(range(dec.face_count))
    for a in range(len(dec.left_face)):
        g.add_edge(dec.left_face[a], dec.right_face[a])
    return g


# ------------------------------------------------------------------ words

def test_parse_word():
    assert parse_word("2 -3 -1 -4 2 1 4 3").letters == (2, -3, -1, -4, 2, 1, 4, 3)
    assert parse_word("1, -2").letters == (1, -2)
    assert parse_word("").letters == ()
    for bad in ("1 0", "1 x", "1.5"):
        with pytest.raises(MalformedInput):
            parse_word(bad)


def test_word_rendering():
    w = word("2 -3")
    assert str(w) == "2 -3"
    assert w.pretty() == "a2 a3^-1"
    assert CyclicWord(()).pretty() == "(empty)"


@pytest.mark.parametrize("text, expected", [
    ("1 -1", ""),
    ("-1 2 3 1", "2 3"),
    ("2 1 -1 2 -3 3", "2 2"),
    ("1 2 -2 -1", ""),
    ("1 1", "1 1"),
    ("3", "3"),
])
def test_reduce_examples(text, expected):
    assert str(reduce_word(word(text))) == expected


@given(words(max_len=12))
def test_reduce_is_idempotent_and_reduced(w):
    once = reduce_word(w)
    assert once.reduced
    assert is_reduced(once.letters)
    assert reduce_word(once) == once
    # the signed letter count is a cyclic invariant
    tally = Counter()
    for x in w.letters:
        tally[abs(x)] += 1 if x > 0 else -1
    after = Counter()
    for x in once.letters:
        after[abs(x)] += 1 if x > 0 else -1
    assert +tally == +after and -tally == -after


@given(words(max_len=10, indices=4), st.randoms(use_true_random=False))
def test_random_deletion_order_agrees(w, rng):
    letters = list(w.letters)
    while True:
        m = len(letters)
        spots = [i for i in range(m) if m >= 2 and letters[i] == -letters[(i + 1) % m]]
        if not spots:
            break
        i = rng.choice(spots)
        j = (i + 1) % m
        letters = [letters[t] for t in range(m) if t not in (i, j)]
    assert least_rotation(letters) == least_rotation(reduce_word(w).letters)


def test_exhaustive_confluence_four_indices_to_length_eight():
    memo = {}
    for length in range(9):
        prefix = (1, -1) if length >= 2 else ()
        for w in words_up_to_symmetry(length, 4, prefix):
            forms = normal_forms(w, memo)
            assert len(forms) == 1, w
            assert forms == {least_rotation(reduce_word(w).letters)}


@given(words(max_len=10))
def test_canonical_rotation_is_a_fixed_point(w):
    canon = canonical_rotation(w.letters)
    m = len(w)
    for r in range(m):
        assert canonical_rotation(w.letters[r:] + w.letters[:r]) == canon
    assert canonical_rotation(canon) == canon
    assert w.same_cyclic_word(CyclicWord(canon))


def test_canonical_order_puts_positive_first():
    assert canonical_rotation((-1, 2, 1, 3)) == (1, 3, -1, 2)


# ------------------------------------------------------------------ rays

def test_circle_rays(circle):
    info = analyze(circle)
    rays = build_rays(info.faces)
    assert rays.ray_count == 1
    assert rays.paths[1] == (0,)
    assert str(extract_word(circle, info.faces, rays)) == "1"


def test_figure_eight_rays(figure_eight):
    info = analyze(figure_eight)
    rays = build_rays(info.faces)
    assert rays.ray_count == 2
    deep = max(range(1, 3), key=lambda r: len(rays.paths[r]))
    shallow = 3 - deep
    assert len(rays.paths[deep]) == 2 and len(rays.paths[shallow]) == 1
    # the deep ray leaves through the shallow face
    assert rays.parent[rays.face_of_ray[deep]] == rays.face_of_ray[shallow]
    raw = extract_word(figure_eight, info.faces, rays)
    assert len(raw) == 3 and {abs(x) for x in raw.letters} == {1, 2}
    # a square of the deep letter next to the shallow one
    assert Counter(reduce_word(raw).letters) == {deep: 2, shallow: 1}


def test_four_kinks_word(four_kinks):
    assert str(curve_word(four_kinks, analyze(four_kinks).faces)) == "1 -3 -4 -5 2 3 4 5 2"


@given(curves(max_n=7), st.sampled_from(CHOICES))
def test_ray_system_properties(curve, choice):
    info = analyze(curve)
    dec = info.faces
    rays = build_rays(dec, **choice)
    dist = nx.single_source_shortest_path_length(dual_graph(dec), dec.base_face)
    assert rays.ray_count == dec.face_count - 1
    for r in range(1, rays.ray_count + 1):
        face = rays.face_of_ray[r]
        assert len(rays.paths[r]) == dist[face] == rays.depth[face]
        # every arc of the path separates consecutive faces of the tree walk
        f = face
        for arc in rays.paths[r]:
            assert f in (dec.left_face[arc], dec.right_face[arc])
            f = dec.other_side(arc, f)
        assert f == dec.base_face
    for load in rays.arc_loads:
        assert len({x > 0 for x in load}) <= 1  # one direction per arc
    raw = extract_word(curve, dec, rays, canonical=False)
    per_ray = Counter(abs(x) for x in raw.letters)
    assert all(per_ray[r] == len(rays.paths[r]) for r in range(1, rays.ray_count + 1))


@given(curves(max_n=7), st.sampled_from(CHOICES))
def test_rays_do_not_cross(curve, choice):
    info = analyze(curve)
    rays = build_rays(info.faces, **choice)
    assert ray_map_euler(curve, info.faces, rays) == 2


def test_crossing_rays_are_detected(four_kinks):
    # swapping two letters inside a bundle makes the rays cross
    info = analyze(four_kinks)
    rays = build_rays(info.faces)
    arc = next(a for a, load in enumerate(rays.arc_loads) if len(load) >= 2)
    load = list(rays.arc_loads[arc])
    load[0], load[1] = load[1], load[0]
    loads = list(rays.arc_loads)
    loads[arc] = tuple(load)
    broken = type(rays)(**{**rays.__dict__, "arc_loads": tuple(loads)})
    assert ray_map_euler(four_kinks, info.faces, broken) != 2


def test_word_sign_follows_crossing_direction(circle):
    # the ray leaves the degree-one face, on the curve's left
    info = analyze(circle)
    rays = build_rays(info.faces)
    assert info.faces.left_face[0] == rays.face_of_ray[1]
    assert rays.arc_loads[0] == (1,)


def test_random_curves_are_reproducible():
    rng = random.Random(0)
    from blankcalc.census import random_curve
    seed = rng.getrandbits(32)
    assert random_curve(5, seed) == random_curve(5, seed)
