"""Extending immersed curves on the sphere to immersed discs.

The pipeline reads a signed Gauss code with chirality bits, traces faces,
numbers them, smooths the curve for its winding number, builds a ray
system, reads off the cyclic word and searches it for groupings.
"""
from .curve_map import (
    FaceDecomposition,
    SmoothedDiagram,
    SphericalCurve,
    analyze,
    compute_numbering,
    make_curve,
    parse_curve,
    smooth_and_wind,
    trace_faces,
)
from .ray_words import CyclicWord, build_rays, extract_word, parse_word, reduce_word
from .verdict import Decision, Obstruction, Verdict, decide, decide_word, diagnose_remainder, necessary_condition
from .word_calculus import (
    Chord,
    ChordKind,
    Grouping,
    WeightedTree,
    cancel,
    enumerate_groupings,
    find_cancellable,
    grouping_to_tree,
    groupings_equivalent,
    is_positive,
)

__all__ = [
    "Chord", "ChordKind", "CyclicWord", "Decision", "FaceDecomposition", "Grouping",
    "Obstruction", "SmoothedDiagram", "SphericalCurve", "Verdict", "WeightedTree", "analyze",
    "build_rays", "cancel", "compute_numbering", "decide", "decide_word", "diagnose_remainder",
    "enumerate_groupings", "extract_word", "find_cancellable", "grouping_to_tree",
    "groupings_equivalent", "is_positive", "make_curve", "necessary_condition", "parse_curve",
    "parse_word", "reduce_word", "smooth_and_wind", "trace_faces",
]
