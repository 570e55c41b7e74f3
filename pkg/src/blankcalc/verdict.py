"""
Extendability verdicts for curves and bare words.

For a curve the winding test comes first: with the base point in a face of
minimal relative degree, an extension forces ``tau = 1 - 2*omega_1`` where
``omega_1`` is the number of disc sheets over the base face.  That number
is read off the winding (``omega_1 = (1 - tau) / 2``) and must be a
non-negative integer; the word calculus then has to agree with it, every
grouping carrying exactly ``omega_1`` negative groups.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field

from .curve_map import CurveAnalysis, SphericalCurve, analyze
from .errors import InternalInconsistency, SearchBudgetExceeded
from .ray_words import CyclicWord, build_rays, extract_word, reduce_word
from .word_calculus import (
    DEFAULT_STATE_CAP,
    CancellationState,
    Grouping,
    search_word,
)


class Decision(enum.Enum):
    EXTENDABLE = "Extendable"
    NOT_EXTENDABLE = "NotExtendable"
    WORD_ONLY_GROUPABLE = "WordOnlyGroupable"
    WORD_ONLY_UNGROUPABLE = "WordOnlyUngroupable"
    INCONCLUSIVE = "Inconclusive"


class Obstruction(enum.Enum):
    WINDING_MISMATCH = "WindingMismatch"
    SQUARE_REMAINDER = "SquareRemainder"
    NEGATIVE_REMAINDER = "NegativeRemainder"
    NO_GROUPING = "NoGrouping"
    NONE = "None"


def necessary_condition(tau: int, omega1: int) -> bool:
    return omega1 >= 0 and tau == 1 - 2 * omega1


def base_degree(tau: int) -> int | None:
    """Sheets over the base face implied by the winding, or None when no
    non-negative integer fits."""
    if tau % 2 == 0 or tau > 1:
        return None
    return (1 - tau) // 2


def longest_positive_run(letters) -> int:
    """Longest cyclic run of one repeated positive letter."""
    m = len(letters)
    if m == 0:
        return 0
    if all(x == letters[0] for x in letters):
        return m if letters[0] > 0 else 0
    # start right after a change so runs do not straddle the start
    start = next(i for i in range(m) if letters[i] != letters[i - 1])
    best = run = 0
    prev = None
    for k in range(m):
        x = letters[(start + k) % m]
        run = run + 1 if x == prev else 1
        prev = x
        if x > 0:
            best = max(best, run)
    return best


def has_square(letters) -> bool:
    m = len(letters)
    return m >= 2 and any(letters[i] > 0 and letters[i] == letters[(i + 1) % m] for i in range(m))


def classify_remainder(letters) -> Obstruction:
    if has_square(letters):
        return Obstruction.SQUARE_REMAINDER
    if any(x < 0 for x in letters):
        return Obstruction.NEGATIVE_REMAINDER
    return Obstruction.NO_GROUPING


@dataclass(frozen=True)
class Diagnosis:
    obstruction: Obstruction
    tally: dict
    remainders: tuple[CancellationState, ...] = field(repr=False)


def _diagnose(remainders, curve_mode: bool) -> Diagnosis:
    tally = Counter()
    for st in remainders:
        if curve_mode and longest_positive_run(st.letters) >= 3:
            raise InternalInconsistency(
                f"remainder {st.as_word()} of a curve word has a cube or higher power")
        tally[classify_remainder(st.letters).value] += 1
    first = classify_remainder(remainders[0].letters) if remainders else Obstruction.NO_GROUPING
    return Diagnosis(first, dict(sorted(tally.items())), tuple(remainders))


def diagnose_remainder(word: CyclicWord, curve_mode: bool = False,
                       state_cap: int = DEFAULT_STATE_CAP) -> Diagnosis:
    """Classify the maximal cancellations of an ungroupable word.

    The first remainder (by surviving positions) gives the obstruction;
    ``tally`` counts every remainder class.
    """
    return _diagnose(search_word(reduce_word(word), state_cap).remainders, curve_mode)


@dataclass(frozen=True)
class Verdict:
    decision: Decision
    extension_count: int
    obstruction: Obstruction
    groupings: tuple[Grouping, ...]
    word: CyclicWord
    tau: int | None = None
    omega1: int | None = None
    diagnosis: Diagnosis | None = field(default=None, repr=False)
    remainders: tuple[CancellationState, ...] = field(default=(), repr=False)
    analysis: CurveAnalysis | None = field(default=None, repr=False)
    unreduced_word: CyclicWord | None = field(default=None, repr=False)

    @property
    def groupable(self) -> bool:
        return bool(self.groupings)


def decide_word(word: CyclicWord, state_cap: int = DEFAULT_STATE_CAP) -> Verdict:
    reduced = reduce_word(word)
    try:
        result = search_word(reduced, state_cap)
    except SearchBudgetExceeded:
        return Verdict(Decision.INCONCLUSIVE, 0, Obstruction.NO_GROUPING, (), reduced)
    if result.groupings:
        return Verdict(Decision.WORD_ONLY_GROUPABLE, len(result.groupings), Obstruction.NONE,
                       result.groupings, reduced, remainders=result.remainders)
    diagnosis = _diagnose(result.remainders, curve_mode=False)
    return Verdict(Decision.WORD_ONLY_UNGROUPABLE, 0, diagnosis.obstruction, (), reduced,
                   diagnosis=diagnosis, remainders=result.remainders)


def decide(curve: SphericalCurve, state_cap: int = DEFAULT_STATE_CAP, *,
           base_choice: int = 0, own_ray_last: bool = False,
           reverse_scan: bool = False, strict: bool = True) -> Verdict:
    """Full pipeline: faces, numbering, winding, rays, word, groupings.

    The keyword choices select alternative (equally valid) base faces and
    ray systems; the defaults are the canonical ones.  With ``strict`` a
    curve word that breaks the cube-free remainder property or the
    negative-group count raises InternalInconsistency; without it the
    verdict is returned as computed and the caller checks those properties.
    """
    info = analyze(curve, base_choice=base_choice)
    tau = info.tau
    omega1 = base_degree(tau)
    rays = build_rays(info.faces, own_ray_last=own_ray_last, reverse_scan=reverse_scan)
    raw = extract_word(curve, info.faces, rays)
    word = reduce_word(raw).canonical()
    common = dict(word=word, tau=tau, omega1=omega1, analysis=info, unreduced_word=raw)
    try:
        result = search_word(word, state_cap)
    except SearchBudgetExceeded:
        return Verdict(Decision.INCONCLUSIVE, 0, Obstruction.NO_GROUPING, (), **common)

    diagnosis = _diagnose(result.remainders, curve_mode=strict)
    if omega1 is None:
        return Verdict(Decision.NOT_EXTENDABLE, 0, Obstruction.WINDING_MISMATCH,
                       result.groupings, diagnosis=diagnosis,
                       remainders=result.remainders, **common)
    if not result.groupings:
        return Verdict(Decision.NOT_EXTENDABLE, 0, diagnosis.obstruction, (),
                       diagnosis=diagnosis, remainders=result.remainders, **common)
    for g in result.groupings:
        if strict and g.negative_group_count != omega1:
            raise InternalInconsistency(
                f"grouping {g.describe()} has {g.negative_group_count} negative groups, "
                f"expected omega_1 = {omega1}")
    return Verdict(Decision.EXTENDABLE, len(result.groupings), Obstruction.NONE,
                   result.groupings, remainders=result.remainders, **common)
