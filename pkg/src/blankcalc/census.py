"""
Random curves, a brute-force grouping oracle and property campaigns.

A campaign draws random spherical curves with a fixed number of crossings,
runs the full decision pipeline on each and re-checks the structural
properties the rest of the package relies on.  Everything is driven by one
integer seed, so a report can be reproduced byte for byte.
"""
from __future__ import annotations

import csv
import io
import json
import random
from collections import Counter
from dataclasses import dataclass, field

from .curve_map import FORMAT, CurveAnalysis, SphericalCurve, analyze, curve_from_document, trace_faces
from .errors import CensusViolation, GenerationExhausted, NotSpherical, OracleBudgetExceeded
from .ray_words import CyclicWord, build_rays, extract_word, reduce_word
from .verdict import Decision, Verdict, base_degree, decide, longest_positive_run, necessary_condition
from .word_calculus import DEFAULT_STATE_CAP, search_word

CHECKS = (
    "euler",          # face count n + 2
    "numbering",      # psi(left) = psi(right) + 1, min psi_n = 0
    "ray_depth",      # a ray of depth d contributes d letters
    "cube_free",      # no a_j^n (n >= 3) in a maximal remainder
    "negative_groups",  # every grouping of an extendable curve has omega_1 groups
    "odd_tau",        # extendable curves have odd winding
    "verdict_rule",   # Extendable iff winding test and groupings
    "oracle",         # memoized search agrees with the naive one
)


@dataclass(frozen=True)
class CensusConfig:
    crossings: int
    samples: int
    seed: int
    state_cap: int = DEFAULT_STATE_CAP
    vary_choices: bool = False
    max_rejections: int = 200_000
    oracle_max_length: int = 12
    fail_fast: bool = True

    def __post_init__(self):
        if self.crossings < 0:
            raise ValueError("crossings must be non-negative")
        if self.samples < 1:
            raise ValueError("samples must be at least 1")


# ------------------------------------------------------------ generation

def random_curve(n: int, seed: int, max_rejections: int = 200_000) -> SphericalCurve:
    """Rejection sampling over double-occurrence codes and chirality bits.

    A draw is kept when its map has n + 2 faces, i.e. it lives on the sphere.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    rng = random.Random(seed)
    for _ in range(max_rejections):
        ids = [c for c in range(1, n + 1) for _ in (0, 1)]
        rng.shuffle(ids)
        seen = set()
        traversal = []
        for c in ids:
            traversal.append([c, 2 if c in seen else 1])
            seen.add(c)
        chirality = {str(c): rng.choice("LR") for c in range(1, n + 1)}
        doc = {"format": FORMAT, "crossings": n, "traversal": traversal, "chirality": chirality}
        try:
            return curve_from_document(doc)
        except NotSpherical:
            continue
    raise GenerationExhausted(f"no spherical {n}-crossing curve in {max_rejections} draws")


# ---------------------------------------------------------------- oracle

def _naive_positive(letters) -> bool:
    if any(x < 0 for x in letters):
        return False
    return len(letters) < 2 or all(letters[i - 1] != letters[i] for i in range(len(letters)))


def naive_groupings(word: CyclicWord, max_length: int = 14, budget: int = 5_000_000) -> set:
    """Every grouping by plain recursion over all cancellation orders.

    Returns chord sets as frozensets of ``(p, q, kind)`` with 1-based
    positions and kind "P" or "NG".  Deliberately shares no code with the
    memoized search.
    """
    letters = tuple(word.letters)
    if len(letters) > max_length:
        raise OracleBudgetExceeded(f"word of length {len(letters)} exceeds the oracle limit {max_length}")
    found = set()
    calls = 0

    def chord(i, j, kind):
        p, q = sorted((i + 1, j + 1))
        return (p, q, kind)

    def walk(alive, chords):
        nonlocal calls
        calls += 1
        if calls > budget:
            raise OracleBudgetExceeded(f"more than {budget} recursive calls")
        current = [letters[i] for i in alive]
        if _naive_positive(current):
            found.add(frozenset(chords))
            return
        k = len(alive)
        for s in range(k):
            for length in range(1, k):
                t = (s + length) % k
                a, b = current[s], current[t]
                inner = [current[(s + d) % k] for d in range(1, length)]
                if a == -b and all(x > 0 for x in inner) and \
                        all(inner[d] != inner[d + 1] for d in range(len(inner) - 1)):
                    gone = {alive[(s + d) % k] for d in range(length + 1)}
                    walk([i for i in alive if i not in gone],
                         chords | {chord(alive[s], alive[t], "P")})
                if length == 1 and a < 0 and b < 0 and a != b:
                    walk([i for i in alive if i not in (alive[s], alive[t])],
                         chords | {chord(alive[s], alive[t], "NG")})

    walk(list(range(len(letters))), frozenset())
    return found


def grouping_keys(groupings) -> set:
    """Chord sets of Grouping objects in the oracle's format."""
    return {frozenset((c.p, c.q, c.kind.value) for c in g.chords) for g in groupings}


# -------------------------------------------------------------- campaign

@dataclass(frozen=True)
class SampleRecord:
    index: int
    seed: int
    crossings: int
    decision: str
    tau: int
    omega1: int | None
    count: int
    obstruction: str
    word: str
    violations: tuple[str, ...] = ()
    document: str = field(default="", repr=False)


@dataclass(frozen=True)
class Finding:
    index: int
    variant: str
    base: str
    other: str


@dataclass
class CensusReport:
    config: CensusConfig
    records: list[SampleRecord]
    findings: list[Finding]
    violation_counts: Counter
    word_changes: Counter

    @property
    def violation_total(self) -> int:
        return sum(self.violation_counts.values())

    def summary(self) -> dict:
        decisions = Counter(r.decision for r in self.records)
        obstructions = Counter(r.obstruction for r in self.records)
        return {
            "samples": len(self.records),
            "decisions": dict(sorted(decisions.items())),
            "obstructions": dict(sorted(obstructions.items())),
            "violations": {name: self.violation_counts.get(name, 0) for name in CHECKS},
            "choice_findings": len(self.findings),
            "word_changes": dict(sorted(self.word_changes.items())),
        }

    def to_text(self) -> str:
        cfg = self.config
        lines = [f"census crossings={cfg.crossings} samples={cfg.samples} seed={cfg.seed} "
                 f"state_cap={cfg.state_cap} vary_choices={str(cfg.vary_choices).lower()}"]
        for r in self.records:
            lines.append(
                f"sample={r.index} seed={r.seed} n={r.crossings} decision={r.decision} "
                f"tau={r.tau} omega1={'-' if r.omega1 is None else r.omega1} count={r.count} "
                f"obstruction={r.obstruction} violations={','.join(r.violations) or '-'}")
        for f in self.findings:
            lines.append(f"finding sample={f.index} variant={f.variant} base={f.base} other={f.other}")
        lines.append("summary")
        for key, value in self.summary().items():
            lines.append(f"  {key}: {json.dumps(value, sort_keys=True)}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["index", "seed", "crossings", "decision", "tau", "omega1", "count",
                         "obstruction", "violations", "word", "document"])
        for r in self.records:
            writer.writerow([r.index, r.seed, r.crossings, r.decision, r.tau,
                             "" if r.omega1 is None else r.omega1, r.count, r.obstruction,
                             ";".join(r.violations), r.word, r.document])
        return out.getvalue()


def sample_seeds(seed: int, samples: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(64) for _ in range(samples)]


def _numbering_ok(info: CurveAnalysis) -> bool:
    dec = info.faces
    psi, psi_n = dec.psi, dec.psi_n
    if any(psi[dec.left_face[a]] != psi[dec.right_face[a]] + 1 for a in range(len(dec.left_face))):
        return False
    return min(psi_n) == 0 and psi_n[dec.base_face] == 0 and \
        all(psi_n[f] == psi[f] - min(psi) for f in range(dec.face_count))


def check_curve(curve: SphericalCurve, state_cap: int = DEFAULT_STATE_CAP,
                oracle_max_length: int = 12) -> tuple[Verdict, list[str]]:
    """Run the pipeline and return the verdict with the failed checks."""
    failed = []
    n = curve.crossing_count
    if trace_faces(curve).face_count != n + 2:
        failed.append("euler")
    verdict = decide(curve, state_cap, strict=False)
    info = verdict.analysis
    if not _numbering_ok(info):
        failed.append("numbering")
    rays = build_rays(info.faces)
    raw = extract_word(curve, info.faces, rays, canonical=False)
    per_ray = Counter(abs(x) for x in raw.letters)
    if any(per_ray.get(r, 0) != len(rays.paths[r]) for r in range(1, rays.ray_count + 1)):
        failed.append("ray_depth")
    if verdict.decision is Decision.INCONCLUSIVE:
        return verdict, failed
    if any(longest_positive_run(st.letters) >= 3 for st in verdict.remainders):
        failed.append("cube_free")
    omega1 = base_degree(verdict.tau)
    if omega1 is not None and any(g.negative_group_count != omega1 for g in verdict.groupings):
        failed.append("negative_groups")
    extendable = verdict.decision is Decision.EXTENDABLE
    if extendable and verdict.tau % 2 == 0:
        failed.append("odd_tau")
    expected = omega1 is not None and necessary_condition(verdict.tau, omega1) and bool(verdict.groupings)
    if extendable != expected:
        failed.append("verdict_rule")
    if len(verdict.word) <= oracle_max_length:
        try:
            if naive_groupings(verdict.word, max_length=oracle_max_length) != grouping_keys(verdict.groupings):
                failed.append("oracle")
        except OracleBudgetExceeded:
            pass
    return verdict, failed


VARIANTS = {
    "base_choice=1": dict(base_choice=1),
    "own_ray_last": dict(own_ray_last=True),
    "reverse_scan": dict(reverse_scan=True),
}


def _word_shape(word: CyclicWord) -> tuple:
    """Word up to rotation and ray relabelling."""
    letters = word.letters
    best = ()
    for r in range(len(letters)):
        rotated = letters[r:] + letters[:r]
        names = {}
        shape = tuple(names.setdefault(abs(x), len(names) + 1) * (1 if x > 0 else -1) for x in rotated)
        if not best or shape < best:
            best = shape
    return best


def run_campaign(cfg: CensusConfig) -> CensusReport:
    """Sample, decide and check; see ``CHECKS`` for what is verified.

    With ``fail_fast`` the first failed check raises CensusViolation carrying
    the curve document; otherwise failures are tallied in the report.
    """
    records, findings = [], []
    violations, word_changes = Counter(), Counter()
    for index, seed in enumerate(sample_seeds(cfg.seed, cfg.samples)):
        curve = random_curve(cfg.crossings, seed, cfg.max_rejections)
        verdict, failed = check_curve(curve, cfg.state_cap, cfg.oracle_max_length)
        document = curve.dumps()
        if failed and cfg.fail_fast:
            raise CensusViolation(f"sample {index} (seed {seed}) failed {', '.join(failed)}", document)
        violations.update(failed)
        records.append(SampleRecord(
            index, seed, cfg.crossings, verdict.decision.value, verdict.tau, verdict.omega1,
            verdict.extension_count, verdict.obstruction.value, str(verdict.word),
            tuple(failed), document))
        if cfg.vary_choices:
            base_line = f"{verdict.decision.value}/{verdict.extension_count}"
            for name, choice in VARIANTS.items():
                other = decide(curve, cfg.state_cap, strict=False, **choice)
                if _word_shape(other.word) != _word_shape(verdict.word):
                    word_changes[name] += 1
                other_line = f"{other.decision.value}/{other.extension_count}"
                if other_line != base_line:
                    findings.append(Finding(index, name, base_line, other_line))
    return CensusReport(cfg, records, findings, violations, word_changes)


__all__ = [
    "CHECKS", "CensusConfig", "CensusReport", "Finding", "SampleRecord", "check_curve",
    "grouping_keys", "naive_groupings", "random_curve", "run_campaign", "sample_seeds",
]
