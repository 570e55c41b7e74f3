"""
Command-line front end.

Exit status: 0 on success (any verdict counts as success), 1 on bad input,
2 when the search budget runs out, 3 when a consistency check fails.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .census import CensusConfig, run_campaign
from .curve_map import analyze, parse_curve
from .errors import (
    BlankCalcError,
    CensusViolation,
    InternalInconsistency,
    MalformedInput,
    SearchBudgetExceeded,
)
from .ray_words import CyclicWord, build_rays, extract_word, parse_word, reduce_word
from .verdict import Decision, Verdict, base_degree, decide, decide_word
from .word_calculus import DEFAULT_STATE_CAP, Grouping, search_word

EXIT_OK, EXIT_INPUT, EXIT_INCONCLUSIVE, EXIT_INCONSISTENT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        return Path(source).read_text()
    except OSError as exc:
        raise MalformedInput(f"cannot read {source}: {exc.strerror}") from None


class _Input:
    """Either a curve (file) or a bare word (``--word``)."""

    def __init__(self, args):
        if (args.input is None) == (args.word is None):
            raise MalformedInput("give exactly one of an input file or --word")
        self.curve = None
        self.word = None
        if args.word is not None:
            text = sys.stdin.read() if args.word == "-" else args.word
            self.word = parse_word(text)
        else:
            self.curve = parse_curve(_read(args.input))

    def reduced_word(self) -> CyclicWord:
        if self.word is not None:
            return reduce_word(self.word)
        info = analyze(self.curve)
        raw = extract_word(self.curve, info.faces, build_rays(info.faces))
        return reduce_word(raw).canonical()


def _grouping_doc(g: Grouping) -> dict:
    tree = g.tree()
    return {
        "chords": [[c.p, c.q, c.kind.value] for c in g.chords],
        "residual": " ".join(str(x) for x in g.residual),
        "negative_groups": g.negative_group_count,
        "tree": {"vertices": list(tree.vertices), "edges": [list(e) for e in tree.edges]},
    }


def _grouping_text(i: int, g: Grouping) -> list[str]:
    tree = g.tree()
    edges = ", ".join(f"{a}-{b} [{label}]" for a, b, label in tree.edges) or "(none)"
    return [f"grouping {i}: {g.describe()}", f"  tree: {len(tree.vertices)} vertices; edges {edges}"]


def _dot(groupings) -> str:
    return "\n".join(g.tree().to_dot(f"grouping{i}") for i, g in enumerate(groupings, 1)) + "\n"


def _verdict_doc(v: Verdict) -> dict:
    doc = {
        "decision": v.decision.value,
        "tau": v.tau,
        "omega1": v.omega1,
        "extension_count": v.extension_count,
        "obstruction": v.obstruction.value,
        "word": str(v.word),
        "groupings": [_grouping_doc(g) for g in v.groupings],
    }
    if v.diagnosis is not None:
        doc["remainder_tally"] = v.diagnosis.tally
    return doc


def _emit(fmt: str, structured: dict, text_lines: list[str], dot: str | None = None):
    if fmt == "structured":
        print(json.dumps(structured, indent=2, sort_keys=True))
    elif fmt == "dot":
        if dot is None:
            raise MalformedInput("this subcommand has no DOT output")
        sys.stdout.write(dot)
    else:
        print("\n".join(text_lines))


# ------------------------------------------------------------ subcommands

def cmd_analyze(args) -> int:
    src = _Input(args)
    if src.curve is None:
        raise MalformedInput("analyze needs a curve file, not a word")
    info = analyze(src.curve)
    dec = info.faces
    faces = [[[arc, "L" if side == 0 else "R"] for arc, side in face] for face in dec.faces]
    circles = [list(c) for c in info.smoothing.circles]
    doc = {
        "crossings": src.curve.crossing_count,
        "faces": faces,
        "psi_n": list(dec.psi_n),
        "base_face": dec.base_face,
        "tau": info.tau,
        "omega1": base_degree(info.tau),
        "circles": circles,
        "circle_signs": list(info.smoothing.signs),
    }
    lines = [f"crossings: {src.curve.crossing_count}", f"faces: {dec.face_count}"]
    for f, face in enumerate(faces):
        boundary = " ".join(f"{arc}{side}" for arc, side in face)
        lines.append(f"  face {f}: degree {dec.psi_n[f]}; boundary {boundary}")
    lines += [f"base face: {dec.base_face}",
              f"smoothed circles: {len(circles)} with signs {list(info.smoothing.signs)}",
              f"tau: {info.tau}",
              f"omega1: {'-' if doc['omega1'] is None else doc['omega1']}"]
    _emit(args.format, doc, lines)
    return EXIT_OK


def cmd_word(args) -> int:
    word = _Input(args).reduced_word()
    _emit(args.format, {"word": list(word.letters), "length": len(word)}, [str(word)])
    return EXIT_OK


def cmd_groupings(args) -> int:
    word = _Input(args).reduced_word()
    groupings = search_word(word, args.state_cap).groupings
    doc = {"word": str(word), "groupings": [_grouping_doc(g) for g in groupings]}
    lines = [f"word: {word}", f"groupings: {len(groupings)}"]
    for i, g in enumerate(groupings, 1):
        lines += _grouping_text(i, g)
    _emit(args.format, doc, lines, _dot(groupings))
    return EXIT_OK


def cmd_tree(args) -> int:
    word = _Input(args).reduced_word()
    groupings = search_word(word, args.state_cap).groupings
    doc = {"word": str(word), "trees": [_grouping_doc(g)["tree"] for g in groupings]}
    lines = [f"D-tree {i}: {g.describe()}" for i, g in enumerate(groupings, 1)]
    _emit(args.format, doc, lines, _dot(groupings))
    return EXIT_OK


def cmd_decide(args) -> int:
    src = _Input(args)
    if src.curve is not None:
        verdict = decide(src.curve, args.state_cap)
    else:
        verdict = decide_word(src.word, args.state_cap)
    doc = _verdict_doc(verdict)
    lines = [f"decision: {verdict.decision.value}",
             f"word: {verdict.word}"]
    if src.curve is not None:
        lines += [f"tau: {verdict.tau}",
                  f"omega1: {'-' if verdict.omega1 is None else verdict.omega1}"]
    lines += [f"extension_count: {verdict.extension_count}",
              f"obstruction: {verdict.obstruction.value}"]
    for i, g in enumerate(verdict.groupings, 1):
        lines += _grouping_text(i, g)
    if verdict.diagnosis is not None:
        lines.append(f"remainders: {verdict.diagnosis.tally}")
    _emit(args.format, doc, lines, _dot(verdict.groupings))
    return EXIT_INCONCLUSIVE if verdict.decision is Decision.INCONCLUSIVE else EXIT_OK


def cmd_census(args) -> int:
    cfg = CensusConfig(crossings=args.crossings, samples=args.samples, seed=args.seed,
                       state_cap=args.state_cap, vary_choices=args.vary_choices,
                       fail_fast=not args.keep_going)
    report = run_campaign(cfg)
    if args.csv:
        Path(args.csv).write_text(report.to_csv())
    if args.format == "structured":
        doc = {"summary": report.summary(),
               "records": [{"index": r.index, "seed": r.seed, "decision": r.decision, "tau": r.tau,
                            "omega1": r.omega1, "count": r.count, "obstruction": r.obstruction,
                            "violations": list(r.violations)} for r in report.records],
               "findings": [vars(f) for f in report.findings]}
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        sys.stdout.write(report.to_text())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="blankcalc", description="Decide whether a spherical curve bounds an immersed disc.")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_input(name, handler, help_text, formats=("text", "structured"), default="text"):
        p = subs.add_parser(name, help=help_text)
        p.add_argument("input", nargs="?", help="gauss-chirality-v1 file, or - for stdin")
        p.add_argument("--word", help="signed-integer word instead of a curve, or - for stdin")
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--state-cap", type=int, default=DEFAULT_STATE_CAP)
        p.set_defaults(handler=handler)
        return p

    with_input("analyze", cmd_analyze, "faces, degrees and winding number")
    with_input("word", cmd_word, "reduced word")
    with_input("groupings", cmd_groupings, "all groupings with their trees", ("text", "structured", "dot"))
    with_input("decide", cmd_decide, "extendability verdict", ("text", "structured", "dot"))
    with_input("tree", cmd_tree, "weighted trees of the groupings", ("text", "structured", "dot"), "dot")

    p = subs.add_parser("census", help="random-curve property campaign")
    p.add_argument("--crossings", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--vary-choices", action="store_true")
    p.add_argument("--state-cap", type=int, default=DEFAULT_STATE_CAP)
    p.add_argument("--keep-going", action="store_true",
                   help="tally failed checks instead of stopping at the first")
    p.add_argument("--csv", help="also write the records to this CSV file")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.set_defaults(handler=cmd_census)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except SearchBudgetExceeded as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except CensusViolation as exc:
        print(f"census check failed: {exc}", file=sys.stderr)
        if exc.document:
            print(exc.document, file=sys.stderr)
        return EXIT_INCONSISTENT
    except InternalInconsistency as exc:
        print(f"consistency check failed: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (BlankCalcError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
