"""Command-line interface.

Exit codes: 0 on success, 1 when the queried atom is not in the answer
set (or verification fails), 2 on parse and I/O errors.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from . import engine
from .ground import GroundingError, ground_program
from .model import (
    DEFAULT_BASE_CAP,
    Program,
    AnswerSet,
    verify_answer_set,
)
from .justify import (
    EGraph,
    explanation_to_justification,
    justification_to_explanation,
)
from .nl import render_nl
from .parser import (
    LookupTable,
    ParseError,
    parse_answer_set,
    parse_atom,
    parse_lookup,
    parse_program,
)
from .serialize import emit_dot, emit_json, parse_json
from .trees import Explanation, VertexLabeledTree

EXIT_OK = 0
EXIT_NOT_IN_ANSWER_SET = 1
EXIT_INPUT_ERROR = 2


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as f:
        return f.read()


def _base_cap() -> int:
    env = os.environ.get("ASPEXPLAIN_MAX_BASE")
    return int(env) if env else DEFAULT_BASE_CAP


def _load_inputs(args) -> tuple[Program, AnswerSet]:
    P = parse_program(_read(args.program))
    X = parse_answer_set(_read(args.answerset))
    return P, X


def _format_text(e: Explanation) -> str:
    lines = [
        "  " * e.depth(v) + e.labels[v].display + "." for v in e.preorder()
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def _print_explanations(
    explanations: list[Explanation], fmt: str, table: LookupTable
) -> None:
    if fmt == "json":
        if len(explanations) == 1:
            sys.stdout.write(emit_json(explanations[0]))
        else:
            docs = [emit_json(e).rstrip("\n") for e in explanations]
            sys.stdout.write("[\n%s\n]\n" % ",\n".join(docs))
        return
    chunks = []
    for e in explanations:
        if fmt == "text":
            chunks.append(_format_text(e))
        elif fmt == "nl":
            chunks.append(render_nl(e, table))
        elif fmt == "dot":
            chunks.append(emit_dot(e))
    sys.stdout.write("\n".join(chunks))


def cmd_explain(args) -> int:
    P, X = _load_inputs(args)
    p = parse_atom(args.atom)
    if not p.is_ground:
        raise ParseError("query atom must be ground", 1, 1)
    table = (
        parse_lookup(_read(args.lookup)) if args.lookup else LookupTable()
    )
    if args.verify:
        G = ground_program(P)
        ok, reason = verify_answer_set(G, X, cap=_base_cap())
        if not ok:
            print("not an answer set: %s" % reason, file=sys.stderr)
            return EXIT_NOT_IN_ANSWER_SET
    on_demand = args.ground == "ondemand"
    if p not in X:
        print("atom not in answer set: %s" % p.text, file=sys.stderr)
        return EXIT_NOT_IN_ANSWER_SET
    if args.mode == "shortest":
        explanations = [
            engine.shortest_explanation(P, X, p, on_demand=on_demand)
        ]
    else:
        explanations = engine.k_different(P, X, p, args.k, on_demand=on_demand)
    _print_explanations(explanations, args.format, table)
    return EXIT_OK


def cmd_verify(args) -> int:
    P, X = _load_inputs(args)
    G = ground_program(P)
    ok, reason = verify_answer_set(G, X, cap=_base_cap())
    if ok:
        print("answer set verified")
        return EXIT_OK
    print("not an answer set: %s" % reason, file=sys.stderr)
    return EXIT_NOT_IN_ANSWER_SET


def cmd_convert(args) -> int:
    P, X = _load_inputs(args)
    p = parse_atom(args.atom)
    obj = parse_json(_read(args.input))
    if args.direction == "jst2exp":
        if not isinstance(obj, EGraph):
            raise ParseError("expected an e-graph input", 1, 1)
        tree = justification_to_explanation(ground_program(P), X, p, obj)
        out = tree
    else:
        if not isinstance(obj, VertexLabeledTree):
            raise ParseError("expected an explanation-tree input", 1, 1)
        out = explanation_to_justification(ground_program(P), X, p, obj)
    if args.format == "dot":
        sys.stdout.write(emit_dot(out))
    else:
        sys.stdout.write(emit_json(out))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    P, X = _load_inputs(args)
    p = parse_atom(args.atom)
    if p not in X:
        print("atom not in answer set: %s" % p.text, file=sys.stderr)
        return EXIT_NOT_IN_ANSWER_SET
    on_demand = args.ground == "ondemand"
    explanations = engine.enumerate_explanations(
        P, X, p, cap=args.max_expl, on_demand=on_demand
    )
    for i, e in enumerate(explanations, start=1):
        print("explanation %d (size %d):" % (i, e.size))
        sys.stdout.write(_format_text(e))
    print("%d explanation(s)" % len(explanations))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="aspexplain",
        description="Explain why an atom belongs to an answer set.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_common(sp, with_atom=True):
        sp.add_argument("program", help="program file")
        sp.add_argument("answerset", help="answer set file")
        if with_atom:
            sp.add_argument("atom", help="queried ground atom")

    sp = sub.add_parser("explain", help="generate explanations for an atom")
    add_common(sp)
    sp.add_argument("--mode", choices=("shortest", "kdiff"), default="shortest")
    sp.add_argument("-k", type=int, default=2, help="how many explanations")
    sp.add_argument(
        "--format", choices=("text", "nl", "dot", "json"), default="text"
    )
    sp.add_argument("--lookup", help="predicate look-up table file")
    sp.add_argument(
        "--verify", action="store_true",
        help="check the answer set before explaining",
    )
    sp.add_argument(
        "--ground", choices=("eager", "ondemand"), default="ondemand"
    )
    sp.set_defaults(func=cmd_explain)

    sp = sub.add_parser("verify", help="check that the set is an answer set")
    add_common(sp, with_atom=False)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser(
        "convert", help="convert between justifications and explanation trees"
    )
    sp.add_argument("direction", choices=("jst2exp", "exp2jst"))
    add_common(sp)
    sp.add_argument("input", help="JSON file with the structure to convert")
    sp.add_argument("--format", choices=("json", "dot"), default="json")
    sp.set_defaults(func=cmd_convert)

    sp = sub.add_parser("enumerate", help="list every explanation for an atom")
    add_common(sp)
    sp.add_argument(
        "--max-expl", type=int, default=engine.DEFAULT_ENUM_CAP,
        help="enumeration cap",
    )
    sp.add_argument(
        "--ground", choices=("eager", "ondemand"), default="ondemand"
    )
    sp.set_defaults(func=cmd_enumerate)
    return top


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, GroundingError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ValueError as exc:
        msg = str(exc)
        print("error: %s" % msg, file=sys.stderr)
        if msg.startswith("atom not in answer set"):
            return EXIT_NOT_IN_ANSWER_SET
        return EXIT_INPUT_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
