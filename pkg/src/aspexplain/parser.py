"""Parsing of programs, answer sets and predicate look-up tables.

The program grammar is deliberately small: rules of the form
``head :- body.`` where body elements are atoms, ``not`` atoms, or
cardinality expressions ``l {a; b} u`` with optional bounds. ``%``
starts a line comment. Integer intervals ``1..n`` are accepted in facts
only and desugared into one fact per value.
"""
from __future__ import annotations

import itertools
import re
import warnings
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .model import (
    AnswerSet,
    Atom,
    CardinalityExpression,
    Program,
    Rule,
    Term,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__("%s (line %d, column %d)" % (message, line, col))
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    col: int
    offset: int


_TOKEN_RE = re.compile(
    r"""
      (?P<WS>\s+)
    | (?P<COMMENT>%[^\n]*)
    | (?P<STRING>"[^"\n]*")
    | (?P<DOTS>\.\.)
    | (?P<NUMBER>-?\d+)
    | (?P<IMPL>:-)
    | (?P<IDENT>[a-z_][A-Za-z0-9_]*)
    | (?P<VAR>[A-Z][A-Za-z0-9_]*)
    | (?P<SYM>[(){},;.])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(
                "unexpected character %r" % text[pos], line, pos - line_start + 1
            )
        kind = m.lastgroup
        value = m.group()
        if kind not in ("WS", "COMMENT"):
            out.append(Token(kind, value, line, pos - line_start + 1, pos))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rfind("\n") + 1
        pos = m.end()
    return out


class _Cursor:
    def __init__(self, tokens: list[Token], text: str):
        self.tokens = tokens
        self.text = text
        self.i = 0

    def peek(self) -> Optional[Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> Token:
        t = self.peek()
        if t is None:
            last = self.tokens[-1] if self.tokens else None
            line = last.line if last else 1
            col = last.col + len(last.value) if last else 1
            raise ParseError("unexpected end of input", line, col)
        self.i += 1
        return t

    def expect(self, kind: str, value: Optional[str] = None) -> Token:
        t = self.next()
        if t.kind != kind or (value is not None and t.value != value):
            want = value or kind.lower()
            raise ParseError(
                "expected %s, found %r" % (want, t.value), t.line, t.col
            )
        return t

    def at(self, kind: str, value: Optional[str] = None) -> bool:
        t = self.peek()
        return (
            t is not None
            and t.kind == kind
            and (value is None or t.value == value)
        )


_IntervalTerm = tuple[int, int]


def _parse_term(c: _Cursor, allow_interval: bool):
    t = c.next()
    if t.kind in ("IDENT", "STRING", "VAR"):
        return Term(t.value)
    if t.kind == "NUMBER":
        if allow_interval and c.at("DOTS"):
            c.next()
            hi = c.expect("NUMBER")
            lo_v, hi_v = int(t.value), int(hi.value)
            if hi_v < lo_v:
                raise ParseError("empty interval", t.line, t.col)
            return (lo_v, hi_v)
        return Term(t.value)
    raise ParseError("expected a term, found %r" % t.value, t.line, t.col)


def _parse_atom(c: _Cursor, allow_interval: bool = False):
    t = c.expect("IDENT")
    args: list = []
    if c.at("SYM", "("):
        c.next()
        while True:
            args.append(_parse_term(c, allow_interval))
            if c.at("SYM", ","):
                c.next()
                continue
            break
        c.expect("SYM", ")")
    return t.value, tuple(args)


def _expand_intervals(predicate: str, args: tuple) -> Iterator[Atom]:
    fixed: list[list[Term]] = []
    for a in args:
        if isinstance(a, tuple):
            fixed.append([Term(str(v)) for v in range(a[0], a[1] + 1)])
        else:
            fixed.append([a])
    for combo in itertools.product(*fixed):
        yield Atom(predicate, tuple(combo))


def _parse_card(c: _Cursor) -> CardinalityExpression:
    lower = 0
    if c.at("NUMBER"):
        lower = int(c.next().value)
        if lower < 0:
            raise ParseError("negative bound", c.tokens[c.i - 1].line,
                             c.tokens[c.i - 1].col)
    c.expect("SYM", "{")
    members: list[Atom] = []
    if not c.at("SYM", "}"):
        while True:
            pred, args = _parse_atom(c)
            members.append(Atom(pred, args))
            if c.at("SYM", ";"):
                c.next()
                continue
            break
    c.expect("SYM", "}")
    upper: Optional[int] = None
    if c.at("NUMBER"):
        tok = c.next()
        upper = int(tok.value)
        if upper < 0:
            raise ParseError("negative bound", tok.line, tok.col)
        if upper < lower:
            raise ParseError("lower bound exceeds upper bound", tok.line, tok.col)
    return CardinalityExpression(lower, upper, tuple(members))


def _simple_atom(pred: str, args: tuple, where: Token) -> Atom:
    if any(isinstance(a, tuple) for a in args):
        raise ParseError(
            "intervals are only allowed in facts", where.line, where.col
        )
    return Atom(pred, args)


def parse_program(text: str) -> Program:
    """Parse rule text into a :class:`Program`, keeping each rule's
    verbatim source (without the trailing period) for display."""
    c = _Cursor(_tokenize(text), text)
    rules: list[Rule] = []
    while c.peek() is not None:
        start_tok = c.peek()
        head: Optional[Atom] = None
        head_raw = None
        if not c.at("IMPL"):
            head_raw = _parse_atom(c, allow_interval=True)
        body_pos: list[Atom] = []
        body_neg: list[Atom] = []
        body_card: list[CardinalityExpression] = []
        if c.at("IMPL"):
            c.next()
            while True:
                t = c.peek()
                if t is None:
                    raise ParseError("unexpected end of input", start_tok.line,
                                     start_tok.col)
                if t.kind == "IDENT" and t.value == "not":
                    c.next()
                    pred, args = _parse_atom(c)
                    body_neg.append(_simple_atom(pred, args, t))
                elif t.kind == "NUMBER" or (t.kind == "SYM" and t.value == "{"):
                    body_card.append(_parse_card(c))
                else:
                    pred, args = _parse_atom(c)
                    body_pos.append(_simple_atom(pred, args, t))
                if c.at("SYM", ","):
                    c.next()
                    continue
                break
        end_tok = c.expect("SYM", ".")
        source = text[start_tok.offset:end_tok.offset].strip()
        if head_raw is not None and any(
            isinstance(a, tuple) for a in head_raw[1]
        ):
            if body_pos or body_neg or body_card:
                raise ParseError(
                    "intervals are only allowed in facts",
                    start_tok.line, start_tok.col,
                )
            for atom in _expand_intervals(*head_raw):
                rules.append(Rule(atom, source_text=atom.text))
            continue
        if head_raw is not None:
            head = Atom(*head_raw)
        rules.append(
            Rule(head, tuple(body_pos), tuple(body_neg), tuple(body_card), source)
        )
    return Program(tuple(rules))


def parse_atom(text: str) -> Atom:
    """Parse a single atom, e.g. a query argument."""
    c = _Cursor(_tokenize(text), text)
    pred, args = _parse_atom(c)
    t = c.peek()
    if t is not None:
        raise ParseError("trailing input after atom", t.line, t.col)
    return Atom(pred, args)


def parse_answer_set(text: str) -> AnswerSet:
    """Whitespace-separated ground atoms; a leading ``Answer: N`` header
    line is skipped."""
    lines = text.splitlines()
    body_lines = [
        ln for ln in lines if not re.match(r"^\s*Answer:\s*\d+\s*$", ln)
    ]
    c = _Cursor(_tokenize("\n".join(body_lines)), text)
    atoms: list[Atom] = []
    while c.peek() is not None:
        tok = c.peek()
        pred, args = _parse_atom(c)
        atom = Atom(pred, args)
        if not atom.is_ground:
            raise ParseError(
                "non-ground atom in answer set: %s" % atom.text,
                tok.line, tok.col,
            )
        atoms.append(atom)
    return AnswerSet.of(atoms)


@dataclass(frozen=True)
class LookupTable:
    """Natural-language templates per predicate name and arity, with
    ``$1..$n`` standing for the argument positions."""

    templates: dict[tuple[str, int], str] = field(default_factory=dict)

    def get(self, predicate: str, arity: int) -> Optional[str]:
        return self.templates.get((predicate, arity))


_LOOKUP_LINE_RE = re.compile(
    r"^\s*(?P<pred>[a-z_][A-Za-z0-9_]*)\s*/\s*(?P<arity>\d+)\s*:\s*(?P<tpl>.*\S)\s*$"
)


def parse_lookup(text: str) -> LookupTable:
    """One mapping per line: ``predicate/arity: template``. Blank lines
    and ``%`` comments are skipped; a repeated key overrides the earlier
    one with a warning."""
    templates: dict[tuple[str, int], str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        m = _LOOKUP_LINE_RE.match(line)
        if m is None:
            raise ParseError("malformed look-up entry", lineno, 1)
        pred = m.group("pred")
        arity = int(m.group("arity"))
        tpl = m.group("tpl")
        for ph in re.findall(r"\$(\d+)", tpl):
            if not 1 <= int(ph) <= arity:
                raise ParseError(
                    "placeholder $%s out of range for %s/%d"
                    % (ph, pred, arity),
                    lineno, 1,
                )
        if (pred, arity) in templates:
            warnings.warn(
                "duplicate look-up entry for %s/%d; the later one wins"
                % (pred, arity)
            )
        templates[(pred, arity)] = tpl
    return LookupTable(templates)


def render_program(P: Program) -> str:
    """Program text that parses back to an equal program."""
    return "\n".join(r.text + "." for r in P.rules) + ("\n" if P.rules else "")
