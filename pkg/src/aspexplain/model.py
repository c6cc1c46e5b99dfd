"""Core data model for ground answer-set programs.

Terms, atoms, rules and programs are immutable value objects; two rules
with the same head and body are the same rule no matter how they were
spelled in the input (``source_text`` is carried for display only).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Union


@dataclass(frozen=True, order=True)
class Term:
    """A constant or a variable.

    The surface text decides the kind: names starting with an uppercase
    letter are variables; lowercase identifiers, integers and
    double-quoted strings are constants.
    """

    name: str

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("empty term name")

    @property
    def is_variable(self) -> bool:
        return self.name[0].isupper()

    @property
    def unquoted(self) -> str:
        """Constant text with surrounding double quotes stripped."""
        if len(self.name) >= 2 and self.name[0] == '"' and self.name[-1] == '"':
            return self.name[1:-1]
        return self.name

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, order=True)
class Atom:
    predicate: str
    args: tuple[Term, ...] = ()

    @property
    def is_ground(self) -> bool:
        return all(not t.is_variable for t in self.args)

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def text(self) -> str:
        if not self.args:
            return self.predicate
        return "%s(%s)" % (self.predicate, ",".join(t.name for t in self.args))

    def variables(self) -> frozenset[str]:
        return frozenset(t.name for t in self.args if t.is_variable)

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class CardinalityExpression:
    """A body cardinality expression ``lower {a; b; ...} upper``.

    ``upper`` is ``None`` when there is no upper bound; a missing lower
    bound defaults to 0.
    """

    lower: int = 0
    upper: Optional[int] = None
    atoms: tuple[Atom, ...] = ()

    def __post_init__(self) -> None:
        if self.lower < 0:
            raise ValueError("negative lower bound")
        if self.upper is not None and self.upper < self.lower:
            raise ValueError("lower bound exceeds upper bound")

    @property
    def is_ground(self) -> bool:
        return all(a.is_ground for a in self.atoms)

    @property
    def text(self) -> str:
        inner = "{%s}" % "; ".join(a.text for a in self.atoms)
        parts = []
        if self.lower > 0:
            parts.append(str(self.lower))
        parts.append(inner)
        if self.upper is not None:
            parts.append(str(self.upper))
        return " ".join(parts)

    def variables(self) -> frozenset[str]:
        return frozenset(v for a in self.atoms for v in a.variables())

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class Rule:
    """A rule ``head :- body``; ``head is None`` encodes a constraint.

    Equality and hashing are structural and ignore ``source_text``.
    """

    head: Optional[Atom]
    body_pos: tuple[Atom, ...] = ()
    body_neg: tuple[Atom, ...] = ()
    body_card: tuple[CardinalityExpression, ...] = ()
    source_text: str = field(default="", compare=False)

    @property
    def is_fact(self) -> bool:
        return not self.body_pos and not self.body_neg and not self.body_card

    @property
    def is_constraint(self) -> bool:
        return self.head is None

    @property
    def is_ground(self) -> bool:
        return (
            (self.head is None or self.head.is_ground)
            and all(a.is_ground for a in self.body_pos)
            and all(a.is_ground for a in self.body_neg)
            and all(c.is_ground for c in self.body_card)
        )

    @property
    def is_normal(self) -> bool:
        """True when the rule carries no cardinality expressions."""
        return not self.body_card

    @property
    def text(self) -> str:
        body = [a.text for a in self.body_pos]
        body += ["not %s" % a.text for a in self.body_neg]
        body += [c.text for c in self.body_card]
        head = self.head.text if self.head is not None else ""
        if not body:
            return head
        if not head:
            return ":- %s" % ", ".join(body)
        return "%s :- %s" % (head, ", ".join(body))

    @property
    def display(self) -> str:
        return self.source_text or self.text

    def variables(self) -> frozenset[str]:
        vs: set[str] = set()
        if self.head is not None:
            vs |= self.head.variables()
        for a in itertools.chain(self.body_pos, self.body_neg):
            vs |= a.variables()
        for c in self.body_card:
            vs |= c.variables()
        return frozenset(vs)

    def __str__(self) -> str:
        return self.text


def _atom_instantiations(atom: Atom, universe: tuple[Term, ...]) -> Iterator[Atom]:
    if atom.is_ground:
        yield atom
        return
    names = sorted(atom.variables())
    for combo in itertools.product(universe, repeat=len(names)):
        subst = dict(zip(names, combo))
        args = tuple(subst.get(t.name, t) for t in atom.args)
        yield Atom(atom.predicate, args)


@dataclass(frozen=True)
class Program:
    rules: tuple[Rule, ...]

    @property
    def is_ground(self) -> bool:
        return all(r.is_ground for r in self.rules)

    def _atom_patterns(self) -> Iterator[Atom]:
        for r in self.rules:
            if r.head is not None:
                yield r.head
            yield from r.body_pos
            yield from r.body_neg
            for c in r.body_card:
                yield from c.atoms

    @cached_property
    def herbrand_universe(self) -> frozenset[Term]:
        """All constants occurring anywhere in the rules."""
        return frozenset(
            t for a in self._atom_patterns() for t in a.args if not t.is_variable
        )

    @cached_property
    def herbrand_base(self) -> frozenset[Atom]:
        """All ground atoms obtained by instantiating the rules' atoms
        over the constants of the program."""
        universe = tuple(sorted(self.herbrand_universe))
        base: set[Atom] = set()
        for pattern in self._atom_patterns():
            base.update(_atom_instantiations(pattern, universe))
        return frozenset(base)

    def deduplicated(self) -> "Program":
        """Drop structurally duplicate rules; the first occurrence (and
        its source text) wins."""
        return Program(tuple(dict.fromkeys(self.rules)))

    @property
    def text(self) -> str:
        return "\n".join(r.display + "." for r in self.rules)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)


@dataclass(frozen=True)
class AnswerSet:
    """A set of ground atoms, typically produced by a solver."""

    atoms: frozenset[Atom]

    def __post_init__(self) -> None:
        for a in self.atoms:
            if not a.is_ground:
                raise ValueError("non-ground atom in answer set: %s" % a.text)

    @classmethod
    def of(cls, atoms: Iterable[Atom]) -> "AnswerSet":
        return cls(frozenset(atoms))

    def __contains__(self, atom: object) -> bool:
        return atom in self.atoms

    def __iter__(self) -> Iterator[Atom]:
        return iter(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)


AtomSet = Union[AnswerSet, frozenset, set]


def as_atom_set(X: AtomSet) -> frozenset[Atom]:
    if isinstance(X, AnswerSet):
        return X.atoms
    return frozenset(X)


def satisfies_card(X: AtomSet, C: CardinalityExpression) -> bool:
    """True iff the number of members of ``C`` in ``X`` lies within the
    bounds."""
    if not C.is_ground:
        raise ValueError("non-ground cardinality expression: %s" % C.text)
    n = len(frozenset(C.atoms) & as_atom_set(X))
    return C.lower <= n and (C.upper is None or n <= C.upper)


def satisfies_rule(I: AtomSet, r: Rule) -> bool:
    """Classical satisfaction of a single (possibly negated) rule."""
    atoms = as_atom_set(I)
    body_holds = (
        set(r.body_pos) <= atoms
        and not (set(r.body_neg) & atoms)
        and all(satisfies_card(atoms, c) for c in r.body_card)
    )
    if not body_holds:
        return True
    return r.head is not None and r.head in atoms


def reduct(P: Program, I: AtomSet) -> Program:
    """Drop every rule whose negative body meets ``I`` and strip the
    negative bodies from the rest; cardinality expressions are kept."""
    if not P.is_ground:
        raise ValueError("non-ground program")
    atoms = as_atom_set(I)
    kept = []
    for r in P.rules:
        if set(r.body_neg) & atoms:
            continue
        kept.append(Rule(r.head, r.body_pos, (), r.body_card))
    return Program(tuple(kept))


DEFAULT_BASE_CAP = 20


def is_answer_set(P: Program, I: AtomSet, cap: int = DEFAULT_BASE_CAP) -> bool:
    """Exhaustive answer-set check: ``I`` must satisfy the reduct and no
    strict subset of ``I`` may do so.

    Only programs without cardinality expressions are accepted, and the
    Herbrand base must stay within ``cap`` atoms.
    """
    ok, _ = verify_answer_set(P, I, cap=cap)
    return ok


def verify_answer_set(
    P: Program, I: AtomSet, cap: int = DEFAULT_BASE_CAP
) -> tuple[bool, str]:
    """Like :func:`is_answer_set` but reports the violated condition."""
    if not P.is_ground:
        raise ValueError("non-ground program")
    if any(r.body_card for r in P.rules):
        raise ValueError("cardinality expressions not supported in verification")
    if len(P.herbrand_base) > cap:
        raise ValueError(
            "instance too large for exhaustive verification: "
            "%d atoms in the base, cap is %d" % (len(P.herbrand_base), cap)
        )
    atoms = as_atom_set(I)
    R = reduct(P, I)
    for r in R.rules:
        if not satisfies_rule(atoms, r):
            return False, "unsatisfied rule: %s." % r.display
    members = sorted(atoms)
    for k in range(len(members)):
        for combo in itertools.combinations(members, k):
            sub = frozenset(combo)
            if all(satisfies_rule(sub, r) for r in R.rules):
                return False, (
                    "not subset-minimal: {%s} already satisfies the reduct"
                    % ", ".join(a.text for a in sorted(sub))
                )
    return True, ""


def supports(r: Rule, p: Atom, Y: AtomSet, Z: AtomSet) -> bool:
    """True iff ``r`` supports ``p`` using atoms in ``Y`` but not in
    ``Z``: the head is ``p``, the positive body lies in ``Y`` minus
    ``Z``, the negative body avoids ``Y`` and ``Y`` satisfies the body
    cardinality expressions."""
    ys = as_atom_set(Y)
    zs = as_atom_set(Z)
    return (
        r.head == p
        and set(r.body_pos) <= (ys - zs)
        and not (set(r.body_neg) & ys)
        and all(satisfies_card(ys, c) for c in r.body_card)
    )


def supporting_rules(
    P: Program, p: Atom, Y: AtomSet, Z: AtomSet
) -> tuple[Rule, ...]:
    """The rules of ``P`` that support ``p`` w.r.t. ``Y`` but ``Z``,
    deduplicated, in program order."""
    out = dict.fromkeys(r for r in P.rules if supports(r, p, Y, Z))
    return tuple(out)
