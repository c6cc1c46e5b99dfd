"""Substitution-based grounding.

Two modes are offered: :func:`ground_program` instantiates every rule
over all constants up front, while :func:`instantiate_for_head` grounds
only the rules that could derive one given atom, filtered against the
answer set. The second mode is an over-approximation of the rules that
actually support the atom, so running the explanation engine on either
result gives the same trees.
"""
from __future__ import annotations

import itertools
from typing import Optional

from .model import (
    Atom,
    CardinalityExpression,
    Program,
    Rule,
    Term,
    as_atom_set,
    AtomSet,
)


class GroundingError(ValueError):
    pass


Subst = dict[str, Term]


def _subst_atom(atom: Atom, subst: Subst) -> Atom:
    if atom.is_ground:
        return atom
    return Atom(atom.predicate, tuple(subst.get(t.name, t) for t in atom.args))


def _expand_card(
    card: CardinalityExpression, subst: Subst, universe: tuple[Term, ...]
) -> CardinalityExpression:
    """Apply ``subst`` to the member atoms, then expand variables local
    to the expression over the universe."""
    members: list[Atom] = []
    for pattern in card.atoms:
        pattern = _subst_atom(pattern, subst)
        local = sorted(pattern.variables())
        if not local:
            members.append(pattern)
            continue
        for combo in itertools.product(universe, repeat=len(local)):
            extra = dict(zip(local, combo))
            members.append(_subst_atom(pattern, extra))
    return CardinalityExpression(card.lower, card.upper, tuple(dict.fromkeys(members)))


def _check_safety(r: Rule) -> None:
    """Every variable outside the cardinality expressions must occur in
    a positive body atom; cardinality-expression variables not bound
    elsewhere are local and expanded in place."""
    pos_vars: set[str] = set()
    for a in r.body_pos:
        pos_vars |= a.variables()
    needed: set[str] = set()
    if r.head is not None:
        needed |= r.head.variables()
    for a in r.body_neg:
        needed |= a.variables()
    unbound = sorted(needed - pos_vars)
    if unbound:
        raise GroundingError(
            "unsafe rule %r: variable %s does not occur in a positive body atom"
            % (r.display, unbound[0])
        )


def _ground_rule(r: Rule, universe: tuple[Term, ...]) -> list[Rule]:
    if r.is_ground:
        return [r]
    _check_safety(r)
    if not universe:
        raise GroundingError(
            "cannot ground rule %r: the program has no constants" % r.display
        )
    global_vars: set[str] = set()
    if r.head is not None:
        global_vars |= r.head.variables()
    for a in itertools.chain(r.body_pos, r.body_neg):
        global_vars |= a.variables()
    names = sorted(global_vars)
    out = []
    for combo in itertools.product(universe, repeat=len(names)):
        subst = dict(zip(names, combo))
        out.append(
            Rule(
                None if r.head is None else _subst_atom(r.head, subst),
                tuple(_subst_atom(a, subst) for a in r.body_pos),
                tuple(_subst_atom(a, subst) for a in r.body_neg),
                tuple(_expand_card(c, subst, universe) for c in r.body_card),
            )
        )
    out.sort(key=lambda g: g.text)
    return out


def ground_program(P: Program) -> Program:
    """All ground instances of the rules of ``P`` over its constants.

    Already-ground programs are returned unchanged. Instances of one
    rule come out sorted by text; rules keep program order.
    """
    if P.is_ground:
        return P
    universe = tuple(sorted(P.herbrand_universe))
    rules: list[Rule] = []
    for r in P.rules:
        rules.extend(_ground_rule(r, universe))
    return Program(tuple(rules)).deduplicated()


def _match_atom(pattern: Atom, ground: Atom, subst: Subst) -> Optional[Subst]:
    """Extend ``subst`` so that ``pattern`` becomes ``ground``, or give
    up with None."""
    if pattern.predicate != ground.predicate or pattern.arity != ground.arity:
        return None
    out = dict(subst)
    for t, g in zip(pattern.args, ground.args):
        if t.is_variable:
            bound = out.get(t.name)
            if bound is None:
                out[t.name] = g
            elif bound != g:
                return None
        elif t != g:
            return None
    return out


def instantiate_for_head(P: Program, p: Atom, X: AtomSet) -> tuple[Rule, ...]:
    """Ground instances of the rules of ``P`` whose head is ``p``.

    The head is unified with ``p``, remaining body variables range over
    the program's constants, and only instances whose positive body lies
    in ``X`` plus the heads of ground facts are kept. That filter is a
    sound over-approximation of the rules supporting ``p``.
    """
    if not p.is_ground:
        raise GroundingError("non-ground query atom: %s" % p.text)
    atoms = as_atom_set(X)
    fact_heads = frozenset(
        r.head for r in P.rules if r.is_fact and r.head is not None and r.head.is_ground
    )
    allowed = atoms | fact_heads
    universe = tuple(sorted(P.herbrand_universe))
    out: list[Rule] = []
    for r in P.rules:
        if r.head is None:
            continue
        subst = _match_atom(r.head, p, {})
        if subst is None:
            continue
        if not r.is_ground:
            _check_safety(r)
        body_vars: set[str] = set()
        for a in itertools.chain(r.body_pos, r.body_neg):
            body_vars |= a.variables()
        rest = sorted(body_vars - set(subst))
        if rest and not universe:
            raise GroundingError(
                "cannot ground rule %r: the program has no constants" % r.display
            )
        for combo in itertools.product(universe, repeat=len(rest)):
            full = dict(subst)
            full.update(zip(rest, combo))
            g = Rule(
                p,
                tuple(_subst_atom(a, full) for a in r.body_pos),
                tuple(_subst_atom(a, full) for a in r.body_neg),
                tuple(_expand_card(c, full, universe) for c in r.body_card),
                r.source_text if r.is_ground else "",
            )
            if set(g.body_pos) <= allowed:
                out.append(g)
    unique = dict.fromkeys(out)
    return tuple(sorted(unique, key=lambda g: g.text))
