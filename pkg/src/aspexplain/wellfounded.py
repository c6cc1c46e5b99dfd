"""Well-founded semantics via the alternating-fixpoint construction,
plus tentative assumptions, negative reducts and assumption sets."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .model import Atom, Program, Rule, AtomSet, as_atom_set

ASSUMPTION_SEARCH_CAP = 2**16


@dataclass(frozen=True)
class PartialInterpretation:
    """A three-valued interpretation: atoms known true and known false."""

    plus: frozenset[Atom]
    minus: frozenset[Atom]

    def __post_init__(self) -> None:
        if self.plus & self.minus:
            raise ValueError("inconsistent interpretation")

    def is_complete(self, base: frozenset[Atom]) -> bool:
        return self.plus | self.minus == base


def _require_normal(P: Program) -> None:
    if any(r.body_card for r in P.rules):
        raise ValueError("normal programs only")


def immediate_consequence(
    P: Program, V: AtomSet, S: AtomSet
) -> frozenset[Atom]:
    """Heads derivable from ``S`` in one step, treating the atoms in
    ``V`` as false blockers for negative bodies."""
    _require_normal(P)
    vs = as_atom_set(V)
    ss = as_atom_set(S)
    return frozenset(
        r.head
        for r in P.rules
        if r.head is not None
        and set(r.body_pos) <= ss
        and not (set(r.body_neg) & vs)
    )


def _lfp(P: Program, V: frozenset[Atom]) -> frozenset[Atom]:
    S: frozenset[Atom] = frozenset()
    while True:
        nxt = immediate_consequence(P, V, S)
        if nxt == S:
            return S
        S = nxt


def well_founded_model(
    P: Program, base: frozenset[Atom] | None = None
) -> PartialInterpretation:
    """Alternate least fixpoints: K underestimates the true atoms, U
    overestimates them, until both stabilize. The result is ⟨K, B \\ U⟩.

    ``base`` defaults to the program's Herbrand base; callers that have
    removed rules can pass the original base to keep the false side
    complete.
    """
    _require_normal(P)
    if base is None:
        base = P.herbrand_base
    K = _lfp(P, base)
    U = _lfp(P, K)
    while True:
        K2 = _lfp(P, U)
        U2 = _lfp(P, K2)
        if (K2, U2) == (K, U):
            break
        K, U = K2, U2
    return PartialInterpretation(K, frozenset(base) - U)


def nant(P: Program) -> frozenset[Atom]:
    """Atoms occurring under negation anywhere in the program."""
    return frozenset(a for r in P.rules for a in r.body_neg)


def tentative_assumptions(P: Program, M: AtomSet) -> frozenset[Atom]:
    """Negated atoms that are false in ``M`` but left undetermined by
    the well-founded model."""
    _require_normal(P)
    wf = well_founded_model(P)
    m = as_atom_set(M)
    false_in_m = P.herbrand_base - m
    return frozenset(nant(P) & false_in_m - wf.plus - wf.minus)


def negative_reduct(P: Program, U: AtomSet) -> Program:
    """Drop every rule whose head is in ``U``."""
    us = as_atom_set(U)
    return Program(tuple(r for r in P.rules if r.head not in us))


def assumptions(
    P: Program, M: AtomSet, cap: int = ASSUMPTION_SEARCH_CAP
) -> frozenset[frozenset[Atom]]:
    """All subsets of the tentative assumptions whose negative reduct
    has well-founded model exactly ``M`` (as a complete interpretation
    over the program's base)."""
    _require_normal(P)
    m = as_atom_set(M)
    base = P.herbrand_base
    ta = sorted(tentative_assumptions(P, M))
    if 2 ** len(ta) > cap:
        raise ValueError(
            "cap exceeded: %d candidate assumption sets" % 2 ** len(ta)
        )
    target = PartialInterpretation(frozenset(m), base - m)
    out = []
    for k in range(len(ta) + 1):
        for combo in itertools.combinations(ta, k):
            U = frozenset(combo)
            wf = well_founded_model(negative_reduct(P, U), base=base)
            if wf == target:
                out.append(U)
    return frozenset(out)
