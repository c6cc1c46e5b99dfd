"""Offline justifications: e-graphs, local consistent explanations, and
the conversions between justifications and explanation trees."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Optional, Union

from .model import Atom, Program, Rule, AtomSet, as_atom_set, reduct
from .trees import Label, VertexLabeledTree

ASSUME = "assume"
TOP = "top"
BOT = "bot"
MARKERS = (ASSUME, TOP, BOT)

MARKER_DISPLAY = {ASSUME: "assume", TOP: "⊤", BOT: "⊥"}


@dataclass(frozen=True, order=True)
class AnnotatedAtom:
    """An atom marked as true (``+``) or false (``-``)."""

    atom: Atom
    sign: str

    def __post_init__(self) -> None:
        if self.sign not in ("+", "-"):
            raise ValueError("sign must be + or -")
        if not self.atom.is_ground:
            raise ValueError("non-ground annotated atom: %s" % self.atom.text)

    @property
    def text(self) -> str:
        return self.atom.text + self.sign


Node = Union[AnnotatedAtom, str]
Edge = tuple[Node, Node, str]


@dataclass(frozen=True, order=True)
class Literal:
    """An atom or its default negation, as used in rule bodies and LCEs."""

    atom: Atom
    negated: bool = False

    @property
    def text(self) -> str:
        return ("not %s" if self.negated else "%s") % self.atom.text


def _node_key(n: Node):
    return (0, n) if isinstance(n, str) else (1, n.atom, n.sign)


@dataclass(frozen=True)
class EGraph:
    """A labeled directed graph over annotated atoms and the marker
    nodes assume, ⊤ and ⊥; the structural conditions are enforced at
    construction time."""

    nodes: frozenset[Node]
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        for src, dst, sign in self.edges:
            if src not in self.nodes or dst not in self.nodes:
                raise ValueError("edge endpoint not among the nodes")
            if sign not in ("+", "-"):
                raise ValueError("edge label must be + or -")
            if isinstance(src, str):
                raise ValueError("marker node %s cannot have out-edges" % src)
        out: dict[Node, list[Edge]] = {n: [] for n in self.nodes}
        for e in self.edges:
            out[e[0]].append(e)
        for n in self.nodes:
            if isinstance(n, str):
                continue
            if not out[n]:
                raise ValueError("only assume/top/bot may be sinks: %s" % n.text)
            if n.sign == "+" and (
                (n, ASSUME, "-") in self.edges or (n, BOT, "-") in self.edges
            ):
                raise ValueError(
                    "positive node %s with a negative marker edge" % n.text
                )
            if n.sign == "-" and (
                (n, ASSUME, "+") in self.edges or (n, TOP, "+") in self.edges
            ):
                raise ValueError(
                    "negative node %s with a positive marker edge" % n.text
                )
            marker_edges = [e for e in out[n] if isinstance(e[1], str)]
            if marker_edges and len(out[n]) > 1:
                raise ValueError(
                    "marker edge of %s must be its only out-edge" % n.text
                )

    def out_edges(self, n: Node) -> tuple[Edge, ...]:
        return tuple(sorted(
            (e for e in self.edges if e[0] == n),
            key=lambda e: (_node_key(e[1]), e[2]),
        ))


def support_of(b: AnnotatedAtom, G: EGraph) -> Union[str, frozenset[Literal]]:
    """What a node directly rests on: the marker its single edge points
    to, or the literal set read off its outgoing edges."""
    if b not in G.nodes:
        raise ValueError("node not in graph: %s" % b.text)
    out = G.out_edges(b)
    for _, dst, _ in out:
        if isinstance(dst, str):
            return dst
    return frozenset(
        Literal(dst.atom, negated=(sign == "-")) for _, dst, sign in out
    )


def _body_literals(r: Rule) -> frozenset[Literal]:
    return frozenset(
        [Literal(a) for a in r.body_pos]
        + [Literal(a, negated=True) for a in r.body_neg]
    )


def _is_positive_lce(
    P: Program, b: Atom, S: frozenset[Literal], plus: frozenset[Atom],
    minus_or_u: frozenset[Atom],
) -> bool:
    if b not in plus:
        return False
    pos = {l.atom for l in S if not l.negated}
    neg = {l.atom for l in S if l.negated}
    if not (pos <= plus and neg <= minus_or_u):
        return False
    return any(
        r.head == b and _body_literals(r) == S for r in P.rules
    )


def _falsifies_all(P: Program, b: Atom, pos: set[Atom], neg: set[Atom]) -> bool:
    for r in P.rules:
        if r.head != b:
            continue
        if not (set(r.body_pos) & pos) and not (set(r.body_neg) & neg):
            return False
    return True


def _is_negative_lce(
    P: Program, b: Atom, S: frozenset[Literal], plus: frozenset[Atom],
    minus_or_u: frozenset[Atom],
) -> bool:
    if b not in minus_or_u:
        return False
    pos = {l.atom for l in S if not l.negated}
    neg = {l.atom for l in S if l.negated}
    if not (pos <= minus_or_u and neg <= plus):
        return False
    if not _falsifies_all(P, b, pos, neg):
        return False
    for l in S:
        rest = S - {l}
        rpos = {x.atom for x in rest if not x.negated}
        rneg = {x.atom for x in rest if x.negated}
        if _falsifies_all(P, b, rpos, rneg):
            return False
    return True


def _has_positive_cycle(G: EGraph) -> bool:
    pos_adj: dict[Node, set[Node]] = {}
    for src, dst, sign in G.edges:
        if sign == "+" and not isinstance(dst, str):
            pos_adj.setdefault(src, set()).add(dst)
    state: dict[Node, int] = {}

    def visit(n: Node) -> bool:
        state[n] = 1
        for nxt in pos_adj.get(n, ()):
            s = state.get(nxt)
            if s == 1 or (s is None and visit(nxt)):
                return True
        state[n] = 2
        return False

    return any(
        state.get(n) is None and visit(n)
        for n in G.nodes
        if not isinstance(n, str)
    )


def is_offline_justification(
    P: Program, G: EGraph, b: AnnotatedAtom, M: AtomSet, U: AtomSet
) -> bool:
    """Check every condition that makes ``G`` an offline justification
    of ``b`` with respect to the answer set ``M`` and assumption ``U``:
    reachability from ``b``, every node's support being a local
    consistent explanation, no positive cycle, no assumed true atom,
    and assume edges exactly for the atoms in ``U``."""
    m = as_atom_set(M)
    u = as_atom_set(U)
    base = P.herbrand_base
    plus = frozenset(m)
    minus = frozenset(base) - plus
    if b not in G.nodes:
        return False
    reached = {b}
    frontier = deque([b])
    while frontier:
        n = frontier.popleft()
        if isinstance(n, str):
            continue
        for _, dst, _ in G.out_edges(n):
            if dst not in reached:
                reached.add(dst)
                frontier.append(dst)
    if reached != set(G.nodes):
        return False
    for n in G.nodes:
        if isinstance(n, str):
            continue
        sup = support_of(n, G)
        if sup == ASSUME:
            ok = n.atom in plus if n.sign == "+" else n.atom in minus | u
        elif sup == TOP:
            ok = n.sign == "+" and _is_positive_lce(
                P, n.atom, frozenset(), plus, minus | u
            )
        elif sup == BOT:
            ok = n.sign == "-" and _is_negative_lce(
                P, n.atom, frozenset(), plus, minus | u
            )
        elif n.sign == "+":
            ok = _is_positive_lce(P, n.atom, sup, plus, minus | u)
        else:
            ok = _is_negative_lce(P, n.atom, sup, plus, minus | u)
        if not ok:
            return False
    if _has_positive_cycle(G):
        return False
    for n in G.nodes:
        if isinstance(n, str):
            continue
        if n.sign == "+" and (n, ASSUME, "+") in G.edges:
            return False
        assumed = (n, ASSUME, "-") in G.edges
        if n.sign == "-" and assumed != (n.atom in u):
            return False
    return True


def justification_to_explanation(
    P: Program, X: AtomSet, p: Atom, G: EGraph
) -> VertexLabeledTree:
    """Read an explanation tree off a justification of ``p``: each atom
    vertex gets one rule child whose rule has the atom as head and the
    node's support as body; each rule vertex gets one atom child per
    positive body atom."""
    atoms = as_atom_set(X)
    if p not in atoms:
        raise ValueError("atom not in answer set: %s" % p.text)
    if AnnotatedAtom(p, "+") not in G.nodes:
        raise ValueError("justification does not mention %s" % p.text)
    if _has_positive_cycle(G):
        raise ValueError("malformed justification: positive cycle")
    labels: dict[int, Label] = {}
    children: dict[int, list[int]] = {}
    counter = itertools.count()

    root = next(counter)
    labels[root] = p
    children[root] = []
    queue = deque([root])
    while queue:
        v = queue.popleft()
        lbl = labels[v]
        if isinstance(lbl, Rule):
            for a in lbl.body_pos:
                v2 = next(counter)
                labels[v2] = a
                children[v2] = []
                children[v].append(v2)
                queue.append(v2)
            continue
        node = AnnotatedAtom(lbl, "+")
        if node not in G.nodes:
            raise ValueError("justification does not mention %s" % node.text)
        sup = support_of(node, G)
        if isinstance(sup, str):
            if sup != TOP:
                raise ValueError(
                    "true atom %s rests on %s, not a rule" % (lbl.text, sup)
                )
            body: frozenset[Literal] = frozenset()
        else:
            body = sup
        r = Rule(
            lbl,
            tuple(sorted(l.atom for l in body if not l.negated)),
            tuple(sorted(l.atom for l in body if l.negated)),
        )
        v2 = next(counter)
        labels[v2] = r
        children[v2] = []
        children[v].append(v2)
        queue.append(v2)
    return VertexLabeledTree(
        root, labels, {k: tuple(c) for k, c in children.items()}
    )


def explanation_to_justification(
    P: Program, X: AtomSet, p: Atom, T: VertexLabeledTree
) -> EGraph:
    """Build the justification of ``p`` in the reduct of ``P`` encoded
    by an explanation tree: atoms with a fact child point to ⊤, other
    atoms point to the atoms below their rule. Vertex labels must be
    unique for the reading to be unambiguous."""
    atoms = as_atom_set(X)
    if p not in atoms:
        raise ValueError("atom not in answer set: %s" % p.text)
    if T.is_empty:
        raise ValueError("empty explanation tree")
    seen_labels = [
        (type(T.labels[v]).__name__, T.labels[v].text) for v in T.preorder()
    ]
    if len(seen_labels) != len(set(seen_labels)):
        raise ValueError("labels not unique")
    R = reduct(P, atoms)
    fact_heads = frozenset(r.head for r in R.rules if r.is_fact)
    nodes: set[Node] = set()
    edges: set[Edge] = set()
    queue = deque([T.root])
    while queue:
        v = queue.popleft()
        lbl = T.labels[v]
        assert isinstance(lbl, Atom)
        src = AnnotatedAtom(lbl, "+")
        nodes.add(src)
        kids = T.child_ids(v)
        if len(kids) != 1:
            raise ValueError(
                "atom vertex %s does not have exactly one child" % lbl.text
            )
        (rv,) = kids
        rule = T.labels[rv]
        if not isinstance(rule, Rule):
            raise ValueError("child of an atom vertex must be a rule vertex")
        stripped = Rule(rule.head, rule.body_pos)
        if stripped.is_fact and stripped.head in fact_heads:
            edges.add((src, TOP, "+"))
        for v2 in T.child_ids(rv):
            a2 = T.labels[v2]
            edges.add((src, AnnotatedAtom(a2, "+"), "+"))
            queue.append(v2)
    nodes.add(TOP)
    return EGraph(frozenset(nodes), frozenset(edges))
