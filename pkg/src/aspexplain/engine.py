"""And-or explanation trees and explanation extraction.

The entry points are :func:`create_tree`, :func:`shortest_explanation`,
:func:`k_different` and the brute-force oracle
:func:`enumerate_explanations`.
"""
from __future__ import annotations

import itertools
import math
from typing import Callable, Iterator, Optional, Union

from .ground import ground_program, instantiate_for_head
from .model import (
    Atom,
    Program,
    Rule,
    AtomSet,
    as_atom_set,
    supporting_rules,
    supports,
)
from .trees import EMPTY_TREE, Explanation, Label, VertexLabeledTree

DEFAULT_ENUM_CAP = 10_000

_Node = tuple[Label, list]


def _rule_source(
    P: Program, X: AtomSet, on_demand: bool
) -> Callable[[Atom, frozenset[Atom]], tuple[Rule, ...]]:
    """How an atom vertex finds its candidate rules.

    Eager mode scans the fully ground program; on-demand mode grounds
    just the rules whose head matches the atom. Both end with the same
    support filter, so they agree on the result.
    """
    atoms = as_atom_set(X)
    if on_demand:
        cache: dict[Atom, tuple[Rule, ...]] = {}

        def source(a: Atom, excluded: frozenset[Atom]) -> tuple[Rule, ...]:
            if a not in cache:
                cache[a] = instantiate_for_head(P, a, atoms)
            matching = [r for r in cache[a] if supports(r, a, atoms, excluded)]
            return tuple(sorted(dict.fromkeys(matching), key=lambda r: r.text))

        return source

    G = ground_program(P).deduplicated()

    def source(a: Atom, excluded: frozenset[Atom]) -> tuple[Rule, ...]:
        return tuple(
            sorted(supporting_rules(G, a, atoms, excluded), key=lambda r: r.text)
        )

    return source


def _freeze(node: Optional[_Node]) -> VertexLabeledTree:
    """Assign preorder ids to a nested (label, children) structure."""
    if node is None:
        return EMPTY_TREE
    labels: dict[int, Label] = {}
    children: dict[int, tuple[int, ...]] = {}
    counter = itertools.count()

    def assign(n: _Node) -> int:
        v = next(counter)
        labels[v] = n[0]
        children[v] = ()
        children[v] = tuple(assign(c) for c in n[1])
        return v

    root = assign(node)
    return VertexLabeledTree(root, labels, children)


def create_tree(
    P: Program,
    X: AtomSet,
    d: Union[Atom, Rule],
    L: frozenset[Atom] = frozenset(),
    on_demand: bool = False,
) -> VertexLabeledTree:
    """The and-or explanation tree for ``d`` under the answer set ``X``.

    An atom vertex gets one rule child per rule supporting it with the
    vertex's ancestor atoms (and the atom itself) excluded; a rule
    vertex gets one atom child per positive body atom. Subtrees that
    cannot be completed are dropped, and the whole result is the empty
    tree when nothing remains. The top-level call uses ``L = ∅``.
    """
    atoms = as_atom_set(X)
    if isinstance(d, Atom):
        if d not in atoms:
            raise ValueError("unknown explanandum: %s" % d.text)
    elif d not in set(P.rules):
        raise ValueError("unknown explanandum: %s" % d.text)
    source = _rule_source(P, X, on_demand)

    def build_atom(a: Atom, excluded: frozenset[Atom]) -> Optional[_Node]:
        if a in excluded:
            return None
        below = excluded | {a}
        kids = []
        for r in source(a, below):
            sub = build_rule(r, below)
            if sub is not None:
                kids.append(sub)
        if not kids:
            return None
        return (a, kids)

    def build_rule(r: Rule, excluded: frozenset[Atom]) -> Optional[_Node]:
        kids = []
        for b in r.body_pos:
            sub = build_atom(b, excluded)
            if sub is None:
                return None
            kids.append(sub)
        return (r, kids)

    L = frozenset(L)
    if isinstance(d, Atom):
        return _freeze(build_atom(d, L))
    return _freeze(build_rule(d, L))


def calculate_weight(T: VertexLabeledTree, v: int) -> dict[int, int]:
    """Weights for the subtree at ``v``: an atom vertex takes the
    minimum of its children, a rule vertex one plus their sum."""
    W: dict[int, int] = {}
    for u in reversed(T.preorder_from(v)):
        kids = T.child_ids(u)
        if T.is_atom_vertex(u):
            W[u] = min(W[c] for c in kids)
        else:
            W[u] = 1 + sum(W[c] for c in kids)
    return W


def calculate_difference(
    T: VertexLabeledTree, v: int, R: frozenset[int]
) -> dict[int, int]:
    """Per-vertex contribution to the distance from the explanations
    whose rule vertices are ``R``: an atom vertex takes the maximum of
    its children, a rule vertex the sum of its children plus one if it
    is not yet in ``R``."""
    D: dict[int, int] = {}
    for u in reversed(T.preorder_from(v)):
        kids = T.child_ids(u)
        if T.is_atom_vertex(u):
            D[u] = max(D[c] for c in kids)
        else:
            D[u] = (0 if u in R else 1) + sum(D[c] for c in kids)
    return D


def _subtree_key(T: VertexLabeledTree, v: int) -> tuple[str, ...]:
    """Rule-label texts of the subtree at ``v`` in preorder, used to
    break weight ties deterministically."""
    return tuple(
        T.labels[u].text for u in T.preorder_from(v) if T.is_rule_vertex(u)
    )


def extract_exp(
    T: VertexLabeledTree,
    v: int,
    W: dict[int, int],
    anchor: Optional[int] = None,
    op: Callable = min,
) -> Explanation:
    """Extract the explanation that follows the ``op``-weighted child at
    every atom vertex and all children at every rule vertex.

    Rule vertices keep their and-or-tree ids; ``anchor`` is the rule
    vertex the next rule vertex below attaches to.
    """
    labels: dict[int, Label] = {}
    children: dict[int, list[int]] = {}
    root: Optional[int] = None

    def walk(u: int, anchor: Optional[int]) -> None:
        nonlocal root
        if T.is_atom_vertex(u):
            kids = T.child_ids(u)
            best = op(W[c] for c in kids)
            chosen = min(
                (c for c in kids if W[c] == best),
                key=lambda c: _subtree_key(T, c),
            )
            walk(chosen, anchor)
            return
        labels[u] = T.labels[u]
        children[u] = []
        if anchor is None:
            root = u
        else:
            children[anchor].append(u)
        for c in T.child_ids(u):
            walk(c, u)

    walk(v, anchor)
    return Explanation(
        root,
        labels,
        {k: tuple(c) for k, c in children.items()},
        andor=T,
    )


def shortest_explanation(
    P: Program, X: AtomSet, p: Atom, on_demand: bool = False
) -> Explanation:
    """A smallest explanation for ``p``, or the empty explanation when
    the and-or tree is empty."""
    if p not in as_atom_set(X):
        raise ValueError("atom not in answer set: %s" % p.text)
    T = create_tree(P, X, p, on_demand=on_demand)
    if T.is_empty:
        return Explanation(None, andor=T)
    W = calculate_weight(T, T.root)
    return extract_exp(T, T.root, W, None, min)


def distance(Z: frozenset[int], S: Explanation) -> int:
    """How many of ``S``'s rule vertices are not already in ``Z``."""
    tree_ids = set(S.andor.labels)
    if not (set(Z) <= tree_ids and set(S.rule_vertex_ids) <= tree_ids):
        raise ValueError("mismatched trees")
    return len(S.rule_vertex_ids - Z)


def k_different(
    P: Program, X: AtomSet, p: Atom, k: int, on_demand: bool = False
) -> list[Explanation]:
    """Up to ``k`` explanations, each maximizing the number of rule
    vertices unseen in the previous ones; stops early once every
    extractable explanation is fully covered."""
    if k < 1:
        raise ValueError("k must be positive")
    if p not in as_atom_set(X):
        raise ValueError("atom not in answer set: %s" % p.text)
    T = create_tree(P, X, p, on_demand=on_demand)
    if T.is_empty:
        return []
    out: list[Explanation] = []
    R: frozenset[int] = frozenset()
    for i in range(k):
        D = calculate_difference(T, T.root, R)
        if D[T.root] == 0 and out:
            break
        e = extract_exp(T, T.root, D, None, max)
        out.append(e)
        R = R | e.rule_vertex_ids
    return out


def _tree_count(T: VertexLabeledTree) -> int:
    counts: dict[int, int] = {}
    for u in reversed(T.preorder()):
        kids = T.child_ids(u)
        if T.is_atom_vertex(u):
            counts[u] = sum(counts[c] for c in kids)
        else:
            counts[u] = math.prod(counts[c] for c in kids)
    return counts[T.root] if T.root is not None else 0


def enumerate_explanation_trees(
    T: VertexLabeledTree, cap: int = DEFAULT_ENUM_CAP
) -> Iterator[VertexLabeledTree]:
    """All explanation trees inside the and-or tree ``T``: every atom
    vertex picks exactly one rule child, every rule vertex keeps all of
    its children. Vertex ids are shared with ``T``."""
    if T.is_empty:
        return
    if _tree_count(T) > cap:
        raise ValueError(
            "cap exceeded: more than %d explanation trees" % cap
        )

    def choices(u: int) -> Iterator[dict[int, tuple[int, ...]]]:
        kids = T.child_ids(u)
        if T.is_atom_vertex(u):
            for c in kids:
                for sub in choices(c):
                    yield {u: (c,), **sub}
        else:
            parts = [list(choices(c)) for c in kids]
            for combo in itertools.product(*parts):
                merged: dict[int, tuple[int, ...]] = {u: kids}
                for d in combo:
                    merged.update(d)
                yield merged

    for kept in choices(T.root):
        labels = {u: T.labels[u] for u in kept}
        yield VertexLabeledTree(T.root, labels, kept)


def explanation_of_tree(E: VertexLabeledTree, T: VertexLabeledTree) -> Explanation:
    """Collapse an explanation tree to its rule vertices, connecting
    each rule vertex to the rule vertices chosen under its body atoms."""
    labels: dict[int, Label] = {}
    children: dict[int, tuple[int, ...]] = {}
    if E.is_empty:
        return Explanation(None, andor=T)

    def rule_below(u: int) -> int:
        while E.is_atom_vertex(u):
            (u,) = E.child_ids(u)
        return u

    root = rule_below(E.root)
    stack = [root]
    while stack:
        u = stack.pop()
        labels[u] = E.labels[u]
        kids = tuple(rule_below(c) for c in E.child_ids(u))
        children[u] = kids
        stack.extend(kids)
    return Explanation(root, labels, children, andor=T)


def explanation_tree_of(e: Explanation, T: VertexLabeledTree) -> VertexLabeledTree:
    """Rebuild the explanation tree (with atom vertices) that an
    explanation extracted from ``T`` stands for."""
    if e.is_empty:
        return EMPTY_TREE
    chosen = e.rule_vertex_ids
    labels: dict[int, Label] = {}
    children: dict[int, tuple[int, ...]] = {}

    def walk(u: int) -> None:
        labels[u] = T.labels[u]
        if T.is_atom_vertex(u):
            picked = [c for c in T.child_ids(u) if c in chosen]
            children[u] = tuple(picked)
        else:
            children[u] = T.child_ids(u)
        for c in children[u]:
            walk(c)

    walk(T.root)
    return VertexLabeledTree(T.root, labels, children)


def enumerate_explanations(
    P: Program,
    X: AtomSet,
    p: Atom,
    cap: int = DEFAULT_ENUM_CAP,
    on_demand: bool = False,
) -> tuple[Explanation, ...]:
    """Every explanation for ``p``, exactly once, smallest first. This
    is the brute-force oracle the fast paths are tested against."""
    if p not in as_atom_set(X):
        raise ValueError("atom not in answer set: %s" % p.text)
    T = create_tree(P, X, p, on_demand=on_demand)
    seen: dict[frozenset[int], Explanation] = {}
    for E in enumerate_explanation_trees(T, cap=cap):
        e = explanation_of_tree(E, T)
        seen.setdefault(e.rule_vertex_ids, e)
    return tuple(
        sorted(seen.values(), key=lambda e: (e.size, sorted(e.rule_vertex_ids)))
    )
