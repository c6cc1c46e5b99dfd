"""DOT and JSON output for trees, explanations and e-graphs, plus the
JSON reader used by the conversion commands."""
from __future__ import annotations

import json
from typing import Union

from .justify import MARKER_DISPLAY, MARKERS, AnnotatedAtom, EGraph, Node
from .model import Atom, Rule
from .parser import ParseError, parse_atom, parse_program
from .trees import Explanation, Label, VertexLabeledTree

Emittable = Union[VertexLabeledTree, EGraph]


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def _node_display(n: Node) -> str:
    return MARKER_DISPLAY[n] if isinstance(n, str) else n.text


def _egraph_ids(G: EGraph) -> dict[Node, int]:
    def key(n: Node):
        return (1, n, "") if isinstance(n, str) else (0, n.atom.text, n.sign)

    return {n: i for i, n in enumerate(sorted(G.nodes, key=key))}


def emit_dot(t: Emittable) -> str:
    """DOT text: atom vertices as ellipses, rule vertices as boxes,
    e-graph edges labeled with their sign."""
    lines = ["digraph explanation {"]
    if isinstance(t, EGraph):
        ids = _egraph_ids(t)
        for n, i in ids.items():
            shape = "plaintext" if isinstance(n, str) else "ellipse"
            lines.append(
                '  n%d [label="%s", shape=%s];'
                % (i, _dot_escape(_node_display(n)), shape)
            )
        for src, dst, sign in sorted(
            t.edges, key=lambda e: (ids[e[0]], ids[e[1]], e[2])
        ):
            lines.append(
                '  n%d -> n%d [label="%s"];' % (ids[src], ids[dst], sign)
            )
    else:
        for v in sorted(t.labels):
            lbl = t.labels[v]
            shape = "ellipse" if isinstance(lbl, Atom) else "box"
            lines.append(
                '  n%d [label="%s", shape=%s];'
                % (v, _dot_escape(lbl.text), shape)
            )
        for v in sorted(t.labels):
            for c in t.child_ids(v):
                lines.append("  n%d -> n%d;" % (v, c))
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_json(t: Emittable) -> str:
    """The JSON envelope shared by trees, explanations and e-graphs."""
    if isinstance(t, EGraph):
        ids = _egraph_ids(t)
        vertices = []
        for n, i in sorted(ids.items(), key=lambda kv: kv[1]):
            if isinstance(n, str):
                kind = "marker"
                text = n
            else:
                kind = "pos_atom" if n.sign == "+" else "neg_atom"
                text = n.atom.text
            vertices.append({"id": i, "label_kind": kind, "label_text": text})
        edges = [
            {"from": ids[src], "to": ids[dst], "sign": sign}
            for src, dst, sign in sorted(
                t.edges, key=lambda e: (ids[e[0]], ids[e[1]], e[2])
            )
        ]
        doc = {"kind": "egraph", "root": None, "vertices": vertices,
               "edges": edges}
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    kind = "explanation" if isinstance(t, Explanation) else "tree"
    vertices = [
        {
            "id": v,
            "label_kind": "atom" if isinstance(t.labels[v], Atom) else "rule",
            "label_text": t.labels[v].text,
        }
        for v in sorted(t.labels)
    ]
    edges = [
        {"from": v, "to": c}
        for v in sorted(t.labels)
        for c in t.child_ids(v)
    ]
    doc = {"kind": kind, "root": t.root, "vertices": vertices, "edges": edges}
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _parse_rule_text(text: str) -> Rule:
    P = parse_program(text + ".")
    if len(P.rules) != 1:
        raise ParseError("expected a single rule", 1, 1)
    return P.rules[0]


def parse_json(text: str) -> Emittable:
    """Read back anything produced by :func:`emit_json`."""
    doc = json.loads(text)
    kind = doc.get("kind")
    if kind == "egraph":
        nodes_by_id: dict[int, Node] = {}
        for v in doc["vertices"]:
            lk = v["label_kind"]
            if lk == "marker":
                if v["label_text"] not in MARKERS:
                    raise ValueError("unknown marker: %s" % v["label_text"])
                nodes_by_id[v["id"]] = v["label_text"]
            else:
                sign = "+" if lk == "pos_atom" else "-"
                nodes_by_id[v["id"]] = AnnotatedAtom(
                    parse_atom(v["label_text"]), sign
                )
        edges = frozenset(
            (nodes_by_id[e["from"]], nodes_by_id[e["to"]], e["sign"])
            for e in doc["edges"]
        )
        return EGraph(frozenset(nodes_by_id.values()), edges)
    if kind not in ("tree", "explanation"):
        raise ValueError("unknown kind: %r" % kind)
    labels: dict[int, Label] = {}
    for v in doc["vertices"]:
        if v["label_kind"] == "atom":
            labels[v["id"]] = parse_atom(v["label_text"])
        elif v["label_kind"] == "rule":
            labels[v["id"]] = _parse_rule_text(v["label_text"])
        else:
            raise ValueError("unknown label kind: %r" % v["label_kind"])
    children: dict[int, list[int]] = {v: [] for v in labels}
    for e in doc["edges"]:
        children[e["from"]].append(e["to"])
    frozen = {v: tuple(c) for v, c in children.items()}
    root = doc.get("root")
    if root is None and labels:
        raise ValueError("missing root")
    if kind == "explanation":
        return Explanation(root, labels, frozen)
    return VertexLabeledTree(root, labels, frozen)
