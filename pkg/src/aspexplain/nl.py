"""Natural-language rendering of explanations via predicate templates."""
from __future__ import annotations

import re

from .model import Rule
from .parser import LookupTable
from .trees import Explanation


def _apply_template(template: str, args: tuple[str, ...]) -> str:
    def repl(m: re.Match) -> str:
        return args[int(m.group(1)) - 1]

    return re.sub(r"\$(\d+)", repl, template)


def _render_vertex(rule: Rule, table: LookupTable) -> str:
    head = rule.head
    if head is not None:
        template = table.get(head.predicate, head.arity)
        if template is not None:
            args = tuple(t.unquoted for t in head.args)
            return _apply_template(template, args)
    return rule.display


def render_nl(e: Explanation, t: LookupTable) -> str:
    """One line per rule vertex in pre-order, indented two spaces per
    tree level; each line verbalizes the rule's head through the look-up
    table, falling back to the rule text itself."""
    lines = []
    for v in e.preorder():
        rule = e.labels[v]
        assert isinstance(rule, Rule)
        lines.append("  " * e.depth(v) + _render_vertex(rule, t))
    return "\n".join(lines) + ("\n" if lines else "")
