"""Graphviz DOT output of Hasse diagrams, ranked by height."""

from __future__ import annotations

from .order import Poset


def poset_to_dot(p: Poset, name: str = "hasse") -> str:
    """A DOT digraph of the cover relation.

    Nodes are grouped into ranks by height with the bottom at rank 0;
    rankdir=BT so covers point upward.  Node and edge order follow the
    element order, so output is byte-stable.
    """
    h = p.heights()
    lines = [f"digraph {name} {{", "  rankdir=BT;", '  node [shape=box, style=rounded];']
    for level in range(int(h.max()) + 1 if p.n else 0):
        members = [p.elements[i] for i in range(p.n) if h[i] == level]
        if members:
            row = " ".join(f'"{m}";' for m in members)
            lines.append(f"  {{ rank=same; {row} }}")
    for i, j in p.covers():
        lines.append(f'  "{p.elements[i]}" -> "{p.elements[j]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
