"""Classical-model existence by dynamic programming over a k-expression.

Each subexpression gets a set of triples (T, F, U): for some interpretation
of the atoms introduced so far, T and F hold the labels of true and false
atoms and U the labels of rules not yet satisfied.  A model exists iff some
root triple has an empty U component.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ._packed import field_width, op_label, relabel_fn, unpack
from .errors import ExpressionError
from .expression import DisjointUnion, EdgeInsert, Expr, Introduce, Relabel
from .tables import KTriple

OnNode = Callable[[int, str, int], None]


@dataclass(frozen=True)
class TraceNode:
    index: int
    op: str
    triples: tuple[KTriple, ...]


def _fold(expr: Expr, trace: list[TraceNode] | None = None,
          on_node: OnNode | None = None) -> tuple[set[int], int]:
    """Returns (packed root table, field width)."""
    k, w = field_width(expr)
    limit = 1 << (3 * k)
    counter = [0]

    def fold(node: Expr) -> set[int]:
        if isinstance(node, Introduce):
            bit = 1 << (node.label - 1)
            if node.kind == "atom":
                table = {bit, bit << w}
            else:
                table = {bit << 2 * w}
        elif isinstance(node, DisjointUnion):
            left = fold(node.left)
            right = fold(node.right)
            table = {a | b for a in left for b in right}
        elif isinstance(node, Relabel):
            move = relabel_fn(node.old, node.new, w)
            table = {move(key) for key in fold(node.child)}
        else:
            if node.sign not in ("h", "p", "n"):
                raise ExpressionError(
                    f"solver requires signed edges, got {node.sign!r}")
            gate = 1 << (node.i - 1)
            if node.sign == "p":
                gate <<= w
            clear = ~(1 << (node.j - 1 + 2 * w))
            table = {key & clear if key & gate else key
                     for key in fold(node.child)}
        assert len(table) <= limit, "triple table exceeds 2^(3k) bound"
        counter[0] += 1
        if on_node is not None:
            on_node(counter[0], op_label(node), len(table))
        if trace is not None:
            trace.append(TraceNode(
                counter[0], op_label(node),
                tuple(sorted(unpack(key, w) for key in table))))
        return table

    return fold(expr), w


def dp_classical(expr: Expr, trace: list[TraceNode] | None = None) -> set[KTriple]:
    table, w = _fold(expr, trace=trace)
    return {unpack(key, w) for key in table}


def has_model_dp(expr: Expr, on_node: OnNode | None = None) -> bool:
    """True iff some root triple has U = empty."""
    table, w = _fold(expr, on_node=on_node)
    u_field = ((1 << w) - 1) << 2 * w
    return any(not key & u_field for key in table)
