"""Packed table entries shared by the two solvers.

A triple (T, F, U) over labels 1..W is stored as a single integer with three
W-bit fields: T | F << W | U << 2W.  Unions become bitwise or; relabeling and
edge updates become shifted mask operations.  Only the solver internals use
this form; the public API exposes KTriple / KPair.
"""

from __future__ import annotations

from .expression import DisjointUnion, EdgeInsert, Expr, Introduce, Relabel, labels_used
from .tables import KTriple


def field_width(expr: Expr) -> tuple[int, int]:
    """(number of distinct labels, bit width of one packed field)."""
    labels = labels_used(expr)
    return len(labels), max(labels)


def pack(triple: KTriple, w: int) -> int:
    return triple.t | triple.f << w | triple.u << 2 * w

def unpack(key: int, w: int) -> KTriple:
    mask = (1 << w) - 1
    return KTriple(key & mask, key >> w & mask, key >> 2 * w & mask)


def relabel_fn(old: int, new: int, w: int):
    bit = 1 << (old - 1)
    mask3 = bit | bit << w | bit << 2 * w
    keep = ~mask3
    shift = new - old

    if shift > 0:
        def move(key: int) -> int:
            hit = key & mask3
            return (key & keep) | hit << shift if hit else key
    else:
        def move(key: int) -> int:
            hit = key & mask3
            return (key & keep) | hit >> -shift if hit else key
    return move


def op_label(node: Expr) -> str:
    if isinstance(node, Introduce):
        tag = "a" if node.kind == "atom" else "r"
        return f"{tag}({node.label},{node.vertex})"
    if isinstance(node, DisjointUnion):
        return "oplus"
    if isinstance(node, Relabel):
        return f"rho({node.old},{node.new})"
    assert isinstance(node, EdgeInsert)
    return f"eta({node.sign},{node.i},{node.j})"
