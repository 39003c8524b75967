"""Answer-set existence by dynamic programming over a k-expression.

Each subexpression gets a set of pairs (Q, Gamma): Q is a triple for a
candidate interpretation I, and every member of Gamma is a triple for a
proper subset J of I evaluated against the reduct w.r.t. I.  An answer set
exists iff some root pair has Q_U empty while every member of Gamma keeps a
nonempty U component (no proper subset survives as a model of the reduct).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ._packed import field_width, op_label, relabel_fn, unpack
from .errors import ExpressionError
from .expression import DisjointUnion, EdgeInsert, Expr, Introduce, Relabel
from .tables import KPair, KTriple

try:
    import numpy as _np
except ImportError:  # pragma: no cover - numpy is a declared dependency
    _np = None

OnNode = Callable[[int, str, int], None]

PackedPair = tuple[int, frozenset[int]]


@dataclass(frozen=True, order=True)
class TracePair:
    q: KTriple
    gamma: tuple[KTriple, ...]


@dataclass(frozen=True)
class TraceNode:
    index: int
    op: str
    pairs: tuple[TracePair, ...]


def _apply_edges_bulk(table: set[PackedPair], ops: list[tuple[str, int, int]],
                      w: int) -> set[PackedPair]:
    """Applies a chain of edge insertions to every pair at once.

    Edge insertion acts independently on each pair and only ever clears U
    bits, so a run of consecutive insertions can be applied elementwise to
    flat arrays and the tables deduplicated once at the end; the result is
    the same set a node-by-node fold would produce.
    """
    pairs = list(table)
    mask = (1 << w) - 1
    counts = [len(g) for _, g in pairs]
    flat = [s for _, g in pairs for s in g]
    qt = _np.fromiter(((q & mask) for q, _ in pairs), _np.int64, len(pairs))
    qf = _np.fromiter((((q >> w) & mask) for q, _ in pairs),
                      _np.int64, len(pairs))
    qu = _np.fromiter(((q >> 2 * w) for q, _ in pairs), _np.int64, len(pairs))
    gt = _np.fromiter(((s & mask) for s in flat), _np.int64, len(flat))
    gf = _np.fromiter((((s >> w) & mask) for s in flat), _np.int64, len(flat))
    gu = _np.fromiter(((s >> 2 * w) for s in flat), _np.int64, len(flat))
    counts_arr = _np.asarray(counts, dtype=_np.int64)
    for sign, i, j in ops:
        ibit = _np.int64(1 << (i - 1))
        keep = _np.int64(~(1 << (j - 1)))
        if sign == "h":
            q_hit = (qt & ibit) != 0
            g_hit = (gt & ibit) != 0
        elif sign == "p":
            q_hit = (qf & ibit) != 0
            g_hit = (gf & ibit) != 0
        else:
            q_hit = (qt & ibit) != 0
            g_hit = _np.repeat(q_hit, counts_arr)
        qu = _np.where(q_hit, qu & keep, qu)
        gu = _np.where(g_hit, gu & keep, gu)
    qul = qu.tolist()
    gul = gu.tolist()
    out: set[PackedPair] = set()
    pos = 0
    shift = 2 * w
    for idx, (q, _) in enumerate(pairs):
        c = counts[idx]
        gamma = frozenset(
            (flat[p] & ~(mask << shift)) | (gul[p] << shift)
            for p in range(pos, pos + c))
        out.add(((q & ~(mask << shift)) | (qul[idx] << shift), gamma))
        pos += c
    return out


def _fold(expr: Expr, trace: list[TraceNode] | None = None,
          on_node: OnNode | None = None) -> tuple[set[PackedPair], int]:
    k, w = field_width(expr)
    q_limit = 1 << (3 * k)
    # The full pair bound 2^(3k) * 2^(2^(3k)) is astronomically large except
    # for tiny k; assert it only when it is a representable check.
    pair_limit = q_limit * (1 << (1 << (3 * k))) if 3 * k <= 12 else None
    counter = [0]
    # A per-node trace needs every intermediate table, but the plain decision
    # can batch runs of edge insertions through the vectorized path (which
    # needs each field to fit a machine word).
    bulk_ok = trace is None and on_node is None and _np is not None and w <= 62

    def fold(node: Expr) -> set[PackedPair]:
        if bulk_ok and isinstance(node, EdgeInsert) \
                and node.sign in ("h", "p", "n"):
            ops = []
            while isinstance(node, EdgeInsert) and node.sign in ("h", "p", "n"):
                ops.append((node.sign, node.i, node.j))
                node = node.child
            ops.reverse()
            table = _apply_edges_bulk(fold(node), ops, w)
            counter[0] += len(ops)
            if pair_limit is not None:
                assert len(table) <= pair_limit, "pair table exceeds its bound"
            assert len({q for q, _ in table}) <= q_limit, \
                "pair projection exceeds 2^(3k) bound"
            return table
        if isinstance(node, Introduce):
            bit = 1 << (node.label - 1)
            if node.kind == "atom":
                table = {(bit, frozenset({bit << w})),
                         (bit << w, frozenset())}
            else:
                table = {(bit << 2 * w, frozenset())}
        elif isinstance(node, DisjointUnion):
            left = fold(node.left)
            right = fold(node.right)
            table = set()
            for q1, g1 in left:
                for q2, g2 in right:
                    gamma = {s1 | s2 for s1 in g1 for s2 in g2}
                    gamma.update(q1 | s for s in g2)
                    gamma.update(s | q2 for s in g1)
                    table.add((q1 | q2, frozenset(gamma)))
        elif isinstance(node, Relabel):
            move = relabel_fn(node.old, node.new, w)
            table = {(move(q), frozenset(move(s) for s in g))
                     for q, g in fold(node.child)}
        else:
            if node.sign not in ("h", "p", "n"):
                raise ExpressionError(
                    f"solver requires signed edges, got {node.sign!r}")
            gate = 1 << (node.i - 1)
            if node.sign == "p":
                gate <<= w
            clear = ~(1 << (node.j - 1 + 2 * w))
            child = fold(node.child)
            table = set()
            if node.sign == "n":
                # The outer Q's T component gates every member of Gamma: once
                # I hits the negative body, the rule vanishes from the reduct
                # for all subsets J, whether or not J itself touches label i.
                for q, g in child:
                    if q & gate:
                        table.add((q & clear,
                                   frozenset(s & clear for s in g)))
                    else:
                        table.add((q, g))
            else:
                for q, g in child:
                    table.add((
                        q & clear if q & gate else q,
                        frozenset(s & clear if s & gate else s for s in g)))
        if pair_limit is not None:
            assert len(table) <= pair_limit, "pair table exceeds its bound"
        assert len({q for q, _ in table}) <= q_limit, \
            "pair projection exceeds 2^(3k) bound"
        counter[0] += 1
        if on_node is not None:
            on_node(counter[0], op_label(node), len(table))
        if trace is not None:
            trace.append(TraceNode(counter[0], op_label(node), tuple(sorted(
                TracePair(unpack(q, w), tuple(sorted(unpack(s, w) for s in g)))
                for q, g in table))))
        return table

    return fold(expr), w


def dp_asp(expr: Expr, trace: list[TraceNode] | None = None) -> set[KPair]:
    table, w = _fold(expr, trace=trace)
    return {KPair(unpack(q, w), frozenset(unpack(s, w) for s in g))
            for q, g in table}


def has_answer_set_dp(expr: Expr, on_node: OnNode | None = None) -> bool:
    """True iff some root pair has Q_U empty and no Gamma member with empty U."""
    table, w = _fold(expr, on_node=on_node)
    u_field = ((1 << w) - 1) << 2 * w
    return any(
        not q & u_field and all(s & u_field for s in g)
        for q, g in table)
