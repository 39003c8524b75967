"""The k-expression algebra over signed graphs.

Expressions are trees of introduce / disjoint-union / relabel / edge-insert
nodes.  Evaluating one bottom-up yields a vertex-labeled signed graph; the
width of an expression is the number of distinct labels it uses.

Text grammar (whitespace-insensitive):

    expr := "a(" int "," id ")"            introduce an atom vertex
          | "r(" int "," id ")"            introduce a rule vertex
          | "oplus(" expr "," expr ")"     disjoint union
          | "rho(" int "," int "," expr ")"       relabel i -> j
          | "eta(" sign "," int "," int "," expr ")"  insert sign edges i x j

with sign in {h, p, n, alpha}.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Union

from .errors import ExpressionError, ParseError, SignConflictError
from .graphs import (ALPHA, SIGNS, LabeledSignedGraph, SignedGraph, edge_key,
                     build_signed_incidence_graph, join_graph_signs)
from .program import Program

EDGE_SIGNS = SIGNS + (ALPHA,)


@dataclass(frozen=True)
class Introduce:
    label: int
    vertex: str
    kind: str  # 'atom' or 'rule'

    def __post_init__(self):
        if self.label < 1:
            raise ExpressionError(f"labels are positive integers, got {self.label}")
        if self.kind not in ("atom", "rule"):
            raise ExpressionError(f"bad vertex kind {self.kind!r}")


@dataclass(frozen=True)
class DisjointUnion:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Relabel:
    old: int
    new: int
    child: "Expr"

    def __post_init__(self):
        if self.old < 1 or self.new < 1:
            raise ExpressionError("labels are positive integers")


@dataclass(frozen=True)
class EdgeInsert:
    sign: str
    i: int
    j: int
    child: "Expr"

    def __post_init__(self):
        if self.sign not in EDGE_SIGNS:
            raise ExpressionError(f"bad edge sign {self.sign!r}")
        if self.i == self.j:
            raise ExpressionError("edge insertion needs two distinct labels")
        if self.i < 1 or self.j < 1:
            raise ExpressionError("labels are positive integers")


Expr = Union[Introduce, DisjointUnion, Relabel, EdgeInsert]


def labels_used(expr: Expr) -> frozenset[int]:
    out: set[int] = set()
    stack = [expr]
    while stack:
        node = stack.pop()
        if isinstance(node, Introduce):
            out.add(node.label)
        elif isinstance(node, DisjointUnion):
            stack += [node.left, node.right]
        elif isinstance(node, Relabel):
            out.update((node.old, node.new))
            stack.append(node.child)
        else:
            out.update((node.i, node.j))
            stack.append(node.child)
    return frozenset(out)


def width(expr: Expr) -> int:
    return len(labels_used(expr))


def node_count(expr: Expr) -> int:
    count = 0
    stack = [expr]
    while stack:
        node = stack.pop()
        count += 1
        if isinstance(node, DisjointUnion):
            stack += [node.left, node.right]
        elif isinstance(node, (Relabel, EdgeInsert)):
            stack.append(node.child)
    return count


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def evaluate(expr: Expr) -> LabeledSignedGraph:
    """Bottom-up semantics.  Repeated identical edge inserts are idempotent;
    an insert that would re-sign an existing pair raises SignConflictError."""
    kinds: dict[str, str] = {}
    labels: dict[str, int] = {}
    edges: dict[tuple[str, str], str] = {}
    order: list[str] = []

    def walk(node: Expr) -> None:
        if isinstance(node, Introduce):
            if node.vertex in kinds:
                raise ExpressionError(
                    f"vertex {node.vertex!r} introduced more than once")
            kinds[node.vertex] = node.kind
            labels[node.vertex] = node.label
            order.append(node.vertex)
        elif isinstance(node, DisjointUnion):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, Relabel):
            walk(node.child)
            for v, l in labels.items():
                if l == node.old:
                    labels[v] = node.new
        else:
            walk(node.child)
            left = [v for v in order if labels[v] == node.i]
            right = [v for v in order if labels[v] == node.j]
            for u in left:
                for v in right:
                    key = edge_key(u, v)
                    existing = edges.get(key)
                    if existing is None:
                        edges[key] = node.sign
                    elif existing != node.sign:
                        raise SignConflictError(
                            f"edge {key} already has sign {existing!r}, "
                            f"insert of {node.sign!r} conflicts")

    walk(expr)
    return LabeledSignedGraph(tuple(order), kinds, edges, labels)


def validate_against(expr: Expr, program: Program,
                     joined: frozenset[str] | set[str] = frozenset()) -> list[str]:
    """Compare the evaluated graph with the program's signed incidence graph
    (signs in `joined` collapsed to alpha).  Root labels are ignored; returns
    a list of mismatches, empty on success."""
    got = evaluate(expr)
    want = build_signed_incidence_graph(program)
    if joined:
        want = join_graph_signs(want, frozenset(joined))
    problems = []
    got_vs, want_vs = set(got.vertices), set(want.vertices)
    for v in sorted(want_vs - got_vs):
        problems.append(f"missing vertex {v}")
    for v in sorted(got_vs - want_vs):
        problems.append(f"extra vertex {v}")
    for v in sorted(got_vs & want_vs):
        if got.kinds[v] != want.kinds[v]:
            problems.append(
                f"vertex {v}: kind {got.kinds[v]}, expected {want.kinds[v]}")
    for e in sorted(set(want.edges) - set(got.edges)):
        problems.append(f"missing edge {e[0]}--{e[1]} ({want.edges[e]})")
    for e in sorted(set(got.edges) - set(want.edges)):
        problems.append(f"extra edge {e[0]}--{e[1]} ({got.edges[e]})")
    for e in sorted(set(got.edges) & set(want.edges)):
        if got.edges[e] != want.edges[e]:
            problems.append(
                f"edge {e[0]}--{e[1]}: sign {got.edges[e]}, "
                f"expected {want.edges[e]}")
    return problems


def join_labels(expr: Expr, joined: frozenset[str] | set[str]) -> Expr:
    """Rewrite every edge insert whose sign is in `joined` to sign alpha."""
    if not joined:
        raise ValueError("join needs at least one sign")
    bad = set(joined) - set(SIGNS)
    if bad:
        raise ValueError(f"cannot join non-signs {sorted(bad)}")

    def walk(node: Expr) -> Expr:
        if isinstance(node, Introduce):
            return node
        if isinstance(node, DisjointUnion):
            return DisjointUnion(walk(node.left), walk(node.right))
        if isinstance(node, Relabel):
            return Relabel(node.old, node.new, walk(node.child))
        sign = ALPHA if node.sign in joined else node.sign
        return EdgeInsert(sign, node.i, node.j, walk(node.child))

    return walk(expr)


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def _union_all(parts: list[Expr]) -> Expr:
    expr = parts[0]
    for part in parts[1:]:
        expr = DisjointUnion(expr, part)
    return expr


def trivial_expression(program: Program) -> Expr:
    """One distinct label per vertex, then one edge insert per incidence edge.

    Width is |atoms| + |rules|; always validates against the program.
    """
    sinc = build_signed_incidence_graph(program)
    if not sinc.vertices:
        raise ValueError("an empty program has no expression")
    label = {v: i + 1 for i, v in enumerate(sinc.vertices)}
    expr = _union_all([Introduce(label[v], v, sinc.kinds[v]) for v in sinc.vertices])
    for r in program.rules:
        for sign, part in zip(SIGNS, (r.head, r.pos_body, r.neg_body)):
            for a in sorted(part, key=label.__getitem__):
                expr = EdgeInsert(sign, label[a], label[r.id], expr)
    return expr


def heuristic_expression(program: Program) -> Expr:
    """Best-effort low-width expression via twin merging: vertices with
    identical signed neighborhoods share one label.

    Twin classes are pairwise fully adjacent with a single sign or fully
    non-adjacent, so a single edge insert per adjacent class pair rebuilds
    the graph exactly.
    """
    sinc = build_signed_incidence_graph(program)
    if not sinc.vertices:
        raise ValueError("an empty program has no expression")
    neighborhoods: dict[str, frozenset[tuple[str, str]]] = {v: frozenset() for v in sinc.vertices}
    adj: dict[str, dict[str, str]] = {v: {} for v in sinc.vertices}
    for (u, v), s in sinc.edges.items():
        adj[u][v] = s
        adj[v][u] = s
    for v in sinc.vertices:
        neighborhoods[v] = frozenset(adj[v].items())

    classes: dict[frozenset, int] = {}
    label = {}
    for v in sinc.vertices:
        sig = neighborhoods[v]
        if sig not in classes:
            classes[sig] = len(classes) + 1
        label[v] = classes[sig]

    expr = _union_all([Introduce(label[v], v, sinc.kinds[v]) for v in sinc.vertices])
    quotient: dict[tuple[int, int], str] = {}
    for (u, v), s in sinc.edges.items():
        cu, cv = label[u], label[v]
        quotient[(min(cu, cv), max(cu, cv))] = s
    for (cu, cv), s in sorted(quotient.items()):
        expr = EdgeInsert(s, cu, cv, expr)
    return expr


# ---------------------------------------------------------------------------
# Text and JSON forms
# ---------------------------------------------------------------------------

_EXPR_TOKEN = re.compile(r"\s*([a-zA-Z_][a-zA-Z0-9_]*|\d+|[(),])")


def parse_expression(text: str) -> Expr:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _EXPR_TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos:].strip()[0]!r} "
                                 f"in expression")
            break
        tokens.append(m.group(1))
        pos = m.end()
    it = iter(tokens)

    def take():
        try:
            return next(it)
        except StopIteration:
            raise ParseError("unexpected end of expression") from None

    def expect(want):
        tok = take()
        if tok != want:
            raise ParseError(f"expected {want!r}, found {tok!r} in expression")

    def number():
        tok = take()
        if not tok.isdigit() or int(tok) < 1:
            raise ParseError(f"expected positive label, found {tok!r}")
        return int(tok)

    def parse() -> Expr:
        head = take()
        expect("(")
        try:
            if head in ("a", "r"):
                label = number()
                expect(",")
                vertex = take()
                expect(")")
                kind = "atom" if head == "a" else "rule"
                return Introduce(label, vertex, kind)
            if head == "oplus":
                left = parse()
                expect(",")
                right = parse()
                expect(")")
                return DisjointUnion(left, right)
            if head == "rho":
                old = number()
                expect(",")
                new = number()
                expect(",")
                child = parse()
                expect(")")
                return Relabel(old, new, child)
            if head == "eta":
                sign = take()
                if sign not in EDGE_SIGNS:
                    raise ParseError(f"bad edge sign {sign!r}")
                expect(",")
                i = number()
                expect(",")
                j = number()
                expect(",")
                child = parse()
                expect(")")
                return EdgeInsert(sign, i, j, child)
        except ExpressionError as exc:
            raise ParseError(str(exc)) from exc
        raise ParseError(f"unknown expression operator {head!r}")

    expr = parse()
    leftover = next(it, None)
    if leftover is not None:
        raise ParseError(f"trailing input {leftover!r} after expression")
    _check_unique_introductions(expr)
    return expr


def _check_unique_introductions(expr: Expr) -> None:
    seen: set[str] = set()
    stack = [expr]
    while stack:
        node = stack.pop()
        if isinstance(node, Introduce):
            if node.vertex in seen:
                raise ParseError(f"vertex {node.vertex!r} introduced more than once")
            seen.add(node.vertex)
        elif isinstance(node, DisjointUnion):
            stack += [node.left, node.right]
        else:
            stack.append(node.child)


def serialize_expression(expr: Expr) -> str:
    if isinstance(expr, Introduce):
        tag = "a" if expr.kind == "atom" else "r"
        return f"{tag}({expr.label},{expr.vertex})"
    if isinstance(expr, DisjointUnion):
        return f"oplus({serialize_expression(expr.left)},{serialize_expression(expr.right)})"
    if isinstance(expr, Relabel):
        return f"rho({expr.old},{expr.new},{serialize_expression(expr.child)})"
    return f"eta({expr.sign},{expr.i},{expr.j},{serialize_expression(expr.child)})"


def expression_to_json(expr: Expr) -> str:
    def walk(node: Expr):
        if isinstance(node, Introduce):
            return {"op": "introduce", "label": node.label,
                    "vertex": node.vertex, "kind": node.kind}
        if isinstance(node, DisjointUnion):
            return {"op": "union", "left": walk(node.left), "right": walk(node.right)}
        if isinstance(node, Relabel):
            return {"op": "relabel", "old": node.old, "new": node.new,
                    "child": walk(node.child)}
        return {"op": "edge", "sign": node.sign, "i": node.i, "j": node.j,
                "child": walk(node.child)}

    return json.dumps(walk(expr), indent=2)


def expression_from_json(text: str) -> Expr:
    def walk(data) -> Expr:
        op = data["op"]
        if op == "introduce":
            return Introduce(data["label"], data["vertex"], data["kind"])
        if op == "union":
            return DisjointUnion(walk(data["left"]), walk(data["right"]))
        if op == "relabel":
            return Relabel(data["old"], data["new"], walk(data["child"]))
        if op == "edge":
            return EdgeInsert(data["sign"], data["i"], data["j"], walk(data["child"]))
        raise ParseError(f"unknown expression operator {op!r}")

    return walk(json.loads(text))
