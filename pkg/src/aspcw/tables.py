"""Table entries for the decomposition-based solvers.

A KTriple (T, F, U) holds three label sets as bitmasks (label l -> bit l-1):
labels of true atoms, false atoms, and not-yet-satisfied rules.  A KPair
extends a triple with the table of its candidate's proper subsets evaluated
against the reduct.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple


def label_mask(labels: Iterable[int]) -> int:
    mask = 0
    for l in labels:
        if l < 1:
            raise ValueError(f"labels are positive integers, got {l}")
        mask |= 1 << (l - 1)
    return mask


def mask_labels(mask: int) -> frozenset[int]:
    out = set()
    i = 1
    while mask:
        if mask & 1:
            out.add(i)
        mask >>= 1
        i += 1
    return frozenset(out)


class KTriple(NamedTuple):
    t: int
    f: int
    u: int

    @classmethod
    def from_sets(cls, true_labels: Iterable[int], false_labels: Iterable[int],
                  unsat_labels: Iterable[int]) -> "KTriple":
        return cls(label_mask(true_labels), label_mask(false_labels),
                   label_mask(unsat_labels))

    def to_sets(self) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
        return mask_labels(self.t), mask_labels(self.f), mask_labels(self.u)

    def __repr__(self) -> str:
        def fmt(mask):
            return "{" + ",".join(map(str, sorted(mask_labels(mask)))) + "}"
        return f"({fmt(self.t)},{fmt(self.f)},{fmt(self.u)})"


class KPair(NamedTuple):
    q: KTriple
    gamma: frozenset[KTriple]


def triple_union(a: KTriple, b: KTriple) -> KTriple:
    return KTriple(a.t | b.t, a.f | b.f, a.u | b.u)


def triple_relabel(q: KTriple, old: int, new: int) -> KTriple:
    if old == new:
        raise ValueError("relabel needs two distinct labels")
    ob, nb = 1 << (old - 1), 1 << (new - 1)

    def move(mask):
        return (mask & ~ob) | nb if mask & ob else mask

    return KTriple(move(q.t), move(q.f), move(q.u))


def triple_edge_update(q: KTriple, gate: int, i: int, j: int) -> KTriple:
    """(T, F, U \\ {j}) if i is in the gate mask, else q unchanged."""
    if i == j:
        raise ValueError("edge update needs two distinct labels")
    if gate & (1 << (i - 1)):
        return KTriple(q.t, q.f, q.u & ~(1 << (j - 1)))
    return q
