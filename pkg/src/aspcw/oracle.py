"""Exhaustive ground-truth semantics: the trusted slow path.

Everything here is deliberately brute force; it exists to cross-check the
decomposition-based solvers on small instances.
"""

from __future__ import annotations

from typing import Iterator, Mapping

from .errors import BoundExceededError
from .program import Program, Rule, is_model, is_model_of_rule, reduct
from .tables import KTriple

DEFAULT_ENUMERATION_BOUND = 20


def _subsets(atoms: tuple[str, ...]) -> Iterator[frozenset[str]]:
    # Binary counting with the first atom as the least significant bit;
    # fixed so outputs are deterministic and diffable.
    n = len(atoms)
    for m in range(1 << n):
        yield frozenset(atoms[i] for i in range(n) if m >> i & 1)


def _check_bound(program: Program, bound: int) -> None:
    if len(program.atoms) > bound:
        raise BoundExceededError(
            f"{len(program.atoms)} atoms exceeds enumeration bound {bound}")


def enumerate_models(program: Program,
                     bound: int = DEFAULT_ENUMERATION_BOUND) -> list[frozenset[str]]:
    _check_bound(program, bound)
    return [i for i in _subsets(program.atoms) if is_model(program, i)]


def is_answer_set(program: Program, candidate: frozenset[str] | set[str]) -> bool:
    """Model of the program with no proper subset modeling the reduct.

    The minimality check enumerates proper subsets directly, with no pruning.
    """
    candidate = frozenset(candidate)
    if not is_model(program, candidate):
        return False
    red = reduct(program, candidate)
    ordered = tuple(sorted(candidate))
    for sub in _subsets(ordered):
        if sub != candidate and is_model(red, sub):
            return False
    return True


def enumerate_answer_sets(program: Program,
                          bound: int = DEFAULT_ENUMERATION_BOUND) -> list[frozenset[str]]:
    _check_bound(program, bound)
    return [m for m in enumerate_models(program, bound)
            if is_answer_set(program, m)]


def interpretation_triple(program: Program, labeling: Mapping[str, int],
                          interp: frozenset[str] | set[str]) -> KTriple:
    """The unique triple whose components are the labels of true atoms,
    false atoms, and rules not satisfied by the interpretation."""
    try:
        return KTriple.from_sets(
            (labeling[a] for a in interp),
            (labeling[a] for a in program.atoms if a not in interp),
            (labeling[r.id] for r in program.rules
             if not is_model_of_rule(r, frozenset(interp))),
        )
    except KeyError as exc:
        raise KeyError(f"unlabeled vertex {exc.args[0]!r}") from None


def reduct_interpretation_triple(program: Program, labeling: Mapping[str, int],
                                 interp: frozenset[str] | set[str],
                                 sub: frozenset[str] | set[str]) -> KTriple:
    """Triple of `sub` evaluated against the reduct w.r.t. `interp`: the U
    component collects rules that survive the reduct and are unsatisfied by
    `sub`."""
    interp = frozenset(interp)
    sub = frozenset(sub)

    def survives_unsatisfied(r: Rule) -> bool:
        if r.neg_body & interp:
            return False
        stripped = Rule(r.id, r.head, r.pos_body, frozenset())
        return not is_model_of_rule(stripped, sub)

    try:
        return KTriple.from_sets(
            (labeling[a] for a in sub),
            (labeling[a] for a in program.atoms if a not in sub),
            (labeling[r.id] for r in program.rules if survives_unsatisfied(r)),
        )
    except KeyError as exc:
        raise KeyError(f"unlabeled vertex {exc.args[0]!r}") from None
