"""Shared fixtures: the two-rule running example, its 3-expression, and the
small exists-forall formula used by the reduction tests."""

import pytest

from aspcw.expression import parse_expression
from aspcw.generators import Literal, QbfEA
from aspcw.program import parse_program
from aspcw.tables import KTriple

EXAMPLE1_TEXT = "x :- not y.\n:- x, not y.\n"

FIG2_TEXT = ("eta(n,3,2, oplus( rho(3,2, eta(p,1,3, oplus( eta(h,1,2, "
             "oplus(a(1,x), r(2,r1)) ), r(3,r2)) )), a(3,y) ))")

# Root labeling of the 3-expression above.
EXAMPLE1_LABELING = {"x": 1, "r1": 2, "r2": 2, "y": 3}


def triple(ts, fs, us) -> KTriple:
    return KTriple.from_sets(ts, fs, us)


@pytest.fixture
def example1():
    return parse_program(EXAMPLE1_TEXT)


@pytest.fixture
def fig2():
    return parse_expression(FIG2_TEXT)


@pytest.fixture
def ea_formula():
    """exists x1 x2 forall y1 y2 ((x1 and not y2) or (not x2 and y2))."""
    return QbfEA(
        ("x1", "x2"), ("y1", "y2"),
        ((Literal("x1", False), Literal("y2", True)),
         (Literal("x2", True), Literal("y2", False))))
