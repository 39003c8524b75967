"""Decision toolkit for ground disjunctive answer-set programs parameterized
by the clique-width of their signed incidence graphs."""

from .dp_answersets import dp_asp, has_answer_set_dp
from .dp_classical import dp_classical, has_model_dp
from .expression import (evaluate, heuristic_expression, join_labels,
                         parse_expression, serialize_expression,
                         trivial_expression, validate_against, width)
from .oracle import enumerate_answer_sets, enumerate_models, is_answer_set
from .program import (Program, Rule, is_model, parse_program, reduct,
                      serialize_program, validate_program)
from .tables import KPair, KTriple

__all__ = [
    "KPair", "KTriple", "Program", "Rule",
    "dp_asp", "dp_classical", "enumerate_answer_sets", "enumerate_models",
    "evaluate", "has_answer_set_dp", "has_model_dp", "heuristic_expression",
    "is_answer_set", "is_model", "join_labels", "parse_expression",
    "parse_program", "reduct", "serialize_expression", "serialize_program",
    "trivial_expression", "validate_against", "validate_program", "width",
]
