"""Ground disjunctive programs: data model, parser, and basic transforms.

A program is a set of named atoms plus rules of the form

    a1 | ... | al :- b1, ..., bm, not c1, ..., not cn.

Atoms are plain strings.  Rules keep their head, positive body, and negative
body as frozensets of atom names; the three parts must be pairwise disjoint
(an atom occurring in two parts of one rule would need two signs on a single
incidence edge, which the graph model does not support).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .errors import NormalizationError, ParseError

ATOM_NAME = re.compile(r"^[a-z][A-Za-z0-9_]*$")

AtomSet = frozenset[str]


@dataclass(frozen=True)
class Rule:
    id: str
    head: AtomSet
    pos_body: AtomSet
    neg_body: AtomSet


@dataclass(frozen=True)
class Program:
    atoms: tuple[str, ...]
    rules: tuple[Rule, ...]

    def atom_index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.atoms)}


def make_rule(rule_id: str,
              head: Iterable[str] = (),
              pos_body: Iterable[str] = (),
              neg_body: Iterable[str] = ()) -> Rule:
    return Rule(rule_id, frozenset(head), frozenset(pos_body), frozenset(neg_body))


def is_model_of_rule(rule: Rule, interp: AtomSet | set[str]) -> bool:
    """True iff (pos_body ⊆ I and neg_body ∩ I = ∅) implies head ∩ I ≠ ∅."""
    if rule.pos_body <= interp and not (rule.neg_body & interp):
        return bool(rule.head & interp)
    return True


def is_model(program: Program, interp: AtomSet | set[str]) -> bool:
    return all(is_model_of_rule(r, interp) for r in program.rules)


def reduct(program: Program, interp: AtomSet | set[str]) -> Program:
    """Drop rules whose negative body meets I; strip negative bodies from the rest.

    Atoms and the ids of surviving rules are preserved.
    """
    kept = tuple(
        Rule(r.id, r.head, r.pos_body, frozenset())
        for r in program.rules
        if not (r.neg_body & interp)
    )
    return Program(program.atoms, kept)


def validate_program(program: Program) -> list[str]:
    """Return a list of invariant violations; empty means the program is valid."""
    problems = []
    seen_atoms = set()
    for a in program.atoms:
        if not ATOM_NAME.match(a) or a == "not":
            problems.append(f"bad atom name {a!r}")
        if a in seen_atoms:
            problems.append(f"duplicate atom name {a!r}")
        seen_atoms.add(a)
    known = set(program.atoms)
    seen_ids = set()
    for r in program.rules:
        if r.id in seen_ids:
            problems.append(f"duplicate rule id {r.id!r}")
        seen_ids.add(r.id)
        for part_name, part in (("head", r.head), ("pos_body", r.pos_body),
                                ("neg_body", r.neg_body)):
            missing = part - known
            if missing:
                problems.append(
                    f"rule {r.id}: {part_name} references unknown atoms "
                    f"{sorted(missing)}")
        overlap = (r.head & r.pos_body) | (r.head & r.neg_body) | (r.pos_body & r.neg_body)
        if overlap:
            problems.append(
                f"rule {r.id}: atoms {sorted(overlap)} occur in more than one part")
    return problems


# ---------------------------------------------------------------------------
# Parsing and serialization
#
# Grammar (line-oriented, UTF-8, '%' starts a comment):
#   rule    := ["@" id ":"] head? (":-" body)? "."
#   head    := atom ("|" atom)*
#   body    := literal ("," literal)*
#   literal := atom | "not" atom
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*)
  | (?P<arrow>:-)
  | (?P<punct>[|,.@:])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
""", re.VERBOSE)


def _tokenize(text: str) -> list[tuple[str, str, int, int]]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind not in ("ws", "comment"):
            tokens.append((kind, value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
        pos = m.end()
    return tokens


class _RuleParser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else (None, "", 1, 1)
            raise ParseError("unexpected end of input", last[2], last[3])
        self.pos += 1
        return tok

    def expect(self, value):
        kind, val, line, col = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val!r}", line, col)

    def atom(self) -> tuple[str, int, int]:
        kind, val, line, col = self.take()
        if kind != "ident" or not ATOM_NAME.match(val) or val == "not":
            raise ParseError(f"expected atom name, found {val!r}", line, col)
        return val, line, col


def parse_program(text: str) -> Program:
    """Parse program text; atoms are kept in first-occurrence order.

    Unnamed rules get ids r1, r2, ... by position in the file.
    """
    tokens = _tokenize(text)
    parser = _RuleParser(tokens)
    atoms: dict[str, None] = {}
    rules: list[Rule] = []
    used_ids: set[str] = set()

    def note(atom: str) -> str:
        atoms.setdefault(atom, None)
        return atom

    while parser.peek() is not None:
        index = len(rules) + 1
        rule_id = f"r{index}"
        kind, val, line, col = parser.peek()
        if val == "@":
            parser.take()
            nkind, name, nline, ncol = parser.take()
            if nkind != "ident" or not ATOM_NAME.match(name):
                raise ParseError(f"bad rule id {name!r}", nline, ncol)
            rule_id = name
            parser.expect(":")
        if rule_id in used_ids:
            raise ParseError(f"duplicate rule id {rule_id!r}", line, col)

        head: list[str] = []
        pos_body: list[str] = []
        neg_body: list[str] = []
        kind, val, line, col = parser.peek()
        if val not in (".", ":-"):
            head.append(note(parser.atom()[0]))
            while parser.peek() and parser.peek()[1] == "|":
                parser.take()
                head.append(note(parser.atom()[0]))
        if parser.peek() and parser.peek()[1] == ":-":
            parser.take()
            while True:
                tok = parser.peek()
                if tok and tok[1] == "not":
                    parser.take()
                    neg_body.append(note(parser.atom()[0]))
                else:
                    pos_body.append(note(parser.atom()[0]))
                if parser.peek() and parser.peek()[1] == ",":
                    parser.take()
                else:
                    break
        parser.expect(".")

        hs, ps, ns = frozenset(head), frozenset(pos_body), frozenset(neg_body)
        overlap = (hs & ps) | (hs & ns) | (ps & ns)
        if overlap:
            raise NormalizationError(
                f"rule {rule_id} (line {line}): atoms {sorted(overlap)} occur in "
                f"more than one part")
        used_ids.add(rule_id)
        rules.append(Rule(rule_id, hs, ps, ns))

    return Program(tuple(atoms), tuple(rules))


def serialize_program(program: Program) -> str:
    """Render a program in the file grammar.

    Rule parts are ordered by the program's atom order, so parsing the output
    of a parsed program gives back an identical Program.  Atoms that occur in
    no rule cannot be expressed in the grammar and are dropped.
    """
    order = program.atom_index()
    lines = []
    for index, r in enumerate(program.rules, 1):
        text = ""
        if r.id != f"r{index}":
            text += f"@{r.id}: "
        text += " | ".join(sorted(r.head, key=order.__getitem__))
        body = [a for a in sorted(r.pos_body, key=order.__getitem__)]
        body += [f"not {a}" for a in sorted(r.neg_body, key=order.__getitem__)]
        if body:
            if text and not text.endswith(" "):
                text += " "
            text += ":- " + ", ".join(body)
        lines.append(text.strip() + ".")
    return "\n".join(lines) + ("\n" if lines else "")
