"""Recursive-descent parser for the formula surface syntax.

Grammar, loosest first:

    formula  ::= implied ( "<->" implied )*
    implied  ::= clause ( "->" implied )?
    clause   ::= term ( "|" term )*
    term     ::= factor ( "&" factor )*
    factor   ::= "!" factor | quantifier | atom
    quantifier ::= ("ex1" | "all1" | "ex2" | "all2") VAR "." formula
    atom     ::= "true" | "false" | "(" formula ")"
               | "edge" "(" fo "," fo ")" | "mod" "(" NUM "," NUM "," SET ")"
               | "label_"NAME "(" fo ")" | "rel_"NAME "(" fo "," fo ")"
               | fo "=" fo | fo "in" SET
"""

from __future__ import annotations

import re

from ..errors import FormulaParseError
from .formulas import (
    AllSet,
    AllVertex,
    And,
    Edge,
    Eq,
    ExistsSet,
    ExistsVertex,
    FalseConst,
    HasLabel,
    Iff,
    Implies,
    InSet,
    ModCount,
    Not,
    Or,
    RelAtom,
    TrueConst,
)

_TOKEN = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<num>\d+)"
    r"|(?P<iff><->)|(?P<implies>->)|(?P<sym>[().,=!&|]))"
)

_KEYWORDS = {"ex1", "all1", "ex2", "all2", "in", "true", "false", "edge", "mod"}

_QUANTIFIERS = {
    "ex1": (ExistsVertex, False),
    "all1": (AllVertex, False),
    "ex2": (ExistsSet, True),
    "all2": (AllSet, True),
}


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise FormulaParseError(
                f"unexpected character {stripped[0]!r}", at
            )
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise FormulaParseError(message, tok[2])

    def eat_sym(self, sym):
        kind, value, _ = self.peek()
        if kind == "sym" and value == sym:
            self.take()
            return True
        return False

    def expect_sym(self, sym):
        if not self.eat_sym(sym):
            self.fail(f"expected {sym!r}")

    def variable(self, want_set):
        kind, value, _ = self.peek()
        if kind != "ident" or value in _KEYWORDS:
            self.fail("expected a variable name")
        if value.startswith("label_") or value.startswith("rel_"):
            self.fail("variable names may not use the label_/rel_ prefixes")
        if not value[0].isalpha():
            self.fail("variable names must start with a letter")
        if value[0].isupper() != want_set:
            expected = "a set variable" if want_set else "a first-order variable"
            self.fail(f"expected {expected}, got {value!r}")
        self.take()
        return value

    def number(self):
        kind, value, _ = self.peek()
        if kind != "num":
            self.fail("expected a number")
        self.take()
        return int(value)

    def formula(self):
        out = self.implied()
        while True:
            kind, _, _ = self.peek()
            if kind == "iff":
                self.take()
                out = Iff(out, self.implied())
            else:
                return out

    def implied(self):
        left = self.clause()
        if self.peek()[0] == "implies":
            self.take()
            return Implies(left, self.implied())
        return left

    def clause(self):
        out = self.term()
        while self.eat_sym("|"):
            out = Or(out, self.term())
        return out

    def term(self):
        out = self.factor()
        while self.eat_sym("&"):
            out = And(out, self.factor())
        return out

    def factor(self):
        if self.eat_sym("!"):
            return Not(self.factor())
        kind, value, _ = self.peek()
        if kind == "ident" and value in _QUANTIFIERS:
            self.take()
            cls, want_set = _QUANTIFIERS[value]
            var = self.variable(want_set)
            self.expect_sym(".")
            return cls(var, self.formula())
        return self.atom()

    def atom(self):
        kind, value, tok_pos = self.peek()
        if kind == "sym" and value == "(":
            self.take()
            out = self.formula()
            self.expect_sym(")")
            return out
        if kind != "ident":
            self.fail("expected a formula")
        if value == "true":
            self.take()
            return TrueConst()
        if value == "false":
            self.take()
            return FalseConst()
        if value == "edge":
            self.take()
            self.expect_sym("(")
            x = self.variable(False)
            self.expect_sym(",")
            y = self.variable(False)
            self.expect_sym(")")
            return Edge(x, y)
        if value == "mod":
            self.take()
            self.expect_sym("(")
            a = self.number()
            self.expect_sym(",")
            b = self.number()
            self.expect_sym(",")
            var = self.variable(True)
            self.expect_sym(")")
            if not a < b:
                self.fail(f"mod needs 0 <= a < b, got a={a}, b={b}",
                          ("", "", tok_pos))
            return ModCount(a, b, var)
        if value.startswith("label_"):
            name = value[len("label_"):]
            if not name:
                self.fail("label_ needs a label name")
            self.take()
            self.expect_sym("(")
            x = self.variable(False)
            self.expect_sym(")")
            return HasLabel(name, x)
        if value.startswith("rel_"):
            name = value[len("rel_"):]
            if not name:
                self.fail("rel_ needs a relation name")
            self.take()
            self.expect_sym("(")
            x = self.variable(False)
            self.expect_sym(",")
            y = self.variable(False)
            self.expect_sym(")")
            return RelAtom(name, x, y)
        if value in _KEYWORDS:
            self.fail(f"unexpected keyword {value!r}")
        if value[0].isupper():
            self.fail("a set variable cannot stand alone")
        x = self.variable(False)
        if self.eat_sym("="):
            return Eq(x, self.variable(False))
        nk, nv, _ = self.peek()
        if nk == "ident" and nv == "in":
            self.take()
            return InSet(x, self.variable(True))
        self.fail("expected '=' or 'in' after a first-order variable")

    def done(self):
        if self.peek()[0] != "end":
            self.fail("unparsed trailing input")


def parse_formula(text):
    """Parse text into a Formula; errors carry the offending position."""
    parser = _Parser(text)
    out = parser.formula()
    parser.done()
    return out
