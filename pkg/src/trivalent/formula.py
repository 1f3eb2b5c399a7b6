"""Syntax of the object language: AST, parser, printer and schema substitution.

Grammar (whitespace insignificant)::

    formula := cond
    cond    := disj (("->" | "=>" | "<->") cond)?
    disj    := conj ("|" conj)*
    conj    := neg ("&" neg)*
    neg     := "~" neg | atom | "T" | "F" | "(" formula ")"

``A => B`` is material implication and is desugared to ``~A | B``;
``A <-> B`` is desugared to ``(A -> B) & (B -> A)``. Neither ever appears
as an AST node.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

__all__ = [
    "Atom",
    "Top",
    "Bot",
    "Not",
    "And",
    "Or",
    "Cond",
    "Formula",
    "FormulaSyntaxError",
    "UnboundVariableError",
    "parse",
    "render",
    "atoms",
    "depth",
    "is_conditional_free",
    "substitute",
    "conjoin",
    "random_formula",
    "subformulas",
]

ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*")
SCHEMA_VAR_RE = re.compile(r"[A-Z]")


@dataclass(frozen=True, slots=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True)
class Top:
    def __str__(self) -> str:
        return "T"


@dataclass(frozen=True, slots=True)
class Bot:
    def __str__(self) -> str:
        return "F"


@dataclass(frozen=True, slots=True)
class Not:
    sub: Formula

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True)
class And:
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True)
class Or:
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True)
class Cond:
    """The indicative conditional ``left -> right``."""

    left: Formula
    right: Formula

    def __str__(self) -> str:
        return render(self)


Formula = Union[Atom, Top, Bot, Not, And, Or, Cond]

TOP = Top()
BOT = Bot()


class FormulaSyntaxError(ValueError):
    """Raised for malformed formula text.

    Attributes:
        offset: byte offset into the UTF-8 encoded input where parsing failed.
        expected: the set of tokens that would have been accepted there.
    """

    def __init__(self, message: str, text: str, offset: int, expected: frozenset[str]):
        self.text = text
        self.offset = offset
        self.expected = expected
        exp = ", ".join(sorted(expected)) if expected else "nothing"
        super().__init__(f"{message} at byte {offset} (expected one of: {exp})")


class UnboundVariableError(KeyError):
    pass


# ---------------------------------------------------------------------------
# Lexer / parser

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<op><->|->|=>|[~&|()])|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<bad>\S))"
)

_ARROWS = ("->", "=>", "<->")


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # "op", "atom", "var", "T", "F", "end"
    text: str
    offset: int  # byte offset


def _tokenize(text: str, schema: bool) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastgroup)
        off = len(text[:start].encode("utf-8"))
        value = m.group(m.lastgroup)
        if m.lastgroup == "op":
            tokens.append(_Token("op", value, off))
        elif m.lastgroup == "name":
            if value in ("T", "F"):
                tokens.append(_Token(value, value, off))
            elif ATOM_RE.fullmatch(value):
                tokens.append(_Token("atom", value, off))
            elif schema and SCHEMA_VAR_RE.fullmatch(value):
                tokens.append(_Token("var", value, off))
            else:
                raise FormulaSyntaxError(
                    f"invalid identifier {value!r}", text, off, frozenset({"atom"})
                )
        else:
            raise FormulaSyntaxError(
                f"unexpected character {value!r}", text, off, _NEG_FIRST
            )
        pos = m.end()
    tokens.append(_Token("end", "", len(text.encode("utf-8"))))
    return tokens


_NEG_FIRST = frozenset({"~", "atom", "T", "F", "("})


class _Parser:
    def __init__(self, text: str, schema: bool):
        self.text = text
        self.toks = _tokenize(text, schema)
        self.i = 0

    def peek(self) -> _Token:
        return self.toks[self.i]

    def advance(self) -> _Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, expected: frozenset[str]):
        tok = self.peek()
        raise FormulaSyntaxError(message, self.text, tok.offset, expected)

    def formula(self) -> Formula:
        left = self.disj()
        tok = self.peek()
        if tok.kind == "op" and tok.text in _ARROWS:
            self.advance()
            right = self.formula()
            if tok.text == "->":
                return Cond(left, right)
            if tok.text == "=>":
                return Or(Not(left), right)
            return And(Cond(left, right), Cond(right, left))
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek().kind == "op" and self.peek().text == "|":
            self.advance()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.neg()
        while self.peek().kind == "op" and self.peek().text == "&":
            self.advance()
            f = And(f, self.neg())
        return f

    def neg(self) -> Formula:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "~":
            self.advance()
            return Not(self.neg())
        if tok.kind in ("atom", "var"):
            self.advance()
            return Atom(tok.text)
        if tok.kind == "T":
            self.advance()
            return TOP
        if tok.kind == "F":
            self.advance()
            return BOT
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            f = self.formula()
            if not (self.peek().kind == "op" and self.peek().text == ")"):
                if self.peek().kind == "end":
                    self.fail("unbalanced parenthesis", frozenset({")"}))
                self.fail("unexpected token", frozenset({")", "&", "|", *_ARROWS}))
            self.advance()
            return f
        if tok.kind == "end":
            self.fail("unexpected end of input", _NEG_FIRST)
        self.fail(f"unexpected token {tok.text!r}", _NEG_FIRST)
        raise AssertionError("unreachable")  # pragma: no cover


def parse(text: str, *, schema: bool = False) -> Formula:
    """Parse ``text`` into a formula.

    With ``schema=True`` single uppercase letters other than ``T``/``F`` are
    accepted as schema variables (stored as atoms with uppercase names).

    Raises:
        FormulaSyntaxError: on empty input, bad tokens, unbalanced
            parentheses or trailing garbage.
    """
    if not text.strip():
        raise FormulaSyntaxError("empty input", text, 0, _NEG_FIRST)
    p = _Parser(text, schema)
    f = p.formula()
    tok = p.peek()
    if tok.kind != "end":
        if tok.kind == "op" and tok.text == ")":
            p.fail("unbalanced parenthesis", frozenset({"&", "|", *_ARROWS, "end of input"}))
        p.fail(f"unexpected token {tok.text!r}", frozenset({"&", "|", *_ARROWS, "end of input"}))
    return f


# ---------------------------------------------------------------------------
# Printer

_PREC = {Cond: 1, Or: 2, And: 3, Not: 4}
_SYMBOL = {Cond: "->", Or: "|", And: "&"}


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), 5)


def render(f: Formula) -> str:
    """Print with the minimal parentheses needed for ``parse`` to rebuild ``f``."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Bot):
        return "F"
    if isinstance(f, Not):
        inner = render(f.sub)
        return "~" + (f"({inner})" if _prec(f.sub) < 4 else inner)
    p = _prec(f)
    left, right = render(f.left), render(f.right)
    if isinstance(f, Cond):
        # right-associative
        if _prec(f.left) <= p:
            left = f"({left})"
        if _prec(f.right) < p:
            right = f"({right})"
    else:
        # left-associative
        if _prec(f.left) < p:
            left = f"({left})"
        if _prec(f.right) <= p:
            right = f"({right})"
    return f"{left} {_SYMBOL[type(f)]} {right}"


# ---------------------------------------------------------------------------
# Structural queries


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, Not):
            stack.append(g.sub)
        elif isinstance(g, (And, Or, Cond)):
            stack.append(g.right)
            stack.append(g.left)


def atoms(f: Formula) -> tuple[str, ...]:
    """Atom names of ``f`` in lexicographic order, without duplicates."""
    return tuple(sorted({g.name for g in subformulas(f) if isinstance(g, Atom)}))


def depth(f: Formula) -> int:
    if isinstance(f, Not):
        return 1 + depth(f.sub)
    if isinstance(f, (And, Or, Cond)):
        return 1 + max(depth(f.left), depth(f.right))
    return 0


def is_conditional_free(f: Formula) -> bool:
    return not any(isinstance(g, Cond) for g in subformulas(f))


def substitute(schema: Formula, binding: Mapping[str, Formula]) -> Formula:
    """Replace every atom of ``schema`` by its image under ``binding``.

    Raises:
        UnboundVariableError: if an atom of ``schema`` is not bound.
    """
    if isinstance(schema, Atom):
        try:
            return binding[schema.name]
        except KeyError:
            raise UnboundVariableError(schema.name) from None
    if isinstance(schema, Not):
        return Not(substitute(schema.sub, binding))
    if isinstance(schema, (And, Or, Cond)):
        return type(schema)(substitute(schema.left, binding), substitute(schema.right, binding))
    return schema


def conjoin(fs: list[Formula] | tuple[Formula, ...]) -> Formula:
    """Left-nested conjunction of ``fs``; ``T`` for the empty list."""
    if not fs:
        return TOP
    out = fs[0]
    for g in fs[1:]:
        out = And(out, g)
    return out


def random_formula(
    rng: random.Random,
    names: tuple[str, ...] | list[str],
    max_depth: int,
    *,
    constants: bool = True,
    conditionals: bool = True,
) -> Formula:
    """Draw a random formula over ``names`` with depth at most ``max_depth``."""
    if max_depth <= 0 or rng.random() < 0.25:
        if constants and rng.random() < 0.1:
            return rng.choice((TOP, BOT))
        return Atom(rng.choice(names))
    ops: list[type] = [Not, And, Or]
    if conditionals:
        ops += [Cond, Cond]
    op = rng.choice(ops)
    sub = max_depth - 1
    if op is Not:
        return Not(random_formula(rng, names, sub, constants=constants, conditionals=conditionals))
    return op(
        random_formula(rng, names, sub, constants=constants, conditionals=conditionals),
        random_formula(rng, names, sub, constants=constants, conditionals=conditionals),
    )
