"""Lattice terms, conditional equations and their ASCII concrete syntax.

Syntax summary::

    term    ::= variable | 0 | 1 | term' | term ^ term | term v term
              | term -> term | ( term )
    hyp     ::= term # term        (orthogonal: t <= u')
              | term C term        (commutes:   t ^ (t' v u) <= u)
    eqn     ::= [hyp, hyp, ... |-] term <= term
              | [hyp, hyp, ... |-] term == term

Postfix ``'`` binds tightest, then ``^``, ``v`` and ``->``; binary operators
associate to the left.  Variables are a lowercase letter optionally followed
by digits; a lone ``v`` is always the join operator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union


class Term:
    __slots__ = ()

    def __and__(self, other: Term) -> Term:
        return Meet(self, other)

    def __or__(self, other: Term) -> Term:
        return Join(self, other)

    def __invert__(self) -> Term:
        return Comp(self)

    def __rshift__(self, other: Term) -> Term:
        return Arrow(self, other)

    def __str__(self) -> str:
        return format_term(self)

    def children(self) -> tuple[Term, ...]:
        return ()

    def size(self) -> int:
        """Number of AST nodes."""
        return 1 + sum(c.size() for c in self.children())

    def variables(self) -> list[str]:
        """Variable names in first-occurrence (left-to-right) order."""
        seen: dict[str, None] = {}
        for node in self.walk():
            if isinstance(node, Var):
                seen.setdefault(node.name)
        return list(seen)

    def walk(self) -> Iterator[Term]:
        yield self
        for c in self.children():
            yield from c.walk()


@dataclass(frozen=True, repr=False)
class Var(Term):
    name: str

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True, repr=False)
class Zero(Term):
    def __repr__(self):
        return "Zero()"


@dataclass(frozen=True, repr=False)
class One(Term):
    def __repr__(self):
        return "One()"


@dataclass(frozen=True, repr=False)
class Comp(Term):
    arg: Term

    def children(self):
        return (self.arg,)

    def __repr__(self):
        return f"Comp({self.arg!r})"


@dataclass(frozen=True, repr=False)
class _Binary(Term):
    left: Term
    right: Term

    def children(self):
        return (self.left, self.right)

    def __repr__(self):
        return f"{type(self).__name__}({self.left!r}, {self.right!r})"


class Meet(_Binary):
    pass


class Join(_Binary):
    pass


class Arrow(_Binary):
    """Sasaki arrow ``a -> b = a' v (a ^ b)``."""


def variables(*names: str) -> list[Var]:
    return [Var(n) for n in names]


def meet_all(terms: Iterable[Term]) -> Term:
    it = iter(terms)
    acc = next(it)
    for t in it:
        acc = Meet(acc, t)
    return acc


def join_all(terms: Iterable[Term]) -> Term:
    it = iter(terms)
    acc = next(it)
    for t in it:
        acc = Join(acc, t)
    return acc


def expand_arrows(t: Term) -> Term:
    """Rewrite every Sasaki arrow into primitive operations."""
    if isinstance(t, Arrow):
        a, b = expand_arrows(t.left), expand_arrows(t.right)
        return Join(Comp(a), Meet(a, b))
    if isinstance(t, Comp):
        return Comp(expand_arrows(t.arg))
    if isinstance(t, _Binary):
        return type(t)(expand_arrows(t.left), expand_arrows(t.right))
    return t


def substitute(t: Term, mapping: dict[str, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Comp):
        return Comp(substitute(t.arg, mapping))
    if isinstance(t, _Binary):
        return type(t)(substitute(t.left, mapping), substitute(t.right, mapping))
    return t


@dataclass(frozen=True)
class Orthogonal:
    """Hypothesis ``left <= right'``."""

    left: Term
    right: Term
    symbol = "#"


@dataclass(frozen=True)
class Commutes:
    """Hypothesis ``left ^ (left' v right) <= right``."""

    left: Term
    right: Term
    symbol = "C"


Hypothesis = Union[Orthogonal, Commutes]

LE = "<="
EQ = "=="


@dataclass(frozen=True)
class ConditionalEquation:
    hypotheses: tuple[Hypothesis, ...]
    relation: str
    lhs: Term
    rhs: Term
    variables: tuple[str, ...]

    def __post_init__(self):
        if self.relation not in (LE, EQ):
            raise ValueError(f"relation must be {LE!r} or {EQ!r}")
        used = set(_occurring(self.hypotheses, self.lhs, self.rhs))
        if used - set(self.variables):
            raise ValueError(f"unlisted variables {sorted(used - set(self.variables))}")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")

    def __str__(self) -> str:
        return format_equation(self)


def _occurring(hyps, lhs, rhs) -> list[str]:
    seen: dict[str, None] = {}
    for h in hyps:
        for t in (h.left, h.right):
            for v in t.variables():
                seen.setdefault(v)
    for t in (lhs, rhs):
        for v in t.variables():
            seen.setdefault(v)
    return list(seen)


def equation(hypotheses: Iterable[Hypothesis], lhs: Term, relation: str, rhs: Term) -> ConditionalEquation:
    """Build an equation whose variable list is the first-occurrence order."""
    hyps = tuple(hypotheses)
    return ConditionalEquation(hyps, relation, lhs, rhs, tuple(_occurring(hyps, lhs, rhs)))


# -- printing --------------------------------------------------------------

_PREC = {Arrow: 1, Join: 2, Meet: 3}
_SYM = {Arrow: "->", Join: "v", Meet: "^"}


def format_term(t: Term, _ctx: int = 0) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    if isinstance(t, Comp):
        inner = format_term(t.arg, 4)
        return inner + "'"
    p = _PREC[type(t)]
    s = f"{format_term(t.left, p)} {_SYM[type(t)]} {format_term(t.right, p + 1)}"
    return f"({s})" if p < _ctx else s


def format_equation(eq: ConditionalEquation) -> str:
    hyps = ", ".join(
        f"{format_term(h.left, 1)} {h.symbol} {format_term(h.right, 1)}" for h in eq.hypotheses
    )
    body = f"{format_term(eq.lhs)} {eq.relation} {format_term(eq.rhs)}"
    return f"{hyps} |- {body}" if hyps else f"|- {body}"


# -- parsing ---------------------------------------------------------------


class EquationSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at column {position + 1}")


class EmptyConclusion(EquationSyntaxError):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<op>\|-|->|<=|==|[()'^#,])|(?P<name>[a-z][0-9]*)|(?P<const>[01])|(?P<comm>C))"
)


def _tokens(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise EquationSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        kind, val = m.lastgroup, m.group(m.lastgroup)
        if kind == "name" and val == "v":
            kind = "op"
        elif kind == "comm":
            kind = "op"
        out.append((kind, val, start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            found = tok[1] or "end of input"
            raise EquationSyntaxError(f"expected {value!r}, found {found!r}", tok[2])
        self.i += 1
        return tok

    def at(self, *values):
        kind, val, _ = self.peek()
        return kind == "op" and val in values

    def term(self) -> Term:
        t = self.join()
        while self.at("->"):
            self.take()
            t = Arrow(t, self.join())
        return t

    def join(self) -> Term:
        t = self.meet()
        while self.at("v"):
            self.take()
            t = Join(t, self.meet())
        return t

    def meet(self) -> Term:
        t = self.postfix()
        while self.at("^"):
            self.take()
            t = Meet(t, self.postfix())
        return t

    def postfix(self) -> Term:
        t = self.primary()
        while self.at("'"):
            self.take()
            t = Comp(t)
        return t

    def primary(self) -> Term:
        kind, val, pos = self.peek()
        if kind == "name":
            self.take()
            return Var(val)
        if kind == "const":
            self.take()
            return Zero() if val == "0" else One()
        if self.at("("):
            self.take()
            t = self.term()
            self.take(")")
            return t
        raise EquationSyntaxError(f"expected a term, found {val or 'end of input'!r}", pos)

    def hypothesis(self) -> Hypothesis:
        left = self.term()
        kind, val, pos = self.peek()
        if self.at("#"):
            self.take()
            return Orthogonal(left, self.term())
        if self.at("C"):
            self.take()
            return Commutes(left, self.term())
        raise EquationSyntaxError("expected '#' or 'C' in hypothesis", pos)

    def equation(self) -> ConditionalEquation:
        hyps: list[Hypothesis] = []
        if any(tok[1] == "|-" and tok[0] == "op" for tok in self.toks):
            if not self.at("|-"):
                hyps.append(self.hypothesis())
                while self.at(","):
                    self.take()
                    hyps.append(self.hypothesis())
            self.take("|-")
        if self.peek()[0] == "end":
            raise EmptyConclusion("missing conclusion", self.peek()[2])
        lhs = self.term()
        kind, val, pos = self.peek()
        if not self.at("<=", "=="):
            raise EquationSyntaxError("expected '<=' or '=='", pos)
        self.take()
        rhs = self.term()
        if self.peek()[0] != "end":
            raise EquationSyntaxError(f"unexpected {self.peek()[1]!r}", self.peek()[2])
        return equation(hyps, lhs, val, rhs)


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.peek()[0] != "end":
        raise EquationSyntaxError(f"unexpected {p.peek()[1]!r}", p.peek()[2])
    return t


def parse_equation(text: str) -> ConditionalEquation:
    """Parse ``"a # b |- a ^ b == 0"`` style text into a ConditionalEquation."""
    return _Parser(text).equation()
