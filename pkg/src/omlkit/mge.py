"""Mayet-Godowski equations and their condensed state-equation notation.

In condensed notation joins of mutually orthogonal variables are written by
juxtaposition and meets by ``+``: ``ad+be+cf=db+ec+fa`` stands for
``(a v d) ^ (b v e) ^ (c v f) == (d v b) ^ (e v c) ^ (f v a)`` under the
hypotheses that the variables inside each group are mutually orthogonal.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Collection

from .terms import EQ, ConditionalEquation, Orthogonal, Var, equation, join_all, meet_all


class MgeError(ValueError):
    pass


class GroupNotOrthogonal(MgeError):
    pass


class UnbalancedVariableCounts(MgeError):
    pass


class TooFewConjuncts(MgeError):
    pass


@dataclass(frozen=True)
class CondensedStateEquation:
    lhs: tuple[str, ...]
    rhs: tuple[str, ...]

    def __str__(self) -> str:
        return "+".join(self.lhs) + "=" + "+".join(self.rhs)

    def symbols(self) -> list[str]:
        """Distinct symbols in order of first appearance, left side first."""
        return list(dict.fromkeys(ch for g in self.lhs + self.rhs for ch in g))

    def counts(self) -> tuple[Counter, Counter]:
        return Counter("".join(self.lhs)), Counter("".join(self.rhs))

    def is_balanced(self) -> bool:
        left, right = self.counts()
        return left == right

    def renamed(self, alphabet: str = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ") -> CondensedStateEquation:
        """Rename symbols to ``alphabet`` in order of first appearance."""
        syms = self.symbols()
        if len(syms) > len(alphabet):
            raise MgeError(f"{len(syms)} symbols exceed the renaming alphabet")
        table = str.maketrans({s: alphabet[i] for i, s in enumerate(syms)})
        return CondensedStateEquation(
            tuple(g.translate(table) for g in self.lhs),
            tuple(g.translate(table) for g in self.rhs),
        )


def parse_condensed(text: str) -> CondensedStateEquation:
    """Parse ``"ab+cd+ef+gh = bg+fc+ad+he"``."""
    left, sep, right = text.replace(" ", "").partition("=")
    if not sep or not left or not right:
        raise MgeError(f"condensed equation needs two sides: {text!r}")
    lhs = tuple(left.split("+"))
    rhs = tuple(right.split("+"))
    if any(not g for g in lhs + rhs):
        raise MgeError(f"empty group in {text!r}")
    return CondensedStateEquation(lhs, rhs)


def _variable_name(symbol: str, position: int) -> str:
    if "a" <= symbol <= "z" and symbol != "v":
        return symbol
    return f"x{position + 1}"


@dataclass(frozen=True)
class MgEquation:
    """Meet of joins equals meet of joins; each group is a tuple of variable names."""

    left_terms: tuple[tuple[str, ...], ...]
    right_terms: tuple[tuple[str, ...], ...]

    def hypotheses(self) -> list[Orthogonal]:
        seen: dict[frozenset, tuple[str, str]] = {}
        for group in self.left_terms + self.right_terms:
            for x, y in combinations(group, 2):
                seen.setdefault(frozenset((x, y)), (x, y))
        return [Orthogonal(Var(x), Var(y)) for x, y in seen.values()]

    def to_equation(self) -> ConditionalEquation:
        def side(terms):
            return meet_all(join_all(Var(v) for v in g) for g in terms)

        return equation(self.hypotheses(), side(self.left_terms), EQ, side(self.right_terms))

    def __str__(self) -> str:
        return str(self.to_equation())


def _orthogonality(rel) -> Callable[[str, str], bool]:
    if callable(rel):
        return rel
    pairs = {frozenset(p) for p in rel}
    return lambda x, y: frozenset((x, y)) in pairs


def condensed_to_mge(
    c: CondensedStateEquation,
    orthogonality: Callable[[str, str], bool] | Collection[tuple[str, str]],
) -> MgEquation:
    """Convert a condensed equation to its full MGE, checking the MGE conditions.

    ``orthogonality`` is either a predicate on pairs of symbols or a collection
    of orthogonal symbol pairs (treated symmetrically).
    """
    orth = _orthogonality(orthogonality)
    if len(c.lhs) < 2 or len(c.rhs) < 2:
        raise TooFewConjuncts(f"{c}: each side needs at least 2 conjuncts")
    for g in c.lhs + c.rhs:
        if len(set(g)) != len(g):
            raise GroupNotOrthogonal(f"group {g!r} repeats a variable")
        for x, y in combinations(g, 2):
            if not orth(x, y):
                raise GroupNotOrthogonal(f"{x} and {y} in group {g!r} are not orthogonal")
    left, right = c.counts()
    if left != right:
        diff = sorted(s for s in set(left) | set(right) if left[s] != right[s])
        raise UnbalancedVariableCounts(f"{c}: unbalanced symbols {''.join(diff)}")
    names = {s: _variable_name(s, i) for i, s in enumerate(c.symbols())}
    return MgEquation(
        tuple(tuple(names[s] for s in g) for g in c.lhs),
        tuple(tuple(names[s] for s in g) for g in c.rhs),
    )


def mge_to_condensed(mge: MgEquation) -> CondensedStateEquation:
    """Inverse of :func:`condensed_to_mge` for single-letter variable names."""
    return CondensedStateEquation(
        tuple("".join(g) for g in mge.left_terms),
        tuple("".join(g) for g in mge.right_terms),
    )


def godowski_condensed(n: int) -> CondensedStateEquation:
    """n-Go as a condensed equation: ``a1b1+...+anbn = b1a2+...+bna1`` with letters."""
    letters = "abcdefghijklmnopqrstuvwxyz"
    if 2 * n > len(letters):
        raise MgeError("n too large for single-letter condensed form")
    a = letters[0:2 * n:2]
    b = letters[1:2 * n:2]
    lhs = tuple(a[i] + b[i] for i in range(n))
    rhs = tuple(b[i] + a[(i + 1) % n] for i in range(n))
    return CondensedStateEquation(lhs, rhs)


def _side_key(terms, mapping=None):
    if mapping is not None:
        terms = [[mapping[v] for v in g] for g in terms]
    return Counter(frozenset(g) for g in terms)


def mge_isomorphic(m1: MgEquation, m2: MgEquation) -> bool:
    """True when the two MGEs coincide up to renaming variables, reordering
    conjuncts and disjuncts, and swapping the two sides."""

    def signature(m: MgEquation, v: str):
        left = sum(g.count(v) for g in m.left_terms)
        sizes = sorted(len(g) for g in m.left_terms + m.right_terms if v in g)
        return left, tuple(sizes)

    def variables(m: MgEquation) -> list[str]:
        return list(dict.fromkeys(v for g in m.left_terms + m.right_terms for v in g))

    v1, v2 = variables(m1), variables(m2)
    if len(v1) != len(v2):
        return False
    got_left = _side_key(m1.left_terms)
    for left2, right2 in ((m2.left_terms, m2.right_terms), (m2.right_terms, m2.left_terms)):
        flipped = MgEquation(left2, right2)
        want = (_side_key(left2), _side_key(right2))
        if sorted(map(len, got_left.elements())) != sorted(map(len, want[0].elements())):
            continue
        sig1 = {v: signature(m1, v) for v in v1}
        sig2 = {v: signature(flipped, v) for v in v2}
        mapping: dict[str, str] = {}
        used: set[str] = set()

        def extend(i: int) -> bool:
            if i == len(v1):
                return (_side_key(m1.left_terms, mapping), _side_key(m1.right_terms, mapping)) == want
            v = v1[i]
            for w in v2:
                if w not in used and sig2[w] == sig1[v]:
                    mapping[v] = w
                    used.add(w)
                    if extend(i + 1):
                        return True
                    used.discard(w)
                    del mapping[v]
            return False

        if extend(0):
            return True
    return False
