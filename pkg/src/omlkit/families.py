"""Builders for the named equation families (Godowski, orthoarguesian, Mayet's E)."""

from __future__ import annotations

from .terms import (
    EQ,
    LE,
    Commutes,
    ConditionalEquation,
    Orthogonal,
    Term,
    Var,
    equation,
    join_all,
    meet_all,
)


class UnknownFamily(KeyError):
    pass


class NOutOfRange(ValueError):
    pass


def _vars(prefix: str, n: int) -> list[Var]:
    return [Var(f"{prefix}{i}") for i in range(1, n + 1)]


def godowski_identity(chain: list[Term]) -> Term:
    """``(t1 -> t2) ^ (t2 -> t3) ^ ... ^ (tn -> t1)``."""
    n = len(chain)
    return meet_all(chain[i] >> chain[(i + 1) % n] for i in range(n))


def go_gamma(n: int) -> ConditionalEquation:
    a = _vars("a", n)
    return equation([], godowski_identity(a), EQ, godowski_identity(a[::-1]))


def go_2n(n: int) -> ConditionalEquation:
    """Godowski's equation in the 2n-variable orthogonal-chain form."""
    a, b = _vars("a", n), _vars("b", n)
    hyps = []
    for i in range(n):
        hyps.append(Orthogonal(a[i], b[i]))
        hyps.append(Orthogonal(b[i], a[(i + 1) % n]))
    lhs = meet_all(a[i] | b[i] for i in range(n))
    return equation(hyps, lhs, LE, b[0] | a[1 % n])


def mge_3go() -> ConditionalEquation:
    a, b, c, d, e, f = (Var(x) for x in "abcdef")
    chain = [a, d, b, e, c, f]
    hyps = [Orthogonal(chain[i], chain[(i + 1) % 6]) for i in range(6)]
    lhs = (a | d) & (b | e) & (c | f)
    rhs = (d | b) & (e | c) & (f | a)
    return equation(hyps, lhs, EQ, rhs)


def oa_operation(n: int, x: Term, y: Term, a: list[Var]) -> Term:
    """The n-variable orthoarguesian operation on ``x, y`` with extra variables ``a[2:]``."""
    if n == 3:
        a3 = a[2]
        return ((x >> a3) & (y >> a3)) | ((~x >> a3) & (~y >> a3))
    an = a[n - 1]
    return oa_operation(n - 1, x, y, a) | (
        oa_operation(n - 1, x, an, a) & oa_operation(n - 1, y, an, a)
    )


def noa(n: int) -> ConditionalEquation:
    a = _vars("a", n)
    lhs = (a[0] >> a[2]) & oa_operation(n, a[0], a[1], a)
    return equation([], lhs, LE, a[1] >> a[2])


def oa3_4var() -> ConditionalEquation:
    a, b, c, d = (Var(x) for x in "abcd")
    hyps = [Orthogonal(a, b), Orthogonal(c, d)]
    return equation(hyps, (a | b) & (c | d), LE, a | (b & (c | ((a | d) & (b | c)))))


def ea3() -> ConditionalEquation:
    a, b, c, d, e = (Var(x) for x in "abcde")
    t1 = c | ((a | d | e) & (b | c))
    t2 = d | ((a | c | e) & (b | d))
    t3 = e | ((a | c | d) & (b | e))
    hyps = [Orthogonal(a, b), Orthogonal(c, d), Orthogonal(d, e), Orthogonal(c, e)]
    return equation(hyps, (a | b) & (c | d | e), LE, a | (b & t3 & t2 & t1))


def _omega(n: int):
    a, b = _vars("a", n), _vars("b", n)
    hyps = [Orthogonal(a[i], a[j]) for i in range(n) for j in range(i + 1, n)]
    hyps += [Orthogonal(a[i], b[i]) for i in range(n)]
    q = meet_all(a[i] | b[i] for i in range(n))
    return a, b, hyps, join_all(a), join_all(b), q


def en(n: int) -> ConditionalEquation:
    _, _, hyps, a, b, q = _omega(n)
    return equation(hyps, a & q, LE, b)


def estarn(n: int) -> ConditionalEquation:
    _, _, hyps, a, b, q = _omega(n)
    r = Var("r")
    return equation(hyps + [Orthogonal(r, a)], (a | r) & q, LE, b | r)


def eprimen(n: int) -> ConditionalEquation:
    _, _, hyps, a, b, q = _omega(n)
    r = Var("r")
    return equation(hyps + [Orthogonal(r, a)], q & (q >> ~r) & (a | r), LE, b)


def estar2_commute() -> ConditionalEquation:
    a1, a2, b1, b2, r = (Var(x) for x in ("a1", "a2", "b1", "b2", "r"))
    hyps = [
        Commutes(a1, b1),
        Commutes(a2, b2),
        Commutes(r, a1),
        Orthogonal(a1, a2),
        Commutes(a2, r),
    ]
    return equation(hyps, (a1 | a2 | r) & (a1 | b1) & (a2 | b2), LE, b1 | b2 | r)


# name -> (builder, minimum n or None when the family takes no n)
FAMILIES = {
    "go_gamma": (go_gamma, 3),
    "go_2n": (go_2n, 2),
    "noa": (noa, 3),
    "en": (en, 2),
    "estarn": (estarn, 2),
    "eprimen": (eprimen, 2),
    "mge_3go": (mge_3go, None),
    "oa3_4var": (oa3_4var, None),
    "ea3": (ea3, None),
    "estar2_commute": (estar2_commute, None),
}

ALIASES = {
    "ngo": "go_gamma",
    "go": "go_gamma",
    "3oa": "oa3_4var",
    "estar2c": "estar2_commute",
    "e": "en",
    "estar": "estarn",
    "eprime": "eprimen",
}


def build_family(family: str, n: int | None = None) -> ConditionalEquation:
    """Return the named family member, e.g. ``build_family("go_gamma", 4)``."""
    name = ALIASES.get(family, family)
    if name not in FAMILIES:
        raise UnknownFamily(family)
    builder, lo = FAMILIES[name]
    if lo is None:
        if n is not None:
            raise NOutOfRange(f"{name} takes no order parameter")
        return builder()
    if n is None or n < lo:
        raise NOutOfRange(f"{name} requires n >= {lo}, got {n}")
    return builder(n)


def parse_family_spec(spec: str) -> ConditionalEquation:
    """``"go_gamma:4"`` or ``"ea3"`` -> equation."""
    name, _, n = spec.partition(":")
    return build_family(name.strip(), int(n) if n else None)
