from fractions import Fraction
from itertools import product

import pytest

from omlkit import corpus
from omlkit.lattice import ONE, ZERO, build_oml
from omlkit.ratlp import EQ, OPTIMAL, RationalLP, solve
from omlkit.states import (
    INFINITY,
    MANY,
    NO_STATE,
    UNIQUE,
    StateVector,
    admits_state,
    measure_expr,
    pair_lp,
    separating_failures,
    state_lp,
    strong_state_check,
    unique_point,
    unique_state,
)


def lemma_checks(l, s: StateVector):
    d = l.diagram
    for block in d.blocks:
        assert sum(s.values[a] for a in block) == 1
    assert all(0 <= v <= 1 for v in s.values)
    for x in range(l.size):
        mx = s.measure(l, x)
        assert 0 <= mx <= 1
        assert mx + s.measure(l, l.ortho[x]) == 1
    for x, y in product(range(l.size), repeat=2):
        if l.leq[x, y]:
            assert s.measure(l, x) <= s.measure(l, y)


def test_measure_expressions(peterson):
    l = peterson
    labels = l.diagram.labels
    assert measure_expr(l, l.element("7'")).format(labels) == "1 - m7"
    assert measure_expr(l, ONE).format(labels) == "1"
    assert measure_expr(l, ZERO).format(labels) == "0"
    assert measure_expr(l, l.element("7")).format(labels) == "m7"
    b = build_oml("5678.")
    assert measure_expr(b, b.element("56")).format(b.diagram.labels) == "m5 + m6"


def test_measure_is_well_defined_on_shared_elements(peterson):
    # 7' is the join of 5 and 6 in block 567 and of 8 and 9 in block 789
    l = peterson
    s = admits_state(l)
    c7 = l.element("7'")
    via_567 = s["5"] + s["6"]
    via_789 = s["8"] + s["9"]
    assert s.measure(l, c7) == via_567 == via_789


def test_peterson_lp():
    l = corpus.lattice("peterson")
    lp = pair_lp(l, l.atom("1"), l.element("7'"))
    out = solve(lp)
    assert out.status == OPTIMAL and out.value == 1
    assert isinstance(out.value, Fraction)
    assert lp.to_lp_format().splitlines()[0] == "min: -m7 + 1;"
    assert lp.to_lp_format().splitlines()[-1] == "m1 = 1;"


def test_peterson_not_strong():
    l = corpus.lattice("peterson")
    v = strong_state_check(l)
    assert not v.strong
    assert (l.label(v.witness.a), l.label(v.witness.b)) == ("1", "7'")
    assert v.witness.min_value == 1
    assert v.format(l) == "not strong; witness 1, 7'; min 1"


def test_boolean_strong_and_many():
    l = build_oml("123.")
    assert strong_state_check(l).strong
    kind, s = unique_state(l)
    assert kind == MANY
    lemma_checks(l, s)


def test_unique_point():
    lp = RationalLP(2)
    lp.add_constraint([1, 1], EQ, 1)
    lp.add_constraint([1, -1], EQ, 0)
    assert unique_point(lp) == (UNIQUE, (Fraction(1, 2), Fraction(1, 2)))
    lp.add_constraint([1, 0], EQ, 1)
    assert unique_point(lp) == (NO_STATE, None)


def test_pinned_boolean_state_is_unique():
    l = build_oml("123.")
    lp = state_lp(l)
    lp.add_constraint({0: 1}, EQ, 1)
    assert unique_point(lp) == (UNIQUE, (1, 0, 0))


def test_mayet_stateless():
    l = corpus.lattice("mayet-30-19")
    assert admits_state(l) is None
    assert unique_state(l) == (NO_STATE, None)
    v = strong_state_check(l)
    assert not v.strong and v.witness.min_value == INFINITY


@pytest.mark.parametrize("name", ["peterson", "23-16-p7go-f8go-a"])
def test_states_obey_lemma(name):
    l = corpus.lattice(name)
    lemma_checks(l, admits_state(l))
    kind, s = unique_state(l)
    assert kind == MANY


def test_23_16_not_strong():
    assert not strong_state_check(corpus.lattice("23-16-p7go-f8go-a")).strong


def test_strong_implies_admits_state(small_lattices):
    for l in small_lattices:
        v = strong_state_check(l)
        if v.strong:
            assert admits_state(l) is not None


def test_witnesses_are_unseparated_pairs(peterson):
    l = peterson
    ws = []
    for w in separating_failures(l):
        ws.append(w)
        if len(ws) == 3:
            break
    for w in ws:
        assert not l.leq[w.a, w.b]
        assert solve(pair_lp(l, w.a, w.b)).value >= 1


def test_jobs_same_witness(peterson):
    a = strong_state_check(peterson)
    b = strong_state_check(peterson, jobs=3)
    assert (a.witness.a, a.witness.b) == (b.witness.a, b.witness.b)
