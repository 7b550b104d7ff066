from functools import lru_cache

import pytest

from omlkit import corpus
from omlkit.checker import check_equation, violates
from omlkit.lattice import build_oml
from omlkit.mge import condensed_to_mge, godowski_condensed, mge_isomorphic, parse_condensed
from omlkit.mgegen import (
    EmptyLeftSide,
    GeneratedEquationHoldsInInput,
    RelaxationRecord,
    Unbalanceable,
    WitnessNotTight,
    balance_and_emit,
    build_condensed,
    generate_mge,
    relax_blocks,
)

NOT_STRONG = corpus.NAMES[:7]


@lru_cache(maxsize=None)
def generated(name):
    return generate_mge(corpus.lattice(name))


def test_peterson_relaxation(peterson):
    l = peterson
    rec = relax_blocks(l, (l.atom("1"), l.element("7'")))
    relaxed = [l.diagram.block_text(i) for i, r in enumerate(rec.relaxed) if r]
    pinned = [l.diagram.block_text(i) for i in rec.pinned]
    assert relaxed == ["123", "567", "789", "BC1", "4FA", "DEF"]
    assert pinned == ["345", "9AB", "2E8", "6DC"]
    assert {l.diagram.labels[a] for a in rec.forced_zero} == set("23BC")


def test_peterson_condensed(peterson):
    l = peterson
    rec = relax_blocks(l, (l.atom("1"), l.element("7'")))
    c = build_condensed(l, rec)
    assert str(c) == "45+9A+E8+6D=56+89+4A+DE"
    assert str(c.renamed()) == "ab+cd+ef+gh=bg+fc+ad+he"


def test_peterson_mge_is_4go(peterson):
    g = generated("peterson")
    assert g.result.condensed == g.raw  # already balanced
    go4 = condensed_to_mge(godowski_condensed(4), lambda x, y: True)
    assert mge_isomorphic(g.result.mge, go4)
    eq = g.result.equation
    assert violates(peterson, eq, g.result.assignment)
    assert not check_equation(peterson, eq).holds


def test_witness_not_tight():
    l = build_oml("123.")
    with pytest.raises(WitnessNotTight):
        relax_blocks(l, (l.atom("1"), l.atom("2")))
    with pytest.raises(WitnessNotTight):
        generate_mge(corpus.lattice("mayet-30-19"))


def test_strong_lattice_gives_nothing():
    assert generate_mge(build_oml("123,345.")) is None


def test_empty_left_side(peterson):
    rec = RelaxationRecord(peterson.atom("1"), peterson.element("7'"), (True,) * 10, frozenset())
    with pytest.raises(EmptyLeftSide):
        build_condensed(peterson, rec)


def test_unbalanceable(peterson):
    with pytest.raises(Unbalanceable):
        balance_and_emit(parse_condensed("45+9A=4A+9"), peterson)
    with pytest.raises(Unbalanceable):
        balance_and_emit(parse_condensed("45+9A+E8=49+5A+E"), peterson, budget_factor=1)


@pytest.mark.parametrize("name", NOT_STRONG)
def test_balancing_only_repeats_existing_groups(name):
    g = generated(name)
    raw, bal = g.raw, g.result.condensed
    for before, after in ((raw.lhs, bal.lhs), (raw.rhs, bal.rhs)):
        assert after[: len(before)] == before
        assert set(after[len(before):]) <= set(before)


def test_equation_holding_in_input_is_rejected(peterson):
    with pytest.raises(GeneratedEquationHoldsInInput):
        balance_and_emit(parse_condensed("12+45=12+45"), peterson)


@pytest.mark.parametrize("name", NOT_STRONG)
def test_generated_mge_fails_in_input(name):
    l = corpus.lattice(name)
    g = generated(name)
    c = g.result.renamed
    assert c.is_balanced()
    eq = g.result.equation
    assert violates(l, eq, g.result.assignment)
    # orthogonality of each group, read back through the lattice
    back = dict(zip(c.symbols(), g.result.condensed.symbols()))
    for group in c.lhs + c.rhs:
        for i, x in enumerate(group):
            for y in group[i + 1:]:
                assert l.orth[l.atom(back[x]), l.atom(back[y])]


@pytest.mark.parametrize("name", NOT_STRONG)
def test_generated_mge_holds_in_strong_lattices(name):
    eq = generated(name).result.equation
    texts = ["12.", "12,34."] + (["123."] if len(eq.variables) <= 12 else [])
    for text in texts:
        assert check_equation(build_oml(text), eq).holds


def test_deterministic():
    a = generate_mge(corpus.lattice("peterson"))
    b = generate_mge(corpus.lattice("peterson"))
    assert str(a.result.equation) == str(b.result.equation)
