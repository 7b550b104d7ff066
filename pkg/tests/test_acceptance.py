"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import io
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from omlkit import corpus
from omlkit.checker import check_equation
from omlkit.cli import run
from omlkit.families import (
    ea3,
    en,
    estar2_commute,
    estarn,
    go_2n,
    go_gamma,
    oa3_4var,
)
from omlkit.godp import CONVERGED, FIRST_FAIL, go_scan
from omlkit.greechie import LABELS
from omlkit.lattice import LatticeConstructionError, build_oml
from omlkit.mge import condensed_to_mge, godowski_condensed, mge_isomorphic
from omlkit.mgegen import build_condensed, generate_mge, relax_blocks
from omlkit.ratlp import OPTIMAL, solve
from omlkit.states import admits_state, pair_lp, strong_state_check
from omlkit.terms import EQ, LE, Arrow, Commutes, Comp, Join, Meet, One, Orthogonal, Var, Zero, equation

from oracles import axiom_failures

ALL = corpus.NAMES
SIX = ("23-16-p7go-f8go-a", "26-18-p8go-f9go-a", "26-18-p9go-f10go-a",
       "26-18-p9go-f10go-b", "28-20-p10go-f11go-a", "28-20-p11go-f12go-a")


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run_criterion(number, title):
        start = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            secs = time.perf_counter() - start
            with capsys.disabled():
                print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}: {title} ({secs:.1f} s)")
    return run_criterion


def timed(limit):
    class Clock:
        def __enter__(self):
            self.t = time.perf_counter()
            return self

        def __exit__(self, *exc):
            self.elapsed = time.perf_counter() - self.t
            if exc[0] is None:
                assert self.elapsed < limit, f"took {self.elapsed:.1f} s, limit {limit} s"
    return Clock()


def cli(argv):
    out = io.StringIO()
    code = run(argv, out, io.StringIO())
    return code, out.getvalue()


def test_c01_peterson_lp(criterion, tmp_path):
    with criterion(1, "Peterson LP minimum of m(7') given m(1)=1 is exactly 1; reported not strong"):
        path = tmp_path / "peterson.txt"
        path.write_text(corpus.corpus_get("peterson").notation + "\n")
        with timed(1.0):
            l = build_oml(corpus.corpus_get("peterson").notation)
            out = solve(pair_lp(l, l.atom("1"), l.element("7'")))
            code, text = cli(["states", "--mode", "strong", str(path)])
        assert out.status == OPTIMAL
        assert out.value == Fraction(1)
        assert code == 0
        assert text.strip() == "line 1: not strong; witness 1, 7'; min 1"


def test_c02_peterson_relaxation(criterion):
    with criterion(2, "Peterson relaxation: 6 of 10 blocks relaxed, condensed strings exact"):
        with timed(1.0):
            l = build_oml(corpus.corpus_get("peterson").notation)
            rec = relax_blocks(l, (l.atom("1"), l.element("7'")))
            c = build_condensed(l, rec)
        relaxed = {l.diagram.block_text(i) for i, r in enumerate(rec.relaxed) if r}
        assert len(rec.relaxed) == 10 and sum(rec.relaxed) == 6
        assert relaxed == {"123", "567", "789", "BC1", "4FA", "DEF"}
        assert str(c) == "45+9A+E8+6D=56+89+4A+DE"
        assert str(c.renamed()) == "ab+cd+ef+gh=bg+fc+ad+he"


def test_c03_peterson_mge(criterion):
    with criterion(3, "generated Peterson MGE fails in Peterson and is 4-Go up to renaming"):
        with timed(10.0):
            l = build_oml(corpus.corpus_get("peterson").notation)
            g = generate_mge(l)
            verdict = check_equation(l, g.result.equation)
        assert not verdict.holds
        go4 = condensed_to_mge(godowski_condensed(4), lambda x, y: True)
        assert mge_isomorphic(g.result.mge, go4)


def test_c04_goscan_corpus(criterion):
    expected = {
        "peterson": 4,
        "23-16-p7go-f8go-a": 8,
        "26-18-p8go-f9go-a": 9,
        "26-18-p9go-f10go-a": 10,
        "26-18-p9go-f10go-b": 10,
        "28-20-p10go-f11go-a": 11,
        "28-20-p11go-f12go-a": 12,
    }
    with criterion(4, "goscan first-fail values 4, 8, 9, 10, 10, 11, 12"):
        with timed(120.0):
            got = {}
            for name in expected:
                res = go_scan(corpus.lattice(name))
                assert res.outcome == FIRST_FAIL
                got[name] = res.n
            pet = corpus.lattice("peterson")
            go3 = check_equation(pet, go_gamma(3)).holds
            go4 = check_equation(pet, go_gamma(4)).holds
        assert got == expected
        assert go3 and not go4


def test_c05_e_family(criterion):
    e3_fails = {"26-18-p9go-f10go-b", "28-20-p10go-f11go-a"}
    with criterion(5, "E3 fails on exactly two of the six lattices; E4 holds on all six"):
        with timed(600.0):
            e3 = {name: check_equation(corpus.lattice(name), en(3)).holds for name in SIX}
            e4 = {name: check_equation(corpus.lattice(name), en(4)).holds for name in SIX}
        assert {n for n, ok in e3.items() if not ok} == e3_fails
        assert all(e4.values())


def test_c06_mayet(criterion):
    with criterion(6, "Mayet 30-atom OML: no state, all n-Go hold, E3 and E4 hold"):
        with timed(300.0):
            l = corpus.lattice("mayet-30-19")
            state = admits_state(l)
            scan = go_scan(l)
            e3 = check_equation(l, en(3)).holds
            e4 = check_equation(l, en(4)).holds
        assert state is None
        assert scan.outcome == CONVERGED
        assert e3 and e4


def test_c07_universal_equations(criterion):
    eqs = {"go_2n(2)": go_2n(2), "estar2_commute": estar2_commute(), "en(2)": en(2), "estarn(2)": estarn(2)}
    with criterion(7, "go_2n(2), estar2_commute, en(2), estarn(2) hold on every corpus lattice"):
        failures = [(label, name) for name in ALL for label, eq in eqs.items()
                    if not check_equation(corpus.lattice(name), eq).holds]
        assert failures == []


def test_c08_equivalences(criterion):
    pairs = [
        ("ea3", ea3(), "oa3_4var", oa3_4var()),
        ("en(3)", en(3), "estarn(3)", estarn(3)),
        ("go_gamma(3)", go_gamma(3), "go_2n(3)", go_2n(3)),
        ("go_gamma(4)", go_gamma(4), "go_2n(4)", go_2n(4)),
    ]
    with criterion(8, "ea3~oa3_4var, en(3)~estarn(3), go_gamma(n)~go_2n(n) for n=3,4 on every corpus lattice"):
        discrepancies = []
        for name in ALL:
            l = corpus.lattice(name)
            for la, a, lb, b in pairs:
                va, vb = check_equation(l, a).holds, check_equation(l, b).holds
                if va != vb:
                    discrepancies.append((name, la, va, lb, vb))
        assert discrepancies == []


def small_diagrams():
    """All 1- and 2-block diagrams (block sizes 2-4) whose lattice has at most 16 elements."""
    out = []
    for s1 in (2, 3, 4):
        out.append(LABELS[:s1] + ".")
        for s2 in (2, 3, 4):
            if s2 < s1:
                continue
            out.append(LABELS[:s1] + "," + LABELS[s1:s1 + s2] + ".")
            out.append(LABELS[:s1] + "," + LABELS[s1 - 1:s1 - 1 + s2] + ".")
    lattices = []
    for text in out:
        try:
            l = build_oml(text)
        except LatticeConstructionError:
            continue
        if l.size <= 16:
            lattices.append((text, l))
    return lattices


def random_equation(rng):
    names = ["a", "b", "c"][: rng.randint(1, 3)]

    def term(depth):
        if depth == 0 or rng.random() < 0.3:
            r = rng.random()
            return Zero() if r < 0.05 else One() if r < 0.1 else Var(rng.choice(names))
        op = rng.choice([Comp, Meet, Join, Arrow])
        if op is Comp:
            return Comp(term(depth - 1))
        return op(term(depth - 1), term(depth - 1))

    hyps = [rng.choice([Orthogonal, Commutes])(Var(rng.choice(names)), term(1))
            for _ in range(rng.randint(0, 2))]
    return equation(hyps, term(3), rng.choice([LE, EQ]), term(3))


def test_c09_oracle_equivalence(criterion):
    rng = random.Random(20240611)
    eqs = [random_equation(rng) for _ in range(20)]
    with criterion(9, "pruned checker = exhaustive checker on 20 random equations; godp = checker at n=3,4"):
        lattices = small_diagrams()
        assert len(lattices) >= 8
        discrepancies = []
        for text, l in lattices:
            for eq in eqs:
                fast = check_equation(l, eq)
                slow = check_equation(l, eq, prune=False)
                if (fast.holds, fast.counterexample) != (slow.holds, slow.counterexample):
                    discrepancies.append((text, str(eq)))
            scan = go_scan(l)
            for n in (3, 4):
                if scan.holds(n) != check_equation(l, go_gamma(n)).holds:
                    discrepancies.append((text, f"go_gamma({n})"))
        assert discrepancies == []
        # both verdicts must actually occur, or the comparison proves little
        verdicts = {check_equation(l, eq).holds for _, l in lattices for eq in eqs}
        assert verdicts == {True, False}


def test_c10_construction_axioms(criterion):
    with criterion(10, "ortholattice, orthomodularity and De Morgan hold exhaustively on every corpus lattice"):
        with timed(60.0):
            bad = {name: axiom_failures(corpus.lattice(name)) for name in ALL}
        assert all(v == [] for v in bad.values()), {k: v[:3] for k, v in bad.items() if v}
