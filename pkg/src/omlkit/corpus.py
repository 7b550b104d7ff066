"""Embedded lattices with their published properties."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .greechie import GreechieDiagram, parse_diagram
from .lattice import OmlLattice, build_oml


class UnknownCorpusName(KeyError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    """A named Greechie diagram plus facts to re-derive.

    ``facts`` keys: ``go_first_fail`` (int, or ``None`` when every n-Go
    holds), ``strong`` (bool), ``admits_state`` (bool), ``E3``/``E4``
    (bool: the equation holds).  ``provenance`` maps each fact key to where
    the value comes from.
    """

    name: str
    notation: str
    facts: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    @property
    def diagram(self) -> GreechieDiagram:
        return parse_diagram(self.notation)

    @property
    def lattice(self) -> OmlLattice:
        return lattice(self.name)


_GO = "published: passes (n-1)-Go, violates n-Go"
_E_TEXT = "published: 26-18-p9go-f10go-b and 28-20-p10go-f11go-a violate E3, the others satisfy it; all six satisfy E4"

ENTRIES = (
    CorpusEntry(
        "peterson",
        "123,345,567,789,9AB,BC1,2E8,4FA,6DC,DEF.",
        {"go_first_fail": 4, "strong": False, "admits_state": True},
        {
            "go_first_fail": "published: 4-Go fails; 3-Go holding is re-derived by the checker",
            "strong": "published: min m(7') = 1 given m(1) = 1, so no strong set of states",
            "admits_state": "derived: feasibility LP",
        },
    ),
    CorpusEntry(
        "23-16-p7go-f8go-a",
        "123,345,567,789,9AB,BCD,DEF,FGH,HI1,2NE,4JD,6KC,IJ8,GL9,NMA,2LK.",
        {"go_first_fail": 8, "E3": True, "E4": True, "strong": False},
        {"go_first_fail": _GO, "E3": _E_TEXT, "E4": _E_TEXT,
         "strong": "derived: 8-Go fails, and n-Go holds wherever strong states exist"},
    ),
    CorpusEntry(
        "26-18-p8go-f9go-a",
        "123,345,567,789,9AB,BCD,DEF,FGH,HIJ,JKL,LMN,NO1,KP8,4PG,JQA,OE6,KD2,MC5.",
        {"go_first_fail": 9, "E3": True, "E4": True},
        {"go_first_fail": _GO, "E3": _E_TEXT, "E4": _E_TEXT},
    ),
    CorpusEntry(
        "26-18-p9go-f10go-a",
        "123,345,567,789,9AB,BCD,DEF,FGH,HIJ,JKL,LMN,NO1,KQ8,4QE,1PA,6PF,O8G,2KC.",
        {"go_first_fail": 10, "E3": True, "E4": True},
        {"go_first_fail": _GO, "E3": _E_TEXT, "E4": _E_TEXT},
    ),
    CorpusEntry(
        "26-18-p9go-f10go-b",
        "123,345,567,789,9AB,BCD,DEF,FGH,HIJ,JKL,LMN,NO1,2PG,IQC,7QP,HO8,K2B,M4A.",
        {"go_first_fail": 10, "E3": False, "E4": True},
        {"go_first_fail": _GO, "E3": _E_TEXT, "E4": _E_TEXT},
    ),
    CorpusEntry(
        "28-20-p10go-f11go-a",
        "123,345,567,789,9AB,BCD,DEF,FGH,HIJ,JKL,LMN,NO1,MGA,IOB,L4E,KP6,IS5,2QA,PRC,QSR.",
        {"go_first_fail": 11, "E3": False, "E4": True},
        {"go_first_fail": _GO, "E3": _E_TEXT, "E4": _E_TEXT},
    ),
    CorpusEntry(
        "28-20-p11go-f12go-a",
        "123,345,567,789,9AB,BCD,DEF,FGH,HIJ,JKL,LMN,NO1,CO6,I2B,L4A,KSE,MPQ,QRC,2PS,7PG.",
        {"go_first_fail": 12, "E3": True, "E4": True},
        {"go_first_fail": _GO, "E3": _E_TEXT, "E4": _E_TEXT},
    ),
    CorpusEntry(
        "mayet-30-19",
        "123,456,789,ABC,DEF,GHI,JKL,MNO,PQR,STU,147S,ADGT,JMPU,3CL,6FO,9IR,2EQ,5HK,8BN.",
        {"go_first_fail": None, "E3": True, "E4": True, "admits_state": False, "strong": False},
        {
            "go_first_fail": "Mayet's 30-atom OML satisfies all n-Go",
            "E3": "Mayet's 30-atom OML satisfies E3 and E4",
            "E4": "Mayet's 30-atom OML satisfies E3 and E4",
            "admits_state": "Mayet's 30-atom OML does not admit any state",
            "strong": "derived: no state at all, hence no strong set",
        },
    ),
)

_BY_NAME = {e.name: e for e in ENTRIES}
NAMES = tuple(_BY_NAME)
# the six lattices separating consecutive n-Go, ordered by first failure
GODOWSKI_FIGURES = NAMES[1:7]


def corpus_get(name: str) -> CorpusEntry:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise UnknownCorpusName(name) from None


@lru_cache(maxsize=None)
def lattice(name: str) -> OmlLattice:
    return build_oml(corpus_get(name).notation)
