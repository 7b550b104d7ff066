"""Greechie diagrams in MMP-style textual notation.

A diagram is written as comma-separated blocks of single-character atom
labels terminated by a period, e.g. ``123,345,567,789,9AB,BC1,2E8,4FA,6DC,DEF.``
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

LABELS = "123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz"
_LABEL_SET = frozenset(LABELS)


class GreechieParseError(ValueError):
    """Base class for malformed diagram text."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at column {position + 1})"
        super().__init__(message)


class UnknownLabelCharacter(GreechieParseError):
    pass


class DuplicateAtomInBlock(GreechieParseError):
    pass


class BlocksShareTwoAtoms(GreechieParseError):
    def __init__(self, first: str, second: str, shared: tuple[str, ...]):
        self.blocks = (first, second)
        self.shared = shared
        super().__init__(
            f"blocks {first!r} and {second!r} share atoms {', '.join(shared)}"
        )


class MissingTerminator(GreechieParseError):
    pass


class TooManyAtoms(GreechieParseError):
    pass


class BlockTooSmall(GreechieParseError):
    pass


@dataclass(frozen=True)
class GreechieDiagram:
    """Atoms and blocks of a Greechie diagram.

    Atoms are the integers ``0..num_atoms-1`` numbered by first appearance;
    ``labels[i]`` is the character used for atom ``i`` in the text.
    """

    blocks: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    @property
    def num_atoms(self) -> int:
        return len(self.labels)

    @property
    def atoms(self) -> range:
        return range(len(self.labels))

    def label_index(self, label: str) -> int:
        return self.labels.index(label)

    def blocks_of(self, atom: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if atom in b]

    def block_text(self, i: int) -> str:
        return "".join(self.labels[a] for a in self.blocks[i])

    def __str__(self) -> str:
        return serialize(self)


def _tokenize(text: str) -> Iterator[tuple[int, str]]:
    for pos, ch in enumerate(text):
        if not ch.isspace():
            yield pos, ch


def parse_diagram(text: str) -> GreechieDiagram:
    """Parse one diagram such as ``"123,345,561."``."""
    blocks_text: list[list[tuple[int, str]]] = [[]]
    terminated = False
    for pos, ch in _tokenize(text):
        if terminated:
            raise GreechieParseError(f"unexpected {ch!r} after terminator", pos)
        if ch == ".":
            terminated = True
        elif ch == ",":
            blocks_text.append([])
        elif ch in _LABEL_SET:
            blocks_text[-1].append((pos, ch))
        else:
            raise UnknownLabelCharacter(f"unknown atom label {ch!r}", pos)
    if not terminated:
        raise MissingTerminator("diagram must end with '.'", len(text))

    labels: list[str] = []
    index: dict[str, int] = {}
    blocks: list[tuple[int, ...]] = []
    for bt in blocks_text:
        if len(bt) < 2:
            where = bt[0][0] if bt else None
            raise BlockTooSmall(
                f"block {''.join(c for _, c in bt)!r} has fewer than 2 atoms", where
            )
        seen = set()
        for pos, ch in bt:
            if ch in seen:
                raise DuplicateAtomInBlock(f"atom {ch!r} repeated in block", pos)
            seen.add(ch)
        for _, ch in bt:
            if ch not in index:
                index[ch] = len(labels)
                labels.append(ch)
        blocks.append(tuple(index[ch] for _, ch in bt))
    if len(labels) > len(LABELS):
        raise TooManyAtoms(f"{len(labels)} atoms exceed the {len(LABELS)}-label alphabet")

    sets = [frozenset(b) for b in blocks]
    for i, j in combinations(range(len(blocks)), 2):
        common = sets[i] & sets[j]
        if len(common) >= 2:
            first = "".join(labels[a] for a in blocks[i])
            second = "".join(labels[a] for a in blocks[j])
            shared = tuple(labels[a] for a in sorted(common))
            raise BlocksShareTwoAtoms(first, second, shared)
    return GreechieDiagram(tuple(blocks), tuple(labels))


def serialize(diagram: GreechieDiagram) -> str:
    return ",".join(diagram.block_text(i) for i in range(len(diagram.blocks))) + "."


def parse_file(text: str) -> list[tuple[int, GreechieDiagram]]:
    """Parse newline-delimited diagrams, returning ``(line_number, diagram)`` pairs.

    Anything after the first '.' on a line is a comment; blank lines and
    lines starting with '#' are skipped. Errors propagate with the line
    number attached as ``err.line``.
    """
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        dot = stripped.find(".")
        body = stripped if dot < 0 else stripped[: dot + 1]
        try:
            out.append((lineno, parse_diagram(body)))
        except GreechieParseError as err:
            err.line = lineno
            raise
    return out
