"""Command-line front end: ``omlkit SUBCOMMAND [options] FILE``.

Input files hold one Greechie diagram per line; ``-`` reads standard input.
Exit status is 0 on success, 1 on I/O or parse errors and 2 when
``--fail-on-violation`` is given and some lattice violates the property
being checked.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Sequence, TextIO

from . import corpus as corpus_mod
from .checker import check_equation
from .families import NOutOfRange, UnknownFamily, parse_family_spec
from .godp import CONVERGED, FIRST_FAIL, go_batch, go_scan
from .greechie import GreechieParseError, parse_diagram, parse_file
from .lattice import LatticeConstructionError, OmlLattice, build_oml
from .mge import MgeError
from .mgegen import MgeGenerationError, generate_mge
from .states import INFINITY, MANY, NO_STATE, admits_state, strong_state_check, unique_state
from .terms import EquationSyntaxError, parse_equation

EXIT_OK, EXIT_ERROR, EXIT_VIOLATION = 0, 1, 2


class CliError(Exception):
    pass


class Table:
    """Rows with fixed columns, printed as text lines or TSV with a header."""

    def __init__(self, columns: Sequence[str], text: Callable[[dict], str]):
        self.columns = list(columns)
        self.text = text
        self.rows: list[dict] = []
        self.exit = EXIT_OK

    def add(self, **row) -> None:
        self.rows.append(row)

    def write(self, out: TextIO, fmt: str) -> None:
        if fmt == "tsv":
            print("\t".join(self.columns), file=out)
            for r in self.rows:
                print("\t".join(_cell(r.get(c)) for c in self.columns), file=out)
        else:
            for r in self.rows:
                print(self.text(r), file=out)


def _cell(v) -> str:
    if v is None:
        return "-"
    return str(v).replace("\t", " ").replace("\n", " ")


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror or e}") from None


def _load(path: str) -> list[tuple[int, OmlLattice]]:
    text = _read(path)
    try:
        diagrams = parse_file(text)
    except GreechieParseError as e:
        raise CliError(f"{path}:{e.line}: {type(e).__name__}: {e}") from None
    out = []
    for line, d in diagrams:
        try:
            out.append((line, build_oml(d)))
        except LatticeConstructionError as e:
            raise CliError(f"{path}:{line}: {type(e).__name__}: {e}") from None
    return out


def _fmt_min(v) -> str:
    return "inf" if v == INFINITY else str(v)


# subcommands ---------------------------------------------------------------

def cmd_parse(args) -> tuple[Table, bool]:
    table = Table(
        ["line", "status", "atoms", "blocks", "elements", "detail"],
        lambda r: f"line {r['line']}: {r['status']}"
        + (f" ({r['atoms']} atoms, {r['blocks']} blocks, {r['elements']} elements)" if r["status"] == "ok" else f": {r['detail']}"),
    )
    bad = False
    for lineno, raw in enumerate(_read(args.file).splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        dot = s.find(".")
        body = s if dot < 0 else s[: dot + 1]
        try:
            d = parse_diagram(body)
            l = build_oml(d)
        except (GreechieParseError, LatticeConstructionError) as e:
            bad = True
            table.add(line=lineno, status="error", detail=f"{type(e).__name__}: {e}")
            continue
        table.add(line=lineno, status="ok", atoms=d.num_atoms, blocks=len(d.blocks), elements=l.size, detail=str(d))
    if bad:
        table.exit = EXIT_ERROR
    return table, False


def cmd_info(args) -> tuple[Table, bool]:
    table = Table(
        ["line", "atoms", "blocks", "elements", "diagram"],
        lambda r: f"line {r['line']}: {r['atoms']} atoms, {r['blocks']} blocks, {r['elements']} elements",
    )
    for line, l in _load(args.file):
        d = l.diagram
        table.add(line=line, atoms=d.num_atoms, blocks=len(d.blocks), elements=l.size, diagram=str(d))
    return table, False


def _equation(args):
    if (args.eq is None) == (args.family is None):
        raise CliError("check needs exactly one of --eq and --family")
    try:
        if args.eq is not None:
            return parse_equation(args.eq)
        return parse_family_spec(args.family)
    except EquationSyntaxError as e:
        raise CliError(f"--eq: {e}") from None
    except (UnknownFamily, NOutOfRange, ValueError) as e:
        raise CliError(f"--family: {e}") from None


def cmd_check(args) -> tuple[Table, bool]:
    eq = _equation(args)
    table = Table(
        ["line", "verdict", "counterexample", "assignments"],
        lambda r: f"line {r['line']}: {r['verdict']}" + (f" at {r['counterexample']}" if r["counterexample"] else ""),
    )
    violated = False
    for line, l in _load(args.file):
        v = check_equation(l, eq, jobs=args.jobs)
        cex = None
        if not v.holds:
            violated = True
            cex = ", ".join(f"{k}={l.label(x)}" for k, x in v.counterexample.items())
        table.add(line=line, verdict="holds" if v.holds else "fails", counterexample=cex,
                  assignments=v.assignments_tested)
    return table, violated


def cmd_states(args) -> tuple[Table, bool]:
    table = Table(["line", "mode", "verdict", "detail"],
                  lambda r: f"line {r['line']}: {r['verdict']}" + (f"; {r['detail']}" if r["detail"] else ""))
    violated = False
    for line, l in _load(args.file):
        if args.mode == "strong":
            v = strong_state_check(l, jobs=args.jobs)
            if v.strong:
                table.add(line=line, mode="strong", verdict="strong", detail=None)
            else:
                violated = True
                w = v.witness
                table.add(line=line, mode="strong", verdict="not strong",
                          detail=f"witness {l.label(w.a)}, {l.label(w.b)}; min {_fmt_min(w.min_value)}")
        elif args.mode == "any":
            s = admits_state(l)
            violated |= s is None
            table.add(line=line, mode="any", verdict="no state" if s is None else "state",
                      detail=None if s is None else s.format())
        else:
            kind, s = unique_state(l)
            violated |= kind == NO_STATE
            label = {NO_STATE: "no state", MANY: "many states"}.get(kind, "unique state")
            table.add(line=line, mode="unique", verdict=label, detail=None if s is None else s.format())
    return table, violated


def cmd_goscan(args) -> tuple[Table, bool]:
    loaded = _load(args.file)
    if args.max_n < 3:
        raise CliError("--max-n must be at least 3")
    results = go_batch([l for _, l in loaded], args.max_n, args.jobs)
    table = Table(["line", "outcome", "n", "passes"], lambda r: f"line {r['line']}: {r['text']}")
    violated = False
    for (line, _), res in zip(loaded, results):
        violated |= res.outcome == FIRST_FAIL
        table.add(line=line, outcome=res.outcome, n=res.n, passes=res.passes, text=str(res))
    return table, violated


def cmd_genmge(args) -> tuple[Table, bool]:
    table = Table(
        ["line", "status", "witness", "pinned", "condensed", "balanced", "renamed", "mge"],
        _genmge_text,
    )
    violated = False
    for line, l in _load(args.file):
        try:
            g = generate_mge(l, jobs=args.jobs)
        except (MgeGenerationError, MgeError) as e:
            violated = True
            table.add(line=line, status="error", detail=f"{type(e).__name__}: {e}")
            continue
        if g is None:
            table.add(line=line, status="strong")
            continue
        violated = True
        w = g.witness
        table.add(
            line=line, status="generated",
            witness=f"{l.label(w.a)}, {l.label(w.b)}",
            pinned=",".join(l.diagram.block_text(i) for i in g.record.pinned),
            condensed=str(g.raw), balanced=str(g.result.condensed),
            renamed=str(g.result.renamed), mge=str(g.result.equation),
        )
    return table, violated


def _genmge_text(r: dict) -> str:
    head = f"line {r['line']}: "
    if r["status"] == "strong":
        return head + "strong set of states, nothing to generate"
    if r["status"] == "error":
        return head + r["detail"]
    return "\n".join([
        head + f"witness {r['witness']}; pinned blocks {r['pinned']}",
        f"  condensed  {r['condensed']}",
        f"  balanced   {r['balanced']}",
        f"  renamed    {r['renamed']}",
        f"  mge        {r['mge']}",
    ])


def _derive(name: str, fact: str):
    l = corpus_mod.lattice(name)
    if fact == "go_first_fail":
        res = go_scan(l)
        return res.n if res.outcome == FIRST_FAIL else (None if res.outcome == CONVERGED else "cutoff")
    if fact == "strong":
        return strong_state_check(l).strong
    if fact == "admits_state":
        return admits_state(l) is not None
    if fact in ("E3", "E4"):
        return check_equation(l, parse_family_spec(f"en:{fact[1]}")).holds
    raise CliError(f"no derivation for fact {fact!r}")


def cmd_corpus(args) -> tuple[Table, bool]:
    if args.action == "list":
        table = Table(["name", "notation"], lambda r: f"{r['name']}  {r['notation']}")
        for e in corpus_mod.ENTRIES:
            table.add(name=e.name, notation=e.notation)
        return table, False
    names = args.names or (list(corpus_mod.NAMES) if args.action == "verify" else [])
    if args.action == "show" and len(names) != 1:
        raise CliError("corpus show takes exactly one NAME")
    try:
        entries = [corpus_mod.corpus_get(n) for n in names]
    except corpus_mod.UnknownCorpusName as e:
        raise CliError(f"unknown corpus name {e.args[0]!r}") from None
    if args.action == "show":
        e = entries[0]
        table = Table(["name", "fact", "value", "source"],
                      lambda r: f"{r['fact']}: {r['value']}" + (f"  ({r['source']})" if r["source"] else ""))
        table.add(name=e.name, fact="notation", value=e.notation, source=None)
        l = e.lattice
        table.add(name=e.name, fact="size", value=f"{e.diagram.num_atoms} atoms, {len(e.diagram.blocks)} blocks, {l.size} elements", source=None)
        for k, v in e.facts.items():
            table.add(name=e.name, fact=k, value=v, source=e.provenance.get(k))
        return table, False
    table = Table(["name", "fact", "expected", "derived", "ok"],
                  lambda r: f"{'ok  ' if r['ok'] else 'FAIL'} {r['name']} {r['fact']}: expected {r['expected']}, derived {r['derived']}")
    mismatch = False
    for e in entries:
        for fact, expected in e.facts.items():
            got = _derive(e.name, fact)
            ok = got == expected
            mismatch |= not ok
            table.add(name=e.name, fact=fact, expected=expected, derived=got, ok=ok)
    table.exit = EXIT_VIOLATION if mismatch else EXIT_OK
    return table, False


# argument parsing -----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # usage errors share the exit code of other input errors; 2 means violation
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "tsv"), default="text", help="output format (default text)")
    common.add_argument("--fail-on-violation", action="store_true",
                        help="exit 2 when any lattice violates the checked property")
    common.add_argument("--jobs", type=int, default=1, metavar="K", help="worker threads (default 1)")

    p = _Parser(prog="omlkit", description="Finite orthomodular lattice toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("parse", parents=[common], help="validate each diagram line")
    s.add_argument("file")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("info", parents=[common], help="element, atom and block counts")
    s.add_argument("file")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("check", parents=[common], help="decide an equation on each lattice")
    s.add_argument("--eq", help='equation text, e.g. "a # b |- a v b == b v a"')
    s.add_argument("--family", metavar="NAME[:N]", help="built-in family, e.g. go_gamma:4 or estar2c")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("states", parents=[common], help="state existence, uniqueness or strongness")
    s.add_argument("--mode", choices=("strong", "any", "unique"), default="strong")
    s.add_argument("file")
    s.set_defaults(func=cmd_states)

    s = sub.add_parser("goscan", parents=[common], help="first failing n-Go or convergence")
    s.add_argument("--max-n", type=int, default=100)
    s.add_argument("file")
    s.set_defaults(func=cmd_goscan)

    s = sub.add_parser("genmge", parents=[common], help="generate an MGE failing in each lattice")
    s.add_argument("file")
    s.set_defaults(func=cmd_genmge)

    s = sub.add_parser("corpus", parents=[common], help="embedded lattices: list, show NAME, verify [NAME...]")
    s.add_argument("action", choices=("list", "show", "verify"))
    s.add_argument("names", nargs="*")
    s.set_defaults(func=cmd_corpus)
    return p


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        print("omlkit: error: --jobs must be at least 1", file=err)
        return EXIT_ERROR
    try:
        table, violated = args.func(args)
    except CliError as e:
        print(f"omlkit: error: {e}", file=err)
        return EXIT_ERROR
    table.write(out, args.format)
    code = table.exit
    if code == EXIT_OK and violated and args.fail_on_violation:
        code = EXIT_VIOLATION
    return code


def main() -> None:
    sys.exit(run())
