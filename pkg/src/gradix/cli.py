"""Batch command-line front end.

Two subcommands:
  gradix eval  --lattice <kind> --script <path> [--out <dir>] [--scheme A:int,...]
  gradix check --suite <id> [--lattice <kind>] [--seed <n>] [--n <count>]

Scripts are sequences of LOAD/VAR/LET/EVAL/EVALPTC/COMPILE/SAVE statements;
outputs are written deterministically (sorted rows, 9-significant-digit
ranks), so identical inputs and seeds give byte-identical output.  The
GRADIX_SEED environment variable is the seed fallback; flags win.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import algebra as ra
from . import parsing
from . import ptc as pc
from .errors import GradixError, ParseError, TypeRegistryError
from .harness.gen import GenConfig
from .harness.suites import BOOLEAN_SUITES, THEOREM_IDS, run_theorem_suite
from .lattice import ResiduatedLattice, lattice_from_spec, make_lattice
from .table import (
    AttributeRegistry,
    DatabaseInstance,
    RankedDataTable,
    read_csv,
    table_to_csv,
)

EXIT_OK = 0
EXIT_QUERY = 1
EXIT_IO = 2
EXIT_UNKNOWN_SUITE = 3

_PYTYPE = {"integer": int, "text": str, "decimal": float}


class Session:
    """One lattice, one attribute-type registry, the loaded tables."""

    def __init__(self, lattice: ResiduatedLattice):
        self.lattice = lattice
        self.registry = AttributeRegistry()
        self.tables: dict[str, RankedDataTable] = {}

    def bind(self, name: str, table: RankedDataTable) -> None:
        self.tables[name] = table

    def schemes(self) -> dict:
        return {name: t.scheme for name, t in self.tables.items()}

    def instance(self) -> DatabaseInstance:
        return DatabaseInstance(self.lattice, self.tables)


def _check_value_types(expr, registry: AttributeRegistry) -> None:
    for node in ra.walk(expr):
        if isinstance(node, ra.Singleton):
            declared = registry.type_of(node.attribute)
            if declared and not isinstance(node.value, _PYTYPE[declared]):
                raise TypeRegistryError(
                    f"singleton value {node.value!r} does not match declared "
                    f"type {declared} of {node.attribute!r}"
                )


def run_script(statements, session: Session, out_dir=None, stdout=None) -> int:
    """Execute parsed statements in order; returns the process exit code."""
    stdout = stdout or sys.stdout
    out_base = Path(out_dir) if out_dir else None

    def emit_table(kind: str, line: int, table: RankedDataTable):
        stdout.write(f"-- {kind} (line {line})\n")
        stdout.write(table_to_csv(table))
        stdout.write("\n")

    for stmt in statements:
        try:
            match stmt:
                case parsing.LoadStmt(name, path, types, _line):
                    with open(path, encoding="utf-8", newline="") as fh:
                        table = read_csv(fh, session.lattice, session.registry,
                                         dict(types))
                    session.bind(name, table)
                case parsing.VarStmt():
                    pass
                case parsing.LetStmt(name, expr, _line):
                    expr = ra.resolve_schemes(expr, session.schemes())
                    _check_value_types(expr, session.registry)
                    session.bind(name, ra.eval_ra(expr, session.instance()))
                case parsing.EvalStmt(expr, line):
                    expr = ra.resolve_schemes(expr, session.schemes())
                    _check_value_types(expr, session.registry)
                    emit_table("EVAL", line, ra.eval_ra(expr, session.instance()))
                case parsing.EvalPtcStmt(expr, line):
                    expr = pc.resolve_schemes(expr, session.schemes())
                    for atom in pc.atoms_of(expr):
                        _check_value_types(atom.expr, session.registry)
                    emit_table("EVALPTC", line, pc.eval_ptc(expr, session.instance()))
                case parsing.CompileStmt(expr, line):
                    expr = pc.resolve_schemes(expr, session.schemes())
                    compiled = pc.compile_ptc_to_ra(expr)
                    stdout.write(f"-- COMPILE (line {line})\n")
                    stdout.write(ra.ra_to_text(compiled) + "\n")
                case parsing.SaveStmt(name, path, _line):
                    target = Path(path)
                    if out_base is not None and not target.is_absolute():
                        target = out_base / target
                    target.parent.mkdir(parents=True, exist_ok=True)
                    target.write_text(table_to_csv(session.tables[name]),
                                      encoding="utf-8")
        except OSError as exc:
            print(f"gradix: i/o error at line {stmt.line}: {exc}", file=sys.stderr)
            return EXIT_IO
        except GradixError as exc:
            print(f"gradix: error at line {stmt.line}: {exc}", file=sys.stderr)
            return EXIT_QUERY
    return EXIT_OK


def _cmd_eval(args) -> int:
    try:
        lattice = lattice_from_spec(args.lattice)
    except GradixError as exc:
        print(f"gradix: {exc}", file=sys.stderr)
        return EXIT_QUERY
    session = Session(lattice)
    if args.scheme:
        try:
            for part in args.scheme.split(","):
                attr, _, ty = part.partition(":")
                session.registry.declare(attr.strip(), ty.strip())
        except GradixError as exc:
            print(f"gradix: {exc}", file=sys.stderr)
            return EXIT_QUERY
    try:
        text = Path(args.script).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"gradix: cannot read script: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        statements = parsing.parse_script(text)
    except ParseError as exc:
        print(f"gradix: {args.script}:{exc}", file=sys.stderr)
        return EXIT_QUERY
    return run_script(statements, session, out_dir=args.out)


def _default_seed() -> int:
    env = os.environ.get("GRADIX_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            print(f"gradix: ignoring non-integer GRADIX_SEED {env!r}", file=sys.stderr)
    return 0


def _cmd_check(args) -> int:
    if args.suite not in THEOREM_IDS:
        print(f"gradix: unknown suite {args.suite!r}; known: {', '.join(THEOREM_IDS)}",
              file=sys.stderr)
        return EXIT_UNKNOWN_SUITE
    if args.suite in BOOLEAN_SUITES:
        lattice = make_lattice("boolean")
    else:
        try:
            lattice = lattice_from_spec(args.lattice or "godel")
        except GradixError as exc:
            print(f"gradix: {exc}", file=sys.stderr)
            return EXIT_QUERY
    seed = args.seed if args.seed is not None else _default_seed()
    config = GenConfig(seed=seed, lattice=lattice)
    report = run_theorem_suite(args.suite, config, args.n)
    print(report.summary())
    return EXIT_OK if report.passed else EXIT_QUERY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradix",
        description="rank-aware relational algebra engine and theorem harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="run a batch query script")
    p_eval.add_argument("--lattice", required=True,
                        help="boolean | godel | lukasiewicz | goguen | chain:<n> | table:<path>")
    p_eval.add_argument("--script", required=True, help="script file to run")
    p_eval.add_argument("--out", help="base directory for SAVE targets")
    p_eval.add_argument("--scheme", help="session attribute types, e.g. A:int,B:text")
    p_eval.set_defaults(func=_cmd_eval)

    p_check = sub.add_parser("check", help="run a theorem suite")
    p_check.add_argument("--suite", required=True, help=", ".join(THEOREM_IDS))
    p_check.add_argument("--lattice", help="lattice for graded suites (default godel)")
    p_check.add_argument("--seed", type=int, help="suite seed (falls back to GRADIX_SEED)")
    p_check.add_argument("--n", type=int, help="instances to test")
    p_check.set_defaults(func=_cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
