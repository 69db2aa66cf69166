"""``hgc``: command-line driver.

Exit codes: 0 success, 1 failed axiom trials, 2 invalid input or a
computation-domain error, 64 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from decimal import ROUND_HALF_EVEN, Decimal
from pathlib import Path

from . import examples as ex
from .axioms import run_trials
from .category import NonComposableError, convolve, find_unit, i_norm
from .groupoid import GroupTableError, ValidationError
from .gspace import orbit_space
from .hypergroupoid import build_hypergroupoid, detect_hypergroup, groupoid_like_witness
from .representations import fullness_rank, ideal_check, reduced_norm, rep_matrix
from .serialize import (
    ParseError,
    Workspace,
    arrow_to_json,
    dumps,
    groupoid_to_json,
    matrix_to_json,
    orbit_key,
    space_to_json,
    table_to_json,
)

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def format_norm(value: float) -> str:
    return f'{Decimal(value + 0.0).quantize(Decimal("1e-9"), rounding=ROUND_HALF_EVEN):f}'


def _color(text: str, code: str) -> str:
    if os.environ.get("HGC_NO_COLOR") is not None or not sys.stdout.isatty():
        return text
    return f"\x1b[{code}m{text}\x1b[0m"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hgc", description="Convolution algebras of finite hypergroupoids (X*X)/G.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def space_args(sp, space_required=True):
        sp.add_argument("--groupoid", required=True, help="groupoid JSON file")
        sp.add_argument("--space", required=space_required, help="space JSON file")

    sp = sub.add_parser("validate", help="validate a groupoid and optionally a space")
    space_args(sp, space_required=False)

    sp = sub.add_parser("orbits", help="orbits of X*Y under the diagonal action")
    space_args(sp)
    sp.add_argument("--right", help="second space (default: --space)")

    sp = sub.add_parser("hyper", help="structure constants of (X*X)/G")
    space_args(sp)
    sp.add_argument("--out")

    sp = sub.add_parser("conv", help="convolve two function files")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp.add_argument("--out")

    sp = sub.add_parser("norm", help="I-norm or reduced norm of a function")
    sp.add_argument("--kind", choices=["i", "reduced"], required=True)
    sp.add_argument("--function", required=True)

    sp = sub.add_parser("unit", help="unit of the algebra on (X*X)/G")
    space_args(sp)
    sp.add_argument("--out")

    sp = sub.add_parser("rep", help="regular-representation matrix of a function")
    sp.add_argument("--matrix", action="store_true", required=True)
    sp.add_argument("--function", required=True)
    sp.add_argument("--out")

    sp = sub.add_parser("module", help="fullness rank and ideal check of the C*-module")
    space_args(sp)

    sp = sub.add_parser("axioms", help="seeded randomized identity checks")
    sp.add_argument("--trials", type=_nonneg, default=20)
    sp.add_argument("--seed", type=_seed, default=0)
    sp.add_argument("--groupoid")
    sp.add_argument("--space")

    sp = sub.add_parser("example", help="write a shipped example's files")
    sp.add_argument("name", choices=ex.SHIPPED)
    sp.add_argument("--out", required=True)
    return p


def _load_space(ws: Workspace, args):
    return ws.space(args.space, args.groupoid)


def cmd_validate(args, ws: Workspace) -> int:
    g = ws.groupoid(args.groupoid)
    lines = [f"groupoid ok: {len(g.arrows)} arrows, {len(g.units)} units"]
    if args.space:
        m = _load_space(ws, args)
        lines.append(f"space ok: {len(m.points)} points")
    print("\n".join(lines))
    return EXIT_OK


def cmd_orbits(args, ws: Workspace) -> int:
    left = _load_space(ws, args)
    right = ws.space(args.right, args.groupoid) if args.right else left
    orbits = orbit_space(left.space, right.space)
    out = {
        "orbits": [
            {"rep": orbit_key(rep), "members": [orbit_key(p) for p in members]}
            for rep, members in orbits.members.items()
        ]
    }
    sys.stdout.write(dumps(out))
    return EXIT_OK


def cmd_hyper(args, ws: Workspace) -> int:
    t = build_hypergroupoid(_load_space(ws, args))
    _emit(dumps(table_to_json(t)), args.out)
    if args.out:
        witness = groupoid_like_witness(t)
        print(f"orbits: {len(t.orbits)}")
        print(f"groupoid-like: {'yes' if witness is None else 'no ' + str(witness)}")
        print(f"hypergroup (transitive): {'yes' if detect_hypergroup(t) else 'no'}")
    return EXIT_OK


def cmd_conv(args, ws: Workspace) -> int:
    f, g = ws.function(args.left), ws.function(args.right)
    _emit(dumps(arrow_to_json(convolve(f, g))), args.out)
    return EXIT_OK


def cmd_norm(args, ws: Workspace) -> int:
    f = ws.function(args.function)
    value = i_norm(f) if args.kind == "i" else reduced_norm(f)
    print(format_norm(value))
    return EXIT_OK


def cmd_unit(args, ws: Workspace) -> int:
    e = find_unit(_load_space(ws, args))
    if e is None:
        _emit("none\n", args.out)
    else:
        _emit(dumps(arrow_to_json(e)), args.out)
    return EXIT_OK


def cmd_rep(args, ws: Workspace) -> int:
    _emit(dumps(matrix_to_json(rep_matrix(ws.function(args.function)))), args.out)
    return EXIT_OK


def cmd_module(args, ws: Workspace) -> int:
    m = _load_space(ws, args)
    rank, dim = fullness_rank(m)
    print(f"fullness rank: {rank} / {dim} ({'full' if rank == dim else 'not full'})")
    print(f"ideal: {'yes' if ideal_check(m) else 'no'}")
    return EXIT_OK


def cmd_axioms(args, ws: Workspace) -> int:
    spaces = None
    if args.groupoid or args.space:
        if not (args.groupoid and args.space):
            raise UsageError("--groupoid and --space go together")
        spaces = [_load_space(ws, args)]
    failures = 0
    count = 0
    for o in run_trials(args.trials, args.seed, spaces):
        count += 1
        status = _color("pass", "32") if o.passed else _color("FAIL", "31")
        failures += not o.passed
        line = f"trial {o.trial:04d} {o.name}: {status}"
        if o.detail and not o.passed:
            line += f" ({o.detail})"
        print(line)
    print(f"{count} checks, {failures} failed (trials={args.trials}, seed={args.seed})")
    return EXIT_FAILED if failures else EXIT_OK


def cmd_example(args, ws: Workspace) -> int:
    case = ex.named_example(args.name)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "groupoid.json").write_text(dumps(groupoid_to_json(case.groupoid)), encoding="utf-8")
    (out / "space.json").write_text(dumps(space_to_json(case.space)), encoding="utf-8")
    (out / "constants.json").write_text(dumps(case.expected), encoding="utf-8")
    for name in ("groupoid.json", "space.json", "constants.json"):
        print(out / name)
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "orbits": cmd_orbits,
    "hyper": cmd_hyper,
    "conv": cmd_conv,
    "norm": cmd_norm,
    "unit": cmd_unit,
    "rep": cmd_rep,
    "module": cmd_module,
    "axioms": cmd_axioms,
    "example": cmd_example,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    ws = Workspace()
    try:
        return COMMANDS[args.command](args, ws)
    except UsageError as exc:
        print(f"hgc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        n = len(exc.report.violations)
        print(f"hgc: invalid {exc.what} ({n} violation{'s' if n != 1 else ''})", file=sys.stderr)
        for line in exc.report.lines():
            print(f"  {line}", file=sys.stderr)
        return EXIT_INVALID
    except (ParseError, NonComposableError, GroupTableError, OSError, ValueError, KeyError) as exc:
        print(f"hgc: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
