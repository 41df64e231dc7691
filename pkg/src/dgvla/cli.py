"""Command-line interface.

Exit status: 0 on success or PASS, 1 on a semantic failure (FAIL report, critical
level, weight overflow, ...), 2 on malformed or inconsistent input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import catalog, envelope, fileio, loop
from .errors import DgvlaError, InputError, UnknownGenerator
from .graded import format_scalar, parse_scalar
from .vla import CENTRAL, VlaPresentation

ALIASES = {"omega": "ω", "tau": "τ", "w": "ω", "t": "τ"}
VALUE_FLAGS = {"--window", "--cap", "--level", "--k"}


def _window(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must be LO:HI, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("window LO must not exceed HI")
    return lo, hi


def _scalar(text: str) -> Fraction:
    try:
        return parse_scalar(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _level(text: str) -> tuple[str, Fraction]:
    name, sep, val = text.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"level must be NAME=p/q, got {text!r}")
    return name, _scalar(val)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dgvla",
        description="Exact computations with dg vertex Lie algebras and their envelopes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, window=None, cap=None, levels=False) -> None:
        p.add_argument("input", help="presentation file, or a catalog name such as virasoro:1")
        p.add_argument("--format", choices=("human", "machine"), default="human")
        if window is not None:
            p.add_argument("--window", type=_window, default=window, help="mode window LO:HI")
        if cap is not None:
            p.add_argument("--cap", type=_scalar, default=cap, help="weight cap")
        if levels:
            p.add_argument(
                "--level", type=_level, action="append", default=[], help="central level NAME=p/q"
            )

    common(sub.add_parser("check", help="check the dg Lie axioms of the mode algebra"), window=(-5, 5))
    p = sub.add_parser("bracket", help="mode bracket [u_m, v_n]")
    common(p)
    p.add_argument("u")
    p.add_argument("m", type=int)
    p.add_argument("v")
    p.add_argument("n", type=int)
    common(sub.add_parser("envelope", help="PBW basis of the envelope"), cap=Fraction(8), levels=True)
    common(sub.add_parser("character", help="graded dimensions per weight"), cap=Fraction(8), levels=True)
    common(sub.add_parser("cohomology", help="cohomology dimensions per weight"), cap=Fraction(8), levels=True)
    p = sub.add_parser("sugawara", help="Sugawara vector and Virasoro verification")
    common(p, window=(-3, 3), cap=Fraction(4), levels=True)
    p.add_argument("--k", type=_scalar, required=True, help="level of the affine central")
    p = sub.add_parser("locality", help="locality order of two generators")
    common(p, window=(-3, 3), cap=Fraction(8), levels=True)
    p.add_argument("u", help="generator id, or 1 for the vacuum")
    p.add_argument("v", help="generator id, or 1 for the vacuum")
    p.add_argument("--k-max", type=int, default=10)
    p = sub.add_parser("catalog", help="emit a catalog presentation file")
    p.add_argument("name", nargs="?", help="catalog entry; omit to list entries")
    p.add_argument("--out", help="write to this file instead of standard output")
    return parser


def _join_values(argv: Sequence[str]) -> list[str]:
    # let "--window -5:5" through: argparse would read "-5:5" as an option
    out: list[str] = []
    it = iter(argv)
    for a in it:
        if a in VALUE_FLAGS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def resolve_input(text: str) -> VlaPresentation:
    path = Path(text)
    if path.exists():
        return fileio.load(path)
    return catalog.from_catalog(text)


def resolve_name(p: VlaPresentation, name: str) -> str:
    if p.is_generator(name) or p.is_central(name):
        return name
    alias = ALIASES.get(name)
    if alias and (p.is_generator(alias) or p.is_central(alias)):
        return alias
    raise UnknownGenerator(f"unknown generator {name!r} in {p.name}")


def resolve_levels(p: VlaPresentation, pairs: Sequence[tuple[str, Fraction]]) -> dict[str, Fraction]:
    """Match level names to centrals: exact id first, then a unique case-insensitive match."""
    out: dict[str, Fraction] = {}
    for name, val in pairs:
        if p.is_central(name):
            out[name] = val
            continue
        hits = [c for c in p.central_ids if c.lower() == name.lower()]
        if len(hits) != 1:
            raise UnknownGenerator(f"no central named {name!r} in {p.name}")
        out[hits[0]] = val
    return out


def _emit(args, human: str, records: list[dict]) -> None:
    if args.format == "machine":
        for r in records:
            print(json.dumps(r, ensure_ascii=False, sort_keys=True))
    else:
        print(human)


def cmd_check(args) -> int:
    p = resolve_input(args.input)
    report = loop.check_dg_lie(p, args.window)
    print(report.to_json_lines() if args.format == "machine" else report.to_text())
    return 0 if report.passed else 1


def cmd_bracket(args) -> int:
    p = resolve_input(args.input)
    u, v = resolve_name(p, args.u), resolve_name(p, args.v)
    res = loop.bracket_of(p, u, args.m, v, args.n)
    terms = []
    for m, c in res.items():
        key = "central" if m.kind == CENTRAL else "gen"
        terms.append({"coeff": format_scalar(c), key: m.name, "n": m.n})
    _emit(args, str(res), [{"record": "bracket", "value": terms}])
    return 0


def _context(args, p: VlaPresentation) -> envelope.EnvelopeContext:
    return envelope.EnvelopeContext(p, resolve_levels(p, args.level), args.cap)


def cmd_envelope(args) -> int:
    p = resolve_input(args.input)
    ctx = _context(args, p)
    lines, records = [], []
    for w in ctx.weights():
        monos = ctx.basis(w)
        if not monos:
            continue
        lines.append(f"weight {format_scalar(w)}: {len(monos)}")
        for m in monos:
            lines.append(f"  [{ctx.monomial_degree(m)}] {envelope.format_monomial(m)}")
            records.append(
                {
                    "record": "basis",
                    "weight": format_scalar(w),
                    "degree": ctx.monomial_degree(m),
                    "modes": [{"gen": a, "n": n} for n, a in m],
                }
            )
    _emit(args, "\n".join(lines), records)
    return 0


def cmd_character(args) -> int:
    p = resolve_input(args.input)
    ctx = _context(args, p)
    rows = envelope.character(ctx)
    lines = ["weight  dim  by degree"]
    records = []
    for w, dims in rows:
        by = ", ".join(f"{q}:{n}" for q, n in dims.items())
        lines.append(f"{format_scalar(w):>6}  {sum(dims.values()):>3}  {by}")
        records.append(
            {"record": "character", "weight": format_scalar(w), "dims": {str(q): n for q, n in dims.items()}}
        )
    lines.append("totals: " + ",".join(str(sum(d.values())) for _, d in rows))
    _emit(args, "\n".join(lines), records)
    return 0


def cmd_cohomology(args) -> int:
    p = resolve_input(args.input)
    ctx = _context(args, p)
    rows = envelope.cohomology_dims(ctx)
    euler = envelope.euler_characteristics(ctx)
    lines = ["weight  degree  dim H"]
    records = []
    for w, q, h in rows:
        lines.append(f"{format_scalar(w):>6}  {q:>6}  {h:>5}")
        records.append({"record": "cohomology", "weight": format_scalar(w), "degree": q, "dim": h})
    ok = all(a == b for a, b in euler.values())
    lines.append(f"euler characteristics match character: {'yes' if ok else 'NO'}")
    records.append({"record": "euler", "match": ok})
    _emit(args, "\n".join(lines), records)
    return 0 if ok else 1


def cmd_sugawara(args) -> int:
    p = resolve_input(args.input)
    if p.form is None:
        raise InputError(f"{p.name} is not an affine presentation (no invariant form)")
    levels = resolve_levels(p, args.level)
    levels[p.form.central] = args.k
    ctx = envelope.EnvelopeContext(p, levels, args.cap)
    g, form = catalog.dglie_from_affine(p)
    _, two_h = catalog.casimir_h_dual(g, form)
    omega, c = catalog.sugawara(ctx, args.k)
    report = catalog.verify_virasoro_action(omega, ctx, args.window, args.cap, c)
    if args.format == "machine":
        print(
            json.dumps(
                {
                    "record": "sugawara",
                    "omega": envelope.vvector_to_record(omega),
                    "h_dual": format_scalar(two_h / 2),
                    "central_charge": format_scalar(c),
                },
                ensure_ascii=False,
                sort_keys=True,
            )
        )
        print(report.to_json_lines())
    else:
        print(f"omega = {omega}")
        print(f"h_dual = {format_scalar(two_h / 2)}")
        print(f"c = {format_scalar(c)}")
        print(report.to_text())
    return 0 if report.passed else 1


def _vector_for(p: VlaPresentation, ctx: envelope.EnvelopeContext, name: str) -> envelope.VVector:
    if name == "1":
        return envelope.VVector.vacuum()
    return envelope.kappa(resolve_name(p, name), ctx)


def cmd_locality(args) -> int:
    p = resolve_input(args.input)
    ctx = _context(args, p)
    u, v = _vector_for(p, ctx, args.u), _vector_for(p, ctx, args.v)
    k = envelope.locality_order(u, v, ctx, window=args.window, k_max=args.k_max)
    _emit(args, str(k), [{"record": "locality", "order": k}])
    return 0


def cmd_catalog(args) -> int:
    if not args.name:
        for name in sorted(catalog.CATALOG):
            print(name)
        return 0
    text = fileio.dumps(catalog.from_catalog(args.name))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


COMMANDS = {
    "check": cmd_check,
    "bracket": cmd_bracket,
    "envelope": cmd_envelope,
    "character": cmd_character,
    "cohomology": cmd_cohomology,
    "sugawara": cmd_sugawara,
    "locality": cmd_locality,
    "catalog": cmd_catalog,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_values(sys.argv[1:] if argv is None else argv))
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except DgvlaError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
