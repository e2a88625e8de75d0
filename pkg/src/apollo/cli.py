"""Command-line front end: ``apollo <subcommand> ...``.

Exit status is 0 when every check passes (discrepancy entries are
listed but do not fail the run), 1 on a failed check and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Sequence

from . import coxeter, domain, kernels, packing, render
from . import lorentz as lz

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def default_kmax(rho: int) -> int:
    if rho <= 5:
        return 40
    if rho <= 8:
        return 10
    return 5


def _rho(text: str) -> int:
    try:
        r = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"rho must be an integer, got {text!r}") from None
    if not lz.RHO_MIN <= r <= lz.RHO_MAX:
        raise argparse.ArgumentTypeError(f"rho must lie in [{lz.RHO_MIN}, {lz.RHO_MAX}]")
    return r


def _kmax(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"kmax must be an integer, got {text!r}") from None
    if k < 0:
        raise argparse.ArgumentTypeError("kmax must be non-negative")
    return k


def _vector(text: str) -> tuple[int, ...]:
    try:
        return lz.parse_vector(text)
    except (ValueError, lz.LatticeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _perspective(args) -> tuple[int, ...] | None:
    if args.perspective is None:
        return None
    E = args.perspective
    if len(E) != args.rho:
        raise UsageError(f"perspective has {len(E)} entries, expected {args.rho}")
    if lz.dot(E, E) != 0 or sum(E) <= 0:
        raise UsageError(f"perspective {lz.format_vector(E)} is not a future isotropic vector")
    return E


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# -- subcommands ---------------------------------------------------------------------


def cmd_verify(args) -> int:
    case = domain.run_case(args.rho)
    kmax = args.kmax if args.kmax is not None else default_kmax(args.rho)
    en = packing.enumerate_packing(args.rho, kmax)
    rep = packing.verify_packing(en.records)
    ok = case.passed and rep.ok
    if args.format == "json":
        body = {
            **case.to_dict(),
            "discrepancies": [c.name for c in case.discrepancies()],
            "packing": {
                "kmax": kmax,
                "records": len(en.records),
                "height_bound": en.height_bound,
                "truncated": en.truncated,
                **rep.to_dict(),
            },
            "passed": ok,
        }
        text = json.dumps(body, indent=2, default=domain._jsonable)
    else:
        lines = [case.to_text(), ""]
        lines.append(
            f"packing: {rep.count} spheres with curvature <= {kmax}, "
            f"{rep.tangent_pairs} tangent pairs, {rep.violations} violations"
        )
        for c in case.discrepancies():
            lines.append(f"discrepancy: {c.name}")
        lines.append("PASS" if ok else "FAIL")
        text = "\n".join(lines)
    _write(text, args.out)
    if not ok:
        first = case.failures()[0].name if case.failures() else f"packing: {rep.first_violation}"
        print(f"first failure: {first}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_vertices(args) -> int:
    Q, Qp = domain.solve_vertices(args.rho)
    if args.format == "json":
        text = json.dumps({"rho": args.rho, "Q": [list(v) for v in Q], "Qprime": [list(v) for v in Qp]}, indent=2)
    else:
        rows = [f"Q_{i}=({lz.format_vector(v)})" for i, v in enumerate(Q, 1)]
        rows += [f"Q_{i}'=({lz.format_vector(v)})" for i, v in enumerate(Qp, 1)]
        text = "\n".join(rows)
    _write(text, args.out)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    kmax = args.kmax if args.kmax is not None else default_kmax(args.rho)
    en = packing.enumerate_packing(args.rho, kmax, _perspective(args), max_records=args.max_records)
    if args.format == "json":
        text = json.dumps(
            {
                "rho": en.rho,
                "perspective": list(en.E),
                "kmax": kmax,
                "windowed": en.windowed,
                "height_bound": en.height_bound,
                "truncated": en.truncated,
                "records": [
                    {"curvature": r.curvature, "vector": list(r.vector), "word": list(r.word), "height": r.height}
                    for r in en.records
                ],
            },
            indent=2,
        )
    else:
        text = en.to_csv()
    _write(text, args.out)
    if en.truncated:
        print("warning: record cap reached; output truncated", file=sys.stderr)
    return EXIT_OK


def cmd_cluster(args) -> int:
    m = args.vector
    if len(m) != args.rho:
        raise UsageError(f"vector has {len(m)} entries, expected {args.rho}")
    if lz.dot(m, m) != 1:
        raise UsageError("cluster needs a vector with m.m = 1")
    try:
        cl = packing.find_cluster(m, args.rho)
    except packing.MembershipError as exc:
        print(f"first failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    products = cl.pairwise_products()
    ok = all(p == -1 for p in products)
    if args.format == "json":
        text = json.dumps({"members": [list(v) for v in cl.members], "word": list(cl.word), "tangent": ok}, indent=2)
    else:
        text = "\n".join(lz.format_vector(v) for v in cl.members)
    _write(text, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_coxeter(args) -> int:
    g = coxeter.demo_set(args.set) if args.set else coxeter.graph_for(args.rho)
    text = g.to_json() if args.format == "json" else g.to_dot()
    _write(text, args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    if args.rho not in (4, 5):
        raise UsageError("render supports rho = 4 (strip) and rho = 5 (cross-section)")
    kmax = args.kmax if args.kmax is not None else default_kmax(args.rho)
    en = packing.enumerate_packing(args.rho, kmax)
    data = render.strip_figure(en.records) if args.rho == 4 else render.slice_figure(en.records)
    text = render.emit_svg(data, title=f"rho={args.rho}, curvature <= {kmax}")
    _write(text, args.out)
    return EXIT_OK


def cmd_descartes(args) -> int:
    rng = random.Random(args.seed)
    group = packing.build_group(args.rho)
    bad = []
    for _ in range(args.samples):
        cl = packing.random_cluster(args.rho, rng, length=rng.randint(1, 20), group=group)
        rep = packing.descartes_check(cl)
        if not rep.ok:
            bad.append(rep)
    lines = [f"rho={args.rho} samples={args.samples} failures={len(bad)}"]
    for rep in bad[:5]:
        lines.append(f"  curvatures={rep.curvatures} value={rep.quadratic_form} classical={rep.classical}")
    _write("\n".join(lines), args.out)
    if bad:
        print(f"first failure: {bad[0].curvatures}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="apollo", description="Generalized Apollonian hypersphere packings for rho = 4..10.")
    p.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({kernels.BACKEND} kernels)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, formats, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--rho", type=_rho, required=name != "coxeter", default=None)
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--out", help="output file (default: stdout)")
        sp.set_defaults(func=fn)
        return sp

    sp = add("verify", cmd_verify, ["json", "text"], "run the fundamental-domain checklist and packing checks")
    sp.add_argument("--kmax", type=_kmax)
    add("vertices", cmd_vertices, ["text", "json"], "print the prism vertices Q_i and Q_i'")
    sp = add("enumerate", cmd_enumerate, ["csv", "json"], "list packing spheres up to a curvature bound")
    sp.add_argument("--kmax", type=_kmax)
    sp.add_argument("--perspective", type=_vector, help="isotropic vector put at infinity (default e_{rho-1}+e_rho)")
    sp.add_argument("--max-records", type=int, default=2_000_000)
    sp = add("cluster", cmd_cluster, ["text", "json"], "certify a mutually tangent cluster containing a sphere")
    sp.add_argument("--vector", type=_vector, required=True)
    sp = add("coxeter", cmd_coxeter, ["dot", "json"], "Coxeter graph of the reflective faces or a named set")
    sp.add_argument("--set", choices=coxeter.DEMO_SETS, help="rho = 4 generating set instead of the faces")
    sp = add("render", cmd_render, ["svg"], "draw the strip packing (rho 4) or the v_45 slice (rho 5)")
    sp.add_argument("--kmax", type=_kmax)
    sp = add("descartes", cmd_descartes, ["text"], "check the Descartes identities on random clusters")
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if args.command == "coxeter" and args.rho is None and args.set is None:
        print("coxeter needs --rho or --set", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, lz.LatticeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
