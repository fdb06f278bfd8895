"""Command-line front end for batch structure checks, constructions,
move rewriting and coloring/flow computations.

Exit codes: 0 success, 1 semantic failure (axiom violation, count mismatch,
site mismatch), 2 parse error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import sys

from hlcolor.algebra import Biquandle, Quandle, biquandle_check, quandle_check
from hlcolor.coloring import (
    Coloring,
    FlowInvalidError,
    colorings_by_flow,
    enumerate_colorings,
    enumerate_colorings_mcb,
    enumerate_colorings_mcq,
    enumerate_flows,
    linear_colorings,
    per_flow_counts,
    verify_correspondence,
)
from hlcolor.diagram import DiagramError, parse_diagram, serialize_diagram
from hlcolor.gfamily import (
    GFamilyB,
    GFamilyQ,
    associated_mcb,
    associated_mcq,
    gfb_check,
    gfq_check,
    qg_map,
    zkm_family_from_biquandle,
    zkm_family_from_quandle,
)
from hlcolor.groups import FiniteGroup, cyclic_group, group_check
from hlcolor.mcqb import (
    MCB,
    MCQ,
    conjugation_mcq,
    mcb_check,
    mcq_check,
    q_functor_mcb,
    quandle_lift_mcb,
)
from hlcolor.moves import MoveSite, SiteMismatchError, apply_move
from hlcolor.rings import SizeBoundExceededError
from hlcolor.structio import (
    StructParseError,
    parse_coloring_assignment,
    parse_flow,
    parse_structure_file,
    serialize_coloring,
    serialize_structure,
)

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3


def _emit(args, key, value):
    if args.format == "machine":
        print(f"{key}={value}")
    else:
        print(f"{key}: {value}")


def _load_structure(path: str):
    try:
        return parse_structure_file(path)
    except (StructParseError, FileNotFoundError, ValueError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE) from None


def _load_diagram(path: str, allow_open=False):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_diagram(fh.read(), allow_open=allow_open)
    except (DiagramError, FileNotFoundError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE) from None


def _checker_for(obj):
    if isinstance(obj, Quandle):
        return quandle_check
    if isinstance(obj, Biquandle):
        return biquandle_check
    if isinstance(obj, MCQ):
        return mcq_check
    if isinstance(obj, MCB):
        return mcb_check
    if isinstance(obj, GFamilyQ):
        return gfq_check
    if isinstance(obj, GFamilyB):
        return gfb_check
    if isinstance(obj, FiniteGroup):
        return group_check
    raise TypeError(f"no checker for {type(obj).__name__}")


def _write_out(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_check(args) -> int:
    obj = _load_structure(args.structure)
    report = _checker_for(obj)(obj)
    _emit(args, "kind", type(obj).__name__)
    _emit(args, "ok", str(report.ok).lower())
    for axiom, witness in report.violations:
        _emit(args, "violation", f"{axiom} at {','.join(map(str, witness))}")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_functor(args) -> int:
    obj = _load_structure(args.structure)
    if not isinstance(obj, MCB):
        print("functor expects an MCB file", file=sys.stderr)
        return EXIT_FAIL
    if not mcb_check(obj).ok:
        print("input fails mcb axioms", file=sys.stderr)
        return EXIT_FAIL
    _write_out(args, serialize_structure(q_functor_mcb(obj)))
    return EXIT_OK


def cmd_qg(args) -> int:
    obj = _load_structure(args.structure)
    if not isinstance(obj, GFamilyB):
        print("qg expects a G-family of biquandles", file=sys.stderr)
        return EXIT_FAIL
    if not gfb_check(obj).ok:
        print("input fails G-family axioms", file=sys.stderr)
        return EXIT_FAIL
    _write_out(args, serialize_structure(qg_map(obj)))
    return EXIT_OK


def cmd_build(args) -> int:
    if args.what == "assoc":
        fam = _load_structure(args.source)
        if isinstance(fam, GFamilyQ):
            out = associated_mcq(fam)
        elif isinstance(fam, GFamilyB):
            out = associated_mcb(fam)
        else:
            print("assoc expects a G-family file", file=sys.stderr)
            return EXIT_FAIL
    elif args.what == "zkm":
        inner = _load_structure(args.source)
        if isinstance(inner, Quandle):
            out = zkm_family_from_quandle(inner, args.k)
        elif isinstance(inner, Biquandle):
            out = zkm_family_from_biquandle(inner, args.k)
        else:
            print("zkm expects a quandle or biquandle file", file=sys.stderr)
            return EXIT_FAIL
    elif args.what == "conj":
        group = _load_structure(args.source)
        if not isinstance(group, FiniteGroup):
            print("conj expects a group file", file=sys.stderr)
            return EXIT_FAIL
        out = conjugation_mcq(group)
    elif args.what == "lift":
        mcq = _load_structure(args.source)
        if not isinstance(mcq, MCQ):
            print("lift expects an MCQ file", file=sys.stderr)
            return EXIT_FAIL
        out = quandle_lift_mcb(mcq)
    elif args.what == "tables":
        out = _load_structure(args.source)
    else:
        print(f"unknown build target {args.what!r}", file=sys.stderr)
        return EXIT_FAIL
    _write_out(args, serialize_structure(out))
    return EXIT_OK


def _group_from_args(args):
    if args.zn:
        return cyclic_group(args.zn)
    if args.group:
        g = _load_structure(args.group)
        if not isinstance(g, FiniteGroup):
            print("--group file must contain a group", file=sys.stderr)
            raise SystemExit(EXIT_PARSE)
        return g
    print("flows needs --zn or --group", file=sys.stderr)
    raise SystemExit(EXIT_PARSE)


def cmd_flows(args) -> int:
    d = _load_diagram(args.diagram)
    g = _group_from_args(args)
    flows = enumerate_flows(d, g)
    _emit(args, "count", len(flows))
    if args.list:
        for i, flow in enumerate(flows):
            body = " ".join(f"{a}:{v}" for a, v in flow.assignment)
            _emit(args, f"flow {i}", body)
    return EXIT_OK


def cmd_color(args) -> int:
    obj = _load_structure(args.structure)
    d = _load_diagram(args.diagram)
    try:
        if isinstance(obj, (GFamilyQ, GFamilyB)):
            flow = None
            if args.flow:
                with open(args.flow, encoding="utf-8") as fh:
                    flow = parse_flow(fh.read())
            if args.per_flow:
                table = per_flow_counts(d, obj, budget=args.budget)
                _emit(args, "count", sum(table.values()))
                for i, (fl, n) in enumerate(table.items()):
                    body = " ".join(f"{a}:{v}" for a, v in fl.assignment)
                    _emit(args, f"flow {i}", f"{body} count={n}")
                return EXIT_OK
            if args.dim and flow is None:
                print("--dim needs --flow", file=sys.stderr)
                return EXIT_PARSE
            if flow is not None:
                if args.dim:
                    rep = linear_colorings(d, obj, flow, bound=args.budget or 10**6)
                    _emit(args, "count", rep.count)
                    if rep.module_info is not None:
                        _emit(args, "dimension", rep.module_info[0])
                        vars_ = None
                        if args.list and rep.module_info[1]:
                            from hlcolor.coloring import coloring_vars
                            from hlcolor.rings import format_element

                            vars_ = coloring_vars(d, isinstance(obj, GFamilyQ))
                            for i, vec in enumerate(rep.module_info[1]):
                                body = " ".join(
                                    f"{v}:{format_element(e)}" for v, e in zip(vars_, vec)
                                )
                                _emit(args, f"basis {i}", body)
                    return EXIT_OK
                rep = colorings_by_flow(d, obj, flow, want_list=args.list, budget=args.budget)
            else:
                x = associated_mcq(obj) if isinstance(obj, GFamilyQ) else associated_mcb(obj)
                rep = enumerate_colorings(
                    d, x, want_list=args.list, budget=args.budget, threads=args.threads
                )
        elif isinstance(obj, (MCQ, MCB)):
            rep = enumerate_colorings(
                d, obj, want_list=args.list, budget=args.budget, threads=args.threads
            )
        else:
            print("color expects an MCQ/MCB or G-family structure", file=sys.stderr)
            return EXIT_FAIL
    except SizeBoundExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except FlowInvalidError as exc:
        print(f"invalid flow: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit(args, "count", rep.count)
    if args.list and rep.colorings is not None:
        for i, col in enumerate(rep.colorings):
            body = " ".join(f"{k}:{v}" for k, v in sorted(col.assignment.items()))
            _emit(args, f"coloring {i}", body)
    return EXIT_OK


def cmd_verify(args) -> int:
    obj = _load_structure(args.structure)
    d = _load_diagram(args.diagram)
    family = None
    if isinstance(obj, GFamilyB):
        family = obj
        x = associated_mcb(obj)
    elif isinstance(obj, MCB):
        x = obj
    else:
        print("verify expects an MCB or G-family-of-biquandles file", file=sys.stderr)
        return EXIT_FAIL
    try:
        if args.inject_wrong_q:
            # test hook: post-compose the functor image's star with an
            # in-block transposition, so the compared counts must disagree
            import numpy as np

            from hlcolor.coloring import CorrespondenceReport

            q = q_functor_mcb(x)
            block0 = [i for i in range(q.n) if q.block_of[i] == q.block_of[0]]
            sigma = np.arange(q.n)
            sigma[[block0[0], block0[1]]] = sigma[[block0[1], block0[0]]]
            wrong = MCQ(q.block_of.copy(), q.prod.copy(), sigma[q.star])
            nb = enumerate_colorings_mcb(d, x, budget=args.budget).count
            nq = enumerate_colorings_mcq(d, wrong, budget=args.budget).count
            report = CorrespondenceReport(nb, nq, nb == nq)
        else:
            report = verify_correspondence(
                d, x, family=family if args.per_flow else None, budget=args.budget
            )
    except SizeBoundExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    _emit(args, "count_mcb", report.count_mcb)
    _emit(args, "count_mcq", report.count_mcq)
    _emit(args, "equal", str(report.equal).lower())
    ok = report.equal
    if args.per_flow and report.per_flow is not None:
        _emit(args, "per_flow_equal", str(report.per_flow_equal).lower())
        if report.dims_equal is not None:
            _emit(args, "dims_equal", str(report.dims_equal).lower())
            ok = ok and report.dims_equal
        for i, (fl, nb, nq) in enumerate(report.per_flow):
            body = " ".join(f"{a}:{v}" for a, v in fl.assignment)
            _emit(args, f"flow {i}", f"{body} mcb={nb} mcq={nq}")
        ok = ok and report.per_flow_equal
    return EXIT_OK if ok else EXIT_FAIL


def cmd_move(args) -> int:
    d = _load_diagram(args.diagram)
    site = MoveSite(args.move, args.direction, tuple(args.site.split(",")), args.variant)
    try:
        result = apply_move(d, site)
    except SiteMismatchError as exc:
        print(f"site mismatch: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _write_out(args, serialize_diagram(result.diagram))
    if args.transport:
        if not args.structure:
            print("--transport needs --structure", file=sys.stderr)
            return EXIT_FAIL
        x = _load_structure(args.structure)
        if isinstance(x, GFamilyQ):
            x = associated_mcq(x)
        elif isinstance(x, GFamilyB):
            x = associated_mcb(x)
        with open(args.transport, encoding="utf-8") as fh:
            assignment = parse_coloring_assignment(fh.read())
        from hlcolor.moves import transport_coloring

        moved = transport_coloring(d, result.diagram, Coloring(x, assignment), x)
        out = serialize_coloring(moved)
        if args.transport_out:
            with open(args.transport_out, "w", encoding="utf-8") as fh:
                fh.write(out)
        else:
            sys.stdout.write(out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hlcolor",
        description="Coloring invariants of handlebody-links and spatial trivalent graphs",
    )
    p.add_argument("--format", choices=("text", "machine"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    sc = sub.add_parser("check", help="verify structure axioms")
    sc.add_argument("structure")
    sc.set_defaults(func=cmd_check)

    sf = sub.add_parser("functor", help="MCB -> MCQ by x*y = (x under y) over-inv y")
    sf.add_argument("structure")
    sf.add_argument("-o", "--out")
    sf.set_defaults(func=cmd_functor)

    sq = sub.add_parser("qg", help="G-family of biquandles -> G-family of quandles")
    sq.add_argument("structure")
    sq.add_argument("-o", "--out")
    sq.set_defaults(func=cmd_qg)

    sb = sub.add_parser("build", help="run a constructor and write the structure file")
    sb.add_argument("what", choices=("assoc", "zkm", "conj", "lift", "tables"))
    sb.add_argument("source")
    sb.add_argument("--k", type=int, default=1)
    sb.add_argument("-o", "--out")
    sb.set_defaults(func=cmd_build)

    sfl = sub.add_parser("flows", help="enumerate G-flows of a diagram")
    sfl.add_argument("diagram")
    sfl.add_argument("--zn", type=int)
    sfl.add_argument("--group")
    sfl.add_argument("--list", action="store_true")
    sfl.set_defaults(func=cmd_flows)

    sco = sub.add_parser("color", help="count or list colorings")
    sco.add_argument("structure")
    sco.add_argument("diagram")
    sco.add_argument("--count", action="store_true")
    sco.add_argument("--list", action="store_true")
    sco.add_argument("--dim", action="store_true")
    sco.add_argument("--per-flow", dest="per_flow", action="store_true")
    sco.add_argument("--flow")
    sco.add_argument("--budget", type=int)
    sco.add_argument("--threads", type=int, default=1)
    sco.set_defaults(func=cmd_color)

    sv = sub.add_parser("verify", help="compare MCB and Q(MCB) coloring counts")
    sv.add_argument("structure")
    sv.add_argument("diagram")
    sv.add_argument("--per-flow", dest="per_flow", action="store_true")
    sv.add_argument("--budget", type=int)
    sv.add_argument("--inject-wrong-q", action="store_true", help=argparse.SUPPRESS)
    sv.set_defaults(func=cmd_verify)

    sm = sub.add_parser("move", help="apply a Reidemeister move at a site")
    sm.add_argument("diagram")
    sm.add_argument("--move", required=True)
    sm.add_argument("--site", required=True, help="comma-separated semi-arc ids")
    sm.add_argument("--direction", choices=("apply", "undo"), default="apply")
    sm.add_argument("--variant", default="")
    sm.add_argument("--transport", help="coloring file to transport across the move")
    sm.add_argument("--structure", help="structure file for --transport")
    sm.add_argument("--transport-out")
    sm.add_argument("-o", "--out")
    sm.set_defaults(func=cmd_move)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except StructParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
