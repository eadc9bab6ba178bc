"""Command line interface.

One subcommand per area of the library; every exported operation is
reachable through exactly one subcommand (see ``OPERATION_COMMAND``).
Output is plain text by default and JSON with ``--format json``; identical
invocations produce byte-identical output.  Exit codes: 0 for success,
1 for a domain error (reported as ``ErrorName: message`` on stderr), and
2 for a usage error (argparse's convention).
"""
from __future__ import annotations

import argparse
import json
import sys

from . import classify, operators, structure
from .checks import run_checks
from .core import QuadraticForm
from .errors import CliffexError
from .field import FieldSpec

# Exported operation -> the one subcommand whose surface exposes it.  The
# test suite audits this table against the package's public functions.
OPERATION_COMMAND = {
    "blade_product": "product",
    "parse_multivector": "product",
    "format_multivector": "product",
    "parse_blade": "product",
    "format_blade": "product",
    "reorder_sign": "product",
    "is_zero_divisor": "invert",
    "is_invertible": "invert",
    "inverse": "invert",
    "left_matrix": "info",
    "right_matrix": "info",
    "translation_determinants": "info",
    "pairing": "info",
    "center": "center",
    "lie_center": "center",
    "lie_blades": "lie",
    "lie_dimension": "lie",
    "lie_algebra_basis": "lie",
    "in_lie_algebra": "lie",
    "is_lie_blade": "lie",
    "killing_form": "killing",
    "killing_count": "killing",
    "killing_entry": "killing",
    "ad_matrix": "killing",
    "anticommute_parity": "killing",
    "decompose": "decompose",
    "matrix_algebra_of": "classify",
    "isometry_group_of": "classify",
    "verify_classification": "classify",
    "expected_lie_center_dim": "classify",
    "is_isometry": "isometry",
    "isometry_evidence": "isometry",
    "run_checks": "check",
    "volume_commutation_report": "check",
    "definiteness_report": "check",
    "equivalence_isomorphism": "check",
    "pairing_uniqueness_report": "check",
    "pairing_adjoint": "check",
    "basis_change": "check",
    "coordinates_in_basis": "check",
    "hermitian_pairing": "check",
    "to_quaternion": "check",
    "from_quaternion": "check",
    "parse_quaternion": "check",
    "format_quaternion": "check",
}


def _add_common(sub, form_required=True):
    sub.add_argument("--form", required=form_required, help="form literal: diag:1,1,-1 or sig:r,s")
    sub.add_argument("--field", default="rational", help="field literal: rational or fp:P")
    sub.add_argument("--format", choices=("text", "json"), default="text", dest="fmt")


def _build_form(args) -> QuadraticForm:
    field = FieldSpec.from_text(args.field)
    return QuadraticForm.from_text(args.form, field)


def _emit(args, text_lines, obj) -> None:
    if args.fmt == "json":
        print(json.dumps(obj))
    else:
        for line in text_lines:
            print(line)


def _fmt(field, value) -> str:
    return field.format(value)


def _center_obj(desc) -> dict:
    return {"dim": desc.dimension, "basis": [str(b) for b in desc.basis]}


def _killing_records_obj(records, field) -> list:
    return [
        {
            "blade": r.blade,
            "m": r.anticommuting,
            "square": _fmt(field, r.square),
            "B": _fmt(field, r.value),
        }
        for r in records
    ]


def _matrix_obj(rows, field) -> dict:
    return {
        "dim": len(rows),
        "entries": [[_fmt(field, v) for v in row] for row in rows],
        "field": field.to_text(),
    }


# -- handlers ------------------------------------------------------------


def _cmd_product(args) -> int:
    form = _build_form(args)
    x = form.parse(args.x)
    y = form.parse(args.y)
    result = x * y
    _emit(
        args,
        [str(result)],
        {"form": form.to_text(), "field": form.field.to_text(), "result": str(result)},
    )
    return 0


def _cmd_involute(args) -> int:
    form = _build_form(args)
    x = form.parse(args.x)
    result = x.involution(args.kind)
    _emit(
        args,
        [str(result)],
        {"form": form.to_text(), "kind": args.kind, "result": str(result)},
    )
    return 0


def _cmd_invert(args) -> int:
    form = _build_form(args)
    x = form.parse(args.x)
    inv = operators.inverse(x)
    _emit(
        args,
        [str(inv)],
        {"form": form.to_text(), "input": str(x), "inverse": str(inv)},
    )
    return 0


def _cmd_info(args) -> int:
    form = _build_form(args)
    f = form.field
    gram = form.gram_diagonal()
    obj = {
        "n": form.n,
        "dim": form.dim,
        "field": f.to_text(),
        "diag": [_fmt(f, q) for q in form.diag],
        "volume_square": _fmt(f, form.volume_square()),
        "gram": [_fmt(f, g) for g in gram],
    }
    lines = [
        f"n: {form.n}",
        f"dim: {form.dim}",
        f"field: {f.to_text()}",
        "diag: " + ", ".join(_fmt(f, q) for q in form.diag),
        f"volume square: {_fmt(f, form.volume_square())}",
        "gram diagonal: " + ", ".join(_fmt(f, g) for g in gram),
    ]
    if args.x is not None:
        x = form.parse(args.x)
        if x.is_zero():
            obj["element"] = {"input": str(x), "zero": True}
            lines.append("element: 0 (the zero element)")
        else:
            dl, dr = operators.translation_determinants(x)
            left = operators.left_matrix(x)
            right = operators.right_matrix(x)
            zd = (not dl) or (not dr)
            elem = {
                "input": str(x),
                "grades": sorted(x.grades()),
                "self_pairing": _fmt(f, x.pair(x)),
                "left_det": _fmt(f, dl),
                "right_det": _fmt(f, dr),
                "zero_divisor": zd,
                "left_matrix": _matrix_obj(left, f),
                "right_matrix": _matrix_obj(right, f),
            }
            obj["element"] = elem
            lines += [
                f"element: {x}",
                "grades: " + ", ".join(str(g) for g in sorted(x.grades())),
                f"self pairing: {_fmt(f, x.pair(x))}",
                f"left det: {_fmt(f, dl)}",
                f"right det: {_fmt(f, dr)}",
                f"zero divisor: {'yes' if zd else 'no'}",
            ]
    _emit(args, lines, obj)
    return 0


def _cmd_center(args) -> int:
    form = _build_form(args)
    cap = args.max_n if args.max_n is not None else structure.SOLVE_CAP
    closed = structure.center(form, method="closed_form")
    lie_closed = structure.lie_center(form, method="closed_form")
    agree = None
    if args.method in ("solve", "both") and form.n <= cap:
        solved = structure.center(form, method="solve", solve_cap=cap)
        lie_solved = structure.lie_center(form, method="solve", solve_cap=cap)
        agree = (
            solved.dimension == closed.dimension
            and lie_solved.dimension == lie_closed.dimension
        )
        if args.method == "solve":
            closed, lie_closed = solved, lie_solved
    obj = {
        "n": form.n,
        "center": _center_obj(closed),
        "lie_center": _center_obj(lie_closed),
        "methods_agree": agree,
    }
    lines = [
        f"center: dim {closed.dimension}, basis [" + ", ".join(str(b) for b in closed.basis) + "]",
        f"lie center: dim {lie_closed.dimension}, basis ["
        + ", ".join(str(b) for b in lie_closed.basis)
        + "]",
    ]
    if agree is not None:
        lines.append(f"methods agree: {'yes' if agree else 'no'}")
    _emit(args, lines, obj)
    return 0


def _cmd_lie(args) -> int:
    form = _build_form(args)
    blades = structure.lie_blades(form)
    expected = tuple(m for m in range(form.dim) if structure.is_lie_blade(m))
    if blades != expected:
        raise CliffexError("blade enumeration is inconsistent")
    basis = structure.lie_algebra_basis(form)
    obj = {
        "n": form.n,
        "lie_dim": structure.lie_dimension(form.n),
        "blades": [str(b) for b in basis],
    }
    lines = [
        f"lie dimension: {structure.lie_dimension(form.n)}",
        "blades: " + " ".join(str(b) for b in basis),
    ]
    if args.x is not None:
        x = form.parse(args.x)
        member = structure.in_lie_algebra(x)
        obj["member"] = member
        lines.append(f"member: {'yes' if member else 'no'}")
    _emit(args, lines, obj)
    return 0


def _cmd_killing(args) -> int:
    form = _build_form(args)
    if args.max_n is not None:
        records = structure.killing_form(form, method=args.method, oracle_cap=args.max_n)
    else:
        records = structure.killing_form(form, method=args.method)
    f = form.field
    obj = {
        "n": form.n,
        "diag": [_fmt(f, q) for q in form.diag],
        "method": args.method,
        "killing": _killing_records_obj(records, f),
    }
    lines = [
        f"{r.blade}: m={r.anticommuting} square={_fmt(f, r.square)} B={_fmt(f, r.value)}"
        for r in records
    ]
    _emit(args, lines, obj)
    return 0


def _cmd_decompose(args) -> int:
    form = _build_form(args)
    f = form.field
    dec = structure.decompose(form)
    center_desc = structure.center(form, method="closed_form")
    lie_center_desc = structure.lie_center(form, method="closed_form")
    records = structure.killing_form(form, method="count")
    obj = {
        "n": form.n,
        "diag": [_fmt(f, q) for q in form.diag],
        "lie_dim": dec.lie_dim,
        "center": _center_obj(center_desc),
        "lie_center": _center_obj(lie_center_desc),
        "killing": _killing_records_obj(records, f),
        "decomposition": {
            "ideal_dim": len(dec.ideal_masks),
            "center_dim": len(dec.center_basis),
        },
        "bracket_closed": dec.bracket_closed,
        "killing_nondegenerate_on_ideal": dec.killing_nondegenerate_on_ideal,
    }
    lines = [
        f"n: {form.n}",
        f"lie dimension: {dec.lie_dim}",
        f"center: dim {center_desc.dimension}",
        f"lie center: dim {lie_center_desc.dimension}",
        f"ideal dimension: {len(dec.ideal_masks)}",
        f"bracket closed: {'yes' if dec.bracket_closed else 'no'}",
        f"killing nondegenerate on ideal: {'yes' if dec.killing_nondegenerate_on_ideal else 'no'}",
    ]
    _emit(args, lines, obj)
    return 0


def _cmd_classify(args) -> int:
    rep = classify.verify_classification(args.n)
    obj = {
        "n": rep.n,
        "algebra": rep.algebra.describe(),
        "group": rep.group.describe(),
        "checks": {
            "lie_dim": {"expected": rep.lie_dim.expected, "got": rep.lie_dim.got},
            "center_dim": {"expected": rep.center_dim.expected, "got": rep.center_dim.got},
            "algebra_dim": {"expected": rep.algebra_dim.expected, "got": rep.algebra_dim.got},
            "killing_definite": rep.killing_definite,
        },
        "pass": rep.passed,
    }
    lines = [
        f"n: {rep.n}",
        f"algebra: {rep.algebra.describe()}",
        f"group: {rep.group.describe()}",
        f"lie dim: expected {rep.lie_dim.expected}, got {rep.lie_dim.got}",
        f"center dim: expected {rep.center_dim.expected}, got {rep.center_dim.got}",
        f"algebra dim: expected {rep.algebra_dim.expected}, got {rep.algebra_dim.got}",
        f"killing definite: {'yes' if rep.killing_definite else 'no'}",
        f"pass: {'yes' if rep.passed else 'no'}",
    ]
    _emit(args, lines, obj)
    return 0


def _cmd_isometry(args) -> int:
    form = _build_form(args)
    g = form.parse(args.x)
    ev = structure.isometry_evidence(g)
    obj = {
        "form": form.to_text(),
        "candidate": str(g),
        "isometry": ev.isometry,
        "evidence": {
            "left_unit": ev.left_unit,
            "right_unit": ev.right_unit,
            "left_gram_preserved": ev.left_gram_preserved,
            "right_gram_preserved": ev.right_gram_preserved,
            "consistent": ev.consistent,
        },
    }
    lines = [
        f"isometry: {'yes' if ev.isometry else 'no'}",
        f"left unit: {'yes' if ev.left_unit else 'no'}",
        f"right unit: {'yes' if ev.right_unit else 'no'}",
    ]
    if ev.left_gram_preserved is not None:
        lines.append(f"left gram preserved: {'yes' if ev.left_gram_preserved else 'no'}")
        lines.append(f"right gram preserved: {'yes' if ev.right_gram_preserved else 'no'}")
    lines.append(f"consistent: {'yes' if ev.consistent else 'no'}")
    _emit(args, lines, obj)
    return 0


def _cmd_check(args) -> int:
    form = _build_form(args)
    results = run_checks(form, seed=args.seed)
    failed = [r for r in results if not r.passed]
    obj = {
        "form": form.to_text(),
        "field": form.field.to_text(),
        "seed": args.seed,
        "results": [
            {
                "name": r.name,
                "passed": r.passed,
                "skipped": r.skipped,
                "detail": r.detail,
            }
            for r in results
        ],
        "failed": len(failed),
    }
    lines = []
    for r in results:
        tag = "SKIP" if r.skipped else ("PASS" if r.passed else "FAIL")
        suffix = f" ({r.detail})" if r.detail else ""
        lines.append(f"{tag} {r.name}{suffix}")
    lines.append(
        "all checks passed" if not failed else f"{len(failed)} checks failed"
    )
    _emit(args, lines, obj)
    return 0 if not failed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cliffex",
        description="Exact Clifford algebra computations over the rationals and odd prime fields.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("product", help="multiply two multivectors")
    _add_common(p)
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(handler=_cmd_product)

    p = subs.add_parser("involute", help="apply an involution")
    _add_common(p)
    p.add_argument("--kind", choices=("grade", "reverse", "conj"), required=True)
    p.add_argument("x")
    p.set_defaults(handler=_cmd_involute)

    p = subs.add_parser("invert", help="invert an element")
    _add_common(p)
    p.add_argument("x")
    p.set_defaults(handler=_cmd_invert)

    p = subs.add_parser("info", help="facts about a form, optionally an element")
    _add_common(p)
    p.add_argument("x", nargs="?", default=None)
    p.set_defaults(handler=_cmd_info)

    p = subs.add_parser("center", help="centers of the algebra and its Lie algebra")
    _add_common(p)
    p.add_argument("--method", choices=("closed_form", "solve", "both"), default="both")
    p.add_argument("--max-n", type=int, default=None, help="override the solve-route cap")
    p.set_defaults(handler=_cmd_center)

    p = subs.add_parser("lie", help="the isometry Lie algebra, or membership")
    _add_common(p)
    p.add_argument("x", nargs="?", default=None)
    p.set_defaults(handler=_cmd_lie)

    p = subs.add_parser("killing", help="diagonal Killing form entries")
    _add_common(p)
    p.add_argument("--method", choices=("count", "trace"), default="count")
    p.add_argument("--max-n", type=int, default=None, help="override the trace-oracle cap")
    p.set_defaults(handler=_cmd_killing)

    p = subs.add_parser("decompose", help="full structure report")
    _add_common(p)
    p.set_defaults(handler=_cmd_decompose)

    p = subs.add_parser("classify", help="period-8 table entry, verified")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text", dest="fmt")
    p.set_defaults(handler=_cmd_classify)

    p = subs.add_parser("isometry", help="test an element for isometry")
    _add_common(p)
    p.add_argument("x")
    p.set_defaults(handler=_cmd_isometry)

    p = subs.add_parser("check", help="run the invariant suite on a form")
    _add_common(p)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except CliffexError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
