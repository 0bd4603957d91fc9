"""Command line driver.

Commands operate on JSON files and print deterministic JSON: keys are
sorted and no timestamps are embedded, so identical inputs give byte
identical outputs.  Embedding and involution arguments accept either a
filesystem path or the name of a packaged fixture (see realforms/data).

Exit codes: 0 success, 2 input error, 3 contract violation, 4 field
extension unsupported.
"""

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from .algebra import LieAlgebra
from .errors import ContractViolation, FieldExtensionUnsupported
from .forms import involution_from_json_dict
from .pipeline import Embedding, involution_system, is_balanced, make_balanced, run_pipeline
from .poly import Poly
from .solve import split_cases

# targets larger than this need --allow-slow (F4 at 52 is the desk-scale cap)
SLOW_DIM = 52


class InputError(Exception):
    """Bad paths, malformed JSON, unknown names.  Exit code 2."""


def _load_json(ref: str, what: str) -> dict:
    p = Path(ref)
    if p.is_file():
        text = p.read_text()
    else:
        name = ref if ref.endswith(".json") else ref + ".json"
        res = resources.files("realforms").joinpath("data").joinpath(name)
        if not res.is_file():
            raise InputError(f"{what} not found: {ref!r} (no such file or fixture)")
        text = res.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{what} {ref!r} is not valid JSON: {e}") from e


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_embedding(args) -> Embedding:
    data = _load_json(args.embedding, "embedding")
    verify = "full" if getattr(args, "full_jacobi", False) else "auto"
    try:
        return Embedding.from_json_dict(data, verify=verify)
    except (KeyError, ValueError, TypeError) as e:
        raise InputError(f"embedding {args.embedding!r}: {e}") from e


def _load_theta(args, eps: Embedding):
    data = _load_json(args.theta, "involution")
    try:
        return involution_from_json_dict(eps.source, data)
    except (KeyError, ValueError, TypeError) as e:
        raise InputError(f"involution {args.theta!r}: {e}") from e


def _slow_gate(args, eps: Embedding) -> None:
    if eps.target.dim > SLOW_DIM and not args.allow_slow:
        raise InputError(
            f"target {eps.target.type_name} (dim {eps.target.dim}) exceeds the "
            f"desk-scale cap; rerun with --allow-slow"
        )


def cmd_build(args) -> None:
    if (args.type is None) == (args.cartan is None):
        raise InputError("build needs exactly one of --type or --cartan")
    if args.type is not None:
        spec = args.type
    else:
        try:
            spec = json.loads(args.cartan)
        except json.JSONDecodeError as e:
            raise InputError(f"--cartan is not valid JSON: {e}") from e
    verify = "full" if args.full_jacobi else "auto"
    try:
        alg = LieAlgebra.build(spec, verify=verify)
    except (ValueError, TypeError, KeyError) as e:
        raise InputError(f"cannot build algebra from {spec!r}: {e}") from e
    _emit(alg.to_json_dict(), args.out)


def cmd_check_balanced(args) -> None:
    eps = _load_embedding(args)
    eps.verify()
    ok, witnesses = is_balanced(eps)
    _emit({"balanced": ok, "witnesses": witnesses}, args.out)


def cmd_balance(args) -> None:
    eps = _load_embedding(args)
    eps.verify()
    eps2, action, notes = make_balanced(eps)
    _emit(
        {"action": action, "embedding": eps2.to_json_dict(), "notes": notes},
        args.out,
    )


def cmd_involutions(args) -> None:
    eps = _load_embedding(args)
    eps.verify()
    _slow_gate(args, eps)
    theta = _load_theta(args, eps)
    eps2, action, _ = make_balanced(eps)
    system = involution_system(eps2, theta, p2_mode=args.p2_mode, var_order=args.var_order)
    _emit(
        {
            "balance": action,
            "intertwiner_dimension": system.dimension,
            "variables": list(system.variables),
            "q1": [str(p) for p in system.q1],
            "q2": [str(p) for p in system.q2],
        },
        args.out,
    )


def cmd_classify(args) -> None:
    eps = _load_embedding(args)
    _slow_gate(args, eps)
    theta = _load_theta(args, eps)
    result = run_pipeline(eps, theta, p2_mode=args.p2_mode, var_order=args.var_order)
    _emit(
        {
            "source": result.source_type,
            "target": result.target_type,
            "reports": [r.to_json_dict() for r in result.reports],
            "warnings": result.warnings,
            "notes": result.notes,
        },
        args.out,
    )


def cmd_pipeline(args) -> None:
    eps = _load_embedding(args)
    _slow_gate(args, eps)
    theta = _load_theta(args, eps)
    result = run_pipeline(eps, theta, p2_mode=args.p2_mode, var_order=args.var_order)
    _emit(result.to_json_dict(), args.out)


def cmd_case_split(args) -> None:
    data = _load_json(args.gb, "groebner basis")
    try:
        vars = tuple(data["variables"])
        basis = [Poly.parse(vars, s) for s in data["basis"]]
        extra = [Poly.parse(vars, s) for s in args.add]
    except (KeyError, ValueError, TypeError) as e:
        raise InputError(f"cannot parse basis or polynomial: {e}") from e
    refined = split_cases(basis, extra)
    _emit({"variables": list(vars), "basis": [str(p) for p in refined]}, args.out)


def _add_common(sub, theta: bool) -> None:
    sub.add_argument("embedding", help="embedding JSON path or fixture name")
    if theta:
        sub.add_argument("theta", help="involution JSON path or fixture name")
        sub.add_argument(
            "--var-order",
            choices=("blocks", "interleaved"),
            default="blocks",
            help="lex variable order for the polynomial system",
        )
        sub.add_argument(
            "--p2-mode",
            choices=("basis", "generators"),
            default="basis",
            help="automorphism equations over all basis elements or generators only",
        )
        sub.add_argument("--allow-slow", action="store_true", help="permit large targets")
    sub.add_argument("--full-jacobi", action="store_true", help="verify every Jacobi triple")
    sub.add_argument("--out", help="write JSON here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="realforms",
        description="Real forms of semisimple Lie algebras containing a given subalgebra.",
    )
    sp = ap.add_subparsers(dest="command", required=True)

    b = sp.add_parser("build", help="construct a Chevalley multiplication table")
    b.add_argument("--type", help="type name such as A3, G2, or A1+A1")
    b.add_argument("--cartan", help="Cartan matrix as a JSON list of rows")
    b.add_argument("--full-jacobi", action="store_true", help="verify every Jacobi triple")
    b.add_argument("--out", help="write JSON here instead of stdout")
    b.set_defaults(fn=cmd_build)

    c = sp.add_parser("check-balanced", help="test the coefficient symmetry of an embedding")
    _add_common(c, theta=False)
    c.set_defaults(fn=cmd_check_balanced)

    c = sp.add_parser("balance", help="rescale or rebuild an embedding into balanced form")
    _add_common(c, theta=False)
    c.set_defaults(fn=cmd_balance)

    c = sp.add_parser("involutions", help="emit the polynomial system for extensions of theta")
    _add_common(c, theta=True)
    c.set_defaults(fn=cmd_involutions)

    c = sp.add_parser("classify", help="real forms of the target containing the embedded form")
    _add_common(c, theta=True)
    c.set_defaults(fn=cmd_classify)

    c = sp.add_parser("pipeline", help="full run: balance, solve, verify, classify")
    _add_common(c, theta=True)
    c.set_defaults(fn=cmd_pipeline)

    c = sp.add_parser("case-split", help="refine a Groebner basis by extra equations")
    c.add_argument("gb", help="basis JSON path or fixture name")
    c.add_argument("--add", action="append", required=True, help="polynomial to adjoin (repeatable)")
    c.add_argument("--out", help="write JSON here instead of stdout")
    c.set_defaults(fn=cmd_case_split)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.fn(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except FieldExtensionUnsupported as e:
        print(f"field extension unsupported: {e}", file=sys.stderr)
        return 4
    except ContractViolation as e:
        print(f"contract violation: {e}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
