"""Command line: ``kuechle-lab <module> <op> [flags]`` and ``kuechle-lab verify-all``.

Results go to stdout (or ``--output``) as JSON with sorted keys.  Exit
status is 0 for a computed result, 1 for a failed verification or a broken
internal invariant, 2 for invalid input.  ``KUECHLE_LAB_LOG_LEVEL`` only
controls stderr logging.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from pathlib import Path

from . import __version__
from .chow import LEDGERS, degeneracy_classes, ring_from_label
from .complete_quadrics import (
    g_subalgebra,
    orbit_classify,
    phi,
    verify_embedding,
    y_membership,
    y_point_count,
)
from .errors import InvalidInput, InvariantViolation, KuechleError
from .linalg import Matrix, Subspace, plucker
from .pencils import (
    SkewPencil,
    analyze,
    b4_line_count_check,
    d3_point_counts,
    enumerate_lagrangians,
    hyperbolic_quadric,
    random_multilinear_form,
    standard_form,
    standard_pencil,
)
from .scalars import GF, QQ, Field
from .trivectors import (
    TriVector,
    decomposable_form,
    invariant_space_dim,
    is_isotropic,
    kuchle_coordinate_form,
    sl3_basis,
    stabilizer_dim,
    to_coords,
    trace_form,
)
from .verify import verify_all

log = logging.getLogger("kuechle_lab")


class VerificationFailed(Exception):
    """Raised after the result has been written, to set exit status 1."""


def load_json(arg: str):
    """Inline JSON (starting with ``{`` or ``[``) or a path to a JSON file."""
    text = arg.strip()
    if not text.startswith(("{", "[")):
        try:
            text = Path(arg).read_text()
        except OSError as exc:
            raise InvalidInput(f"cannot read {arg}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{arg}: invalid JSON ({exc.msg} at line {exc.lineno} column {exc.colno})") from exc


def field_from(p: int | None) -> Field:
    return QQ if p is None else GF(p)


def _a_values(text: str) -> list[str]:
    vals = [t.strip() for t in text.split(",") if t.strip()]
    if not vals:
        raise InvalidInput("--standard needs a comma-separated list like 1,2,3")
    return vals


def load_pencil(args) -> SkewPencil:
    p = getattr(args, "q", None) or getattr(args, "p", None)
    if args.standard:
        F = field_from(p)
        return standard_pencil([F.parse(a) for a in _a_values(args.standard)], F)
    if not args.input:
        raise InvalidInput("give --input pencil.json or --standard a1,a2,...")
    obj = load_json(args.input)
    field = GF(p) if p else None
    return SkewPencil.from_json(obj, field)


def load_form(spec: str, F: Field) -> TriVector:
    builtin = {
        "trace": lambda: trace_form(F),
        "kuchle": lambda: kuchle_coordinate_form(F),
        "zero": lambda: TriVector.zero(8, F),
        "decomposable": lambda: decomposable_form(0, 1, 2, F),
    }
    if spec in builtin:
        return builtin[spec]()
    return TriVector.from_json(load_json(spec), F)


def traceless_symmetric(F: Field) -> Subspace:
    """The 5-dimensional space of traceless symmetric matrices inside sl(3)."""
    rows = []
    for M in sl3_basis(F):
        rows.append(to_coords(M + M.T))
    return Subspace.span(rows, 8, F)


def load_point(args, F: Field):
    if getattr(args, "point", None):
        obj = load_json(args.point)
        if not isinstance(obj, dict) or "C" not in obj or "Cp" not in obj:
            raise InvalidInput("point JSON needs 'C' and 'Cp'")
        if "field" in obj and args.p is None:
            F = Field.from_json(obj["field"])
        C, Cp = obj["C"], obj["Cp"]
    else:
        if not (args.C and args.Cp):
            raise InvalidInput("give --point or both --C and --Cp")
        C, Cp = load_json(args.C), load_json(args.Cp)
    return y_membership(Matrix.from_json(C, F), Matrix.from_json(Cp, F))


# --------------------------------------------------------------------------
# handlers return a JSON-ready object


def cmd_pencil(args):
    P = load_pencil(args)
    if args.op == "analyze":
        return analyze(P).to_json()
    if args.op == "standard-form":
        return standard_form(P).to_json()
    if P.field.p is None:
        raise InvalidInput("enumeration needs a prime field; pass --q")
    return enumerate_lagrangians(P, with_list=args.list).to_json()


def cmd_d3(args):
    rng = random.Random(args.seed)
    s = random_multilinear_form(args.n, GF(args.q), rng)
    return {"form": s.to_json(), "seed": args.seed, **d3_point_counts(s).to_json()}


def cmd_b4(args):
    F = GF(args.q)
    Q = Matrix.from_json(load_json(args.input), F) if args.input else hyperbolic_quadric(F)
    return b4_line_count_check(Q).to_json()


def cmd_trivector(args):
    F = field_from(args.p)
    if args.op == "invariant-dim":
        dim, basis = invariant_space_dim(F)
        return {"dim": dim, "basis": [b.to_json() for b in basis], "proportional_to_trace_form": bool(basis) and basis[0].is_proportional_to(trace_form(F))}
    lam = load_form(args.form, F)
    if args.op == "stabilizer":
        return {"dim": stabilizer_dim(lam), "form": args.form if not args.form.endswith(".json") else lam.to_json(), "field": F.to_json()}
    if args.subspace == "symmetric":
        U = traceless_symmetric(F)
    else:
        U = Subspace.from_json(load_json(args.subspace), F)
    return {"isotropic": is_isotropic(lam, U), "subspace_dim": U.dim}


def cmd_cq(args):
    if args.op == "verify":
        res = verify_embedding(args.budget, args.seed, args.p or 7)
        if not res["passed"]:
            raise VerificationFailed(res)
        return res
    if args.op == "count":
        return y_point_count(args.q).to_json()
    pt = load_point(args, field_from(args.p))
    if args.op == "classify":
        return {"orbit": orbit_classify(pt), "t": pt.t.to_text(), "rank_C": pt.C.rank(), "rank_Cp": pt.Cp.rank()}
    if args.op == "g":
        return g_subalgebra(pt).to_json()
    U = phi(pt)
    return {**U.to_json(), "plucker": [x.to_text() for x in plucker(U)], "isotropic": is_isotropic(trace_form(pt.field), U)}


def cmd_chow(args):
    if args.op == "ledger":
        return LEDGERS[args.name]().to_json()
    R = ring_from_label(args.ring)
    d = degeneracy_classes(R.parse(args.c1), R.parse(args.c2), R.parse(args.c3))
    return {"ring": R.label, "discriminant": str(d["discriminant"]), "corank2": str(d["corank2"])}


def cmd_verify_all(args):
    report = verify_all(args.seed, args.budget)
    if not report.passed:
        raise VerificationFailed(report.to_json())
    return report.to_json()


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kuechle-lab", description="Exact checks for skew pencils, trivectors and complete quadrics.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="write JSON here instead of stdout")
    mods = ap.add_subparsers(dest="module", required=True)

    pen = mods.add_parser("pencil", help="pencils of skew forms").add_subparsers(dest="op", required=True)
    for op in ("analyze", "standard-form", "enumerate"):
        sp = pen.add_parser(op, parents=[common])
        sp.add_argument("--input", help="pencil JSON file or inline JSON")
        sp.add_argument("--standard", help="standard pencil with these a_i, e.g. 1,2,3")
        sp.add_argument("--q", type=int, help="work over F_q")
        if op == "enumerate":
            sp.add_argument("--list", action="store_true", help="include the Lagrangians")
        sp.set_defaults(func=cmd_pencil)

    d3 = mods.add_parser("d3", help="multilinear hyperplane sections of (P^1)^n").add_subparsers(dest="op", required=True)
    sp = d3.add_parser("counts", parents=[common])
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--n", type=int, default=4)
    sp.set_defaults(func=cmd_d3)

    b4 = mods.add_parser("b4", help="lines on a quadric in P^5").add_subparsers(dest="op", required=True)
    sp = b4.add_parser("lines", parents=[common])
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--input", help="symmetric 6x6 matrix JSON; default hyperbolic")
    sp.set_defaults(func=cmd_b4)

    tv = mods.add_parser("trivector", help="3-forms on sl(3)").add_subparsers(dest="op", required=True)
    for op in ("stabilizer", "invariant-dim", "isotropic"):
        sp = tv.add_parser(op, parents=[common])
        sp.add_argument("--p", type=int, help="work over F_p (default Q)")
        if op != "invariant-dim":
            sp.add_argument("--form", default="trace", help="trace, kuchle, zero, decomposable or a JSON file")
        if op == "isotropic":
            sp.add_argument("--subspace", required=True, help="subspace JSON or 'symmetric'")
        sp.set_defaults(func=cmd_trivector)

    cq = mods.add_parser("cq", help="complete quadrics").add_subparsers(dest="op", required=True)
    for op in ("classify", "g", "phi"):
        sp = cq.add_parser(op, parents=[common])
        sp.add_argument("--point", help="CQPoint JSON with C and Cp")
        sp.add_argument("--C", help="symmetric 3x3 matrix JSON")
        sp.add_argument("--Cp", help="symmetric 3x3 matrix JSON")
        sp.add_argument("--p", type=int, help="work over F_p (default Q)")
        sp.set_defaults(func=cmd_cq)
    sp = cq.add_parser("verify", parents=[common])
    sp.add_argument("--budget", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--p", type=int, default=7)
    sp.set_defaults(func=cmd_cq)
    sp = cq.add_parser("count", parents=[common])
    sp.add_argument("--q", type=int, required=True)
    sp.set_defaults(func=cmd_cq)

    ch = mods.add_parser("chow", help="Chow rings and rank ledgers").add_subparsers(dest="op", required=True)
    sp = ch.add_parser("degeneracy", parents=[common])
    for c in ("--c1", "--c2", "--c3"):
        sp.add_argument(c, required=True)
    sp.add_argument("--ring", default="P3", help="Pd or (P1)^n")
    sp.set_defaults(func=cmd_chow)
    sp = ch.add_parser("ledger", parents=[common])
    sp.add_argument("name", choices=sorted(LEDGERS))
    sp.set_defaults(func=cmd_chow)

    va = mods.add_parser("verify-all", parents=[common], help="run every check")
    va.add_argument("--seed", type=int, default=0)
    va.add_argument("--budget", type=int, default=100)
    va.set_defaults(func=cmd_verify_all, op=None)
    return ap


def emit(obj, output: str | None):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("KUECHLE_LAB_LOG_LEVEL", "WARNING").upper(), format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        emit(args.func(args), args.output)
        return 0
    except VerificationFailed as exc:
        emit(exc.args[0], args.output)
        log.error("verification failed")
        return 1
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvariantViolation, KuechleError) as exc:
        print(f"internal check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
