"""Command line front end.

Every subcommand reads JSON inputs (problemio formats), runs the
library, and renders a report as text or, with --json, as a canonical
JSON document: sorted keys, two-space indent, exact data as decimal
strings.  Re-running a command on the same inputs is byte-identical
except for the generated_at stamp.

Exit codes: 0 all requested checks pass, 1 a verification failed,
2 bad input (message carries the location), 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys

from . import problemio as pio
from .connalg import (curvature, log_restriction, poincare_rank,
                      rank1_restriction, residue_at_infinity, verify_fts,
                      verify_metric)
from .cyclotomic import embed_complex
from .errors import (ArithLGError, BudgetExceeded, InputError,
                     VerificationError, WrongRank)
from .expsum import extension_field, family_sum
from .frobdata import PURITY_TOL, family_l_function, frobenius_report, \
    monodromy_filtration
from .laurent import check_nondegenerate, specialize
from .polytope import all_proper_faces, is_convenient, normalized_volume

__all__ = ["main"]

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _load_problem(args) -> pio.ProblemFile:
    return pio.parse_problem(pio.load_json_file(args.problem), args.problem)


def _budget(args, pf: pio.ProblemFile | None = None) -> int | None:
    if getattr(args, "budget", None) is not None:
        return args.budget
    if pf is not None:
        return pf.budget
    return None


def _point(args, pf: pio.ProblemFile):
    raw = args.x if args.x is not None else ",".join(["0"] * pf.m)
    return pio.parse_point_arg(raw, pf.field, pf.m)


def _embeddings(z):
    upper = z.p if z.p > 2 else 2
    return [pio.jsonable(embed_complex(z, a)) for a in range(1, upper)]


# --- subcommand handlers: return (payload, ok) ----------------------------

def _cmd_analyze_polytope(args):
    pf = _load_problem(args)
    P = pf.deformation.base.newton()
    payload = {
        "command": "analyze-polytope",
        "degenerate": P.degenerate,
        "vertices": pio.jsonable([list(v) for v in P.vertices]),
    }
    if not P.degenerate:
        payload["facets"] = pio.jsonable(
            [{"normal": list(nrm), "offset": c} for nrm, c in P.facets])
        payload["convenient"] = is_convenient(P)
        payload["normalized_volume"] = pio.jsonable(normalized_volume(P))
        payload["face_count"] = pio.jsonable(len(all_proper_faces(P)))
    return payload, True


def _cmd_check_nondegenerate(args):
    pf = _load_problem(args)
    x = _point(args, pf)
    Fx = specialize(pf.deformation, x)
    verdict = check_nondegenerate(Fx, K=args.depth, budget=_budget(args, pf))
    payload = {
        "command": "check-nondegenerate",
        "x": pio.jsonable(list(x)),
        "kind": verdict.kind,
        "conclusive": verdict.conclusive,
        "checked_up_to": pio.jsonable(verdict.checked_up_to),
    }
    if verdict.degenerate:
        payload["witness"] = pio.jsonable(list(verdict.witness))
        payload["witness_degree"] = pio.jsonable(verdict.witness_degree)
        payload["face_generators"] = pio.jsonable(
            [list(w) for w in verdict.face.generators])
    return payload, not verdict.degenerate


def _cmd_expsum(args):
    pf = _load_problem(args)
    # the twist may live anywhere in the degree-k extension
    E = extension_field(pf.field, args.k)
    tau = pio.parse_element_arg(args.tau, E, "tau")
    x = _point(args, pf)
    S = family_sum(pf.deformation, args.k, tau, x, psi_power=args.psi_power,
                   partitions=args.threads, budget=_budget(args, pf))
    base = pf.deformation.base
    r = normalized_volume(base.newton())
    q = pf.field.q
    bound = r * float(q) ** (args.k * base.n / 2)
    tol = pf.tolerance if pf.tolerance is not None else 1e-6
    embeddings = _embeddings(S)
    amax = max((abs(complex(e["re"], e["im"])) for e in embeddings), default=0.0)
    payload = {
        "command": "expsum",
        "k": pio.jsonable(args.k),
        "tau": pio.jsonable(tau),
        "x": pio.jsonable(list(x)),
        "exact": pio.jsonable(S),
        "embeddings": embeddings,
        "bound": bound,
        "max_abs": amax,
        "bound_ok": amax <= bound + tol,
    }
    return payload, payload["bound_ok"]


def _cmd_frobenius(args):
    pf = _load_problem(args)
    tau = pio.parse_element_arg(args.tau, pf.field, "tau")
    x = _point(args, pf)
    tol = pf.tolerance if pf.tolerance is not None else PURITY_TOL
    report = frobenius_report(pf.deformation, x, tau, partitions=args.threads,
                              budget=_budget(args, pf), strict=False, tol=tol)
    ok = (report.consistency_ok and report.purity_ok
          and report.determinant_ok and report.duality_ok)
    payload = {
        "command": "frobenius",
        "tau": pio.jsonable(tau),
        "x": pio.jsonable(list(x)),
        "q": pio.jsonable(report.q),
        "n": pio.jsonable(report.n),
        "rank": pio.jsonable(report.rank),
        "weight": pio.jsonable(report.weight),
        "char_poly": pio.jsonable(report.char_poly),
        "char_poly_inverse_character": pio.jsonable(
            report.char_poly_inverse_character),
        "power_sums": pio.jsonable(list(report.power_sums)),
        "consistency_ok": report.consistency_ok,
        "purity_max_rel_dev": report.purity_max_rel_dev,
        "purity_ok": report.purity_ok,
        "determinant_max_rel_dev": report.determinant_max_rel_dev,
        "determinant_ok": report.determinant_ok,
        "duality_ok": report.duality_ok,
        "warnings": list(report.warnings),
    }
    return payload, ok


def _cmd_l_function(args):
    pf = _load_problem(args)
    x = _point(args, pf)
    report = family_l_function(pf.deformation, x, args.kmax,
                               partitions=args.threads,
                               budget=_budget(args, pf))
    ok = report.swan_bound_ok and report.stable
    payload = {
        "command": "l-function",
        "x": pio.jsonable(list(x)),
        "numerator": pio.jsonable(report.numerator),
        "denominator": pio.jsonable(report.denominator),
        "minus_chi_c": pio.jsonable(report.minus_chi_c),
        "rank": pio.jsonable(report.rank),
        "swan_bound_ok": report.swan_bound_ok,
        "stable": report.stable,
        "trace_sums": pio.jsonable(list(report.trace_sums)),
        "warnings": list(report.warnings),
    }
    return payload, ok


def _cmd_verify_connection(args):
    A = pio.parse_connection(pio.load_json_file(args.connection), args.connection)
    flat = curvature(A).is_zero
    rank = poincare_rank(A)
    payload = {
        "command": "verify-connection",
        "flat": flat,
        "poincare_rank": pio.jsonable(rank),
    }
    if flat and rank <= 0:
        lr = log_restriction(A)
        payload["residue"] = pio.jsonable(lr.residue)
        payload["residue_horizontal"] = lr.residue_horizontal
    elif flat and rank == 1:
        try:
            rr = rank1_restriction(A)
        except WrongRank:
            pass
        else:
            payload["higgs"] = pio.jsonable(list(rr.higgs))
            payload["r0"] = pio.jsonable(rr.r0)
            payload["higgs_squares_zero"] = rr.higgs_squares_zero
            payload["higgs_commutes_r0"] = rr.higgs_commutes_r0
    if flat:
        try:
            res_inf = residue_at_infinity(A)
        except WrongRank:
            payload["logarithmic_at_infinity"] = False
        else:
            payload["logarithmic_at_infinity"] = True
            payload["residue_at_infinity"] = pio.jsonable(res_inf)
    return payload, flat


def _cmd_verify_fts(args):
    T = pio.parse_fts_tuple(pio.load_json_file(args.tuple), args.tuple)
    report = verify_fts(T)
    ok = report.all_conditions_ok
    payload = {
        "command": "verify-fts",
        "conditions": {name: bool(v) for name, v in report.conditions.items()},
        "all_conditions_ok": report.all_conditions_ok,
        "assembled_flat": report.assembled_flat,
    }
    if T.g is not None:
        mr = verify_metric(T)
        payload["metric"] = {
            "higgs_self_adjoint": mr.higgs_self_adjoint,
            "r0_self_adjoint": mr.r0_self_adjoint,
            "rinf_skew_adjoint": mr.rinf_skew_adjoint,
            "pairing_flat": mr.pairing_flat,
        }
        ok = ok and mr.all_ok
    return payload, ok


def _cmd_monodromy(args):
    N = pio.parse_nilpotent_matrix(pio.load_json_file(args.matrix), args.matrix)
    filt = monodromy_filtration(N)
    payload = {
        "command": "monodromy",
        "dim": pio.jsonable(filt.dim),
        "levels": [{"k": pio.jsonable(k),
                    "dim": pio.jsonable(len(basis))}
                   for k, basis in filt.levels],
        "jumps": {str(k): pio.jsonable(d) for k, d in filt.jumps.items()},
    }
    return payload, True


def _cmd_acceptance(args):
    from .acceptance import run_all
    results = run_all(partitions=args.threads)
    payload = {
        "command": "acceptance",
        "criteria": [{
            "number": pio.jsonable(res.number),
            "name": res.name,
            "ok": res.ok,
            "details": res.details,
            "elapsed_seconds": round(res.elapsed, 3),
        } for res in results],
        "all_ok": all(res.ok for res in results),
    }
    return payload, payload["all_ok"]


# --- rendering -------------------------------------------------------------

def _render_text(payload, out):
    if payload.get("command") == "acceptance":
        for res in payload["criteria"]:
            mark = "PASS" if res["ok"] else "FAIL"
            out.write(f"{mark}  criterion {res['number']:>2}  {res['name']}"
                      f"  ({res['elapsed_seconds']:.3f} s)  {res['details']}\n")
        out.write("acceptance: %s\n"
                  % ("all criteria passed" if payload["all_ok"]
                     else "some criteria FAILED"))
        return
    for key in payload:
        if key == "command":
            continue
        out.write(f"{key}: {json.dumps(payload[key], sort_keys=True)}\n")


def _render(payload, args, out):
    if args.json:
        doc = dict(payload)
        doc["generated_at"] = datetime.datetime.now(
            datetime.timezone.utc).isoformat()
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        _render_text(payload, out)


# --- argument parsing -------------------------------------------------------

def _add_common(sp, problem=True):
    if problem:
        sp.add_argument("problem", help="problem JSON file")
    sp.add_argument("--json", action="store_true",
                    help="emit a machine-readable JSON report")
    sp.add_argument("--threads", type=int, default=1, metavar="N",
                    help="partition count for enumerations (output-invariant)")
    sp.add_argument("--budget", type=int, default=None, metavar="POINTS",
                    help="enumeration budget override")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arith-lg",
        description="Exponential sums, Frobenius eigenvalue reports, and "
                    "exact flat-connection verification.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("analyze-polytope",
                        help="Newton polytope report for the base polynomial")
    _add_common(sp)
    sp.set_defaults(handler=_cmd_analyze_polytope)

    sp = sub.add_parser("check-nondegenerate",
                        help="face-by-face nondegeneracy of a specialization")
    _add_common(sp)
    sp.add_argument("--x", default=None, help="specialization point, e.g. 0,2")
    sp.add_argument("--depth", type=int, default=None, metavar="K",
                    help="search extensions up to degree K")
    sp.set_defaults(handler=_cmd_check_nondegenerate)

    sp = sub.add_parser("expsum", help="one exponential sum S_k(tau, x)")
    _add_common(sp)
    sp.add_argument("--k", type=int, default=1, help="extension degree")
    sp.add_argument("--tau", required=True, help="twist, e.g. 3 or 1:2")
    sp.add_argument("--x", default=None, help="specialization point")
    sp.add_argument("--psi-power", type=int, default=1, dest="psi_power",
                    help="replace psi by its a-th power")
    sp.set_defaults(handler=_cmd_expsum)

    sp = sub.add_parser("frobenius",
                        help="characteristic polynomial of Frobenius with "
                             "purity, determinant, and duality checks")
    _add_common(sp)
    sp.add_argument("--tau", required=True)
    sp.add_argument("--x", default=None)
    sp.set_defaults(handler=_cmd_frobenius)

    sp = sub.add_parser("l-function",
                        help="L-function of the tau-summed family over the torus")
    _add_common(sp)
    sp.add_argument("--x", default=None)
    sp.add_argument("--kmax", type=int, default=None,
                    help="number of trace sums to reconstruct from")
    sp.set_defaults(handler=_cmd_l_function)

    sp = sub.add_parser("verify-connection",
                        help="flatness and pole structure of a connection form")
    sp.add_argument("connection", help="connection JSON file")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(handler=_cmd_verify_connection)

    sp = sub.add_parser("verify-fts",
                        help="the six flatness conditions for a structure tuple")
    sp.add_argument("tuple", help="tuple JSON file")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(handler=_cmd_verify_fts)

    sp = sub.add_parser("monodromy",
                        help="weight filtration of a nilpotent matrix")
    sp.add_argument("matrix", help="matrix JSON file")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(handler=_cmd_monodromy)

    sp = sub.add_parser("acceptance", help="run the full acceptance suite")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--threads", type=int, default=1, metavar="N")
    sp.set_defaults(handler=_cmd_acceptance)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        payload, ok = args.handler(args)
    except BudgetExceeded as exc:
        _render_error(args, out, "budget", str(exc))
        return EXIT_BUDGET
    except InputError as exc:
        _render_error(args, out, "input", str(exc))
        return EXIT_INPUT
    except VerificationError as exc:
        _render_error(args, out, "verification", str(exc))
        return EXIT_VERIFICATION
    except ArithLGError as exc:  # pragma: no cover - safety net
        _render_error(args, out, "error", str(exc))
        return EXIT_INPUT
    _render(payload, args, out)
    return EXIT_OK if ok else EXIT_VERIFICATION


def _render_error(args, out, kind, message):
    if getattr(args, "json", False):
        out.write(json.dumps({"error": {"kind": kind, "message": message}},
                             indent=2, sort_keys=True) + "\n")
    else:
        out.write(f"error ({kind}): {message}\n")


if __name__ == "__main__":
    sys.exit(main())
