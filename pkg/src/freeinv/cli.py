"""Command-line surface.

Exit codes: 0 mathematical success, 1 mathematical negative (not injective /
verification false), 2 input error, 3 indeterminate (a cap or budget cut the
search short of the rigorous bound).

The inversion loop follows the auxiliary-system iteration; the Jacobian gate
treats "no polynomial inverse of the Jacobian up to the rigorous degree cap"
as the non-injectivity certificate (the Jacobian of a polynomial map is itself
always polynomial; only its inverse can fail to be).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bipartite, deriv, inverter, jacobian, mateval, parsing, sysolve
from .freealg import ArityMismatch, UnboundLetter, check_alphabet
from .parsing import ParseError

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT_ERROR = 2
EXIT_INDETERMINATE = 3

DEFAULT_CAP = 64
DEFAULT_MAX_TERMS = 200_000


def _parse_map(strings, g):
    p = parsing.parse_poly_map(strings)
    check_alphabet(p, g, kinds=("x",))
    return p


def _emit(args, payload, text_lines):
    if args.json:
        out = json.dumps(payload, indent=None, sort_keys=True)
    else:
        out = "\n".join(text_lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _matrix_payload(mat_of_polys):
    return [[parsing.format_poly(e) for e in row] for row in mat_of_polys.entries]


def _bip_matrix_payload(m):
    return [[parsing.format_bipartite(e) for e in row] for row in m.entries]


def cmd_invert(args):
    p = _parse_map(args.poly, args.g)
    cap = None if args.rigorous else args.cap
    outcome = inverter.invert(p, cap=cap, max_terms=args.max_terms or None)
    payload = outcome.to_jsonable()
    lines = [f"outcome: {outcome.outcome}"]
    if outcome.is_inverse:
        for i, comp in enumerate(outcome.q):
            lines.append(f"q{i + 1} = {parsing.format_poly(comp)}")
        lines.append(f"iterations: {outcome.iterations}")
    elif outcome.reason:
        lines.append(f"reason: {outcome.reason}")
    _emit(args, payload, lines)
    if outcome.is_inverse:
        return EXIT_OK
    if outcome.is_not_injective:
        return EXIT_NEGATIVE
    return EXIT_INDETERMINATE


def cmd_jacobian(args):
    p = _parse_map(args.poly, args.g)
    constants, jac = jacobian.jacobian_extract(p)
    payload = {
        "constant": [str(c) for c in constants],
        "jacobian": _matrix_payload(jac),
    }
    lines = [f"constant: {[str(c) for c in constants]}"]
    for row in jac.entries:
        lines.append("[" + ", ".join(parsing.format_poly(e) for e in row) + "]")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_aux_iterate(args):
    p = _parse_map(args.poly, args.g)
    constants = [comp.constant_term() for comp in p]
    if any(constants):
        print("error: map must have zero constant term", file=sys.stderr)
        return EXIT_INPUT_ERROR
    _, jac = jacobian.jacobian_extract(p)
    deg_j = jac.degree()
    deg_j = 0 if deg_j == float("-inf") else int(deg_j)
    cap = inverter.pmid_scale(args.g) * deg_j
    j_inv = jacobian.poly_matrix_inverse(jac, cap, max_terms=args.max_terms or None)
    if isinstance(j_inv, jacobian.NotPolyInvertible):
        print(f"error: Jacobian not polynomially invertible ({j_inv.reason})", file=sys.stderr)
        return EXIT_NEGATIVE
    system = jacobian.auxiliary_inverse(p, j_inv)
    split = sysolve.iterate_split(system, args.k, args.trunc)
    floor = "inf" if split.floor is None and split.exact else (
        f">{args.trunc}" if split.floor is None else split.floor
    )
    payload = {
        "k": split.k,
        "head": parsing.format_poly_map(split.head),
        "floor": floor,
        "tail": parsing.format_poly_map(split.tail),
    }
    lines = [f"k = {split.k}", f"floor = {floor}"]
    lines += [f"head{i + 1} = {s}" for i, s in enumerate(payload["head"])]
    lines += [f"tail{i + 1} = {s}" for i, s in enumerate(payload["tail"])]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_solve_system(args):
    comps = parsing.parse_poly_map(args.poly)
    system = sysolve.ProperAlgebraicSystem(comps)
    solution = sysolve.solve_truncated(system, args.trunc)
    payload = {"solution": parsing.format_poly_map(solution)}
    lines = [f"s{i + 1} = {s}" for i, s in enumerate(payload["solution"])]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_derive(args):
    p = _parse_map(args.poly, args.g)
    d = deriv.derivative_map(p)
    payload = {"derivative": parsing.format_poly_map(d)}
    lines = [f"D{i + 1} = {s}" for i, s in enumerate(payload["derivative"])]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_scion(args):
    p = _parse_map(args.poly, args.g)
    f = deriv.scion(p)
    payload = {"scion": parsing.format_poly_map(f)}
    lines = [f"F{i + 1} = {s}" for i, s in enumerate(payload["scion"])]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_hypojac(args):
    p = _parse_map(args.poly, args.g)
    hj = bipartite.hypo_jacobian(p)
    payload = {"hypo_jacobian": _bip_matrix_payload(hj)}
    lines = [
        "[" + ", ".join(parsing.format_bipartite(e) for e in row) + "]"
        for row in hj.entries
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_check_injective(args):
    p = _parse_map(args.poly, args.g)
    cap = None if args.rigorous else args.cap
    result = bipartite.injectivity_test(p, cap=cap, max_terms=args.max_terms or None)
    payload = {"status": result.status, "cap_used": result.cap_used, "certified": result.certified}
    if result.inverse is not None:
        payload["inverse"] = _bip_matrix_payload(result.inverse)
    lines = [f"status: {result.status} (cap {result.cap_used})"]
    _emit(args, payload, lines)
    if result.status == "injective":
        return EXIT_OK
    if result.status == "not-injective":
        return EXIT_NEGATIVE
    return EXIT_INDETERMINATE


def cmd_eval(args):
    p = _parse_map(args.poly, args.g)
    if args.at_file:
        with open(args.at_file) as fh:
            tuple_text = fh.read()
    else:
        tuple_text = args.at
    X = parsing.parse_matrix_tuple(tuple_text)
    if X.arity < args.g:
        print(
            f"error: tuple has {X.arity} matrices but -g {args.g} was declared",
            file=sys.stderr,
        )
        return EXIT_INPUT_ERROR
    if args.float:
        values = [mateval.eval_poly_float(comp, X) for comp in p]
        rendered = [[[_float_str(e) for e in row] for row in v] for v in values]
    else:
        values = [mateval.eval_poly(comp, X) for comp in p]
        rendered = [parsing.format_matrix(v) for v in values]
    payload = {"values": rendered}
    lines = [json.dumps(v) for v in rendered]
    _emit(args, payload, lines)
    return EXIT_OK


def _float_str(value):
    if abs(value.imag) < 1e-12:
        return repr(value.real)
    return repr(value)


def cmd_verify(args):
    p = _parse_map(args.p, args.g)
    q = _parse_map(args.q, args.g)
    if args.float:
        # convenience sampling mode; the exact path below is the authority
        import random as _random

        rng = _random.Random(args.seed)
        X = mateval.random_matrix_tuple(rng, args.g, 2)
        qx = mateval.MatrixTuple(
            2, tuple(mateval.eval_poly(comp, X) for comp in q)
        )
        px = mateval.MatrixTuple(
            2, tuple(mateval.eval_poly(comp, X) for comp in p)
        )
        resid = 0.0
        for i, comp in enumerate(p):
            approx = mateval.eval_poly_float(comp, qx)
            target = mateval.to_complex_matrix(X.mats[i])
            resid = max(
                resid,
                max(
                    abs(approx[r][c2] - target[r][c2])
                    for r in range(2)
                    for c2 in range(2)
                ),
            )
        for i, comp in enumerate(q):
            approx = mateval.eval_poly_float(comp, px)
            target = mateval.to_complex_matrix(X.mats[i])
            resid = max(
                resid,
                max(
                    abs(approx[r][c2] - target[r][c2])
                    for r in range(2)
                    for c2 in range(2)
                ),
            )
        ok = resid < 1e-9
        payload = {"inverse_pair": ok, "sampled_residual": resid}
        _emit(args, payload, [f"inverse pair (sampled, tol 1e-9): {ok}"])
        return EXIT_OK if ok else EXIT_NEGATIVE
    ok = inverter.verify_inverse(p, q)
    payload = {"inverse_pair": ok}
    _emit(args, payload, [f"inverse pair: {ok}"])
    return EXIT_OK if ok else EXIT_NEGATIVE


def build_parser():
    parser = argparse.ArgumentParser(
        prog="freeinv",
        description="Exact inversion and injectivity testing of free (noncommutative) polynomial maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, polys="poly", cap=False):
        sp.add_argument("-g", type=int, required=True, help="number of variables/components")
        sp.add_argument(polys, nargs="+", help="polynomial components, e.g. \"x2 - x1*x2*x1\"")
        sp.add_argument("--json", action="store_true", help="emit JSON")
        sp.add_argument("--out", help="write output to a file instead of stdout")
        sp.add_argument("--seed", type=int, default=0, help="seed for any sampled checks (reproducibility)")
        if cap:
            sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="working-degree cap (default 64)")
            sp.add_argument(
                "--rigorous",
                action="store_true",
                help="use the full rigorous degree bound (may be very slow)",
            )
            sp.add_argument(
                "--max-terms",
                type=int,
                default=DEFAULT_MAX_TERMS,
                help="abort to 'indeterminate' beyond this many stored terms (0 = unlimited)",
            )

    sp = sub.add_parser("invert", help="compute a verified polynomial inverse or certify none exists")
    common(sp, cap=True)
    sp.set_defaults(fn=cmd_invert)

    sp = sub.add_parser("jacobian", help="constant part and left Jacobian matrix")
    common(sp)
    sp.set_defaults(fn=cmd_jacobian)

    sp = sub.add_parser("aux-iterate", help="k-th self-composition of the auxiliary system, split at its z-floor")
    common(sp)
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--trunc", type=int, default=DEFAULT_CAP, help="working truncation degree")
    sp.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)
    sp.set_defaults(fn=cmd_aux_iterate)

    sp = sub.add_parser("solve-system", help="truncated fixed point of a proper system over x and z")
    sp.add_argument("poly", nargs="+", help="system components over x1.. and z1..")
    sp.add_argument("--trunc", type=int, default=8)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_solve_system)

    sp = sub.add_parser("derive", help="formal directional derivative (direction letters y)")
    common(sp)
    sp.set_defaults(fn=cmd_derive)

    sp = sub.add_parser("scion", help="doubled-variables linearization (2g components over x and y)")
    common(sp)
    sp.set_defaults(fn=cmd_scion)

    sp = sub.add_parser("hypojac", help="packed-derivative matrix over the split ring")
    common(sp)
    sp.set_defaults(fn=cmd_hypojac)

    sp = sub.add_parser("check-injective", help="matrix-form injectivity test")
    common(sp, cap=True)
    sp.set_defaults(fn=cmd_check_injective)

    sp = sub.add_parser("eval", help="evaluate components on an exact matrix tuple")
    common(sp)
    sp.add_argument("--at", help="JSON matrix tuple")
    sp.add_argument("--at-file", help="file containing a JSON matrix tuple")
    sp.add_argument("--float", action="store_true", help="floating-point output (convenience only)")
    sp.set_defaults(fn=cmd_eval)

    sp = sub.add_parser("verify", help="check that two maps are exact compositional inverses")
    sp.add_argument("-g", type=int, required=True)
    sp.add_argument("--p", nargs="+", required=True)
    sp.add_argument("--q", nargs="+", required=True)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument(
        "--float",
        action="store_true",
        help="sampled floating-point check at tolerance 1e-9 (convenience only)",
    )
    sp.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "fn", None) is cmd_eval and not (args.at or args.at_file):
        print("error: eval requires --at or --at-file", file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        return args.fn(args)
    except (ParseError, UnboundLetter, ArityMismatch, mateval.SizeMismatch, sysolve.ImproperSystem,
            sysolve.SingularLinearPart, sysolve.NonzeroConstant, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
