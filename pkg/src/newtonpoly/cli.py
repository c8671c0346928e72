"""Command-line front end: a thin client over the same handlers the HTTP
service uses.

Exit codes are scriptable: 0 on success (certificate Satisfied / polygons
Match / all fixtures pass), 2 when a verdict comes back Violated or
Mismatch, 1 on any error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import NewtonPolyError
from . import handlers
from .render import ascii_polygon, svg_polygon
from .schemas import (
    MergeRequest,
    NpRequest,
    PolyPrimeRequest,
    PredictRequest,
    ResidualRequest,
    SchurRequest,
    SearchRequest,
    VerifyRequest,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATED = 2


def _read_poly_arg(value: str, stdin_lines: list[str]) -> str:
    if value == "-":
        if not stdin_lines:
            raise NewtonPolyError("no polynomial left on stdin for '-'")
        return stdin_lines.pop(0)
    return value


def _dump_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


def _arrow(polygon: dict) -> str:
    return " -> ".join(f"({x},{y})" for x, y in polygon["vertices"])


def _certificate_text(cert: dict) -> list[str]:
    lines = [f"theorem: {cert['theorem']}", f"verdict: {cert['verdict']}"]
    for violation in cert["violations"]:
        lines.append(f"  violation {violation['name']}: {violation['detail']}")
    if cert.get("parameters"):
        lines.append(f"parameters: {json.dumps(cert['parameters'], sort_keys=True)}")
    if cert.get("predicted_polygon"):
        lines.append(f"predicted polygon: {_arrow(cert['predicted_polygon'])}")
    if cert.get("factor_bound"):
        lines.append(f"max factor count: {cert['factor_bound']['max_factor_count']}")
    for note in cert.get("notes") or []:
        lines.append(f"note: {note}")
    return lines


def _render_output(command: str, payload: dict, fmt: str) -> tuple[str, int]:
    """Returns (text, exit_code)."""
    code = EXIT_OK
    if command == "predict":
        if payload["certificate"]["verdict"] != "satisfied":
            code = EXIT_VIOLATED
    elif command == "verify":
        if not payload["match"]:
            code = EXIT_VIOLATED
    elif command == "stability":
        if payload["verdict"] != "satisfied":
            code = EXIT_VIOLATED
    elif command == "schur":
        cert = payload.get("certificate")
        if cert and cert["verdict"] != "satisfied":
            code = EXIT_VIOLATED
    elif command == "paper-examples":
        if not payload["all_passed"]:
            code = EXIT_VIOLATED
    elif command == "merge":
        if payload.get("equal") is False:
            code = EXIT_VIOLATED

    if fmt == "json":
        return _dump_json(payload), code
    if fmt == "svg":
        polygon = {
            "np": lambda: payload,
            "merge": lambda: payload["merged"],
            "predict": lambda: payload.get("prediction"),
            "schur": lambda: payload["polygon"],
        }.get(command, lambda: None)()
        if polygon is None:
            raise NewtonPolyError(f"no polygon available to render as SVG for '{command}'")
        return svg_polygon(polygon), code

    # text
    if command == "np":
        return ascii_polygon(payload), code
    if command == "merge":
        lines = [f"merged: {_arrow(payload['merged'])}"]
        if payload.get("product_polygon") is not None:
            lines.append(f"product: {_arrow(payload['product_polygon'])}")
            lines.append(f"equal: {payload['equal']}")
        return "\n".join(lines), code
    if command == "predict":
        lines = _certificate_text(payload["certificate"])
        if payload.get("prediction"):
            lines.append(f"prediction (n={payload['n']}): {_arrow(payload['prediction'])}")
        return "\n".join(lines), code
    if command == "verify":
        lines = [
            f"match: {payload['match']}",
            f"predicted: {_arrow(payload['predicted'])}",
            f"oracle:    {_arrow(payload['oracle'])}",
        ]
        if payload["first_mismatch"]:
            lines.append(f"first mismatch: {json.dumps(payload['first_mismatch'])}")
        lines.append(f"vertex equalities hold: {payload['vertex_equalities_ok']}")
        lines.append(f"coefficient bounds hold: {payload['coefficient_bounds_ok']}")
        return "\n".join(lines), code
    if command == "stability":
        return "\n".join(_certificate_text(payload)), code
    if command == "purity":
        r = payload.get("r")
        text = {"dumas": f"p^r-Dumas with r = {r}", "pure": f"p^r-pure with r = {r}"}.get(
            payload["kind"], "not pure"
        )
        return f"purity at p = {payload['prime']}: {text}", code
    if command == "residual":
        lines = [f"phi = {payload['phi']}, polygon: {_arrow(payload['polygon'])}"]
        for datum in payload["data"]:
            slope = datum["slope"]
            profile = datum["degree_profile"]
            lines.append(
                f"edge {datum['edge_index']}: slope {slope['num']}/{slope['den']}, "
                f"t = {datum['t']}, T(Y) = {datum['residual_poly']}, "
                f"squarefree = {datum['squarefree']}, profile = {profile}"
            )
        return "\n".join(lines), code
    if command == "split":
        lines = [payload["display"], f"p-regular: {payload['p_regular']}"]
        for entry in payload["entries"]:
            lines.append(
                f"  e = {entry['ramification']}, f = {entry['residual_degree']}, "
                f"count = {entry['count']}"
            )
        lines.append(f"sum e*f = {payload['degree_sum']}")
        return "\n".join(lines), code
    if command == "index-divisor":
        lines = [
            f"common index divisor at p = {payload['prime']}: {payload['common_index_divisor']}"
        ]
        if payload["witness_h"] is not None:
            h = str(payload["witness_h"])
            lines.append(
                f"witness h = {h}: P_{h} = {payload['P_counts'][h]} > N_{h} = {payload['N_counts'][h]}"
            )
        lines.append(payload["splitting"]["display"])
        return "\n".join(lines), code
    if command == "schur":
        lines = [
            f"G_{payload['m']} = {payload['polynomial']}",
            f"polygon: {_arrow(payload['polygon'])}",
            "formula slopes: "
            + ", ".join(f"{s['num']}/{s['den']}" for s in payload["formula_slopes"]),
        ]
        if payload.get("certificate"):
            lines.extend(_certificate_text(payload["certificate"]))
        return "\n".join(lines), code
    if command == "paper-examples":
        lines = []
        for fixture in payload["fixtures"]:
            status = "pass" if fixture["passed"] else "FAIL"
            lines.append(f"[{status}] {fixture['name']}")
            if not fixture["passed"]:
                for check, ok in fixture["checks"].items():
                    if not ok:
                        lines.append(f"        failing check: {check}")
        lines.append("all passed" if payload["all_passed"] else "FAILURES present")
        return "\n".join(lines), code
    if command == "search":
        lines = [f"searched {payload['count']} perturbed instances (seed {payload['seed']})"]
        for item in payload["found"]:
            lines.append(
                f"  [{item['perturbation']}] p={item['prime']} g={item['g']} f={item['f']} "
                f"-> {item['violations'][0]['name']}, mismatch at {json.dumps(item['first_mismatch'])}"
            )
        lines.append(f"found {payload['found_count']} violated-and-mismatch instances")
        return "\n".join(lines), code
    return _dump_json(payload), code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="newtonpoly",
        description="Exact Newton-polygon analysis of rational polynomials with respect to a prime.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--format", choices=("json", "text", "svg"), default="text")
        sp.add_argument("--out", metavar="PATH", default=None, help="write output to PATH")

    sp = sub.add_parser("np", help="Newton polygon of one polynomial")
    sp.add_argument("polynomial", help="polynomial text, or '-' for stdin")
    sp.add_argument("--prime", "-p", type=int, required=True)
    sp.add_argument("--phi", default=None, help="monic base for a phi-adic polygon")
    sp.add_argument("--strip-zero-root", action="store_true")
    add_common(sp)

    sp = sub.add_parser("merge", help="product polygon from slope-sorted edge translates")
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True)
    sp.add_argument("--prime", "-p", type=int, required=True)
    sp.add_argument("--no-check", action="store_true", help="skip recomputing the product polygon")
    add_common(sp)

    sp = sub.add_parser("predict", help="composition/iteration certificate and polygon prediction")
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", default=None, help="omit to certify iterates of f alone")
    sp.add_argument("--prime", "-p", type=int, required=True)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument(
        "--theorem", choices=("auto", "composition", "steep", "pure", "iterate"), default="auto"
    )
    add_common(sp)

    sp = sub.add_parser("verify", help="literal composition oracle vs the stretch prediction")
    sp.add_argument("--g", required=True)
    sp.add_argument("--f", required=True)
    sp.add_argument("--prime", "-p", type=int, required=True)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--degree-cap", type=int, default=None)
    add_common(sp)

    for name, help_text in (
        ("stability", "eventual-stability certificate"),
        ("purity", "p^r-pure / p^r-Dumas classification"),
        ("split", "splitting shape of p in the field defined by f"),
        ("index-divisor", "common-index-divisor (non-monogenity) test"),
    ):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("polynomial", help="polynomial text, or '-' for stdin")
        sp.add_argument("--prime", "-p", type=int, required=True)
        add_common(sp)

    sp = sub.add_parser("residual", help="residual polynomials of each polygon edge")
    sp.add_argument("polynomial", help="polynomial text, or '-' for stdin")
    sp.add_argument("--prime", "-p", type=int, required=True)
    sp.add_argument("--phi", default="x")
    add_common(sp)

    sp = sub.add_parser("schur", help="Schur-polynomial polygon and dynamical irreducibility")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--prime", "-p", type=int, required=True)
    sp.add_argument("--b", default=None, help="comma-separated m+1 coefficients (default all 1)")
    sp.add_argument("--f", default=None, help="inner polynomial for the certificate")
    add_common(sp)

    sp = sub.add_parser("paper-examples", help="run the built-in published fixtures end to end")
    add_common(sp)

    sp = sub.add_parser("search", help="randomized sweep for violated-and-mismatch instances")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=50)
    sp.add_argument("--primes", default="2,3,5", help="comma-separated primes")
    add_common(sp)

    return parser


def _dispatch(args: argparse.Namespace, stdin_lines: list[str]) -> dict:
    if args.command == "np":
        return handlers.handle_np(
            NpRequest(
                polynomial=_read_poly_arg(args.polynomial, stdin_lines),
                prime=args.prime,
                phi=args.phi,
                strip_zero_root=args.strip_zero_root,
            )
        )
    if args.command == "merge":
        return handlers.handle_merge(
            MergeRequest(
                f=_read_poly_arg(args.f, stdin_lines),
                g=_read_poly_arg(args.g, stdin_lines),
                prime=args.prime,
                check=not args.no_check,
            )
        )
    if args.command == "predict":
        return handlers.handle_predict(
            PredictRequest(
                f=_read_poly_arg(args.f, stdin_lines),
                g=None if args.g is None else _read_poly_arg(args.g, stdin_lines),
                prime=args.prime,
                n=args.n,
                theorem=args.theorem,
            )
        )
    if args.command == "verify":
        return handlers.handle_verify(
            VerifyRequest(
                g=_read_poly_arg(args.g, stdin_lines),
                f=_read_poly_arg(args.f, stdin_lines),
                prime=args.prime,
                n=args.n,
                degree_cap=args.degree_cap,
            )
        )
    if args.command in ("stability", "purity", "split", "index-divisor"):
        req = PolyPrimeRequest(
            polynomial=_read_poly_arg(args.polynomial, stdin_lines), prime=args.prime
        )
        return {
            "stability": handlers.handle_stability,
            "purity": handlers.handle_purity,
            "split": handlers.handle_split,
            "index-divisor": handlers.handle_index_divisor,
        }[args.command](req)
    if args.command == "residual":
        return handlers.handle_residual(
            ResidualRequest(
                polynomial=_read_poly_arg(args.polynomial, stdin_lines),
                prime=args.prime,
                phi=args.phi,
            )
        )
    if args.command == "schur":
        b = None if args.b is None else [int(part) for part in args.b.split(",")]
        return handlers.handle_schur(
            SchurRequest(
                m=args.m,
                prime=args.prime,
                b=b,
                f=None if args.f is None else _read_poly_arg(args.f, stdin_lines),
            )
        )
    if args.command == "paper-examples":
        return handlers.handle_paper_examples()
    if args.command == "search":
        primes = [int(part) for part in args.primes.split(",")]
        return handlers.handle_search(
            SearchRequest(seed=args.seed, count=args.count, primes=primes)
        )
    raise AssertionError(f"unhandled command {args.command}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    stdin_lines: list[str] = []
    raw_args = argv if argv is not None else sys.argv[1:]
    if "-" in raw_args:
        stdin_lines = [line.strip() for line in sys.stdin.read().splitlines() if line.strip()]
    try:
        payload = _dispatch(args, stdin_lines)
        text, code = _render_output(args.command, payload, args.format)
    except NewtonPolyError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
