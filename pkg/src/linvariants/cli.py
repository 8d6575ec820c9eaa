"""Command-line front end: table generation, module analysis, L-invariants.

Every subcommand is deterministic (identical inputs give byte-identical
output).  Rationals are serialized as "num/den" strings so no consumer
ever sees a rounded value.  Exit codes: 0 success, 2 malformed input or
domain/precondition error, 3 mathematical singularity (zero denominator
at the chosen direction).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import linv, phin, plethysm, weylhecke
from .exactlin import DimensionMismatchError, rational
from .sl2rep import InternalConsistencyError


class CliError(Exception):
    def __init__(self, message: str, exit_code: int = 2):
        super().__init__(message)
        self.exit_code = exit_code


def _frac_str(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _monomial_json(m: phin.EigenMonomial) -> dict:
    return {sym: _frac_str(e) for sym, e in sorted(m.exponents)}


def _monomial_from_json(obj: dict) -> phin.EigenMonomial:
    return phin.EigenMonomial.from_dict({sym: rational(e) for sym, e in obj.items()})


def _parse_json_arg(text: str, label: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise CliError(f"malformed JSON for {label}: {err}") from err


def _load_input(args) -> dict:
    if args.input == "-":
        return _parse_json_arg(sys.stdin.read(), "--input")
    try:
        with open(args.input, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as err:
        raise CliError(f"cannot read input file: {err}") from err
    except json.JSONDecodeError as err:
        raise CliError(f"malformed JSON in input file: {err}") from err


def _emit(payload, fmt: str, csv_header: str | None = None, csv_rows=None) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))
    if fmt == "csv":
        if csv_header is None or csv_rows is None:
            raise CliError("csv output is only available for table commands")
        lines = [csv_header]
        lines += [",".join(str(x) for x in row) for row in csv_rows]
        return "\n".join(lines)
    return json.dumps(payload, sort_keys=True, indent=2)


def _cmd_cg(args):
    m, n, p = args.m, args.n, args.p
    if args.table:
        table = plethysm.cg_table(m, n, p)
        rows = []
        for u in range(m + 1):
            for v in range(n + 1):
                for w in range(p + 1):
                    value = table.coefficient(u, v, w)
                    if value:
                        rows.append((u, v, w, _frac_str(value)))
        return {"m": m, "n": n, "p": p, "rows": rows}, "u,v,w,value", rows
    if args.u is None or args.v is None or args.w is None:
        raise CliError("either --table or all of --u --v --w are required")
    value = plethysm.cg_coefficient(m, n, p, args.u, args.v, args.w)
    return {"value": _frac_str(value)}, None, None


def _cmd_bcoeff(args):
    if args.i is not None:
        value = plethysm.b_coefficient(args.n, args.k, args.i)
        rows = [(args.n, args.k, args.i, _frac_str(value))]
        return {"value": _frac_str(value)}, "n,k,i,value", rows
    row = plethysm.b_row(args.n, args.k)
    rows = [(args.n, args.k, i, _frac_str(x)) for i, x in enumerate(row)]
    return {"values": [_frac_str(x) for x in row]}, "n,k,i,value", rows


def _cmd_project_endo(args) -> tuple[dict, str | None]:
    diag = _parse_json_arg(args.diag, "--diag")
    if not isinstance(diag, list):
        raise CliError("--diag must be a JSON array of rationals")
    result = plethysm.project_endomorphism_diagonal(
        args.n, args.k, [rational(x) for x in diag]
    )
    return {
        "middle": _frac_str(result.middle),
        "tail": [_frac_str(x) for x in result.tail],
    }, None, None


def _subspace_json(module: phin.PhiNModule, space) -> list[int]:
    return list(module.f_indices_of(space))


def _cmd_phin(args) -> tuple[dict, str | None]:
    module = phin.build_case(
        args.case, args.n, l_invariant=args.L, weight=args.weight
    )
    payload: dict = {
        "case": module.case,
        "n": module.n,
        "dim": module.dim,
        "fil0_dim": module.fil0.dim,
        "phi": [_monomial_json(lam) for lam in module.phi],
    }
    if module.l_invariant is not None:
        payload["L"] = _frac_str(module.l_invariant)
    if args.all_submodules:
        payload["stable_submodules"] = [
            _subspace_json(module, s) for s in phin.stable_submodules(module)
        ]
        payload["regular_submodules"] = [
            _subspace_json(module, s) for s in phin.regular_submodules(module)
        ]
    if args.benois or args.gr1:
        d = phin.canonical_regular_submodule(module)
        payload["D"] = _subspace_json(module, d)
        if args.benois:
            filtration = phin.benois_filtration(module, d)
            payload["benois"] = {
                "D_minus1": _subspace_json(module, filtration.d_minus1),
                "D_0": _subspace_json(module, filtration.d_0),
                "D_1": _subspace_json(module, filtration.d_1),
            }
        if args.gr1:
            rank, eigenvalue = phin.gr1_data(module, d)
            payload["gr1"] = {
                "rank": rank,
                "eigenvalue": None if eigenvalue is None else _monomial_json(eigenvalue),
            }
    return payload, None, None


def _weyl_from_args(args, g: int) -> weylhecke.WeylElement:
    if args.weyl is None:
        return weylhecke.WeylElement.identity(g)
    return weylhecke.WeylElement.from_json(_parse_json_arg(args.weyl, "--weyl"))


def _cmd_hecke(args) -> tuple[dict, str | None]:
    g = args.g
    t_obj = _parse_json_arg(args.t, "--t")
    t = weylhecke.TorusExponent.make(t_obj["a"], t_obj["a0"])
    if t.g != g:
        raise CliError("torus exponent length differs from g")
    chi = weylhecke.CharacterData.generic(g)
    if args.all:
        entries = [
            {
                "weyl": w.to_json(),
                "value": _monomial_json(weylhecke.hecke_diagonal(chi, t, w)),
            }
            for w in weylhecke.weyl_group(g)
        ]
        return {"g": g, "eigenvalues": entries}, None, None
    w = _weyl_from_args(args, g)
    value = weylhecke.hecke_diagonal(chi, t, w)
    return {"g": g, "weyl": w.to_json(), "value": _monomial_json(value)}, None, None


def _cmd_recover_chi(args) -> tuple[dict, str | None]:
    g = args.g
    eigs = _parse_json_arg(args.eigs, "--eigs")
    weights = _parse_json_arg(args.weights, "--weights")
    w = _weyl_from_args(args, g)
    recovered = weylhecke.recover_characters(
        g,
        [_monomial_from_json(e) for e in eigs],
        weights["mu"],
        weights["mu0"],
        w,
    )
    return {
        "chi": [_monomial_json(c) for c in recovered.chi],
        "sigma": _monomial_json(recovered.sigma),
    }, None, None


def _cmd_slope(args) -> tuple[dict, str | None]:
    obj = _load_input(args)
    if args.family == "hilbert":
        ok = weylhecke.slope_check_hilbert(obj["k"], obj["w"], obj["slopes"])
        return {"noncritical": ok}, None, None
    t = weylhecke.TorusExponent.make(obj["t"]["a"], obj["t"]["a0"])
    payload: dict = {
        "noncritical": weylhecke.slope_check_gsp(
            obj["weights"], obj["mu0"], t, obj["slopes"]
        )
    }
    if obj.get("find_twist"):
        payload["twist"] = weylhecke.twist_search(
            obj["weights"], obj["mu0"], t, obj["slopes"]
        )
    return payload, None, None


def _cmd_obstruction(args) -> tuple[dict, str | None]:
    exponents = [int(x) for x in args.exponents.split(",") if x.strip() != ""]
    orders = weylhecke.refinement_obstruction_orders(exponents)
    payload: dict = {"orders": sorted(orders)}
    if args.check_N is not None:
        payload["check_N"] = {
            "N": args.check_N,
            "sufficient": weylhecke.exclusion_sufficient(orders, args.check_N),
        }
    return payload, None, None


def _cmd_linv(args) -> tuple[dict, str | None]:
    obj = _load_input(args)
    family = args.family
    params = obj.get("params", {})
    places_obj = obj["places"]
    direction_obj = obj["direction"]
    direction = linv.Direction.make(direction_obj["u"], direction_obj.get("u0", 0))
    if args.compare_theorem:
        if linv.THEOREM_FAMILY[args.compare_theorem] != family:
            raise CliError(
                f"theorem {args.compare_theorem} belongs to family "
                f"{linv.THEOREM_FAMILY[args.compare_theorem]}, not {family}"
            )
        data = linv.data_for_theorem(
            args.compare_theorem,
            n=params.get("n") or params.get("g"),
            places=len(places_obj),
        )
    else:
        data = linv.family_data(
            family,
            places=len(places_obj),
            g=params.get("g"),
            n=params.get("n"),
        )
    assignments = []
    for place in places_obj:
        gradients = place["gradients"]
        assignments.append(
            [rational(gradients[f"a_{j}"]) for j in range(1, data.num_hecke + 1)]
        )
    pairs = linv.per_place_pairs(data, direction, assignments)
    payload: dict = {
        "value": _frac_str(linv.rank1_combine(pairs)),
        "per_place": [
            {"a": _frac_str(a), "b": _frac_str(b), "value": _frac_str(a / b)}
            for a, b in pairs
        ],
    }
    if args.compare_theorem:
        comparison = linv.compare_to_theorem(args.compare_theorem, n=params.get("n") or params.get("g"))
        payload["classification"] = comparison.to_json()
    return payload, None, None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linvariants",
        description="Exact tables, module analysis and L-invariant evaluation.",
    )
    parser.add_argument(
        "--format", choices=("json", "csv", "pretty"), default="json"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cg = sub.add_parser("cg", help="inverse Clebsch-Gordan coefficients")
    cg.add_argument("--m", type=int, required=True)
    cg.add_argument("--n", type=int, required=True)
    cg.add_argument("--p", type=int, required=True)
    cg.add_argument("--table", action="store_true")
    cg.add_argument("--u", type=int)
    cg.add_argument("--v", type=int)
    cg.add_argument("--w", type=int)
    cg.set_defaults(func=_cmd_cg)

    bcoeff = sub.add_parser("bcoeff", help="projection coefficients B_{n,k,i}")
    bcoeff.add_argument("--n", type=int, required=True)
    bcoeff.add_argument("--k", type=int, required=True)
    bcoeff.add_argument("--i", type=int)
    bcoeff.set_defaults(func=_cmd_bcoeff)

    project = sub.add_parser(
        "project-endo", help="project a diagonal endomorphism onto Sym^2k"
    )
    project.add_argument("--n", type=int, required=True)
    project.add_argument("--k", type=int, required=True)
    project.add_argument("--diag", required=True, help="JSON array of rationals")
    project.set_defaults(func=_cmd_project_endo)

    phin_cmd = sub.add_parser("phin", help="filtered (phi,N)-module analysis")
    phin_cmd.add_argument("--case", choices=phin.CASES, required=True)
    phin_cmd.add_argument("--n", type=int, required=True)
    phin_cmd.add_argument("--L", help="Fontaine-Mazur parameter (steinberg)")
    phin_cmd.add_argument("--weight", type=int, help="motivic weight (split case)")
    phin_cmd.add_argument("--all-submodules", action="store_true")
    phin_cmd.add_argument("--benois", action="store_true")
    phin_cmd.add_argument("--gr1", action="store_true")
    phin_cmd.set_defaults(func=_cmd_phin)

    hecke = sub.add_parser("hecke", help="Iwahori-Hecke diagonal eigenvalues")
    hecke.add_argument("--g", type=int, required=True)
    hecke.add_argument("--t", required=True, help='JSON {"a": [...], "a0": ...}')
    hecke.add_argument("--weyl", help='JSON {"nu": [...], "eps": [...]}')
    hecke.add_argument("--all", action="store_true")
    hecke.set_defaults(func=_cmd_hecke)

    recover = sub.add_parser("recover-chi", help="Satake character recovery")
    recover.add_argument("--g", type=int, required=True)
    recover.add_argument("--eigs", required=True, help="JSON list of monomials")
    recover.add_argument("--weights", required=True, help='JSON {"mu": [...], "mu0": ...}')
    recover.add_argument("--weyl")
    recover.set_defaults(func=_cmd_recover_chi)

    slope = sub.add_parser("slope", help="noncritical slope checks")
    slope.add_argument("--family", choices=("hilbert", "gsp"), required=True)
    slope.add_argument("--input", required=True, help="JSON file path or - for stdin")
    slope.set_defaults(func=_cmd_slope)

    obstruction = sub.add_parser(
        "obstruction", help="root-of-unity regularity obstruction orders"
    )
    obstruction.add_argument("--exponents", required=True, help="comma list")
    obstruction.add_argument("--check-N", type=int, dest="check_N")
    obstruction.set_defaults(func=_cmd_obstruction)

    linv_cmd = sub.add_parser("linv", help="evaluate the L-invariant formulas")
    linv_cmd.add_argument("--family", choices=linv.FAMILIES, required=True)
    linv_cmd.add_argument("--input", required=True, help="JSON file path or - for stdin")
    linv_cmd.add_argument("--compare-theorem", choices=linv.THEOREMS)
    linv_cmd.set_defaults(func=_cmd_linv)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return 2 if err.code not in (0, None) else 0
    try:
        payload, csv_header, csv_rows = args.func(args)
        print(_emit(payload, args.format, csv_header, csv_rows))
        return 0
    except linv.SingularDirectionError as err:
        print(json.dumps({"error": {"code": "singular_direction", "place": err.place,
                                    "message": str(err)}}, sort_keys=True))
        return 3
    except CliError as err:
        print(json.dumps({"error": {"code": "input", "message": str(err)}}, sort_keys=True))
        return err.exit_code
    except (ValueError, KeyError, TypeError, DimensionMismatchError, ZeroDivisionError) as err:
        print(json.dumps({"error": {"code": "domain", "message": str(err)}}, sort_keys=True))
        return 2
    except InternalConsistencyError as err:
        print(json.dumps({"error": {"code": "internal", "message": str(err)}}, sort_keys=True))
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
