"""Command line interface.

Every command reads a seed description (a JSON object, passed inline,
as a file path, or as ``-`` for stdin) and prints either JSON or plain
text.  Exit codes: 0 on success, 1 for domain errors (reported as a
JSON object on stderr), 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Dict, List, Sequence, Tuple

from .classgroup import class_group, is_ufd
from .errors import ClusterAlgError, IsolatedIndexError, MalformedInputError
from .factors import count_irreducible_factors, explicit_factors_over_q, share_common_factor
from .fields import CoefficientSpec
from .jsonio import error_to_json, field_from_obj, seed_from_json, seed_to_json
from .laurent import LaurentPoly
from .membership import (
    is_laurent_in_seed,
    is_member_star,
    local_factorization,
    valuation_pairing_fast,
    valuation_pairing_iterative,
)
from .parser import name_table, parse_element
from .seeds import Seed, exchange_polynomial, explore, mutate_seed_path, verify_laurent_phenomenon

__all__ = ["main"]


def _load_seed(arg: str) -> Seed:
    text = arg
    if arg == "-":
        text = sys.stdin.read()
    elif not arg.lstrip().startswith("{"):
        try:
            with open(arg, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise MalformedInputError(f"cannot read seed file {arg!r}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"seed is not valid JSON: {exc}") from exc
    return seed_from_json(obj)


def _parse_path(arg: str) -> List[int]:
    parts = [p for p in arg.replace(",", " ").split() if p]
    path = []
    for p in parts:
        try:
            path.append(int(p))
        except ValueError:
            raise MalformedInputError(f"path entries must be integers, got {p!r}")
    return path


def _parse_expr(seed: Seed, text: str) -> LaurentPoly:
    names = name_table(seed.n, seed.m, seed.frozen_names)
    return parse_element(text, seed.ambient, names)


def _matrix_lines(rows: Sequence[Sequence[int]]) -> List[str]:
    width = max((len(str(v)) for row in rows for v in row), default=1)
    return ["[" + " ".join(str(v).rjust(width) for v in row) + "]" for row in rows]


def _cmd_mutate(args) -> Tuple[Dict[str, Any], str]:
    seed = _load_seed(args.seed)
    if args.path:
        seed = mutate_seed_path(seed, _parse_path(args.path))
    payload = seed_to_json(seed)
    names = seed.variable_names()
    lines = [f"history: {list(seed.history)}", "cluster:"]
    for i, u in enumerate(seed.cluster, start=1):
        lines.append(f"  x{i} = {u.text(names)}")
    lines.append("matrix:")
    lines.extend("  " + row for row in _matrix_lines(seed.matrix.rows))
    return payload, "\n".join(lines)


def _cmd_exchange_polys(args) -> Tuple[Dict[str, Any], str]:
    seed = _load_seed(args.seed)
    names = seed.variable_names()
    entries = []
    lines = []
    for i in range(1, seed.n + 1):
        f = exchange_polynomial(seed.matrix, i)
        entries.append({"direction": i, "text": f.text(names)})
        lines.append(f"f{i} = {f.text(names)}")
    return {"polys": entries}, "\n".join(lines)


def _cmd_factors(args) -> Tuple[Dict[str, Any], str]:
    seed = _load_seed(args.seed)
    field = CoefficientSpec.parse(args.field)
    names = seed.variable_names()
    directions = [args.direction] if args.direction else list(range(1, seed.n + 1))
    counts = []
    lines = [f"over {field}:"]
    for i in directions:
        try:
            l = count_irreducible_factors(seed, i, field)
            counts.append({"i": i, "l": l})
            lines.append(f"  direction {i}: {l} irreducible factor(s)")
        except IsolatedIndexError:
            counts.append({"i": i, "isolated": True})
            lines.append(f"  direction {i}: isolated (constant exchange polynomial)")
    payload: Dict[str, Any] = {"field": str(field), "counts": counts}
    sharing = []
    for a in range(1, seed.n + 1):
        for b in range(a + 1, seed.n + 1):
            if share_common_factor(seed, a, b):
                sharing.append([a, b])
    payload["sharing"] = sharing
    if sharing:
        lines.append("directions sharing a factor: " + ", ".join(f"({a},{b})" for a, b in sharing))
    if args.explicit:
        explicit = []
        for i in directions:
            f = exchange_polynomial(seed.matrix, i)
            parts = [g.text(names) for g in explicit_factors_over_q(f)]
            explicit.append({"i": i, "factors": parts})
            lines.append(f"  rational factors of f{i}: " + " | ".join(parts))
        payload["explicitFactors"] = explicit
    return payload, "\n".join(lines)


def _cmd_class_group(args) -> Tuple[Dict[str, Any], str]:
    seed = _load_seed(args.seed)
    field = CoefficientSpec.parse(args.field)
    pres = class_group(seed, field, assert_starfish=args.assert_starfish)
    payload = pres.to_json()
    lines = [
        f"primes over cluster variables: t = {pres.t}",
        f"class group: free of rank {pres.free_rank}"
        + (f" (invariant factors {list(pres.invariant_factors)})" if pres.invariant_factors else ""),
        "per direction: " + ", ".join(f"l{e['i']} = {e['l']}" for e in payload["perVariable"]),
    ]
    return payload, "\n".join(lines)


def _cmd_is_ufd(args) -> Tuple[Dict[str, Any], str]:
    seed = _load_seed(args.seed)
    field = CoefficientSpec.parse(args.field)
    verdict = is_ufd(seed, field, assert_starfish=args.assert_starfish)
    payload = verdict.to_json()
    if verdict.ufd:
        text = f"factorial over {field}: yes"
    else:
        bad = ", ".join(f"l{i} = {l}" for i, l in verdict.nontrivial)
        text = f"factorial over {field}: no ({bad})"
    return payload, text


def _cmd_explore(args) -> Tuple[Dict[str, Any], str]:
    seed = _load_seed(args.seed)
    report = explore(seed, max_seeds=args.max_seeds, max_depth=args.max_depth)
    names = seed.variable_names()
    payload = {
        "seedsFound": report.seeds_found,
        "clusterVariables": [u.text(names) for u in report.cluster_variables],
        "finite": report.finite,
        "limitHit": report.limit_hit,
        "depthReached": report.depth_reached,
    }
    lines = [
        f"distinct seeds: {report.seeds_found}",
        f"distinct cluster variables: {len(report.cluster_variables)}",
        "finite type: " + ("yes" if report.finite else f"not shown ({report.limit_hit})"),
    ]
    if args.list_variables:
        lines.extend("  " + u.text(names) for u in report.cluster_variables)
    return payload, "\n".join(lines)


def _cmd_laurent_check(args) -> Tuple[Dict[str, Any], str]:
    seed = _load_seed(args.seed)
    report = verify_laurent_phenomenon(seed, args.depth)
    names = seed.variable_names()
    payload = {
        "depth": report.depth,
        "seedsVisited": report.seeds_visited,
        "variables": [u.text(names) for u in report.variables],
        "allInteger": report.all_integer,
        "maxCoefficient": str(report.max_coefficient),
    }
    text = (
        f"visited {report.seeds_visited} seeds to depth {report.depth}; "
        f"{len(report.variables)} variables, "
        + ("all integer Laurent" if report.all_integer else "NON-INTEGER coefficients found")
        + f", largest coefficient {report.max_coefficient}"
    )
    return payload, text


def _cmd_member(args) -> Tuple[Dict[str, Any], str]:
    seed = _load_seed(args.seed)
    u = _parse_expr(seed, args.expr)
    if args.path is not None:
        ok = is_laurent_in_seed(u, seed, _parse_path(args.path))
        return {"laurent_in_seed": ok}, f"laurent in target seed: {'yes' if ok else 'no'}"
    cert = is_member_star(u, seed)
    payload = cert.to_json()
    verdict = "member" if cert.member else "not a member"
    lines = [f"{verdict} of the upper algebra ({cert.starfish_basis})"]
    for d in cert.directions:
        if d.ok:
            lines.append(f"  direction {d.direction}: ok")
        else:
            lines.append(
                f"  direction {d.direction}: fails at power {d.failing_power}"
            )
    return payload, "\n".join(lines)


def _cmd_pairing(args) -> Tuple[Dict[str, Any], str]:
    seed = _load_seed(args.seed)
    u = _parse_expr(seed, args.expr)
    if args.method == "iterative":
        value = valuation_pairing_iterative(u, seed, args.direction,
                                            assert_starfish=args.assert_starfish)
    else:
        value = valuation_pairing_fast(u, seed, args.direction,
                                       assert_starfish=args.assert_starfish)
    payload = {"direction": args.direction, "method": args.method, "value": value}
    return payload, f"pairing of x{args.direction} with the element: {value}"


def _cmd_local_factor(args) -> Tuple[Dict[str, Any], str]:
    seed = _load_seed(args.seed)
    u = _parse_expr(seed, args.expr)
    fac = local_factorization(u, seed, assert_starfish=args.assert_starfish)
    payload = fac.to_json()
    monomial = "*".join(
        f"x{i + 1}^{s}" for i, s in enumerate(fac.exponents) if s != 0
    ) or "1"
    return payload, f"element = {monomial} * ({fac.cofactor.text(seed.variable_names())})"


def _cmd_serve(args) -> Tuple[Dict[str, Any], str]:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return {}, ""


def _add_seed_arg(p: argparse.ArgumentParser):
    p.add_argument("--seed", required=True,
                   help="seed JSON: inline object, file path, or - for stdin")


def _add_field_arg(p: argparse.ArgumentParser):
    p.add_argument("--field", default="Z", help="coefficient ring: Z, Q or Q(zeta,N)")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="clusteralg",
        description="Exact computations with cluster algebra seeds.",
    )
    top.add_argument("--format", choices=("json", "text"), default="text",
                     help="output format (default text)")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mutate", help="apply a mutation path and print the seed")
    _add_seed_arg(p)
    p.add_argument("--path", default="", help="comma separated directions, e.g. 1,2,1")
    p.set_defaults(func=_cmd_mutate)

    p = sub.add_parser("exchange-polys", help="print the exchange polynomials")
    _add_seed_arg(p)
    p.set_defaults(func=_cmd_exchange_polys)

    p = sub.add_parser("factors", help="irreducible factor counts of exchange polynomials")
    _add_seed_arg(p)
    _add_field_arg(p)
    p.add_argument("--direction", type=int, default=0, help="restrict to one direction")
    p.add_argument("--explicit", action="store_true",
                   help="also list the rational irreducible factors")
    p.set_defaults(func=_cmd_factors)

    p = sub.add_parser("class-group", help="divisor class group of the upper algebra")
    _add_seed_arg(p)
    _add_field_arg(p)
    p.add_argument("--assert-starfish", action="store_true",
                   help="proceed without full rank, asserting the intersection property")
    p.set_defaults(func=_cmd_class_group)

    p = sub.add_parser("is-ufd", help="whether the upper algebra is factorial")
    _add_seed_arg(p)
    _add_field_arg(p)
    p.add_argument("--assert-starfish", action="store_true",
                   help="proceed without full rank, asserting the intersection property")
    p.set_defaults(func=_cmd_is_ufd)

    p = sub.add_parser("explore", help="breadth first search of the mutation class")
    _add_seed_arg(p)
    p.add_argument("--max-seeds", type=int, default=20000)
    p.add_argument("--max-depth", type=int, default=32)
    p.add_argument("--list-variables", action="store_true")
    p.set_defaults(func=_cmd_explore)

    p = sub.add_parser("laurent-check", help="expand all clusters to a depth, checking Laurentness")
    _add_seed_arg(p)
    p.add_argument("--depth", type=int, required=True)
    p.set_defaults(func=_cmd_laurent_check)

    p = sub.add_parser("member", help="membership of an element in the upper algebra")
    _add_seed_arg(p)
    p.add_argument("--expr", required=True, help="element expression, e.g. (1+x2)/x1")
    p.add_argument("--path", default=None,
                   help="instead check Laurentness in the seed at this mutation path")
    p.set_defaults(func=_cmd_member)

    p = sub.add_parser("pairing", help="valuation pairing of a cluster variable with an element")
    _add_seed_arg(p)
    p.add_argument("--expr", required=True)
    p.add_argument("--direction", type=int, required=True)
    p.add_argument("--method", choices=("fast", "iterative"), default="fast")
    p.add_argument("--assert-starfish", action="store_true")
    p.set_defaults(func=_cmd_pairing)

    p = sub.add_parser("local-factor", help="split off the cluster monomial part of an element")
    _add_seed_arg(p)
    p.add_argument("--expr", required=True)
    p.add_argument("--assert-starfish", action="store_true")
    p.set_defaults(func=_cmd_local_factor)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8642)
    p.set_defaults(func=_cmd_serve)

    return top


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload, text = args.func(args)
    except ClusterAlgError as exc:
        print(json.dumps(error_to_json(exc)), file=sys.stderr)
        return 1
    if args.command == "serve":
        return 0
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
