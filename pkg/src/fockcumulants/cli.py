"""``fock``: command-line front end.  JSON on stdout, exit codes 0/1/2/64."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .algebra import Poly, as_fraction, power_sums
from .cumulants import cumulant, with_copies
from .digraph_poly import WeightedDigraph, cover_poly, cycle_cover_poly, cycle_indicator, word_digraph
from .errors import DomainError
from .fock_sim import DEFAULT_DIM, DEFAULT_NMAX, Operator, make_model
from .partitions import SetPartition
from .theorems import (verify_all, verify_good, verify_product_formula, verify_toeplitz,
                       verify_vanishing)
from .words import parse_word

EXIT_OK, EXIT_DOMAIN, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2, 64
VANISHING_IN_ALL = 4
VERIFY_TARGETS = ("all", "toeplitz", "vanishing", "product-formula", "good")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _scalar_json(value) -> dict:
    if isinstance(value, Poly):
        return {"poly": value.format(), "polynomial": value.to_json(),
                "value": value.format()}
    if isinstance(value, complex):
        return {"value": [value.real, value.imag]}
    value = as_fraction(value)
    return {"poly": str(value), "value": str(value)}


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise DomainError(f"cannot read config {path}: {exc}") from exc
    unknown = set(data) - {"truncation", "dim_h", "alphabet"}
    if unknown:
        raise DomainError(f"unknown config keys: {sorted(unknown)}")
    return data


def _alpha(text: str | None):
    if not text:
        return None
    try:
        return [Fraction(x.strip()) for x in text.split(",")]
    except ValueError as exc:
        raise DomainError(f"bad alpha list {text!r}") from exc


def _model(args, cfg: dict):
    q = None
    if args.q is not None and not args.q_symbolic:
        q = as_fraction(args.q)
    alpha = _alpha(args.alpha)
    if alpha is None and args.model == "vk" and "alphabet" in cfg and args.N is None:
        alpha = [Fraction(1, cfg["alphabet"])] * cfg["alphabet"]
    return make_model(args.model, q=q, N=args.N, alpha=alpha,
                      dim=cfg.get("dim_h", DEFAULT_DIM), n_max=cfg.get("truncation", DEFAULT_NMAX))


def _graph(args) -> WeightedDigraph:
    if args.graph:
        return WeightedDigraph.from_json(Path(args.graph).read_text())
    if args.edges is None:
        raise DomainError("give --edges or --graph")
    text = args.edges
    if args.weights:
        text += "\nw: " + args.weights.replace(",", " ")
    return WeightedDigraph.from_text(text)


# ----------------------------------------------------------------------
# subcommands


def cmd_expect(args, cfg):
    model = _model(args, cfg)
    w = parse_word(args.word, order=args.order)
    return _scalar_json(model.vacuum_expectation(w)), EXIT_OK


def cmd_cumulant(args, cfg):
    model = _model(args, cfg)
    variables = [Operator.parse(v) for v in args.vars.split(",")]
    n = len(variables)
    pi = SetPartition.parse(args.partition) if args.partition else SetPartition.one(n)
    if pi.n != n:
        raise DomainError(f"partition of {pi.n} elements for {n} variables")
    value = cumulant(variables, pi, with_copies(model, variables, n))
    out = _scalar_json(value)
    out["partition"] = pi.to_json()
    return out, EXIT_OK


def cmd_coverpoly(args, cfg):
    g = _graph(args)
    if args.variant == "cycle":
        p = cycle_cover_poly(g, method=args.method)
    else:
        p = cover_poly(g, variant=args.variant, method=args.method)
    return {"poly": p.format(descending=True), "polynomial": p.to_json()}, EXIT_OK


def cmd_indicator(args, cfg):
    g = _graph(args)
    p = cycle_indicator(g, method=args.method, paths=args.paths)
    out = {"poly": p.format(descending=True), "polynomial": p.to_json()}
    alpha = _alpha(args.alpha)
    if alpha is not None:
        if args.paths:
            raise DomainError("evaluation at Thoma parameters is for cycle-only indicators")
        xs = power_sums(alpha, _alpha(args.beta) or (), upto=max(g.total_weight, 1))
        value = p.eval({f"x{k}": xs[k] for k in range(1, len(p.vars) + 1)})
        out["value"] = str(value)
    return out, EXIT_OK


def cmd_digraph(args, cfg):
    g = word_digraph(parse_word(args.word, order=args.order), weighted=args.weighted)
    return dict(g.to_json(), text=g.to_text()), EXIT_OK


def cmd_verify(args, cfg):
    target = args.target
    reports = []
    if target in ("all",):
        reports += verify_all(args.max_len, seed=args.seed)
    if target in ("all", "toeplitz"):
        reports += verify_toeplitz(4)
    if target in ("all", "product-formula"):
        reports += verify_product_formula(4, seed=args.seed)
    if target in ("all", "good"):
        reports += verify_good(3)
    if target == "vanishing":
        reports += verify_vanishing(args.max_len)
    elif target == "all":
        # the exhaustive length-6 sweep lives behind `verify vanishing`
        reports += verify_vanishing(min(args.max_len, VANISHING_IN_ALL))
    failures = [r for r in reports if r.equal is False]
    summary = {"target": target, "checked": len(reports), "failures": len(failures),
               "counterexamples": [r.to_json() for r in failures[:20]]}
    if args.report:
        Path(args.report).write_text(json.dumps([r.to_json() for r in reports], sort_keys=True,
                                                indent=1) + "\n")
        summary["report"] = args.report
    return summary, EXIT_COUNTEREXAMPLE if failures else EXIT_OK


# ----------------------------------------------------------------------
# parser


def _common(suppress: bool) -> argparse.ArgumentParser:
    # subcommand copies must not overwrite values given before the subcommand
    def d(value):
        return argparse.SUPPRESS if suppress else value

    common = _Parser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=d(False),
                        help="human-readable output")
    common.add_argument("--seed", type=int, default=d(0))
    common.add_argument("--threads", type=int, default=d(1),
                        help="accepted for compatibility; work runs on one thread")
    common.add_argument("--config", default=d(None),
                        help="TOML file with truncation, dim_h, alphabet")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common(suppress=True)

    model = _Parser(add_help=False)
    model.add_argument("--model", choices=("q", "N", "vk", "free"), default="q")
    model.add_argument("--q-symbolic", action="store_true", help="keep q as an indeterminate")
    model.add_argument("--q", help="numeric q, e.g. 1/2")
    model.add_argument("--N", type=int, help="numeric N (t = 1/N); VK: uniform on N letters")
    model.add_argument("--alpha", help="Thoma parameters, e.g. 1/2,1/2")
    model.add_argument("--order", choices=("operator", "temporal"), default="operator")

    graph = _Parser(add_help=False)
    graph.add_argument("--edges", help='edge list "1->1 1->2"')
    graph.add_argument("--weights", help="vertex weights, e.g. 1,2")
    graph.add_argument("--graph", help="JSON graph file")
    graph.add_argument("--method", choices=("cut_fuse", "bruteforce"), default="cut_fuse")

    parser = _Parser(prog="fock", description=__doc__, parents=[_common(suppress=False)])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("expect", parents=[common, model], help="vacuum expectation of a word")
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_expect)

    p = sub.add_parser("cumulant", parents=[common, model], help="partitioned cumulant")
    p.add_argument("--vars", required=True, help='comma-separated operators, e.g. "a1+c1,a1+c1"')
    p.add_argument("--partition", help='compact partition, e.g. "13|24"')
    p.set_defaults(func=cmd_cumulant)

    p = sub.add_parser("coverpoly", parents=[common, graph], help="cover polynomials")
    p.add_argument("--variant", choices=("cycle", "geometric", "factorial"), default="cycle")
    p.set_defaults(func=cmd_coverpoly)

    p = sub.add_parser("indicator", parents=[common, graph], help="weighted cycle indicator")
    p.add_argument("--paths", action="store_true", help="include path variables")
    p.add_argument("--alpha", help="evaluate at power sums of these Thoma parameters")
    p.add_argument("--beta")
    p.set_defaults(func=cmd_indicator)

    p = sub.add_parser("digraph", parents=[common], help="digraph of a Dyck word")
    p.add_argument("--word", required=True)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--order", choices=("operator", "temporal"), default="operator")
    p.set_defaults(func=cmd_digraph)

    p = sub.add_parser("verify", parents=[common], help="run identity checks")
    p.add_argument("target", choices=VERIFY_TARGETS)
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--report", help="write every checked instance as JSON")
    p.set_defaults(func=cmd_verify)
    return parser


def _pretty(out: dict) -> str:
    lines = []
    for key in sorted(out):
        if key in ("polynomial",):
            continue
        lines.append(f"{key}: {out[key]}")
    return "\n".join(lines)


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        if getattr(args, "q_symbolic", False) and args.q is not None:
            raise UsageError("--q and --q-symbolic are exclusive")
    except UsageError as exc:
        print(f"fock: error: {exc}", file=stderr)
        return EXIT_USAGE
    try:
        cfg = _load_config(args.config)
        out, code = args.func(args, cfg)
    except DomainError as exc:
        print(json.dumps({"error": str(exc)}), file=stdout)
        return EXIT_DOMAIN
    text = _pretty(out) if args.pretty else json.dumps(out, sort_keys=True, separators=(",", ":"))
    print(text, file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
