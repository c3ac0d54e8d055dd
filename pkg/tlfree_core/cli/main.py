"""
Command-line driver for tlfree.

Every subcommand writes JSON to stdout (or --out); logs go to stderr.
Exit codes: 0 success, 1 domain error, 2 resource limit, 3 solver rank,
64 usage.
"""
import argparse
import json
import sys
from pathlib import Path
from typing import Any, List, Optional

from rich.console import Console

from ..algebra.scalars import scalar_to_json, specialize, to_fraction
from ..algebra.tl_algebra import TLElement, compose, jones_wenzl
from ..calculus.free_calc import FORMAL, conjugate_variable, derive, fisher, fisher_profile
from ..combinatorics.nc_core import NCPartition, enumerate_nc, kreweras
from ..config import get_config
from ..exceptions import ResourceLimitError, SerializationError, SolverRankError, TLFreeError
from ..gibbs.potential import Potential, quadratic_potential, quartic_potential
from ..gibbs.series import format_order
from ..gibbs.solver import solve_sd
from ..gibbs.tangles import tangle_oracle
from ..graph.graph_model import BipartiteGraph, LoopWord, MCConfig, lf_parameter, loop_vs_diagram, mc_estimate, wick_expectation
from ..planar.elements import PAElement
from ..planar.pa_trace import build_T, cup_moments, tau_k
from ..probability.law import MomentSeq, cumulants_to_moments, law_from_json, moments_to_cumulants, named_law
from ..utils.health_check import SystemHealthCheck
from ..utils.logging_utils import get_logger, setup_logging
from .verify import SUITES, run_suite

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_RESOURCE = 2
EXIT_RANK = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_json(source: str) -> Any:
    """Inline JSON text or a path to a JSON file."""
    try:
        if source.lstrip().startswith(("{", "[")):
            return json.loads(source)
        with open(source) as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise SerializationError(f"Cannot read JSON from {source!r}: {e}") from e


def _emit(payload: Any, args: argparse.Namespace) -> None:
    text = json.dumps(payload, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
        logger.info("wrote %s", args.out)
    else:
        print(text)


def _law(args: argparse.Namespace, depth: int):
    if args.law_file:
        return law_from_json(_read_json(args.law_file))
    cumulants = [to_fraction(c) for c in args.cumulants.split(",")] if args.cumulants else None
    return named_law(args.law, depth, cumulants)


def _delta(args: argparse.Namespace):
    value = args.delta if args.delta is not None else get_config().get("defaults.delta", "2")
    return FORMAL if str(value) == FORMAL else to_fraction(str(value))


def _scalar(value, delta) -> Any:
    out = {"formal": scalar_to_json(value)}
    if delta not in (None, FORMAL):
        out["value"] = str(specialize(value, delta))
    return out


# nc


def cmd_nc_enumerate(args) -> int:
    _emit([pi.to_dict() for pi in enumerate_nc(args.n)], args)
    return EXIT_OK


def cmd_nc_kreweras(args) -> int:
    pi = NCPartition.from_dict(_read_json(args.partition))
    _emit(kreweras(pi).to_dict(), args)
    return EXIT_OK


# tl


def cmd_tl_jw(args) -> int:
    delta = None if args.delta in (None, FORMAL) else to_fraction(args.delta)
    _emit(jones_wenzl(args.n, delta).to_json(), args)
    return EXIT_OK


def cmd_tl_compose(args) -> int:
    a = TLElement.from_json(_read_json(args.a))
    b = TLElement.from_json(_read_json(args.b))
    _emit(compose(a, b).to_json(), args)
    return EXIT_OK


# law


def cmd_law_moments(args) -> int:
    _emit(cumulants_to_moments(_law(args, args.depth)).to_json(), args)
    return EXIT_OK


def cmd_law_cumulants(args) -> int:
    moments = MomentSeq.of([to_fraction(m) for m in args.moments.split(",")])
    _emit(moments_to_cumulants(moments).to_json(), args)
    return EXIT_OK


# trace


def cmd_trace_eval(args) -> int:
    x = PAElement.from_json(_read_json(args.element))
    if x.k != args.k:
        raise SerializationError(f"element has k={x.k}, --k says {args.k}")
    depth = args.depth or max(1, x.degree())
    T = build_T(_law(args, depth), depth)
    _emit({"tau": _scalar(tau_k(x, T), _delta(args)), "k": x.k, "depth": depth}, args)
    return EXIT_OK


def cmd_trace_cup(args) -> int:
    T = build_T(_law(args, args.n), args.n)
    delta = _delta(args)
    _emit({str(n): _scalar(v, delta) for n, v in enumerate(cup_moments(T, args.n), start=1)}, args)
    return EXIT_OK


# calc


def cmd_calc_diff(args) -> int:
    x = PAElement.from_json(_read_json(args.element))
    _emit(derive(x, compressed=args.prime).to_json(), args)
    return EXIT_OK


def cmd_calc_conjugate(args) -> int:
    depth = 2 * args.cutoff + 1
    T = build_T(_law(args, depth), depth)
    cv = conjugate_variable(T, args.cutoff, _delta(args))
    payload = cv.to_json()
    payload["exact"] = cv.exact
    _emit(payload, args)
    return EXIT_OK


def cmd_calc_fisher(args) -> int:
    depth = 2 * args.cutoff + 1
    T = build_T(_law(args, depth), depth)
    delta = _delta(args)
    if args.profile:
        if delta == FORMAL:
            delta = to_fraction(str(get_config().get("defaults.delta", "2")))
        _emit({"delta": str(delta), "profile": [str(v) for v in fisher_profile(T, args.cutoff, delta)]}, args)
        return EXIT_OK
    value = fisher(T, args.cutoff, delta)
    _emit({"fisher": "inf" if value == float("inf") else (str(value) if delta != FORMAL else scalar_to_json(value))}, args)
    return EXIT_OK


# gibbs


def _potential(args) -> Potential:
    if args.potential in ("quartic", "quadratic"):
        return quartic_potential() if args.potential == "quartic" else quadratic_potential()
    return Potential.from_json(_read_json(args.potential))


def cmd_gibbs_solve(args) -> int:
    V = _potential(args)
    G = solve_sd(V, args.depth, args.t_degree)
    report = G.to_json()
    if args.report:
        Path(args.report).write_text(json.dumps(report, indent=2) + "\n")
        logger.info("moment report written to %s", args.report)
    _emit(report, args)
    return EXIT_OK


def cmd_gibbs_oracle(args) -> int:
    V = _potential(args)
    order = tuple(int(a) for a in args.order.split(","))
    element = tangle_oracle(V, args.m, order)
    _emit({"order": format_order(V.names, order), "T": element.to_json()}, args)
    return EXIT_OK


# graph


def cmd_graph_wick(args) -> int:
    G = BipartiteGraph.load(Path(args.graph))
    w = LoopWord.load(Path(args.word))
    raw, normalized = loop_vs_diagram(w, G)
    _emit({"wick": str(raw) if G.exact else float(raw), "normalized": normalized}, args)
    return EXIT_OK


def cmd_graph_mc(args) -> int:
    G = BipartiteGraph.load(Path(args.graph))
    w = LoopWord.load(Path(args.word))
    defaults = get_config()
    cfg = MCConfig(
        target_dim=args.dim or defaults.get("monte_carlo.dim", 200),
        samples=args.samples or defaults.get("monte_carlo.samples", 500),
        seed=args.seed if args.seed is not None else defaults.get("monte_carlo.seed", 7),
        threads=args.threads,
        progress=args.progress,
    )
    mean, stderr = mc_estimate(w, G, cfg)
    exact = wick_expectation(w, G)
    _emit({"mean": mean, "stderr": stderr, "wick": float(exact), "dims": cfg.block_dims(G), "seed": cfg.seed}, args)
    return EXIT_OK


# verify / report


def cmd_verify(args) -> int:
    results = run_suite(args.suite, Console(stderr=True))
    _emit(results, args)
    return EXIT_OK if all(r["passed"] for r in results.values()) else EXIT_DOMAIN


def cmd_report_health(args) -> int:
    _emit(SystemHealthCheck.print_health_report(Console(stderr=True)), args)
    return EXIT_OK


def cmd_report_lf(args) -> int:
    _emit(lf_parameter(args.delta, args.index, args.k), args)
    return EXIT_OK


def _law_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--law", default=None, choices=["semicircle", "free-poisson", "custom"])
    p.add_argument("--cumulants", help="comma-separated cumulants for --law custom")
    p.add_argument("--law-file", help="law JSON with cumulants or moments")


def _delta_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--delta", help="rational loop parameter, or 'formal'")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tlfree", description="Diagrammatic free probability on Temperley-Lieb planar algebras")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--out", help="write JSON here instead of stdout")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--progress", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    nc = sub.add_parser("nc").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = nc.add_parser("enumerate")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_nc_enumerate)
    p = nc.add_parser("kreweras")
    p.add_argument("partition", help='JSON such as {"n": 3, "blocks": [[1, 3], [2]]} or a file')
    p.set_defaults(func=cmd_nc_kreweras)

    tl = sub.add_parser("tl").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = tl.add_parser("jw")
    p.add_argument("n", type=int)
    _delta_flag(p)
    p.set_defaults(func=cmd_tl_jw)
    p = tl.add_parser("compose")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_tl_compose)

    law = sub.add_parser("law").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = law.add_parser("moments")
    _law_flags(p)
    p.add_argument("--depth", type=int, default=8)
    p.set_defaults(func=cmd_law_moments)
    p = law.add_parser("cumulants")
    p.add_argument("--moments", required=True, help="comma-separated moments m_1,...")
    p.set_defaults(func=cmd_law_cumulants)

    trace = sub.add_parser("trace").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = trace.add_parser("eval")
    _law_flags(p)
    _delta_flag(p)
    p.add_argument("--element", required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--depth", type=int)
    p.set_defaults(func=cmd_trace_eval)
    p = trace.add_parser("cup")
    _law_flags(p)
    _delta_flag(p)
    p.add_argument("--n", type=int, default=6)
    p.set_defaults(func=cmd_trace_cup)

    calc = sub.add_parser("calc").add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name, func in (("conjugate", cmd_calc_conjugate), ("fisher", cmd_calc_fisher)):
        p = calc.add_parser(name)
        _law_flags(p)
        _delta_flag(p)
        p.add_argument("--cutoff", type=int, default=None)
        if name == "fisher":
            p.add_argument("--profile", action="store_true", help="values for every cutoff up to --cutoff")
        p.set_defaults(func=func)
    p = calc.add_parser("diff")
    p.add_argument("--element", required=True, help="Gr_1 element JSON")
    p.add_argument("--prime", action="store_true", help="compress with JW_2 on the inner boundary")
    p.set_defaults(func=cmd_calc_diff)

    gibbs = sub.add_parser("gibbs").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = gibbs.add_parser("solve")
    p.add_argument("--potential", required=True, help="potential JSON, or 'quartic' / 'quadratic'")
    p.add_argument("--depth", type=int)
    p.add_argument("--t-degree", type=int)
    p.add_argument("--report", help="also write the moment report here")
    p.set_defaults(func=cmd_gibbs_solve)
    p = gibbs.add_parser("oracle")
    p.add_argument("--potential", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--order", required=True, help="comma-separated coupling orders")
    p.set_defaults(func=cmd_gibbs_oracle)

    graph = sub.add_parser("graph").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = graph.add_parser("wick")
    p.add_argument("--graph", required=True)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_graph_wick)
    p = graph.add_parser("mc")
    p.add_argument("--graph", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--dim", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_graph_mc)

    p = sub.add_parser("verify")
    p.add_argument("--suite", default="core", choices=sorted(SUITES))
    p.set_defaults(func=cmd_verify)

    report = sub.add_parser("report").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = report.add_parser("health")
    p.set_defaults(func=cmd_report_health)
    p = report.add_parser("lf")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--index", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_report_lf)
    return parser


def _apply_defaults(args: argparse.Namespace) -> None:
    config = get_config()
    if getattr(args, "law", "unset") is None:
        args.law = config.get("defaults.law", "semicircle")
    if getattr(args, "cutoff", "unset") is None:
        args.cutoff = config.get("defaults.cutoff", 3)


def main(argv: Optional[List[str]] = None) -> int:
    """Parse argv, dispatch, and map exceptions to exit codes."""
    args = build_parser().parse_args(argv)
    config = get_config()
    log_file = config.get("logging.file")
    setup_logging(
        args.log_level or config.get("logging.level", "INFO"),
        Path(log_file) if log_file else None,
        stream=sys.stderr,
    )
    if args.threads < 1:
        logger.error("--threads must be positive")
        return EXIT_USAGE
    _apply_defaults(args)
    try:
        return args.func(args)
    except SolverRankError as e:
        logger.error("solver rank error: %s", e)
        return EXIT_RANK
    except ResourceLimitError as e:
        logger.error("resource limit: %s", e)
        return EXIT_RESOURCE
    except TLFreeError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_DOMAIN
