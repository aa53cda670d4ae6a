"""Command line interface.

Exit codes: 0 ok, 1 usage error, 2 invalid model, 3 precondition violated,
4 duality counter-example found.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Iterable, Sequence

from .clustering import PspResult, clusters, extended_clusters, mmi, psp
from .combinatorics import Partition
from .duality import DualityReport, lift, sweep_duality, verify_duality
from .errors import InfoClusterError, ModelError, PreconditionViolated, UnknownVariable
from .featsel import FeatureProblem, Region, pp, relax_optimize, size_constrained
from .modelfile import load_model
from .sources import SourceModel, validate
from .submodular import Scalar, as_scalar, fmt_scalar

EXIT_OK, EXIT_USAGE, EXIT_MODEL, EXIT_PRECONDITION, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 by default
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- formatting ---------------------------------------------------------------

class Out:
    """Formats scalars and sets for one model, in human or machine style."""

    def __init__(self, model: SourceModel, machine: bool, decimal: bool):
        self.model = model
        self.machine = machine
        self.decimal = decimal

    def num(self, x: Scalar) -> str:
        if self.decimal or not isinstance(x, Fraction):
            return repr(float(x)) if self.machine else f"{float(x):.10g}"
        return fmt_scalar(x)

    def names(self, subset: Iterable[int], model: SourceModel | None = None) -> str:
        names = (model or self.model).variables
        return "{" + ",".join(names[i] for i in sorted(subset)) + "}"

    def partition(self, p: Partition, model: SourceModel | None = None) -> str:
        return "{" + ",".join(self.names(b, model) for b in p.blocks) + "}"


def _set_json(subset: Iterable[int]) -> list[int]:
    return sorted(subset)


def _partition_json(p: Partition) -> list[list[int]]:
    return [sorted(b) for b in p.blocks]


def _parse_ids(model: SourceModel, text: str | None) -> frozenset[int]:
    if text is None or not text.strip():
        raise UsageError("--set must name at least one variable")
    out = set()
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            raise UsageError(f"empty name in --set {text!r}")
        if tok in model.variables:
            out.add(model.variables.index(tok))
        elif tok.isdigit() or (tok[:1] in "Zz" and tok[1:].isdigit()):
            i = int(tok.lstrip("Zz"))
            if i >= model.n:
                raise UsageError(f"index {tok} out of range")
            out.add(i)
        else:
            raise UsageError(f"unknown variable {tok!r}")
    return frozenset(out)


def _parse_gamma(model: SourceModel, text: str | None):
    if text is None:
        raise UsageError("--gamma is required")
    try:
        g = as_scalar(text)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    return g if model.exact else float(g)


def _problem(model: SourceModel, dependent: str | None) -> FeatureProblem:
    if dependent is None:
        raise PreconditionViolated("model has no 'dependent' variable")
    return FeatureProblem(model, dependent)


def _emit(args, human: str, machine: dict) -> None:
    if args.format == "machine":
        print(json.dumps(machine, indent=2))
    else:
        print(human)


def _plot_points(breaks: Sequence[Scalar], zero: Scalar) -> list[Scalar]:
    if not breaks:
        return [zero - 1, zero, zero + 1]
    return sorted({zero, breaks[0] - 1, *breaks, breaks[-1] + 1})


# -- commands -----------------------------------------------------------------

def cmd_entropy(args, model, dependent, out: Out) -> int:
    ids = _parse_ids(model, args.set)
    h = model.entropy(ids)
    _emit(args, out.num(h), {"set": _set_json(ids), "entropy": out.num(h)})
    return EXIT_OK


def cmd_mmi(args, model, dependent, out: Out) -> int:
    ids = _parse_ids(model, args.set)
    value = mmi(model, ids)
    _emit(args, out.num(value), {"set": _set_json(ids), "mmi": out.num(value)})
    return EXIT_OK


def _cluster_cmd(args, model, out: Out, extended: bool) -> int:
    g = _parse_gamma(model, args.gamma)
    cs = extended_clusters(model, g) if extended else clusters(model, g)
    sets = list(cs)
    human = "\n".join(out.names(c) for c in sets) if sets else "(none)"
    _emit(args, human, {"gamma": out.num(cs.gamma), "extended": extended, "clusters": [_set_json(c) for c in sets]})
    return EXIT_OK


def cmd_clusters(args, model, dependent, out: Out) -> int:
    return _cluster_cmd(args, model, out, extended=False)


def cmd_extended_clusters(args, model, dependent, out: Out) -> int:
    return _cluster_cmd(args, model, out, extended=True)


def psp_to_json(result, out: Out) -> dict:
    return {
        "critical_values": [out.num(g) for g in result.critical_values],
        "partitions": [_partition_json(p) for p in result.partitions],
        "intercepts": [out.num(c) for c in result.intercepts],
    }


def _scalar(text: str) -> Scalar:
    return Fraction(text) if "/" in text or text.lstrip("-").isdigit() else float(text)


def psp_from_json(doc: dict) -> PspResult:
    """Inverse of :func:`psp_to_json`."""
    n = sum(len(b) for b in doc["partitions"][0])
    return PspResult(
        tuple(_scalar(g) for g in doc["critical_values"]),
        tuple(Partition.of(blocks, range(n)) for blocks in doc["partitions"]),
        tuple(_scalar(c) for c in doc["intercepts"]),
    )


def cmd_psp(args, model, dependent, out: Out) -> int:
    result = psp(model)
    if args.plot:
        zero = model.set_function().coerce(0)
        for g in _plot_points(result.critical_values, zero):
            print(f"{out.num(g)}\t{out.num(result.value(g))}\t{out.partition(result.partition_at(g))}")
        return EXIT_OK
    human = "critical values: " + (", ".join(out.num(g) for g in result.critical_values) or "(none)")
    human += "\nchain: " + " > ".join(out.partition(p) for p in result.partitions)
    _emit(args, human, {"variables": list(model.variables), **psp_to_json(result, out)})
    return EXIT_OK


def cmd_feature_select(args, model, dependent, out: Out) -> int:
    problem = _problem(model, dependent)
    if (args.gamma is None) == (args.size is None):
        raise UsageError("give exactly one of --gamma or --size")
    if args.size is not None:
        value, best = size_constrained(problem, args.size)
        human = f"max I = {out.num(value)}\n" + "\n".join(out.names(b) for b in best)
        _emit(args, human, {"size": args.size, "value": out.num(value), "optimizers": [_set_json(b) for b in best]})
        return EXIT_OK
    r = relax_optimize(problem, _parse_gamma(model, args.gamma))
    family = r.optimizers if r.optimizers is not None else (r.minimal, r.maximal)
    human = f"f* = {out.num(r.value)}\n" + "\n".join(out.names(b) for b in family)
    _emit(args, human, {
        "gamma": out.num(r.gamma),
        "value": out.num(r.value),
        "minimal": _set_json(r.minimal),
        "maximal": _set_json(r.maximal),
        "optimizers": [_set_json(b) for b in family],
    })
    return EXIT_OK


def pp_to_json(result, out: Out) -> dict:
    bound = lambda x: None if x is None else out.num(x)  # noqa: E731
    return {
        "breakpoints": [out.num(g) for g in result.breakpoints],
        "values": [out.num(v) for v in result.values],
        "regions": [
            {
                "lo": bound(r.lo),
                "hi": bound(r.hi),
                "minimal": _set_json(r.minimal),
                "maximal": _set_json(r.maximal),
                "optimizers": [_set_json(b) for b in r.optimizers],
            }
            for r in result.regions
        ],
        "at_breakpoints": [[_set_json(b) for b in r.optimizers] for r in result.at_breakpoints],
    }


def pp_from_json(doc: dict) -> dict:
    """Decode :func:`pp_to_json` output back to scalars and frozensets."""
    opt = lambda x: None if x is None else _scalar(x)  # noqa: E731
    sets = lambda xs: tuple(frozenset(b) for b in xs)  # noqa: E731
    return {
        "breakpoints": tuple(_scalar(g) for g in doc["breakpoints"]),
        "values": tuple(_scalar(v) for v in doc["values"]),
        "regions": tuple(
            Region(opt(r["lo"]), opt(r["hi"]), frozenset(r["minimal"]), frozenset(r["maximal"]), sets(r["optimizers"]))
            for r in doc["regions"]
        ),
        "at_breakpoints": tuple(sets(f) for f in doc["at_breakpoints"]),
    }


def cmd_pp(args, model, dependent, out: Out) -> int:
    problem = _problem(model, dependent)
    result = pp(problem)
    if args.plot:
        zero = model.set_function().coerce(0)
        for g in _plot_points(result.breakpoints, zero):
            r = relax_optimize(problem, g, family=False)
            print(f"{out.num(g)}\t{out.num(r.value)}\t{out.names(r.minimal)}")
        return EXIT_OK
    lines = ["breakpoints: " + (", ".join(out.num(g) for g in result.breakpoints) or "(none)")]
    for g, v in zip(result.breakpoints, result.values):
        lines.append(f"  f*({out.num(g)}) = {out.num(v)}")
    lines.append("maximal optimizers: " + " -> ".join(out.names(b) for b in result.maximal_chain()))
    _emit(args, "\n".join(lines), {"variables": list(model.variables), **pp_to_json(result, out)})
    return EXIT_OK


def _report_human(rep: DualityReport, out: Out, lifted: SourceModel) -> str:
    status = "pass" if rep.passed else "FAIL"
    line = f"gamma={out.num(rep.gamma)}: {status}"
    if rep.forward_witnesses:
        line += "; forward witnesses " + " ".join(out.names(b, lifted) for b in rep.forward_witnesses)
    if rep.backward_witnesses:
        line += "; backward witnesses " + " ".join(out.names(b, lifted) for b in rep.backward_witnesses)
    return line


def _report_json(rep: DualityReport, out: Out) -> dict:
    return {
        "gamma": out.num(rep.gamma),
        "passed": rep.passed,
        "independent": rep.independent,
        "forward": [{"set": _set_json(b), "holds": ok} for b, ok in rep.forward],
        "backward": [{"block": _set_json(b), "holds": ok} for b, ok in rep.backward],
        "forward_witnesses": [_set_json(b) for b in rep.forward_witnesses],
        "backward_witnesses": [_set_json(b) for b in rep.backward_witnesses],
    }


def cmd_duality(args, model, dependent, out: Out) -> int:
    problem = _problem(model, dependent)
    if (args.gamma is None) == (not args.sweep):
        raise UsageError("give exactly one of --gamma or --sweep")
    if args.sweep:
        reports = sweep_duality(problem)
    else:
        reports = [verify_duality(problem, _parse_gamma(model, args.gamma))]
    lifted = lift(problem)
    head = "features independent" if problem.features_independent() else "features NOT independent"
    human = "\n".join([head, *(_report_human(r, out, lifted) for r in reports)])
    _emit(args, human, {
        "variables": list(lifted.variables),
        "independent": problem.features_independent(),
        "reports": [_report_json(r, out) for r in reports],
    })
    return EXIT_OK if all(r.passed for r in reports) else EXIT_COUNTEREXAMPLE


def cmd_validate(args, model, dependent, out: Out) -> int:
    found = validate(model)
    _emit(args, "\n".join(map(str, found)) or "ok", {"violations": [
        {"kind": v.kind, "message": v.message, "fatal": v.fatal} for v in found
    ]})
    return EXIT_MODEL if any(v.fatal for v in found) else EXIT_OK


COMMANDS = {
    "entropy": cmd_entropy,
    "mmi": cmd_mmi,
    "clusters": cmd_clusters,
    "extended-clusters": cmd_extended_clusters,
    "psp": cmd_psp,
    "feature-select": cmd_feature_select,
    "pp": cmd_pp,
    "duality": cmd_duality,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", required=True, metavar="FILE", help="model document (JSON)")
    common.add_argument("--format", choices=("human", "machine"), default="human")
    common.add_argument("--decimal", action="store_true", help="print decimals instead of exact rationals")

    parser = _Parser(prog="infocluster", description="Info-clustering and feature selection on exact discrete sources.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("entropy", parents=[common], help="joint entropy of a set")
    p.add_argument("--set", required=True, help="comma-separated names, indices or Z<i>")
    p = sub.add_parser("mmi", parents=[common], help="multivariate mutual information of a set")
    p.add_argument("--set", required=True)
    for name in ("clusters", "extended-clusters"):
        p = sub.add_parser(name, parents=[common], help=f"{name.replace('-', ' ')} at a threshold")
        p.add_argument("--gamma", required=True)
    p = sub.add_parser("psp", parents=[common], help="principal sequence of partitions")
    p.add_argument("--plot", action="store_true", help="emit TSV rows: gamma, value, partition")
    p = sub.add_parser("feature-select", parents=[common], help="relaxed or size-constrained selection")
    p.add_argument("--gamma")
    p.add_argument("--size", type=int)
    p = sub.add_parser("pp", parents=[common], help="principal partition of the relaxation")
    p.add_argument("--plot", action="store_true", help="emit TSV rows: gamma, f*, minimal optimizer")
    p = sub.add_parser("duality", parents=[common], help="check feature-selection / clustering duality")
    p.add_argument("--gamma")
    p.add_argument("--sweep", action="store_true")
    sub.add_parser("validate", parents=[common], help="report model problems")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        model, dependent = load_model(args.model)
        fatal = [v for v in validate(model) if v.fatal]
        if fatal and args.command != "validate":
            raise ModelError("; ".join(map(str, fatal)))
        out = Out(model, args.format == "machine", args.decimal)
        return COMMANDS[args.command](args, model, dependent, out)
    except UsageError as exc:
        print(f"infocluster: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ModelError as exc:
        print(f"infocluster: invalid model: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except UnknownVariable as exc:
        print(f"infocluster: unknown variable: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfoClusterError as exc:
        print(f"infocluster: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
