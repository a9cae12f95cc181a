"""Command-line front end.

Subcommands: verify (approximate sign-based check), oracle (exact brute
force), signs (arc and net influence signs), gadget (reduction construction),
random (fixture generation), infer (posterior query).

Exit codes: 0 command completed (the verdict is in the output), 2 parse or
validation error, 3 usage error, 4 zero-probability evidence.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .gadget import GadgetSpec, build_gadget, random_network
from .inference import ZeroEvidenceError, posterior
from .mbn import MbnParseError, MbnValidationError, parse_mbn, serialize_mbn
from .model import Assignment, Network
from .oracle import decide_mid, decide_mim
from .qualitative import approx_verdict

EXIT_OK = 0
EXIT_BAD_NETWORK = 2
EXIT_USAGE = 3
EXIT_ZERO_EVIDENCE = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 3 instead of argparse's 2
        raise _UsageError(message)


def _load(path: str) -> Network:
    return parse_mbn(Path(path).read_text(encoding="utf-8"))


def _parse_evidence(net: Network, spec: str) -> Assignment:
    bindings = {}
    for part in filter(None, (s.strip() for s in spec.split(","))):
        if "=" not in part:
            raise _UsageError(f"evidence must be NAME=value, got {part!r}")
        name, _, label = part.partition("=")
        name, label = name.strip(), label.strip()
        if name not in net:
            raise _UsageError(f"unknown variable {name!r}")
        bindings[name] = net.variable(name).value_index(label)
    return Assignment.of(bindings)


def _write_output(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _cmd_verify(args) -> int:
    net = _load(args.file)
    report = approx_verdict(net, refine=args.refine)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
        return EXIT_OK
    print(f"verdict: {report.verdict.value}")
    for name, sign in report.net_signs.items():
        print(f"net sign of {name} on {net.output}: {sign}")
    for r in report.refinements:
        print(f"refined {r.variable} (budget {r.budget}) -> {r.resolved_to}")
    if report.inconclusive_variables:
        print("inconclusive for: " + ", ".join(report.inconclusive_variables))
    return EXIT_OK


def _cmd_oracle(args) -> int:
    net = _load(args.file)
    decide = decide_mid if args.property == "mid" else decide_mim
    verdict = decide(net, args.direction, all_pairs=args.all_pairs)
    if args.json:
        print(json.dumps(verdict.to_json(net), indent=2))
        return EXIT_OK
    print(f"property: {verdict.property} ({verdict.direction})")
    print(f"holds: {'true' if verdict.holds else 'false'}")
    if verdict.counterexample is not None:
        ce = verdict.counterexample
        print(f"counterexample low:  {_fmt_assignment(net, ce.low)}")
        print(f"counterexample high: {_fmt_assignment(net, ce.high)}")
        if ce.cdf_index is not None:
            print(f"cdf index: {ce.cdf_index}")
        if ce.modes is not None:
            values = net.variable(net.output).values
            print(f"modes: {values[ce.modes[0]]} -> {values[ce.modes[1]]}")
    if verdict.skipped_assignments:
        print(f"skipped {len(verdict.skipped_assignments)} zero-probability assignments "
              f"({verdict.skipped_pairs} pairs)")
    return EXIT_OK


def _cmd_signs(args) -> int:
    net = _load(args.file)
    report = approx_verdict(net)
    for (parent, child), sign in report.arc_signs.items():
        print(f"arc {parent} -> {child}: {sign}")
    for name, sign in report.net_signs.items():
        print(f"net {name} -> {net.output}: {sign}")
    return EXIT_OK


def _cmd_gadget(args) -> int:
    net = _load(args.file)
    if "=" not in args.evidence:
        raise _UsageError("--evidence must be NAME=value")
    name, _, label = args.evidence.partition("=")
    try:
        spec = GadgetSpec(net, name.strip(), label.strip(), args.p)
        extended = build_gadget(spec)
    except (ValueError, KeyError) as exc:
        raise _UsageError(str(exc)) from None
    _write_output(args.output, serialize_mbn(extended))
    return EXIT_OK


def _cmd_random(args) -> int:
    try:
        net = random_network(
            n_nodes=args.nodes,
            seed=args.seed,
            max_parents=args.max_parents,
            value_counts=args.values,
            polytree=args.polytree,
            n_observables=args.observables,
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    _write_output(args.output, serialize_mbn(net))
    return EXIT_OK


def _cmd_infer(args) -> int:
    net = _load(args.file)
    evidence = _parse_evidence(net, args.evidence)
    target = args.target
    if target not in net:
        raise _UsageError(f"unknown variable {target!r}")
    if target in evidence:
        raise _UsageError(f"target {target!r} appears in the evidence")
    d = posterior(net, evidence, target)
    values = net.variable(target).values
    shown = ", ".join(f"{n}={v}" for n, v in evidence.labels(net).items()) or "(nothing)"
    for label, prob in zip(values, d.probs):
        print(f"Pr({target}={label} | {shown}) = {prob:.9f}")
    return EXIT_OK


def _fmt_assignment(net: Network, x: Assignment) -> str:
    return ", ".join(f"{n}={v}" for n, v in x.labels(net).items())


def build_parser() -> _Parser:
    parser = _Parser(prog="monobn", description="Monotonicity checking for discrete Bayesian networks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="approximate sign-based monotonicity check")
    p.add_argument("file")
    p.add_argument("--refine", type=int, default=0, metavar="N",
                   help="enumeration budget for resolving '?' signs")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="exact brute-force monotonicity decision")
    p.add_argument("file")
    p.add_argument("--property", required=True, choices=("mid", "mim"))
    p.add_argument("--direction", required=True, choices=("isotone", "antitone"))
    p.add_argument("--all-pairs", action="store_true",
                   help="check all comparable pairs instead of covering pairs")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("signs", help="arc signs and per-observable net signs")
    p.add_argument("file")
    p.set_defaults(func=_cmd_signs)

    p = sub.add_parser("gadget", help="build the hardness-reduction gadget network")
    p.add_argument("file")
    p.add_argument("--evidence", required=True, metavar="E=e")
    p.add_argument("--p", required=True, type=float, metavar="R",
                   help="threshold, must lie in [0, 1/2)")
    p.add_argument("-o", "--output", required=True, help="output path ('-' for stdout)")
    p.set_defaults(func=_cmd_gadget)

    p = sub.add_parser("random", help="generate a random network fixture")
    p.add_argument("--nodes", required=True, type=int)
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--polytree", action="store_true")
    p.add_argument("--max-parents", type=int, default=2)
    p.add_argument("--values", type=int, default=2)
    p.add_argument("--observables", type=int, default=None)
    p.add_argument("-o", "--output", required=True, help="output path ('-' for stdout)")
    p.set_defaults(func=_cmd_random)

    p = sub.add_parser("infer", help="posterior distribution for a target variable")
    p.add_argument("file")
    p.add_argument("--evidence", default="", metavar='"X1=v,..."')
    p.add_argument("--target", required=True)
    p.set_defaults(func=_cmd_infer)

    return parser


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MbnParseError, MbnValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_NETWORK
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_NETWORK
    except ZeroEvidenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ZERO_EVIDENCE


def main() -> None:
    raise SystemExit(run_cli())
