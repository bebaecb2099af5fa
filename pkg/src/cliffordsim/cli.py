"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 circuit parse error,
3 verification failure (or an internal engine error).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .circuit import CircuitParseError, histogram_json, load_circuit, sample_histogram
from .clifford import verify_rule_tables
from .oracle import MAX_VALIDATE_QUBITS, cross_validate
from .stabilizer import InternalEngineError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_VERIFY = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"seed must be >= 0, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cliffordsim", description="Stabilizer simulation of Clifford circuits.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="sample measurement outcomes of a circuit file")
    run.add_argument("circuit")
    run.add_argument("--shots", type=_positive, default=1024)
    run.add_argument("--seed", type=_seed, default=0)
    run.add_argument("--format", choices=("text", "json"), default="text")
    run.add_argument("-v", "--verbose", action="store_true", help="also show +/-1 eigenvalues")

    verify = sub.add_parser("verify", help="cross-check the engine against the dense oracle")
    verify.add_argument("circuit")
    verify.add_argument("--seed", type=_seed, default=0)
    verify.add_argument("--trials", type=_positive, default=8)
    verify.add_argument("--format", choices=("text", "json"), default="text")

    rules = sub.add_parser("rules", help="print the conjugation rules and their matrix check")
    rules.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _eigen_label(bitstring: str) -> str:
    return "(" + ",".join("-1" if b == "1" else "+1" for b in bitstring) + ")"


def cmd_run(args: argparse.Namespace) -> int:
    circuit = load_circuit(args.circuit)
    counts = sample_histogram(circuit, args.shots, args.seed)
    if args.format == "json":
        print(histogram_json(counts, args.shots, args.seed))
        return EXIT_OK
    print(f"# shots={args.shots} seed={args.seed}")
    for bits, count in counts.items():
        label = bits or "(empty)"
        if args.verbose:
            print(f"{label} {count} {_eigen_label(bits)}")
        else:
            print(f"{label} {count}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    circuit = load_circuit(args.circuit)
    if circuit.n_qubits > MAX_VALIDATE_QUBITS:
        raise UsageError(
            f"verify supports at most {MAX_VALIDATE_QUBITS} qubits, circuit has {circuit.n_qubits}"
        )
    report = cross_validate(circuit, args.trials, args.seed)
    if args.format == "json":
        print(json.dumps(report.to_dict()))
    else:
        status = "OK" if report.ok else "FAIL"
        print(f"{status}: {report.trials} trial(s), {len(report.sites)} measurement site(s), "
              f"{len(report.mismatches)} mismatch(es)")
        for m in report.mismatches:
            print(f"  {m}")
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_rules(args: argparse.Namespace) -> int:
    checks = verify_rule_tables()
    if args.format == "json":
        rows = [
            {"rule": c.label, "table": c.table_image, "matrix": c.matrix_image, "passed": c.passed}
            for c in checks
        ]
        print(json.dumps({"rules": rows, "ok": all(c.passed for c in checks)}, ensure_ascii=False))
    else:
        for c in checks:
            print(f"{'PASS' if c.passed else 'FAIL'}  {c.label}")
        print(f"{sum(c.passed for c in checks)}/{len(checks)} rules match matrix conjugation")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_VERIFY


COMMANDS = {"run": cmd_run, "verify": cmd_verify, "rules": cmd_rules}


def main(argv: Sequence[str] | None = None) -> int:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8")
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"cliffordsim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"cliffordsim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CircuitParseError as exc:
        print(f"cliffordsim: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InternalEngineError as exc:
        print(f"cliffordsim: internal engine error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
