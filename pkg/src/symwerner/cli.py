"""Command-line interface: ``symwerner <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 input error, 3 negative result
(e.g. the state is not Werner).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import pauli
from .errors import CapacityError, NormalizationError, NotHermitianError, NotSymmetricError
from .pauli import PauliDecomposition, decompose, format_number, partial_trace, reconstruct
from .polynomial import fn_map, format_poly
from .states import WernerCoefficients, named_state, table_states, werner_decomposition, werner_rho_a
from .werner import DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TOL, is_werner, positivity_scan_2q, spectrum

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_NEGATIVE = 0, 1, 2, 3
CLUSTER_TOL = 1e-9

INPUT_ERRORS = (ValueError, OSError, NotSymmetricError, NotHermitianError,
                NormalizationError, CapacityError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_state(spec: str, n: int | None = None) -> PauliDecomposition:
    """Resolve a state spec (named state, ``werner-a:``, ``werner-b:`` or ``.pauli`` path)."""
    name, _, arg = spec.partition(":")
    if name == "werner-a":
        if n not in (None, 2):
            raise ValueError("werner-a states have 2 qubits")
        return decompose(werner_rho_a(float(arg)))
    if name == "werner-b":
        b = [float(x) for x in arg.split(",") if x.strip()]
        if not b:
            raise ValueError("werner-b needs at least one coefficient")
        return werner_decomposition(WernerCoefficients(2 * (len(b) - 1) if n is None else n, tuple(b)))
    if name == "dicke":
        if not arg:
            raise ValueError("dicke needs an excitation number, e.g. dicke:1")
        return decompose(named_state("dicke", n, int(arg)))
    if spec.endswith(".pauli") or Path(spec).is_file():
        d = pauli.loads(Path(spec).read_text())
        if n is not None and n != d.n:
            raise ValueError(f"{spec} has {d.n} qubits, --n says {n}")
        return d
    return decompose(named_state(spec, n))


def render_spectrum(eigs) -> str:
    groups: list[list[float]] = []
    for lam in eigs:
        if groups and lam - groups[-1][0] < CLUSTER_TOL:
            groups[-1].append(lam)
        else:
            groups.append([lam])
    parts = []
    for g in groups:
        text = format_number(np.mean(g) if abs(np.mean(g)) >= 1e-12 else 0.0)
        parts.append(text if len(g) == 1 else f"{text} (×{len(g)})")
    return ", ".join(parts)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_poly(args) -> int:
    if args.table:
        if args.state:
            raise UsageError("--table and --state are mutually exclusive")
        lines = [f"{label} | {n} | {format_poly(fn_map(decompose(rho)))}"
                 for label, n, rho in table_states()]
        _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK
    if not args.state:
        raise UsageError("poly needs --state or --table")
    d = load_state(args.state, args.n)
    _emit(format_poly(fn_map(d)) + "\n", args.out)
    return EXIT_OK


def cmd_werner_test(args) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    report = is_werner(load_state(args.state, args.n), tol=args.tol,
                       samples=args.samples, seed=args.seed)
    sys.stdout.write(report.to_text())
    return EXIT_OK if report.is_werner else EXIT_NEGATIVE


def cmd_reduce(args) -> int:
    d = load_state(args.state, args.n)
    if not 1 <= args.trace_out <= d.n:
        raise ValueError(f"--trace-out {args.trace_out} out of range 1..{d.n}")
    _emit(pauli.dumps(partial_trace(d, args.trace_out - 1)), args.out)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    d = load_state(args.state, args.n)
    sys.stdout.write(render_spectrum(spectrum(reconstruct(d))) + "\n")
    return EXIT_OK


def cmd_scan(args) -> int:
    if args.n != 2:
        raise UsageError("scan supports only --n 2 (the two-qubit Werner family)")
    if args.grid < 2:
        raise UsageError("--grid must be >= 2")
    result = positivity_scan_2q(args.grid)
    if result.empty or (result.hi - result.lo) / result.step < 2:
        print(f"warning: grid of {args.grid} points cannot resolve the feasible interval",
              file=sys.stderr)
    if result.empty:
        print("feasible a: none found at this resolution")
    else:
        print(f"feasible a in [{result.lo:.3f}, {result.hi:.3f}]")
    print(f"grid step {format_number(result.step)}")
    return EXIT_OK


def cmd_make(args) -> int:
    d = load_state(args.state, args.n)
    _emit(pauli.dumps(d), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="symwerner", description="Symmetric multiqubit states as polynomials.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def state_args(p, required=True):
        p.add_argument("--state", required=required,
                       help="named state, dicke:<k>, werner-a:<a>, werner-b:<b0,b1,...> or a .pauli file")
        p.add_argument("--n", type=int, help="qubit count")

    p = sub.add_parser("poly", help="print the polynomial of a symmetric state")
    state_args(p, required=False)
    p.add_argument("--table", action="store_true", help="print every example state")
    p.add_argument("--out")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("werner-test", help="decide whether a symmetric state is Werner")
    state_args(p)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_werner_test)

    p = sub.add_parser("reduce", help="trace out one qubit and write a .pauli file")
    state_args(p)
    p.add_argument("--trace-out", type=int, required=True, help="qubit to trace out (1-based)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("spectrum", help="eigenvalues of a state")
    state_args(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("scan", help="positivity scan of the two-qubit Werner family")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--grid", type=int, default=4001)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("make", help="write a state (e.g. werner-b:...) as a .pauli file")
    state_args(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_make)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"symwerner: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except INPUT_ERRORS as exc:
        print(f"symwerner: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
