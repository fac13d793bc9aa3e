"""Command-line front end.

Subcommands read a pattern document from a file argument (default ``-`` for
standard input) so they compose with pipes::

    onewaylab library cnot | onewaylab standardize | onewaylab simulate

Exit codes: 0 success, 1 validation/verification failure, 2 usage or parse
error.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

import numpy as np

from . import clifford, dsl, library, rewrite, simulate
from .patterns import Pattern, PatternError, validate


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load(path: str) -> dsl.PatternDocument:
    return dsl.parse_document(_read_text(path))


def _parse_param(text: str):
    """A builder parameter: an integer count or an angle expression."""
    if text.isdigit():
        return int(text)
    try:
        return _angle_value(text)
    except ValueError as exc:
        raise SystemExit(f"error: bad parameter {text!r}: {exc}")


def _angle_value(text: str):
    """Angle parameter syntax: ``0``, ``pi``, ``-1/4pi``, ``0.7`` (radians)."""
    text = text.strip().replace(" ", "")
    negative = text.startswith("-")
    if negative:
        text = text[1:]
    if text.endswith("pi"):
        body = text[:-2].rstrip()
        frac = Fraction(body) if body else Fraction(1)
        return -frac if negative else frac
    value = float(text)
    return -value if negative else value


def cmd_validate(args) -> int:
    doc = _load(args.file)
    report = validate(doc.pattern)
    emc = rewrite.is_emc(doc.pattern)
    for cond in ("d0", "d1", "d2"):
        where = getattr(report, cond)
        if where is None:
            print(f"{cond.upper()}: ok")
        elif where >= 0:
            print(f"{cond.upper()}: violated at command {where} "
                  f"({dsl.format_command(doc.pattern.commands[where])})")
        else:
            bad = ", ".join(str(q) for q in sorted(report.d2_qubits, key=str))
            print(f"{cond.upper()}: violated (qubits: {bad})")
    print(f"EMC: {'yes' if emc else 'no'}")
    return 0 if report.ok else 1


def cmd_standardize(args) -> int:
    doc = _load(args.file)
    if args.extended:
        result, trace = rewrite.standardize_extended(doc.pattern)
    else:
        result, trace = rewrite.standardize(doc.pattern)
    if args.trace:
        text = rewrite.format_trace(trace)
        if text:
            print(text, file=sys.stderr)
    sys.stdout.write(dsl.serialize(result, doc.name, paper_order=args.paper_order))
    return 0


def _input_state(spec: str | None, n_inputs: int):
    if spec is None:
        return None
    spec = spec.strip()
    if set(spec) <= {"0", "1"} and len(spec) == n_inputs and n_inputs > 0:
        state = np.zeros(2**n_inputs, dtype=complex)
        state[int(spec, 2)] = 1.0
        return state
    try:
        amplitudes = [complex(part) for part in spec.split(",")]
    except ValueError:
        raise SystemExit(f"error: cannot read input state {spec!r}")
    return np.asarray(amplitudes, dtype=complex)


def cmd_simulate(args) -> int:
    doc = _load(args.file)
    pattern = doc.pattern
    state = _input_state(args.input, len(pattern.inputs))
    branches = simulate.run_all_branches(pattern, state)
    if args.branches:
        print(simulate.format_branch_report(pattern, branches))
    deterministic = simulate.is_deterministic(pattern)
    print(f"deterministic: {'yes' if deterministic else 'no'}")
    if deterministic:
        u = simulate.extract_unitary(pattern, check_deterministic=False)
        print("unitary:")
        for row in u:
            print("  " + "  ".join(f"{a.real:+.9f}{a.imag:+.9f}j" for a in row))
    return 0


def _phase_aligned_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius distance after optimal global-phase alignment."""
    inner = np.vdot(a, b)
    phase = inner / abs(inner) if abs(inner) > 0 else 1.0
    return float(np.linalg.norm(a * phase - b))


def cmd_verify(args) -> int:
    doc = _load(args.file)
    u = simulate.extract_unitary(doc.pattern)
    target = _target_matrix(args.against)
    if u.shape != target.shape:
        print(f"shape mismatch: pattern gives {u.shape}, target is {target.shape}")
        return 1
    distance = _phase_aligned_distance(u, target)
    ok = distance <= 1e-9 * max(1.0, float(np.linalg.norm(target)))
    print(f"{'match' if ok else 'MISMATCH'} (phase-aligned distance {distance:.3e})")
    return 0 if ok else 1


def _target_matrix(spec: str) -> np.ndarray:
    name, _, params = spec.partition(":")
    if name in library.BUILDERS:
        builder = library.BUILDERS[name]
        arguments = [_parse_param(p) for p in params.split(",") if p] if params else []
        pattern = builder(*arguments)
        return simulate.extract_unitary(pattern)
    rows = []
    for line in _read_text(spec).strip().splitlines():
        if line.strip():
            rows.append([complex(tok) for tok in line.split()])
    return np.asarray(rows, dtype=complex)


def cmd_graph(args) -> int:
    doc = _load(args.file)
    if args.kind == "entanglement":
        text = library.entanglement_dot(doc.pattern)
    else:
        text = library.dependency_dot(doc.pattern)
    sys.stdout.write(text)
    return 0


def cmd_library(args) -> int:
    name = args.name
    if name not in library.BUILDERS:
        raise SystemExit(
            f"error: unknown pattern {name!r}; available: {', '.join(sorted(library.BUILDERS))}"
        )
    params = [_parse_param(p) for p in args.params]
    try:
        pattern = library.BUILDERS[name](*params)
    except TypeError as exc:
        raise SystemExit(f"error: bad parameters for {name}: {exc}")
    sys.stdout.write(dsl.serialize(pattern, name, paper_order=args.paper_order))
    return 0


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    print("size  mean_steps  max_steps  seconds")
    means = []
    for size in sizes:
        counts = []
        started = time.perf_counter()
        for seed in range(args.seeds):
            pattern = library.random_wild_pattern(size, seed)
            _, trace = rewrite.standardize(pattern)
            counts.append(len(trace))
        elapsed = time.perf_counter() - started
        mean = sum(counts) / len(counts)
        means.append(mean)
        print(f"{size:>4}  {mean:>10.1f}  {max(counts):>9}  {elapsed:>7.2f}")
    if len(sizes) >= 3:
        coeffs = np.polyfit(np.asarray(sizes, float), np.asarray(means), 2)
        print(
            "quadratic fit: steps ~ "
            f"{coeffs[0]:.4f} n^2 + {coeffs[1]:.2f} n + {coeffs[2]:.1f}"
        )
    return 0


def _theorem_suite():
    yield "cz", library.cz()
    yield "h", library.h()
    yield "teleport(0,0)", library.teleport(0, 0)
    yield "cnot", library.cnot()
    yield "p_half", library.p_half()
    yield "j(1/4 pi)", library.j(Fraction(1, 4))
    yield "rx(1/4 pi)", library.rx(Fraction(1, 4))
    yield "rz(1/2 pi)", library.rz(Fraction(1, 2))


def cmd_theorems(args) -> int:
    checks = clifford.verify_no_dependency_theorems(_theorem_suite())
    print(clifford.format_theorem_report(checks))
    return 0 if all(c.passed for c in checks) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="onewaylab",
        description="Workbench for measurement-based computation patterns.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the runnability conditions")
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("standardize", help="rewrite to normal form")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--extended", action="store_true", help="also shift signals out")
    p.add_argument("--trace", action="store_true", help="print rewrite steps to stderr")
    p.add_argument("--paper-order", action="store_true", help="print commands right-to-left")
    p.set_defaults(func=cmd_standardize)

    p = sub.add_parser("simulate", help="run all measurement branches")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--input", help="basis bits ('10') or comma-separated amplitudes")
    p.add_argument("--branches", action="store_true", help="print the branch table")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="compare the pattern's unitary against a target")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument(
        "--against",
        required=True,
        help="builtin name (e.g. 'cnot' or 'j:1/4pi') or a matrix file",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("graph", help="export entanglement or dependency graph")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--kind", choices=("entanglement", "dependency"), required=True)
    p.add_argument("--dot", action="store_true", help="DOT output (always on)")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("library", help="emit a builtin pattern")
    p.add_argument("name")
    p.add_argument("params", nargs="*", help="angle or size parameters")
    p.add_argument("--paper-order", action="store_true")
    p.set_defaults(func=cmd_library)

    p = sub.add_parser("bench", help="rewrite step counts on random patterns")
    p.add_argument("--sizes", default="20,50,100,200")
    p.add_argument("--seeds", type=int, default=5)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("theorems", help="no-dependency theorem checks on the library")
    p.set_defaults(func=cmd_theorems)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except dsl.DslError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (PatternError, simulate.SimulationError, rewrite.RewriteError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
