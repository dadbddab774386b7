"""``qftforge`` command line.

Exit status: 0 on success, 2 on a usage error, 1 on a runtime error or a
failed verification.  Every randomised command takes ``--seed`` (falling back
to ``$QFTFORGE_SEED``, then 0), so identical argv gives identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable, Sequence

import numpy as np

from . import bench
from .circuit import simulate, stats, unitary_of
from .errors import QftForgeError
from .hhl import HhlConfig, build_hhl_template, run_hhl
from .qft import (
    VARIANTS,
    build_iqft_interleaved,
    build_iqft_reversal,
    dft_matrix,
    discover_readout,
    factorized_qft_state,
    get_variant,
)
from .shor import IQFT_WIRES, build_shor15, counting_distribution, shor_factor
from .state import MAX_QUBITS, basis_state, probabilities, sample_counts

SEED_ENV = "QFTFORGE_SEED"
EXACT_MAX_QUBITS = 10
VERIFY_MAX_QUBITS = 10

_KEYS_NOTE = (
    "Histogram keys are fixed-width bitstrings with qubit (classical slot) 0 "
    "as the rightmost character."
)


def _int_range(lo: int, hi: int | None = None) -> Callable[[str], int]:
    def parse(text: str) -> int:
        try:
            value = int(text, 0)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if value < lo or (hi is not None and value > hi):
            bound = f"[{lo}, {hi}]" if hi is not None else f">= {lo}"
            raise argparse.ArgumentTypeError(f"{value} outside {bound}")
        return value

    return parse


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not -(1 << 63) <= value < (1 << 64):
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def _add_seed(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=_seed, default=None,
                   help=f"sampling seed (default: ${SEED_ENV} or 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qftforge",
        description="Build, simulate, verify and benchmark QFT circuits. " + _KEYS_NOTE,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("qft", help="run one QFT variant on a basis state", epilog=_KEYS_NOTE)
    q.add_argument("--n", type=_int_range(1, MAX_QUBITS), required=True)
    q.add_argument("--variant", choices=sorted(VARIANTS), default="interleaved")
    q.add_argument("--input", type=_int_range(0), default=0, help="input basis index j")
    q.add_argument("--exact", action="store_true",
                   help=f"print the output statevector instead of sampling (n <= {EXACT_MAX_QUBITS})")
    q.add_argument("--shots", type=_int_range(1), default=1024)
    q.add_argument("--format", choices=("json", "text"), default="json")
    q.add_argument("--dump", action="store_true", help="print the circuit and exit")
    _add_seed(q)

    v = sub.add_parser("verify", help="run the oracle checks")
    v.add_argument("--max-n", type=_int_range(1, VERIFY_MAX_QUBITS), default=6)

    s = sub.add_parser("shor", help="order finding for N=15, a=7", epilog=_KEYS_NOTE)
    s.add_argument("--shots", type=_int_range(1), default=2048)
    s.add_argument("--iqft-wiring", choices=sorted(IQFT_WIRES), default="readout")
    s.add_argument("--dump", action="store_true")
    _add_seed(s)

    hh = sub.add_parser("hhl", help="sample the HHL-shaped template", epilog=_KEYS_NOTE)
    hh.add_argument("--qpe", type=_int_range(1), default=6)
    hh.add_argument("--solution", type=_int_range(1), default=8)
    hh.add_argument("--shots", type=_int_range(1), default=1024)
    hh.add_argument("--dump", action="store_true")
    _add_seed(hh)

    b = sub.add_parser("bench", help="compare textbook and interleaved QFT")
    b.add_argument("--min-n", type=_int_range(1, bench.MAX_BENCH_QUBITS), default=2)
    b.add_argument("--max-n", type=_int_range(1, bench.MAX_BENCH_QUBITS), default=6)
    b.add_argument("--reps", type=_int_range(3), default=5)
    b.add_argument("--shots", type=_int_range(1), default=1024)
    b.add_argument("--format", choices=bench.FORMATS, default="json")
    b.add_argument("--out", default=None, help="write the report here instead of stdout")
    _add_seed(b)
    return parser


def _resolve_seed(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    if not hasattr(args, "seed") or args.seed is not None:
        return
    env = os.environ.get(SEED_ENV)
    if env is None or env.strip() == "":
        args.seed = 0
        return
    try:
        args.seed = _seed(env.strip())
    except argparse.ArgumentTypeError as exc:
        parser.error(f"${SEED_ENV}: {exc}")


def _fmt_complex(z: complex) -> str:
    re, im = round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0
    if im == 0:
        return f"{re:.8f}"
    return f"{re:.8f}{im:+.8f}j"


def _cmd_qft(args, out) -> int:
    variant = get_variant(args.variant)
    if args.input >= (1 << args.n):
        raise QftForgeError(f"--input {args.input} out of range for {args.n} qubits")
    circuit = variant.build(args.n)
    if args.dump:
        out.write(circuit.render() + "\n")
        return 0
    final = simulate(circuit, basis_state(args.n, args.input))
    if args.exact:
        if args.n > EXACT_MAX_QUBITS:
            raise QftForgeError(f"--exact is limited to n <= {EXACT_MAX_QUBITS}")
        amps = final.amplitudes
        probs = probabilities(final)
        if args.format == "text":
            out.write("statevector [" + ", ".join(_fmt_complex(a) for a in amps) + "]\n")
            out.write("probabilities [" + ", ".join(f"{p:.8f}" for p in probs) + "]\n")
        else:
            doc = {
                "n": args.n,
                "variant": args.variant,
                "input": args.input,
                "amplitudes": [[round(a.real, 12) + 0.0, round(a.imag, 12) + 0.0] for a in amps],
                "probabilities": [round(float(p), 12) for p in probs],
            }
            out.write(json.dumps(doc, indent=2) + "\n")
        return 0
    hist = sample_counts(final, args.shots, args.seed)
    if args.format == "text":
        for key, count in hist.counts.items():
            out.write(f"{key} {count}\n")
    else:
        out.write(hist.to_json() + "\n")
    return 0


def _max_err(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b)))


def verification_checks(max_n: int) -> list[tuple[str, float, float]]:
    """(name, error, tolerance) for every oracle comparison up to ``max_n``."""
    checks = []
    for n in range(1, max_n + 1):
        dft = dft_matrix(n)
        eye = np.eye(1 << n)
        for tag, variant in VARIANTS.items():
            checks.append((f"qft-{tag} n={n}", _max_err(variant.dft_view(n), dft), 1e-10))
        if n <= 5:
            err = max(
                _max_err(factorized_qft_state(n, j).amplitudes, dft[:, j]) for j in range(1 << n)
            )
            checks.append((f"factorization n={n}", err, 1e-12))
        u_txt = unitary_of(get_variant("textbook").build(n))
        u_int = unitary_of(get_variant("interleaved").build(n))
        checks.append((f"iqft-reversal n={n}", _max_err(unitary_of(build_iqft_reversal(n)) @ u_txt, eye), 1e-9))
        iqft = build_iqft_interleaved(n, generalized=True)
        checks.append((f"iqft-interleaved n={n}", _max_err(unitary_of(iqft) @ u_int, eye), 1e-9))
        nn = stats(get_variant("interleaved").build(n)).nearest_neighbor_only
        checks.append((f"nn-only-interleaved n={n}", 0.0 if nn else 1.0, 0.5))
    for tag, variant in VARIANTS.items():
        ok = discover_readout(variant.builder, 3) == variant.readout
        checks.append((f"readout-{tag} n=3", 0.0 if ok else 1.0, 0.5))
    dist = counting_distribution()
    expected = {y: (0.25 if y in (0, 4, 8, 12) else 0.0) for y in range(16)}
    checks.append(("shor15-distribution", max(abs(dist[y] - expected[y]) for y in range(16)), 1e-10))
    return checks


def _cmd_verify(args, out) -> int:
    failed = 0
    for name, err, tol in verification_checks(args.max_n):
        ok = err < tol
        failed += not ok
        out.write(f"{name} {'PASS' if ok else 'FAIL'}\n")
    return 1 if failed else 0


def _cmd_shor(args, out) -> int:
    if args.dump:
        out.write(build_shor15(7, iqft_wiring=args.iqft_wiring).render() + "\n")
        return 0
    result = shor_factor(15, 7, args.shots, args.seed, iqft_wiring=args.iqft_wiring)
    out.write(result.to_json() + "\n")
    return 0


def _cmd_hhl(args, out) -> int:
    cfg = HhlConfig(args.qpe, args.solution)
    if args.dump:
        out.write(build_hhl_template(cfg).render() + "\n")
        return 0
    _, hist = run_hhl(cfg, args.shots, args.seed)
    out.write(hist.to_json() + "\n")
    return 0


def _cmd_bench(args, out) -> int:
    if args.min_n > args.max_n:
        raise QftForgeError(f"--min-n {args.min_n} exceeds --max-n {args.max_n}")
    report = bench.compare_qft(args.min_n, args.max_n, args.reps, args.seed, args.shots)
    payload = bench.render_report(report, args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    else:
        out.write(payload.decode("utf-8"))
    return 0


_COMMANDS = {
    "qft": _cmd_qft,
    "verify": _cmd_verify,
    "shor": _cmd_shor,
    "hhl": _cmd_hhl,
    "bench": _cmd_bench,
}


def run_command(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _resolve_seed(parser, args)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, out)
    except QftForgeError as exc:
        print(f"qftforge: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_command())
