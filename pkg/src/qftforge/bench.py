"""Side-by-side benchmark of the textbook and interleaved QFT circuits."""

from __future__ import annotations

import csv
import io
import json
import statistics
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .circuit import simulate, stats
from .errors import ArgumentError, SizeError
from .qft import VARIANTS
from .state import MAX_QUBITS, GateKind, zero_state

MAX_BENCH_QUBITS = 24
CSV_COLUMNS = ("n", "variant", "h", "cp", "swap", "two_qubit", "depth", "nn_only", "build_s", "sim_s")
METRIC_COLUMNS = CSV_COLUMNS[:8]
FORMATS = ("json", "csv", "text")


@dataclass(frozen=True)
class BenchRow:
    n: int
    variant: str
    h: int
    cp: int
    swap: int
    two_qubit: int
    depth: int
    nn_only: bool
    build_s: float
    sim_s: float
    shots: int
    seed: int

    def metrics(self) -> dict:
        return {k: getattr(self, k) for k in METRIC_COLUMNS}


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)


def _median_seconds(fn, reps: int) -> float:
    fn()  # warm-up
    samples = []
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - t0)
    return statistics.median(samples) * 1e-9


def compare_qft(min_n: int, max_n: int, reps: int = 5, seed: int = 0, shots: int = 1024) -> BenchReport:
    """Build and simulate both QFT variants on |0...0> for every n in range.

    Metric columns depend only on n; the two time columns are medians over
    ``reps`` runs after one warm-up.  Runs are strictly sequential.  ``shots``
    and ``seed`` are carried into every row as run parameters.
    """
    if not 1 <= min_n <= max_n <= MAX_BENCH_QUBITS:
        raise SizeError(f"need 1 <= min_n <= max_n <= {MAX_BENCH_QUBITS}, got {min_n}..{max_n}")
    if reps < 3:
        raise ArgumentError(f"reps must be >= 3, got {reps}")
    rows = []
    for n in range(min_n, max_n + 1):
        for tag, variant in VARIANTS.items():
            circuit = variant.build(n)
            build_s = _median_seconds(lambda: variant.build(n), reps)
            start = zero_state(n)
            sim_s = _median_seconds(lambda: simulate(circuit, start), reps)
            st = stats(circuit)
            rows.append(BenchRow(
                n=n,
                variant=tag,
                h=st.count(GateKind.H),
                cp=st.count(GateKind.CP),
                swap=st.count(GateKind.SWAP),
                two_qubit=st.two_qubit_count,
                depth=st.depth,
                nn_only=st.nearest_neighbor_only,
                build_s=build_s,
                sim_s=sim_s,
                shots=shots,
                seed=seed,
            ))
    metadata = {
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "qubit_cap": MAX_QUBITS,
        "reps": reps,
        "min_n": min_n,
        "max_n": max_n,
    }
    return BenchReport(rows, metadata)


def _sig9(value: float) -> float:
    return float(f"{value:.9g}")


def _row_dict(row: BenchRow) -> dict:
    d = row.metrics()
    d["build_s"] = _sig9(row.build_s)
    d["sim_s"] = _sig9(row.sim_s)
    d["shots"] = row.shots
    d["seed"] = row.seed
    return d


def render_report(report: BenchReport, fmt: str = "json") -> bytes:
    if fmt == "json":
        doc = {"metadata": report.metadata, "rows": [_row_dict(r) for r in report.rows]}
        return (json.dumps(doc, indent=2) + "\n").encode("utf-8")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in report.rows:
            d = _row_dict(r)
            d["nn_only"] = "true" if r.nn_only else "false"
            writer.writerow([d[c] for c in CSV_COLUMNS])
        return buf.getvalue().encode("utf-8")
    if fmt == "text":
        table = [list(CSV_COLUMNS)]
        for r in report.rows:
            d = _row_dict(r)
            d["nn_only"] = "yes" if r.nn_only else "no"
            d["build_s"] = f"{r.build_s:.3e}"
            d["sim_s"] = f"{r.sim_s:.3e}"
            table.append([str(d[c]) for c in CSV_COLUMNS])
        widths = [max(len(line[i]) for line in table) for i in range(len(CSV_COLUMNS))]
        lines = [
            "  ".join(cell.rjust(w) if i != 1 else cell.ljust(w) for i, (cell, w) in enumerate(zip(line, widths)))
            for line in table
        ]
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ArgumentError(f"unknown report format {fmt!r}; choose from {FORMATS}")
