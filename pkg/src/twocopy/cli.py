"""Command-line front end: state files, bound reports, batch scatter runs,
and the numerical verification suites.

Exit codes: 0 success (or all checks passed), 1 verification failure,
2 bad input, 3 unphysical state (negative eigenvalue beyond tolerance).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

import numpy as np

from . import states
from .bounds import BoundsReport, bounds_report
from .ensembles import EnsembleSpec, SampleRow, simulate_batch
from .linalg import DensityMatrix, NotPositiveSemidefinite, SystemShape
from .verify import SUITES

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_UNPHYSICAL = 3

LOAD_ATOL = 1e-8


class InputError(Exception):
    """Malformed file, flag, or parameter; maps to exit code 2."""


def _fmt(value: float) -> str:
    return format(value, ".12g")


def state_to_payload(rho: DensityMatrix) -> dict[str, Any]:
    matrix = [
        [{"re": float(entry.real), "im": float(entry.imag)} for entry in row]
        for row in rho.matrix
    ]
    return {"dims": list(rho.shape.dims), "matrix": matrix}


def payload_to_state(payload: Any) -> DensityMatrix:
    """Parse and canonicalize an external state file.

    External files get a looser tolerance (1e-8) than internal invariants;
    inputs inside it are projected onto the closest exact state (symmetrize,
    clamp eigenvalues, renormalize) so downstream code sees strict
    invariants.  Hermiticity or trace defects beyond the tolerance are bad
    input; eigenvalues below -1e-8 mean the state is unphysical.
    """
    if not isinstance(payload, dict):
        raise InputError("state file must be a JSON object")
    dims = payload.get("dims")
    rows = payload.get("matrix")
    if not isinstance(dims, list) or not all(isinstance(d, int) for d in dims):
        raise InputError("field 'dims' must be a list of integers")
    try:
        shape = SystemShape(tuple(dims))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    d = shape.total_dim
    if not isinstance(rows, list) or len(rows) != d:
        raise InputError(f"field 'matrix' must be a {d}x{d} array")
    mat = np.empty((d, d), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != d:
            raise InputError(f"field 'matrix' must be a {d}x{d} array")
        for j, cell in enumerate(row):
            if not isinstance(cell, dict) or "re" not in cell or "im" not in cell:
                raise InputError("matrix entries must be objects with 're' and 'im'")
            try:
                mat[i, j] = complex(float(cell["re"]), float(cell["im"]))
            except (TypeError, ValueError) as exc:
                raise InputError(f"bad matrix entry at ({i}, {j})") from exc
    if not np.all(np.isfinite(mat.view(np.float64))):
        raise InputError("matrix entries must be finite")
    defect = float(np.max(np.abs(mat - mat.conj().T)))
    if defect > LOAD_ATOL:
        raise InputError(f"matrix is not Hermitian (defect {defect:.3e})")
    trace = complex(mat.trace())
    if abs(trace - 1.0) > LOAD_ATOL:
        raise InputError(f"matrix trace {trace.real:.12g} is not 1")
    sym = 0.5 * (mat + mat.conj().T)
    vals, vecs = np.linalg.eigh(sym)
    if vals[0] < -LOAD_ATOL:
        raise NotPositiveSemidefinite(
            f"state is not positive semidefinite: min eigenvalue {vals[0]:.3e}"
        )
    vals = np.clip(vals, 0.0, None)
    vals /= vals.sum()
    return DensityMatrix((vecs * vals) @ vecs.conj().T, shape)


def load_state(path: str) -> DensityMatrix:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    return payload_to_state(payload)


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _build_state(args: argparse.Namespace, shape: SystemShape) -> DensityMatrix:
    kind = args.kind
    qubits = all(d == 2 for d in shape.dims)
    if kind in ("bell", "werner") and shape.dims != (2, 2):
        raise InputError(f"kind {kind!r} needs --dims 2x2, got {shape}")
    if kind in ("ghz", "w") and not (qubits and shape.num_subsystems >= 2):
        raise InputError(f"kind {kind!r} needs two or more qubits, got {shape}")
    if kind == "bell":
        return states.bell().density_matrix()
    if kind == "ghz":
        return states.ghz(shape.num_subsystems).density_matrix()
    if kind == "w":
        return states.w_state(shape.num_subsystems).density_matrix()
    if kind == "werner":
        if args.p is None:
            raise InputError("kind 'werner' needs --p")
        return states.werner(args.p)
    if kind == "maxmixed":
        return states.maximally_mixed(shape)
    return states.random_pure(shape, args.seed).density_matrix()


def _report_text(report: BoundsReport) -> str:
    lines = [f"shape: {'x'.join(str(d) for d in report.dims)}"]
    lines.append(f"purity: {_fmt(report.purity)}")
    for block, val in sorted(report.reduced_purities.items()):
        label = ",".join(str(i) for i in block)
        lines.append(f"reduced purity [{label}]: {_fmt(val)}")
    for name, val in report.upper.items():
        lines.append(f"upper {name}: {_fmt(val)}")
    for name, val in report.lower.items():
        lines.append(f"lower {name}: {_fmt(val)}")
    lines.append(f"offset: {_fmt(report.offset)}")
    if report.two_qubit is not None:
        for name, val in report.two_qubit.to_dict().items():
            lines.append(f"{name}: {_fmt(val)}")
    if report.entropy is not None:
        ent = report.entropy
        lines.append(
            "entropy triangle holds: "
            f"{str(ent.triangle_holds[0]).lower()} {str(ent.triangle_holds[1]).lower()}"
        )
        lines.append(
            f"entropy subadditivity holds: {str(ent.subadditivity_holds).lower()}"
        )
        lines.append(f"inverter trace: {_fmt(ent.inverter_trace)}")
        lines.append(f"inverter nonneg: {str(ent.inverter_nonneg).lower()}")
    return "\n".join(lines) + "\n"


def csv_lines(rows: Sequence[SampleRow]) -> list[str]:
    """Render sample rows; the extras column appears only when present."""
    with_extras = bool(rows) and rows[0].wootters_c_sq is not None
    header = "index,purity,lower,upper,offset"
    if with_extras:
        header += ",wootters_c_sq"
    lines = [header]
    for row in rows:
        cells = [
            str(row.index),
            _fmt(row.purity),
            _fmt(row.lower),
            _fmt(row.upper),
            _fmt(row.offset),
        ]
        if with_extras:
            cells.append(_fmt(row.wootters_c_sq))
        lines.append(",".join(cells))
    return lines


def _cmd_mkstate(args: argparse.Namespace) -> int:
    shape = SystemShape.parse(args.dims)
    rho = _build_state(args, shape)
    text = json.dumps(state_to_payload(rho), indent=2) + "\n"
    _write_text(args.out, text)
    return EXIT_OK


def _cmd_compute(args: argparse.Namespace) -> int:
    rho = load_state(args.state)
    report = bounds_report(rho)
    if args.format == "json":
        sys.stdout.write(json.dumps(report.to_dict(), indent=2) + "\n")
    else:
        sys.stdout.write(_report_text(report))
    return EXIT_OK


def _cmd_simulate(args: argparse.Namespace) -> int:
    shape = SystemShape.parse(args.dims)
    spec = EnsembleSpec(
        shape=shape, target_purity=args.purity, samples=args.samples, seed=args.seed
    )
    rows = simulate_batch(spec, workers=args.workers)
    _write_text(args.out, "\n".join(csv_lines(rows)) + "\n")
    lows = [r.lower for r in rows]
    highs = [r.upper for r in rows]
    offsets = [r.offset for r in rows]
    spread = max(offsets) - min(offsets)
    print(f"wrote {len(rows)} rows to {args.out}")
    print(f"lower in [{_fmt(min(lows))}, {_fmt(max(lows))}]")
    print(f"upper in [{_fmt(min(highs))}, {_fmt(max(highs))}]")
    print(f"offset {_fmt(offsets[0])} (spread {spread:.3e})")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    shape = SystemShape.parse(args.dims)
    failures = SUITES[args.suite](shape, args.samples, args.seed)
    if not failures:
        print(
            f"suite {args.suite}: PASS "
            f"(shape {shape}, samples {args.samples}, seed {args.seed})"
        )
        return EXIT_OK
    print(
        f"suite {args.suite}: FAIL, {len(failures)} check(s) failed; first:",
        file=sys.stderr,
    )
    print(f"  {failures[0]}", file=sys.stderr)
    return EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twocopy",
        description="Observable bounds on squared concurrence from two copies of a state.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    mk = sub.add_parser("mkstate", help="write a named state as a JSON state file")
    mk.add_argument(
        "kind", choices=["bell", "ghz", "w", "werner", "maxmixed", "random"]
    )
    mk.add_argument("--dims", required=True, help="subsystem dims, e.g. 2x2x2")
    mk.add_argument("--p", type=float, default=None, help="werner mixing weight")
    mk.add_argument("--seed", type=int, default=0, help="seed for kind 'random'")
    mk.add_argument("--out", default=None, help="output path (stdout if omitted)")
    mk.set_defaults(func=_cmd_mkstate)

    comp = sub.add_parser("compute", help="bound report for a state file")
    comp.add_argument("state", help="path to a JSON state file")
    comp.add_argument("--format", choices=["json", "text"], default="text")
    comp.set_defaults(func=_cmd_compute)

    sim = sub.add_parser("simulate", help="random-state scatter batch to CSV")
    sim.add_argument("--dims", required=True)
    sim.add_argument("--purity", type=float, required=True)
    sim.add_argument("--samples", type=int, default=1000)
    sim.add_argument("--seed", type=int, required=True)
    sim.add_argument("--out", required=True, help="CSV output path")
    sim.add_argument("--workers", type=int, default=1)
    sim.set_defaults(func=_cmd_simulate)

    ver = sub.add_parser("verify", help="run a numerical verification suite")
    ver.add_argument("--suite", choices=sorted(SUITES), required=True)
    ver.add_argument("--dims", required=True)
    ver.add_argument("--samples", type=int, default=1000)
    ver.add_argument("--seed", type=int, default=0)
    ver.set_defaults(func=_cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except NotPositiveSemidefinite as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNPHYSICAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
