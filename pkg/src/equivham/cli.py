"""Command-line front end.

Commands:
  closure    control-algebra dimension and distance of the desired Hamiltonian
  subspace   dimension of the eigenvector-stabilizing subspace
  solve      full synthesis; writes hamiltonian.json, result.json, frame.json
  fidelity   CSV fidelity curves for a stored Hamiltonian

Exit codes: 0 success, 2 bad input, 3 solve did not converge (artifacts are
still written), 4 infeasible stabilizer subspace.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .algebra import eigenvector_stabilizer_subspace, lie_closure, subspace_distance
from .dynamics import Schedule, fidelity_curve, sandwich_schedule
from .equivalence import build_frame
from .linalg import ValidationError, check_hermitian
from .presets import get_system
from .serialize import (
    candidate_to_json,
    dumps,
    frame_to_json,
    matrix_from_json,
    read_json,
    write_fidelity_csv,
    write_json,
)
from .synthesis import InfeasibleSubspaceError, OptimizerConfig, synthesize

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_UNCONVERGED = 3
EXIT_INFEASIBLE = 4


def _add_system_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", required=True,
                   help="chain preset (chain2..chain8) or path to a system JSON file")
    p.add_argument("--eta", type=float, default=0.95,
                   help="fraction of t0 spent under the internal Hamiltonian")
    p.add_argument("--t0", type=float, default=None,
                   help="total evolution time (default: pi/lambda for presets)")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0,
                   help="XY transfer rate of the chain presets")


def _add_solver_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--max-iters", type=int, default=2000)
    p.add_argument("--cost-tol", type=float, default=1e-8)
    p.add_argument("--phase-weight", type=float, default=0.5,
                   help="weight of the superposition phase-alignment term (0 disables)")


def _closure_report(system) -> dict:
    generators = [-1j * system.problem.H_int] + [-1j * C for C in system.controls]
    closure = lie_closure(generators)
    dist = subspace_distance(system.problem.H_d, closure)
    h_norm = float(np.linalg.norm(system.problem.H_d))
    report = {
        "algebra_dim": len(closure),
        "ambient_dim": system.problem.dim**2,
        "hxy_distance": dist,
        "hxy_distance_rel": dist / max(h_norm, 1e-300),
    }
    return report, closure


def cmd_closure(args) -> int:
    system = get_system(args.preset, eta=args.eta, t0=args.t0, lam=args.lam)
    report, _ = _closure_report(system)
    text = dumps(report)
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        write_json(Path(args.out) / "closure.json", report)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_subspace(args) -> int:
    system = get_system(args.preset, eta=args.eta, t0=args.t0, lam=args.lam)
    if system.stabilized_vector is None:
        print("system declares no stabilized vector", file=sys.stderr)
        return EXIT_BAD_INPUT
    report, closure = _closure_report(system)
    sub = eigenvector_stabilizer_subspace(closure, system.stabilized_vector)
    report = {
        "algebra_dim": report["algebra_dim"],
        "ambient_dim": report["ambient_dim"],
        "stabilizer_dim": len(sub),
    }
    text = dumps(report)
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        write_json(Path(args.out) / "subspace.json", report)
    sys.stdout.write(text)
    return EXIT_OK


def _result_payload(result, system, config) -> dict:
    return {
        "converged": bool(result.converged),
        "cost": float(result.cost),
        "iterations": int(result.iterations),
        "restart_index": int(result.restart_index),
        "closure_dim": int(result.closure_dim),
        "subspace_dim": int(result.subspace_dim),
        "metrics": {k: float(v) for k, v in result.metrics.items()},
        "trace": [[int(i), float(c)] for i, c in result.trace],
        "config": {
            "preset": system.name,
            "eta": system.problem.eta,
            "t0": system.problem.t0,
            "seed": config.seed,
            "restarts": config.restarts,
            "max_iters": config.max_iters,
            "cost_tol": config.cost_tol,
            "phase_weight": config.phase_weight,
        },
    }


def cmd_solve(args) -> int:
    system = get_system(args.preset, eta=args.eta, t0=args.t0, lam=args.lam)
    config = OptimizerConfig(
        max_iters=args.max_iters,
        cost_tol=args.cost_tol,
        restarts=args.restarts,
        seed=args.seed,
        phase_weight=args.phase_weight,
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    try:
        result = synthesize(
            system.problem,
            system.controls,
            stabilized_vector=system.stabilized_vector,
            config=config,
            transfer_pair=system.transfer_pair,
        )
    except InfeasibleSubspaceError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE

    frame = build_frame(system.problem)
    write_json(out / "hamiltonian.json", candidate_to_json(result.candidate, result.cost))
    write_json(out / "result.json", _result_payload(result, system, config))
    write_json(out / "frame.json", frame_to_json(frame))
    status = "converged" if result.converged else "did not converge"
    print(
        f"{system.name}: {status}; cost {result.cost:.3e} after "
        f"{result.iterations} iterations (restart {result.restart_index}); "
        f"artifacts in {out}"
    )
    return EXIT_OK if result.converged else EXIT_UNCONVERGED


def cmd_fidelity(args) -> int:
    system = get_system(args.preset, eta=args.eta, t0=args.t0, lam=args.lam)
    try:
        stored = read_json(args.hamiltonian)
        H_mid = check_hermitian(matrix_from_json(stored["H"]), "stored Hamiltonian")
    except (OSError, KeyError, ValidationError, ValueError) as exc:
        print(f"cannot read hamiltonian file: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    if system.psi_initial is None:
        print("fidelity curves need a preset with transfer states", file=sys.stderr)
        return EXIT_BAD_INPUT

    p = system.problem
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    psi0, target = system.psi_initial, system.psi_target
    curves = {
        "fidelity_schedule.csv": sandwich_schedule(p, H_mid),
        "fidelity_desired.csv": Schedule(((p.H_d, p.t0),)),
        "fidelity_internal.csv": Schedule(((p.H_int, p.t0),)),
    }
    for name, schedule in curves.items():
        pts = fidelity_curve(schedule, psi0, target, args.samples)
        write_fidelity_csv(out / name, pts)
    print(f"wrote {len(curves)} fidelity curves ({args.samples} samples each) to {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equivham",
        description="Equivalent-Hamiltonian synthesis for state transfer "
        "under partial control",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closure", help="control-algebra dimension report")
    _add_system_args(p)
    p.add_argument("--out", default=None, help="directory for closure.json")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("subspace", help="eigenvector-stabilizing subspace report")
    _add_system_args(p)
    p.add_argument("--out", default=None, help="directory for subspace.json")
    p.set_defaults(func=cmd_subspace)

    p = sub.add_parser("solve", help="synthesize an implementable Hamiltonian")
    _add_system_args(p)
    _add_solver_args(p)
    p.add_argument("--out", default="equivham-out", help="output directory")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("fidelity", help="fidelity curves for a stored Hamiltonian")
    _add_system_args(p)
    p.add_argument("--hamiltonian", required=True, help="path to hamiltonian.json")
    p.add_argument("--samples", type=int, default=401)
    p.add_argument("--out", default="equivham-out", help="output directory")
    p.set_defaults(func=cmd_fidelity)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
