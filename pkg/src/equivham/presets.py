"""Ready-made transfer problems: spin-chain presets and custom system files.

A preset named ``chainN`` (N in 2..8) is the end-to-end transfer task: dipolar
internal Hamiltonian, global X/Y controls, engineered XY chain as the desired
Hamiltonian, one excitation entering at site 1 and leaving at site N, and the
all-down state stabilized so superpositions with the vacuum transfer intact.

Custom systems load from JSON: {"H_int": matrix, "controls": [matrix, ...],
"H_d": matrix, "rho_i": matrix, "stabilized_vector": vector or null}.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .chains import (
    ChainSpec,
    basis_state,
    dipolar_hamiltonian,
    global_control,
    xy_christandl,
)
from .equivalence import Problem
from .linalg import ValidationError
from .serialize import matrix_from_json, read_json, vector_from_json

DEFAULT_ETA = 0.95


@dataclass(frozen=True)
class System:
    """A transfer problem bundled with its controls and states of interest."""

    name: str
    problem: Problem
    controls: tuple[np.ndarray, ...]
    stabilized_vector: np.ndarray | None
    psi_initial: np.ndarray | None
    psi_target: np.ndarray | None

    @property
    def transfer_pair(self):
        if self.psi_initial is None or self.psi_target is None:
            return None
        return (self.psi_initial, self.psi_target)


_CHAIN_RE = re.compile(r"^chain(\d+)$")


def chain_system(
    name_or_spec,
    eta: float = DEFAULT_ETA,
    t0: float | None = None,
    lam: float = 1.0,
    coupling_scale: float = 1.0,
) -> System:
    """Build the transfer problem for a chain preset.

    ``t0`` defaults to pi / lambda, the perfect-transfer time of the desired
    XY chain.
    """
    if isinstance(name_or_spec, ChainSpec):
        spec = name_or_spec
        name = f"chain{spec.n_qubits}"
    else:
        m = _CHAIN_RE.match(str(name_or_spec).strip().lower())
        if not m:
            raise ValidationError(
                f"unknown preset {name_or_spec!r}; expected chain2..chain8"
            )
        spec = ChainSpec(
            n_qubits=int(m.group(1)), coupling_scale=coupling_scale, lam=lam
        )
        name = f"chain{spec.n_qubits}"
    n = spec.n_qubits
    if t0 is None:
        t0 = np.pi / spec.lam

    psi_initial = basis_state("u" + "d" * (n - 1))
    psi_target = basis_state("d" * (n - 1) + "u")
    rho_i = np.outer(psi_initial, psi_initial.conj())
    problem = Problem(
        rho_i=rho_i,
        H_d=xy_christandl(spec),
        H_int=dipolar_hamiltonian(spec),
        t0=float(t0),
        eta=float(eta),
    )
    return System(
        name=name,
        problem=problem,
        controls=(global_control("X", n), global_control("Y", n)),
        stabilized_vector=basis_state("d" * n),
        psi_initial=psi_initial,
        psi_target=psi_target,
    )


def load_system(path, eta: float = DEFAULT_ETA, t0: float | None = None) -> System:
    """Load a custom system description from a JSON file."""
    obj = read_json(Path(path))
    try:
        H_int = matrix_from_json(obj["H_int"])
        H_d = matrix_from_json(obj["H_d"])
        rho_i = matrix_from_json(obj["rho_i"])
        controls = tuple(matrix_from_json(c) for c in obj["controls"])
    except KeyError as exc:
        raise ValidationError(f"system file is missing key {exc}") from exc
    stabilized = obj.get("stabilized_vector")
    stabilized_vector = None if stabilized is None else vector_from_json(stabilized)
    if t0 is None:
        t0 = np.pi
    problem = Problem(rho_i=rho_i, H_d=H_d, H_int=H_int, t0=float(t0), eta=float(eta))
    return System(
        name=Path(path).stem,
        problem=problem,
        controls=controls,
        stabilized_vector=stabilized_vector,
        psi_initial=None,
        psi_target=None,
    )


def get_system(
    preset_or_path,
    eta: float = DEFAULT_ETA,
    t0: float | None = None,
    lam: float = 1.0,
) -> System:
    """Resolve a preset name or a path to a system JSON file."""
    text = str(preset_or_path)
    if _CHAIN_RE.match(text.strip().lower()):
        return chain_system(text, eta=eta, t0=t0, lam=lam)
    path = Path(text)
    if path.exists():
        return load_system(path, eta=eta, t0=t0)
    raise ValidationError(
        f"{preset_or_path!r} is neither a chain preset nor an existing file"
    )
