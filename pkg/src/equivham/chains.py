"""Spin-chain operator builders for the worked example systems.

Conventions: spin up is the +1 eigenstate of Pauli Z and maps to the |0>
computational component; site 1 is the leftmost tensor factor, i.e. the most
significant bit of the basis index.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .linalg import ValidationError

SIGMA = {
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}
IDENTITY_2 = np.eye(2, dtype=np.complex128)


@dataclass(frozen=True)
class ChainSpec:
    """Chain length, dipolar coupling prefactor, and XY transfer rate."""

    n_qubits: int
    coupling_scale: float = 1.0
    lam: float = 1.0

    def __post_init__(self):
        if not 2 <= self.n_qubits <= 8:
            raise ValidationError(
                f"n_qubits must lie in [2, 8] for dense matrices, got {self.n_qubits}"
            )
        if self.coupling_scale <= 0:
            raise ValidationError("coupling_scale must be positive")
        if self.lam <= 0:
            raise ValidationError("lambda must be positive")

    @property
    def dim(self) -> int:
        return 2**self.n_qubits


def _kron_chain(ops) -> np.ndarray:
    return reduce(np.kron, ops)


def pauli_on(axis: str, site: int, n: int) -> np.ndarray:
    """Pauli operator on one site of an n-qubit register."""
    axis = axis.upper()
    if axis not in SIGMA:
        raise ValidationError(f"axis must be X, Y or Z, got {axis!r}")
    if not 1 <= site <= n:
        raise ValidationError(f"site {site} outside 1..{n}")
    ops = [IDENTITY_2] * n
    ops[site - 1] = SIGMA[axis]
    return _kron_chain(ops)


def global_control(axis: str, n: int) -> np.ndarray:
    """Uniform global rotation generator, the sum of one Pauli on every site."""
    axis = axis.upper()
    if axis not in ("X", "Y"):
        raise ValidationError(f"global controls are X or Y rotations, got {axis!r}")
    H = np.zeros((2**n, 2**n), dtype=np.complex128)
    for k in range(1, n + 1):
        H += pauli_on(axis, k, n)
    return H


def dipolar_hamiltonian(spec: ChainSpec) -> np.ndarray:
    """All-to-all dipolar coupling, falling off as inverse distance cubed.

    Each pair contributes J_kl (XX + YY - 2 ZZ) with J_kl proportional to
    |k - l|^-3; the proportionality constant is ``spec.coupling_scale``.
    """
    n = spec.n_qubits
    H = np.zeros((spec.dim, spec.dim), dtype=np.complex128)
    for k in range(1, n + 1):
        for l in range(k + 1, n + 1):
            J = spec.coupling_scale / abs(k - l) ** 3
            H += J * (
                pauli_on("X", k, n) @ pauli_on("X", l, n)
                + pauli_on("Y", k, n) @ pauli_on("Y", l, n)
                - 2.0 * pauli_on("Z", k, n) @ pauli_on("Z", l, n)
            )
    return H


def christandl_couplings(n: int, lam: float = 1.0) -> np.ndarray:
    """Engineered nearest-neighbour couplings (lam/2) sqrt(k (n - k))."""
    k = np.arange(1, n)
    return 0.5 * lam * np.sqrt(k * (n - k))


def xy_christandl(spec: ChainSpec) -> np.ndarray:
    """Nearest-neighbour XY chain with engineered perfect-transfer couplings.

    The bond operator is (XX + YY) / 2, so the single-excitation hopping
    element equals the coupling itself and end-to-end transfer is perfect at
    t = pi / lam for any chain length.
    """
    n = spec.n_qubits
    H = np.zeros((spec.dim, spec.dim), dtype=np.complex128)
    for k, c in enumerate(christandl_couplings(n, spec.lam), start=1):
        H += c * 0.5 * (
            pauli_on("X", k, n) @ pauli_on("X", k + 1, n)
            + pauli_on("Y", k, n) @ pauli_on("Y", k + 1, n)
        )
    return H


def total_z(n: int) -> np.ndarray:
    """Excitation-counting operator, the sum of Z on every site."""
    H = np.zeros((2**n, 2**n), dtype=np.complex128)
    for k in range(1, n + 1):
        H += pauli_on("Z", k, n)
    return H


_SPIN_CHARS = {"u": 0, "d": 1}


def basis_state(pattern) -> np.ndarray:
    """Computational basis vector from a spin pattern.

    ``pattern`` is a string like ``"uddd"`` or an iterable of ``"up"`` /
    ``"down"`` labels; up occupies the |0> component of its site.
    """
    if isinstance(pattern, str):
        labels = list(pattern)
    else:
        labels = [str(p) for p in pattern]
    if not labels:
        raise ValidationError("spin pattern is empty")
    idx = 0
    for lab in labels:
        key = lab.strip().lower()[:1]
        if key not in _SPIN_CHARS:
            raise ValidationError(f"unknown spin label {lab!r}; use 'up' or 'down'")
        idx = 2 * idx + _SPIN_CHARS[key]
    v = np.zeros(2 ** len(labels), dtype=np.complex128)
    v[idx] = 1.0
    return v
