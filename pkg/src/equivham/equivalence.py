"""Characterization of the evolutions equivalent to a desired one on a fixed state.

Given an initial state, a desired Hamiltonian, the always-on internal
Hamiltonian, a total time and a drift fraction, the frame built here reduces
"which unitaries perform the same state-to-state map" to block-unitary
coordinates: the full set is a two-sided translate of the block-diagonal
unitary group matching the state's eigenvalue degeneracies.  Hamiltonians
performing the map are obtained from matrix logarithms of those unitaries,
parameterized by the choice of diagonalization, integer branch shifts, and a
centralizer factor; a commutation criterion decides which branches are
Hermitian.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    BlockStructure,
    Diagonalization,
    ValidationError,
    as_operator,
    block_diagonal_part,
    check_hermitian,
    check_unitary,
    eig_hermitian,
    eig_unitary,
    frobenius,
    group_adjacent,
    off_block_norm,
    GROUPING_RTOL,
    RECONSTRUCTION_TOL,
)

# A unitary belongs to the equivalent set when the off-block Frobenius mass of
# its block coordinates is below MEMBERSHIP_TOL * sqrt(dim).
MEMBERSHIP_TOL = 1e-8
# Centralizer factors must commute with the eigenvalue diagonal to this
# relative tolerance, and the Hermiticity criterion uses the same bound.
CENTRALIZER_TOL = 1e-9


@dataclass(frozen=True)
class Problem:
    """State-transfer task: reproduce exp(-i t0 H_d) on rho_i using controls.

    ``eta`` is the fraction of the total time spent under the internal
    Hamiltonian (split evenly around the control window).
    """

    rho_i: np.ndarray
    H_d: np.ndarray
    H_int: np.ndarray
    t0: float
    eta: float

    def __post_init__(self):
        rho = check_hermitian(self.rho_i, "rho_i")
        H_d = check_hermitian(self.H_d, "H_d")
        H_int = check_hermitian(self.H_int, "H_int")
        if not rho.shape == H_d.shape == H_int.shape:
            raise ValidationError("rho_i, H_d and H_int must share one dimension")
        tr = complex(np.trace(rho))
        if abs(tr - 1.0) > 1e-10:
            raise ValidationError(f"rho_i must have unit trace, got {tr:.12g}")
        evals = np.linalg.eigvalsh(rho)
        if evals.min() < -1e-10:
            raise ValidationError(
                f"rho_i must be positive semidefinite, min eigenvalue {evals.min():.3e}"
            )
        if not self.t0 > 0:
            raise ValidationError("t0 must be positive")
        if not 0.0 <= self.eta < 1.0:
            raise ValidationError("eta must lie in [0, 1)")
        object.__setattr__(self, "rho_i", rho)
        object.__setattr__(self, "H_d", H_d)
        object.__setattr__(self, "H_int", H_int)

    @property
    def dim(self) -> int:
        return self.rho_i.shape[0]

    @property
    def control_time(self) -> float:
        return (1.0 - self.eta) * self.t0

    @property
    def drift_time(self) -> float:
        return self.eta * self.t0


def _evolution(H: np.ndarray, t: float) -> np.ndarray:
    w, V = np.linalg.eigh(H)
    return (V * np.exp(-1j * t * w)) @ V.conj().T


def desired_unitary(problem: Problem) -> np.ndarray:
    """The target evolution exp(-i t0 H_d)."""
    return _evolution(problem.H_d, problem.t0)


@dataclass(frozen=True)
class EquivalenceFrame:
    """Block-unitary coordinates for the set of equivalent evolutions.

    ``U_minus`` diagonalizes the pre-control state and ``U_plus`` the
    post-control state to the same descending diagonal, whose degeneracy
    blocks are recorded in ``D``.
    """

    problem: Problem
    U_int: np.ndarray
    U_minus: np.ndarray
    U_plus: np.ndarray
    D: BlockStructure
    rho_minus: np.ndarray
    rho_plus: np.ndarray

    @property
    def dim(self) -> int:
        return self.problem.dim

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return self.D.sizes

    @property
    def block_dimension(self) -> int:
        """Real manifold dimension of the block-unitary freedom."""
        return int(sum(p * p for p in self.D.sizes))

    def eigenvalues(self) -> np.ndarray:
        return np.concatenate(
            [np.full(size, value.real) for value, size in self.D.blocks]
        )


def build_frame(problem: Problem) -> EquivalenceFrame:
    """Diagonalize the pre- and post-control states to a common diagonal."""
    U_d = desired_unitary(problem)
    rho_f = U_d @ problem.rho_i @ U_d.conj().T
    U_int = _evolution(problem.H_int, 0.5 * problem.drift_time)
    rho_minus = U_int @ problem.rho_i @ U_int.conj().T
    rho_plus = U_int.conj().T @ rho_f @ U_int

    evals, U_minus = eig_hermitian(rho_minus)
    tol = GROUPING_RTOL * max(1.0, float(np.linalg.norm(evals)))
    D = group_adjacent(evals, tol)
    U_plus = U_int.conj().T @ U_d @ U_int.conj().T @ U_minus
    return EquivalenceFrame(
        problem=problem,
        U_int=U_int,
        U_minus=U_minus,
        U_plus=U_plus,
        D=D,
        rho_minus=rho_minus,
        rho_plus=rho_plus,
    )


def block_coordinates(frame: EquivalenceFrame, W: np.ndarray) -> np.ndarray:
    """Coordinates U_plus^dag W U_minus in which membership means block-diagonal."""
    W = as_operator(W, "W")
    if W.shape[0] != frame.dim:
        raise ValidationError(f"W has dim {W.shape[0]}, frame has dim {frame.dim}")
    return frame.U_plus.conj().T @ W @ frame.U_minus


def membership_defect(frame: EquivalenceFrame, W: np.ndarray) -> float:
    """Off-block Frobenius mass of W in frame coordinates; 0 means member."""
    return off_block_norm(block_coordinates(frame, W), frame.block_sizes)


def in_equivalent_set(
    frame: EquivalenceFrame, W: np.ndarray, tol: float = MEMBERSHIP_TOL
) -> bool:
    return membership_defect(frame, W) <= tol * np.sqrt(frame.dim)


def equivalent_unitary(frame: EquivalenceFrame, block_unitary: np.ndarray) -> np.ndarray:
    """Member U_plus @ block_unitary @ U_minus^dag of the equivalent-unitary set.

    ``block_unitary`` must be unitary and block-diagonal with respect to the
    frame's degeneracy structure.
    """
    U = check_unitary(block_unitary, "block_unitary")
    if U.shape[0] != frame.dim:
        raise ValidationError(f"block unitary has dim {U.shape[0]}, expected {frame.dim}")
    defect = off_block_norm(U, frame.block_sizes)
    if defect > MEMBERSHIP_TOL * np.sqrt(frame.dim):
        raise ValidationError(
            f"block unitary has off-block mass {defect:.3e}, exceeding "
            f"{MEMBERSHIP_TOL:g} * sqrt(dim); it does not conform to blocks "
            f"{frame.block_sizes}"
        )
    return frame.U_plus @ U @ frame.U_minus.conj().T


@dataclass(frozen=True)
class HamiltonianCandidate:
    """One Hamiltonian performing the map, with the freedoms that generated it.

    ``H`` realizes the candidate; ``hermitian`` records whether the chosen
    branch and centralizer factor produce a Hermitian matrix (the commutation
    criterion), in which case exp(-i control_time H) is the chosen unitary.
    """

    H: np.ndarray
    hermitian: bool
    k: np.ndarray
    block_unitary: np.ndarray
    diag: Diagonalization
    centralizer_factor: np.ndarray


def _require_member(frame: EquivalenceFrame, W: np.ndarray) -> np.ndarray:
    W = check_unitary(W, "W")
    defect = membership_defect(frame, W)
    if defect > MEMBERSHIP_TOL * np.sqrt(frame.dim):
        raise ValidationError(
            f"W is not in the equivalent-unitary set: off-block mass "
            f"{defect:.3e} exceeds {MEMBERSHIP_TOL:g} * sqrt(dim)"
        )
    return W


def principal_hamiltonian(frame: EquivalenceFrame, W: np.ndarray) -> HamiltonianCandidate:
    """Hamiltonian from the principal logarithm of a member unitary.

    All freedoms sit at their simple values: zero branch shifts, identity
    centralizer factor, solver-chosen diagonalization.
    """
    W = _require_member(frame, W)
    diag = eig_unitary(W)
    tau = frame.problem.control_time
    H = (diag.V * (-diag.phases / tau)) @ diag.V.conj().T
    coords = block_diagonal_part(block_coordinates(frame, W), frame.block_sizes)
    return HamiltonianCandidate(
        H=H,
        hermitian=True,
        k=np.zeros(frame.dim, dtype=int),
        block_unitary=coords,
        diag=diag,
        centralizer_factor=np.eye(frame.dim, dtype=np.complex128),
    )


def branch_hamiltonian(
    frame: EquivalenceFrame,
    W: np.ndarray,
    diag: Diagonalization | None = None,
    k=None,
    centralizer_factor: np.ndarray | None = None,
) -> HamiltonianCandidate:
    """Hamiltonian candidate from an explicit logarithm choice.

    The candidate matrix is (1/control_time) V X diag(-phase + 2 pi k) X^-1
    V^dag for a diagonalization (V, phases) of W and an invertible X commuting
    with the eigenvalue diagonal.  The ``hermitian`` flag is set by the
    commutation criterion [X^dag X, diag(-phase + 2 pi k)] = 0, which holds
    exactly when the matrix is Hermitian.
    """
    W = _require_member(frame, W)
    d = frame.dim
    if diag is None:
        diag = eig_unitary(W)
    else:
        recon = float(np.linalg.norm(diag.matrix() - W))
        if recon > RECONSTRUCTION_TOL * max(1.0, frobenius(W)):
            raise ValidationError(
                f"diagonalization does not reconstruct W: error {recon:.3e} "
                f"exceeds {RECONSTRUCTION_TOL:g} * max(1, ||W||_F)"
            )
    k = np.zeros(d, dtype=int) if k is None else np.asarray(k, dtype=int)
    if k.shape != (d,):
        raise ValidationError(f"k must hold {d} integers, got shape {k.shape}")
    if centralizer_factor is None:
        X = np.eye(d, dtype=np.complex128)
    else:
        X = as_operator(centralizer_factor, "centralizer_factor")
        T = np.diag(diag.eigenvalues)
        comm = X @ T - T @ X
        bound = CENTRALIZER_TOL * max(1.0, frobenius(X))
        if float(np.linalg.norm(comm)) > bound:
            raise ValidationError(
                f"centralizer factor does not commute with the eigenvalue "
                f"diagonal: ||[X, T]||_F = {np.linalg.norm(comm):.3e} exceeds "
                f"{bound:.3e}"
            )

    lam = -diag.phases + 2.0 * np.pi * k
    try:
        inner = np.linalg.solve(X.T, (X * lam).T).T  # X diag(lam) X^-1
    except np.linalg.LinAlgError as exc:
        raise ValidationError("centralizer factor is singular") from exc
    tau = frame.problem.control_time
    H = (diag.V @ inner @ diag.V.conj().T) / tau

    gram = X.conj().T @ X
    comm = gram * lam - lam[:, None] * gram
    hermitian = bool(
        float(np.linalg.norm(comm))
        <= CENTRALIZER_TOL * max(1.0, frobenius(gram) * float(np.max(np.abs(lam), initial=1.0)))
    )
    coords = block_diagonal_part(block_coordinates(frame, W), frame.block_sizes)
    return HamiltonianCandidate(
        H=H,
        hermitian=hermitian,
        k=k,
        block_unitary=coords,
        diag=diag,
        centralizer_factor=X,
    )


def rediagonalize(
    diag: Diagonalization, block_unitary: np.ndarray, perm
) -> Diagonalization:
    """Another diagonalization of the same unitary.

    Any two diagonalizations differ by a unitary conforming to the phase
    degeneracy blocks followed by a permutation; this applies one such pair.
    ``perm`` lists the column of the input placed at each output position.
    """
    d = diag.dim
    U = check_unitary(block_unitary, "block_unitary")
    if U.shape[0] != d:
        raise ValidationError(f"block unitary has dim {U.shape[0]}, expected {d}")
    defect = off_block_norm(U, diag.blocks.sizes)
    if defect > MEMBERSHIP_TOL * np.sqrt(d):
        raise ValidationError(
            f"block unitary does not conform to the phase blocks "
            f"{diag.blocks.sizes}: off-block mass {defect:.3e}"
        )
    perm = np.asarray(perm, dtype=int)
    if sorted(perm.tolist()) != list(range(d)):
        raise ValidationError(f"perm must be a permutation of 0..{d - 1}")

    V_new = (diag.V @ U)[:, perm]
    phases_new = diag.phases[perm]
    tol = GROUPING_RTOL * max(1.0, float(np.sqrt(d)))
    eigs = np.exp(1j * phases_new)
    blocks: list[tuple[complex, int]] = []
    start = 0
    for i in range(1, d + 1):
        if i == d or abs(eigs[i] - eigs[i - 1]) > tol:
            blocks.append(
                (complex(np.exp(1j * float(np.mean(phases_new[start:i])))), i - start)
            )
            start = i
    return Diagonalization(V=V_new, phases=phases_new, blocks=BlockStructure(tuple(blocks)))
