"""Dense complex matrix algebra used throughout the package.

Everything here operates on plain square ``numpy`` arrays.  Matrices play one
of three roles (Hermitian, unitary, or general) and the ``check_*`` validators
enforce the corresponding structural tolerances; functions that require a role
call the validator on entry and raise :class:`ValidationError` with the number
that was violated.

Eigendecompositions of unitary (more generally normal) matrices are reduced to
Hermitian problems: the Hermitian part is diagonalized first and the
anti-Hermitian part is then diagonalized inside each degenerate eigenspace.
This gives a simultaneous orthonormal eigenbasis without a Schur
decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Relative tolerance for the Hermitian role check, max|A - A^dag| against
# max(1, ||A||_F).
HERMITIAN_RTOL = 1e-10
# Unitarity: ||A^dag A - I||_F <= UNITARY_TOL * dim.
UNITARY_TOL = 1e-9
# Two eigenvalues belong to one degeneracy block when their distance is below
# GROUPING_RTOL * max(1, ||A||_F).
GROUPING_RTOL = 1e-8
# Reconstruction tolerance for diagonalizations.
RECONSTRUCTION_TOL = 1e-9


class ValidationError(ValueError):
    """An input matrix or vector fails a structural tolerance check."""


def dagger(A: np.ndarray) -> np.ndarray:
    return A.conj().T


def commutator(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return A @ B - B @ A


def frobenius(A: np.ndarray) -> float:
    return float(np.linalg.norm(A))


def as_operator(A, name: str = "matrix") -> np.ndarray:
    """Coerce to a square complex matrix, validating shape."""
    M = np.asarray(A, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise ValidationError(f"{name} must be a square matrix, got shape {M.shape}")
    return M


def hs_inner(A: np.ndarray, B: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product trace(A^dag B)."""
    A = as_operator(A, "A")
    B = as_operator(B, "B")
    if A.shape != B.shape:
        raise ValidationError(f"dimension mismatch: {A.shape[0]} vs {B.shape[0]}")
    return complex(np.sum(A.conj() * B))


def check_hermitian(A: np.ndarray, name: str = "matrix") -> np.ndarray:
    A = as_operator(A, name)
    defect = float(np.max(np.abs(A - A.conj().T)))
    bound = HERMITIAN_RTOL * max(1.0, frobenius(A))
    if defect > bound:
        raise ValidationError(
            f"{name} is not Hermitian: max|A - A^dag| = {defect:.3e} exceeds "
            f"{HERMITIAN_RTOL:g} * max(1, ||A||_F) = {bound:.3e}"
        )
    return A


def check_skew_hermitian(S: np.ndarray, name: str = "matrix") -> np.ndarray:
    S = as_operator(S, name)
    defect = float(np.max(np.abs(S + S.conj().T)))
    bound = HERMITIAN_RTOL * max(1.0, frobenius(S))
    if defect > bound:
        raise ValidationError(
            f"{name} is not skew-Hermitian: max|S + S^dag| = {defect:.3e} exceeds "
            f"{HERMITIAN_RTOL:g} * max(1, ||S||_F) = {bound:.3e}"
        )
    return S


def check_unitary(W: np.ndarray, name: str = "matrix") -> np.ndarray:
    W = as_operator(W, name)
    d = W.shape[0]
    defect = float(np.linalg.norm(W.conj().T @ W - np.eye(d)))
    bound = UNITARY_TOL * d
    if defect > bound:
        raise ValidationError(
            f"{name} is not unitary: ||W^dag W - I||_F = {defect:.3e} exceeds "
            f"{UNITARY_TOL:g} * dim = {bound:.3e}"
        )
    return W


# ---------------------------------------------------------------------------
# degeneracy block structure


@dataclass(frozen=True)
class BlockStructure:
    """Ordered degeneracy blocks (value, size) of a diagonal matrix."""

    blocks: tuple[tuple[complex, int], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(size for _, size in self.blocks)

    @property
    def values(self) -> tuple[complex, ...]:
        return tuple(value for value, _ in self.blocks)

    @property
    def dim(self) -> int:
        return sum(self.sizes)

    def __len__(self) -> int:
        return len(self.blocks)

    def validate_distinct(self, tol: float) -> None:
        vals = self.values
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                if abs(vals[i] - vals[j]) <= tol:
                    raise ValidationError(
                        f"block values {vals[i]} and {vals[j]} are closer than "
                        f"the grouping tolerance {tol:g}"
                    )


def group_adjacent(values: np.ndarray, tol: float) -> BlockStructure:
    """Group an ordered value sequence into runs of near-equal entries.

    Consecutive values within ``tol`` of the running block are merged; the
    block value is the mean of its members.  The input order is preserved.
    """
    values = np.asarray(values)
    if values.ndim != 1 or values.size == 0:
        raise ValidationError("cannot group an empty value list")
    blocks: list[tuple[complex, int]] = []
    start = 0
    for i in range(1, values.size + 1):
        if i == values.size or abs(values[i] - values[i - 1]) > tol:
            blocks.append((complex(np.mean(values[start:i])), i - start))
            start = i
    return BlockStructure(tuple(blocks))


def block_slices(sizes) -> list[slice]:
    out = []
    off = 0
    for p in sizes:
        out.append(slice(off, off + p))
        off += p
    return out


def off_block_norm(X: np.ndarray, sizes) -> float:
    """Frobenius mass of X outside the given block-diagonal pattern.

    Summed directly over the off-block entries; subtracting the in-block mass
    from the total would cancel catastrophically for near-block matrices.
    """
    X = as_operator(X)
    if sum(sizes) != X.shape[0]:
        raise ValidationError(
            f"block sizes sum to {sum(sizes)} but the matrix has dim {X.shape[0]}"
        )
    rest = X.copy()
    for s in block_slices(sizes):
        rest[s, s] = 0.0
    return float(np.linalg.norm(rest))


def is_block_diagonal(X: np.ndarray, sizes, tol: float) -> bool:
    return off_block_norm(X, sizes) <= tol


def block_diagonal_part(X: np.ndarray, sizes) -> np.ndarray:
    out = np.zeros_like(X)
    for s in block_slices(sizes):
        out[s, s] = X[s, s]
    return out


# ---------------------------------------------------------------------------
# eigendecompositions


def eig_hermitian(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and orthonormal eigenvectors of Hermitian A.

    Returns ``(w, V)`` with ``A = V diag(w) V^dag``.
    """
    A = check_hermitian(A)
    w, V = np.linalg.eigh(A)
    return w[::-1].copy(), V[:, ::-1].copy()


@dataclass(frozen=True)
class Diagonalization:
    """A unitary eigendecomposition W = V diag(exp(i phases)) V^dag."""

    V: np.ndarray
    phases: np.ndarray
    blocks: BlockStructure

    @property
    def dim(self) -> int:
        return self.V.shape[0]

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.exp(1j * self.phases)

    def matrix(self) -> np.ndarray:
        return (self.V * self.eigenvalues) @ self.V.conj().T


def _simultaneous_eigenbasis(W: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenphases and eigenbasis of a unitary via two Hermitian problems.

    The Hermitian part carries cos(phase); the anti-Hermitian part is
    diagonalized within each of its degenerate eigenspaces to resolve sin.
    """
    d = W.shape[0]
    C = 0.5 * (W + W.conj().T)
    S = (W - W.conj().T) / 2j
    c, Q = np.linalg.eigh(C)
    tol = GROUPING_RTOL * max(1.0, float(np.linalg.norm(C)))

    phases = np.empty(d)
    V = np.empty((d, d), dtype=np.complex128)
    i = 0
    while i < d:
        j = i
        while j + 1 < d and abs(c[j + 1] - c[i]) <= tol:
            j += 1
        if j == i:
            col = Q[:, i]
            s = float(np.real(col.conj() @ (S @ col)))
            V[:, i] = col
            phases[i] = np.arctan2(s, c[i])
        else:
            P = Q[:, i : j + 1]
            s, R = np.linalg.eigh(P.conj().T @ S @ P)
            V[:, i : j + 1] = P @ R
            phases[i : j + 1] = np.arctan2(s, c[i])
        i = j + 1
    return phases, V


def eig_unitary(W: np.ndarray) -> Diagonalization:
    """Diagonalize a unitary matrix.

    Phases live in (-pi, pi]; a phase within the grouping tolerance of -pi is
    pushed to the +pi side so the branch cut is deterministic.  Columns are
    ordered by descending phase (ties keep their pre-sort order) and the block
    structure groups eigenvalues closer than the grouping tolerance.
    """
    W = check_unitary(W)
    d = W.shape[0]
    phases, V = _simultaneous_eigenbasis(W)

    tol = GROUPING_RTOL * max(1.0, float(np.sqrt(d)))
    near_cut = phases <= (-np.pi + tol)
    phases = np.where(near_cut, phases + 2 * np.pi, phases)

    order = np.argsort(-phases, kind="stable")
    phases = phases[order]
    V = V[:, order]

    # group by chord distance between the unit-circle eigenvalues
    eigs = np.exp(1j * phases)
    blocks: list[tuple[complex, int]] = []
    start = 0
    for i in range(1, d + 1):
        if i == d or abs(eigs[i] - eigs[i - 1]) > tol:
            mean_phase = float(np.mean(phases[start:i]))
            blocks.append((complex(np.exp(1j * mean_phase)), i - start))
            start = i
    return Diagonalization(V=V, phases=phases, blocks=BlockStructure(tuple(blocks)))


def exp_skew_hermitian(S: np.ndarray) -> np.ndarray:
    """Unitary exponential exp(S) of a skew-Hermitian matrix.

    Computed through the eigendecomposition of the Hermitian matrix iS.
    """
    S = check_skew_hermitian(S)
    w, V = np.linalg.eigh(1j * S)
    return (V * np.exp(-1j * w)) @ V.conj().T
