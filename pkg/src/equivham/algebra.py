"""Control Lie algebra machinery.

A space of skew-Hermitian matrices is represented by an orthonormal basis
under the real Hilbert-Schmidt inner product Re trace(A^dag B).  The closure
routine grows such a basis by nested commutators until no commutator leaves
the span; further routines carve out the subspace whose members share a fixed
eigenvector and project Hermitian operators onto i times a subspace.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .linalg import (
    ValidationError,
    as_operator,
    check_hermitian,
    check_skew_hermitian,
    frobenius,
)

# Default relative rank tolerance: a commutator counts as a new direction when
# its component orthogonal to the current span exceeds RANK_TOL times its norm.
RANK_TOL = 1e-9
# Commutators smaller than NOISE_FLOOR times the product of the pair norms are
# treated as vanishing brackets: their computed entries are pure cancellation
# residue, and residue is generically orthogonal to the span, so without the
# floor it would register as new directions (observed up to ~3e-11 for
# unit-norm 32x32 pairs).
NOISE_FLOOR = 1e-8
# Singular values below NULL_TOL * max(1, s_max) count as null directions.
NULL_TOL = 1e-9


def real_components(A: np.ndarray) -> np.ndarray:
    """Flatten a complex matrix to a real vector preserving the real HS norm."""
    return np.concatenate([A.real.ravel(), A.imag.ravel()])


def matrix_from_components(v: np.ndarray, d: int) -> np.ndarray:
    return (v[: d * d] + 1j * v[d * d :]).reshape(d, d)


@dataclass(frozen=True)
class AlgebraBasis:
    """Orthonormal basis of a real space of skew-Hermitian matrices."""

    dim: int
    elements: tuple[np.ndarray, ...]

    def __post_init__(self):
        for E in self.elements:
            check_skew_hermitian(E, "basis element")
            if E.shape[0] != self.dim:
                raise ValidationError(
                    f"basis element has dim {E.shape[0]}, expected {self.dim}"
                )
        if len(self.elements) > self.dim**2:
            raise ValidationError(
                f"{len(self.elements)} elements exceed the ambient real "
                f"dimension {self.dim**2}"
            )

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def component_stack(self) -> np.ndarray:
        """Row-stacked real component vectors of the basis elements."""
        if not self.elements:
            return np.zeros((0, 2 * self.dim**2))
        return np.array([real_components(E) for E in self.elements])

    def gram(self) -> np.ndarray:
        S = self.component_stack
        return S @ S.T

    def contains(self, A: np.ndarray, tol: float = 1e-8) -> bool:
        """Whether A lies in the span, relative to its own norm."""
        v = real_components(as_operator(A))
        S = self.component_stack
        r = v - S.T @ (S @ v)
        return float(np.linalg.norm(r)) <= tol * max(frobenius(A), 1e-300)


def _orthonormalize_rows(
    stack: np.ndarray, count: int, v: np.ndarray
) -> tuple[np.ndarray, float]:
    """Component of v orthogonal to the first ``count`` rows, with re-pass."""
    S = stack[:count]
    r = v - S.T @ (S @ v)
    r -= S.T @ (S @ r)
    return r, float(np.linalg.norm(r))


def lie_closure(
    generators,
    rank_tol: float = RANK_TOL,
    noise_floor: float = NOISE_FLOOR,
    max_dim: int | None = None,
) -> AlgebraBasis:
    """Smallest real Lie algebra of skew-Hermitian matrices containing the generators.

    The basis starts from the generators (orthonormalized in input order) and
    grows by commutating every pair of basis elements; each commutator is
    orthogonalized against the basis (modified Gram-Schmidt with one
    re-orthogonalization pass) and appended, normalized, when the residual
    exceeds ``rank_tol`` times the commutator norm.  Commutators of unit-norm
    pairs whose norm falls below ``noise_floor`` are treated as exact zeros.
    Passes repeat until one adds nothing.  Element order is deterministic:
    generators first, then new directions in generation order.
    """
    gens = [check_skew_hermitian(g, "generator") for g in generators]
    if not gens:
        raise ValidationError("generator list is empty")
    d = gens[0].shape[0]
    for g in gens:
        if g.shape[0] != d:
            raise ValidationError(
                f"generator dims differ: {g.shape[0]} vs {d}"
            )
    if rank_tol <= 0:
        raise ValidationError("rank_tol must be positive")
    cap = d * d if max_dim is None else min(max_dim, d * d)

    size = min(256, cap)
    stack = np.zeros((size, 2 * d * d))
    mats = np.zeros((size, d, d), dtype=np.complex128)
    count = 0

    def grow() -> None:
        nonlocal stack, mats, size
        size = min(2 * size, cap)
        stack = np.vstack([stack, np.zeros((size - stack.shape[0], 2 * d * d))])
        mats = np.concatenate(
            [mats, np.zeros((size - mats.shape[0], d, d), dtype=np.complex128)]
        )

    def insert(v: np.ndarray, scale: float) -> None:
        nonlocal count
        r, rn = _orthonormalize_rows(stack, count, v)
        if rn <= rank_tol * scale or count >= cap:
            return
        if count == size:
            grow()
        # a barely-accepted residual is the difference of near-parallel
        # vectors, so its direction carries relative error eps * |v| / |r|;
        # re-orthogonalizing after normalization keeps the basis orthonormal
        # at working precision instead of letting that error accumulate
        r, rn = _orthonormalize_rows(stack, count, r / rn)
        M = matrix_from_components(r / rn, d)
        # commutators of skew-Hermitian matrices are skew-Hermitian up to
        # roundoff; snapping keeps the invariant exact without breaking
        # orthogonality (the basis already lies in the skew subspace)
        M = 0.5 * (M - M.conj().T)
        M /= frobenius(M)
        stack[count] = real_components(M)
        mats[count] = M
        count += 1

    for g in gens:
        nrm = frobenius(g)
        if nrm > 0.0:
            insert(real_components(g), nrm)

    processed = 0
    while processed < count:
        frontier = count
        for i in range(frontier):
            lo = max(i + 1, processed)
            if lo >= frontier:
                continue
            A = mats[i]
            batch = mats[lo:frontier]
            comms = A @ batch - batch @ A
            vs = comms.reshape(len(comms), -1)
            vecs = np.concatenate([vs.real, vs.imag], axis=1)
            norms = np.linalg.norm(vecs, axis=1)
            # bulk projection against the pre-batch basis, then finish each
            # candidate sequentially against rows added within this batch
            base = count
            S = stack[:base]
            vecs = vecs - (vecs @ S.T) @ S
            vecs -= (vecs @ S.T) @ S
            for v, nrm in zip(vecs, norms):
                if nrm <= noise_floor:
                    continue
                if count > base:
                    T = stack[base:count]
                    v = v - T.T @ (T @ v)
                    v -= T.T @ (T @ v)
                rn = float(np.linalg.norm(v))
                if rn > rank_tol * nrm and count < cap:
                    insert(v, nrm)
        processed = frontier

    return AlgebraBasis(dim=d, elements=tuple(mats[i].copy() for i in range(count)))


def eigenvector_stabilizer_subspace(
    basis: AlgebraBasis, v: np.ndarray, null_tol: float = NULL_TOL
) -> AlgebraBasis:
    """Subspace of span(basis) whose members have v as an eigenvector.

    The condition (I - v v^dag) A v = 0 is linear in the basis coordinates;
    the returned orthonormal basis spans the null space of that map.
    """
    v = np.asarray(v, dtype=np.complex128).ravel()
    if v.shape[0] != basis.dim:
        raise ValidationError(
            f"vector has dim {v.shape[0]}, basis has dim {basis.dim}"
        )
    nrm = float(np.linalg.norm(v))
    if nrm == 0.0:
        raise ValidationError("stabilized vector must be nonzero")
    v = v / nrm

    if len(basis) == 0:
        return AlgebraBasis(dim=basis.dim, elements=())

    cols = []
    for A in basis.elements:
        w = A @ v
        w = w - (v.conj() @ w) * v
        cols.append(np.concatenate([w.real, w.imag]))
    M = np.array(cols).T  # (2d, n) real linear map on coordinates

    _, s, vh = np.linalg.svd(M)
    cutoff = null_tol * max(1.0, float(s[0]) if s.size else 1.0)
    keep = np.zeros(M.shape[1], dtype=bool)
    keep[: s.size] = s <= cutoff
    keep[s.size :] = True
    rows = vh[keep]

    # coordinate isometry: orthonormal coefficient vectors against an
    # orthonormal matrix basis yield orthonormal matrices
    elements = tuple(
        np.tensordot(row, np.stack(basis.elements), axes=(0, 0)) for row in rows
    )
    return AlgebraBasis(dim=basis.dim, elements=elements)


def hs_project(H: np.ndarray, subspace: AlgebraBasis) -> np.ndarray:
    """Orthogonal projection of Hermitian H onto i * span(subspace).

    Uses the real Hilbert-Schmidt inner product; the elements i*A_k form an
    orthonormal basis of the target space of Hermitian matrices.
    """
    H = check_hermitian(H)
    if H.shape[0] != subspace.dim:
        raise ValidationError(
            f"operator dim {H.shape[0]} does not match subspace dim {subspace.dim}"
        )
    if len(subspace) == 0:
        return np.zeros_like(H)
    h = real_components(-1j * H)  # coordinates of H against i*A_k are Re<A_k, -iH>
    coeffs = subspace.component_stack @ h
    A = np.tensordot(coeffs, np.stack(subspace.elements), axes=(0, 0))
    return 1j * A


def subspace_distance(H: np.ndarray, subspace: AlgebraBasis) -> float:
    """Frobenius distance from Hermitian H to i * span(subspace)."""
    H = check_hermitian(H)
    if H.shape[0] != subspace.dim:
        raise ValidationError(
            f"operator dim {H.shape[0]} does not match subspace dim {subspace.dim}"
        )
    h = real_components(-1j * H)
    S = subspace.component_stack
    r = h - S.T @ (S @ h)
    return float(np.linalg.norm(r))
