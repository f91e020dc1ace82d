"""Shared random constructors and independent oracles for the tests."""

import numpy as np

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def random_hermitian(rng, d, scale=1.0):
    M = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return scale * 0.5 * (M + M.conj().T)


def random_unitary(rng, d):
    """Haar-random unitary via QR with the R-diagonal phase fix."""
    M = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    Q, R = np.linalg.qr(M)
    ph = np.diag(R)
    return Q * (np.abs(ph) / ph)


def random_state(rng, d):
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def random_block_unitary(rng, sizes):
    d = sum(sizes)
    U = np.zeros((d, d), dtype=complex)
    off = 0
    for p in sizes:
        U[off : off + p, off : off + p] = random_unitary(rng, p)
        off += p
    return U


def random_invertible(rng, d, min_sv=0.2):
    """Gaussian invertible matrix, redrawn until comfortably conditioned."""
    while True:
        M = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        if np.linalg.svd(M, compute_uv=False)[-1] > min_sv:
            return M


def expm_taylor(A, tol=1e-18):
    """Scaling-and-squaring Taylor exponential, independent of eigensolvers."""
    A = np.asarray(A, dtype=complex)
    nrm = np.linalg.norm(A)
    squarings = max(0, int(np.ceil(np.log2(max(nrm, 1e-300)))) + 2)
    B = A / (2**squarings)
    term = np.eye(A.shape[0], dtype=complex)
    out = term.copy()
    for k in range(1, 60):
        term = term @ B / k
        out += term
        if np.linalg.norm(term) < tol:
            break
    for _ in range(squarings):
        out = out @ out
    return out


def charpoly_eigenvalues(A):
    """Eigenvalues via characteristic-polynomial companion roots.

    Coefficients come from the Faddeev-LeVerrier recursion; the roots are the
    companion-matrix eigenvalues computed by ``numpy.roots``.
    """
    A = np.asarray(A, dtype=complex)
    d = A.shape[0]
    coeffs = np.zeros(d + 1, dtype=complex)
    coeffs[0] = 1.0
    M = np.zeros_like(A)
    I = np.eye(d, dtype=complex)
    for k in range(1, d + 1):
        M = A @ M + coeffs[k - 1] * I
        coeffs[k] = -np.trace(A @ M) / k
    return np.roots(coeffs)
