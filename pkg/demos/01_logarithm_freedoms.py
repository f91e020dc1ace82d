"""Tour of the matrix-logarithm freedoms behind the equivalent-Hamiltonian set.

A unitary has many logarithms: any diagonalization, any 2*pi branch shift per
eigenphase, and any invertible factor commuting with the eigenvalue diagonal
produce one.  Most of these logarithms are not Hermitian; a commutation
criterion picks out the ones that are.  This script walks through each
freedom on small matrices.

Run:  python3 demos/01_logarithm_freedoms.py
"""

import numpy as np

from equivham import (
    BlockStructure,
    Diagonalization,
    Problem,
    branch_hamiltonian,
    build_frame,
    eig_unitary,
    principal_hamiltonian,
    rediagonalize,
)

rng = np.random.default_rng(0)


def random_unitary(d):
    M = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    Q, R = np.linalg.qr(M)
    return Q * (np.abs(np.diag(R)) / np.diag(R))


print("=== diagonalizing a unitary ===")
V = random_unitary(4)
phases = np.array([1.2, 1.2, -0.4, -2.0])  # one doubly degenerate eigenvalue
W = (V * np.exp(1j * phases)) @ V.conj().T
diag = eig_unitary(W)
print("eigenphases:", np.round(diag.phases, 6))
print("degeneracy blocks (value, size):")
for value, size in diag.blocks.blocks:
    print(f"  {value:+.4f}  x{size}")
print("reconstruction error:", np.linalg.norm(diag.matrix() - W))

print("\n=== the diagonalization itself is a freedom ===")
# inside a degenerate block any unitary rotation of the eigenbasis is allowed,
# and columns can be permuted at will
block_rot = np.eye(4, dtype=complex)
theta = 0.7
block_rot[:2, :2] = [[np.cos(theta), np.sin(theta)], [-np.sin(theta), np.cos(theta)]]
other = rediagonalize(diag, block_rot, perm=[2, 0, 1, 3])
print("rotated+permuted reconstruction error:", np.linalg.norm(other.matrix() - W))
print("permuted phases:", np.round(other.phases, 6))

print("\n=== a problem whose equivalent set we can parameterize ===")
# trivial task (identity target) so that the identity is a member and every
# logarithm choice is easy to inspect
rho = np.diag([1.0, 0.0]).astype(complex)
zero = np.zeros((2, 2), dtype=complex)
problem = Problem(rho_i=rho, H_d=zero, H_int=zero, t0=1.0, eta=0.0)
frame = build_frame(problem)
print("state eigenvalue blocks:", frame.D.sizes)

print("\n=== branch integers shift eigenvalues by 2*pi/t ===")
W2 = np.diag(np.exp(1j * np.array([0.5, -0.5])))
base = principal_hamiltonian(frame, W2)
shifted = branch_hamiltonian(frame, W2, k=[1, 0])
print("principal eigenvalues:", np.round(np.linalg.eigvalsh(base.H), 6))
print("shifted eigenvalues:  ", np.round(np.linalg.eigvalsh(shifted.H), 6))
w, V2 = np.linalg.eigh(shifted.H)
back = (V2 * np.exp(-1j * problem.control_time * w)) @ V2.conj().T
print("shifted branch still exponentiates back:", np.linalg.norm(back - W2))

print("\n=== a logarithm of the identity that is not Hermitian ===")
diag_id = Diagonalization(
    V=np.eye(2, dtype=complex),
    phases=np.zeros(2),
    blocks=BlockStructure(((1.0 + 0j, 2),)),
)
X = np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex)  # shear in the centralizer
cand = branch_hamiltonian(frame, np.eye(2, dtype=complex), diag_id,
                          k=[-1, 0], centralizer_factor=X)
log_matrix = -1j * problem.control_time * cand.H
print("log of identity:\n", np.round(log_matrix, 6))
print("flagged Hermitian?", cand.hermitian)

print("\n=== the Hermiticity criterion at work ===")
# a unitary centralizer factor always yields a Hermitian branch; a shear only
# does when the shifted diagonal stays proportional to the identity there
for label, X_T, k in (
    ("unitary factor, mixed branches", None, [1, 0]),
    ("shear factor, equal branches", X, [0, 0]),
    ("shear factor, mixed branches", X, [1, 0]),
):
    factor = X_T
    if factor is None:
        theta = 0.3
        factor = np.array(
            [[np.cos(theta), np.sin(theta)], [-np.sin(theta), np.cos(theta)]],
            dtype=complex,
        )
    cand = branch_hamiltonian(frame, np.eye(2, dtype=complex), diag_id,
                              k=k, centralizer_factor=factor)
    direct = np.linalg.norm(cand.H - cand.H.conj().T) < 1e-10
    print(f"  {label}: criterion={cand.hermitian}  direct={direct}")
