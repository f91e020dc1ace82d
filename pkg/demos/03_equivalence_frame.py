"""The frame that turns "same action on this state" into block coordinates.

Two states relate by many unitaries.  Diagonalizing the pre- and post-control
states to one diagonal matrix turns that whole set into a two-sided translate
of the block-diagonal unitary group matching the state's degeneracies, and
every member yields Hamiltonians through its logarithms.

Run:  python3 demos/03_equivalence_frame.py
"""

import numpy as np

from equivham import (
    build_frame,
    chain_system,
    equivalent_unitary,
    in_equivalent_set,
    membership_defect,
    principal_hamiltonian,
)

rng = np.random.default_rng(1)

system = chain_system("chain4")
p = system.problem
frame = build_frame(p)

print("pre/post-control state eigenvalue blocks:", frame.D.sizes)
print("block-unitary manifold dimension:", frame.block_dimension)
print("(a pure state on dimension d gives 1 + (d-1)^2)")

print("\n=== sampling members of the equivalent-unitary set ===")


def haar(d):
    M = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    Q, R = np.linalg.qr(M)
    return Q * (np.abs(np.diag(R)) / np.diag(R))


for trial in range(3):
    U = np.zeros((16, 16), dtype=complex)
    U[0, 0] = np.exp(1j * rng.uniform(-np.pi, np.pi))
    U[1:, 1:] = haar(15)
    W = equivalent_unitary(frame, U)
    err = np.linalg.norm(W @ frame.rho_minus @ W.conj().T - frame.rho_plus)
    print(f"  member {trial}: maps pre-state to post-state with error {err:.2e}")

print("\n=== a random unitary is (almost surely) not a member ===")
W_bad = haar(16)
print("  off-block mass in frame coordinates:", f"{membership_defect(frame, W_bad):.3f}")
print("  member?", in_equivalent_set(frame, W_bad))

print("\n=== every member yields a Hamiltonian performing the map ===")
U = np.zeros((16, 16), dtype=complex)
U[0, 0] = 1.0
U[1:, 1:] = haar(15)
W = equivalent_unitary(frame, U)
cand = principal_hamiltonian(frame, W)
tau = p.control_time
w, V = np.linalg.eigh(cand.H)
W_back = (V * np.exp(-1j * tau * w)) @ V.conj().T
print("  exp(-i control_time H) reproduces the member:",
      f"{np.linalg.norm(W_back - W):.2e}")
print("  Hermitian?", cand.hermitian)
print("  spectral range of H:", f"[{w[0]:.3f}, {w[-1]:.3f}]")
