"""equivham: equivalent-Hamiltonian synthesis for state transfer under partial control.

Given a fixed initial state, a desired Hamiltonian, an internal Hamiltonian
and an evolution time, this package characterizes every Hamiltonian that
performs the same state-to-state map, searches that set numerically for a
member inside the control Lie algebra, and verifies the result by simulating
the resulting piecewise evolution.
"""

__version__ = "0.1.0"

from .algebra import (
    AlgebraBasis,
    eigenvector_stabilizer_subspace,
    hs_project,
    lie_closure,
    subspace_distance,
)
from .chains import (
    ChainSpec,
    basis_state,
    christandl_couplings,
    dipolar_hamiltonian,
    global_control,
    pauli_on,
    total_z,
    xy_christandl,
)
from .dynamics import Schedule, evolve, fidelity_curve, sandwich_schedule
from .equivalence import (
    EquivalenceFrame,
    HamiltonianCandidate,
    Problem,
    block_coordinates,
    branch_hamiltonian,
    build_frame,
    desired_unitary,
    equivalent_unitary,
    in_equivalent_set,
    membership_defect,
    principal_hamiltonian,
    rediagonalize,
)
from .linalg import (
    BlockStructure,
    Diagonalization,
    ValidationError,
    eig_hermitian,
    eig_unitary,
    exp_skew_hermitian,
    hs_inner,
)
from .presets import System, chain_system, get_system, load_system
from .synthesis import (
    InfeasibleSubspaceError,
    OptimizerConfig,
    SynthesisResult,
    block_skew_basis,
    cost,
    synthesize,
)

__all__ = [
    "AlgebraBasis",
    "BlockStructure",
    "ChainSpec",
    "Diagonalization",
    "EquivalenceFrame",
    "HamiltonianCandidate",
    "InfeasibleSubspaceError",
    "OptimizerConfig",
    "Problem",
    "Schedule",
    "SynthesisResult",
    "System",
    "ValidationError",
    "basis_state",
    "block_coordinates",
    "block_skew_basis",
    "branch_hamiltonian",
    "build_frame",
    "chain_system",
    "christandl_couplings",
    "cost",
    "desired_unitary",
    "dipolar_hamiltonian",
    "eig_hermitian",
    "eig_unitary",
    "eigenvector_stabilizer_subspace",
    "equivalent_unitary",
    "evolve",
    "exp_skew_hermitian",
    "fidelity_curve",
    "get_system",
    "global_control",
    "hs_inner",
    "hs_project",
    "in_equivalent_set",
    "lie_closure",
    "load_system",
    "membership_defect",
    "pauli_on",
    "principal_hamiltonian",
    "rediagonalize",
    "sandwich_schedule",
    "subspace_distance",
    "synthesize",
    "total_z",
    "xy_christandl",
]
