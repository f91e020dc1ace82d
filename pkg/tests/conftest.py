import sys
from pathlib import Path

import numpy as np
import pytest

import equivham as eq

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def chain4():
    return eq.chain_system("chain4")


@pytest.fixture(scope="session")
def chain4_closure(chain4):
    generators = [-1j * chain4.problem.H_int] + [-1j * C for C in chain4.controls]
    return eq.lie_closure(generators)


@pytest.fixture(scope="session")
def chain4_subspace(chain4, chain4_closure):
    return eq.eigenvector_stabilizer_subspace(chain4_closure, chain4.stabilized_vector)


@pytest.fixture(scope="session")
def chain4_frame(chain4):
    return eq.build_frame(chain4.problem)


@pytest.fixture(scope="session")
def toy_qubit():
    """Fully controllable single qubit whose desired evolution is reachable."""
    rho = np.diag([0.0, 1.0]).astype(complex)
    from helpers import PAULI_X, PAULI_Y, PAULI_Z

    problem = eq.Problem(
        rho_i=rho, H_d=0.7 * PAULI_Z, H_int=PAULI_Z, t0=1.0, eta=0.0
    )
    return problem, [PAULI_X, PAULI_Y, PAULI_Z], np.array([1.0, 0.0], dtype=complex)
