import numpy as np
import pytest

from equivham.algebra import (
    AlgebraBasis,
    eigenvector_stabilizer_subspace,
    hs_project,
    lie_closure,
    real_components,
    subspace_distance,
)
from equivham.linalg import ValidationError, commutator, hs_inner
from helpers import PAULI_X, PAULI_Y, PAULI_Z, random_hermitian


def su2_closure():
    return lie_closure([1j * PAULI_X, 1j * PAULI_Y])


class TestLieClosure:
    def test_single_generator_abelian(self):
        basis = lie_closure([1j * PAULI_X])
        assert len(basis) == 1

    def test_su2_from_two_paulis(self):
        assert len(su2_closure()) == 3

    def test_idempotence(self):
        basis = su2_closure()
        again = lie_closure(list(basis.elements))
        assert len(again) == len(basis)

    def test_generator_containment(self):
        gens = [1j * PAULI_X, 1j * (PAULI_Y + 0.3 * PAULI_Z)]
        basis = lie_closure(gens)
        for g in gens:
            assert basis.contains(g, tol=1e-9)

    def test_closed_under_commutator(self):
        basis = su2_closure()
        for A in basis.elements:
            for B in basis.elements:
                C = commutator(A, B)
                assert basis.contains(C, tol=1e-9) or np.linalg.norm(C) < 1e-12

    def test_orthonormal_gram(self):
        basis = su2_closure()
        assert np.linalg.norm(basis.gram() - np.eye(3)) < 1e-8

    def test_commuting_generators_no_noise_directions(self):
        # the commutator of these is exactly zero; roundoff must not register
        # as a new direction
        A = 1j * np.diag([1.0, 0.0, 0.0]).astype(complex)
        B = 1j * np.diag([0.0, 1.0, -2.0]).astype(complex)
        assert len(lie_closure([A, B])) == 2

    def test_empty_generator_list(self):
        with pytest.raises(ValidationError, match="empty"):
            lie_closure([])

    def test_dim_mismatch(self):
        with pytest.raises(ValidationError, match="differ"):
            lie_closure([1j * PAULI_X, 1j * np.eye(3)])

    def test_rejects_non_skew_generator(self):
        with pytest.raises(ValidationError):
            lie_closure([PAULI_X])


class TestStabilizerSubspace:
    def test_pauli_z_fixes_ground(self):
        basis = lie_closure([1j * PAULI_Z])
        sub = eigenvector_stabilizer_subspace(basis, np.array([1.0, 0.0]))
        assert len(sub) == 1

    def test_pauli_x_moves_ground(self):
        basis = lie_closure([1j * PAULI_X])
        sub = eigenvector_stabilizer_subspace(basis, np.array([1.0, 0.0]))
        assert len(sub) == 0

    def test_su2_stabilizer_of_ground(self):
        sub = eigenvector_stabilizer_subspace(su2_closure(), np.array([1.0, 0.0]))
        assert len(sub) == 1  # only the Z direction survives

    def test_members_keep_vector_as_eigenvector(self):
        rng = np.random.default_rng(3)
        basis = lie_closure(
            [1j * random_hermitian(rng, 4) for _ in range(2)] + [1j * np.diag([1.0, 0, 0, -1]).astype(complex)]
        )
        v = np.zeros(4, dtype=complex)
        v[0] = 1.0
        sub = eigenvector_stabilizer_subspace(basis, v)
        for _ in range(100):
            c = rng.normal(size=len(sub))
            A = sum(ci * E for ci, E in zip(c, sub.elements))
            w = A @ v
            residual = w - (v.conj() @ w) * v
            assert np.linalg.norm(residual) < 1e-9

    def test_zero_vector_rejected(self):
        with pytest.raises(ValidationError, match="nonzero"):
            eigenvector_stabilizer_subspace(su2_closure(), np.zeros(2))

    def test_dim_mismatch(self):
        with pytest.raises(ValidationError):
            eigenvector_stabilizer_subspace(su2_closure(), np.ones(3))


class TestProjection:
    def test_membership_is_identity(self):
        sub = AlgebraBasis(
            dim=2,
            elements=(1j * PAULI_X / np.sqrt(2), 1j * PAULI_Y / np.sqrt(2)),
        )
        assert np.linalg.norm(hs_project(PAULI_X, sub) - PAULI_X) < 1e-12

    def test_orthogonal_projects_to_zero(self):
        sub = AlgebraBasis(dim=2, elements=(1j * PAULI_X / np.sqrt(2),))
        assert np.linalg.norm(hs_project(PAULI_Z, sub)) < 1e-12

    def test_against_gram_solve_oracle(self):
        rng = np.random.default_rng(41)
        d = 4
        raw = [1j * random_hermitian(rng, d) for _ in range(5)]
        H = random_hermitian(rng, d)

        # oracle: least squares over the raw (non-orthonormal) spanning set
        hermitian_span = [1j * S for S in raw]
        G = np.array(
            [[np.real(hs_inner(a, b)) for b in hermitian_span] for a in hermitian_span]
        )
        b = np.array([np.real(hs_inner(a, H)) for a in hermitian_span])
        coeffs = np.linalg.solve(G, b)
        expected = sum(c * a for c, a in zip(coeffs, hermitian_span))

        span = lie_closure(raw, rank_tol=1e-9)  # orthonormalizes; su(4) closure
        # restrict to the raw span only: orthonormalize without commutators
        ortho = []
        for S in raw:
            v = real_components(S)
            for E in ortho:
                v = v - (real_components(E) @ v) * real_components(E)
            nrm = np.linalg.norm(v)
            M = (v[: d * d] + 1j * v[d * d :]).reshape(d, d)
            ortho.append(0.5 * (M - M.conj().T) / nrm)
        sub = AlgebraBasis(dim=d, elements=tuple(ortho))
        P = hs_project(H, sub)
        assert np.linalg.norm(P - expected) < 1e-9

    def test_idempotent_and_orthogonal_residual(self):
        rng = np.random.default_rng(43)
        sub = AlgebraBasis(
            dim=2, elements=(1j * PAULI_X / np.sqrt(2), 1j * PAULI_Z / np.sqrt(2))
        )
        H = random_hermitian(rng, 2)
        P = hs_project(H, sub)
        assert np.linalg.norm(hs_project(P, sub) - P) < 1e-9
        residual = H - P
        for E in sub.elements:
            assert abs(np.real(hs_inner(1j * E, residual))) < 1e-9

    def test_distance_matches_projection(self):
        rng = np.random.default_rng(47)
        sub = AlgebraBasis(dim=2, elements=(1j * PAULI_Y / np.sqrt(2),))
        H = random_hermitian(rng, 2)
        dist = subspace_distance(H, sub)
        assert dist == pytest.approx(np.linalg.norm(H - hs_project(H, sub)), abs=1e-12)

    def test_dim_mismatch(self):
        sub = AlgebraBasis(dim=2, elements=(1j * PAULI_X / np.sqrt(2),))
        with pytest.raises(ValidationError):
            hs_project(np.eye(3), sub)


class TestChain4Algebra:
    """Structure of the worked four-qubit example."""

    def test_closure_dimension(self, chain4_closure):
        assert len(chain4_closure) == 96

    def test_gram_identity(self, chain4_closure):
        G = chain4_closure.gram()
        assert np.linalg.norm(G - np.eye(len(chain4_closure))) < 1e-8

    def test_desired_hamiltonian_outside_algebra(self, chain4, chain4_closure):
        H = chain4.problem.H_d
        assert subspace_distance(H, chain4_closure) / np.linalg.norm(H) > 1e-6

    def test_stabilizer_subspace_dimension(self, chain4_subspace):
        assert len(chain4_subspace) >= 9

    def test_stabilizer_members_fix_vacuum(self, chain4, chain4_subspace):
        rng = np.random.default_rng(53)
        v = chain4.stabilized_vector
        for _ in range(100):
            c = rng.normal(size=len(chain4_subspace))
            A = np.tensordot(c, np.stack(chain4_subspace.elements), axes=(0, 0))
            w = A @ v
            assert np.linalg.norm(w - (v.conj() @ w) * v) < 1e-9
