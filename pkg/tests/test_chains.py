import numpy as np
import pytest

from equivham.chains import (
    ChainSpec,
    basis_state,
    christandl_couplings,
    dipolar_hamiltonian,
    global_control,
    pauli_on,
    total_z,
    xy_christandl,
)
from equivham.linalg import ValidationError, commutator
from helpers import PAULI_X, PAULI_Y, PAULI_Z


def evolve(H, t):
    w, V = np.linalg.eigh(H)
    return (V * np.exp(-1j * t * w)) @ V.conj().T


class TestPauliOn:
    def test_single_site(self):
        assert np.array_equal(pauli_on("X", 1, 1), PAULI_X)

    def test_z_on_second_site(self):
        assert np.allclose(pauli_on("Z", 2, 2), np.diag([1, -1, 1, -1]))

    def test_involution(self):
        P = pauli_on("X", 1, 2)
        assert np.allclose(P @ P, np.eye(4))

    def test_site_out_of_range(self):
        with pytest.raises(ValidationError, match="site"):
            pauli_on("X", 3, 2)

    def test_unknown_axis(self):
        with pytest.raises(ValidationError, match="axis"):
            pauli_on("Q", 1, 1)


class TestDipolar:
    def test_two_qubit_explicit(self):
        H = dipolar_hamiltonian(ChainSpec(2))
        XX = np.kron(PAULI_X, PAULI_X)
        YY = np.kron(PAULI_Y, PAULI_Y)
        ZZ = np.kron(PAULI_Z, PAULI_Z)
        assert np.allclose(H, XX + YY - 2 * ZZ)
        assert abs(np.trace(H)) < 1e-14

    def test_three_qubit_couplings(self):
        # the 1-3 pair enters at 1/8 of the nearest-neighbour strength
        n = 3
        expected = np.zeros((8, 8), dtype=complex)
        for (k, l), J in (((1, 2), 1.0), ((2, 3), 1.0), ((1, 3), 1 / 8)):
            expected += J * (
                pauli_on("X", k, n) @ pauli_on("X", l, n)
                + pauli_on("Y", k, n) @ pauli_on("Y", l, n)
                - 2 * pauli_on("Z", k, n) @ pauli_on("Z", l, n)
            )
        assert np.allclose(dipolar_hamiltonian(ChainSpec(3)), expected)

    def test_conserves_excitation_number(self):
        H = dipolar_hamiltonian(ChainSpec(4))
        assert np.linalg.norm(commutator(H, total_z(4))) < 1e-12

    def test_exactly_hermitian(self):
        H = dipolar_hamiltonian(ChainSpec(4))
        assert np.array_equal(H, H.conj().T)


class TestGlobalControl:
    def test_single_qubit(self):
        assert np.array_equal(global_control("X", 1), PAULI_X)

    def test_two_qubit_y(self):
        expected = np.kron(PAULI_Y, np.eye(2)) + np.kron(np.eye(2), PAULI_Y)
        assert np.allclose(global_control("Y", 2), expected)

    def test_commutator_is_twice_i_total_z(self):
        n = 3
        lhs = commutator(global_control("X", n), global_control("Y", n))
        assert np.allclose(lhs, 2j * total_z(n))

    def test_rejects_z(self):
        with pytest.raises(ValidationError):
            global_control("Z", 2)


class TestChristandl:
    def test_couplings_four_sites(self):
        C = christandl_couplings(4, 1.0)
        assert np.allclose(C, [np.sqrt(3) / 2, 1.0, np.sqrt(3) / 2])

    def test_couplings_two_sites(self):
        assert np.allclose(christandl_couplings(2, 1.0), [0.5])

    def test_perfect_transfer_four_sites(self):
        spec = ChainSpec(4)
        U = evolve(xy_christandl(spec), np.pi)
        amp = basis_state("dddu").conj() @ (U @ basis_state("uddd"))
        assert abs(amp) ** 2 >= 1.0 - 1e-10

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_perfect_transfer_all_lengths(self, n):
        spec = ChainSpec(n)
        U = evolve(xy_christandl(spec), np.pi / spec.lam)
        src = basis_state("u" + "d" * (n - 1))
        dst = basis_state("d" * (n - 1) + "u")
        assert abs(dst.conj() @ (U @ src)) ** 2 >= 1.0 - 1e-9

    def test_transfer_time_scales_with_lambda(self):
        spec = ChainSpec(4, lam=2.0)
        U = evolve(xy_christandl(spec), np.pi / 2.0)
        amp = basis_state("dddu").conj() @ (U @ basis_state("uddd"))
        assert abs(amp) ** 2 >= 1.0 - 1e-10

    def test_conserves_excitation_number(self):
        H = xy_christandl(ChainSpec(5))
        assert np.linalg.norm(commutator(H, total_z(5))) < 1e-12

    def test_exactly_hermitian(self):
        H = xy_christandl(ChainSpec(4))
        assert np.array_equal(H, H.conj().T)


class TestBasisState:
    def test_up(self):
        assert np.array_equal(basis_state("u"), [1.0, 0.0])

    def test_down_down(self):
        assert np.array_equal(basis_state("dd"), [0.0, 0.0, 0.0, 1.0])

    def test_distinct_states_orthogonal(self):
        assert basis_state("uddd").conj() @ basis_state("dddu") == 0.0

    def test_word_labels(self):
        assert np.array_equal(basis_state(["up", "down"]), basis_state("ud"))

    def test_empty_pattern(self):
        with pytest.raises(ValidationError, match="empty"):
            basis_state("")

    def test_unknown_label(self):
        with pytest.raises(ValidationError, match="unknown spin label"):
            basis_state("ux")


class TestChainSpec:
    def test_rejects_out_of_range_length(self):
        with pytest.raises(ValidationError):
            ChainSpec(1)
        with pytest.raises(ValidationError):
            ChainSpec(9)

    def test_rejects_bad_scales(self):
        with pytest.raises(ValidationError):
            ChainSpec(4, coupling_scale=0.0)
        with pytest.raises(ValidationError):
            ChainSpec(4, lam=-1.0)
