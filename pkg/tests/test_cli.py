import json

import numpy as np
import pytest

import equivham as eq
from equivham.cli import main
from equivham.serialize import (
    matrix_from_json,
    matrix_to_json,
    read_json,
    vector_to_json,
    write_json,
)
from helpers import PAULI_X, PAULI_Y, PAULI_Z


def write_system(path, H_int, controls, H_d, rho_i, stabilized=None):
    write_json(
        path,
        {
            "H_int": matrix_to_json(H_int),
            "controls": [matrix_to_json(C) for C in controls],
            "H_d": matrix_to_json(H_d),
            "rho_i": matrix_to_json(rho_i),
            "stabilized_vector": None if stabilized is None else vector_to_json(stabilized),
        },
    )


@pytest.fixture
def toy_system_file(tmp_path):
    path = tmp_path / "toy.json"
    write_system(
        path,
        H_int=PAULI_Z,
        controls=[PAULI_X, PAULI_Y, PAULI_Z],
        H_d=0.7 * PAULI_Z,
        rho_i=np.diag([0.0, 1.0]).astype(complex),
        stabilized=np.array([1.0, 0.0], dtype=complex),
    )
    return path


class TestClosureCommand:
    def test_chain4_report(self, capsys):
        assert main(["closure", "--preset", "chain4"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["algebra_dim"] == 96
        assert report["ambient_dim"] == 256
        assert report["hxy_distance"] > 0.0
        assert report["hxy_distance_rel"] > 1e-6

    def test_bad_preset_exits_2(self, capsys):
        assert main(["closure", "--preset", "chain99"]) == 2
        assert "error" in capsys.readouterr().err

    def test_report_written_to_disk(self, tmp_path, capsys):
        out = tmp_path / "rep"
        assert main(["closure", "--preset", "chain2", "--out", str(out)]) == 0
        stored = read_json(out / "closure.json")
        assert stored == json.loads(capsys.readouterr().out)


class TestSubspaceCommand:
    def test_chain4_report(self, capsys):
        assert main(["subspace", "--preset", "chain4"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["algebra_dim"] == 96
        assert report["stabilizer_dim"] >= 9


class TestSolveCommand:
    def test_toy_system_converges(self, toy_system_file, tmp_path, capsys):
        out = tmp_path / "run"
        code = main(
            ["solve", "--preset", str(toy_system_file), "--eta", "0.0",
             "--t0", "1.0", "--out", str(out)]
        )
        assert code == 0
        result = read_json(out / "result.json")
        assert result["converged"] is True
        assert result["cost"] <= 1e-8
        stored = read_json(out / "hamiltonian.json")
        assert stored["hermitian"] is True
        assert (out / "frame.json").exists()

    def test_round_trip_cost_reproduced(self, toy_system_file, tmp_path):
        out = tmp_path / "run"
        main(["solve", "--preset", str(toy_system_file), "--eta", "0.0",
              "--t0", "1.0", "--out", str(out)])
        stored = read_json(out / "hamiltonian.json")
        H = matrix_from_json(stored["H"])
        closure = eq.lie_closure(
            [-1j * PAULI_Z, -1j * PAULI_X, -1j * PAULI_Y]
        )
        sub = eq.eigenvector_stabilizer_subspace(
            closure, np.array([1.0, 0.0], dtype=complex)
        )
        assert eq.subspace_distance(H, sub) == pytest.approx(stored["cost"], abs=1e-10)

    def test_deterministic_artifacts(self, toy_system_file, tmp_path):
        outs = []
        for tag in ("a", "b"):
            out = tmp_path / tag
            main(["solve", "--preset", str(toy_system_file), "--eta", "0.0",
                  "--t0", "1.0", "--out", str(out)])
            outs.append((out / "result.json").read_bytes())
        assert outs[0] == outs[1]

    def test_unreachable_target_exits_3(self, tmp_path):
        path = tmp_path / "stuck.json"
        write_system(
            path,
            H_int=PAULI_Z,
            controls=[PAULI_Z],
            H_d=PAULI_X,
            rho_i=np.diag([1.0, 0.0]).astype(complex),
        )
        out = tmp_path / "run"
        code = main(
            ["solve", "--preset", str(path), "--eta", "0.0", "--t0", "1.0",
             "--max-iters", "100", "--restarts", "2", "--out", str(out)]
        )
        assert code == 3
        assert read_json(out / "result.json")["converged"] is False
        assert (out / "hamiltonian.json").exists()

    def test_infeasible_subspace_exits_4(self, tmp_path, capsys):
        path = tmp_path / "infeasible.json"
        write_system(
            path,
            H_int=PAULI_X,
            controls=[PAULI_X],
            H_d=PAULI_Z,
            rho_i=np.diag([1.0, 0.0]).astype(complex),
            stabilized=np.array([1.0, 0.0], dtype=complex),
        )
        code = main(
            ["solve", "--preset", str(path), "--eta", "0.0", "--t0", "1.0",
             "--out", str(tmp_path / "run")]
        )
        assert code == 4
        assert "infeasible" in capsys.readouterr().err


class TestFidelityCommand:
    def test_writes_three_curves(self, tmp_path):
        ham = tmp_path / "hamiltonian.json"
        H = eq.xy_christandl(eq.ChainSpec(2))
        write_json(ham, {"H": matrix_to_json(H), "hermitian": True, "k": [0] * 4, "cost": 0.0})
        out = tmp_path / "curves"
        code = main(
            ["fidelity", "--preset", "chain2", "--hamiltonian", str(ham),
             "--samples", "101", "--out", str(out)]
        )
        assert code == 0
        names = ["fidelity_schedule.csv", "fidelity_desired.csv", "fidelity_internal.csv"]
        for name in names:
            lines = (out / name).read_text().strip().split("\n")
            assert lines[0] == "t,fidelity"
            assert len(lines) == 102
            values = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]])
            assert np.all(values[:, 1] >= -1e-12)
            assert np.all(values[:, 1] <= 1.0 + 1e-12)
        desired = (out / "fidelity_desired.csv").read_text().strip().split("\n")
        assert float(desired[-1].split(",")[1]) >= 1.0 - 1e-10

    def test_missing_hamiltonian_exits_2(self, tmp_path, capsys):
        code = main(
            ["fidelity", "--preset", "chain2",
             "--hamiltonian", str(tmp_path / "nope.json"),
             "--out", str(tmp_path / "o")]
        )
        assert code == 2
        assert "cannot read" in capsys.readouterr().err
