"""JSON and CSV encodings shared by the library and the command line.

Matrices are written as {"dim": d, "entries": [[re, im], ...]} with row-major
entries; vectors use the same layout with d entries.  ``dumps`` is canonical
(sorted keys, fixed separators) so identical results serialize to identical
bytes.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .algebra import AlgebraBasis
from .equivalence import EquivalenceFrame, HamiltonianCandidate
from .linalg import ValidationError


def matrix_to_json(A: np.ndarray) -> dict:
    A = np.asarray(A, dtype=np.complex128)
    d = A.shape[0]
    flat = A.reshape(-1)
    return {"dim": int(d), "entries": [[float(z.real), float(z.imag)] for z in flat]}


def matrix_from_json(obj) -> np.ndarray:
    try:
        d = int(obj["dim"])
        entries = obj["entries"]
    except (TypeError, KeyError) as exc:
        raise ValidationError("matrix JSON needs 'dim' and 'entries'") from exc
    if d < 1 or len(entries) != d * d:
        raise ValidationError(
            f"matrix JSON has {len(entries)} entries, expected dim^2 = {d * d}"
        )
    flat = np.array([complex(re, im) for re, im in entries], dtype=np.complex128)
    return flat.reshape(d, d)


def vector_to_json(v: np.ndarray) -> dict:
    v = np.asarray(v, dtype=np.complex128).ravel()
    return {
        "dim": int(v.shape[0]),
        "entries": [[float(z.real), float(z.imag)] for z in v],
    }


def vector_from_json(obj) -> np.ndarray:
    try:
        d = int(obj["dim"])
        entries = obj["entries"]
    except (TypeError, KeyError) as exc:
        raise ValidationError("vector JSON needs 'dim' and 'entries'") from exc
    if d < 1 or len(entries) != d:
        raise ValidationError(f"vector JSON has {len(entries)} entries, expected {d}")
    return np.array([complex(re, im) for re, im in entries], dtype=np.complex128)


def basis_to_json(basis: AlgebraBasis) -> dict:
    return {
        "dim": basis.dim,
        "elements": [matrix_to_json(E) for E in basis.elements],
    }


def basis_from_json(obj) -> AlgebraBasis:
    dim = int(obj["dim"])
    elements = tuple(matrix_from_json(e) for e in obj.get("elements", []))
    return AlgebraBasis(dim=dim, elements=elements)


def candidate_to_json(candidate: HamiltonianCandidate, cost: float) -> dict:
    return {
        "H": matrix_to_json(candidate.H),
        "hermitian": bool(candidate.hermitian),
        "k": [int(x) for x in candidate.k],
        "cost": float(cost),
    }


def frame_to_json(frame: EquivalenceFrame) -> dict:
    return {
        "U_int": matrix_to_json(frame.U_int),
        "U_minus": matrix_to_json(frame.U_minus),
        "U_plus": matrix_to_json(frame.U_plus),
        "D_values": [float(v.real) for v in frame.D.values],
        "D_sizes": [int(s) for s in frame.D.sizes],
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=2) + "\n"


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj))


def read_json(path):
    return json.loads(Path(path).read_text())


def write_fidelity_csv(path, points: np.ndarray) -> None:
    """CSV with header t,fidelity and 15 significant digits per value."""
    lines = ["t,fidelity"]
    for t, f in points:
        lines.append(f"{t:.15g},{f:.15g}")
    Path(path).write_text("\n".join(lines) + "\n")
