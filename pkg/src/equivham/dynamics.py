"""Piecewise-constant Hamiltonian evolution and fidelity curves.

Each segment is propagated with its exact eigendecomposition exponential, so
no integrator tolerance enters the results.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .equivalence import Problem
from .linalg import ValidationError, check_hermitian


@dataclass(frozen=True)
class Schedule:
    """Ordered (Hamiltonian, duration) segments of equal dimension."""

    segments: tuple[tuple[np.ndarray, float], ...]

    def __post_init__(self):
        if not self.segments:
            raise ValidationError("schedule needs at least one segment")
        dim = None
        checked = []
        for H, dt in self.segments:
            H = check_hermitian(H, "segment Hamiltonian")
            if dim is None:
                dim = H.shape[0]
            elif H.shape[0] != dim:
                raise ValidationError("segment dimensions differ")
            if dt < 0:
                raise ValidationError(f"segment duration {dt} is negative")
            checked.append((H, float(dt)))
        object.__setattr__(self, "segments", tuple(checked))

    @property
    def dim(self) -> int:
        return self.segments[0][0].shape[0]

    @property
    def total_duration(self) -> float:
        return float(sum(dt for _, dt in self.segments))


def _check_state(psi: np.ndarray, dim: int) -> np.ndarray:
    psi = np.asarray(psi, dtype=np.complex128).ravel()
    if psi.shape[0] != dim:
        raise ValidationError(f"state has dim {psi.shape[0]}, schedule has dim {dim}")
    nrm = float(np.linalg.norm(psi))
    if abs(nrm - 1.0) > 1e-10:
        raise ValidationError(f"state norm {nrm:.12g} differs from 1 beyond 1e-10")
    return psi


def _eigensystems(schedule: Schedule):
    return [np.linalg.eigh(H) for H, _ in schedule.segments]


def evolve(schedule: Schedule, psi0: np.ndarray, t: float) -> np.ndarray:
    """State after evolving for time t through the schedule.

    Segments apply in order; the segment containing t is truncated there.
    """
    psi = _check_state(psi0, schedule.dim)
    total = schedule.total_duration
    if t < -1e-12 or t > total + 1e-12:
        raise ValidationError(f"time {t} outside [0, {total}]")
    t = min(max(t, 0.0), total)

    remaining = t
    for (H, dt), (w, V) in zip(schedule.segments, _eigensystems(schedule)):
        step = min(dt, remaining)
        if step > 0.0:
            psi = (V * np.exp(-1j * w * step)) @ (V.conj().T @ psi)
        remaining -= step
        if remaining <= 0.0:
            break
    return psi


def segment_unitaries(schedule: Schedule) -> list[np.ndarray]:
    """Full-duration propagator of each segment, in application order."""
    out = []
    for (H, dt), (w, V) in zip(schedule.segments, _eigensystems(schedule)):
        out.append((V * np.exp(-1j * w * dt)) @ V.conj().T)
    return out


def fidelity_curve(
    schedule: Schedule, psi0: np.ndarray, target: np.ndarray, n_points: int
) -> np.ndarray:
    """|<target|psi(t)>|^2 on a uniform grid over the full schedule.

    Returns an (n_points, 2) array of (t, fidelity) rows.
    """
    if n_points < 2:
        raise ValidationError("n_points must be at least 2")
    psi0 = _check_state(psi0, schedule.dim)
    target = np.asarray(target, dtype=np.complex128).ravel()
    if target.shape[0] != schedule.dim:
        raise ValidationError("target dimension mismatch")

    systems = _eigensystems(schedule)
    # state at the start of each segment
    boundaries = [psi0]
    for (H, dt), (w, V) in zip(schedule.segments, systems):
        psi = boundaries[-1]
        boundaries.append((V * np.exp(-1j * w * dt)) @ (V.conj().T @ psi))

    starts = np.cumsum([0.0] + [dt for _, dt in schedule.segments])
    times = np.linspace(0.0, schedule.total_duration, n_points)
    out = np.empty((n_points, 2))
    for i, t in enumerate(times):
        seg = int(np.searchsorted(starts[1:-1], t, side="right"))
        w, V = systems[seg]
        psi = boundaries[seg]
        local = t - starts[seg]
        amp = target.conj() @ ((V * np.exp(-1j * w * local)) @ (V.conj().T @ psi))
        out[i] = (t, float(abs(amp) ** 2))
    return out


def sandwich_schedule(problem: Problem, H_mid: np.ndarray) -> Schedule:
    """Internal drift, control window, internal drift.

    The drift time eta*t0 splits evenly around the control window of length
    (1-eta)*t0; with eta = 0 this is a single control segment.
    """
    H_mid = check_hermitian(H_mid, "control Hamiltonian")
    if problem.eta == 0.0:
        return Schedule(((H_mid, problem.t0),))
    half = 0.5 * problem.drift_time
    return Schedule(
        (
            (problem.H_int, half),
            (H_mid, problem.control_time),
            (problem.H_int, half),
        )
    )
