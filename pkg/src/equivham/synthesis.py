"""Numerical search for an implementable equivalent Hamiltonian.

The only freedom explored is the block-unitary factor of the equivalent
set; branch integers, centralizer factor and diagonalization stay at their
simple values.  The search walks the block-unitary manifold through the
retraction U <- U exp(S(theta)), where S(theta) is block skew-Hermitian with
coordinates theta in a fixed orthonormal basis, re-centering theta = 0 after
every accepted step.  Gradients are central finite differences; descent
directions use Polak-Ribiere conjugate-gradient updates with a backtracking
(Armijo) line search.

The minimized objective is the squared distance of the principal-log
Hamiltonian from i times the target subspace (squared so the objective stays
smooth where the distance vanishes), optionally augmented with the
superposition-transfer infidelity.  That alignment term exists because
membership in the equivalent set fixes the state-to-state map only up to a
relative phase between the transferred component and the stabilized one; the
distance cost cannot see that phase, and perfect superposition transfer
requires driving it to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    AlgebraBasis,
    eigenvector_stabilizer_subspace,
    lie_closure,
    real_components,
    subspace_distance,
    RANK_TOL,
)
from .equivalence import (
    EquivalenceFrame,
    HamiltonianCandidate,
    Problem,
    build_frame,
    desired_unitary,
    equivalent_unitary,
    principal_hamiltonian,
)
from .linalg import (
    ValidationError,
    check_hermitian,
    _simultaneous_eigenbasis,
    GROUPING_RTOL,
)

# Trial steps whose unitary has an eigenphase within this distance of the
# principal branch cut at +-pi are rejected by the line search unless they
# increase the distance (the log is discontinuous across the cut).
BRANCH_BAND = 1e-3


class InfeasibleSubspaceError(RuntimeError):
    """The requested stabilizer subspace of the control algebra is empty."""


@dataclass(frozen=True)
class OptimizerConfig:
    """Budget and tolerances of the synthesis search."""

    max_iters: int = 2000
    grad_step: float = 1e-5
    init_step: float = 1.0
    cost_tol: float = 1e-8
    restarts: int = 8
    seed: int = 42
    rank_tol: float = RANK_TOL
    phase_weight: float = 0.5
    phase_tol: float = 1e-9

    def __post_init__(self):
        if self.max_iters <= 0 or self.grad_step <= 0 or self.init_step <= 0:
            raise ValidationError("max_iters, grad_step and init_step must be positive")
        if self.cost_tol <= 0 or self.rank_tol <= 0 or self.phase_tol <= 0:
            raise ValidationError("tolerances must be positive")
        if self.restarts < 1:
            raise ValidationError("restarts must be at least 1")
        if self.phase_weight < 0:
            raise ValidationError("phase_weight must be nonnegative")


@dataclass
class SynthesisResult:
    """Best candidate found, with its convergence record."""

    candidate: HamiltonianCandidate
    cost: float
    iterations: int
    restart_index: int
    trace: tuple[tuple[int, float], ...]
    converged: bool
    closure_dim: int
    subspace_dim: int
    metrics: dict = field(default_factory=dict)


def block_skew_basis(sizes) -> np.ndarray:
    """Orthonormal basis of the block skew-Hermitian matrices, as an array.

    Ordering per block: for each column a the imaginary diagonal unit, then
    for each b > a the real and imaginary off-diagonal units.  The count is
    the sum of squared block sizes.
    """
    d = int(sum(sizes))
    out = []
    off = 0
    for p in sizes:
        for a in range(off, off + p):
            M = np.zeros((d, d), dtype=np.complex128)
            M[a, a] = 1j
            out.append(M)
            for b in range(a + 1, off + p):
                M = np.zeros((d, d), dtype=np.complex128)
                M[a, b] = 1.0 / np.sqrt(2)
                M[b, a] = -1.0 / np.sqrt(2)
                out.append(M)
                M = np.zeros((d, d), dtype=np.complex128)
                M[a, b] = 1j / np.sqrt(2)
                M[b, a] = 1j / np.sqrt(2)
                out.append(M)
        off += p
    return np.array(out)


class _BlockChart:
    """Fast assembly and exponential of block skew-Hermitian coordinates."""

    def __init__(self, sizes):
        self.sizes = tuple(int(p) for p in sizes)
        self.dim = sum(self.sizes)
        self.n_coords = sum(p * p for p in self.sizes)
        rows_d, idx_d = [], []
        rows_r, cols_r, idx_r, idx_i = [], [], [], []
        k = 0
        off = 0
        for p in self.sizes:
            for a in range(off, off + p):
                rows_d.append(a)
                idx_d.append(k)
                k += 1
                for b in range(a + 1, off + p):
                    rows_r.append(a)
                    cols_r.append(b)
                    idx_r.append(k)
                    idx_i.append(k + 1)
                    k += 2
            off += p
        self._rows_d = np.array(rows_d, dtype=int)
        self._idx_d = np.array(idx_d, dtype=int)
        self._rows_r = np.array(rows_r, dtype=int)
        self._cols_r = np.array(cols_r, dtype=int)
        self._idx_r = np.array(idx_r, dtype=int)
        self._idx_i = np.array(idx_i, dtype=int)
        self._slices = []
        off = 0
        for p in self.sizes:
            self._slices.append(slice(off, off + p))
            off += p
        # coordinate -> (kind, column a, column b); kinds: 0 diagonal phase,
        # 1 real rotation, 2 imaginary rotation
        info: list[tuple[int, int, int]] = [(0, 0, 0)] * self.n_coords
        for a, k in zip(rows_d, idx_d):
            info[k] = (0, a, a)
        for a, b, kr, ki in zip(rows_r, cols_r, idx_r, idx_i):
            info[kr] = (1, a, b)
            info[ki] = (2, a, b)
        self._coord_info = info

    def matrix(self, theta: np.ndarray) -> np.ndarray:
        """S(theta), the block skew-Hermitian matrix with these coordinates."""
        S = np.zeros((self.dim, self.dim), dtype=np.complex128)
        S[self._rows_d, self._rows_d] = 1j * theta[self._idx_d]
        if self._rows_r.size:
            upper = (theta[self._idx_r] + 1j * theta[self._idx_i]) / np.sqrt(2)
            S[self._rows_r, self._cols_r] = upper
            S[self._cols_r, self._rows_r] = -upper.conj()
        return S

    def exp(self, theta: np.ndarray) -> np.ndarray:
        """Block-diagonal unitary exp(S(theta))."""
        S = self.matrix(theta)
        U = np.zeros_like(S)
        for sl, p in zip(self._slices, self.sizes):
            if p == 1:
                U[sl, sl] = np.exp(S[sl, sl])
            else:
                w, V = np.linalg.eigh(1j * S[sl, sl])
                U[sl, sl] = (V * np.exp(-1j * w)) @ V.conj().T
        return U

    def reunitarize(self, U: np.ndarray) -> np.ndarray:
        """Snap a near-unitary block matrix back onto the manifold blockwise."""
        out = np.zeros_like(U)
        for sl in self._slices:
            u, _, vh = np.linalg.svd(U[sl, sl])
            out[sl, sl] = u @ vh
        return out

    def apply_single(self, B: np.ndarray, coord: int, value: float) -> np.ndarray:
        """B @ exp(S(value * e_coord)) through its closed form.

        A single coordinate exponentiates to a phase or a Givens rotation, so
        only one or two columns of B change.
        """
        out = B.copy()
        kind, a, b = self._coord_info[coord]
        if kind == 0:
            out[:, a] = B[:, a] * np.exp(1j * value)
            return out
        phi = value / np.sqrt(2)
        c, s = np.cos(phi), np.sin(phi)
        if kind == 1:
            out[:, a] = c * B[:, a] - s * B[:, b]
            out[:, b] = s * B[:, a] + c * B[:, b]
        else:
            out[:, a] = c * B[:, a] + 1j * s * B[:, b]
            out[:, b] = 1j * s * B[:, a] + c * B[:, b]
        return out


class _Objective:
    """Precomputed evaluation of cost, branch gap, and transfer infidelity."""

    def __init__(self, frame: EquivalenceFrame, subspace: AlgebraBasis, transfer=None):
        self.frame = frame
        self.tau = frame.problem.control_time
        self.left = frame.U_plus
        self.right = frame.U_minus.conj().T
        self.proj = subspace.component_stack
        self.cut_tol = GROUPING_RTOL * max(1.0, np.sqrt(frame.dim))
        self.transfer = None
        if transfer is not None:
            psi_i, psi_t, stab = transfer
            U_int = frame.U_int
            self.transfer = (
                (U_int.conj().T @ psi_t).conj(),
                U_int @ psi_i,
                (U_int.conj().T @ stab).conj(),
                U_int @ stab,
            )

    def evaluate(self, block_unitary: np.ndarray):
        """(cost, infidelity_or_None, branch_gap) at a block unitary."""
        W = self.left @ block_unitary @ self.right
        phases, V = _simultaneous_eigenbasis(W)
        phases = np.where(phases <= (-np.pi + self.cut_tol), phases + 2 * np.pi, phases)
        H = (V * (-phases / self.tau)) @ V.conj().T
        h = real_components(-1j * H)
        r = h - self.proj.T @ (self.proj @ h)
        cost = float(np.linalg.norm(r))
        gap = float(np.pi - np.max(np.abs(phases)))
        infid = None
        if self.transfer is not None:
            lt, ri, ls, rs = self.transfer
            a = lt @ (W @ ri)
            b = ls @ (W @ rs)
            infid = float(1.0 - abs(0.5 * (a + b)) ** 2)
        return cost, infid, gap


def cost(
    frame: EquivalenceFrame,
    subspace: AlgebraBasis,
    theta,
    base: np.ndarray | None = None,
) -> float:
    """Distance of the principal-log Hamiltonian from i * span(subspace).

    ``theta`` are coordinates in the block skew-Hermitian basis; the evaluated
    block unitary is ``base @ exp(S(theta))`` (identity base by default).
    """
    chart = _BlockChart(frame.block_sizes)
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (chart.n_coords,):
        raise ValidationError(
            f"theta must have length {chart.n_coords} "
            f"(sum of squared block sizes), got {theta.shape}"
        )
    U = chart.exp(theta)
    if base is not None:
        U = base @ U
    W = equivalent_unitary(frame, U)
    candidate = principal_hamiltonian(frame, W)
    return subspace_distance(candidate.H, subspace)


def _derive_transfer(problem: Problem, stabilized_vector, transfer_pair):
    """Transfer triple (psi_init, psi_target, stabilized) when well-defined.

    Requires a stabilized vector orthogonal to a pure initial state.  Without
    an explicit pair, the initial state is the dominant eigenvector of rho_i
    (largest component made real positive) and the target is its image under
    the desired evolution.
    """
    if stabilized_vector is None:
        return None
    s = np.asarray(stabilized_vector, dtype=np.complex128).ravel()
    nrm = float(np.linalg.norm(s))
    if nrm == 0.0:
        raise ValidationError("stabilized vector must be nonzero")
    s = s / nrm
    if transfer_pair is not None:
        psi_i = np.asarray(transfer_pair[0], dtype=np.complex128).ravel()
        psi_t = np.asarray(transfer_pair[1], dtype=np.complex128).ravel()
        for v, label in ((psi_i, "initial"), (psi_t, "target")):
            if v.shape[0] != problem.dim:
                raise ValidationError(f"transfer {label} state has wrong dimension")
            if abs(np.linalg.norm(v) - 1.0) > 1e-8:
                raise ValidationError(f"transfer {label} state is not normalized")
    else:
        evals, V = np.linalg.eigh(problem.rho_i)
        if evals[-1] < 1.0 - 1e-8:
            return None
        psi_i = V[:, -1]
        pivot = int(np.argmax(np.abs(psi_i)))
        psi_i = psi_i * (abs(psi_i[pivot]) / psi_i[pivot])
        psi_t = desired_unitary(problem) @ psi_i
    if abs(np.vdot(s, psi_i)) > 1e-8:
        return None
    return psi_i, psi_t, s


def synthesize(
    problem: Problem,
    controls,
    stabilized_vector=None,
    config: OptimizerConfig | None = None,
    transfer_pair=None,
) -> SynthesisResult:
    """Find a Hamiltonian in the equivalent set that the controls can realize.

    Builds the control Lie algebra from the internal Hamiltonian and the
    controls, restricts to the eigenvector-stabilizing subspace when a
    ``stabilized_vector`` is given, and minimizes the projection cost over the
    block-unitary freedom with seeded restarts (a zero start first, then
    Gaussian starts scaled 0.1).  Returns the best restart; an unconverged
    search returns a flagged best-effort result rather than raising.
    """
    cfg = config or OptimizerConfig()
    controls = [check_hermitian(C, "control") for C in controls]
    if not controls:
        raise ValidationError("controls list is empty")
    generators = [-1j * problem.H_int] + [-1j * C for C in controls]
    closure = lie_closure(generators, rank_tol=cfg.rank_tol)

    if stabilized_vector is not None:
        subspace = eigenvector_stabilizer_subspace(closure, stabilized_vector)
        if len(subspace) == 0:
            raise InfeasibleSubspaceError(
                "no element of the control algebra keeps the requested vector "
                "as an eigenvector"
            )
    else:
        subspace = closure

    frame = build_frame(problem)
    transfer = _derive_transfer(problem, stabilized_vector, transfer_pair)
    objective = _Objective(frame, subspace, transfer)
    chart = _BlockChart(frame.block_sizes)
    weight = cfg.phase_weight if transfer is not None else 0.0

    def total(cost_value, infid):
        val = cost_value * cost_value
        if weight > 0.0:
            val += weight * infid
        return val

    def is_converged(cost_value, infid):
        if cost_value > cfg.cost_tol:
            return False
        if weight > 0.0 and infid > cfg.phase_tol:
            return False
        return True

    rng = np.random.default_rng(cfg.seed)
    best = None

    for restart in range(cfg.restarts):
        if restart == 0:
            theta0 = np.zeros(chart.n_coords)
        else:
            theta0 = 0.1 * rng.normal(size=chart.n_coords)
        B = chart.exp(theta0)
        cost_now, infid_now, gap_now = objective.evaluate(B)
        f_now = total(cost_now, infid_now)
        trace = [(0, cost_now)]
        step = cfg.init_step
        g_prev = None
        direction = None
        iterations = 0
        h = cfg.grad_step

        for it in range(1, cfg.max_iters + 1):
            if is_converged(cost_now, infid_now):
                break
            # central finite differences, coordinate by coordinate
            g = np.zeros(chart.n_coords)
            for i in range(chart.n_coords):
                cp, ip, _ = objective.evaluate(chart.apply_single(B, i, h))
                cm, im, _ = objective.evaluate(chart.apply_single(B, i, -h))
                g[i] = (total(cp, ip) - total(cm, im)) / (2.0 * h)
            gg = float(g @ g)
            if gg == 0.0:
                break
            if g_prev is not None and direction is not None:
                beta = max(0.0, float(g @ (g - g_prev)) / float(g_prev @ g_prev))
                direction = -g + beta * direction
                if float(g @ direction) >= 0.0:
                    direction = -g
            else:
                direction = -g
            slope = float(g @ direction)

            accepted = False
            alpha = 2.0 * step
            for _ in range(60):
                trial = B @ chart.exp(alpha * direction)
                cost_t, infid_t, gap_t = objective.evaluate(trial)
                f_t = total(cost_t, infid_t)
                # never step into (or deeper into) the branch-cut band
                band_ok = gap_t >= BRANCH_BAND or gap_t > gap_now
                if band_ok and f_t <= f_now + 1e-4 * alpha * slope:
                    accepted = True
                    break
                alpha *= 0.5
            if not accepted:
                if direction is not None and not np.array_equal(direction, -g):
                    # conjugate direction failed; retry once along the gradient
                    direction = None
                    g_prev = None
                    continue
                break
            B = trial
            if it % 100 == 0:
                B = chart.reunitarize(B)
                cost_t, infid_t, gap_t = objective.evaluate(B)
                f_t = total(cost_t, infid_t)
            cost_now, infid_now, gap_now, f_now = cost_t, infid_t, gap_t, f_t
            g_prev = g
            step = alpha
            iterations = it
            trace.append((it, cost_now))

        converged = is_converged(cost_now, infid_now)
        entry = (cost_now, restart, B, trace, iterations, converged, infid_now)
        if best is None or (entry[0], entry[1]) < (best[0], best[1]):
            best = entry
        if converged:
            break

    cost_best, restart_idx, B, trace, iterations, converged, infid_best = best
    W = equivalent_unitary(frame, chart.reunitarize(B))
    candidate = principal_hamiltonian(frame, W)
    final_cost = subspace_distance(candidate.H, subspace)

    metrics = _verification_metrics(frame, W, candidate, transfer, final_cost)
    return SynthesisResult(
        candidate=candidate,
        cost=final_cost,
        iterations=iterations,
        restart_index=restart_idx,
        trace=tuple(trace),
        converged=converged,
        closure_dim=len(closure),
        subspace_dim=len(subspace),
        metrics=metrics,
    )


def _verification_metrics(frame, W, candidate, transfer, cost_value) -> dict:
    p = frame.problem
    mapped = W @ frame.rho_minus @ W.conj().T
    metrics = {
        "cost": float(cost_value),
        "cost_relative": float(cost_value / max(np.linalg.norm(candidate.H), 1e-300)),
        "mapping_error": float(np.linalg.norm(mapped - frame.rho_plus)),
    }
    if transfer is not None:
        psi_i, psi_t, s = transfer
        U_sched = frame.U_int @ W @ frame.U_int
        out = U_sched @ s
        metrics["stabilizer_deviation"] = float(
            np.linalg.norm(out - (np.vdot(s, out)) * s)
        )
        amp = np.vdot(psi_t, U_sched @ psi_i)
        metrics["transfer_fidelity"] = float(abs(amp) ** 2)
        sup_in = (psi_i + s) / np.sqrt(2.0)
        sup_out = (psi_t + s) / np.sqrt(2.0)
        metrics["superposition_fidelity"] = float(
            abs(np.vdot(sup_out, U_sched @ sup_in)) ** 2
        )
    return metrics
