"""Exact ground states, fidelities and Fock-truncation control.

Ground states come from dense Hermitian diagonalization (lowest two
eigenpairs, which also yields the degeneracy gap).  Fidelity is the
squared overlap |<u|v>|^2; it compares the coherent product state with the
exact ground state, and neighboring exact ground states along grid scans,
whose drops mark quantum phase transitions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg as sla

from .coherent import field_coherent, su3_coherent_exp
from .gt import GeneratorSet
from .model import ModelParams, ProductOperator, build_hamiltonian
from .variational import VariationalResult

__all__ = [
    "GroundSolution",
    "FidelityRecord",
    "ground_state",
    "fidelity",
    "embed_coherent",
    "coherent_vs_quantum",
    "neighbor_fidelity_scan",
    "converge_truncation",
]

DEGENERACY_GAP = 1e-12


@dataclass(frozen=True)
class GroundSolution:
    """Lowest eigenpair of one Hamiltonian, gauge-fixed and flagged."""

    energy: float
    vector: np.ndarray
    n_max: int
    gap: float  # E1 - E0
    degenerate: bool
    ok: bool = True
    convergence_gap: float | None = None  # |E(n_max) - E(n_max - step)|
    audit: tuple[tuple[int, float], ...] | None = None  # (n_max, energy) trail


def _gauge_fix(vec: np.ndarray) -> np.ndarray:
    """Make the largest-magnitude amplitude real positive."""
    k = int(np.argmax(np.abs(vec)))
    z = vec[k]
    if z == 0:
        return vec
    return vec * (abs(z) / z)


def ground_state(op: ProductOperator) -> GroundSolution:
    """Lowest eigenpair by dense diagonalization; failures are flagged."""
    dense = op.dense()
    try:
        vals, vecs = sla.eigh(dense, subset_by_index=(0, min(1, op.dim - 1)))
    except (sla.LinAlgError, ValueError):
        return GroundSolution(
            energy=math.nan,
            vector=np.full(op.dim, math.nan),
            n_max=op.n_max,
            gap=math.nan,
            degenerate=False,
            ok=False,
        )
    gap = float(vals[1] - vals[0]) if len(vals) > 1 else math.inf
    degenerate = gap < DEGENERACY_GAP
    vector = vecs[:, 0]
    if degenerate and op.parity_diag is not None and vecs.shape[1] > 1:
        # the doublet rotation returned by the eigensolver is arbitrary
        # once the splitting is below machine precision; resolve it along
        # the exact parity symmetry and keep the ground sector (+1)
        pv = op.parity_diag[:, None] * vecs
        pm = vecs.T @ pv
        w, u = np.linalg.eigh(0.5 * (pm + pm.T))
        vector = vecs @ u[:, int(np.argmax(w))]
        vector = vector / np.linalg.norm(vector)
    return GroundSolution(
        energy=float(vals[0]),
        vector=_gauge_fix(vector),
        n_max=op.n_max,
        gap=gap,
        degenerate=degenerate,
    )


def fidelity(u: np.ndarray, v: np.ndarray) -> float:
    """|<u|v>|^2 for normalized vectors of equal dimension."""
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch {u.shape} vs {v.shape}")
    return float(abs(np.vdot(u, v)) ** 2)


def embed_coherent(atomic_amplitudes: np.ndarray, alpha: complex, n_max: int) -> np.ndarray:
    """Coherent product state on the pattern-major product basis."""
    fc = field_coherent(alpha, n_max, leak_tol=None)
    return np.kron(atomic_amplitudes, fc.amplitudes)


def coherent_vs_quantum(vr: VariationalResult, gs: GroundSolution, gens: GeneratorSet) -> float:
    """F(Coh, Q): overlap of the variational product state with the exact one."""
    p = vr.params_min
    atomic = su3_coherent_exp(p.gammas, gens.irrep, gens)
    coh = embed_coherent(atomic.amplitudes, p.alpha, gs.n_max)
    return fidelity(coh, gs.vector)


@dataclass(frozen=True)
class FidelityRecord:
    """F(Q, Q) between one grid point and its successor along a scan."""

    row: int
    col: int
    direction: str  # "horizontal" (successor in col) or "vertical" (in row)
    f_qq: float
    marker: bool  # drop below 1 - qpt_delta
    reliable: bool = True  # False when either endpoint is degenerate/failed


def _padded_overlap(a: GroundSolution, b: GroundSolution) -> float:
    """F(Q,Q) allowing different Fock cutoffs; the shorter tail is zero."""
    if a.n_max == b.n_max:
        return fidelity(a.vector, b.vector)
    n = max(a.n_max, b.n_max)

    def pad(sol):
        d_h = sol.vector.size // (sol.n_max + 1)
        block = sol.vector.reshape(d_h, sol.n_max + 1)
        out = np.zeros((d_h, n + 1), dtype=sol.vector.dtype)
        out[:, : sol.n_max + 1] = block
        return out.ravel()

    return fidelity(pad(a), pad(b))


def neighbor_fidelity_scan(
    grid: list[list[GroundSolution]], direction: str, qpt_delta: float = 1e-3
) -> list[FidelityRecord]:
    """Successor fidelities along rows ("horizontal") or columns ("vertical").

    `grid[i][j]` holds the ground solution at row i (second coupling) and
    column j (first coupling).  The last point of each line has no
    successor and yields no record.
    """
    if direction not in ("horizontal", "vertical"):
        raise ValueError(f"unknown scan direction {direction!r}")
    n_rows = len(grid)
    n_cols = len(grid[0])
    records = []
    for i in range(n_rows):
        for j in range(n_cols):
            if direction == "horizontal":
                if j + 1 >= n_cols:
                    continue
                a, b = grid[i][j], grid[i][j + 1]
            else:
                if i + 1 >= n_rows:
                    continue
                a, b = grid[i][j], grid[i + 1][j]
            reliable = a.ok and b.ok and not (a.degenerate or b.degenerate)
            f = _padded_overlap(a, b) if reliable else math.nan
            records.append(
                FidelityRecord(
                    row=i,
                    col=j,
                    direction=direction,
                    f_qq=f,
                    marker=bool(reliable and f < 1.0 - qpt_delta),
                    reliable=reliable,
                )
            )
    return records


def converge_truncation(
    params: ModelParams,
    gens: GeneratorSet,
    start_n_max: int = 40,
    step: int = 20,
    conv_tol: float = 1e-8,
    max_n_max: int = 400,
) -> GroundSolution:
    """Grow the Fock cutoff until the ground energy stabilizes.

    Returns the final solution carrying the audit trail of (n_max, energy)
    pairs and the last energy change.  Raises if the budget `max_n_max` is
    exhausted before reaching `conv_tol`.
    """
    audit = []
    previous = None
    n_max = start_n_max
    while n_max <= max_n_max:
        sol = ground_state(build_hamiltonian(params, gens, n_max))
        audit.append((n_max, sol.energy))
        if previous is not None and abs(sol.energy - previous.energy) < conv_tol:
            return replace(
                sol,
                convergence_gap=abs(sol.energy - previous.energy),
                audit=tuple(audit),
            )
        previous = sol
        n_max += step
    raise RuntimeError(
        f"ground energy not converged to {conv_tol} within n_max <= {max_n_max}: {audit}"
    )
