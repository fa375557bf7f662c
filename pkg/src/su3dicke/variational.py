"""Coherent-state energy surface, its minimization and phase labeling.

The trial state is a product of a field coherent state and an atomic
coherent state.  Field expectations are analytic, so no Fock truncation
enters this path:

    E(alpha, gamma) = w1 <Jz1> + w2 <Jz2> + Omega |alpha|^2
                      - (2 Re alpha / sqrt(N)) sum mu_ij <e_ij + e_ij+>

with the atomic expectations taken in the normalized coherent vector.
Minimization is derivative-free (Nelder-Mead) with deterministic
multi-start: the origin, a fixed set of seeded random points, and an
optional warm start.  In the default real mode the four parameters are
real; the full-complex eight-parameter mode exists to validate that
restriction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.optimize

from .coherent import coherent_sum_tables
from .gt import GeneratorSet, IrrepSpec, lowest_weight_index
from .model import ModelParams

__all__ = [
    "CoherentParams",
    "MinimizeOptions",
    "VariationalResult",
    "EnergySurface",
    "energy_surface",
    "decoupled_energy",
    "minimize",
    "classify_phase",
]

NORMAL = "Normal"
SUPER_RADIANT = "SuperRadiant"

# sign flips of (gamma1, gamma2, gamma3) that send Re(alpha) -> -Re(alpha)
# without changing the energy; one diagonal parity per configuration
_GAMMA_FLIP = {
    "xi": (-1.0, 1.0, -1.0),
    "lambda": (-1.0, -1.0, 1.0),
    "v": (1.0, -1.0, -1.0),
}


@dataclass(frozen=True)
class CoherentParams:
    """Variational parameters: field amplitude and three atomic parameters."""

    alpha: complex = 0.0
    gamma1: complex = 0.0
    gamma2: complex = 0.0
    gamma3: complex = 0.0

    @property
    def gammas(self) -> tuple[complex, complex, complex]:
        return (self.gamma1, self.gamma2, self.gamma3)

    def to_vector(self, mode: str) -> np.ndarray:
        vals = (self.alpha, self.gamma1, self.gamma2, self.gamma3)
        if mode == "real":
            return np.array([v.real if isinstance(v, complex) else float(v) for v in vals])
        return np.array(
            [f(complex(v)) for v in vals for f in (lambda z: z.real, lambda z: z.imag)]
        )

    @classmethod
    def from_vector(cls, x, mode: str) -> "CoherentParams":
        if mode == "real":
            return cls(*(float(v) for v in x))
        z = [complex(x[2 * k], x[2 * k + 1]) for k in range(4)]
        return cls(*z)


@dataclass(frozen=True)
class MinimizeOptions:
    """Knobs of the multi-start simplex search; all deterministic."""

    n_starts: int = 8  # random starts beyond origin and warm start
    seed: int = 7
    mode: str = "real"  # "real" (4 parameters) or "complex" (8)
    fatol: float = 1e-10
    xatol: float = 1e-8
    maxfev: int = 6000
    n_tol: float = 1e-6  # photon threshold for the Normal label
    e_tol: float = 1e-8  # energy slack below E0 for the Normal label
    alpha_scale: float = 5.0  # spread of random alpha starts
    gamma_scale: float = 2.0  # spread of random gamma starts


@dataclass(frozen=True)
class VariationalResult:
    params_min: CoherentParams
    energy: float
    photon_number: float
    jz1: float
    jz2: float
    phase: str
    restarts_used: int
    spread: float
    converged: bool = True


class EnergySurface:
    """Closed-form energy of the coherent product state at one model point.

    Callable on parameter vectors (per MinimizeOptions mode) for the
    minimizer; `observables` reports the atomic expectations at a point.
    The four quadratic forms needed per evaluation (norm, Jz1, Jz2 and the
    combined coupling operator) are precontracted onto the monomial table
    of the atomic coherent sum, so one evaluation is a single small
    einsum over monomials.
    """

    def __init__(self, params: ModelParams, gens: GeneratorSet):
        self.params = params
        self.gens = gens
        self.root_n = math.sqrt(gens.irrep.N)
        self.lw = lowest_weight_index(gens.irrep)
        # combined coupling operator: sum mu_ij (e_ij + e_ij+)
        w = np.zeros((gens.dimension, gens.dimension))
        for name, mat in (("mu12", gens.e12), ("mu13", gens.e13), ("mu23", gens.e23)):
            mu = params.couplings[name]
            if mu:
                w = w + mu * (mat + mat.T)
        self.coupling_op = w
        self.tables = coherent_sum_tables(gens.irrep)
        c = self.tables.collect.toarray()
        self.quad_forms = np.stack(
            [c.T @ c, c.T @ gens.jz1 @ c, c.T @ gens.jz2 @ c, c.T @ w @ c]
        )

    def _monomials(self, g1, g2, g3):
        c = g2 + 0.5 * g1 * g3
        return g1**self.tables.p1 * c**self.tables.p2 * g3**self.tables.p3

    def atomic_vector(self, gammas) -> np.ndarray:
        amps = self.tables.collect @ self._monomials(*gammas)
        return amps / np.linalg.norm(amps)

    def observables(self, p: CoherentParams) -> dict[str, float]:
        norm2, jz1, jz2, coupling = self._quadratics(p.gammas)
        return {
            "jz1": float(jz1 / norm2),
            "jz2": float(jz2 / norm2),
            "coupling": float(coupling / norm2),
        }

    def _quadratics(self, gammas):
        mono = self._monomials(*gammas)
        if mono.dtype == np.complex128:
            vals = np.einsum("t,ktu,u->k", mono.conj(), self.quad_forms, mono).real
        else:
            vals = np.einsum("t,ktu,u->k", mono, self.quad_forms, mono)
        return vals

    def energy(self, p: CoherentParams) -> float:
        alpha = complex(p.alpha)
        norm2, jz1, jz2, coupling = self._quadratics(p.gammas)
        return float(
            self.params.omega1 * jz1 / norm2
            + self.params.omega2 * jz2 / norm2
            + self.params.Omega * abs(alpha) ** 2
            - (2.0 * alpha.real / self.root_n) * coupling / norm2
        )

    def __call__(self, x: np.ndarray, mode: str = "real") -> float:
        if mode == "real":
            alpha, g1, g2, g3 = x
            norm2, jz1, jz2, coupling = self._quadratics((g1, g2, g3))
            return (
                self.params.omega1 * jz1 / norm2
                + self.params.omega2 * jz2 / norm2
                + self.params.Omega * alpha * alpha
                - (2.0 * alpha / self.root_n) * coupling / norm2
            )
        return self.energy(CoherentParams.from_vector(x, mode))


def energy_surface(p: CoherentParams, params: ModelParams, gens: GeneratorSet) -> float:
    """One-shot evaluation; build an EnergySurface for repeated calls."""
    return EnergySurface(params, gens).energy(p)


def decoupled_energy(params: ModelParams, irrep: IrrepSpec) -> float:
    """Ground energy at zero coupling: lowest weight (x) photon vacuum."""
    return (
        params.omega1 * (irrep.h2 - irrep.h1) / 2.0
        + params.omega2 * (irrep.h3 - irrep.h2) / 2.0
    )


def _starting_points(opts: MinimizeOptions, dim: int) -> list[np.ndarray]:
    rng = np.random.default_rng(opts.seed)
    starts = [np.zeros(dim)]
    for _ in range(opts.n_starts):
        x = rng.uniform(-opts.gamma_scale, opts.gamma_scale, size=dim)
        x[0] = rng.uniform(0.0, opts.alpha_scale)  # real part of alpha
        starts.append(x)
    return starts


def _canonical_sign(p: CoherentParams, config: str) -> CoherentParams:
    """Resolve the two degenerate minima (+-alpha) toward Re(alpha) >= 0."""
    if complex(p.alpha).real >= 0.0:
        return p
    s1, s2, s3 = _GAMMA_FLIP[config]
    return CoherentParams(
        alpha=-complex(p.alpha),
        gamma1=s1 * complex(p.gamma1),
        gamma2=s2 * complex(p.gamma2),
        gamma3=s3 * complex(p.gamma3),
    )


def minimize(
    params: ModelParams,
    gens: GeneratorSet,
    opts: MinimizeOptions = MinimizeOptions(),
    warm_start: CoherentParams | None = None,
) -> VariationalResult:
    """Best of deterministic multi-start Nelder-Mead over the surface.

    The origin is always kept as a raw candidate, so the reported energy
    never exceeds the decoupled energy.  A failed convergence of every
    start flags the record instead of raising.
    """
    surface = EnergySurface(params, gens)
    dim = 4 if opts.mode == "real" else 8
    starts = _starting_points(opts, dim)
    if warm_start is not None:
        starts.append(warm_start.to_vector(opts.mode))

    def search(x0, fatol, xatol, maxfev):
        return scipy.optimize.minimize(
            surface,
            x0,
            args=(opts.mode,),
            method="Nelder-Mead",
            options={"fatol": fatol, "xatol": xatol, "maxfev": maxfev},
        )

    # coarse pass over every start, then polish the two best basins at the
    # final tolerance; index tiebreaks keep everything deterministic
    coarse_fatol = max(opts.fatol, 1e-6)
    coarse = [search(x0, coarse_fatol, 1e-4, opts.maxfev) for x0 in starts]
    order = sorted(range(len(coarse)), key=lambda k: (coarse[k].fun, k))
    polished = [search(coarse[k].x, opts.fatol, opts.xatol, opts.maxfev) for k in order[:2]]

    converged = [r for r in polished if r.success]
    pool = converged if converged else polished
    best = min(pool, key=lambda r: r.fun)
    coarse_ok = [r.fun for r in coarse if r.success]

    origin = CoherentParams()
    e0 = surface.energy(origin)  # equals decoupled_energy exactly
    # snap to the origin when the improvement is below arithmetic noise;
    # keeps decoupled points at exactly zero photons
    if best.fun >= e0 - 1e-13 * (1.0 + abs(e0)):
        p_min, energy = origin, e0
    else:
        p_min = _canonical_sign(CoherentParams.from_vector(best.x, opts.mode), params.config)
        energy = float(best.fun)

    obs = surface.observables(p_min)
    photons = abs(complex(p_min.alpha)) ** 2
    spread = max(coarse_ok) - min(coarse_ok) if coarse_ok else math.nan
    phase = classify_phase(energy, photons, e0, n_tol=opts.n_tol, e_tol=opts.e_tol)
    return VariationalResult(
        params_min=p_min,
        energy=energy,
        photon_number=photons,
        jz1=obs["jz1"],
        jz2=obs["jz2"],
        phase=phase,
        restarts_used=len(starts),
        spread=float(spread),
        converged=bool(converged),
    )


def classify_phase(
    energy: float, photon_number: float, e0: float, n_tol: float = 1e-6, e_tol: float = 1e-8
) -> str:
    """Normal iff the minimum sits at the decoupled point within tolerance."""
    if photon_number < n_tol and energy > e0 - e_tol:
        return NORMAL
    return SUPER_RADIANT
