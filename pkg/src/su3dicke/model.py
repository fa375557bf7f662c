"""Model parameters and operators on the atoms (x) field product space.

H = w1 Jz1 + w2 Jz2 + Omega a+a - (1/sqrt(N)) sum_{i<j} mu_ij (e_ij + e_ij+)(a + a+)

with the field truncated at n_max photons.  The product basis is pattern
index major, Fock index minor, so every operator is a Kronecker product of
an atomic block and a field block.  No rotating-wave approximation is
made: the counter-rotating pieces of (e + e+)(a + a+) are kept.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import sqrt

import numpy as np
import scipy.sparse as sp

from .gt import GeneratorSet

__all__ = [
    "CONFIGURATIONS",
    "ModelParams",
    "ProductOperator",
    "derive_gaps",
    "build_hamiltonian",
    "observable_operators",
]

# configuration tag -> coupling forced to zero by the dipole selection rules
CONFIGURATIONS = {"xi": "mu13", "lambda": "mu12", "v": "mu23"}

COUPLING_PAIRS = {"mu12": (1, 2), "mu13": (1, 3), "mu23": (2, 3)}

# population exponent of the atomic parity that anticommutes with both
# active couplings of each configuration; combined with (-1)^nu it is an
# exact symmetry of the full Hamiltonian
_PARITY_EXPONENT = {
    "xi": lambda n1, n2, n3: n2,
    "lambda": lambda n1, n2, n3: n3,
    "v": lambda n1, n2, n3: n2 + n3,
}


def derive_gaps(omega_bar) -> tuple[float, float]:
    """Gap combinations (w1, w2) from ordered level energies (wb1, wb2, wb3).

    Setting the energy zero at the level average turns the diagonal atomic
    part into w1 Jz1 + w2 Jz2 with
    w1 = -(4/3) wb1 + (2/3) wb2 + (2/3) wb3 and
    w2 = -(2/3) wb1 - (2/3) wb2 + (4/3) wb3.
    """
    wb1, wb2, wb3 = (float(w) for w in omega_bar)
    if not (wb1 <= wb2 <= wb3):
        raise ValueError(f"level energies must be ordered, got {omega_bar}")
    w1 = -(4.0 / 3.0) * wb1 + (2.0 / 3.0) * wb2 + (2.0 / 3.0) * wb3
    w2 = -(2.0 / 3.0) * wb1 - (2.0 / 3.0) * wb2 + (4.0 / 3.0) * wb3
    return (w1, w2)


@dataclass(frozen=True)
class ModelParams:
    """Frequencies, couplings and atom configuration of one model point.

    The atom count N is owned by the irrep (N = h1 + h2 + h3) and enters
    operator assembly through the generator set, so it is not duplicated
    here; the same ModelParams drives every irrep of a sweep.
    """

    omega1: float
    omega2: float
    Omega: float
    mu12: float = 0.0
    mu13: float = 0.0
    mu23: float = 0.0
    config: str = "xi"

    def __post_init__(self):
        if self.config not in CONFIGURATIONS:
            raise ValueError(f"unknown configuration {self.config!r}")
        forbidden = CONFIGURATIONS[self.config]
        if getattr(self, forbidden) != 0.0:
            raise ValueError(
                f"{self.config} configuration forbids {forbidden}, got {getattr(self, forbidden)}"
            )

    @classmethod
    def from_levels(cls, levels, Omega, config="xi", **mus) -> "ModelParams":
        w1, w2 = derive_gaps(levels)
        return cls(omega1=w1, omega2=w2, Omega=Omega, config=config, **mus)

    @property
    def couplings(self) -> dict[str, float]:
        return {"mu12": self.mu12, "mu13": self.mu13, "mu23": self.mu23}

    @property
    def active_axes(self) -> tuple[str, str]:
        """The two couplings a sweep can drive, in index order."""
        return tuple(k for k in ("mu12", "mu13", "mu23") if k != CONFIGURATIONS[self.config])

    def at(self, **mus) -> "ModelParams":
        return replace(self, **mus)


@dataclass(frozen=True)
class ProductOperator:
    """Sparse Hermitian operator on the pattern-major product basis.

    `parity_diag`, when present, is the diagonal of the exact parity
    symmetry of the operator, normalized to +1 on the sector that holds
    the adiabatically-connected ground state (lowest weight x vacuum).
    """

    matrix: sp.csr_matrix
    d_h: int
    n_max: int
    parity_diag: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.d_h * (self.n_max + 1)

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def expectation(self, vec: np.ndarray) -> float:
        return float(np.real(np.vdot(vec, self.matrix @ vec)))


def _field_blocks(n_max: int):
    nu = np.arange(n_max + 1, dtype=float)
    number = sp.diags(nu)
    a = sp.diags(np.sqrt(nu[1:]), offsets=1)  # annihilation
    quad = a + a.T  # a + a+
    ident = sp.identity(n_max + 1, format="csr")
    return ident, number, quad


def build_hamiltonian(params: ModelParams, gens: GeneratorSet, n_max: int) -> ProductOperator:
    """Assemble the full Hamiltonian at one coupling point.

    Raises ValueError when a coupling forbidden by the configuration is
    nonzero or n_max is negative.  The result is exactly symmetric because
    every term is a Kronecker product of symmetric real blocks.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    d = gens.dimension
    ident_f, number, quad = _field_blocks(n_max)
    ident_a = sp.identity(d, format="csr")

    h = sp.kron(sp.csr_matrix(params.omega1 * gens.jz1 + params.omega2 * gens.jz2), ident_f)
    h = h + params.Omega * sp.kron(ident_a, number)
    root_n = sqrt(gens.irrep.N)
    for name, (i, j) in COUPLING_PAIRS.items():
        mu = params.couplings[name]
        if mu == 0.0:
            continue
        w = gens.lowering(i, j)
        h = h - (mu / root_n) * sp.kron(sp.csr_matrix(w + w.T), quad)

    exponent = _PARITY_EXPONENT[params.config]
    atom_sign = np.array([(-1.0) ** exponent(*p.populations) for p in gens.basis])
    field_sign = (-1.0) ** np.arange(n_max + 1)
    parity = np.kron(atom_sign, field_sign)
    lw = int(np.argmax([p.populations == gens.irrep.as_tuple() for p in gens.basis]))
    parity = parity * parity[lw * (n_max + 1)]
    return ProductOperator(matrix=h.tocsr(), d_h=d, n_max=n_max, parity_diag=parity)


def observable_operators(gens: GeneratorSet, n_max: int) -> dict[str, ProductOperator]:
    """Photon number and the two Jz observables on the product basis."""
    d = gens.dimension
    ident_f, number, _ = _field_blocks(n_max)
    ident_a = sp.identity(d, format="csr")
    wrap = lambda m: ProductOperator(matrix=m.tocsr(), d_h=d, n_max=n_max)
    return {
        "n_photon": wrap(sp.kron(ident_a, number)),
        "jz1": wrap(sp.kron(sp.csr_matrix(gens.jz1), ident_f)),
        "jz2": wrap(sp.kron(sp.csr_matrix(gens.jz2), ident_f)),
    }
