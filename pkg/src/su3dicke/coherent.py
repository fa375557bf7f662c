"""Field and atomic coherent states.

The radiation factor is the usual displaced vacuum on a truncated Fock
space.  The atomic factor is built twice, by independent routes that must
agree: (a) the terminating exponential series of the nilpotent raising
combination applied to the lowest-weight state, and (b) the explicit
four-fold pattern sum whose scalar weights come from matrix powers of the
double-raising operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .gt import GeneratorSet, IrrepSpec, enumerate_patterns, generators_for, lowest_weight_index

__all__ = [
    "FieldCoherent",
    "AtomicCoherent",
    "TruncationError",
    "field_coherent",
    "su3_coherent_exp",
    "su3_coherent_gt",
    "nilpotent_expm_apply",
]


class TruncationError(ValueError):
    """Fock cutoff too small for the requested displacement amplitude."""


@dataclass(frozen=True)
class FieldCoherent:
    """Normalized truncated coherent vector of the field mode."""

    alpha: complex
    n_max: int
    amplitudes: np.ndarray  # length n_max + 1, unit norm
    leakage: float  # probability lost to the truncated tail

    @property
    def photon_number(self) -> float:
        return float(np.sum(np.arange(self.n_max + 1) * np.abs(self.amplitudes) ** 2))

    def to_json(self) -> str:
        import json

        return json.dumps(
            {
                "alpha": [self.alpha.real, complex(self.alpha).imag],
                "n_max": self.n_max,
                "leakage": self.leakage,
                "amplitudes": [[z.real, z.imag] for z in self.amplitudes],
            }
        )


def field_coherent(alpha: complex, n_max: int, leak_tol: float = 1e-8) -> FieldCoherent:
    """Displaced vacuum truncated at `n_max` photons and renormalized.

    Amplitudes follow exp(-|alpha|^2/2) alpha^nu / sqrt(nu!).  The weight
    beyond the cutoff (leakage) must stay below `leak_tol`; pass
    ``leak_tol=None`` to skip the check.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    amps = np.zeros(n_max + 1, dtype=complex)
    amps[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for nu in range(1, n_max + 1):
        amps[nu] = amps[nu - 1] * alpha / math.sqrt(nu)
    kept = float(np.sum(np.abs(amps) ** 2))
    leakage = max(0.0, 1.0 - kept)
    if leak_tol is not None and leakage > leak_tol:
        raise TruncationError(
            f"leakage {leakage:.3e} > {leak_tol:.1e}; raise n_max for |alpha|={abs(alpha):.3f}"
        )
    amps /= math.sqrt(kept)
    return FieldCoherent(alpha=alpha, n_max=n_max, amplitudes=amps, leakage=leakage)


@dataclass(frozen=True)
class AtomicCoherent:
    """Normalized SU(3) coherent vector in the canonical pattern basis."""

    gamma1: complex
    gamma2: complex
    gamma3: complex
    irrep: IrrepSpec
    amplitudes: np.ndarray  # length d_h, unit norm

    def to_json(self) -> str:
        import json

        return json.dumps(
            {
                "gammas": [[complex(g).real, complex(g).imag] for g in
                           (self.gamma1, self.gamma2, self.gamma3)],
                "irrep": self.irrep.as_tuple(),
                "amplitudes": [[z.real, z.imag] for z in self.amplitudes],
            }
        )


def nilpotent_expm_apply(x: np.ndarray, v: np.ndarray) -> np.ndarray:
    """exp(x) @ v for strictly triangular x; the series terminates exactly."""
    acc = v.astype(x.dtype, copy=True)
    term = acc.copy()
    for k in range(1, x.shape[0] + 1):
        term = x @ term / k
        if not term.any():
            break
        acc += term
    return acc


def _raising_combination(gammas, gens: GeneratorSet) -> np.ndarray:
    g1, g2, g3 = gammas
    return g3 * gens.e12_dag + g2 * gens.e13_dag + g1 * gens.e23_dag


def su3_coherent_exp(gammas, irrep: IrrepSpec, gens: GeneratorSet | None = None) -> AtomicCoherent:
    """Coherent vector exp(g3 e12+ + g2 e13+ + g1 e23+) |lowest>, normalized."""
    if gens is None:
        gens = generators_for(irrep)
    g1, g2, g3 = (complex(g) for g in gammas)
    x = _raising_combination((g1, g2, g3), gens).astype(complex)
    v = np.zeros(irrep.dimension, dtype=complex)
    v[lowest_weight_index(irrep)] = 1.0
    amps = nilpotent_expm_apply(x, v)
    amps = amps / np.linalg.norm(amps)
    return AtomicCoherent(gamma1=g1, gamma2=g2, gamma3=g3, irrep=irrep, amplitudes=amps)


@lru_cache(maxsize=None)
def _double_raising_powers(irrep: IrrepSpec) -> tuple[np.ndarray, ...]:
    """Powers (e13+)^p for p = 0..n_c; the operator is nilpotent beyond that."""
    gens = generators_for(irrep)
    powers = [np.eye(irrep.dimension)]
    for _ in range(irrep.n_c):
        powers.append(gens.e13_dag @ powers[-1])
    return tuple(powers)


def _s_scalar(irrep: IrrepSpec, ell: int, m: int, n: int) -> float:
    """Weight of the (ell, m) pattern shift produced by (e13+)^(ell+m).

    Defined as the matrix element of the power between the pattern with
    middle row (h1, h2 - n), bottom row h1 and the pattern with middle row
    (h1 - ell, h2 - n - m), bottom row h1 - ell - m.  S(0, 0, n) = 1.
    """
    h1, h2, h3 = irrep.h1, irrep.h2, irrep.h3
    index = {(p.q1, p.q2, p.r): i for i, p in enumerate(enumerate_patterns(irrep))}
    src = index[(h1, h2 - n, h1)]
    dst = index.get((h1 - ell, h2 - n - m, h1 - ell - m))
    if dst is None:
        return 0.0
    return float(_double_raising_powers(irrep)[ell + m][dst, src])


@dataclass(frozen=True)
class CoherentSumTables:
    """Monomial table of the four-fold pattern sum for one irrep.

    The unnormalized amplitudes are  collect @ (g1^p1 * c^p2 * g3^p3)
    where c = g2 + g1 g3 / 2; `collect` scatters weighted monomials onto
    their target patterns.
    """

    p1: np.ndarray
    p2: np.ndarray
    p3: np.ndarray
    collect: "object"  # d_h x n_terms sparse matrix with the weights

    def amplitudes(self, g1, g2, g3) -> np.ndarray:
        c = g2 + 0.5 * g1 * g3
        return self.collect @ (g1**self.p1 * c**self.p2 * g3**self.p3)


@lru_cache(maxsize=None)
def coherent_sum_tables(irrep: IrrepSpec) -> CoherentSumTables:
    import scipy.sparse as sp

    h1, h2, h3 = irrep.h1, irrep.h2, irrep.h3
    index = {(p.q1, p.q2, p.r): i for i, p in enumerate(enumerate_patterns(irrep))}
    rows, cols, weights, p1, p2, p3 = [], [], [], [], [], []
    term = 0
    for n in range(h2 - h3 + 1):
        for ell in range(h1 - h2 + 1):
            for m in range(h2 - h3 - n + 1):
                s = _s_scalar(irrep, ell, m, n)
                if s == 0.0:
                    continue
                base = math.sqrt(math.comb(h2 - h3, n)) * s / math.factorial(ell + m)
                for j in range(h1 - h2 - ell + n + 1):
                    pat = (h1 - ell, h2 - n - m, h1 - ell - m - j)
                    w = base * math.sqrt(
                        math.comb(h1 - h2 - ell + n, j) * math.comb(m + j, j)
                    )
                    rows.append(index[pat])
                    cols.append(term)
                    weights.append(w)
                    p1.append(n)
                    p2.append(ell + m)
                    p3.append(j)
                    term += 1
    collect = sp.csr_matrix(
        (weights, (rows, cols)), shape=(irrep.dimension, term)
    )
    return CoherentSumTables(
        p1=np.array(p1), p2=np.array(p2), p3=np.array(p3), collect=collect
    )


def su3_coherent_gt(gammas, irrep: IrrepSpec) -> AtomicCoherent:
    """Coherent vector from the explicit four-fold Gelfand-Tsetlin sum.

    The sum expands the ordered product
    exp(g3 e12+) exp(c e13+) exp(g1 e23+) |lowest>; because [e23+, e12+]
    = e13+ is central among the raising operators, evaluating it at
    c = g2 + g1 g3 / 2 makes it equal to the symmetric exponential used by
    :func:`su3_coherent_exp`.
    """
    g1, g2, g3 = (complex(g) for g in gammas)
    amps = coherent_sum_tables(irrep).amplitudes(g1, g2, g3)
    amps = amps / np.linalg.norm(amps)
    return AtomicCoherent(gamma1=g1, gamma2=g2, gamma3=g3, irrep=irrep, amplitudes=amps)
