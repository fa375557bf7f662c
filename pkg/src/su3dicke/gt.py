"""SU(3) irreducible representations in the Gelfand-Tsetlin basis.

An irrep is labeled by its top row h = (h1, h2, h3) of non-negative
integers with h1 >= h2 >= h3; for N three-level atoms h1 + h2 + h3 = N.
Basis states are triangular patterns

    h1  h2  h3
      q1  q2
        r

whose rows interlace (betweenness).  The pattern entries read directly as
level populations: n1 = r atoms in the lowest level, n2 = q1 + q2 - r in
the middle level, n3 = N - q1 - q2 in the top level.

The collective ladder operators e12, e23 (and e13 = [e12, e23]) move one
atom down in energy; their adjoints move one atom up.  Matrix elements are
the standard orthonormal-basis ladder formulas for the su(2) chains inside
su(3): e12 acts on the bottom row, e23 on the middle row (two branches).
All matrix elements are real and non-negative in the canonical basis; the
construction is checked against the su(3) commutation relations, Casimir
scalarity and the Schwinger three-boson realization in the test suite.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "GTPattern",
    "IrrepSpec",
    "GeneratorSet",
    "enumerate_patterns",
    "build_generators",
    "generators_for",
    "cooperation_number",
    "lowest_weight_index",
]


@dataclass(frozen=True)
class IrrepSpec:
    """SU(3) irrep label (h1, h2, h3); also fixes the atom count N = h1+h2+h3."""

    h1: int
    h2: int
    h3: int

    def __post_init__(self):
        for v in (self.h1, self.h2, self.h3):
            if not isinstance(v, (int, np.integer)) or v < 0:
                raise ValueError(f"irrep entries must be non-negative integers, got {self}")
        if not (self.h1 >= self.h2 >= self.h3):
            raise ValueError(f"irrep rows must be non-increasing: {self}")

    @property
    def N(self) -> int:
        return self.h1 + self.h2 + self.h3

    @property
    def n_c(self) -> int:
        """Cooperation number: the largest possible population difference."""
        return self.h1 - self.h3

    @property
    def dimension(self) -> int:
        return (self.h1 - self.h2 + 1) * (self.h2 - self.h3 + 1) * (self.h1 - self.h3 + 2) // 2

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.h1, self.h2, self.h3)

    @classmethod
    def parse(cls, text: str) -> "IrrepSpec":
        """Parse an irrep from 'h1,h2,h3' form as used on the command line."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected 'h1,h2,h3', got {text!r}")
        return cls(*(int(p) for p in parts))

    def __str__(self) -> str:
        return f"{self.h1},{self.h2},{self.h3}"


@dataclass(frozen=True)
class GTPattern:
    """One Gelfand-Tsetlin pattern; rows (h1,h2,h3), (q1,q2), (r)."""

    h1: int
    h2: int
    h3: int
    q1: int
    q2: int
    r: int

    def __post_init__(self):
        ok = (
            self.h1 >= self.q1 >= self.h2
            and self.h2 >= self.q2 >= self.h3
            and self.q1 >= self.r >= self.q2
            and self.h3 >= 0
        )
        if not ok:
            raise ValueError(f"betweenness violated for pattern {self}")

    @property
    def populations(self) -> tuple[int, int, int]:
        """Atoms per level (n1, n2, n3), lowest level first."""
        n = self.h1 + self.h2 + self.h3
        return (self.r, self.q1 + self.q2 - self.r, n - self.q1 - self.q2)


def enumerate_patterns(irrep: IrrepSpec) -> list[GTPattern]:
    """All patterns of `irrep` in canonical order: (q1, q2, r) descending.

    The order is the basis ordering used everywhere else in the package;
    the lowest-weight pattern (q1, q2, r) = (h1, h2, h1) comes first.
    """
    h1, h2, h3 = irrep.h1, irrep.h2, irrep.h3
    pats = [
        GTPattern(h1, h2, h3, q1, q2, r)
        for q1 in range(h1, h2 - 1, -1)
        for q2 in range(h2, h3 - 1, -1)
        for r in range(q1, q2 - 1, -1)
    ]
    if len(pats) != irrep.dimension:
        raise AssertionError(
            f"pattern count {len(pats)} != dimension {irrep.dimension} for {irrep}"
        )
    return pats


def cooperation_number(irrep: IrrepSpec) -> int:
    return irrep.n_c


def lowest_weight_index(irrep: IrrepSpec) -> int:
    """Basis index of the pattern with populations (h1, h2, h3).

    This is the atoms' lowest-energy state when the level energies are
    ordered, and the seed state of the coherent-state constructions.
    """
    target = (irrep.h1, irrep.h2, irrep.h1)
    for i, p in enumerate(enumerate_patterns(irrep)):
        if (p.q1, p.q2, p.r) == target:
            return i
    raise AssertionError(f"lowest-weight pattern missing for {irrep}")


@dataclass(frozen=True)
class GeneratorSet:
    """Dense matrices of the collective atomic operators on one irrep.

    e12, e23, e13 move one atom down in energy (level 2->1, 3->2, 3->1);
    the `_dag` partners move it up.  e11, e22, e33 are the diagonal level
    populations, jz1 = (e22 - e11)/2 and jz2 = (e33 - e22)/2 the half
    population differences.  All entries are real; adjoint = transpose.
    """

    irrep: IrrepSpec
    basis: tuple[GTPattern, ...]
    e12: np.ndarray
    e23: np.ndarray
    e13: np.ndarray
    e12_dag: np.ndarray
    e23_dag: np.ndarray
    e13_dag: np.ndarray
    e11: np.ndarray
    e22: np.ndarray
    e33: np.ndarray
    jz1: np.ndarray
    jz2: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def lowest_weight(self) -> int:
        return lowest_weight_index(self.irrep)

    def lowering(self, i: int, j: int) -> np.ndarray:
        """The operator e_ij (i < j) taking one atom from level j to level i."""
        try:
            return {(1, 2): self.e12, (2, 3): self.e23, (1, 3): self.e13}[(i, j)]
        except KeyError:
            raise ValueError(f"no lowering operator e{i}{j}") from None

    def to_diagnostic_json(self) -> str:
        """Dump basis and dense matrices for out-of-process comparison."""
        payload = {
            "irrep": self.irrep.as_tuple(),
            "basis": [[p.q1, p.q2, p.r] for p in self.basis],
            "matrices": {
                name: getattr(self, name).tolist()
                for name in ("e12", "e23", "e13", "e11", "e22", "e33", "jz1", "jz2")
            },
        }
        return json.dumps(payload, sort_keys=True)


def _e12_matrix(patterns, index) -> np.ndarray:
    """e12 raises the bottom row: r -> r + 1, amplitude sqrt((q1-r)(r-q2+1))."""
    d = len(patterns)
    m = np.zeros((d, d))
    for col, p in enumerate(patterns):
        if p.r < p.q1:
            row = index[(p.q1, p.q2, p.r + 1)]
            m[row, col] = math.sqrt((p.q1 - p.r) * (p.r - p.q2 + 1))
    return m


def _e23_matrix(patterns, index, irrep) -> np.ndarray:
    """e23 raises the middle row: q1 -> q1+1 or q2 -> q2+1 (two branches)."""
    h1, h2, h3 = irrep.h1, irrep.h2, irrep.h3
    d = len(patterns)
    m = np.zeros((d, d))
    for col, p in enumerate(patterns):
        q1, q2, r = p.q1, p.q2, p.r
        if q1 < h1:
            num = (h1 - q1) * (q1 - h2 + 1) * (q1 - h3 + 2) * (q1 - r + 1)
            den = (q1 - q2 + 1) * (q1 - q2 + 2)
            row = index[(q1 + 1, q2, r)]
            m[row, col] = math.sqrt(num / den)
        if q2 < h2 and q2 + 1 <= r and q2 + 1 <= q1:
            num = (h1 - q2 + 1) * (h2 - q2) * (q2 - h3 + 1) * (r - q2)
            den = (q1 - q2) * (q1 - q2 + 1)
            row = index[(q1, q2 + 1, r)]
            m[row, col] = math.sqrt(num / den)
    return m


def build_generators(irrep: IrrepSpec) -> GeneratorSet:
    """Construct all generator matrices of `irrep` in the canonical basis."""
    patterns = enumerate_patterns(irrep)
    index = {(p.q1, p.q2, p.r): i for i, p in enumerate(patterns)}

    e12 = _e12_matrix(patterns, index)
    e23 = _e23_matrix(patterns, index, irrep)
    e13 = e12 @ e23 - e23 @ e12

    pops = np.array([p.populations for p in patterns], dtype=float)
    e11 = np.diag(pops[:, 0])
    e22 = np.diag(pops[:, 1])
    e33 = np.diag(pops[:, 2])

    return GeneratorSet(
        irrep=irrep,
        basis=tuple(patterns),
        e12=e12,
        e23=e23,
        e13=e13,
        e12_dag=e12.T.copy(),
        e23_dag=e23.T.copy(),
        e13_dag=e13.T.copy(),
        e11=e11,
        e22=e22,
        e33=e33,
        jz1=(e22 - e11) / 2.0,
        jz2=(e33 - e22) / 2.0,
    )


@lru_cache(maxsize=None)
def generators_for(irrep: IrrepSpec) -> GeneratorSet:
    """Cached :func:`build_generators`; safe because results are immutable."""
    return build_generators(irrep)


def all_irreps(n_atoms: int) -> list[IrrepSpec]:
    """Every irrep h1 >= h2 >= h3 >= 0 with h1 + h2 + h3 = n_atoms."""
    out = []
    for h1 in range(n_atoms, -1, -1):
        for h2 in range(min(h1, n_atoms - h1), -1, -1):
            h3 = n_atoms - h1 - h2
            if 0 <= h3 <= h2:
                out.append(IrrepSpec(h1, h2, h3))
    return sorted(out, key=lambda s: s.as_tuple(), reverse=True)
