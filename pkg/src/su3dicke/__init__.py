"""Quantum phases of N three-level atoms coupled to one bosonic field mode.

The package builds SU(3) irreps in the Gelfand-Tsetlin basis, minimizes
the coherent-state energy surface over the coupling plane, diagonalizes
the truncated Hamiltonian exactly, and maps phases and fidelities.
"""

__version__ = "0.1.0"

from .coherent import (
    AtomicCoherent,
    FieldCoherent,
    TruncationError,
    field_coherent,
    su3_coherent_exp,
    su3_coherent_gt,
)
from .exact import (
    FidelityRecord,
    GroundSolution,
    coherent_vs_quantum,
    converge_truncation,
    fidelity,
    ground_state,
    neighbor_fidelity_scan,
)
from .gt import (
    GeneratorSet,
    GTPattern,
    IrrepSpec,
    all_irreps,
    build_generators,
    cooperation_number,
    enumerate_patterns,
    generators_for,
    lowest_weight_index,
)
from .model import (
    ModelParams,
    ProductOperator,
    build_hamiltonian,
    derive_gaps,
    observable_operators,
)
from .sweep import CSV_COLUMNS, GridSpec, SweepConfig, critical_bisect, run_sweep
from .variational import (
    CoherentParams,
    EnergySurface,
    MinimizeOptions,
    VariationalResult,
    classify_phase,
    decoupled_energy,
    energy_surface,
    minimize,
)

__all__ = [
    "__version__",
    "AtomicCoherent",
    "FieldCoherent",
    "TruncationError",
    "field_coherent",
    "su3_coherent_exp",
    "su3_coherent_gt",
    "FidelityRecord",
    "GroundSolution",
    "coherent_vs_quantum",
    "converge_truncation",
    "fidelity",
    "ground_state",
    "neighbor_fidelity_scan",
    "GeneratorSet",
    "GTPattern",
    "IrrepSpec",
    "all_irreps",
    "build_generators",
    "cooperation_number",
    "enumerate_patterns",
    "generators_for",
    "lowest_weight_index",
    "ModelParams",
    "ProductOperator",
    "build_hamiltonian",
    "derive_gaps",
    "observable_operators",
    "CSV_COLUMNS",
    "GridSpec",
    "SweepConfig",
    "critical_bisect",
    "run_sweep",
    "CoherentParams",
    "EnergySurface",
    "MinimizeOptions",
    "VariationalResult",
    "classify_phase",
    "decoupled_energy",
    "energy_surface",
    "minimize",
]
