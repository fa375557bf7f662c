"""Hamiltonian assembly against a dense Kronecker-product oracle."""

import numpy as np
import pytest
import scipy.linalg as sla

from su3dicke.gt import IrrepSpec, generators_for, lowest_weight_index
from su3dicke.model import (
    ModelParams,
    build_hamiltonian,
    derive_gaps,
    observable_operators,
)

FREQS = dict(omega1=4.0 / 3.0, omega2=5.0 / 3.0, Omega=0.5)


def decoupled_ground(irrep, omega1, omega2):
    return omega1 * (irrep.h2 - irrep.h1) / 2.0 + omega2 * (irrep.h3 - irrep.h2) / 2.0


# ---------------------------------------------------------------------------
# gaps


def test_derive_gaps_unit_spaced_levels():
    w1, w2 = derive_gaps((0.0, 1.0, 2.0))
    assert (w1, w2) == (2.0, 2.0)
    # single atom: w1 Jz1 + w2 Jz2 must reproduce level energies (-1, 0, 1)
    gens = generators_for(IrrepSpec(1, 0, 0))
    diag = np.diag(w1 * gens.jz1 + w2 * gens.jz2)
    pops = [p.populations for p in gens.basis]
    by_level = {p.index(1): e for p, e in zip(pops, diag)}
    assert [by_level[k] for k in range(3)] == [-1.0, 0.0, 1.0]


def test_derive_gaps_degenerate_levels():
    assert derive_gaps((3.3, 3.3, 3.3)) == (0.0, 0.0)


def test_derive_gaps_default_operating_point():
    w1, w2 = derive_gaps((0.0, 0.5, 1.5))
    assert w1 == pytest.approx(4.0 / 3.0, abs=1e-15)
    assert w2 == pytest.approx(5.0 / 3.0, abs=1e-15)


def test_derive_gaps_rejects_unordered_levels():
    with pytest.raises(ValueError):
        derive_gaps((1.0, 0.5, 2.0))


# ---------------------------------------------------------------------------
# parameter validation


def test_configuration_forces_coupling_zero():
    with pytest.raises(ValueError):
        ModelParams(**FREQS, mu13=0.1, config="xi")
    with pytest.raises(ValueError):
        ModelParams(**FREQS, mu12=0.1, config="lambda")
    with pytest.raises(ValueError):
        ModelParams(**FREQS, mu23=0.1, config="v")
    p = ModelParams(**FREQS, mu12=0.3, mu23=0.2, config="xi")
    assert p.active_axes == ("mu12", "mu23")
    assert ModelParams(**FREQS, config="lambda").active_axes == ("mu13", "mu23")
    assert ModelParams(**FREQS, config="v").active_axes == ("mu12", "mu13")


# ---------------------------------------------------------------------------
# assembly


def test_decoupled_hamiltonian_is_diagonal():
    irrep = IrrepSpec(4, 0, 0)
    gens = generators_for(irrep)
    params = ModelParams(**FREQS)
    op = build_hamiltonian(params, gens, n_max=6)
    dense = op.dense()
    assert np.array_equal(dense, np.diag(np.diag(dense)))
    assert np.min(np.diag(dense)) == pytest.approx(-8.0 / 3.0, abs=1e-14)


def test_trivial_irrep_has_no_atomic_part():
    # (1,1,1) is one-dimensional: cooperation number zero, atoms invisible
    irrep = IrrepSpec(1, 1, 1)
    gens = generators_for(irrep)
    params = ModelParams(**FREQS, mu12=0.7, mu23=0.4, config="xi")
    op = build_hamiltonian(params, gens, n_max=8)
    ref = np.diag(0.5 * np.arange(9.0))
    assert np.max(np.abs(op.dense() - ref)) == 0.0


def test_single_offdiagonal_block_value():
    irrep = IrrepSpec(3, 1, 0)
    gens = generators_for(irrep)
    n_max = 5
    params = ModelParams(**FREQS, mu12=0.37, config="xi")
    dense = build_hamiltonian(params, gens, n_max).dense()
    lw = lowest_weight_index(irrep)
    up = gens.e12_dag[:, lw]
    target = int(np.nonzero(up)[0][0])
    for nu in range(n_max):
        row = target * (n_max + 1) + nu + 1
        col = lw * (n_max + 1) + nu
        expect = -(0.37 / np.sqrt(4)) * up[target] * np.sqrt(nu + 1)
        assert dense[row, col] == pytest.approx(expect, rel=1e-15)


def kron_oracle(params, gens, n_max):
    """Independent dense assembly by plain numpy Kronecker products."""
    d = gens.dimension
    nu = np.arange(n_max + 1, dtype=float)
    number = np.diag(nu)
    a = np.diag(np.sqrt(nu[1:]), 1)
    quad = a + a.T
    ident_f = np.eye(n_max + 1)
    ident_a = np.eye(d)
    h = np.kron(params.omega1 * gens.jz1 + params.omega2 * gens.jz2, ident_f)
    h += params.Omega * np.kron(ident_a, number)
    pairs = {"mu12": gens.e12, "mu13": gens.e13, "mu23": gens.e23}
    for name, w in pairs.items():
        mu = params.couplings[name]
        if mu:
            h -= (mu / np.sqrt(gens.irrep.N)) * np.kron(w + w.T, quad)
    return h


@pytest.mark.parametrize(
    "irrep,config,mus",
    [
        (IrrepSpec(2, 1, 0), "xi", dict(mu12=0.6, mu23=0.3)),
        (IrrepSpec(2, 1, 0), "lambda", dict(mu13=0.5, mu23=0.2)),
        (IrrepSpec(3, 0, 0), "v", dict(mu12=0.4, mu13=0.7)),
    ],
)
def test_assembly_matches_dense_kron_oracle(irrep, config, mus):
    gens = generators_for(irrep)
    params = ModelParams(**FREQS, config=config, **mus)
    n_max = 200 // irrep.dimension // 2  # keeps D <= 200
    op = build_hamiltonian(params, gens, n_max)
    assert op.dim <= 220
    assert np.max(np.abs(op.dense() - kron_oracle(params, gens, n_max))) == 0.0


def test_hermiticity_exact_and_block_sparsity():
    irrep = IrrepSpec(4, 0, 0)
    gens = generators_for(irrep)
    params = ModelParams(**FREQS, mu12=1.1, mu23=0.9, config="xi")
    op = build_hamiltonian(params, gens, n_max=12)
    h = op.matrix
    assert (h - h.T).nnz == 0
    coo = h.tocoo()
    fock_jump = np.abs(coo.row % (op.n_max + 1) - coo.col % (op.n_max + 1))
    assert np.all(np.isin(fock_jump, (0, 1)))


def test_spectrum_invariant_under_coupling_sign_flip():
    irrep = IrrepSpec(2, 1, 1)
    gens = generators_for(irrep)
    base = ModelParams(**FREQS, mu12=0.8, mu23=0.5, config="xi")
    flipped = base.at(mu12=-0.8, mu23=-0.5)
    n_max = 30
    w1 = sla.eigvalsh(build_hamiltonian(base, gens, n_max).dense())
    w2 = sla.eigvalsh(build_hamiltonian(flipped, gens, n_max).dense())
    assert np.max(np.abs(w1 - w2)) <= 1e-10


# ---------------------------------------------------------------------------
# observables


def test_observable_operators():
    irrep = IrrepSpec(4, 0, 0)
    gens = generators_for(irrep)
    n_max = 7
    obs = observable_operators(gens, n_max)
    # photon number is diagonal with eigenvalue nu on |pattern> x |nu>
    n_diag = obs["n_photon"].dense().diagonal()
    assert np.array_equal(n_diag, np.tile(np.arange(n_max + 1.0), irrep.dimension))
    # lowest weight (x) vacuum
    vec = np.zeros(obs["jz1"].dim)
    vec[lowest_weight_index(irrep) * (n_max + 1)] = 1.0
    assert obs["jz1"].expectation(vec) == pytest.approx(-2.0, abs=0)
    assert obs["n_photon"].expectation(vec) == 0.0
    # Kronecker trace identity
    assert obs["jz1"].dense().trace() == pytest.approx(
        (n_max + 1) * np.trace(gens.jz1), abs=1e-12
    )
