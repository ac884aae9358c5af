import cmath
import math

import numpy as np
import pytest

from sqconc.dynamics import HamiltonianSpec, evolve, hamiltonian_matrix, unitary_of
from sqconc.exceptions import DimensionError
from sqconc.linalg import partial_trace
from sqconc.states import ModelParams, initial_state

from conftest import random_density


def test_hamiltonian_patterns():
    np.testing.assert_array_equal(
        hamiltonian_matrix(HamiltonianSpec("h1", 1.0)), np.diag([-1, 1, 1, -1, -1, 1, 1, -1])
    )
    np.testing.assert_array_equal(
        hamiltonian_matrix(HamiltonianSpec("h2", 1.0)), np.diag([0, -2, -2, 0, 0, -2, -2, 0])
    )
    np.testing.assert_array_equal(hamiltonian_matrix(HamiltonianSpec("h1", 0.0)), np.zeros((8, 8)))


def test_unitary_examples():
    np.testing.assert_allclose(unitary_of(HamiltonianSpec("h1"), 0.0), np.eye(8), atol=1e-15)
    u = unitary_of(HamiltonianSpec("h1", 1.0), math.pi / 2)
    h = np.array([-1, 1, 1, -1, -1, 1, 1, -1])
    np.testing.assert_allclose(np.diag(u), np.exp(-1j * h * math.pi / 2), atol=1e-15)
    np.testing.assert_allclose(u, np.diag(np.diag(u)), atol=0)


def test_unitarity_random(rng):
    for _ in range(50):
        spec = HamiltonianSpec(rng.choice(["h1", "h2"]), float(rng.normal()))
        u = unitary_of(spec, float(rng.uniform(-10, 10)))
        assert np.max(np.abs(u @ u.conj().T - np.eye(8))) < 1e-12


def test_evolve_identity_and_diagonal(rng):
    rho = random_density(rng, 8)
    spec = HamiltonianSpec("h1", 0.7)
    np.testing.assert_array_equal(evolve(rho, spec, 0.0), rho)
    diag = np.diag(np.diag(rho))
    for t in (0.3, 1.7, 12.0):
        np.testing.assert_allclose(evolve(diag, spec, t), diag, atol=1e-15)
    with pytest.raises(DimensionError):
        evolve(np.eye(4) / 4, spec, 1.0)


def _phase_oracle_coherence(gamma, alpha, jt):
    # evolve entry by entry: rho_kl -> rho_kl * u_k * conj(u_l), u = exp(i jt z_b z_e)
    rho0 = initial_state(ModelParams(gamma, alpha, 0.0))
    z = [1, -1]

    def u(idx):
        b, e = (idx >> 1) & 1, idx & 1
        return cmath.exp(1j * jt * z[b] * z[e])

    out = np.empty_like(rho0)
    for k in range(8):
        for l in range(8):
            out[k, l] = rho0[k, l] * u(k) * u(l).conjugate()
    # <01| Tr_E |10>: rows a=0,b=1 ; cols a=1,b=0
    return sum(out[0b010 | e, 0b100 | e] for e in range(2))


@pytest.mark.parametrize("gamma,alpha,jt", [(0.6, 0.6, 0.3), (1.0, 0.2, 1.1), (0.4, 0.9, 2.5)])
def test_reduced_coherence_matches_phase_oracle(gamma, alpha, jt):
    expected = -(gamma / 2) * (alpha**2 * cmath.exp(-2j * jt) + (1 - alpha**2) * cmath.exp(2j * jt))
    oracle = _phase_oracle_coherence(gamma, alpha, jt)
    assert abs(oracle - expected) < 1e-14
    rho = evolve(initial_state(ModelParams(gamma, alpha, 0.0)), HamiltonianSpec("h1", 1.0), jt)
    red = partial_trace(rho, (2, 2, 2), [0, 1])
    assert abs(red[1, 2] - expected) < 1e-14


def test_evolution_preserves_state_properties(rng):
    for _ in range(100):
        rho = random_density(rng, 8, rank=int(rng.integers(1, 9)))
        spec = HamiltonianSpec(rng.choice(["h1", "h2"]), float(rng.normal()))
        out = evolve(rho, spec, float(rng.uniform(0, 10)))
        assert abs(np.trace(out) - 1) < 1e-10
        assert np.max(np.abs(out - out.conj().T)) < 1e-10
        np.testing.assert_allclose(np.linalg.eigvalsh(out), np.linalg.eigvalsh(rho), atol=1e-10)
        assert abs(np.trace(out @ out) - np.trace(rho @ rho)) < 1e-10


def test_h2_equals_h1_with_negated_coupling(rng):
    for _ in range(50):
        rho = random_density(rng, 8)
        j, t = float(rng.normal()), float(rng.uniform(0, 10))
        a = evolve(rho, HamiltonianSpec("h2", j), t)
        b = evolve(rho, HamiltonianSpec("h1", -j), t)
        assert np.max(np.abs(a - b)) < 1e-12


def test_conjugation_covariance(rng):
    for _ in range(20):
        rho = random_density(rng, 8)
        j, t = float(rng.normal()), float(rng.uniform(0, 10))
        lhs = evolve(rho.conj(), HamiltonianSpec("h1", j), t)
        rhs = evolve(rho, HamiltonianSpec("h1", -j), t).conj()
        assert np.max(np.abs(lhs - rhs)) < 1e-12
