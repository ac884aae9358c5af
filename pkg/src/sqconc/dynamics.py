"""Unitary evolution under the two diagonal bond Hamiltonians.

Both Hamiltonians act on the single bond (B, E) and leave qubit A alone:

* H1 = -j (sz x sz)
* H2 =  j [(sz x sz) - (sz x sz)^2] = j [(sz x sz) - I]

Since H2 = H1(-j) - j I, the two generate the same conjugation action up to
the sign of the coupling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from sqconc.exceptions import DimensionError, ParameterError
from sqconc.linalg import IDENTITY_2, SIGMA_Z, as_square, hermitian_eigensystem, kron
from sqconc.states import HamiltonianKind

_ZZ = np.kron(SIGMA_Z, SIGMA_Z)


@dataclass(frozen=True)
class HamiltonianSpec:
    kind: HamiltonianKind
    j: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", HamiltonianKind(self.kind))
        if not math.isfinite(self.j):
            raise ParameterError(f"coupling must be finite, got {self.j}")


def bond_matrix(spec: HamiltonianSpec) -> np.ndarray:
    if spec.kind is HamiltonianKind.H1:
        return -spec.j * _ZZ
    return spec.j * (_ZZ - _ZZ @ _ZZ)


def hamiltonian_matrix(spec: HamiltonianSpec) -> np.ndarray:
    """8x8 operator ``I_A x h_BE`` in (A, B, E) order."""
    return kron(IDENTITY_2, bond_matrix(spec))


def unitary_of(spec: HamiltonianSpec, t: float) -> np.ndarray:
    """exp(-i H t) through the eigendecomposition of H (hbar = 1)."""
    evals, evecs, _ = hermitian_eigensystem(hamiltonian_matrix(spec))
    return (evecs * np.exp(-1j * evals * t)) @ evecs.conj().T


def evolve(rho0, spec: HamiltonianSpec, t: float) -> np.ndarray:
    rho0 = as_square(rho0, "rho0")
    if rho0.shape != (8, 8):
        raise DimensionError(f"evolve expects a 3-qubit state, got shape {rho0.shape}")
    u = unitary_of(spec, t)
    out = u @ rho0 @ u.conj().T
    return 0.5 * (out + out.conj().T)
