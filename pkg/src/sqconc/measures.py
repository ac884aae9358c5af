"""Numeric correlation measures on the evolved three-qubit state.

Entropies are in bits.  The squashed-entanglement value computed here is the
half conditional mutual information of the *given* extension rho_ABE, i.e. an
upper bound on the true (infimum) squashed entanglement of rho_AB.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from sqconc.config import get_tolerances
from sqconc.dynamics import HamiltonianSpec, evolve
from sqconc.exceptions import DimensionError, InvalidStateError
from sqconc.linalg import SIGMA_Y, as_square, eigvalsh, hermiticity_defect, partial_trace, psd_sqrt
from sqconc.states import ModelParams, initial_state

_YY = np.kron(SIGMA_Y, SIGMA_Y)

SQUASHED = "squashed_proxy"
CONCURRENCE = "concurrence"


@dataclass(frozen=True)
class MeasureValue:
    name: str
    value: float
    params: ModelParams


def _checked_spectrum(rho) -> np.ndarray:
    tol = get_tolerances()
    rho = as_square(rho, "rho")
    if rho.shape[0] & (rho.shape[0] - 1):
        raise DimensionError(f"dimension {rho.shape[0]} is not a power of two")
    if hermiticity_defect(rho) > tol.hermitian:
        raise InvalidStateError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol.trace:
        raise InvalidStateError(f"trace {np.trace(rho)} differs from 1")
    evals = eigvalsh(rho)
    if evals[0] < -tol.psd:
        raise InvalidStateError(f"negative eigenvalue {evals[0]:.3e}")
    return evals


def entropy_of_spectrum(evals) -> float:
    p = np.clip(np.asarray(evals, dtype=float), 0.0, 1.0)
    p = p[p > get_tolerances().eig_clamp]
    return float(-np.sum(p * np.log2(p))) + 0.0


def von_neumann_entropy(rho) -> float:
    return entropy_of_spectrum(_checked_spectrum(rho))


def conditional_mutual_information(rho_abe) -> float:
    """I(A;B|E) = S(AE) + S(BE) - S(ABE) - S(E) for subsystem order (A, B, E)."""
    tol = get_tolerances()
    rho = as_square(rho_abe, "rho_abe")
    if rho.shape != (8, 8):
        raise DimensionError(f"expected a 3-qubit state, got shape {rho.shape}")
    dims = (2, 2, 2)
    s_abe = von_neumann_entropy(rho)
    s_ae = von_neumann_entropy(partial_trace(rho, dims, [0, 2]))
    s_be = von_neumann_entropy(partial_trace(rho, dims, [1, 2]))
    s_e = von_neumann_entropy(partial_trace(rho, dims, [2]))
    cmi = s_ae + s_be - s_abe - s_e
    if cmi < -tol.ssa_slack:
        raise ArithmeticError(f"strong subadditivity violated: I(A;B|E) = {cmi:.3e}")
    return max(cmi, 0.0)


def squashed_proxy(rho_abe) -> float:
    return 0.5 * conditional_mutual_information(rho_abe)


def spin_flip(rho) -> np.ndarray:
    rho = as_square(rho, "rho")
    if rho.shape != (4, 4):
        raise DimensionError(f"spin flip needs a 2-qubit state, got shape {rho.shape}")
    return _YY @ rho.conj() @ _YY


def concurrence_roots(rho) -> np.ndarray:
    """Square roots of the spectrum of rho @ spin_flip(rho), descending.

    The spectrum is read off the Hermitian matrix sqrt(rho) rho~ sqrt(rho),
    which is similar to rho rho~.
    """
    rho = as_square(rho, "rho")
    if rho.shape != (4, 4):
        raise DimensionError(f"concurrence needs a 2-qubit state, got shape {rho.shape}")
    root = psd_sqrt(rho)
    m = root @ spin_flip(rho) @ root
    evals = eigvalsh(0.5 * (m + m.conj().T))
    evals = np.where(evals < get_tolerances().eig_clamp, 0.0, evals)
    return np.sqrt(evals)[::-1]


def concurrence_margin(rho) -> float:
    """Unclipped lambda_1 - lambda_2 - lambda_3 - lambda_4."""
    lam = concurrence_roots(rho)
    return float(lam[0] - lam[1:].sum())


def concurrence(rho) -> float:
    return max(0.0, concurrence_margin(rho))


def evolved_state(params: ModelParams) -> np.ndarray:
    return evolve(initial_state(params), HamiltonianSpec(params.hamiltonian, params.j), params.t)


def reduced_ab(rho_abe) -> np.ndarray:
    return partial_trace(rho_abe, (2, 2, 2), [0, 1])


def measure_point(params: ModelParams) -> tuple[MeasureValue, MeasureValue]:
    """Squashed proxy on rho_ABE(t) and concurrence on Tr_E rho_ABE(t)."""
    rho = evolved_state(params)
    return (
        MeasureValue(SQUASHED, squashed_proxy(rho), params),
        MeasureValue(CONCURRENCE, concurrence(reduced_ab(rho)), params),
    )
