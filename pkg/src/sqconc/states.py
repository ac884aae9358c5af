"""Two-qubit Werner and MEMS states, the auxiliary qubit E, and their products.

Qubit order is (A, B, E); the computational basis index of ``|a b e>`` is
``4a + 2b + e``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from sqconc.config import get_tolerances
from sqconc.exceptions import DimensionError, InvalidStateError, ParameterError
from sqconc.linalg import as_square, eigvalsh, hermiticity_defect, kron


class StateFamily(str, Enum):
    WERNER = "werner"
    MEMS = "mems"


class HamiltonianKind(str, Enum):
    H1 = "h1"  # -j sz sz
    H2 = "h2"  # j [sz sz - (sz sz)^2]


@dataclass(frozen=True)
class ModelParams:
    """One point of the model: mixing ``gamma``, auxiliary amplitude ``alpha``,
    and the dimensionless product ``jt`` of coupling and time.

    ``j`` is kept so callers can split ``jt`` into coupling and time; the
    evolution time is ``t = jt / j``.
    """

    gamma: float
    alpha: float = 0.0
    jt: float = 0.0
    state_family: StateFamily = StateFamily.WERNER
    hamiltonian: HamiltonianKind = HamiltonianKind.H1
    j: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "state_family", StateFamily(self.state_family))
        object.__setattr__(self, "hamiltonian", HamiltonianKind(self.hamiltonian))
        _check_unit("gamma", self.gamma)
        _check_unit("alpha", self.alpha)
        if not math.isfinite(self.jt):
            raise ParameterError(f"jt must be finite, got {self.jt}")
        if not math.isfinite(self.j) or self.j == 0:
            raise ParameterError(f"j must be finite and nonzero, got {self.j}")

    @property
    def t(self) -> float:
        return self.jt / self.j


def _check_unit(name, x):
    if not (isinstance(x, (int, float, np.floating, np.integer)) and 0.0 <= x <= 1.0):
        raise ParameterError(f"{name} must lie in [0, 1], got {x!r}")


SINGLET = np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2)
PHI_PLUS = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def g_of_gamma(gamma: float) -> float:
    """Diagonal weight of the MEMS family: 1/3 below gamma = 2/3, gamma/2 above."""
    _check_unit("gamma", gamma)
    return 1.0 / 3.0 if gamma < 2.0 / 3.0 else gamma / 2.0


def werner(gamma: float) -> np.ndarray:
    _check_unit("gamma", gamma)
    return gamma * projector(SINGLET) + (1.0 - gamma) * np.eye(4, dtype=complex) / 4.0


def mems(gamma: float, delta: float | None = None) -> np.ndarray:
    """MEMS density matrix.  ``delta`` overrides ``g_of_gamma(gamma)``."""
    _check_unit("gamma", gamma)
    d = g_of_gamma(gamma) if delta is None else delta
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[3, 3] = d
    rho[1, 1] = 1.0 - 2.0 * d
    rho[0, 3] = rho[3, 0] = gamma / 2.0
    return rho


def two_qubit_state(family, gamma: float) -> np.ndarray:
    return werner(gamma) if StateFamily(family) is StateFamily.WERNER else mems(gamma)


def environment_qubit(alpha: float) -> np.ndarray:
    """Pure state alpha|0> + beta|1> with real beta = sqrt(1 - alpha^2)."""
    _check_unit("alpha", alpha)
    beta = math.sqrt(max(1.0 - alpha * alpha, 0.0))
    return projector([alpha, beta])


def tripartite_initial(rho_ab, rho_e) -> np.ndarray:
    rho_ab = as_square(rho_ab, "rho_ab")
    rho_e = as_square(rho_e, "rho_e")
    if rho_ab.shape != (4, 4) or rho_e.shape != (2, 2):
        raise DimensionError(
            f"expected 4x4 and 2x2 factors, got {rho_ab.shape} and {rho_e.shape}"
        )
    return kron(rho_ab, rho_e)


def initial_state(params: ModelParams) -> np.ndarray:
    return tripartite_initial(
        two_qubit_state(params.state_family, params.gamma),
        environment_qubit(params.alpha),
    )


def validate_density_matrix(rho, n_qubits: int | None = None) -> np.ndarray:
    """Return ``rho`` as an array after checking Hermiticity, trace and PSD."""
    tol = get_tolerances()
    rho = as_square(rho, "rho")
    if n_qubits is not None and rho.shape[0] != 2**n_qubits:
        raise DimensionError(f"expected a {n_qubits}-qubit state, got shape {rho.shape}")
    if rho.shape[0] & (rho.shape[0] - 1):
        raise DimensionError(f"dimension {rho.shape[0]} is not a power of two")
    defect = hermiticity_defect(rho)
    if defect > tol.hermitian:
        raise InvalidStateError(f"not Hermitian (defect {defect:.3e})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > tol.trace:
        raise InvalidStateError(f"trace {tr} differs from 1")
    lowest = eigvalsh(rho)[0]
    if lowest < -tol.psd:
        raise InvalidStateError(f"negative eigenvalue {lowest:.3e}")
    return rho
