"""Squashed-entanglement proxy and concurrence dynamics of Werner and MEMS
states coupled to an auxiliary qubit through diagonal spin Hamiltonians."""

from sqconc.analysis import (
    CrossingResult,
    ESDReport,
    find_concurrence_onset,
    find_esd_zones,
    find_sce,
    sweep,
    verify_paper_anchors,
)
from sqconc.closed_form import (
    closed_concurrence,
    closed_spectrum,
    closed_sqe,
    compare_closed_vs_numeric,
    eval_symbols,
)
from sqconc.config import Tolerances, get_tolerances, tolerances
from sqconc.dynamics import HamiltonianSpec, evolve, hamiltonian_matrix, unitary_of
from sqconc.linalg import hermitian_eigensystem, kron, partial_trace, psd_sqrt
from sqconc.measures import (
    concurrence,
    conditional_mutual_information,
    measure_point,
    spin_flip,
    squashed_proxy,
    von_neumann_entropy,
)
from sqconc.records import DiscrepancyReport, MeasureRecord, SweepGrid
from sqconc.states import (
    HamiltonianKind,
    ModelParams,
    StateFamily,
    environment_qubit,
    g_of_gamma,
    initial_state,
    mems,
    tripartite_initial,
    werner,
)

__version__ = "0.1.0"
