"""Numerical tolerances shared by every module.

All thresholds live in one frozen record.  Override them for a block of code
with :func:`tolerances`::

    with tolerances(zero_concurrence=1e-9):
        report = find_esd_zones(...)
"""

from __future__ import annotations

import contextlib
import contextvars
import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    hermitian: float = 1e-10  # max |m - m^H| accepted as Hermitian
    trace: float = 1e-10
    psd: float = 1e-10  # most negative eigenvalue accepted as PSD
    jacobi_offdiag: float = 1e-14  # off-diagonal Frobenius mass at convergence
    jacobi_max_sweeps: int = 100
    eig_clamp: float = 1e-12  # eigenvalues below this are exact zeros
    ssa_slack: float = 1e-9  # CMI values in [-slack, 0) clamp to 0
    zero_concurrence: float = 1e-7  # ESD zone membership
    root_xtol: float = 1e-6
    compare_pass: float = 1e-6  # closed-form vs numeric deviation
    imag_flag: float = 1e-9  # closed-form imaginary residue worth flagging


_current: contextvars.ContextVar[Tolerances] = contextvars.ContextVar(
    "sqconc_tolerances", default=Tolerances()
)


def get_tolerances() -> Tolerances:
    return _current.get()


@contextlib.contextmanager
def tolerances(**overrides):
    token = _current.set(dataclasses.replace(_current.get(), **overrides))
    try:
        yield _current.get()
    finally:
        _current.reset(token)
