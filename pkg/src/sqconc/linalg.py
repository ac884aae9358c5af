"""Dense complex linear algebra for 2-, 4- and 8-dimensional operators.

Matrices are plain ``numpy`` complex arrays.  The Hermitian eigensolver is a
cyclic Jacobi iteration, which is more than adequate at these sizes and keeps
the spectrum computation independent of LAPACK (tests use ``numpy.linalg.eigh``
as the oracle).
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

from sqconc.config import get_tolerances
from sqconc.exceptions import (
    ConvergenceError,
    DimensionError,
    NotHermitianError,
    NotPSDError,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


class HermitianEigenSystem(NamedTuple):
    eigenvalues: np.ndarray  # ascending, real
    eigenvectors: np.ndarray  # unitary, eigenvectors in columns
    sweeps: int = 0


def as_square(m, name="matrix") -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimensionError(f"{name} must be a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite entries")
    return a


def kron(a, b) -> np.ndarray:
    """Kronecker product; entry ``(i*db + k, j*db + l)`` is ``a[i, j] * b[k, l]``."""
    return np.kron(as_square(a, "a"), as_square(b, "b"))


def kron_all(*ms) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for m in ms:
        out = np.kron(out, as_square(m))
    return out


def dagger(m) -> np.ndarray:
    return np.conj(as_square(m)).T


def matmul(*ms) -> np.ndarray:
    """Chained product with a dimension check at every step."""
    if not ms:
        raise ValueError("matmul needs at least one matrix")
    out = as_square(ms[0])
    for m in ms[1:]:
        m = as_square(m)
        if m.shape[0] != out.shape[1]:
            raise DimensionError(f"cannot multiply {out.shape} by {m.shape}")
        out = out @ m
    return out


def add(a, b) -> np.ndarray:
    a, b = as_square(a, "a"), as_square(b, "b")
    if a.shape != b.shape:
        raise DimensionError(f"cannot add {a.shape} and {b.shape}")
    return a + b


def scale(m, z: complex) -> np.ndarray:
    return complex(z) * as_square(m)


def trace(m) -> complex:
    return complex(np.trace(as_square(m)))


def hermiticity_defect(m) -> float:
    m = as_square(m)
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(m, atol=None) -> bool:
    atol = get_tolerances().hermitian if atol is None else atol
    return hermiticity_defect(m) <= atol


def _offdiag_norm(a: np.ndarray) -> float:
    # direct sum; total-minus-diagonal cancels catastrophically near convergence
    return float(np.linalg.norm(a[~np.eye(a.shape[0], dtype=bool)]))


def hermitian_eigensystem(m) -> HermitianEigenSystem:
    """Eigen-decompose a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a[p, q]`` and then
    applies the classical real Jacobi rotation, so the update matrix is
    ``J = diag(1, e^{-i phi}) @ [[c, s], [-s, c]]``.
    """
    tol = get_tolerances()
    a = as_square(m).copy()
    if hermiticity_defect(a) > tol.hermitian:
        raise NotHermitianError(f"matrix is not Hermitian (defect {hermiticity_defect(a):.3e})")
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    threshold = tol.jacobi_offdiag * max(1.0, float(np.linalg.norm(a)))

    sweeps = 0
    off = _offdiag_norm(a)
    while off >= threshold:
        if sweeps >= tol.jacobi_max_sweeps:
            raise ConvergenceError("Jacobi eigensolver did not converge", off)
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                w = np.conj(apq) / r  # e^{-i phi}
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                j10, j11 = -s * w, c * w

                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p + j10 * col_q
                a[:, q] = s * col_p + j11 * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p + np.conj(j10) * row_q
                a[q, :] = s * row_p + np.conj(j11) * row_q
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp + j10 * vq
                v[:, q] = s * vp + j11 * vq
        off = _offdiag_norm(a)

    evals = np.real(np.diag(a))
    order = np.argsort(evals, kind="stable")
    return HermitianEigenSystem(evals[order], v[:, order], sweeps)


def eigvalsh(m) -> np.ndarray:
    return hermitian_eigensystem(m).eigenvalues


def psd_sqrt(m) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix."""
    tol = get_tolerances()
    evals, evecs, _ = hermitian_eigensystem(m)
    if evals[0] < -tol.psd:
        raise NotPSDError(f"matrix has negative eigenvalue {evals[0]:.3e}")
    root = (evecs * np.sqrt(np.clip(evals, 0.0, None))) @ evecs.conj().T
    return 0.5 * (root + root.conj().T)


def partial_trace(rho, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    ``dims`` lists subsystem dimensions with the first subsystem as the most
    significant index.  Kept subsystems retain their original order.  An empty
    ``keep`` gives the 1x1 matrix holding the full trace.
    """
    rho = as_square(rho, "rho")
    dims = [int(d) for d in dims]
    n = len(dims)
    if any(d < 1 for d in dims) or math.prod(dims) != rho.shape[0]:
        raise DimensionError(f"dims {dims} do not match matrix of shape {rho.shape}")
    keep = list(keep)
    if len(set(keep)) != len(keep) or any(not 0 <= k < n for k in keep):
        raise DimensionError(f"invalid subsystem index set {keep} for {n} subsystems")
    keep = sorted(keep)

    letters = "abcdefghijklmnopqrstuvwxyz"
    row = list(letters[:n])
    col = list(letters[n : 2 * n])
    for i in range(n):
        if i not in keep:
            col[i] = row[i]
    out = "".join(row[i] for i in keep) + "".join(col[i] for i in keep)
    reduced = np.einsum("".join(row) + "".join(col) + "->" + out, rho.reshape(dims + dims))
    d_keep = math.prod(dims[i] for i in keep)
    return reduced.reshape(d_keep, d_keep)
