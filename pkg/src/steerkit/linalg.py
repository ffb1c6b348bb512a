"""Dense complex linear algebra shared by the whole toolkit.

Matrices are plain ``numpy.ndarray`` of dtype complex. All functions are
pure; nothing here keeps state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Tolerances",
    "DEFAULT_TOL",
    "as_matrix",
    "kron",
    "partial_trace",
    "hermitian_eig",
    "trace_distance",
    "is_rank_one",
    "schmidt_decompose",
    "herm_deviation",
]


@dataclass(frozen=True)
class Tolerances:
    """Numeric thresholds used across the toolkit.

    herm     : max entrywise deviation allowed from M = M^dagger
    eig      : residual allowed in eigen/Schmidt reconstructions
    state_eq : trace-distance threshold below which two states count as equal
    rank1    : subdominant eigenvalue mass below which a state counts as pure
    lp       : residual threshold for LP feasibility and LHS-model checks
    """

    herm: float = 1e-10
    eig: float = 1e-10
    state_eq: float = 1e-9
    rank1: float = 1e-9
    lp: float = 1e-8

    def __post_init__(self):
        for name in ("herm", "eig", "state_eq", "rank1", "lp"):
            v = getattr(self, name)
            if not np.isfinite(v) or v < 0:
                raise ValueError(f"tolerance {name} must be finite and >= 0, got {v}")


DEFAULT_TOL = Tolerances()


def as_matrix(m) -> np.ndarray:
    """Coerce input to a 2-D complex ndarray."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    return a


def herm_deviation(m: np.ndarray) -> float:
    """Max entrywise |M - M^dagger|."""
    m = as_matrix(m)
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def _require_hermitian(m: np.ndarray, tol: Tolerances, what: str) -> np.ndarray:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"{what} must be square, got shape {m.shape}")
    dev = herm_deviation(m)
    if dev > tol.herm:
        raise ValueError(f"{what} is not Hermitian: max |M - M^dagger| = {dev:.3e}")
    return m


def kron(a, b) -> np.ndarray:
    """Kronecker product a (x) b."""
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace(rho, dA: int, dB: int, keep: str = "B") -> np.ndarray:
    """Partial trace of a (dA*dB) x (dA*dB) matrix over one subsystem.

    keep="B" traces out subsystem A and returns a dB x dB matrix;
    keep="A" the opposite. The trace is preserved.
    """
    rho = as_matrix(rho)
    n = dA * dB
    if rho.shape != (n, n):
        raise ValueError(
            f"partial_trace: matrix shape {rho.shape} does not match dA*dB = {dA}*{dB} = {n}"
        )
    t = rho.reshape(dA, dB, dA, dB)
    if keep.upper() == "B":
        return np.einsum("imin->mn", t)
    if keep.upper() == "A":
        return np.einsum("imjm->ij", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def hermitian_eig(h, tol: Tolerances = DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues, eigenvectors) with eigenvalues sorted in
    descending order and eigenvectors as matching columns.
    """
    h = _require_hermitian(h, tol, "hermitian_eig input")
    w, v = np.linalg.eigh((h + h.conj().T) / 2)
    order = np.argsort(w)[::-1]
    return w[order], v[:, order]


def trace_distance(rho, sigma, tol: Tolerances = DEFAULT_TOL) -> float:
    """Trace distance (1/2)||rho - sigma||_1 for Hermitian inputs."""
    rho = _require_hermitian(rho, tol, "trace_distance first argument")
    sigma = _require_hermitian(sigma, tol, "trace_distance second argument")
    if rho.shape != sigma.shape:
        raise ValueError(f"trace_distance: shape mismatch {rho.shape} vs {sigma.shape}")
    diff = rho - sigma
    w = np.linalg.eigvalsh((diff + diff.conj().T) / 2)
    return float(0.5 * np.sum(np.abs(w)))


def is_rank_one(rho, tol: Tolerances = DEFAULT_TOL):
    """Test whether a PSD matrix is rank one up to tolerance.

    Returns (flag, principal eigenvector, residual_mass) where
    residual_mass is the subdominant eigenvalue mass relative to the trace.
    Zero-trace input is rejected: it signals a probability-zero outcome and
    the caller must decide what that means.
    """
    rho = _require_hermitian(rho, tol, "is_rank_one input")
    w, v = hermitian_eig(rho, tol)
    if np.min(w) < -tol.eig * max(1.0, np.max(np.abs(w))):
        raise ValueError(f"is_rank_one: input not PSD, min eigenvalue {np.min(w):.3e}")
    tr = float(np.sum(w))
    if tr <= tol.rank1:
        raise ValueError(f"is_rank_one: trace {tr:.3e} is not positive")
    residual = float(np.sum(np.abs(w[1:])) / tr)
    return residual <= tol.rank1, v[:, 0].copy(), residual


def schmidt_decompose(psi, dA: int, dB: int, tol: Tolerances = DEFAULT_TOL):
    """Schmidt decomposition of a unit bipartite vector.

    Returns (coeffs, left_vecs, right_vecs): nonnegative coefficients in
    descending order with sum of squares 1, and orthonormal vectors as
    columns so that psi = sum_m coeffs[m] * kron(left[:,m], right[:,m]).
    """
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.size != dA * dB:
        raise ValueError(f"schmidt_decompose: vector length {psi.size} != dA*dB = {dA * dB}")
    nrm = float(np.linalg.norm(psi))
    if abs(nrm - 1.0) > max(tol.eig, 1e-8):
        raise ValueError(f"schmidt_decompose: input norm {nrm} is not 1")
    u, s, vh = np.linalg.svd(psi.reshape(dA, dB), full_matrices=False)
    return s.copy(), u.copy(), vh.T.copy()
