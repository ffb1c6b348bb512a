"""Constructors for the bipartite and multi-qubit states used everywhere.

All states are immutable value objects with eagerly cached Schmidt data,
since every downstream check consults it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import DEFAULT_TOL, Tolerances, partial_trace, schmidt_decompose

__all__ = [
    "BipartitePureState",
    "MultiQubitPureState",
    "theta_state",
    "qudit_schmidt_state",
    "nopa_truncated",
    "separable_state",
    "ghz_state",
    "density",
]


@dataclass(frozen=True)
class BipartitePureState:
    """Unit vector on a dA x dB bipartite system with cached Schmidt data."""

    vector: np.ndarray
    dA: int
    dB: int
    schmidt_coeffs: np.ndarray = field(repr=False, default=None)
    schmidt_left: np.ndarray = field(repr=False, default=None)
    schmidt_right: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        vec = np.asarray(self.vector, dtype=complex).ravel()
        if vec.size != self.dA * self.dB:
            raise ValueError(
                f"vector length {vec.size} does not match dA*dB = {self.dA * self.dB}"
            )
        nrm = float(np.linalg.norm(vec))
        if abs(nrm - 1.0) > 1e-8:
            raise ValueError(f"state vector norm {nrm} is not 1")
        vec = vec / nrm
        vec.setflags(write=False)
        object.__setattr__(self, "vector", vec)
        coeffs, left, right = schmidt_decompose(vec, self.dA, self.dB)
        for name, arr in (("schmidt_coeffs", coeffs), ("schmidt_left", left), ("schmidt_right", right)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def entangled(self, tol: Tolerances = DEFAULT_TOL) -> bool:
        """True iff the Schmidt rank exceeds one beyond tolerance."""
        return self.schmidt_coeffs.size > 1 and float(self.schmidt_coeffs[1]) > tol.rank1

    def density_matrix(self) -> np.ndarray:
        return density(self.vector)

    def reduced_bob(self) -> np.ndarray:
        return partial_trace(self.density_matrix(), self.dA, self.dB, keep="B")

    def to_json(self) -> dict:
        return {
            "dims": [self.dA, self.dB],
            "amplitudes": [[float(z.real), float(z.imag)] for z in self.vector],
        }

    @staticmethod
    def from_json(doc: dict) -> "BipartitePureState":
        dA, dB = (int(x) for x in doc["dims"])
        vec = np.array([complex(re, im) for re, im in doc["amplitudes"]])
        return BipartitePureState(vec, dA, dB)


@dataclass(frozen=True)
class MultiQubitPureState:
    """Unit vector on n qubits."""

    vector: np.ndarray
    n_qubits: int

    def __post_init__(self):
        vec = np.asarray(self.vector, dtype=complex).ravel()
        if vec.size != 2**self.n_qubits:
            raise ValueError(f"vector length {vec.size} != 2^{self.n_qubits}")
        nrm = float(np.linalg.norm(vec))
        if abs(nrm - 1.0) > 1e-8:
            raise ValueError(f"state vector norm {nrm} is not 1")
        vec = vec / nrm
        vec.setflags(write=False)
        object.__setattr__(self, "vector", vec)

    def density_matrix(self) -> np.ndarray:
        return density(self.vector)


def theta_state(theta: float) -> BipartitePureState:
    """cos(theta)|00> + sin(theta)|11> for theta in [0, pi/2].

    Boundary values construct fine but are separable; the paradox routines
    then refuse them with a typed verdict rather than an error.
    """
    if not (0.0 <= theta <= np.pi / 2):
        raise ValueError(f"theta must lie in [0, pi/2], got {theta}")
    vec = np.zeros(4, dtype=complex)
    vec[0] = np.cos(theta)
    vec[3] = np.sin(theta)
    return BipartitePureState(vec, 2, 2)


def qudit_schmidt_state(lambdas) -> BipartitePureState:
    """sum_m lambda_m |mm> for a nonnegative unit-norm coefficient vector."""
    lam = np.asarray(lambdas, dtype=float).ravel()
    d = lam.size
    if d < 2:
        raise ValueError(f"need at least 2 Schmidt coefficients, got {d}")
    if np.any(lam < 0):
        raise ValueError("Schmidt coefficients must be nonnegative")
    ss = float(np.sum(lam**2))
    if abs(ss - 1.0) > 1e-8:
        raise ValueError(f"Schmidt coefficients must have unit square sum, got {ss}")
    vec = np.zeros(d * d, dtype=complex)
    vec[np.arange(d) * (d + 1)] = lam
    return BipartitePureState(vec, d, d)


def nopa_truncated(r: float, d: int):
    """Truncated two-mode squeezed vacuum on d Fock levels per side.

    Raw coefficients tanh(r)^m / cosh(r) are renormalized to a genuine unit
    vector; the discarded tail mass tanh(r)^(2d) is returned alongside for
    diagnostics.
    """
    if r <= 0:
        raise ValueError(f"squeezing parameter r must be > 0, got {r}")
    if d < 2:
        raise ValueError(f"truncation dimension d must be >= 2, got {d}")
    t = np.tanh(r)
    raw = t ** np.arange(d) / np.cosh(r)
    lam = raw / np.linalg.norm(raw)
    truncation_weight = float(t ** (2 * d))  # geometric tail of sum raw^2
    return qudit_schmidt_state(lam), truncation_weight


def separable_state(beta) -> BipartitePureState:
    """|0> (x) |beta> for a unit qubit vector beta."""
    b = np.asarray(beta, dtype=complex).ravel()
    if b.size != 2:
        raise ValueError(f"beta must be a 2-vector, got length {b.size}")
    nrm = float(np.linalg.norm(b))
    if abs(nrm - 1.0) > 1e-8:
        raise ValueError(f"beta norm {nrm} is not 1")
    vec = np.zeros(4, dtype=complex)
    vec[:2] = b / nrm
    return BipartitePureState(vec, 2, 2)


def ghz_state() -> MultiQubitPureState:
    """(|000> + |111>)/sqrt(2)."""
    vec = np.zeros(8, dtype=complex)
    vec[0] = vec[7] = 1 / np.sqrt(2)
    return MultiQubitPureState(vec, 3)


def density(psi) -> np.ndarray:
    """Projector |psi><psi| of a unit vector."""
    v = np.asarray(psi, dtype=complex).ravel()
    nrm = float(np.linalg.norm(v))
    if abs(nrm - 1.0) > 1e-8:
        raise ValueError(f"density: input norm {nrm} is not 1")
    return np.outer(v, v.conj())
