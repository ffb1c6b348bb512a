"""Steering checks: the k-vs-1 trace paradox for pure entangled states,
the explicit single-hidden-state model for separable states, LP-based
local-hidden-state feasibility over a finite candidate ensemble, and the
GHZ all-versus-nothing enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .assemblage import Assemblage, PurityProfile, conditional_states, purity_profile
from .linalg import DEFAULT_TOL, Tolerances, as_matrix, kron, partial_trace, trace_distance
from .measurements import PAULI_X, PAULI_Y, MeasurementSetting
from .simplex import phase_one
from .states import BipartitePureState, MultiQubitPureState

__all__ = [
    "CoincidentSettingsError",
    "DegenerateSettingGeometryError",
    "ParadoxInvariantError",
    "LHSModel",
    "ParadoxCertificate",
    "FeasibilityOutcome",
    "GhzExpectations",
    "pure_state_paradox",
    "separable_lhs_model",
    "lhs_reconstruct",
    "lhs_feasibility_lp",
    "default_candidates",
    "ghz_operator_expectations",
    "ghz_lhv_bruteforce",
]


class CoincidentSettingsError(ValueError):
    """Two supplied settings have the same projector multiset."""


class DegenerateSettingGeometryError(ValueError):
    """Entangled input but some normalized conditional states coincide, so
    the single-term collapse step cannot be applied as stated."""


class ParadoxInvariantError(RuntimeError):
    """A numerical invariant the theorem guarantees failed its tolerance."""


@dataclass(frozen=True)
class LHSModel:
    """Ensemble of weighted hidden states plus stochastic responses.

    responses maps (setting index n, outcome a, hidden index xi) to
    p(a | n, xi); absent keys mean probability zero.
    """

    weights: np.ndarray
    hidden_states: tuple
    responses: dict

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).ravel()
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        hs = tuple(as_matrix(h) for h in self.hidden_states)
        for h in hs:
            h.setflags(write=False)
        object.__setattr__(self, "hidden_states", hs)
        if w.size != len(hs):
            raise ValueError("weights and hidden_states length mismatch")

    def response(self, n: int, a: int, xi: int) -> float:
        return float(self.responses.get((n, a, xi), 0.0))

    def validate(self, bob_reduced=None, tol: Tolerances = DEFAULT_TOL) -> None:
        """Check the model invariants; raises ValueError on breach."""
        w = self.weights
        if np.any(w <= 0):
            raise ValueError("all hidden-state weights must be positive")
        if abs(float(np.sum(w)) - 1.0) > tol.lp:
            raise ValueError(f"weights sum to {np.sum(w)}, expected 1")
        settings = sorted({n for (n, _, _) in self.responses})
        for n in settings:
            for xi in range(len(self.hidden_states)):
                total = sum(
                    p for (nn, _, x), p in self.responses.items() if nn == n and x == xi
                )
                if abs(total - 1.0) > tol.lp:
                    raise ValueError(
                        f"responses for setting {n}, hidden state {xi} sum to {total}"
                    )
        if bob_reduced is not None:
            mix = sum(wi * h for wi, h in zip(w, self.hidden_states))
            dev = float(np.max(np.abs(mix - bob_reduced)))
            if dev > tol.lp:
                raise ValueError(f"ensemble average deviates from rho_B by {dev:.3e}")

    def to_json(self) -> dict:
        def mat(m):
            return [[[float(z.real), float(z.imag)] for z in row] for row in m]

        return {
            "weights": [float(x) for x in self.weights],
            "hidden_states": [mat(h) for h in self.hidden_states],
            "responses": [
                {"setting": n, "outcome": a, "hidden": xi, "p": float(p)}
                for (n, a, xi), p in sorted(self.responses.items())
            ],
        }


@dataclass(frozen=True)
class ParadoxCertificate:
    """Verdict record for the k-vs-1 trace contradiction."""

    applicable: bool
    reason: str
    k: int
    lhs_trace_sum: float
    quantum_trace_sum: float
    purity: PurityProfile | None
    collapsed_assignments: dict  # (setting, outcome) -> hidden index, response forced to 1
    tolerances: Tolerances
    note: str | None = None

    @property
    def contradiction_magnitude(self) -> float:
        return self.lhs_trace_sum - self.quantum_trace_sum

    def to_json(self) -> dict:
        doc = {
            "applicable": self.applicable,
            "reason": self.reason,
            "k": self.k,
            "lhs_trace_sum": self.lhs_trace_sum,
            "quantum_trace_sum": self.quantum_trace_sum,
            "contradiction_magnitude": self.contradiction_magnitude,
            "collapsed_assignments": [
                {"setting": n, "outcome": a, "hidden": xi}
                for (n, a), xi in sorted(self.collapsed_assignments.items())
            ],
            "tolerances": {
                "herm": self.tolerances.herm,
                "eig": self.tolerances.eig,
                "state_eq": self.tolerances.state_eq,
                "rank1": self.tolerances.rank1,
                "lp": self.tolerances.lp,
            },
        }
        if self.note:
            doc["note"] = self.note
        if self.purity is not None:
            doc["purity"] = {
                "all_rank_one": self.purity.all_rank_one,
                "max_residual_mass": max(
                    (r.residual_mass for r in self.purity.reports if not r.vacuous),
                    default=0.0,
                ),
                "min_pairwise_distance": self.purity.min_pairwise_distance(),
            }
        return doc


@dataclass(frozen=True)
class FeasibilityOutcome:
    """Result of the LHS feasibility LP over a fixed candidate ansatz.

    FeasibleModelFound carries a complete LHS certificate.
    InfeasibleWithinAnsatz only rules out the supplied candidates; it makes
    no claim about steering in general.
    """

    status: str  # "FeasibleModelFound" | "InfeasibleWithinAnsatz"
    model: LHSModel | None
    residual: float
    iterations: int

    @property
    def feasible(self) -> bool:
        return self.status == "FeasibleModelFound"

    def to_json(self) -> dict:
        doc = {
            "status": self.status,
            "residual": self.residual,
            "iterations": self.iterations,
        }
        if self.model is not None:
            doc["model"] = self.model.to_json()
        return doc


@dataclass(frozen=True)
class GhzExpectations:
    """Expectation values of the four three-qubit stabilizer-style
    operators xxx, xyy, yxy, yyx, with eigenstate residuals."""

    values: tuple
    eigenstate_residuals: tuple


def _settings_coincide(s1: MeasurementSetting, s2: MeasurementSetting, tol: Tolerances) -> bool:
    """True if the projector multisets of two settings match within
    tol.state_eq under some pairing."""
    if s1.outcomes != s2.outcomes or s1.dim != s2.dim:
        return False
    unmatched = list(s2.projectors)
    for p in s1.projectors:
        hit = None
        for i, q in enumerate(unmatched):
            if float(np.max(np.abs(p - q))) <= tol.state_eq:
                hit = i
                break
        if hit is None:
            return False
        unmatched.pop(hit)
    return True


def pure_state_paradox(
    psi: BipartitePureState,
    settings,
    tol: Tolerances = DEFAULT_TOL,
) -> ParadoxCertificate:
    """Run the trace-sum contradiction for a pure bipartite state.

    For an entangled input and k pairwise-distinct settings: every
    nonvacuous conditional state is verified rank-1 and pairwise distinct,
    each equation is collapsed onto a single hidden state with response
    probability 1, and the certificate reports the hidden-side trace sum k
    against the quantum value 1.

    Separable inputs yield applicable=False rather than an error.
    """
    settings = list(settings)
    if len(settings) < 2:
        raise ValueError(f"need at least 2 settings, got {len(settings)}")
    for i in range(len(settings)):
        for j in range(i + 1, len(settings)):
            if _settings_coincide(settings[i], settings[j], tol):
                raise CoincidentSettingsError(
                    f"settings {settings[i].label!r} and {settings[j].label!r} coincide"
                )
    k = len(settings)
    if not psi.entangled(tol):
        return ParadoxCertificate(
            applicable=False,
            reason="separable: paradox not applicable",
            k=k,
            lhs_trace_sum=float("nan"),
            quantum_trace_sum=float("nan"),
            purity=None,
            collapsed_assignments={},
            tolerances=tol,
        )

    asm = conditional_states(psi.density_matrix(), settings, (psi.dA, psi.dB), tol)
    prof = purity_profile(asm, tol)

    bad = [r for r in prof.reports if not r.vacuous and not r.rank_one]
    if bad:
        worst = max(bad, key=lambda r: r.residual_mass)
        raise ParadoxInvariantError(
            "conditional state for setting "
            f"{worst.setting}, outcome {worst.outcome} is not rank-1 "
            f"(residual mass {worst.residual_mass:.3e}); purity is guaranteed "
            "for pure entangled inputs, so this is a numerical failure"
        )
    if prof.min_pairwise_distance() <= tol.state_eq:
        raise DegenerateSettingGeometryError(
            "some normalized conditional states coincide across outcomes or "
            "settings; the single-term collapse needs them pairwise distinct "
            f"(min trace distance {prof.min_pairwise_distance():.3e})"
        )

    # Collapse: each nonvacuous equation consumes its own hidden state, in
    # lexicographic (setting, outcome) order, with the response forced to 1.
    assignments = {}
    xi = 1
    for r in prof.reports:
        if not r.vacuous:
            assignments[(r.setting, r.outcome)] = xi
            xi += 1

    lhs = sum(asm.probability(n, a) for n in range(k) for a in range(asm.outcome_counts[n]))
    quantum = float(np.trace(asm.bob_reduced).real)
    return ParadoxCertificate(
        applicable=True,
        reason="entangled pure state: trace contradiction established",
        k=k,
        lhs_trace_sum=float(lhs),
        quantum_trace_sum=quantum,
        purity=prof,
        collapsed_assignments=assignments,
        tolerances=tol,
        note="k-setting extension of the two-setting collapse" if k > 2 else None,
    )


def separable_lhs_model(
    psi: BipartitePureState,
    settings,
    tol: Tolerances = DEFAULT_TOL,
) -> LHSModel:
    """Single-hidden-state model reproducing a product state's assemblage.

    The hidden state is Bob's (pure) reduced state and the responses are
    Alice's local outcome probabilities tr(P_a rho_A).
    """
    if psi.entangled(tol):
        raise ValueError("separable_lhs_model requires a separable (Schmidt rank 1) state")
    settings = list(settings)
    if not settings:
        raise ValueError("need at least one measurement setting")
    rho = psi.density_matrix()
    rho_a = partial_trace(rho, psi.dA, psi.dB, keep="A")
    rho_b = partial_trace(rho, psi.dA, psi.dB, keep="B")
    responses = {}
    for n, s in enumerate(settings):
        if s.dim != psi.dA:
            raise ValueError(f"setting {s.label!r} acts on dim {s.dim}, expected {psi.dA}")
        for a, proj in enumerate(s.projectors):
            responses[(n, a, 0)] = float(np.trace(proj @ rho_a).real)
    return LHSModel(weights=np.array([1.0]), hidden_states=(rho_b,), responses=responses)


def lhs_reconstruct(model: LHSModel, settings, tol: Tolerances = DEFAULT_TOL) -> Assemblage:
    """Assemble rho~^n_a = sum_xi p(a|n,xi) w_xi rho_xi from a model."""
    model.validate(tol=tol)
    settings = list(settings)
    dB = model.hidden_states[0].shape[0]
    weighted = [w * h for w, h in zip(model.weights, model.hidden_states)]
    states = {}
    for n, s in enumerate(settings):
        for a in range(s.outcomes):
            states[(n, a)] = sum(
                model.response(n, a, xi) * weighted[xi] for xi in range(len(weighted))
            )
    bob = sum(weighted)
    return Assemblage(
        setting_labels=tuple(s.label for s in settings),
        outcome_counts=tuple(s.outcomes for s in settings),
        states=states,
        bob_reduced=bob,
        dims=(settings[0].dim, dB),
    )


def default_candidates(a: Assemblage, tol: Tolerances = DEFAULT_TOL):
    """Natural candidate ensemble: the normalized conditional states of the
    assemblage plus Bob's reduced state."""
    cands = []
    for (n, out) in sorted(a.states):
        rho = a.states[(n, out)]
        p = float(np.trace(rho).real)
        if p > tol.rank1:
            cands.append(rho / p)
    cands.append(a.bob_reduced / float(np.trace(a.bob_reduced).real))
    return cands


def _vectorize_hermitian(m: np.ndarray) -> np.ndarray:
    """Real vector of a d x d Hermitian matrix: diagonal, then real and
    imaginary parts of the strict upper triangle. No redundancy."""
    d = m.shape[0]
    iu = np.triu_indices(d, k=1)
    return np.concatenate([np.real(np.diag(m)), np.real(m[iu]), np.imag(m[iu])])


def lhs_feasibility_lp(
    a: Assemblage,
    candidates=None,
    tol: Tolerances = DEFAULT_TOL,
) -> FeasibilityOutcome:
    """Search for an LHS model of an assemblage over fixed hidden states.

    Solves for nonnegative weights w_{c,D} over candidates c and
    deterministic strategies D (one fixed outcome per setting) such that
    rho~^n_a = sum over {c, D with D(n)=a} of w_{c,D} rho_c. Feasibility is
    decided by a phase-1 simplex; a feasible point is folded back into
    hidden-state weights and stochastic responses.
    """
    if candidates is None:
        candidates = default_candidates(a, tol)
    candidates = [as_matrix(c) for c in candidates]
    if not candidates:
        raise ValueError("candidate list must be nonempty")
    dB = a.dims[1]
    for i, c in enumerate(candidates):
        if c.shape != (dB, dB):
            raise ValueError(f"candidate {i} has shape {c.shape}, expected ({dB}, {dB})")

    strategies = list(itertools.product(*(range(o) for o in a.outcome_counts)))
    n_c, n_d = len(candidates), len(strategies)
    cand_vec = [_vectorize_hermitian(c) for c in candidates]
    comp = dB * dB  # real components per matrix equality

    keys = sorted(a.states)
    A = np.zeros((len(keys) * comp, n_c * n_d))
    b = np.zeros(len(keys) * comp)
    for row_block, (n, out) in enumerate(keys):
        rows = slice(row_block * comp, (row_block + 1) * comp)
        b[rows] = _vectorize_hermitian(a.states[(n, out)])
        for ci in range(n_c):
            for di, strat in enumerate(strategies):
                if strat[n] == out:
                    A[rows, ci * n_d + di] = cand_vec[ci]

    result = phase_one(A, b, tol=tol.lp)
    if not result.feasible:
        return FeasibilityOutcome("InfeasibleWithinAnsatz", None, result.residual, result.iterations)

    w = result.x.reshape(n_c, n_d)
    weights_per_candidate = w.sum(axis=1)
    kept = [ci for ci in range(n_c) if weights_per_candidate[ci] > tol.lp]
    if not kept:
        # All mass vanished: only possible for an all-vacuous assemblage.
        return FeasibilityOutcome("InfeasibleWithinAnsatz", None, result.residual, result.iterations)
    weights = np.array([weights_per_candidate[ci] for ci in kept])
    weights = weights / weights.sum()
    responses = {}
    for new_xi, ci in enumerate(kept):
        for n in range(a.n_settings):
            for out in range(a.outcome_counts[n]):
                p = sum(w[ci, di] for di, strat in enumerate(strategies) if strat[n] == out)
                responses[(n, out, new_xi)] = p / weights_per_candidate[ci]
    model = LHSModel(
        weights=weights,
        hidden_states=tuple(candidates[ci] for ci in kept),
        responses=responses,
    )
    return FeasibilityOutcome("FeasibleModelFound", model, result.residual, result.iterations)


def _three_qubit_op(p1: np.ndarray, p2: np.ndarray, p3: np.ndarray) -> np.ndarray:
    return kron(kron(p1, p2), p3)


def ghz_operator_expectations(state: MultiQubitPureState) -> GhzExpectations:
    """Expectations of xxx, xyy, yxy, yyx on a three-qubit state, plus the
    residual ||O psi - <O> psi|| per operator (zero iff exact eigenstate)."""
    if state.n_qubits != 3:
        raise ValueError(f"expected a 3-qubit state, got {state.n_qubits} qubits")
    ops = [
        _three_qubit_op(PAULI_X, PAULI_X, PAULI_X),
        _three_qubit_op(PAULI_X, PAULI_Y, PAULI_Y),
        _three_qubit_op(PAULI_Y, PAULI_X, PAULI_Y),
        _three_qubit_op(PAULI_Y, PAULI_Y, PAULI_X),
    ]
    psi = state.vector
    values = []
    residuals = []
    for op in ops:
        applied = op @ psi
        val = float(np.real(np.vdot(psi, applied)))
        values.append(val)
        residuals.append(float(np.linalg.norm(applied - val * psi)))
    return GhzExpectations(tuple(values), tuple(residuals))


def ghz_lhv_bruteforce(targets=(1, -1, -1, -1)):
    """Exhaustively test all 64 assignments of +/-1 to the six local values
    (v1x, v2x, v3x, v1y, v2y, v3y) against the four product constraints.

    Returns (satisfying assignment count, witness product). The witness is
    the product of the four constraint targets: since every squared value
    drops out, any joint assignment would force that product to equal +1,
    so -1 certifies that no assignment can exist.
    """
    count = 0
    for v1x, v2x, v3x, v1y, v2y, v3y in itertools.product((-1, 1), repeat=6):
        if (
            v1x * v2x * v3x == targets[0]
            and v1x * v2y * v3y == targets[1]
            and v1y * v2x * v3y == targets[2]
            and v1y * v2y * v3x == targets[3]
        ):
            count += 1
    witness = 1
    for t in targets:
        witness *= t
    return count, witness
