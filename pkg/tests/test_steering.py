import numpy as np
import pytest

from steerkit.assemblage import Assemblage, conditional_states
from steerkit.measurements import (
    angle_projectors,
    bloch_projectors,
    computational_basis,
    fourier_mub_basis,
)
from steerkit.states import (
    MultiQubitPureState,
    density,
    ghz_state,
    nopa_truncated,
    qudit_schmidt_state,
    separable_state,
    theta_state,
)
from steerkit.steering import (
    CoincidentSettingsError,
    LHSModel,
    default_candidates,
    ghz_lhv_bruteforce,
    ghz_operator_expectations,
    lhs_feasibility_lp,
    lhs_reconstruct,
    pure_state_paradox,
    separable_lhs_model,
)

Z = bloch_projectors([0, 0, 1])
X = bloch_projectors([1, 0, 0])
Y = bloch_projectors([0, 1, 0])
K0 = np.array([1, 0], dtype=complex)
K1 = np.array([0, 1], dtype=complex)
PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)
MINUS = np.array([1, -1], dtype=complex) / np.sqrt(2)


class TestPureStateParadox:
    def test_two_vs_one_at_pi4(self):
        cert = pure_state_paradox(theta_state(np.pi / 4), [Z, X])
        assert cert.applicable
        assert abs(cert.lhs_trace_sum - 2) <= 1e-9
        assert abs(cert.quantum_trace_sum - 1) <= 1e-9
        assert cert.contradiction_magnitude == pytest.approx(1.0, abs=1e-9)
        # one hidden state per equation, responses forced to 1
        assert cert.collapsed_assignments == {
            (0, 0): 1, (0, 1): 2, (1, 0): 3, (1, 1): 4,
        }

    def test_separable_not_applicable(self):
        cert = pure_state_paradox(theta_state(0.0), [Z, X])
        assert not cert.applicable
        assert "separable" in cert.reason

    def test_qudit_uniform_d4(self):
        psi = qudit_schmidt_state(np.full(4, 0.5))
        cert = pure_state_paradox(psi, [computational_basis(4), fourier_mub_basis(4)])
        assert abs(cert.lhs_trace_sum - 2) <= 1e-9
        assert abs(cert.quantum_trace_sum - 1) <= 1e-9

    def test_three_settings(self):
        cert = pure_state_paradox(theta_state(np.pi / 3), [Z, X, Y])
        assert abs(cert.lhs_trace_sum - 3) <= 1e-9
        assert abs(cert.quantum_trace_sum - 1) <= 1e-9
        assert cert.note is not None

    def test_coincident_settings_rejected(self):
        with pytest.raises(CoincidentSettingsError):
            pure_state_paradox(theta_state(0.5), [Z, bloch_projectors([0, 0, 1])])

    def test_single_setting_rejected(self):
        with pytest.raises(ValueError):
            pure_state_paradox(theta_state(0.5), [Z])

    def test_theta_grid(self):
        for theta in np.linspace(0.01, np.pi / 2 - 0.01, 50):
            cert = pure_state_paradox(theta_state(theta), [Z, X])
            assert cert.applicable
            assert abs(cert.lhs_trace_sum - 2) <= 1e-9
            assert abs(cert.quantum_trace_sum - 1) <= 1e-9

    def test_qudit_grid(self):
        rng = np.random.default_rng(53)
        for d in range(2, 7):
            vectors = [np.full(d, 1 / np.sqrt(d))]
            while len(vectors) < 3:
                lam = rng.uniform(0.05, 1.0, size=d)
                lam /= np.linalg.norm(lam)
                if np.min(lam) > 0.05:
                    vectors.append(lam)
            settings = [computational_basis(d), fourier_mub_basis(d)]
            for lam in vectors:
                cert = pure_state_paradox(qudit_schmidt_state(lam), settings)
                assert abs(cert.lhs_trace_sum - 2) <= 1e-9
                assert abs(cert.quantum_trace_sum - 1) <= 1e-9

    def test_k_setting_law(self):
        settings_pool = [Z, X, Y, bloch_projectors([np.sin(0.8), 0, np.cos(0.8)])]
        for k in (2, 3, 4):
            cert = pure_state_paradox(theta_state(np.pi / 3), settings_pool[:k])
            assert abs(cert.lhs_trace_sum - k) <= 1e-9

    def test_nopa(self):
        psi, _ = nopa_truncated(1.0, 20)
        cert = pure_state_paradox(psi, [computational_basis(20), fourier_mub_basis(20)])
        assert abs(cert.lhs_trace_sum - 2) <= 1e-9
        assert abs(cert.quantum_trace_sum - 1) <= 1e-9

    def test_certificate_json(self):
        cert = pure_state_paradox(theta_state(0.9), [Z, X])
        doc = cert.to_json()
        assert doc["applicable"]
        assert doc["k"] == 2
        assert doc["purity"]["all_rank_one"]


class TestSeparableLhsModel:
    def test_paper_style_responses(self):
        a1, a2 = 0.3, 1.1
        psi = separable_state(PLUS)
        model = separable_lhs_model(psi, [angle_projectors(a1), angle_projectors(a2)])
        assert np.allclose(model.weights, [1.0])
        assert np.allclose(model.hidden_states[0], density(PLUS))
        assert model.response(0, 0, 0) == pytest.approx(np.cos(a1) ** 2)
        assert model.response(0, 1, 0) == pytest.approx(np.sin(a1) ** 2)
        assert model.response(1, 0, 0) == pytest.approx(np.cos(a2) ** 2)
        assert model.response(1, 1, 0) == pytest.approx(np.sin(a2) ** 2)

    def test_z_x_responses(self):
        beta = np.array([np.cos(0.7), np.sin(0.7) * np.exp(0.4j)])
        model = separable_lhs_model(separable_state(beta), [Z, X])
        assert model.response(0, 0, 0) == pytest.approx(1.0)
        assert model.response(0, 1, 0) == pytest.approx(0.0, abs=1e-12)
        assert model.response(1, 0, 0) == pytest.approx(0.5)
        assert model.response(1, 1, 0) == pytest.approx(0.5)

    def test_reconstruction_exact(self):
        rng = np.random.default_rng(59)
        for _ in range(10):
            gamma = rng.uniform(0, np.pi / 2)
            beta = np.array([np.cos(gamma), np.sin(gamma) * np.exp(1j * rng.uniform(0, 2 * np.pi))])
            settings = [angle_projectors(rng.uniform(0, np.pi)) for _ in range(2)]
            psi = separable_state(beta)
            model = separable_lhs_model(psi, settings)
            rec = lhs_reconstruct(model, settings)
            asm = conditional_states(psi.density_matrix(), settings, (2, 2))
            dev = max(
                float(np.max(np.abs(rec.state(n, a) - asm.state(n, a))))
                for (n, a) in asm.states
            )
            assert dev <= 1e-10

    def test_entangled_rejected(self):
        with pytest.raises(ValueError, match="separable"):
            separable_lhs_model(theta_state(0.5), [Z, X])


class TestLhsReconstruct:
    def test_single_deterministic_hidden_state(self):
        rho1 = density(PLUS)
        model = LHSModel(
            weights=np.array([1.0]),
            hidden_states=(rho1,),
            responses={(0, 0, 0): 1.0, (0, 1, 0): 0.0, (1, 0, 0): 1.0, (1, 1, 0): 0.0},
        )
        asm = lhs_reconstruct(model, [Z, X])
        assert np.allclose(asm.state(0, 0), rho1)
        assert np.allclose(asm.state(0, 1), 0)

    def test_two_hidden_states(self):
        model = LHSModel(
            weights=np.array([0.5, 0.5]),
            hidden_states=(density(K0), density(K1)),
            responses={
                (0, 0, 0): 1.0, (0, 1, 0): 0.0, (1, 0, 0): 1.0, (1, 1, 0): 0.0,
                (0, 0, 1): 0.0, (0, 1, 1): 1.0, (1, 0, 1): 0.0, (1, 1, 1): 1.0,
            },
        )
        asm = lhs_reconstruct(model, [Z, X])
        assert np.allclose(asm.state(0, 0), 0.5 * density(K0))
        assert np.allclose(asm.state(1, 0), 0.5 * density(K0))

    def test_no_signalling_by_construction(self):
        from steerkit.assemblage import no_signalling_check

        model = LHSModel(
            weights=np.array([0.3, 0.7]),
            hidden_states=(density(K0), density(PLUS)),
            responses={
                (0, 0, 0): 0.2, (0, 1, 0): 0.8, (1, 0, 0): 0.6, (1, 1, 0): 0.4,
                (0, 0, 1): 0.9, (0, 1, 1): 0.1, (1, 0, 1): 0.5, (1, 1, 1): 0.5,
            },
        )
        assert no_signalling_check(lhs_reconstruct(model, [Z, X])) <= 1e-12


class TestFeasibilityLp:
    def test_separable_assemblage_feasible(self):
        psi = separable_state(PLUS)
        settings = [angle_projectors(0.3), angle_projectors(1.1)]
        asm = conditional_states(psi.density_matrix(), settings, (2, 2))
        out = lhs_feasibility_lp(asm, [density(PLUS)])
        assert out.feasible
        model = out.model
        model.validate(bob_reduced=asm.bob_reduced)
        rec = lhs_reconstruct(model, settings)
        dev = max(
            float(np.max(np.abs(rec.state(n, a) - asm.state(n, a))))
            for (n, a) in asm.states
        )
        assert dev <= 1e-8
        # same responses as the explicit construction
        ref = separable_lhs_model(psi, settings)
        for key in ref.responses:
            assert model.response(*key) == pytest.approx(ref.responses[key], abs=1e-8)

    def test_entangled_infeasible_in_conditional_ansatz(self):
        asm = conditional_states(theta_state(np.pi / 4).density_matrix(), [Z, X], (2, 2))
        cands = [density(K0), density(K1), density(PLUS), density(MINUS)]
        out = lhs_feasibility_lp(asm, cands)
        assert not out.feasible
        assert out.residual >= 0.05

    def test_uncorrelated_assemblage_feasible(self):
        rho_b = np.eye(2) / 2
        states = {(n, a): rho_b / 2 for n in range(2) for a in range(2)}
        asm = Assemblage(("s0", "s1"), (2, 2), states, rho_b, (2, 2))
        out = lhs_feasibility_lp(asm, [rho_b])
        assert out.feasible
        for n in range(2):
            for a in range(2):
                assert out.model.response(n, a, 0) == pytest.approx(0.5, abs=1e-9)

    def test_default_candidates(self):
        asm = conditional_states(theta_state(np.pi / 4).density_matrix(), [Z, X], (2, 2))
        cands = default_candidates(asm)
        assert len(cands) == 5  # four conditionals plus Bob's reduced state
        for c in cands:
            assert abs(np.trace(c) - 1) < 1e-12

    def test_theta_sweep_infeasible(self):
        for theta in (np.pi / 8, np.pi / 4, 3 * np.pi / 8):
            asm = conditional_states(theta_state(theta).density_matrix(), [Z, X], (2, 2))
            cands = default_candidates(asm)[:4]
            out = lhs_feasibility_lp(asm, cands)
            assert not out.feasible

    def test_dimension_mismatch(self):
        asm = conditional_states(theta_state(0.5).density_matrix(), [Z, X], (2, 2))
        with pytest.raises(ValueError, match="candidate"):
            lhs_feasibility_lp(asm, [np.eye(3) / 3])


class TestGhz:
    def test_expectations(self):
        exp = ghz_operator_expectations(ghz_state())
        assert np.allclose(exp.values, [1, -1, -1, -1], atol=1e-12)
        assert max(exp.eigenstate_residuals) <= 1e-12

    def test_product_state_expectations_vanish(self):
        vec = np.zeros(8, dtype=complex)
        vec[0] = 1
        exp = ghz_operator_expectations(MultiQubitPureState(vec, 3))
        assert np.allclose(exp.values, 0, atol=1e-12)

    def test_wrong_qubit_count(self):
        with pytest.raises(ValueError):
            ghz_operator_expectations(MultiQubitPureState(np.array([1, 0], dtype=complex), 1))

    def test_bruteforce_no_solutions(self):
        count, witness = ghz_lhv_bruteforce()
        assert count == 0
        assert witness == -1

    def test_relaxed_constraints_have_solutions(self):
        # Four parity constraints on six signs with one GF(2) dependency:
        # rank 3, so 2^(6-3) = 8 satisfying assignments.
        count, witness = ghz_lhv_bruteforce(targets=(-1, -1, -1, -1))
        assert count == 8
        assert witness == 1
