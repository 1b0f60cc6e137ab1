import numpy as np
import pytest
from hypothesis import given, strategies as st

from app.exceptions import DomainError, NotDensityMatrix, OrderingViolation
from app.models import BellDiagonalState, DecoherencePair, MeasurementSetting
from app.service import information_service as info
from app.service.dynamics_service import as_matrix, evolve_state
from app.service.dynamics_service_test import bell_states, pairs
from app.service.verification_service import verification_service

H_04 = 0.9709505944546686

BELL_PHI = BellDiagonalState(r1=1.0, r2=-1.0, r3=1.0)
MIXED = BellDiagonalState(r1=1.0, r2=-0.2, r3=0.2)
MAXIMALLY_MIXED = BellDiagonalState(r1=0.0, r2=0.0, r3=0.0)
UNIT = DecoherencePair(t=0.0, f14=1.0, f23=1.0)
DECOHERED = DecoherencePair(t=0.0, f14=0.0, f23=0.0)

X_AXIS = (1.0, 0.0, 0.0)
Z_AXIS = (0.0, 0.0, 1.0)


def _x(s0, f=UNIT):
    return evolve_state(s0, f)


def _rho(s0, f=UNIT):
    return as_matrix(evolve_state(s0, f))


class TestBinaryEntropy:
    def test_values(self):
        assert info.binary_entropy(0.5) == 1.0
        assert info.binary_entropy(0.0) == 0.0
        assert info.binary_entropy(1.0) == 0.0
        assert info.binary_entropy(0.4) == pytest.approx(H_04, abs=1e-15)

    def test_round_off_tolerated(self):
        assert info.binary_entropy(-1e-13) == 0.0

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            info.binary_entropy(1.1)


class TestVonNeumannEntropy:
    def test_values(self):
        assert info.von_neumann_entropy(np.eye(4) / 4) == pytest.approx(2.0, abs=1e-12)
        assert info.von_neumann_entropy(np.diag([1.0, 0.0])) == 0.0
        assert info.von_neumann_entropy(np.diag([0.6, 0.4])) == pytest.approx(H_04, abs=1e-12)

    def test_not_hermitian(self):
        with pytest.raises(NotDensityMatrix):
            info.von_neumann_entropy(np.array([[0.5, 0.1], [0.0, 0.5]]))

    def test_bad_trace(self):
        with pytest.raises(NotDensityMatrix):
            info.von_neumann_entropy(np.eye(2))

    def test_negative_eigenvalue(self):
        with pytest.raises(NotDensityMatrix):
            info.von_neumann_entropy(np.diag([1.1, -0.1]))

    @given(bell_states(), pairs())
    def test_range(self, s0, f):
        assert -1e-12 <= info.von_neumann_entropy(_rho(s0, f)) <= 2 + 1e-9


class TestPartialTrace:
    def test_product_state(self):
        a = np.diag([0.7, 0.3])
        b = np.array([[0.5, 0.5], [0.5, 0.5]])
        rho = np.kron(a, b)
        np.testing.assert_allclose(info.partial_trace(rho, "A"), a)
        np.testing.assert_allclose(info.partial_trace(rho, "B"), b)

    @given(bell_states(), pairs())
    def test_bell_diagonal_marginals_are_maximally_mixed(self, s0, f):
        np.testing.assert_allclose(info.partial_trace(_rho(s0, f), "B"), np.eye(2) / 2, atol=1e-15)

    def test_bad_subsystem(self):
        with pytest.raises(DomainError):
            info.partial_trace(np.eye(4) / 4, "C")


class TestComplementarity:
    def test_pauli_x_z(self):
        assert info.complementarity() == pytest.approx(0.5, abs=1e-15)

    def test_same_observable(self):
        assert info.complementarity(MeasurementSetting(q_axis=Z_AXIS, r_axis=Z_AXIS)) == pytest.approx(1.0)

    def test_axis_must_be_nonzero(self):
        with pytest.raises(ValueError):
            MeasurementSetting(q_axis=(0.0, 0.0, 0.0))


class TestPostMeasurement:
    def test_maximally_mixed(self):
        outcome = info.post_measurement_state(_rho(MAXIMALLY_MIXED), Z_AXIS)
        np.testing.assert_allclose(outcome.probabilities, [0.5, 0.5])
        for state in outcome.conditional_states:
            np.testing.assert_allclose(state, np.eye(2) / 2, atol=1e-15)

    def test_bell_z_correlation(self):
        outcome = info.post_measurement_state(_rho(BELL_PHI), Z_AXIS)
        np.testing.assert_allclose(outcome.probabilities, [0.5, 0.5], atol=1e-15)
        pure = sorted(np.real(np.diag(s))[0] for s in outcome.conditional_states)
        assert pure == pytest.approx([0.0, 1.0], abs=1e-15)

    def test_mixed_x_measurement(self):
        outcome = info.post_measurement_state(_rho(MIXED), X_AXIS)
        np.testing.assert_allclose(outcome.probabilities, [0.5, 0.5], atol=1e-15)
        for state in outcome.conditional_states:
            np.testing.assert_allclose(sorted(np.linalg.eigvalsh(state)), [0.0, 1.0], atol=1e-12)

    def test_impossible_outcome(self):
        rho = np.kron(np.diag([1.0, 0.0]), np.eye(2) / 2)
        outcome = info.post_measurement_state(rho, Z_AXIS)
        assert sorted(outcome.probabilities) == pytest.approx([0.0, 1.0])
        np.testing.assert_allclose(outcome.conditional_states[int(np.argmin(outcome.probabilities))], np.eye(2) / 2)


class TestHolevo:
    def test_maximally_mixed(self):
        assert info.holevo_quantity(_rho(MAXIMALLY_MIXED), X_AXIS) == pytest.approx(0.0, abs=1e-12)
        assert info.holevo_quantity(_rho(MAXIMALLY_MIXED), Z_AXIS) == pytest.approx(0.0, abs=1e-12)

    def test_bell(self):
        assert info.holevo_quantity(_rho(BELL_PHI), Z_AXIS) == pytest.approx(1.0, abs=1e-12)

    def test_mixed(self):
        assert info.holevo_quantity(_rho(MIXED), Z_AXIS) == pytest.approx(1 - info.binary_entropy(0.6), abs=1e-12)

    @given(bell_states(), pairs())
    def test_nonnegative(self, s0, f):
        rho = _rho(s0, f)
        assert info.holevo_quantity(rho, X_AXIS) >= -1e-12
        assert info.holevo_quantity(rho, Z_AXIS) >= -1e-12

    def test_mutual_information(self):
        assert info.mutual_information(_rho(BELL_PHI)) == pytest.approx(2.0, abs=1e-12)
        assert info.mutual_information(np.eye(4) / 4) == pytest.approx(0.0, abs=1e-12)
        assert info.mutual_information(_rho(MIXED)) == pytest.approx(2 - H_04, abs=1e-12)


class TestClosedForms:
    def test_conditional_entropy(self):
        assert info.conditional_entropy_closed(_x(BELL_PHI)) == pytest.approx(-1.0, abs=1e-15)
        assert info.conditional_entropy_closed(_x(MAXIMALLY_MIXED)) == pytest.approx(1.0, abs=1e-15)
        assert info.conditional_entropy_closed(_x(MIXED)) == pytest.approx(H_04 - 1, abs=1e-12)

    def test_holevo_gap(self):
        assert info.holevo_gap_closed(_x(BELL_PHI)) == pytest.approx(0.0, abs=1e-12)
        assert info.holevo_gap_closed(_x(MAXIMALLY_MIXED)) == pytest.approx(0.0, abs=1e-12)
        assert info.holevo_gap_closed(_x(MIXED, DECOHERED)) == pytest.approx(0.0, abs=1e-12)

    def test_bounds(self):
        assert info.eub_adabi(_x(BELL_PHI)) == pytest.approx(0.0, abs=1e-12)
        assert info.eub_adabi(_x(MIXED)) == pytest.approx(H_04, abs=1e-9)
        assert info.eub_adabi(_x(MAXIMALLY_MIXED)) == pytest.approx(2.0, abs=1e-12)
        assert info.eub_berta(_x(BELL_PHI)) == pytest.approx(0.0, abs=1e-12)
        assert info.eub_berta(_x(MIXED)) == pytest.approx(H_04, abs=1e-12)
        assert info.eub_berta(_x(MAXIMALLY_MIXED)) == pytest.approx(2.0, abs=1e-12)

    def test_opposite_coherence_signs(self):
        x = _x(BellDiagonalState(r1=-0.3, r2=0.5, r3=0.1), DecoherencePair(t=0.0, f14=0.9, f23=0.4))
        assert x.gamma_c < 0 < x.omega_c
        assert info.holevo_gap_closed(x) == pytest.approx(info.holevo_gap(as_matrix(x)), abs=1e-9)

    def test_closed_forms_match_generic_pipeline(self):
        for _, s0, f in verification_service.random_cases(20240517, 1000):
            x = evolve_state(s0, f)
            rho = as_matrix(x)
            assert info.conditional_entropy_closed(x) == pytest.approx(info.conditional_entropy(rho), abs=1e-9)
            assert info.holevo_gap_closed(x) == pytest.approx(info.holevo_gap(rho), abs=1e-9)
            assert info.eub_adabi(x) == pytest.approx(info.adabi_bound(rho), abs=1e-9)
            assert info.eub_berta(x) == pytest.approx(info.berta_bound(rho), abs=1e-9)
            assert info.lhs_closed(x) == pytest.approx(info.lhs_uncertainty(rho), abs=1e-9)


class TestUncertainty:
    def test_lhs(self):
        assert info.lhs_uncertainty(_rho(BELL_PHI)) == pytest.approx(0.0, abs=1e-12)
        assert info.lhs_uncertainty(_rho(MAXIMALLY_MIXED)) == pytest.approx(2.0, abs=1e-12)
        assert info.lhs_uncertainty(_rho(MIXED, DECOHERED)) == pytest.approx(1 + info.binary_entropy(0.6), abs=1e-12)

    @given(bell_states(), pairs())
    def test_ordering(self, s0, f):
        bounds = info.report(0.0, _x(s0, f))
        assert bounds.lhs >= bounds.eub_adabi - 1e-9
        assert bounds.eub_adabi >= bounds.eub_berta - 1e-9
        assert -1e-9 <= bounds.eub_adabi <= 2 + 1e-9

    @given(bell_states(), pairs())
    def test_memoryless_relation(self, s0, f):
        # without memory the Shannon sum sits above log2(1/c) = 1; Bell-diagonal marginals make it 2
        assert info.shannon_uncertainty(_rho(s0, f)) == pytest.approx(2.0, abs=1e-12)

    def test_memoryless_relation_tilted_axes(self):
        setting = MeasurementSetting(q_axis=(1.0, 0.0, 1.0), r_axis=Z_AXIS)
        rho = np.kron(np.diag([1.0, 0.0]), np.eye(2) / 2)
        assert info.shannon_uncertainty(rho, setting) >= -np.log2(info.complementarity(setting)) - 1e-12


class TestReport:
    def test_bell(self):
        bounds = info.report(0.0, _x(BELL_PHI))
        assert bounds.s_cond == pytest.approx(-1.0, abs=1e-12)
        assert bounds.holevo_gap == pytest.approx(0.0, abs=1e-12)
        assert bounds.eub_adabi == pytest.approx(0.0, abs=1e-12)
        assert bounds.eub_berta == pytest.approx(0.0, abs=1e-12)
        assert bounds.lhs == pytest.approx(0.0, abs=1e-12)

    def test_maximally_mixed(self):
        bounds = info.report(2.0, _x(MAXIMALLY_MIXED))
        assert bounds.t == 2.0
        assert (bounds.s_cond, bounds.eub_adabi, bounds.eub_berta) == (
            pytest.approx(1.0), pytest.approx(2.0), pytest.approx(2.0)
        )
        assert bounds.holevo_gap == pytest.approx(0.0, abs=1e-12)
        assert bounds.lhs == pytest.approx(2.0, abs=1e-12)

    def test_mixed(self):
        bounds = info.report(0.0, _x(MIXED))
        assert bounds.s_cond == pytest.approx(H_04 - 1, abs=1e-9)
        assert bounds.eub_adabi == pytest.approx(H_04, abs=1e-9)
        assert bounds.lhs >= H_04 - 1e-9

    def test_same_observable_twice(self):
        setting = MeasurementSetting(q_label="sigma_z", q_axis=Z_AXIS, r_label="sigma_z", r_axis=Z_AXIS)
        rho = _rho(MIXED)
        bounds = info.report(0.0, _x(MIXED), setting)
        # c = 1, so Berta reduces to S(A|B)
        assert bounds.eub_berta == pytest.approx(H_04 - 1, abs=1e-9)
        assert bounds.eub_adabi == pytest.approx(2 * H_04 - 1, abs=1e-9)
        assert bounds.eub_adabi == pytest.approx(info.adabi_bound(rho, setting), abs=1e-12)
        assert bounds.lhs == pytest.approx(2 * H_04, abs=1e-9)

    @given(bell_states(), pairs())
    def test_tilted_setting_is_self_consistent(self, s0, f):
        setting = MeasurementSetting(q_axis=(1.0, 0.0, 1.0), r_axis=(0.0, 1.0, 0.0))
        rho = _rho(s0, f)
        bounds = info.report(0.0, _x(s0, f), setting)
        assert bounds.eub_berta == pytest.approx(info.berta_bound(rho, setting), abs=1e-12)
        assert bounds.eub_adabi == pytest.approx(info.adabi_bound(rho, setting), abs=1e-12)
        assert bounds.lhs >= bounds.eub_adabi - 1e-9

    def test_ordering_violation(self, monkeypatch):
        monkeypatch.setattr(info, "lhs_uncertainty", lambda rho, m: -1.0)
        with pytest.raises(OrderingViolation):
            info.report(0.0, _x(MIXED))
