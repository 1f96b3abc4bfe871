import numpy as np
import pytest

from fcoherence import (
    DensityMatrix,
    GioChannel,
    KrausChannel,
    dephase,
    dephasing_channel,
    depolarizing_extension,
    diagonal_unitary_mixture,
    erasure_extension,
    gio_saturation_check,
    identity_channel,
    is_gio,
    is_sio,
    petz_recovery,
    random_channel,
    random_density,
    random_gio,
    random_unital_channel,
    random_unitary,
    recovery_defect,
    trace_norm,
)
from fcoherence.errors import (
    BadWeights,
    ChannelValidationError,
    DimensionMismatch,
    NotGio,
    SingularState,
)


def plus_state():
    return DensityMatrix(np.full((2, 2), 0.5, dtype=complex))


def hadamard_channel():
    h = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    return KrausChannel([h], label="hadamard")


class TestKrausChannel:
    def test_rejects_incomplete_kraus_set(self):
        with pytest.raises(ChannelValidationError):
            KrausChannel([0.5 * np.eye(2)])

    def test_rejects_empty_list(self):
        with pytest.raises(ChannelValidationError):
            KrausChannel([])

    def test_rejects_mixed_shapes(self):
        with pytest.raises(DimensionMismatch):
            KrausChannel([np.eye(2), np.eye(3)])

    def test_rejects_non_finite(self):
        k = np.eye(2, dtype=complex)
        k[0, 0] = np.nan
        with pytest.raises(ChannelValidationError):
            KrausChannel([k])

    def test_identity_action(self):
        rho = random_density(3, 3, seed=1)
        out = identity_channel(3).apply(rho)
        np.testing.assert_allclose(out.matrix, rho.matrix, atol=1e-12)

    def test_apply_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            identity_channel(2).apply(DensityMatrix.maximally_mixed(3))

    def test_kraus_stack_read_only(self):
        ch = identity_channel(2)
        with pytest.raises(ValueError):
            ch.kraus_ops[0, 0, 0] = 0.0

    def test_dual_is_hilbert_schmidt_adjoint(self):
        ch = random_channel(3, 3, seed=4)
        dual = ch.dual()
        rng = np.random.default_rng(0)
        x = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        y = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        lhs = np.trace(x.conj().T @ ch.apply_matrix(y))
        rhs = np.trace(dual.apply_matrix(x).conj().T @ y)
        assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_dual_of_non_unital_not_trace_preserving(self):
        # the dual map only preserves trace when the channel is unital,
        # so the constructor check must be relaxed there
        ch = random_channel(2, 3, seed=9)
        assert not ch.is_unital()
        assert ch.dual().completeness_defect() > 1e-6

    def test_selective_outcomes_normalized(self):
        ch = random_channel(3, 4, seed=11)
        outcomes = ch.selective_outcomes(random_density(3, 3, seed=12))
        total = sum(o.probability for o in outcomes)
        assert total == pytest.approx(1.0, abs=1e-10)
        for o in outcomes:
            assert np.real(np.trace(o.state.matrix)) == pytest.approx(1.0, abs=1e-10)

    def test_selective_outcomes_drop_zero_probability(self):
        ch = dephasing_channel(2)
        outcomes = ch.selective_outcomes(DensityMatrix.from_diagonal([1.0, 0.0]))
        assert len(outcomes) == 1
        assert outcomes[0].probability == pytest.approx(1.0)


class TestGioChannel:
    def test_rejects_off_diagonal_kraus(self):
        h = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
        with pytest.raises(NotGio):
            GioChannel([h])

    def test_coefficient_table(self):
        ch = dephasing_channel(3)
        assert ch.coefficients.shape == (3, 3)
        np.testing.assert_allclose(ch.coefficients, np.eye(3))

    def test_columns_are_unit_vectors(self):
        ch = random_gio(4, 3, seed=5)
        norms = np.sum(np.abs(ch.coefficients) ** 2, axis=0)
        np.testing.assert_allclose(norms, 1.0, atol=1e-12)

    def test_preserves_all_diagonals(self):
        ch = random_gio(3, 4, seed=6)
        rho = random_density(3, 3, seed=7)
        out = ch.apply(rho)
        np.testing.assert_allclose(
            np.diagonal(out.matrix), np.diagonal(rho.matrix), atol=1e-12
        )

    def test_fixes_incoherent_states(self):
        ch = random_gio(3, 2, seed=8)
        rho = DensityMatrix.from_diagonal([0.5, 0.3, 0.2])
        np.testing.assert_allclose(ch.apply(rho).matrix, rho.matrix, atol=1e-12)


class TestBuiltinChannels:
    def test_dephasing_equals_diagonal_projection(self):
        rho = random_density(3, 3, seed=21)
        out = dephasing_channel(3).apply(rho)
        np.testing.assert_allclose(out.matrix, dephase(rho).matrix, atol=1e-12)

    def test_depolarizing_extension_action(self):
        rho = plus_state()
        ancilla = DensityMatrix.from_diagonal([1.0, 0.0])
        out = depolarizing_extension(2).apply(rho.tensor(ancilla))
        want = rho.tensor(DensityMatrix.maximally_mixed(2))
        np.testing.assert_allclose(out.matrix, want.matrix, atol=1e-12)

    def test_erasure_extension_action(self):
        rho = plus_state()
        out = erasure_extension(2).apply(rho.tensor(DensityMatrix.maximally_mixed(2)))
        want = rho.tensor(DensityMatrix.from_diagonal([1.0, 0.0]))
        np.testing.assert_allclose(out.matrix, want.matrix, atol=1e-12)

    def test_diagonal_unitary_mixture_dephasings(self):
        # equal mixture of diag(1, 1) and diag(1, -1) kills the off-diagonal
        ch = diagonal_unitary_mixture([0.5, 0.5], [[0.0, 0.0], [0.0, np.pi]])
        out = ch.apply(plus_state())
        np.testing.assert_allclose(out.matrix, np.eye(2) / 2, atol=1e-12)

    def test_diagonal_unitary_mixture_rejects_bad_weights(self):
        with pytest.raises(BadWeights):
            diagonal_unitary_mixture([0.5, 0.4], [[0.0, 0.0], [0.0, 1.0]])
        with pytest.raises(BadWeights):
            diagonal_unitary_mixture([1.5, -0.5], [[0.0, 0.0], [0.0, 1.0]])
        with pytest.raises(BadWeights):
            diagonal_unitary_mixture([1.0], [[0.0, 0.0], [0.0, 1.0]])

    def test_random_unital_channel_is_unital(self):
        ch = random_unital_channel(3, 4, seed=31)
        assert ch.is_unital()
        assert ch.completeness_defect() < 1e-10


class TestIncoherenceClassifiers:
    def test_dephasing_is_gio_and_sio(self):
        ch = dephasing_channel(3)
        assert is_gio(ch)
        assert is_sio(ch)

    def test_random_gio_is_gio_and_sio(self):
        ch = random_gio(3, 3, seed=41)
        assert is_gio(ch)
        assert is_sio(ch)

    def test_extensions_are_sio_not_gio(self):
        for ch in [depolarizing_extension(2), erasure_extension(2)]:
            assert is_sio(ch), ch.label
            assert not is_gio(ch), ch.label

    def test_hadamard_is_neither(self):
        ch = hadamard_channel()
        assert not is_sio(ch)
        assert not is_gio(ch)

    def test_random_channel_generically_not_sio(self):
        assert not is_sio(random_channel(3, 3, seed=43))


class TestSaturationCheck:
    def test_proportional_columns_saturate(self):
        # global-phase unitaries have perfectly aligned coefficient columns
        ch = diagonal_unitary_mixture([0.5, 0.5], [[0.0, 0.0], [1.3, 1.3]])
        rep = gio_saturation_check(ch, plus_state())
        assert rep.saturates
        assert rep.worst_value == pytest.approx(1.0, abs=1e-12)
        assert rep.proportionality_defect == pytest.approx(0.0, abs=1e-8)

    def test_dephasing_on_plus_fails(self):
        rep = gio_saturation_check(dephasing_channel(2), plus_state())
        assert not rep.saturates
        assert rep.worst_pair == (0, 1)
        assert rep.worst_value == pytest.approx(0.0, abs=1e-12)

    def test_diagonal_state_trivially_saturates(self):
        rep = gio_saturation_check(
            random_gio(3, 2, seed=51), DensityMatrix.from_diagonal([0.5, 0.3, 0.2])
        )
        assert rep.saturates
        assert rep.worst_pair is None

    def test_generic_gio_on_plus_fails(self):
        rep = gio_saturation_check(random_gio(2, 3, seed=52), plus_state())
        assert not rep.saturates
        assert 0.0 < rep.worst_value < 1.0

    def test_rejects_non_diagonal_channel(self):
        with pytest.raises(NotGio):
            gio_saturation_check(depolarizing_extension(2), DensityMatrix.maximally_mixed(4))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            gio_saturation_check(dephasing_channel(2), DensityMatrix.maximally_mixed(3))


class TestPetzRecovery:
    def test_recovers_reference_state(self):
        for seed in range(5):
            ch = random_channel(3, 3, seed=60 + seed)
            sigma = DensityMatrix(
                0.8 * random_density(3, 3, seed=70 + seed).matrix + 0.2 * np.eye(3) / 3
            )
            rec = petz_recovery(ch, sigma)
            got = rec(ch.apply_matrix(sigma.matrix))
            np.testing.assert_allclose(got, sigma.matrix, atol=1e-10)

    def test_reduces_to_dual_for_unital_and_identity(self):
        ch = random_unital_channel(3, 3, seed=80)
        for ref in [np.eye(3), np.eye(3) / 3]:
            rec = petz_recovery(ch, ref)
            rng = np.random.default_rng(81)
            x = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
            x = x + x.conj().T
            np.testing.assert_allclose(rec(x), ch.dual().apply_matrix(x), atol=1e-10)

    def test_apply_returns_state(self):
        ch = random_unital_channel(2, 2, seed=82)
        rec = petz_recovery(ch, np.eye(2))
        out = rec.apply(random_density(2, 2, seed=83))
        assert np.real(np.trace(out.matrix)) == pytest.approx(1.0, abs=1e-10)

    def test_rejects_singular_reference_image(self):
        with pytest.raises(SingularState):
            petz_recovery(identity_channel(2), np.diag([1.0, 0.0]))

    def test_rejects_wrong_reference_shape(self):
        with pytest.raises(DimensionMismatch):
            petz_recovery(identity_channel(2), np.eye(3))

    def test_call_checks_shape(self):
        rec = petz_recovery(identity_channel(2), np.eye(2))
        with pytest.raises(DimensionMismatch):
            rec(np.eye(3))


class TestRecoveryDefect:
    def test_zero_for_unitary(self):
        u = random_unitary(3, seed=90)
        ch = KrausChannel([u])
        assert recovery_defect(ch, random_density(3, 3, seed=91)) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_dephasing_on_plus(self):
        # round trip lands on the dephased state, trace norm distance 1
        assert recovery_defect(dephasing_channel(2), plus_state()) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_matches_direct_round_trip(self):
        ch = random_gio(3, 2, seed=92)
        rho = random_density(3, 3, seed=93)
        roundtrip = ch.dual().apply_matrix(ch.apply_matrix(rho.matrix))
        assert recovery_defect(ch, rho) == pytest.approx(
            trace_norm(rho.matrix - roundtrip), abs=1e-12
        )

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            recovery_defect(dephasing_channel(2), DensityMatrix.maximally_mixed(3))
