import math

import numpy as np
import pytest

from fcoherence import (
    DensityMatrix,
    coherence_f,
    coherence_f_hat,
    dephase,
    dephasing_distance,
    f_entropy,
    f_entropy_hat,
    is_incoherent,
    max_coherent_state,
    power_coherence,
    random_density,
    random_pure,
    relative_entropy_coherence,
)
from fcoherence.errors import ParamOutOfRange
from fcoherence.generators import lookup, neg_log, power, tsallis

DECREASING_SPECS = ["neg_log", "power:0.5", "tsallis:0.5", "tsallis:1.5"]


def plus_state():
    return DensityMatrix(np.full((2, 2), 0.5, dtype=complex))


class TestDephase:
    def test_kills_off_diagonals(self):
        rho = dephase(plus_state())
        np.testing.assert_allclose(rho.matrix, np.eye(2) / 2)

    def test_idempotent(self):
        rho = random_density(3, 3, seed=1)
        once = dephase(rho)
        np.testing.assert_allclose(dephase(once).matrix, once.matrix)


class TestHandValues:
    def test_plus_state_neg_log(self):
        rho = plus_state()
        assert coherence_f_hat(rho, neg_log()).value == pytest.approx(
            math.log(2.0), abs=1e-12
        )
        assert coherence_f(rho, neg_log()).value == pytest.approx(
            math.log(2.0), abs=1e-12
        )

    def test_plus_state_power_half(self):
        rho = plus_state()
        # hat: -f(2) with f = 4 (1 - sqrt(x)); plain: f(1/2)
        assert coherence_f_hat(rho, power(0.5)).value == pytest.approx(
            4.0 * math.sqrt(2.0) - 4.0, abs=1e-12
        )
        assert coherence_f(rho, power(0.5)).value == pytest.approx(
            4.0 - 2.0 * math.sqrt(2.0), abs=1e-12
        )

    def test_result_carries_spectral_data(self):
        res = coherence_f_hat(plus_state(), neg_log())
        assert res.f_name == "neg_log"
        assert res.variant == "hat"
        np.testing.assert_allclose(res.eigenvalues, [1.0, 0.0], atol=1e-12)
        np.testing.assert_allclose(res.diagonal, [0.5, 0.5])

    @pytest.mark.parametrize("dim", [2, 3, 4, 5, 6])
    def test_uniform_superposition_neg_log(self, dim):
        rho = max_coherent_state(dim).as_density()
        assert coherence_f_hat(rho, neg_log()).value == pytest.approx(
            math.log(dim), abs=1e-9
        )


class TestEntropyDifferenceForm:
    @pytest.mark.parametrize("spec", DECREASING_SPECS)
    def test_coherence_is_entropy_gain_of_dephasing(self, spec):
        f = lookup(spec)
        for trial in range(5):
            rho = random_density(3, 3, seed=40 + trial)
            assert coherence_f(rho, f).value == pytest.approx(
                f_entropy(dephase(rho), f) - f_entropy(rho, f), abs=1e-10
            )
            assert coherence_f_hat(rho, f).value == pytest.approx(
                f_entropy_hat(dephase(rho), f) - f_entropy_hat(rho, f), abs=1e-10
            )

    def test_relative_entropy_route_matches_hat(self):
        for trial in range(5):
            rho = random_density(4, 4, seed=60 + trial)
            assert relative_entropy_coherence(rho) == pytest.approx(
                coherence_f_hat(rho, neg_log()).value, abs=1e-10
            )

    def test_relative_entropy_route_on_rank_deficient(self):
        rho = random_pure(3, seed=15).as_density()
        assert relative_entropy_coherence(rho) == pytest.approx(
            coherence_f_hat(rho, neg_log()).value, abs=1e-10
        )


class TestBoundsAndFaithfulness:
    @pytest.mark.parametrize("spec", DECREASING_SPECS)
    def test_nonnegative_and_bounded(self, spec):
        f = lookup(spec)
        d = 3
        cap_plain = float(f(1.0 / d))
        cap_hat = -float(f(d))
        for trial in range(10):
            rho = random_density(d, d, seed=80 + trial)
            plain = coherence_f(rho, f).value
            hat = coherence_f_hat(rho, f).value
            assert -1e-10 <= plain <= cap_plain + 1e-10
            assert -1e-10 <= hat <= cap_hat + 1e-10

    @pytest.mark.parametrize("spec", DECREASING_SPECS)
    def test_zero_on_diagonal_states(self, spec):
        f = lookup(spec)
        rho = DensityMatrix.from_diagonal([0.5, 0.3, 0.2])
        assert coherence_f(rho, f).value == pytest.approx(0.0, abs=1e-10)
        assert coherence_f_hat(rho, f).value == pytest.approx(0.0, abs=1e-10)

    def test_positive_on_coherent_state(self):
        rho = plus_state()
        for spec in DECREASING_SPECS:
            assert coherence_f_hat(rho, lookup(spec)).value > 1e-3, spec


class TestPowerCoherence:
    @pytest.mark.parametrize("alpha", [0.3, 0.5, 1.5])
    def test_matches_generator_route(self, alpha):
        f = tsallis(alpha)
        for trial in range(5):
            rho = random_density(3, 3, seed=120 + trial)
            pc = power_coherence(rho, alpha)
            assert pc.plain == pytest.approx(coherence_f(rho, f).value, rel=1e-9, abs=1e-12)
            assert pc.hat == pytest.approx(
                coherence_f_hat(rho, f).value, rel=1e-9, abs=1e-12
            )

    @pytest.mark.parametrize("alpha", [0.3, 0.5, 1.5])
    @pytest.mark.parametrize("dim", [2, 3, 4])
    def test_scaling_identity(self, alpha, dim):
        for trial in range(5):
            rho = random_density(dim, dim, seed=140 + trial)
            pc = power_coherence(rho, alpha)
            assert pc.plain == pytest.approx(
                dim ** (alpha - 1.0) * pc.hat, rel=1e-12, abs=1e-15
            )

    def test_handles_rank_deficient_states(self):
        rho = random_pure(3, seed=33).as_density()
        pc = power_coherence(rho, 1.5)
        assert pc.hat == pytest.approx(coherence_f_hat(rho, tsallis(1.5)).value, abs=1e-10)

    @pytest.mark.parametrize("alpha", [0.0, 1.0, 2.0, -0.5, 2.5])
    def test_rejects_out_of_range(self, alpha):
        with pytest.raises(ParamOutOfRange):
            power_coherence(DensityMatrix.maximally_mixed(2), alpha)


class TestPredicatesAndDistance:
    def test_is_incoherent_on_diagonal(self):
        assert is_incoherent(DensityMatrix.from_diagonal([0.6, 0.4]))

    def test_is_incoherent_rejects_plus(self):
        assert not is_incoherent(plus_state())

    def test_is_incoherent_tolerance(self):
        mat = np.diag([0.6, 0.4]).astype(complex)
        mat[0, 1] = mat[1, 0] = 1e-12
        assert is_incoherent(DensityMatrix(mat))
        assert not is_incoherent(DensityMatrix(mat), tol=1e-13)

    def test_dephasing_distance_plus(self):
        assert dephasing_distance(plus_state()) == pytest.approx(1.0, abs=1e-12)

    def test_dephasing_distance_diagonal(self):
        assert dephasing_distance(DensityMatrix.from_diagonal([0.6, 0.4])) == pytest.approx(
            0.0, abs=1e-15
        )


class TestMaxCoherentState:
    def test_amplitudes_uniform(self):
        psi = max_coherent_state(4)
        np.testing.assert_allclose(psi.amplitudes, np.full(4, 0.5))

    def test_rejects_bad_dimension(self):
        with pytest.raises(ParamOutOfRange):
            max_coherent_state(0)

    @pytest.mark.parametrize("spec", DECREASING_SPECS)
    def test_maximizes_hat_coherence(self, spec):
        f = lookup(spec)
        d = 3
        cap = coherence_f_hat(max_coherent_state(d).as_density(), f).value
        for trial in range(10):
            rho = random_density(d, d, seed=200 + trial)
            assert coherence_f_hat(rho, f).value <= cap + 1e-10
