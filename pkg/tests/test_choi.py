import numpy as np
import pytest

from pauli_simplex.channels import two_mix_eigenvalues
from pauli_simplex.choi import (
    ChoiMatrix,
    a_matrix,
    a_matrix_choi,
    choi_eigenvalues,
    choi_matrix,
    cp_ratio_bounds,
    intermediate_ratios,
    is_cp,
    rhp_witness,
    sweep_for_ncp,
)

# exact spectrum bottom of the (a, q, p) = (0.1, 0.45, 0.4) intermediate map:
# ratios are (1/2, 91/92, 19/28) and the smallest eigenvalue is -27/322
WORKED_MIN_EIG = -27.0 / 322.0


def random_aqp(count, seed=0):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        a = rng.uniform(0.0, 1.0)
        p = rng.uniform(0.0, 0.49)
        q = rng.uniform(p, 0.499)
        out.append((a, q, p))
    return out


class TestIntermediateRatios:
    def test_identity_when_times_coincide(self):
        assert intermediate_ratios(0.3, 0.2, 0.2) == (1.0, 1.0, 1.0)

    def test_full_map_from_time_zero(self):
        a, q = 0.3, 0.2
        x1, x2, x3 = intermediate_ratios(a, q, 0.0)
        assert x1 == pytest.approx(1 - 2 * q, abs=1e-15)
        assert x2 == pytest.approx(1 - 2 * a * q, abs=1e-15)
        assert x3 == pytest.approx(1 - 2 * (1 - a) * q, abs=1e-15)

    def test_worked_point(self):
        x1, x2, x3 = intermediate_ratios(0.1, 0.45, 0.4)
        assert x1 == pytest.approx(0.5, abs=1e-15)
        assert x2 == pytest.approx(91.0 / 92.0, abs=1e-15)
        assert x3 == pytest.approx(19.0 / 28.0, abs=1e-15)

    def test_quotient_of_blend_eigenvalues(self):
        for a, q, p in random_aqp(50, seed=3):
            ratios = np.array(intermediate_ratios(a, q, p))
            quotient = two_mix_eigenvalues(a, q).as_array() / two_mix_eigenvalues(
                a, p
            ).as_array()
            np.testing.assert_allclose(ratios, quotient, rtol=1e-13)

    def test_ratios_in_unit_interval(self):
        for a, q, p in random_aqp(100, seed=5):
            assert all(0.0 < x <= 1.0 for x in intermediate_ratios(a, q, p))

    def test_rejects_backward_map(self):
        with pytest.raises(ValueError, match="forward"):
            intermediate_ratios(0.1, 0.3, 0.4)


class TestChoiMatrix:
    def test_identity_map(self):
        choi = choi_matrix(1.0, 1.0, 1.0)
        np.testing.assert_allclose(
            np.sort(choi.eigenvalues()), [0.0, 0.0, 0.0, 2.0], atol=1e-14
        )

    def test_trace_is_two_exactly(self):
        for a, q, p in random_aqp(50, seed=9):
            choi = choi_matrix(*intermediate_ratios(a, q, p))
            assert np.trace(choi.matrix).real == 2.0

    def test_antidiagonal_structure(self):
        choi = choi_matrix(0.5, 0.7, 0.9).matrix
        mask = np.zeros((4, 4), dtype=bool)
        for i in range(4):
            mask[i, i] = mask[i, 3 - i] = True
        assert np.abs(choi[~mask]).max() == 0.0

    def test_worked_example_minimum_eigenvalue(self):
        choi = choi_matrix(*intermediate_ratios(0.1, 0.45, 0.4))
        assert choi.min_eigenvalue() == pytest.approx(WORKED_MIN_EIG, abs=1e-13)
        assert choi.min_eigenvalue() == pytest.approx(-0.0839, abs=5e-4)

    def test_closed_form_spectrum(self):
        for a, q, p in random_aqp(1000, seed=13):
            ratios = intermediate_ratios(a, q, p)
            numeric = np.sort(choi_matrix(*ratios).eigenvalues())
            closed = choi_eigenvalues(*ratios)
            assert np.abs(numeric - closed).max() < 1e-10

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            ChoiMatrix(np.eye(2, dtype=complex), (1.0, 1.0, 1.0))


class TestCompletePositivity:
    def test_identity_is_cp(self):
        assert is_cp(choi_matrix(1.0, 1.0, 1.0))

    def test_worked_example_is_not_cp(self):
        assert not is_cp(choi_matrix(*intermediate_ratios(0.1, 0.45, 0.4)))

    def test_full_map_always_cp(self):
        for a in np.linspace(0.0, 1.0, 50):
            for p in np.linspace(0.0, 0.49, 50):
                choi = choi_matrix(*intermediate_ratios(float(a), float(p), 0.0))
                assert choi.min_eigenvalue() >= -1e-12

    def test_ratio_bounds_match_spectrum(self):
        rng = np.random.default_rng(21)
        for _ in range(500):
            x = rng.uniform(-1.0, 1.0, size=3)
            spectral = choi_eigenvalues(*x)[0] >= -1e-12
            assert spectral == cp_ratio_bounds(*x)

    def test_ratio_bounds_match_spectrum_on_intermediate_maps(self):
        for a, q, p in random_aqp(300, seed=22):
            ratios = intermediate_ratios(a, q, p)
            spectral = choi_eigenvalues(*ratios)[0] >= -1e-12
            assert spectral == cp_ratio_bounds(*ratios)


class TestWitness:
    def test_worked_example(self):
        report = rhp_witness(0.1, 0.45, 0.4)
        assert report.nonmarkovian
        assert report.min_eigenvalue == pytest.approx(-0.0839, abs=5e-4)

    def test_balanced_blend_always_witnessed(self):
        for q, p in [(0.2, 0.1), (0.3, 0.25), (0.45, 0.4), (0.49, 0.01)]:
            assert rhp_witness(0.5, q, p).nonmarkovian

    @pytest.mark.parametrize("a", [0.0, 1.0])
    def test_pure_channels_stay_cp(self, a):
        # semigroup composition: every intermediate map of a single channel
        # is itself a channel
        for q, p in [(0.2, 0.1), (0.45, 0.4), (0.3, 0.3)]:
            report = rhp_witness(a, q, p)
            assert not report.nonmarkovian
            assert report.min_eigenvalue >= -1e-15

    def test_sweep_finds_ncp_for_any_blend(self):
        rng = np.random.default_rng(33)
        for a in rng.uniform(0.001, 0.999, size=25):
            report = sweep_for_ncp(float(a))
            assert report.nonmarkovian
            assert report.min_eigenvalue < -1e-9


class TestTransferMatrixOracle:
    def test_transfer_matrix_at_time_zero_is_identity(self):
        np.testing.assert_allclose(a_matrix(0.4, 0.0), np.eye(4), atol=1e-15)

    def test_transfer_matrix_invertible(self):
        for a in [0.0, 0.3, 1.0]:
            for p in [0.1, 0.45, 0.499]:
                assert abs(np.linalg.det(a_matrix(a, p))) > 1e-12

    def test_matches_closed_form_on_worked_point(self):
        oracle = a_matrix_choi(0.1, 0.45, 0.4)
        closed = choi_matrix(*intermediate_ratios(0.1, 0.45, 0.4))
        assert np.abs(oracle.matrix - closed.matrix).max() < 1e-12
        assert oracle.min_eigenvalue() == pytest.approx(WORKED_MIN_EIG, abs=1e-12)

    def test_matches_closed_form_elsewhere(self):
        oracle = a_matrix_choi(0.7, 0.3, 0.1)
        closed = choi_matrix(*intermediate_ratios(0.7, 0.3, 0.1))
        assert np.abs(oracle.matrix - closed.matrix).max() < 1e-12

    def test_matches_closed_form_random(self):
        for a, q, p in random_aqp(200, seed=41):
            oracle = a_matrix_choi(a, q, p)
            closed = choi_matrix(*intermediate_ratios(a, q, p))
            assert np.abs(oracle.matrix - closed.matrix).max() < 1e-12
            np.testing.assert_allclose(oracle.ratios, closed.ratios, atol=1e-12)

    def test_coincident_times_give_identity_choi(self):
        oracle = a_matrix_choi(0.3, 0.2, 0.2)
        np.testing.assert_allclose(
            np.sort(oracle.eigenvalues()), [0.0, 0.0, 0.0, 2.0], atol=1e-14
        )
