import math

import numpy as np
import pytest

from pauli_simplex.channels import MixtureWeights
from pauli_simplex.divisibility import classify, limit_rates_array
from pauli_simplex.generator import three_mix_rates
from pauli_simplex.geometry import (
    QuadratureError,
    _adaptive_simpson,
    band_edge,
    boundary_curve,
    boundary_roots,
    grid_weights,
    monte_carlo_measures,
    region_measure_quadrature,
    sample_simplex,
    scan_grid,
    to_pauli_neutral,
    to_pauli_neutral_array,
    total_measures,
)

# band-width integral over the cross weight, evaluated to 20 digits with
# arbitrary-precision quadrature; the region measure is twice this
REGION_MEASURE_REF = 0.28980212068360561876


class TestBandEdge:
    def test_long_time_value(self):
        assert abs(band_edge(0.0) - (math.sqrt(5.0) - 2.0)) < 1e-15

    def test_decreasing(self):
        xs = np.linspace(0.0, 0.49, 100)
        vals = [band_edge(x) for x in xs]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            band_edge(0.5)


class TestBoundaryRoots:
    def test_edge_of_simplex(self):
        assert boundary_roots(0.0, 0.0) == (0.0, 1.0)

    def test_band_closes_at_edge_value(self):
        b = band_edge(0.0)
        lo, hi = boundary_roots(b, 0.0)
        assert lo == pytest.approx(hi, abs=1e-7)
        assert lo == pytest.approx(0.5 * (1.0 - b), abs=1e-7)
        assert lo == pytest.approx(0.38196601125, abs=1e-6)

    def test_outside_band(self):
        assert boundary_roots(0.5, 0.0) is None
        assert boundary_roots(band_edge(0.3) + 1e-6, 0.3) is None

    def test_roots_zero_the_limit_rate(self):
        for b in np.linspace(0.0, band_edge(0.0) * 0.999, 50):
            lo, hi = boundary_roots(float(b), 0.0)
            for a in (lo, hi):
                rates = limit_rates_array(np.array([[a, b, 1.0 - a - b]]))[0]
                assert abs(rates[1]) < 1e-9

    @pytest.mark.parametrize("x", [0.05, 0.15, 0.3, 0.45])
    def test_roots_zero_the_rate_at_earlier_times(self, x):
        p = 0.5 - x
        for b in np.linspace(0.001, band_edge(x) * 0.99, 20):
            lo, hi = boundary_roots(float(b), x)
            for a in (lo, hi):
                w = MixtureWeights(a, float(b), 1.0 - a - float(b))
                assert abs(three_mix_rates(w, p).gy) < 1e-9

    def test_width_tapers_to_zero(self):
        edge = band_edge(0.0)
        widths = []
        for delta in [1e-2, 1e-4, 1e-6, 1e-8]:
            lo, hi = boundary_roots(edge - delta, 0.0)
            widths.append(hi - lo)
        assert all(b < a for a, b in zip(widths, widths[1:]))
        assert widths[-1] < 1e-3

    def test_label_flips_across_curve(self):
        for b in np.linspace(0.01, band_edge(0.0) * 0.9, 50):
            lo, hi = boundary_roots(float(b), 0.0)
            inside_lo = classify(MixtureWeights(lo + 1e-4, b, 1.0 - b - lo - 1e-4))
            inside_hi = classify(MixtureWeights(hi - 1e-4, b, 1.0 - b - hi + 1e-4))
            outside_lo = classify(MixtureWeights(lo - 1e-4, b, 1.0 - b - lo + 1e-4))
            outside_hi = classify(MixtureWeights(hi + 1e-4, b, 1.0 - b - hi - 1e-4))
            assert inside_lo.region == "Y" and inside_hi.region == "Y"
            assert outside_lo.region != "Y" and outside_hi.region != "Y"

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            boundary_roots(-0.1, 0.0)
        with pytest.raises(ValueError):
            boundary_roots(0.1, 0.5)


class TestBoundaryCurve:
    def test_samples_inside_simplex_and_on_curve(self):
        curve = boundary_curve("Y", 200)
        assert curve.samples.shape == (400, 3)
        assert (curve.samples > -1e-12).all()
        np.testing.assert_allclose(curve.samples.sum(axis=1), 1.0, atol=1e-12)
        rates = limit_rates_array(curve.samples)
        assert np.abs(rates[:, 1]).max() < 1e-9

    def test_branches_join_at_band_edge(self):
        curve = boundary_curve("Z", 64)
        np.testing.assert_allclose(curve.samples[63], curve.samples[64], atol=1e-7)

    @pytest.mark.parametrize("region,column", [("X", 0), ("Y", 1), ("Z", 2)])
    def test_region_permutation(self, region, column):
        curve = boundary_curve(region, 50)
        rates = limit_rates_array(curve.samples)
        assert np.abs(rates[:, column]).max() < 1e-9
        # the own-axis weight is the small one, spanning the band
        assert curve.samples[:, column].max() == pytest.approx(band_edge(0.0), abs=1e-12)

    def test_rejects_bad_region(self):
        with pytest.raises(ValueError):
            boundary_curve("W", 10)


class TestQuadrature:
    def test_region_measure_reference(self):
        value = region_measure_quadrature("Y", tol=1e-8)
        assert abs(value - REGION_MEASURE_REF) < 1e-8

    def test_region_measure_against_rounded_value(self):
        assert abs(region_measure_quadrature("Y", 1e-6) - 0.2898) < 1e-3

    def test_total_report(self):
        report = total_measures(1e-8)
        assert report.total == 3.0 * report.region_y
        assert report.markovian == 1.0 - report.total
        assert abs(report.total - 0.867) < 3e-3
        assert abs(report.markovian - 0.133) < 3e-3
        assert report.method == "quadrature"

    def test_simpson_on_polynomial_is_exact(self):
        value, err = _adaptive_simpson(lambda t: t**3 - 2 * t, 0.0, 2.0, 1e-12)
        assert value == pytest.approx(0.0, abs=1e-12)

    def test_simpson_reports_failure(self):
        # a discontinuity cannot be resolved at this tolerance
        step = lambda t: 0.0 if t < 0.5 else 1.0
        with pytest.raises(QuadratureError):
            _adaptive_simpson(step, 0.0, 1.0, 1e-14, max_depth=8)

    def test_rejects_bad_tolerance(self):
        with pytest.raises(ValueError):
            region_measure_quadrature("Y", 0.0)


class TestMonteCarlo:
    def test_deterministic_given_seed(self):
        a = monte_carlo_measures(50_000, seed=7)
        b = monte_carlo_measures(50_000, seed=7)
        assert a == b

    def test_thread_count_does_not_change_result(self):
        a = monte_carlo_measures(600_000, seed=3, threads=1)
        b = monte_carlo_measures(600_000, seed=3, threads=4)
        assert a.regions() == b.regions()

    def test_matches_quadrature_within_three_sigma(self):
        report = monte_carlo_measures(200_000, seed=42)
        assert abs(report.total - 3 * REGION_MEASURE_REF) <= 3 * report.error

    def test_report_is_consistent(self):
        report = monte_carlo_measures(10_000, seed=1)
        assert report.total == pytest.approx(sum(report.regions()), abs=1e-15)
        assert report.markovian == pytest.approx(1.0 - report.total, abs=1e-15)
        assert report.samples == 10_000 and report.seed == 1

    def test_degenerate_sample_reports_wide_error(self):
        report = monte_carlo_measures(1, seed=1)
        assert report.total in (0.0, 1.0)
        assert report.error == 0.5

    def test_sampler_is_uniform_on_simplex(self):
        pts = sample_simplex(200_000, np.random.default_rng(0))
        assert pts.shape == (200_000, 3)
        np.testing.assert_allclose(pts.sum(axis=1), 1.0, atol=1e-12)
        # each coordinate of a uniform simplex point has mean 1/3, var 1/18
        np.testing.assert_allclose(pts.mean(axis=0), 1 / 3, atol=2e-3)
        np.testing.assert_allclose(pts.var(axis=0), 1 / 18, atol=2e-3)


class TestEmbedding:
    def test_vertices(self):
        assert to_pauli_neutral(MixtureWeights(1, 0, 0)) == (0.0, 0.0)
        assert to_pauli_neutral(MixtureWeights(0, 1, 0)) == (1.0, 0.0)
        u, v = to_pauli_neutral(MixtureWeights(0, 0, 1))
        assert (u, v) == (0.5, pytest.approx(math.sqrt(3) / 2, abs=1e-15))

    def test_centroid(self):
        u, v = to_pauli_neutral(MixtureWeights(1 / 3, 1 / 3, 1 / 3))
        assert u == pytest.approx(0.5, abs=1e-15)
        assert v == pytest.approx(math.sqrt(3) / 6, abs=1e-15)

    def test_edge_midpoint(self):
        u, v = to_pauli_neutral(MixtureWeights(0.0, 0.5, 0.5))
        assert u == pytest.approx(0.75, abs=1e-15)
        assert v == pytest.approx(math.sqrt(3) / 4, abs=1e-15)

    def test_affine_on_array(self):
        pts = sample_simplex(50, np.random.default_rng(5))
        batch = to_pauli_neutral_array(pts)
        for k in range(50):
            u, v = to_pauli_neutral(MixtureWeights(*pts[k]))
            np.testing.assert_allclose(batch[k], [u, v], atol=1e-15)


class TestScanGrid:
    def test_resolution_one_is_vertices(self):
        points = scan_grid(1)
        assert len(points) == 3
        assert all(gp.label.markovian for gp in points)

    def test_resolution_two(self):
        points = scan_grid(2)
        assert len(points) == 6
        markovian = [gp for gp in points if gp.label.markovian]
        assert len(markovian) == 3  # the vertices
        for gp in points:
            if not gp.label.markovian:
                assert 0.5 in (gp.weights.a, gp.weights.b, gp.weights.c)

    def test_row_order_lexicographic(self):
        pts = grid_weights(3)
        expected = [
            (i / 3, j / 3) for i in range(4) for j in range(4 - i)
        ]
        np.testing.assert_allclose(pts[:, :2], expected, atol=1e-15)

    def test_matches_scalar_classify(self):
        for gp in scan_grid(12):
            label = classify(gp.weights)
            assert gp.label.tag == label.tag
            assert gp.label.region == label.region

    def test_region_counts_symmetric(self):
        points = scan_grid(30)
        counts = {"X": 0, "Y": 0, "Z": 0}
        for gp in points:
            if gp.label.region:
                counts[gp.label.region] += 1
        assert counts["X"] == counts["Y"] == counts["Z"]

    def test_threads_do_not_change_labels(self):
        serial = scan_grid(25, threads=1)
        threaded = scan_grid(25, threads=3)
        assert [gp.label.region for gp in serial] == [gp.label.region for gp in threaded]

    def test_markovian_fraction_converges(self):
        points = scan_grid(150)
        fraction = sum(gp.label.markovian for gp in points) / len(points)
        assert abs(fraction - 0.1306) < 0.01
