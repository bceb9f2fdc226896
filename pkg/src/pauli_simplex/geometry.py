"""Region geometry and measure on the simplex of dephasing-channel blends.

The non-Markovian set splits into three congruent lens-shaped regions, one
per axis, each hugging the simplex edge where that axis' own weight vanishes.
This module provides the closed-form region boundaries, the region measure by
adaptive quadrature and by seeded Monte Carlo, the equilateral-triangle
embedding used for figures, and a classified triangular scan grid.

Measures are taken uniform in the (a, b) parametrization of the simplex,
normalized so the whole simplex has measure 1.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channels import AXES, MixtureWeights, _require_finite
from .divisibility import (
    MARKOVIAN,
    NEG_TOL,
    NONMARKOVIAN,
    RegionLabel,
    limit_rates_array,
    region_codes,
)

#: radicand values in (-RADICAND_TOL, 0) are rounded up to 0 (band edge rounding)
RADICAND_TOL = 1e-12

#: vertices of the equilateral embedding, one per channel axis
_TRIANGLE = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3.0) / 2.0]])

#: traversal order turning a boundary parametrization into rows of one region
_REGION_ORDER = {"X": (1, 0, 2), "Y": (0, 1, 2), "Z": (0, 2, 1)}


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message: str, achieved: float):
        super().__init__(message)
        self.achieved = achieved


def band_edge(x: float) -> float:
    """Largest cross weight at which a rate still reaches zero at p = 1/2 - x.

    Closed form (2 - sqrt(4x^2 - 4x + 5)) / (2x - 1); equals sqrt(5) - 2 at
    x = 0 and decreases as x grows, so the negative-rate band is widest in
    the long-time limit.
    """
    x = _require_finite("x", x)
    if not 0.0 <= x < 0.5:
        raise ValueError(f"offset x={x} outside [0, 1/2)")
    return (2.0 - math.sqrt(4.0 * x * x - 4.0 * x + 5.0)) / (2.0 * x - 1.0)


def boundary_roots(b: float, x: float) -> tuple | None:
    """Roots (a_minus, a_plus) of the y rate at p = 1/2 - x, or None.

    Setting the y decay rate to zero at fixed cross weight b yields a
    quadratic in a; for b beyond band_edge(x) the discriminant is negative
    and the rate never reaches zero, so None is returned.  Inside the band,
    blends with a strictly between the roots have a negative y rate.
    """
    b = _require_finite("b", b)
    if not 0.0 <= b <= 1.0:
        raise ValueError(f"coordinate b={b} outside [0, 1]")
    x = _require_finite("x", x)
    if not 0.0 <= x < 0.5:
        raise ValueError(f"offset x={x} outside [0, 1/2)")
    p = 0.5 - x
    lead = 2.0 * p * (1.0 - p * (1.0 - b))
    mid = -(1.0 - b) * lead
    const = b * (1.0 - 2.0 * p + 2.0 * p * p * (1.0 - b))
    disc = mid * mid - 4.0 * lead * const
    if disc < 0.0:
        if disc < -RADICAND_TOL and b <= band_edge(x):
            raise ValueError(
                f"negative radicand {disc:.3e} inside the band at b={b}, x={x}"
            )
        if b > band_edge(x):
            return None
        disc = 0.0
    root = math.sqrt(disc)
    return ((-mid - root) / (2.0 * lead), (-mid + root) / (2.0 * lead))


@dataclass(frozen=True)
class BoundaryCurve:
    """Closed zero-rate curve of one region, traversed minus branch then plus.

    `samples` is an (m, 3) array of simplex points; `branch` marks each row
    with -1 or +1.  The two branches join where the band closes.
    """

    region: str
    samples: np.ndarray
    branch: np.ndarray


def boundary_curve(region: str, points: int) -> BoundaryCurve:
    """Sample the closed boundary of one non-Markovian region.

    `points` samples per branch; the minus branch runs from the simplex edge
    to the closing point of the band, the plus branch back.  Rows permute the
    canonical y-region parametrization onto the requested region.
    """
    if region not in AXES:
        raise ValueError(f"region must be one of {AXES}, got {region!r}")
    if points < 2:
        raise ValueError(f"need at least 2 points per branch, got {points}")
    edge = band_edge(0.0)
    bs = np.linspace(0.0, edge, points)
    lo = np.empty_like(bs)
    hi = np.empty_like(bs)
    for i, b in enumerate(bs):
        lo[i], hi[i] = boundary_roots(float(b), 0.0)
    own = np.concatenate([bs, bs[::-1]])
    a_coord = np.concatenate([lo, hi[::-1]])
    other = 1.0 - own - a_coord
    canonical = np.column_stack([a_coord, own, other])  # y-region layout
    samples = canonical[:, list(_REGION_ORDER[region])]
    branch = np.concatenate([np.full(points, -1), np.full(points, 1)])
    return BoundaryCurve(region, samples, branch)


def _adaptive_simpson(f, a: float, b: float, tol: float, max_depth: int = 60):
    """Recursive Simpson bisection; returns (value, error_estimate).

    Raises QuadratureError when an interval hits max_depth while its local
    error is still above budget.
    """
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        err = (left + right - whole) / 15.0
        if abs(err) <= tol:
            return left + right + err, abs(err)
        if depth >= max_depth:
            raise QuadratureError(
                f"quadrature stalled at depth {depth} with local error {abs(err):.3e}",
                achieved=abs(err),
            )
        lv, le = recurse(a, m, fa, flm, fm, left, tol / 2.0, depth + 1)
        rv, re = recurse(m, b, fm, frm, fb, right, tol / 2.0, depth + 1)
        return lv + rv, le + re

    return recurse(a, b, fa, fm, fb, whole, tol, 0)


def _band_width_integrand(b: float) -> float:
    poly = b**4 + 4.0 * b**3 - 2.0 * b**2 - 4.0 * b + 1.0
    return math.sqrt(max(poly, 0.0)) / (b + 1.0)


def _region_measure(tol: float) -> tuple:
    tol = _require_finite("tol", tol)
    if tol <= 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    value, err = _adaptive_simpson(_band_width_integrand, 0.0, band_edge(0.0), tol / 2.0)
    return 2.0 * value, 2.0 * err


def region_measure_quadrature(region: str = "Y", tol: float = 1e-8) -> float:
    """Measure of one non-Markovian region by adaptive Simpson quadrature.

    Integrates the band width over the cross weight up to band_edge(0) and
    doubles for the simplex normalization.  The three regions are congruent,
    so the region argument only labels the result.
    """
    if region not in AXES:
        raise ValueError(f"region must be one of {AXES}, got {region!r}")
    return _region_measure(tol)[0]


@dataclass(frozen=True)
class MeasureReport:
    """Per-region and aggregate measures with the estimator's error scale."""

    region_x: float
    region_y: float
    region_z: float
    total: float
    markovian: float
    method: str
    error: float
    samples: int | None = None
    seed: int | None = None

    def regions(self) -> tuple:
        return (self.region_x, self.region_y, self.region_z)


def total_measures(tol: float = 1e-8) -> MeasureReport:
    """Quadrature measures of all regions, their union, and the complement.

    The error field carries the achieved quadrature error estimate for the
    total (three times the per-region estimate).
    """
    region, err = _region_measure(tol)
    total = 3.0 * region
    return MeasureReport(
        region_x=region,
        region_y=region,
        region_z=region,
        total=total,
        markovian=1.0 - total,
        method="quadrature",
        error=3.0 * err,
    )


def sample_simplex(n: int, rng: np.random.Generator) -> np.ndarray:
    """n points uniform on the weight simplex, by normalized exponential gaps."""
    if n < 1:
        raise ValueError(f"need at least 1 sample, got {n}")
    e = rng.exponential(size=(n, 3))
    return e / e.sum(axis=1, keepdims=True)


def _binomial_se(phat: float, n: int) -> float:
    # a degenerate 0-or-1 estimate carries no spread information; report the
    # conservative worst-case binomial scale instead of a misleading zero
    var = phat * (1.0 - phat)
    if var == 0.0:
        var = 0.25
    return math.sqrt(var / n)


def monte_carlo_measures(n: int, seed: int, threads: int = 1) -> MeasureReport:
    """Estimate the region measures by classifying n uniform simplex samples.

    Fully determined by (n, seed): samples are drawn in fixed-size chunks
    from generators spawned off one seed sequence, so the result does not
    depend on the thread count.  The error field is the binomial standard
    error of the total non-Markovian fraction.
    """
    if n < 1:
        raise ValueError(f"need at least 1 sample, got {n}")
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    chunk = 1 << 18
    n_chunks = (n + chunk - 1) // chunk
    seeds = np.random.SeedSequence(seed).spawn(n_chunks)

    def count_chunk(i: int) -> np.ndarray:
        size = min(chunk, n - i * chunk)
        points = sample_simplex(size, np.random.default_rng(seeds[i]))
        codes = region_codes(points)
        return np.array([(codes == k).sum() for k in range(3)])

    if threads == 1 or n_chunks == 1:
        counts = sum(count_chunk(i) for i in range(n_chunks))
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = sum(pool.map(count_chunk, range(n_chunks)))

    fractions = counts / n
    total = float(fractions.sum())
    return MeasureReport(
        region_x=float(fractions[0]),
        region_y=float(fractions[1]),
        region_z=float(fractions[2]),
        total=total,
        markovian=1.0 - total,
        method="montecarlo",
        error=_binomial_se(total, n),
        samples=n,
        seed=seed,
    )


def to_pauli_neutral(w: MixtureWeights) -> tuple:
    """Embed weights into the plane with the simplex as an equilateral triangle.

    The three pure channels sit at (0,0), (1,0) and (1/2, sqrt(3)/2); the
    map is affine and invertible on the simplex.
    """
    u, v = w.as_array() @ _TRIANGLE
    return (float(u), float(v))


def to_pauli_neutral_array(weights: np.ndarray) -> np.ndarray:
    """Vectorized equilateral embedding of an (n, 3) weight array."""
    return np.asarray(weights, dtype=float) @ _TRIANGLE


@dataclass(frozen=True)
class GridPoint:
    weights: MixtureWeights
    label: RegionLabel
    uv: tuple


def grid_weights(n: int) -> np.ndarray:
    """Triangular lattice (i/n, j/n, (n-i-j)/n), rows lexicographic in (i, j)."""
    if n < 1:
        raise ValueError(f"grid resolution must be >= 1, got {n}")
    rows = [
        (i / n, j / n, (n - i - j) / n)
        for i in range(n + 1)
        for j in range(n - i + 1)
    ]
    return np.array(rows)


def scan_grid(n: int, threads: int = 1) -> list:
    """Classify and embed every point of the resolution-n triangular grid.

    Returns (n+1)(n+2)/2 GridPoint entries in lexicographic (i, j) order; the
    Markovian fraction of the grid converges to the Markovian measure.
    """
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    points = grid_weights(n)
    uv = to_pauli_neutral_array(points)
    if threads == 1:
        rates = limit_rates_array(points)
    else:
        chunks = np.array_split(points, threads * 4)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rates = np.concatenate(list(pool.map(limit_rates_array, chunks)))
    negative = rates < NEG_TOL
    out = []
    for k in range(points.shape[0]):
        w = MixtureWeights(*points[k])
        gammas = tuple(float(g) for g in rates[k])
        if negative[k].any():
            label = RegionLabel(NONMARKOVIAN, AXES[int(np.argmin(rates[k]))], gammas)
        else:
            label = RegionLabel(MARKOVIAN, None, gammas)
        out.append(GridPoint(w, label, (float(uv[k, 0]), float(uv[k, 1]))))
    return out
