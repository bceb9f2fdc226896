"""Markovianity classification of dephasing-channel blends.

Each reduced decay rate is monotone once it turns negative, so a blend is CP
divisible exactly when all three rates are still nonnegative in the p -> 1/2
limit.  Classification therefore reduces to the sign pattern of the three
limiting rates, with weight-zero edges handled in exact extended-real
arithmetic rather than by epsilon nudging.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import AXES, MixtureWeights
from .generator import three_mix_rates

#: a limiting rate below this counts as negative (guards boundary rounding)
NEG_TOL = -1e-12

#: sign pattern of the three rate terms inside (gx, gy, gz)
_SIGNS = np.array([[-1, 1, 1], [1, -1, 1], [1, 1, -1]], dtype=float)

MARKOVIAN = "MARKOVIAN"
NONMARKOVIAN = "NONMARKOVIAN"


@dataclass(frozen=True)
class RegionLabel:
    """Verdict for one blend: divisible, or which rate turns negative."""

    tag: str
    region: str | None
    limit_rates: tuple

    @property
    def markovian(self) -> bool:
        return self.tag == MARKOVIAN


def limit_rates_array(weights: np.ndarray) -> np.ndarray:
    """Limiting reduced rates at p -> 1/2 for an (n, 3) array of weights.

    Each rate term tends to (1 - w)/w, which diverges as a weight goes to 0.
    Zero-weight terms are all the same divergent function of p, so their
    signed multiplicity decides the limit: positive multiplicity gives +inf,
    negative gives -inf, and an exact cancellation (two zero weights) leaves
    the finite remainder.  Returns an (n, 3) array that may contain +/-inf.
    """
    w = np.atleast_2d(np.asarray(weights, dtype=float))
    zero = w == 0.0
    g = np.zeros_like(w)
    np.divide(1.0 - w, w, out=g, where=~zero)
    finite = g @ _SIGNS.T
    coeff = zero.astype(float) @ _SIGNS.T
    return np.where(coeff > 0, np.inf, np.where(coeff < 0, -np.inf, finite))


def limit_rates(w: MixtureWeights) -> tuple:
    """Limiting reduced rates (x, y, z) at p -> 1/2; entries may be +/-inf."""
    gx, gy, gz = limit_rates_array(w.as_array())[0]
    return (float(gx), float(gy), float(gz))


def region_codes(weights: np.ndarray) -> np.ndarray:
    """Classify rows of an (n, 3) weight array; -1 Markovian, else axis index."""
    rates = limit_rates_array(weights)
    negative = rates < NEG_TOL
    codes = np.where(negative.any(axis=1), np.argmin(rates, axis=1), -1)
    return codes


def classify(w: MixtureWeights) -> RegionLabel:
    """Label a blend Markovian or non-Markovian with its region identity.

    The Markovian set is closed: a limiting rate that merely reaches zero
    never goes negative at finite p, so boundary points count as Markovian.
    """
    rates = limit_rates(w)
    negative = [g < NEG_TOL for g in rates]
    if not any(negative):
        return RegionLabel(MARKOVIAN, None, rates)
    region = AXES[negative.index(True)]
    return RegionLabel(NONMARKOVIAN, region, rates)


def default_scan_grid() -> np.ndarray:
    """Dense p grid for brute-force verdicts: uniform plus a tail toward 1/2.

    A rate that first turns negative only beyond the last uniform point would
    be missed by a uniform grid (about 0.06% of the simplex lies in that
    sliver), so geometrically spaced points approaching 1/2 are appended; the
    rates stay finite on all of them.
    """
    uniform = np.linspace(0.0005, 0.4995, 1000)
    tail = 0.5 - 5e-4 * 0.5 ** np.arange(1, 41)
    return np.concatenate([uniform, tail])


def rate_minima_over_grid(weights: np.ndarray, p_grid: np.ndarray | None = None) -> np.ndarray:
    """Per-axis minima of the reduced rates over a p grid, rows of (n, 3) weights."""
    if p_grid is None:
        p_grid = default_scan_grid()
    w = np.atleast_2d(np.asarray(weights, dtype=float))
    p = np.asarray(p_grid, dtype=float)
    mins = np.empty((w.shape[0], 3))
    # chunked so the (chunk, len(p), 3) intermediate stays small
    step = max(1, 4_000_000 // max(1, 3 * p.size))
    for lo in range(0, w.shape[0], step):
        u = 1.0 - w[lo : lo + step]  # (m, 3)
        terms = u[:, None, :] / (1.0 - 2.0 * u[:, None, :] * p[None, :, None])
        rates = terms @ _SIGNS.T  # (m, len(p), 3)
        mins[lo : lo + step] = rates.min(axis=1)
    return mins


def classify_by_rate_scan(w: MixtureWeights, p_grid: np.ndarray | None = None) -> RegionLabel:
    """Brute-force verdict: minimize the analytic rates over a dense p grid.

    Independent of the limiting-rate shortcut; `classify` must agree with
    this on every input.  The reported rates are the grid minima per axis.
    """
    mins = rate_minima_over_grid(w.as_array(), p_grid)[0]
    if not (mins < NEG_TOL).any():
        return RegionLabel(MARKOVIAN, None, tuple(mins))
    return RegionLabel(NONMARKOVIAN, AXES[int(np.argmin(mins))], tuple(mins))


def p_divisibility_check(w: MixtureWeights, p_grid) -> bool:
    """True when every pairwise rate sum is nonnegative across the grid.

    Holds for the whole simplex: the pairwise sums collapse to twice a single
    nonnegative rate term, so even a blend with one diverging negative rate
    stays positive divisible.
    """
    for p in np.asarray(p_grid, dtype=float):
        sums = three_mix_rates(w, float(p)).pairwise_sums()
        if min(sums) < NEG_TOL:
            return False
    return True
