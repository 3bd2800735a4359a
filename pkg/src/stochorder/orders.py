"""Decision procedures for the usual stochastic order: DKW-banded empirical
comparison, an exact grid-convolution oracle for weighted sums of
independent nonnegative variables, and crossing-count analysis of CDF
differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np
from scipy import integrate, optimize, signal

from .errors import NumericError, ParameterError
from .distributions import DensitySpec, Dist
from .majorization import VectorLike, as_weight_vector

DEFAULT_EXACT_TOL = 1e-6
REFINE_TOL = 1e-7
MAX_LEVELS = 8
INITIAL_GRID = 4096
TAIL_TOL = 1e-9


class Relation(Enum):
    A_DOMINATES = "a_dominates"      # F_A <= F_B: the A-sum is st-larger
    B_DOMINATES = "b_dominates"
    CROSSING = "crossing"
    INCONCLUSIVE = "inconclusive"


@dataclass
class OrderVerdict:
    relation: Relation
    max_pos_dev: float               # max of F_A - F_B
    max_neg_dev: float               # max of F_B - F_A
    band: float
    crossing_count: Optional[int] = None
    meta: dict = field(default_factory=dict)

    def swapped(self) -> "OrderVerdict":
        rel = {
            Relation.A_DOMINATES: Relation.B_DOMINATES,
            Relation.B_DOMINATES: Relation.A_DOMINATES,
        }.get(self.relation, self.relation)
        return OrderVerdict(
            rel, self.max_neg_dev, self.max_pos_dev, self.band,
            self.crossing_count, dict(self.meta),
        )


@dataclass(frozen=True)
class NumericCDF:
    """CDF tabulated on an increasing grid.

    ``kind`` is "step" (right-continuous, e.g. an ECDF) or "linear"
    (continuous distribution tabulated pointwise). ``tail_tol`` records how
    much upper-tail mass the construction may have truncated.
    """

    grid: np.ndarray
    values: np.ndarray
    kind: str = "linear"
    tail_tol: float = 0.0
    meta: str = ""

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if g.ndim != 1 or g.shape != v.shape or len(g) < 1:
            raise ParameterError("grid and values must be equal-length 1-D arrays")
        if np.any(np.diff(g) <= 0):
            raise ParameterError("grid must be strictly increasing")
        if np.any(np.diff(v) < -1e-12) or v[0] < -1e-12 or v[-1] > 1 + 1e-12:
            raise ParameterError("values must be a nondecreasing CDF table")
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", np.clip(v, 0.0, 1.0))

    def evaluate(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.kind == "step":
            idx = np.searchsorted(self.grid, x, side="right")
            padded = np.concatenate([[0.0], self.values])
            return padded[idx]
        return np.interp(x, self.grid, self.values, left=0.0, right=float(self.values[-1]))

    def to_csv(self, fp) -> None:
        """Two-column CSV (abscissa, value) for plotting."""
        own = isinstance(fp, str)
        f = open(fp, "w") if own else fp
        try:
            f.write("x,F\n")
            for x, v in zip(self.grid, self.values):
                f.write(f"{x!r},{v!r}\n")
        finally:
            if own:
                f.close()


def dkw_epsilon(n: int, delta: float) -> float:
    """Half-width of the distribution-free confidence band."""
    if not 0 < delta < 1:
        raise ParameterError("delta must lie in (0, 1)")
    return math.sqrt(math.log(2.0 / delta) / (2.0 * n))


def ecdf(samples: Sequence[float]) -> NumericCDF:
    """Right-continuous empirical CDF on the sorted sample grid."""
    arr = np.sort(np.asarray(samples, dtype=float))
    if arr.size == 0:
        raise ParameterError("ecdf needs at least one sample")
    grid, counts = np.unique(arr, return_counts=True)
    values = np.cumsum(counts) / arr.size
    return NumericCDF(grid, values, kind="step", meta=f"ecdf n={arr.size}")


def st_compare_empirical(
    samples_a: Sequence[float], samples_b: Sequence[float], delta: float = 0.01
) -> OrderVerdict:
    """Compare two samples in the usual stochastic order with a DKW band.

    A_DOMINATES means the A-sample's variable is stochastically larger
    (F_A <= F_B up to the band, with a beyond-band gap the other way).
    """
    fa = ecdf(samples_a)
    fb = ecdf(samples_b)
    band = dkw_epsilon(len(np.atleast_1d(samples_a)), delta) + dkw_epsilon(
        len(np.atleast_1d(samples_b)), delta
    )
    grid = np.union1d(fa.grid, fb.grid)
    d = fa.evaluate(grid) - fb.evaluate(grid)
    max_pos = float(np.max(d))
    max_neg = float(np.max(-d))
    relation = _relation_from_devs(max_pos, max_neg, band)
    return OrderVerdict(
        relation,
        max_pos,
        max_neg,
        band,
        meta={
            "n_a": int(np.atleast_1d(samples_a).size),
            "n_b": int(np.atleast_1d(samples_b).size),
            "delta": delta,
        },
    )


def _relation_from_devs(max_pos: float, max_neg: float, band: float) -> Relation:
    pos_sig = max_pos > band
    neg_sig = max_neg > band
    if pos_sig and neg_sig:
        return Relation.CROSSING
    if neg_sig and max_pos <= band:
        return Relation.A_DOMINATES
    if pos_sig and max_neg <= band:
        return Relation.B_DOMINATES
    return Relation.INCONCLUSIVE


def _upper_quantile(d: Dist, q: float) -> float:
    ppf = getattr(d, "ppf", None)
    if callable(ppf):
        return float(ppf(q))
    if isinstance(d, DensitySpec):
        if d.cdf is not None:
            lo, hi = d.support
            if d.cdf(hi) <= q:
                return hi
            return float(optimize.brentq(lambda t: d.cdf(t) - q, lo, hi))
        return d.support[1]
    raise ParameterError(f"cannot locate quantiles of {d!r}")


def _cell_masses(d: Dist, w: float, edges: np.ndarray) -> np.ndarray:
    """Probability of w*X falling in each grid cell."""
    x_edges = edges / w
    cdf = getattr(d, "cdf", None)
    if callable(cdf):
        vals = np.asarray(cdf(x_edges), dtype=float)
        return np.diff(vals)
    # midpoint rule on the density
    mids = 0.5 * (x_edges[:-1] + x_edges[1:])
    lo, hi = d.support
    f = np.array([float(d.pdf(x)) if lo < x < hi else 0.0 for x in mids])
    return f * np.diff(x_edges)


def convolve_weighted(
    dists: Sequence[Dist],
    weights: VectorLike,
    initial_grid: int = INITIAL_GRID,
    refine_tol: float = REFINE_TOL,
    max_levels: int = MAX_LEVELS,
    tail_tol: float = TAIL_TOL,
) -> NumericCDF:
    """CDF of ``sum_i w_i X_i`` by iterated grid convolution.

    Each component's cell masses are placed at cell midpoints; placing half
    of each atom's mass at its own abscissa makes the tabulated CDF a
    second-order approximation, and the grid step is halved until two
    successive levels agree to ``refine_tol`` in sup norm.
    """
    w = as_weight_vector(weights).as_array()
    if len(w) != len(dists):
        raise ParameterError("weights and dists lengths differ")
    if np.any(w < 0) or not np.any(w > 0):
        raise ParameterError("weights must be nonnegative with at least one positive")
    active = [(d, float(wi)) for d, wi in zip(dists, w) if wi > 0]
    for d, _ in active:
        lo = d.support[0] if isinstance(d, DensitySpec) else 0.0
        if lo < -1e-12:
            raise ParameterError("convolution oracle assumes nonnegative support")

    top = sum(wi * _upper_quantile(d, 1.0 - tail_tol) for d, wi in active)
    if not np.isfinite(top) or top <= 0:
        raise NumericError(f"cannot truncate support (T={top})")

    prev: NumericCDF | None = None
    m = initial_grid
    gap = math.inf
    for _ in range(max_levels + 1):
        cur = _convolve_level(active, top, m)
        if prev is not None:
            gap = float(
                np.max(np.abs(cur.evaluate(prev.grid) - prev.values))
            )
            if gap < refine_tol:
                return cur
        prev = cur
        m *= 2
    raise NumericError(
        f"convolution did not converge below {refine_tol} in {max_levels} "
        f"refinements (last gap {gap:.3g})"
    )


def _convolve_level(active, top: float, m: int) -> NumericCDF:
    n = len(active)
    h = top / m
    edges = np.linspace(0.0, top, m + 1)
    pmf = None
    for d, wi in active:
        comp = np.clip(_cell_masses(d, wi, edges), 0.0, None)
        if pmf is None:
            pmf = comp
        else:
            pmf = signal.fftconvolve(pmf, comp)[: m + n]
            np.clip(pmf, 0.0, None, out=pmf)
    assert pmf is not None
    pmf = pmf[: m + n]
    positions = (np.arange(len(pmf)) + 0.5 * n) * h
    values = np.cumsum(pmf) - 0.5 * pmf
    values = np.minimum.accumulate(np.minimum(values[::-1], 1.0))[::-1]
    values = np.maximum.accumulate(np.clip(values, 0.0, 1.0))
    mean = float(np.sum(positions * pmf))
    return NumericCDF(
        positions,
        values,
        kind="linear",
        tail_tol=len(active) * TAIL_TOL,
        meta=f"convolution grid m={m} h={h:.3g} mean~{mean:.6g}",
    )


def _common_grid(cdf_a: NumericCDF, cdf_b: NumericCDF) -> np.ndarray:
    return np.union1d(cdf_a.grid, cdf_b.grid)


def st_compare_exact(
    cdf_a: NumericCDF, cdf_b: NumericCDF, tol: float = DEFAULT_EXACT_TOL
) -> OrderVerdict:
    """Verdict from the sign pattern of F_A - F_B on the common grid."""
    grid = _common_grid(cdf_a, cdf_b)
    d = cdf_a.evaluate(grid) - cdf_b.evaluate(grid)
    max_pos = float(np.max(d))
    max_neg = float(np.max(-d))
    relation = _relation_from_devs(max_pos, max_neg, tol)
    return OrderVerdict(
        relation,
        max_pos,
        max_neg,
        band=tol,
        crossing_count=_count_sign_changes(d, tol),
        meta={"exact": True, "grid_points": int(len(grid))},
    )


def crossing_count(cdf_a: NumericCDF, cdf_b: NumericCDF, tol: float = DEFAULT_EXACT_TOL) -> int:
    """Sign changes of F_A - F_B after suppressing sub-tol excursions."""
    grid = _common_grid(cdf_a, cdf_b)
    d = cdf_a.evaluate(grid) - cdf_b.evaluate(grid)
    return _count_sign_changes(d, tol)


def _count_sign_changes(d: np.ndarray, tol: float) -> int:
    signs = np.sign(d[np.abs(d) > tol])
    if signs.size == 0:
        return 0
    return int(np.count_nonzero(np.diff(signs) != 0))


def quadrature_cdf(d: Dist, points: np.ndarray) -> NumericCDF:
    """Independent CDF oracle by piecewise adaptive quadrature of the pdf."""
    pts = np.sort(np.asarray(points, dtype=float))
    lo = d.support[0] if isinstance(d, DensitySpec) else 0.0
    vals = np.empty_like(pts)
    acc = 0.0
    prev = lo
    for i, t in enumerate(pts):
        if t > prev:
            seg, _ = integrate.quad(lambda x: float(d.pdf(x)), prev, t, limit=200)
            acc += seg
            prev = t
        vals[i] = min(acc, 1.0)
    vals = np.maximum.accumulate(vals)
    return NumericCDF(pts, vals, kind="linear", meta="quadrature")
