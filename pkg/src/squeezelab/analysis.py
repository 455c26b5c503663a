"""Quantitative structure of the distributions: maxima, counting laws,
the squeezing transition, and cross-representation correspondences."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .special import hermite
from .squeezed_number import (SqueezedNumberState, momentum_density,
                              photon_distribution, position_density,
                              q_slice_imag)
from .tables import DistributionTable, TableMeta

__all__ = [
    "MaximaReport",
    "ScanError",
    "TransitionResult",
    "CorrespondenceRow",
    "SliceRatioReport",
    "find_maxima",
    "maxima_count_law",
    "position_density_table",
    "momentum_density_table",
    "q_slice_table",
    "momentum_zeros",
    "transition_scan",
    "qmax_to_nmax",
    "support_widening",
    "slice_proportionality",
]

DEFAULT_FLOOR = 1e-6  # suppress noise-level ripples deep in the tails


@dataclass(frozen=True)
class MaximaReport:
    """Strict local maxima of a distribution table."""

    positions: np.ndarray
    values: np.ndarray
    count: int


class ScanError(RuntimeError):
    """A parameter scan failed to bracket the feature it was looking for."""

    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = trace or []


def find_maxima(table: DistributionTable, floor: float = DEFAULT_FLOOR,
                refine: bool = False) -> MaximaReport:
    """Locate strict interior local maxima above ``floor`` of the global peak.

    Plateaus of exactly equal values count once, at their left edge.  For
    parity-gapped photon tables the comparison runs over same-parity
    neighbors only (otherwise every nonzero entry would be a "maximum"
    between two structural zeros), and a virtual zero is prepended below
    the lowest realized index, since probabilities below n = 0 vanish;
    that is what makes a peak at the first occupied index count.  With
    ``refine`` set, positions of single-point maxima on uniform grids are
    polished by a three-point parabolic fit.
    """
    if floor < 0:
        raise ValueError("floor must be nonnegative")
    if len(table) < 3:
        raise ValueError("need at least 3 table rows to detect maxima")
    parity = table.meta.parity
    if parity is not None:
        sel = np.flatnonzero(np.asarray(table.coords).astype(int) % 2 == parity)
        xs = table.coords[sel]
        vals = np.concatenate([[0.0], table.probs[sel]])
        offset = 1
    else:
        xs = table.coords
        vals = table.probs
        offset = 0
    thr = floor * table.probs.max()
    positions, values = [], []
    n = len(vals)
    i = 1  # vals[0] is a real left endpoint or the virtual zero; never a maximum
    while i < n - 1:
        j = i
        while j + 1 < n and vals[j + 1] == vals[i]:
            j += 1
        if j == n - 1:
            break  # plateau runs into the right edge
        if vals[i - 1] < vals[i] and vals[i] > vals[j + 1] and vals[i] > thr:
            k = i - offset
            x = xs[k]
            v = vals[i]
            if refine and j == i and 0 < k < len(xs) - 1:
                a, b, c = vals[i - 1], vals[i], vals[j + 1]
                denom = a - 2.0 * b + c
                if denom != 0.0:
                    shift = (a - c) / (2.0 * denom)
                    step = xs[k + 1] - xs[k]
                    x = x + shift * step
                    v = b - 0.25 * (a - c) * shift
            positions.append(x)
            values.append(v)
        i = j + 1
    return MaximaReport(np.asarray(positions), np.asarray(values), len(positions))


def maxima_count_law(m: int, r: float | None = None) -> int:
    """Stabilized number of photon-distribution maxima: m/2 + 1 for even m,
    (m+1)/2 for odd m.  Holds once r is large enough that all oscillation
    maxima have emerged; the caller owns that precondition (r is accepted
    only to document it).
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    return m // 2 + 1 if m % 2 == 0 else (m + 1) // 2


def _uniform_grid(half_width: float, step: float) -> np.ndarray:
    n = int(math.ceil(half_width / step))
    return step * np.arange(-n, n + 1)


def position_density_table(state: SqueezedNumberState, half_width: float | None = None,
                           step: float | None = None) -> DistributionTable:
    """|<q|m,r>|^2 sampled on a symmetric uniform grid (step 0.01 e^{-r})."""
    scale = math.exp(-state.r)
    half_width = half_width or scale * (math.sqrt(2.0 * state.m + 1.0) + 4.0)
    step = step or 0.01 * scale
    q = _uniform_grid(half_width, step)
    meta = TableMeta(state=(state.m, state.r), representation="position",
                     truncation={"step": step, "half_width": half_width})
    return DistributionTable(q, position_density(q, state), meta)


def momentum_density_table(state: SqueezedNumberState, half_width: float | None = None,
                           step: float | None = None) -> DistributionTable:
    """|<p|m,r>|^2 sampled on a symmetric uniform grid (step 0.01 e^r)."""
    scale = math.exp(state.r)
    half_width = half_width or scale * (math.sqrt(2.0 * state.m + 1.0) + 4.0)
    step = step or 0.01 * scale
    p = _uniform_grid(half_width, step)
    meta = TableMeta(state=(state.m, state.r), representation="momentum",
                     truncation={"step": step, "half_width": half_width})
    return DistributionTable(p, momentum_density(p, state), meta)


def q_slice_table(state: SqueezedNumberState, half_width: float | None = None,
                  step: float | None = None) -> DistributionTable:
    """Husimi Q along the imaginary axis on a symmetric uniform grid."""
    scale = math.exp(state.r)
    half_width = half_width or scale * math.sqrt(state.m + 0.5) + 2.0
    step = step or 0.01 * scale
    y = _uniform_grid(half_width, step)
    meta = TableMeta(state=(state.m, state.r), representation="qslice",
                     truncation={"step": step, "half_width": half_width})
    return DistributionTable(y, q_slice_imag(y, state), meta)


def momentum_zeros(state: SqueezedNumberState, tol: float = 1e-12) -> np.ndarray:
    """Zeros of the momentum density, by sign bisection of the amplitude.

    The density vanishes exactly where H_m(e^{-r} p) does; the recurrence
    reports exact signs, so each root is bracketed on a scan grid and then
    bisected to ``tol`` in the Hermite argument.
    """
    m, r = state.m, state.r
    if m == 0:
        return np.array([])
    lim = math.sqrt(2.0 * m + 1.0) + 1.0
    grid = np.linspace(-lim, lim, 40 * m + 41)
    signs = [hermite(m, float(x)).sign for x in grid]
    roots = []
    for i in range(len(grid) - 1):
        a, b = grid[i], grid[i + 1]
        sa, sb = signs[i], signs[i + 1]
        if sa == 0:
            roots.append(a)
            continue
        if sb == 0 or sa * sb > 0:
            continue
        while b - a > tol:
            c = 0.5 * (a + b)
            sc = hermite(m, c).sign
            if sc == 0:
                a = b = c
                break
            if sc == sa:
                a = c
            else:
                b = c
        roots.append(0.5 * (a + b))
    if signs[-1] == 0:
        roots.append(grid[-1])
    return math.exp(r) * np.asarray(roots)


@dataclass(frozen=True)
class TransitionResult:
    """Outcome of a squeezing scan for the onset of the full oscillation set."""

    r_star: float
    target: int
    trace: list = field(default_factory=list)  # (r, prominent-maxima count)


def transition_scan(m: int, r_lo: float, r_hi: float, step: float,
                    prominence: float = 0.1) -> TransitionResult:
    """Smallest scanned r at which the Q slice holds its full set of m + 1
    prominent maxima for the rest of the range.

    A maximum counts as prominent when it reaches ``prominence`` of the
    slice peak; 0.1 is the calibrated default for which the onset tracks
    the half-log law in m.  Raises :class:`ScanError` (with the count
    trace attached) when the count never stabilizes in range, or when it
    is already stable at r_lo so the transition lies below the window.
    """
    if m < 2:
        raise ValueError("transition scan needs m >= 2")
    if not (r_lo < r_hi and step > 0):
        raise ValueError("need r_lo < r_hi and a positive step")
    target = m + 1
    rs = [r_lo + i * step for i in range(int(math.floor((r_hi - r_lo) / step)) + 1)]
    counts = []
    for r in rs:
        table = q_slice_table(SqueezedNumberState(m, r))
        counts.append(find_maxima(table, floor=prominence).count)
    trace = list(zip(rs, counts))
    start = None
    for i in range(len(counts)):
        if all(c == target for c in counts[i:]):
            start = i
            break
    if start is None:
        raise ScanError(
            f"prominent-maxima count never stabilizes at {target} on "
            f"[{r_lo}, {r_hi}]", trace)
    if start == 0:
        raise ScanError(
            f"count is already {target} at r_lo={r_lo}; the transition lies "
            "below the scanned range", trace)
    return TransitionResult(r_star=rs[start], target=target, trace=trace)


@dataclass(frozen=True)
class CorrespondenceRow:
    """One matched pair between a Husimi-slice maximum and a photon maximum."""

    alpha_sq: float       # |alpha_max|^2 at the Q maximum
    n_max: int            # nearest photon-distribution maximum
    mismatch: float       # |n_max - alpha_sq| / n_max
    mismatch_alpha: float  # |n_max - alpha_sq| / alpha_sq


def qmax_to_nmax(state: SqueezedNumberState, tail_eps: float = 1e-10,
                 floor: float = DEFAULT_FLOOR) -> list[CorrespondenceRow]:
    """Pair each positive-axis Q maximum with |alpha| >= 1 to the closest
    photon-distribution maximum; returns an empty list when no slice
    maximum qualifies."""
    qrep = find_maxima(q_slice_table(state), floor=floor, refine=True)
    ys = [float(y) for y in qrep.positions if y >= 1.0]
    if not ys:
        return []
    prep = find_maxima(photon_distribution(state, tail_eps))
    if prep.count == 0:
        return []
    nmaxima = np.asarray(prep.positions, dtype=float)
    rows = []
    for y in ys:
        a2 = y * y
        n = int(nmaxima[np.argmin(np.abs(nmaxima - a2))])
        rows.append(CorrespondenceRow(
            alpha_sq=a2, n_max=n,
            mismatch=abs(n - a2) / n,
            mismatch_alpha=abs(n - a2) / a2))
    return rows


def support_widening(m: int, r_values, tail_eps: float = 1e-10) -> list[tuple[float, int]]:
    """Position of the last photon-distribution maximum for each r."""
    rows = []
    for r in r_values:
        rep = find_maxima(photon_distribution(SqueezedNumberState(m, r), tail_eps))
        if rep.count == 0:
            raise ScanError(f"no maxima found for m={m}, r={r}")
        rows.append((float(r), int(rep.positions[-1])))
    return rows


@dataclass(frozen=True)
class SliceRatioReport:
    """Ratio statistics of the Husimi slice against the momentum density."""

    scaling: str          # 'direct' evaluates Q(i sqrt(2) p); 'rescaled' Q(i p / sqrt(2))
    window_floor: float
    n_points: int
    ratio_min: float
    ratio_max: float
    variation: float      # (max - min) / max over the window


def slice_proportionality(state: SqueezedNumberState, window_floor: float = 1e-3,
                          scaling: str = "direct", step: float | None = None) -> SliceRatioReport:
    """Measure how far the Husimi slice is from a constant multiple of the
    momentum density.

    The window is where the momentum density exceeds ``window_floor`` of
    its peak.  'direct' uses the coordinate map alpha = i sqrt(2) p;
    'rescaled' uses alpha = i p / sqrt(2), which matches the Gaussian
    envelopes and oscillation zeros up to O(e^{-4r}) and is the map under
    which the two curves actually track each other.
    """
    if scaling not in ("direct", "rescaled"):
        raise ValueError("scaling must be 'direct' or 'rescaled'")
    m, r = state.m, state.r
    step = step or 0.01 * math.exp(r)
    p_max = math.exp(r) * (math.sqrt(2.0 * m + 1.0) + 4.0)
    p = step * np.arange(0, int(p_max / step) + 1)
    dens = momentum_density(p, state)
    mask = dens > window_floor * dens.max()
    pw = p[mask]
    y = math.sqrt(2.0) * pw if scaling == "direct" else pw / math.sqrt(2.0)
    ratio = q_slice_imag(y, state) / dens[mask]
    rmin, rmax = float(ratio.min()), float(ratio.max())
    return SliceRatioReport(
        scaling=scaling, window_floor=window_floor, n_points=int(mask.sum()),
        ratio_min=rmin, ratio_max=rmax,
        variation=(rmax - rmin) / rmax if rmax > 0 else math.inf)
