"""Area-of-overlap approximation to the Husimi slice along the imaginary axis.

The phase-space band of the number state and the band of the probing
state overlap in two congruent patches whose amplitudes interfere, giving
P(y) = 4 A cos^2(phi).  In the squeezed coordinate yt = y e^{-r} the
construction is the standard WKB picture of a harmonic oscillator with
energy m + 1/2: it lives inside the classical boundary yt^2 < m + 1/2 and
diverges at the turning point, where the true slice stays finite.

The printed source this formula descends from contains an unresolved
symbol and unbalanced grouping in the phase; the reading implemented here
(phase written entirely in yt, action measured from the turning point) is
the one whose maxima line up with the exact slice, which is how it is
validated in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .squeezed_number import SqueezedNumberState, q_slice_imag

__all__ = [
    "OverlapParams",
    "ClassicallyForbiddenError",
    "classical_boundary",
    "area_weight",
    "interference_phase",
    "approx_p",
    "OverlapComparison",
    "overlap_comparison",
]


class ClassicallyForbiddenError(ValueError):
    """The slice point lies outside the region where the construction exists."""


@dataclass(frozen=True)
class OverlapParams:
    """Slice point of the approximation: state label (m, r) and y with alpha = i y."""

    m: int
    r: float
    y: float

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("photon index must be nonnegative")

    def depth(self) -> float:
        """m + 1/2 - y^2 e^{-2r}; positive inside the classical region."""
        return self.m + 0.5 - self.y * self.y * math.exp(-2.0 * self.r)


def classical_boundary(m: int, r: float) -> float:
    """Largest |y| for which the overlap construction exists: e^r sqrt(m + 1/2)."""
    return math.exp(r) * math.sqrt(m + 0.5)


def _require_valid(p: OverlapParams) -> float:
    d = p.depth()
    if d <= 0.0:
        raise ClassicallyForbiddenError(
            f"y={p.y} is classically forbidden for m={p.m}, r={p.r}; "
            "the area-of-overlap approximation does not exist there")
    return d


def area_weight(p: OverlapParams) -> float:
    """Single-patch overlap weight A = e^{-2 d / e^{2r}} / sqrt(2 pi d),
    with d = m + 1/2 - y^2/e^{2r}."""
    d = _require_valid(p)
    return math.exp(-2.0 * d * math.exp(-2.0 * p.r)) / math.sqrt(2.0 * math.pi * d)


def interference_phase(p: OverlapParams) -> float:
    """Relative phase of the two overlap patches.

    phi = (m + 1/2) arctan(sqrt(d)/|yt|) - |yt| sqrt(d) - pi/4 with
    yt = y e^{-r} and d = m + 1/2 - yt^2.  At y = 0 the arctangent limit
    gives phi = (m + 1/2) pi/2 - pi/4; at the boundary both non-constant
    terms vanish and phi -> -pi/4.
    """
    d = _require_valid(p)
    yt = abs(p.y) * math.exp(-p.r)
    if yt == 0.0:
        return (p.m + 0.5) * (math.pi / 2.0) - math.pi / 4.0
    return ((p.m + 0.5) * math.atan(math.sqrt(d) / yt)
            - yt * math.sqrt(d)
            - math.pi / 4.0)


def approx_p(p: OverlapParams) -> float:
    """Interfering-patches probability 4 A cos^2(phi), unnormalized.

    Shapes are meaningful, absolute scale is not; comparisons against the
    exact slice fit one global scale factor first.
    """
    return 4.0 * area_weight(p) * math.cos(interference_phase(p)) ** 2


@dataclass(frozen=True)
class OverlapComparison:
    """Side-by-side of the approximation and the exact Husimi slice."""

    y: np.ndarray
    approx: np.ndarray          # raw 4 A cos^2(phi)
    exact: np.ndarray           # Q(i y)
    scale: float                # least-squares factor mapping approx onto exact
    approx_maxima: np.ndarray   # interior maxima of the approximation
    exact_maxima: np.ndarray    # exact-slice maxima on the same window
    max_offset: float           # worst |approx maximum - nearest exact maximum|
    edge_ratio: float           # scaled approx / exact at 95% of the boundary
    diverges_at_edge: bool


def _interior_maxima(y: np.ndarray, v: np.ndarray, floor: float = 1e-6) -> np.ndarray:
    thr = floor * v.max()
    out = []
    step = y[1] - y[0]
    for i in range(1, len(y) - 1):
        if v[i] > v[i - 1] and v[i] > v[i + 1] and v[i] > thr:
            denom = v[i - 1] - 2.0 * v[i] + v[i + 1]
            shift = 0.0 if denom == 0.0 else (v[i - 1] - v[i + 1]) / (2.0 * denom)
            out.append(y[i] + shift * step)
    return np.array(out)


def overlap_comparison(m: int, r: float, n_points: int = 4000,
                       interior_fraction: float = 0.8) -> OverlapComparison:
    """Evaluate both curves on (0, boundary) and compare their structure.

    Maxima are matched on the interior window |y| < interior_fraction of
    the classical boundary, where the approximation is meaningful; the
    edge ratio documents how it blows up near the turning point.
    """
    bound = classical_boundary(m, r)
    y = np.linspace(0.0, bound, n_points + 2)[1:-1]
    approx = np.array([approx_p(OverlapParams(m, r, v)) for v in y])
    exact = q_slice_imag(y, SqueezedNumberState(m, r))
    interior = y < interior_fraction * bound
    denom = float(approx[interior] @ approx[interior])
    scale = float(approx[interior] @ exact[interior]) / denom if denom > 0 else 0.0
    am = _interior_maxima(y[interior], approx[interior])
    em = _interior_maxima(y[interior], exact[interior])
    if len(am) and len(em):
        max_offset = max(float(np.min(np.abs(em - a))) for a in am)
    else:
        max_offset = math.inf
    i95 = int(np.searchsorted(y, 0.95 * bound))
    i95 = min(i95, len(y) - 1)
    edge_ratio = float(scale * approx[i95] / exact[i95]) if exact[i95] > 0 else math.inf
    return OverlapComparison(
        y=y, approx=approx, exact=exact, scale=scale,
        approx_maxima=am, exact_maxima=em, max_offset=max_offset,
        edge_ratio=edge_ratio, diverges_at_edge=bool(edge_ratio > 1.5))
