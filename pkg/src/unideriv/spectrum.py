"""Eigenangle bookkeeping: sorted spectra, normalized gaps, wide triples.

Angles live on the circle, so gaps are cyclic: the wrap-around gap between
the largest and smallest angle is always included, and triple detection
wraps around index 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, DegenerateSpectrumError, InvalidDimensionError

# Two angles closer than this are considered a degenerate (multiple) eigenvalue.
DEDUP_TOL = 1e-12

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class EigenAngleSpectrum:
    """Sorted eigenangles theta_1 <= ... <= theta_N in [0, 2pi)."""

    angles: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.angles, dtype=float)
        if a.ndim != 1 or a.size < 1:
            raise InvalidDimensionError("spectrum needs at least one angle")
        if np.any(a < 0.0) or np.any(a >= TWO_PI):
            raise InvalidDimensionError("angles must lie in [0, 2pi)")
        if np.any(np.diff(a) < 0.0):
            raise InvalidDimensionError("angles must be sorted ascending")
        object.__setattr__(self, "angles", a)

    @property
    def N(self) -> int:
        return self.angles.size

    def points(self) -> np.ndarray:
        """The zeros e^{i theta_j} on the unit circle."""
        return np.exp(1j * self.angles)

    def rotated(self, phi: float) -> "EigenAngleSpectrum":
        return EigenAngleSpectrum(np.sort(np.mod(self.angles + phi, TWO_PI)))


@dataclass(frozen=True)
class NormalizedGapList:
    """Cyclic nearest-neighbor gaps in units of the mean spacing 2pi/N."""

    gaps: np.ndarray

    @property
    def N(self) -> int:
        return self.gaps.size


@dataclass(frozen=True)
class TripleConfiguration:
    """Three consecutive zeros whose two separating gaps both exceed 1."""

    center_index: int
    left_gap: float
    right_gap: float
    center_angle: float


@dataclass(frozen=True)
class TargetDisc:
    center: complex
    radius: float

    def contains(self, z: complex) -> bool:
        return abs(z - self.center) <= self.radius


def normalized_gaps(s: EigenAngleSpectrum) -> NormalizedGapList:
    """gap_j = N (theta_{j+1} - theta_j) / 2pi, including the wrap gap.

    The gaps telescope, so they sum to N exactly (up to roundoff).
    """
    if s.N < 2:
        raise InvalidDimensionError("need at least two angles for gaps")
    a = s.angles
    raw = np.diff(a, append=a[0] + TWO_PI)
    if np.any(raw[:-1] < DEDUP_TOL) or raw[-1] < DEDUP_TOL:
        raise DegenerateSpectrumError("duplicate eigenangles within dedup tolerance")
    return NormalizedGapList(raw * s.N / TWO_PI)


WIDE_GAP_TOL = 1e-9


def find_wide_triples(s: EigenAngleSpectrum) -> list[TripleConfiguration]:
    """All centers j with both adjacent cyclic gaps strictly larger than 1.

    Strictness is enforced with a 1e-9 margin so that spectra whose gaps
    are exactly average (equally spaced angles) never produce triples
    through floating-point noise in the normalization.
    """
    if s.N < 3:
        raise InvalidDimensionError("need at least three angles for triples")
    g = normalized_gaps(s).gaps
    # gap g[j] separates angle j from angle j+1 (cyclically); the gap to the
    # left of center j is g[j-1].
    left = np.roll(g, 1)
    idx = np.nonzero((left > 1.0 + WIDE_GAP_TOL) & (g > 1.0 + WIDE_GAP_TOL))[0]
    return [
        TripleConfiguration(
            center_index=int(j),
            left_gap=float(left[j]),
            right_gap=float(g[j]),
            center_angle=float(s.angles[j]),
        )
        for j in idx
    ]


def target_disc(t: TripleConfiguration, N: int) -> TargetDisc:
    """Disc of radius 2.5/N centered at (1 - 3/N) e^{i theta_2}."""
    center = (1.0 - 3.0 / N) * np.exp(1j * t.center_angle)
    return TargetDisc(center=complex(center), radius=2.5 / N)


def rotate_to_reference(z: complex, theta2: float) -> complex:
    """Rotate z so the triple's middle zero lands on the positive real axis."""
    return complex(z * np.exp(-1j * theta2))


def k_gaps(gaps: NormalizedGapList, k: int = 1) -> np.ndarray:
    """Normalized k-neighbor gaps: sums of k consecutive cyclic gaps."""
    if k < 1 or k >= gaps.N:
        raise InvalidDimensionError(f"k must be in [1, N), got {k}")
    g = gaps.gaps
    if k == 1:
        return g.copy()
    acc = g.copy()
    for shift in range(1, k):
        acc = acc + np.roll(g, -shift)
    return acc


def estimate_gap_pdf(samples, bins: int = 40, hi: float = 4.0):
    """Empirical PDF of normalized gaps as an area-1 histogram on [0, hi).

    Samples at or above `hi` are counted as overflow rather than binned.
    Returns (Histogram, overflow_count).
    """
    from .stats_io import histogram_pdf  # local import avoids a cycle

    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        raise DataError("no gap samples")
    edges = np.linspace(0.0, hi, bins + 1)
    in_range = samples[samples < hi]
    overflow = int(samples.size - in_range.size)
    return histogram_pdf(in_range, edges), overflow
