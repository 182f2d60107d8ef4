"""The three Monte Carlo experiments as reproducible, shardable pipelines.

Every matrix index gets its own substream of the master seed, so results
are independent of the shard count and a failed matrix can be resampled
without perturbing any other matrix's data.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, PrecisionError, UniderivError
from .linalg import SeedStream, eigenvalues_unitary, haar_unitary
from .polyroot import critical_points
from .spectrum import (
    EigenAngleSpectrum,
    TWO_PI,
    find_wide_triples,
    rotate_to_reference,
    target_disc,
)
from .stats_io import interior_extrema, smoothed

log = logging.getLogger(__name__)

# Resampled attempts for one matrix index use streams spaced this far apart.
ATTEMPT_STRIDE = 1 << 48

GAUSS_LUCAS_TOL = 1e-10


@dataclass(frozen=True)
class ExperimentConfig:
    N: int
    num_matrices: int
    master_seed: int
    shards: int = 1
    precision_bits: int = 53
    bins: int = 80


@dataclass
class RadialSampleSet:
    N: int
    values: np.ndarray


@dataclass
class SpecialZeroReport:
    num_matrices: int
    num_triples: int
    counts: dict                      # zeros-in-disc -> number of triples
    rotated_points: list              # complex, one per in-disc zero
    radial_values: list               # N (1 - |z'|), matching rotated_points
    snapshot: dict = field(default_factory=dict)

    def fractions(self) -> dict:
        total = max(self.num_triples, 1)
        return {k: v / total for k, v in sorted(self.counts.items())}


@dataclass
class PerturbationReport:
    base_spectrum: EigenAngleSpectrum
    trials: int
    points: list                      # (trial_index, complex)
    N: int


def derivative_zeros_for_matrix(N: int, master_seed: int, index: int,
                                max_attempts: int = 8):
    """Sample one Haar matrix and compute its derivative zeros.

    Returns (spectrum, dzeros, radial_values).  A per-matrix pipeline
    failure is logged and the matrix resampled from a fresh substream;
    matrices are never silently dropped.
    """
    last_err = None
    for attempt in range(max_attempts):
        stream = SeedStream(master_seed, index + attempt * ATTEMPT_STRIDE)
        try:
            u = haar_unitary(N, stream)
            spec = eigenvalues_unitary(u)
            zeros = spec.points()
            dz, _ = critical_points(zeros)
            if dz.size and float(np.max(np.abs(dz))) > 1.0 + GAUSS_LUCAS_TOL:
                raise PrecisionError("Gauss-Lucas bound violated")
            values = N * (1.0 - np.abs(dz))
            if np.any(values <= 0.0) or np.any(values >= N):
                raise PrecisionError("rescaled radius outside (0, N)")
            return spec, dz, values
        except UniderivError as err:
            last_err = err
            log.warning("matrix %d attempt %d failed (%s); resampling",
                        index, attempt, err)
    raise ConvergenceError(
        f"matrix {index}: {max_attempts} consecutive pipeline failures"
    ) from last_err


def _radial_chunk(args):
    master_seed, N, start, stop = args
    return [derivative_zeros_for_matrix(N, master_seed, i)[2]
            for i in range(start, stop)]


def _chunk_ranges(total: int, shards: int):
    edges = np.linspace(0, total, shards + 1).astype(int)
    return [(int(edges[i]), int(edges[i + 1])) for i in range(shards)]


def _map_chunks(worker, arglist, shards: int):
    if shards <= 1 or len(arglist) <= 1:
        return [worker(a) for a in arglist]
    with ProcessPoolExecutor(max_workers=min(shards, 8)) as pool:
        return list(pool.map(worker, arglist))


def run_radial(cfg: ExperimentConfig) -> RadialSampleSet:
    """Rescaled radii N(1 - |z'|) over the whole ensemble.

    Emits exactly num_matrices * (N - 1) values, ordered by matrix index,
    deterministically in (master_seed, N, num_matrices).
    """
    if cfg.N < 2:
        raise PrecisionError("run_radial needs N >= 2")
    ranges = _chunk_ranges(cfg.num_matrices, cfg.shards)
    args = [(cfg.master_seed, cfg.N, a, b) for a, b in ranges]
    chunks = _map_chunks(_radial_chunk, args, cfg.shards)
    values = np.concatenate([v for chunk in chunks for v in chunk]) \
        if cfg.num_matrices else np.empty(0)
    return RadialSampleSet(N=cfg.N, values=values)


def classify_regions(r: RadialSampleSet):
    """Fractions of rescaled radii in [0,2), [2,4), [4,N)."""
    v = r.values
    if v.size == 0:
        raise UniderivError("empty radial sample set")
    n = v.size
    f1 = float(np.count_nonzero(v < 2.0)) / n
    f2 = float(np.count_nonzero((v >= 2.0) & (v < 4.0))) / n
    return f1, f2, 1.0 - f1 - f2


# ---------------------------------------------------------------------------
# Experiment 2: perturbing the distant zeros
# ---------------------------------------------------------------------------

def run_perturbation(N: int = 40, trials: int = 250, seed: int = 0,
                     keep_interval=(0.0, np.pi / 2.0),
                     width: float | None = None) -> PerturbationReport:
    """Hold the first-quadrant zeros of one Haar draw fixed; jiggle the rest.

    Each trial shifts every non-kept eigenangle independently by a uniform
    amount in (-width, width), with width defaulting to the average gap
    2 pi / N.  Kept-versus-perturbed membership is decided once, from the
    base spectrum.
    """
    if width is None:
        width = TWO_PI / N
    base = eigenvalues_unitary(haar_unitary(N, SeedStream(seed, 0)))
    lo, hi = keep_interval
    keep_mask = (base.angles >= lo) & (base.angles < hi)
    kept = base.angles[keep_mask]
    movable = base.angles[~keep_mask]
    points = []
    for t in range(trials):
        rng = SeedStream(seed, 1 + t).generator()
        delta = rng.uniform(-width, width, size=movable.size) if width > 0 \
            else np.zeros(movable.size)
        shifted = np.mod(movable + delta, TWO_PI)
        angles = np.sort(np.concatenate([kept, shifted]))
        zeros = np.exp(1j * angles)
        dz, _ = critical_points(zeros)
        points.extend((t, complex(z)) for z in dz)
    return PerturbationReport(base_spectrum=base, trials=trials,
                              points=points, N=N)


def locality_dispersion(report: PerturbationReport,
                        arg_range=(np.pi / 8.0, 3.0 * np.pi / 8.0),
                        depth_split: float = 4.0):
    """Median cross-trial dispersion of near-circle first-quadrant derivative
    zeros versus deep zeros.

    Reference zeros come from the unperturbed base polynomial; each trial
    contributes the distance from a reference to its nearest trial zero.
    Returns (near_dispersion, deep_dispersion).
    """
    N = report.N
    refs, _ = critical_points(report.base_spectrum.points())
    depth = N * (1.0 - np.abs(refs))
    args = np.angle(refs)
    near = refs[(args > arg_range[0]) & (args < arg_range[1])
                & (depth < depth_split)]
    deep = refs[depth > depth_split]
    by_trial = {}
    for t, z in report.points:
        by_trial.setdefault(t, []).append(z)
    trial_arrays = [np.asarray(v) for _, v in sorted(by_trial.items())]

    def median_dispersion(group):
        disps = []
        for ref in group:
            dists = [float(np.min(np.abs(arr - ref))) for arr in trial_arrays]
            disps.append(float(np.median(dists)))
        return float(np.median(disps)) if disps else float("nan")

    return median_dispersion(near), median_dispersion(deep)


# ---------------------------------------------------------------------------
# Experiment 3: zeros in the target discs of wide triples
# ---------------------------------------------------------------------------

def _special_for_spectrum(spec: EigenAngleSpectrum, dz: np.ndarray, N: int):
    counts = {}
    rotated = []
    radial = []
    triples = find_wide_triples(spec)
    for t in triples:
        disc = target_disc(t, N)
        inside = dz[np.abs(dz - disc.center) <= disc.radius]
        counts[inside.size] = counts.get(inside.size, 0) + 1
        for z in inside:
            rotated.append(rotate_to_reference(complex(z), t.center_angle))
            radial.append(float(N * (1.0 - abs(z))))
    return triples, counts, rotated, radial


def _special_chunk(args):
    master_seed, N, start, stop = args
    counts = {}
    rotated = []
    radial = []
    num_triples = 0
    snapshot = {}
    for i in range(start, stop):
        spec, dz, _ = derivative_zeros_for_matrix(N, master_seed, i)
        triples, c, rot, rad = _special_for_spectrum(spec, dz, N)
        num_triples += len(triples)
        for k, v in c.items():
            counts[k] = counts.get(k, 0) + v
        rotated.extend(rot)
        radial.extend(rad)
        if i == 0:
            snapshot = {
                "angles": spec.angles.tolist(),
                "dzeros": [[z.real, z.imag] for z in dz],
                "disc_centers": [
                    [target_disc(t, N).center.real, target_disc(t, N).center.imag]
                    for t in triples
                ],
                "disc_radius": 2.5 / N,
                "N": N,
            }
    return num_triples, counts, rotated, radial, snapshot


def run_special(cfg: ExperimentConfig) -> SpecialZeroReport:
    """Count derivative zeros in the target disc of every wide triple."""
    if cfg.N < 6:
        raise PrecisionError("run_special needs N >= 6")
    ranges = _chunk_ranges(cfg.num_matrices, cfg.shards)
    args = [(cfg.master_seed, cfg.N, a, b) for a, b in ranges]
    results = _map_chunks(_special_chunk, args, cfg.shards)
    counts = {}
    rotated = []
    radial = []
    num_triples = 0
    snapshot = {}
    for nt, c, rot, rad, snap in results:
        num_triples += nt
        for k, v in c.items():
            counts[k] = counts.get(k, 0) + v
        rotated.extend(rot)
        radial.extend(rad)
        if snap:
            snapshot = snapshot or snap
    return SpecialZeroReport(
        num_matrices=cfg.num_matrices, num_triples=num_triples,
        counts=counts, rotated_points=rotated, radial_values=radial,
        snapshot=snapshot,
    )


def run_special_on_spectra(spectra, N: int) -> SpecialZeroReport:
    """Deterministic variant of run_special for synthetic spectra (no RNG)."""
    counts = {}
    rotated = []
    radial = []
    num_triples = 0
    snapshot = {}
    for i, spec in enumerate(spectra):
        dz, _ = critical_points(spec.points())
        triples, c, rot, rad = _special_for_spectrum(spec, dz, N)
        num_triples += len(triples)
        for k, v in c.items():
            counts[k] = counts.get(k, 0) + v
        rotated.extend(rot)
        radial.extend(rad)
        if i == 0:
            snapshot = {
                "angles": spec.angles.tolist(),
                "dzeros": [[z.real, z.imag] for z in dz],
                "disc_centers": [
                    [target_disc(t, N).center.real, target_disc(t, N).center.imag]
                    for t in triples
                ],
                "disc_radius": 2.5 / N,
                "N": N,
            }
    return SpecialZeroReport(
        num_matrices=len(list(spectra)) if not hasattr(spectra, "__len__")
        else len(spectra),
        num_triples=num_triples, counts=counts,
        rotated_points=rotated, radial_values=radial, snapshot=snapshot,
    )


def equally_spaced_spectrum(N: int) -> EigenAngleSpectrum:
    return EigenAngleSpectrum(TWO_PI * np.arange(N) / N)


def one_wide_triple_spectrum(N: int) -> EigenAngleSpectrum:
    """N + 2 equally spaced angles with the two neighbors of 0 deleted.

    Exactly one wide triple, centered at angle 0, with both normalized gaps
    equal to 2N/(N+2).
    """
    keep = [k for k in range(N + 2) if k not in (1, N + 1)]
    return EigenAngleSpectrum(TWO_PI * np.asarray(keep) / (N + 2))


# ---------------------------------------------------------------------------
# Bimodality detection
# ---------------------------------------------------------------------------

def bimodality_check(hist, second_mode_range=(2.0, 4.0)):
    """Smoothed-histogram mode structure test.

    Applies a 3-bin moving average, then requires two interior local maxima
    with an interior local minimum between them and the second maximum's bin
    center inside `second_mode_range`.  Returns (is_bimodal, detail dict).
    """
    s = smoothed(hist.densities, window=3)
    maxima, minima = interior_extrema(s)
    centers = hist.centers
    ok = False
    chosen = None
    for i in maxima:
        for j in maxima:
            if j <= i:
                continue
            if not (second_mode_range[0] < centers[j] < second_mode_range[1]):
                continue
            if any(i < k < j for k in minima):
                ok = True
                chosen = (i, j)
                break
        if ok:
            break
    return ok, {
        "maxima_centers": [float(centers[i]) for i in maxima],
        "minima_centers": [float(centers[i]) for i in minima],
        "chosen": chosen,
    }
