import numpy as np
import pytest

from unideriv.errors import UniderivError
from unideriv.experiments import (
    ExperimentConfig,
    bimodality_check,
    classify_regions,
    derivative_zeros_for_matrix,
    equally_spaced_spectrum,
    locality_dispersion,
    one_wide_triple_spectrum,
    run_perturbation,
    run_radial,
    run_special,
    run_special_on_spectra,
    RadialSampleSet,
)
from unideriv.linalg import SeedStream, eigenvalues_unitary, haar_unitary
from unideriv.stats_io import Histogram, histogram_pdf


class TestRunRadial:
    def test_degree_two_midpoint(self):
        cfg = ExperimentConfig(N=2, num_matrices=1, master_seed=11)
        result = run_radial(cfg)
        assert result.values.size == 1
        spec, dz, _ = derivative_zeros_for_matrix(2, 11, 0)
        midpoint = spec.points().mean()
        assert abs(dz[0] - midpoint) <= 1e-12
        assert result.values[0] == pytest.approx(2 * (1 - abs(midpoint)))

    def test_cardinality(self):
        cfg = ExperimentConfig(N=10, num_matrices=50, master_seed=1)
        assert run_radial(cfg).values.size == 50 * 9

    def test_determinism(self):
        cfg = ExperimentConfig(N=8, num_matrices=20, master_seed=5)
        a = run_radial(cfg)
        b = run_radial(cfg)
        assert np.array_equal(a.values, b.values)

    def test_shard_invariance(self):
        base = run_radial(ExperimentConfig(N=8, num_matrices=30, master_seed=5))
        for shards in (2, 3):
            sharded = run_radial(ExperimentConfig(
                N=8, num_matrices=30, master_seed=5, shards=shards))
            assert np.array_equal(base.values, sharded.values)

    def test_values_strictly_inside(self):
        r = run_radial(ExperimentConfig(N=12, num_matrices=40, master_seed=2))
        assert np.all(r.values > 0.0)
        assert np.all(r.values < 12.0)


class TestClassifyRegions:
    def test_all_in_first_region(self):
        f = classify_regions(RadialSampleSet(N=20, values=np.ones(10)))
        assert f == (1.0, 0.0, 0.0)

    def test_fractions_sum_to_one(self):
        r = run_radial(ExperimentConfig(N=12, num_matrices=30, master_seed=3))
        f = classify_regions(r)
        assert sum(f) == pytest.approx(1.0)

    def test_empty_rejected(self):
        with pytest.raises(UniderivError):
            classify_regions(RadialSampleSet(N=20, values=np.empty(0)))


class TestRunPerturbation:
    def test_cardinality(self):
        rep = run_perturbation(N=40, trials=3, seed=7)
        assert len(rep.points) == 3 * 39

    def test_zero_width_trials_identical(self):
        rep = run_perturbation(N=20, trials=4, seed=2, width=0.0)
        by_trial = {}
        for t, z in rep.points:
            by_trial.setdefault(t, []).append(z)
        ref = sorted(by_trial[0], key=lambda z: (z.real, z.imag))
        for t in range(1, 4):
            pts = sorted(by_trial[t], key=lambda z: (z.real, z.imag))
            assert np.allclose(pts, ref)

    def test_locality(self):
        rep = run_perturbation(N=40, trials=40, seed=3)
        near, deep = locality_dispersion(rep)
        assert near < deep / 4


class TestRunSpecial:
    def test_equal_spaced_empty(self):
        rep = run_special_on_spectra([equally_spaced_spectrum(20)], 20)
        assert rep.num_triples == 0
        assert rep.rotated_points == []

    def test_one_triple_synthetic(self):
        rep = run_special_on_spectra([one_wide_triple_spectrum(20)], 20)
        assert rep.num_triples == 1
        assert sum(rep.counts.values()) == 1

    def test_count_bookkeeping(self):
        cfg = ExperimentConfig(N=20, num_matrices=50, master_seed=8)
        rep = run_special(cfg)
        assert sum(rep.counts.values()) == rep.num_triples
        assert len(rep.rotated_points) == sum(
            k * v for k, v in rep.counts.items())
        assert len(rep.radial_values) == len(rep.rotated_points)
        assert all(abs(z) <= 1.0 + 1e-12 for z in rep.rotated_points)

    def test_determinism_and_shards(self):
        cfg1 = ExperimentConfig(N=20, num_matrices=30, master_seed=9)
        cfg2 = ExperimentConfig(N=20, num_matrices=30, master_seed=9, shards=2)
        a, b = run_special(cfg1), run_special(cfg2)
        assert a.num_triples == b.num_triples
        assert a.counts == b.counts
        assert np.allclose(a.rotated_points, b.rotated_points)


class TestBimodalityCheck:
    def test_synthetic_two_bumps(self):
        edges = np.linspace(0, 8, 81)
        centers = 0.5 * (edges[:-1] + edges[1:])
        d = np.exp(-(centers - 0.8) ** 2) + 0.5 * np.exp(-(centers - 3.0) ** 2 / 0.5)
        d /= np.sum(d * np.diff(edges))
        ok, detail = bimodality_check(Histogram(edges, d))
        assert ok

    def test_unimodal_rejected(self):
        edges = np.linspace(0, 8, 81)
        centers = 0.5 * (edges[:-1] + edges[1:])
        d = np.exp(-(centers - 1.0) ** 2)
        d /= np.sum(d * np.diff(edges))
        ok, _ = bimodality_check(Histogram(edges, d))
        assert not ok
