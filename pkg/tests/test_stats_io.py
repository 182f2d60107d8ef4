import numpy as np
import pytest

from unideriv.errors import DataError, ReportParseError, SampleRangeError, SchemaVersionError
from unideriv.stats_io import (
    Histogram,
    ReportFile,
    histogram_pdf,
    interior_extrema,
    octiles,
    read_report,
    smoothed,
    split_overflow,
    write_report,
)


class TestHistogramPdf:
    def test_single_sample_single_bin(self):
        h = histogram_pdf([0.5], [0.0, 1.0])
        assert h.densities[0] == pytest.approx(1.0)
        assert h.area == pytest.approx(1.0)

    def test_uniform_binomial_oracle(self):
        rng = np.random.default_rng(1)
        n, bins = 200000, 20
        samples = rng.random(n) * 3.0
        h = histogram_pdf(samples, np.linspace(0, 3, bins + 1))
        # each bin count is Binomial(n, 1/bins); densities within 5 sigma of 1/range
        p = 1.0 / bins
        sigma_density = np.sqrt(n * p * (1 - p)) / (n * (3.0 / bins))
        assert np.all(np.abs(h.densities - 1.0 / 3.0) <= 5 * sigma_density)

    def test_area_exactly_one(self):
        rng = np.random.default_rng(2)
        h = histogram_pdf(rng.random(999) * 8.0, np.linspace(0, 8, 81))
        assert abs(h.area - 1.0) <= 1e-9

    def test_out_of_range_listed(self):
        with pytest.raises(SampleRangeError) as exc:
            histogram_pdf([0.5, 9.0], [0.0, 8.0])
        assert exc.value.offenders == [9.0]

    def test_empty_rejected(self):
        with pytest.raises(DataError):
            histogram_pdf([], [0.0, 1.0])

    def test_split_overflow(self):
        keep, over = split_overflow([1.0, 2.0, 9.0, 10.0], 8.0)
        assert list(keep) == [1.0, 2.0] and over == 2


class TestOctiles:
    def test_one_to_eight_midpoints(self):
        o = octiles(np.arange(1, 9, dtype=float))
        assert np.allclose(o, [1.5, 2.5, 3.5, 4.5, 5.5, 6.5, 7.5])

    def test_uniform_order_statistics(self):
        rng = np.random.default_rng(3)
        o = octiles(rng.random(10 ** 6))
        assert np.all(np.abs(o - np.arange(1, 8) / 8.0) <= 0.002)

    def test_monotone(self):
        rng = np.random.default_rng(4)
        o = octiles(rng.normal(size=5000))
        assert np.all(np.diff(o) >= 0)

    def test_too_few_samples(self):
        with pytest.raises(DataError):
            octiles([1.0, 2.0])


class TestReportRoundTrip:
    def make_report(self):
        return ReportFile(
            kind="radial",
            config={"N": 20, "seed": 7},
            columns={"value": [0.1, 1.2345678901234567, 7.5],
                     "trial": [0, 1, 2]},
            column_order=["trial", "value"],
        )

    def test_round_trip(self, tmp_path):
        path = tmp_path / "r.csv"
        r = self.make_report()
        write_report(r, path)
        back = read_report(path)
        assert back.kind == r.kind
        assert back.config == r.config
        assert back.columns["value"] == r.columns["value"]
        assert back.columns["trial"] == r.columns["trial"]
        # write-read-write is byte stable
        path2 = tmp_path / "r2.csv"
        write_report(back, path2)
        assert path.read_bytes() == path2.read_bytes()

    def test_truncated_file(self, tmp_path):
        path = tmp_path / "r.csv"
        write_report(self.make_report(), path)
        text = path.read_text().splitlines()
        path.write_text("\n".join(text[:-1]) + "\n")
        with pytest.raises(ReportParseError):
            read_report(path)

    def test_version_mismatch(self, tmp_path):
        path = tmp_path / "r.csv"
        write_report(self.make_report(), path)
        path.write_text(path.read_text().replace(
            "schema_version=1", "schema_version=99"))
        with pytest.raises(SchemaVersionError):
            read_report(path)

    def test_garbage_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("not,a,report\n1,2,3\n")
        with pytest.raises(ReportParseError):
            read_report(path)


class TestSmoothingHelpers:
    def test_histogram_validation(self):
        with pytest.raises(DataError):
            Histogram(bin_edges=np.array([0.0, 1.0, 0.5]),
                      densities=np.array([1.0, 1.0]))

    def test_interior_extrema(self):
        v = [0, 2, 1, 3, 0]
        maxima, minima = interior_extrema(v)
        assert maxima == [1, 3]
        assert minima == [2]

    def test_smoothed_preserves_length(self):
        v = np.arange(10.0)
        s = smoothed(v)
        assert s.size == v.size
        assert s[5] == pytest.approx(5.0)
