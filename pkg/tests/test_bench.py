import pytest

from core.bench import BenchRow, relax_label, run_bench
from core.colorspace import SimilarityThresholds
from core.filters import FhsfParams, FilterKind
from core.metrics import MetricReport
from core.noise import NoiseSpec

SPEC = NoiseSpec(p=0.1, seed=3)


class TestRunBench:
    def test_empty_filter_list(self, natural_image):
        report = run_bench(natural_image(32, 32), SPEC, [])
        assert [row.name for row in report.rows] == ["NONE"]
        none = report.row("NONE")
        assert none.mae > 0
        assert none.elapsed == 0
        assert report.row("VMF") is None

    def test_rows_follow_request_order(self, natural_image):
        relaxed = FhsfParams(3, SimilarityThresholds(28, 10, 48))
        entries = [
            "fhsf",
            FilterKind.VMF,
            (relax_label(relaxed, "Ht"), FilterKind.FHSF_S, relaxed),
        ]
        report = run_bench(natural_image(32, 32), SPEC, entries, repeats=1)
        assert [row.name for row in report.rows] == ["NONE", "FHSF_S", "VMF", "FHSF_S(Ht=28)"]
        assert report.row("VMF").distance_evals == 36 * 32 * 32
        assert report.row("VMF").pixels_switched == 32 * 32
        assert report.row("FHSF_S").distance_evals < report.row("VMF").distance_evals

    def test_same_seed_same_metrics(self, natural_image):
        img = natural_image(40, 40, seed=5)
        first = run_bench(img, SPEC, ["VMF", "FHSF_S", "FPGF1"], repeats=1)
        second = run_bench(img, SPEC, ["VMF", "FHSF_S", "FPGF1"], repeats=1)
        assert [r.metrics() for r in first.rows] == [r.metrics() for r in second.rows]

    def test_fhsf_row_beats_vmf_row(self, natural_image):
        report = run_bench(
            natural_image(128, 128, seed=11, regions=30, texture=4.0),
            SPEC,
            ["VMF", "FHSF_S"],
            repeats=1,
        )
        vmf, fhsf, none = report.row("VMF"), report.row("FHSF_S"), report.row("NONE")
        for a, b, c in zip(fhsf.metrics(), vmf.metrics(), none.metrics()):
            assert a < b
            assert a < c

    @pytest.mark.slow
    def test_fhsf_row_is_faster(self, natural_image):
        report = run_bench(natural_image(512, 512, seed=12), SPEC, ["VMF", "FHSF_S"])
        assert report.row("FHSF_S").elapsed < report.row("VMF").elapsed

    def test_report_dicts(self, natural_image):
        report = run_bench(natural_image(16, 16), SPEC, ["BVDF"], repeats=2)
        dicts = report.as_dicts()
        assert [d["name"] for d in dicts] == ["NONE", "BVDF"]
        assert set(dicts[0]) == {
            "name", "mae", "mse", "ncd", "pcd", "elapsed",
            "distance_evals", "pixels_switched",
        }
        assert (report.width, report.height) == (16, 16)


def test_relax_label():
    params = FhsfParams(3, SimilarityThresholds(10, 20.5, 80))
    assert relax_label(params, "St") == "FHSF_S(St=20.5)"
    assert relax_label(params, "Lt") == "FHSF_S(Lt=80)"


def test_row_from_report():
    report = MetricReport(1.0, 2.0, 0.1, 0.5, elapsed=0.25, distance_evals=7)
    row = BenchRow.from_report("X", report, pixels_switched=3)
    assert row.metrics() == (1.0, 2.0, 0.1, 0.5)
    assert (row.elapsed, row.distance_evals, row.pixels_switched) == (0.25, 7, 3)
