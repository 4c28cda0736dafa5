import numpy as np
import pytest

from core import report
from core.bench import run_bench
from core.errors import ImageFormatError
from core.filters import FhsfParams, fhsf_filter
from core.imgcore import RgbImage
from core.metrics import MetricReport
from core.noise import NoiseSpec
from core.tuner import ParamGrid, ParamRange, TopFraction, TuneResult


def _tune_result():
    configs = [FhsfParams(2), FhsfParams(3)]
    pcd = np.array([[0.5, 0.25]])
    return TuneResult(configs, ["a.ppm"], pcd, pcd * 2, pcd * 3, pcd / 10)


class TestTables:
    def test_csv_lines(self):
        text = report.csv_lines(("a", "b", "c"), [("x", 1, 0.5), ("y", np.int64(2), 1e-7)])
        assert text == "a;b;c\nx;1;0.5\ny;2;1e-07\n"

    def test_aligned_table(self):
        text = report.aligned_table(("Name", "V"), [("long name", 1.5), ("x", 10)])
        lines = text.splitlines()
        assert lines[0] == "Name" + " " * 9 + "V"
        assert lines[1] == "---------  ---"
        assert lines[2] == "long name  1.5"
        assert lines[3] == "x" + " " * 11 + "10"

    def test_bench_outputs(self, natural_image):
        result = run_bench(natural_image(16, 16), NoiseSpec(p=0.1), ["VMF"], repeats=1)
        csv_text = report.bench_csv(result)
        lines = csv_text.splitlines()
        assert lines[0] == "Filter;MAE;MSE;NCD;PCD;Time"
        assert lines[1].startswith("NONE;")
        assert lines[2].startswith("VMF;")
        assert "VMF" in report.bench_table(result)

    def test_metric_outputs(self):
        m = MetricReport(1.0, 2.5, 0.125, 3.0, elapsed=0.0)
        assert report.metric_csv(m, "out.ppm").splitlines()[1] == "out.ppm;1;2.5;0.125;3;0"
        assert report.metric_table(m).splitlines()[2].startswith("-")

    def test_stats_block(self, constant_image):
        _, stats = fhsf_filter(constant_image(4, 4))
        lines = report.stats_block(stats).splitlines()
        assert "kind=FHSF_S" in lines
        assert "pixels_switched=0" in lines
        assert "distance_evals=48" in lines


class TestTuneOutputs:
    def test_tune_csv(self):
        lines = report.tune_csv(_tune_result()).splitlines()
        assert lines[0] == "image;m;Ht;St;Lt;PCD;MAE;MSE;NCD"
        assert lines[1] == "a.ppm;2;10;10;48;0.5;1;1.5;0.05"
        assert len(lines) == 3

    def test_tune_summary(self):
        result = _tune_result()
        top = TopFraction([result.configs[1]], None)
        text = report.tune_summary(result, top, 0.5)
        assert "50.0%" in text
        assert "m=3, Ht=10, St=10, Lt=48" in text
        assert "m: [3, 3]" in text
        assert "m=2: 0.5000" in text
        assert "m=3: 0.2500" in text

    def test_tune_summary_with_diagnostic(self):
        result = _tune_result()
        text = report.tune_summary(result, TopFraction([], "пусто"), 0.05)
        assert "пусто" in text
        assert "Рекомендуемые" not in text


class TestHslDump:
    def test_round_trip(self, natural_image):
        img = natural_image(7, 5)
        assert report.parse_hsl_dump(report.hsl_dump(img)) == img

    def test_dump_format(self):
        text = report.hsl_dump(RgbImage.from_pixels(1, 1, [(255, 0, 0)]))
        assert text.splitlines() == [
            "x;y;r;g;b;h;s;l",
            "0;0;255;0;0;0.000000;100.000000;127.500000",
        ]

    def test_bom_is_ignored(self, natural_image):
        img = natural_image(3, 3)
        assert report.parse_hsl_dump("\ufeff" + report.hsl_dump(img)) == img

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "a;b\n",
            "x;y;r;g;b;h;s;l\n",
            "x;y;r;g;b;h;s;l\n0;0;1;2;3;abc;1;1\n",
            "x;y;r;g;b;h;s;l\n1;0;0;0;0;0;0;0\n",
        ],
    )
    def test_malformed(self, text):
        with pytest.raises(ImageFormatError):
            report.parse_hsl_dump(text)


def test_write_text_uses_bom_for_csv(tmp_path):
    report.write_text("a;b\n", tmp_path / "t.csv")
    report.write_text("a;b\n", tmp_path / "t.txt")
    assert (tmp_path / "t.csv").read_bytes().startswith(b"\xef\xbb\xbf")
    assert (tmp_path / "t.txt").read_bytes() == b"a;b\n"


def test_grid_ranges_print_compactly():
    grid = ParamGrid(
        ParamRange(1, 8, 1), ParamRange(6, 20, 2), ParamRange(4, 16, 2), ParamRange(32, 64, 4)
    )
    assert [str(r) for r in grid.ranges()] == ["1:8:1", "6:20:2", "4:16:2", "32:64:4"]
