import logging

import pytest

from core.errors import ConfigError
from utils.settings import Settings, load_settings, settings_from_mapping


def _write(tmp_path, text):
    path = tmp_path / "fhsf.conf"
    path.write_text(text, encoding="utf-8")
    return path


class TestLoadSettings:
    def test_defaults_without_file(self):
        settings = load_settings(None)
        assert settings == Settings()
        assert settings.fhsf.key() == (3, 10.0, 10.0, 48.0)
        assert settings.scielab.samples_per_degree == 23.0

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_settings(tmp_path / "none.conf")

    def test_values_from_file(self, tmp_path):
        path = _write(
            tmp_path,
            "# колориметрия\n"
            "WHITE_POINT=0.9642,1.0,0.8251\n"
            "SAMPLES_PER_DEGREE=40\n"
            "SCIELAB_PLANE_2=1.0:0.05\n"
            "NOISE_P=0.15\n"
            "NOISE_SEED=12\n"
            "FHSF_M=4\n"
            "FHSF_LT=60\n",
        )
        settings = load_settings(path)
        assert settings.color.white_point == (0.9642, 1.0, 0.8251)
        assert settings.scielab.samples_per_degree == 40.0
        assert settings.scielab.planes[1] == ((1.0, 0.05),)
        assert settings.scielab.planes[0] == Settings().scielab.planes[0]
        assert settings.scielab.color == settings.color
        assert (settings.noise.p, settings.noise.seed) == (0.15, 12)
        assert settings.fhsf.key() == (4, 10.0, 10.0, 60.0)

    def test_opponent_matrix(self, tmp_path):
        path = _write(tmp_path, "OPPONENT_MATRIX=1,0,0;0,1,0;0,0,1\n")
        settings = load_settings(path)
        assert settings.color.opponent == ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))

    def test_unknown_key_is_logged(self, caplog):
        with caplog.at_level(logging.WARNING):
            settings_from_mapping({"NOISE_PP": "0.2"})
        assert "NOISE_PP" in caplog.text


class TestInvalidSettings:
    @pytest.mark.parametrize(
        "text",
        [
            "OPPONENT_MATRIX=1,2,3;2,4,6;0,0,1\n",
            "OPPONENT_MATRIX=1,2,3;4,5,6\n",
            "WHITE_POINT=1,1\n",
            "SAMPLES_PER_DEGREE=-3\n",
            "SAMPLES_PER_DEGREE=abc\n",
            "SCIELAB_PLANE_1=1.0:-0.5\n",
            "SCIELAB_PLANE_3=oops\n",
            "NOISE_MIX=0.5,0.5,0.5\n",
            "FHSF_M=0\n",
            "FHSF_HT=-1\n",
            "FHSF_ST=many\n",
        ],
    )
    def test_rejected(self, tmp_path, text):
        with pytest.raises(ConfigError):
            load_settings(_write(tmp_path, text))
