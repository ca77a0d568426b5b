import logging
import os

from cr_config import CRSettings, ToleranceConfig, env_flag, load_settings, validate_settings, with_overrides
from cr_logging import MaxSizeFileHandler, configure_logging


def test_load_settings_reads_environment(monkeypatch):
    monkeypatch.setenv("CRGEOM_SEED", "7")
    monkeypatch.setenv("CRGEOM_SAMPLES", "12")
    monkeypatch.setenv("CRGEOM_RESIDUAL_TOL", "1e-9")
    monkeypatch.setenv("CRGEOM_LOG_LEVEL", "debug")
    monkeypatch.setenv("CRGEOM_FORMAT", "TEXT")

    settings = load_settings(use_dotenv=False)
    assert settings.default_seed == 7
    assert settings.default_samples == 12
    assert settings.tolerances.residual_tol == 1e-9
    assert settings.tolerances.exact_tol == 1e-12
    assert settings.log_level == "DEBUG"
    assert settings.output_format == "text"


def test_bad_numbers_fall_back_to_defaults(monkeypatch):
    monkeypatch.setenv("CRGEOM_SEED", "forty-two")
    monkeypatch.setenv("CRGEOM_ORBIT_TOL", "tight")
    settings = load_settings(use_dotenv=False)
    assert settings.default_seed == 42
    assert settings.tolerances.orbit_tol == 1e-8


def test_validation_flags_partial_settings(caplog):
    settings = CRSettings(
        tolerances=ToleranceConfig(exact_tol=1e-5, orbit_tol=1e-9, residual_tol=-1.0),
        default_samples=0,
        log_level="LOUD",
        output_format="yaml",
        log_file="crgeom.log",
        log_max_bytes=0,
    )
    warnings = validate_settings(settings)
    assert any("residual_tol must be positive" in warning for warning in warnings)
    assert "Tolerance exact_tol=1e-05 is looser than 1e-6; verdicts may flip near thresholds." in warnings
    assert not any("orbit_tol" in warning and "looser" in warning for warning in warnings)
    assert any("CRGEOM_EXACT_TOL is larger" in warning for warning in warnings)
    assert any("CRGEOM_SAMPLES" in warning for warning in warnings)
    assert any("CRGEOM_LOG_LEVEL" in warning for warning in warnings)
    assert any("CRGEOM_FORMAT" in warning for warning in warnings)
    assert any("CRGEOM_LOG_MAX_BYTES" in warning for warning in warnings)
    assert "Config warning: CRGEOM_SAMPLES must be at least 1." in caplog.text


def test_default_settings_are_clean():
    assert validate_settings(CRSettings()) == []


def test_overrides_only_touch_given_fields():
    base = CRSettings()
    changed = with_overrides(base, tol=1e-8, samples=5)
    assert changed.tolerances.residual_tol == 1e-8
    assert changed.tolerances.orbit_tol == base.tolerances.orbit_tol
    assert changed.default_samples == 5
    assert changed.default_seed == base.default_seed
    assert with_overrides(base) == base


def test_points_flag_reads_truthy_strings(monkeypatch):
    assert load_settings(use_dotenv=False).include_points is False
    assert env_flag("CRGEOM_POINTS", True) is True
    monkeypatch.setenv("CRGEOM_POINTS", " Yes ")
    assert load_settings(use_dotenv=False).include_points is True
    monkeypatch.setenv("CRGEOM_POINTS", "0")
    assert load_settings(use_dotenv=False).include_points is False
    assert env_flag("CRGEOM_POINTS", True) is False


def test_max_size_handler_stops_writing(tmp_path):
    path = tmp_path / "capped.log"
    handler = MaxSizeFileHandler(str(path), max_bytes=64, encoding="utf-8")
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger = logging.getLogger("tests.capped")
    logger.propagate = False
    logger.setLevel(logging.INFO)
    logger.addHandler(handler)
    try:
        for index in range(50):
            logger.info("orbit sample %03d", index)
    finally:
        logger.removeHandler(handler)
        handler.close()

    text = path.read_text(encoding="utf-8")
    assert text.startswith("orbit sample 000")
    assert "orbit sample 049" not in text
    assert os.path.getsize(path) < 64 + 32


def test_configure_logging_adds_file_handler_once(tmp_path):
    settings = CRSettings(log_file=str(tmp_path / "crgeom.log"))
    root = logging.getLogger()
    try:
        configure_logging(settings)
        configure_logging(settings)
        ours = [
            handler
            for handler in root.handlers
            if isinstance(handler, MaxSizeFileHandler) and handler.baseFilename == os.path.abspath(settings.log_file)
        ]
        assert len(ours) == 1
    finally:
        for handler in list(root.handlers):
            if isinstance(handler, MaxSizeFileHandler):
                root.removeHandler(handler)
                handler.close()
