import json
import logging

import numpy as np
import pytest
import structlog

from cltscope_core.logger import AppLogger, RichRenderer, to_builtin


@pytest.fixture(autouse=True)
def reset_logging():
    yield
    structlog.reset_defaults()
    logging.getLogger().handlers.clear()


def test_to_builtin_unwraps_numpy_values():
    assert to_builtin(np.float64(0.25)) == 0.25
    assert to_builtin(np.arange(3)) == [0, 1, 2]

    summary = to_builtin(np.linspace(0.0, 1.0, 100))
    assert summary == {"shape": [100], "min": 0.0, "max": 1.0}


def test_to_builtin_rejects_unknown_objects():
    with pytest.raises(TypeError):
        to_builtin(object())


def test_prod_mode_writes_json_lines(tmp_path):
    log_file = tmp_path / "run.log"
    app_logger = AppLogger(mode="prod", log_file=str(log_file))
    logger = AppLogger.get_logger(component="test")

    logger.info("sweep finished", best_n=35, theta=np.float64(0.1234))
    logger.debug("hidden at info level")
    app_logger.stop()

    lines = log_file.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 1
    record = json.loads(lines[0])
    assert record["event"] == "sweep finished"
    assert record["component"] == "test"
    assert record["best_n"] == 35
    assert record["theta"] == pytest.approx(0.1234)
    assert record["level"] == "info"


def test_dev_mode_refuses_a_file(tmp_path):
    with pytest.raises(ValueError, match="dev"):
        AppLogger(mode="dev", log_file=str(tmp_path / "run.log"))


def test_rich_renderer_formats_floats():
    renderer = RichRenderer(float_digits=3)
    text = renderer(None, "info", {"event": "done", "level": "info", "ratio": 0.123456})

    assert "done" in text
    assert "0.123" in text
    assert "0.123456" not in text


def test_stop_is_idempotent(tmp_path):
    app_logger = AppLogger(mode="prod", log_file=str(tmp_path / "run.log"))
    app_logger.stop()
    app_logger.stop()
