import pytest
from pydantic import ValidationError

from cltscope_core.settings import Settings


def test_defaults_without_environment():
    settings = Settings.from_env({})

    assert settings.threads == 1
    assert settings.log_mode == "prod"
    assert settings.log_level is None
    assert settings.log_console is False


def test_reads_prefixed_variables():
    settings = Settings.from_env(
        {
            "CLT_SCOPE_THREADS": "4",
            "CLT_SCOPE_LOG_MODE": "debug",
            "CLT_SCOPE_LOG_LEVEL": "warning",
            "CLT_SCOPE_LOG_CONSOLE": "true",
            "THREADS": "9",
        }
    )

    assert settings.threads == 4
    assert settings.log_mode == "debug"
    assert settings.log_level == "WARNING"
    assert settings.log_console is True


def test_blank_variables_are_ignored():
    assert Settings.from_env({"CLT_SCOPE_THREADS": "  "}).threads == 1


@pytest.mark.parametrize("raw", ["0", "-2", "many"])
def test_rejects_bad_thread_counts(raw):
    with pytest.raises(ValidationError):
        Settings.from_env({"CLT_SCOPE_THREADS": raw})


def test_overrides_skip_none():
    base = Settings.from_env({"CLT_SCOPE_THREADS": "3"})
    merged = base.with_overrides(threads=None, log_mode="dev")

    assert merged.threads == 3
    assert merged.log_mode == "dev"
    assert base.log_mode == "prod"
