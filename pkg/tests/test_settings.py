from bloch_synthesis.config import Settings, get_settings, reset_settings


def test_defaults(settings):
    assert settings.tol == 1e-10
    assert settings.exclusion_factor == 3.0
    assert settings.server_name == "bloch-synthesis"


def test_environment_override(settings, monkeypatch):
    monkeypatch.setenv("BLOCH_TOL", "1e-8")
    monkeypatch.setenv("BLOCH_SEED", "42")
    reset_settings()
    current = get_settings()
    assert current.tol == 1e-8
    assert current.seed == 42
    assert get_settings() is current


def test_reset_drops_cached_instance(settings):
    first = get_settings()
    reset_settings()
    assert get_settings() is not first
    assert isinstance(first, Settings)
