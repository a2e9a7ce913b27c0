import pytest

from fractal_hodge import settings


@pytest.fixture(autouse=True)
def quiet_settings(tmp_path):
    saved = {k: getattr(settings, k) for k in ("verbosity", "logfile", "seed", "simplex_cap", "writedir")}
    settings.verbosity = 1
    settings.writedir = str(tmp_path / "write")
    yield
    for k, v in saved.items():
        setattr(settings, k, v)
