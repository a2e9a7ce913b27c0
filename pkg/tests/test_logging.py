from fractal_hodge import logging as logg
from fractal_hodge import settings


def test_verbosity_gates_messages(capsys):
    settings.verbosity = 1
    logg.info("hidden")
    logg.warn("shown")
    out = capsys.readouterr().out
    assert "hidden" not in out
    assert "WARNING: shown" in out


def test_string_verbosity(capsys):
    settings.verbosity = "hint"
    logg.hint("a hint")
    assert capsys.readouterr().out.startswith("--> a hint")
    assert logg.enabled(3) and not logg.enabled(4)


def test_logfile_redirection(tmp_path, capsys):
    settings.verbosity = 2
    settings.logfile = str(tmp_path / "run.log")
    logg.info("to the file", r=True)
    logg.error("bad")
    assert capsys.readouterr().out == ""
    lines = (tmp_path / "run.log").read_text().splitlines()
    assert lines == ["to the file", "Error: bad"]


def test_elapsed_time_suffix(capsys):
    settings.verbosity = 2
    settings._previous_time = None
    logg.info("done", time=True)
    assert capsys.readouterr().out.strip() == "done (0:00:00.0)"


def test_sec_to_str():
    assert logg._sec_to_str(3723.45) == "1:02:03.4"


def test_versions():
    v = logg.versions()
    assert v["numpy"] is not None and "python" in v
