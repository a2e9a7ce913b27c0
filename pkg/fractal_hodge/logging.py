"""Verbosity-levelled messages, timing and progress bars.

Output goes to stdout unless `fractal_hodge.settings.logfile` names a file.
"""
from datetime import datetime
from functools import reduce
from platform import python_version
from time import time as get_time

from tqdm.auto import tqdm

from . import settings

LEVELS = {"error": 0, "warn": 1, "info": 2, "hint": 3}
PREFIXES = {0: "Error:", 1: "WARNING:", 3: "-->"}
STACK = ("fractal_hodge", "numpy", "scipy", "pandas", "sympy", "tqdm")


def error(*args, **kwargs):
    return msg(*args, v="error", **kwargs)


def warn(*args, **kwargs):
    return msg(*args, v="warn", **kwargs)


def info(*args, **kwargs):
    return msg(*args, v="info", **kwargs)


def hint(*args, **kwargs):
    return msg(*args, v="hint", **kwargs)


def _level(v):
    return LEVELS[v] if isinstance(v, str) else v


def enabled(v):
    """True if messages of level `v` pass `settings.verbosity`."""
    return _level(settings.verbosity) >= _level(v)


def msg(*args, v="info", time=False, r=False, end="\n"):
    """Write a message if the verbosity allows it.

    v : {'error', 'warn', 'info', 'hint'} or int
        0/'error', 1/'warn', 2/'info', 3/'hint'.
    time : bool
        Append the time elapsed since the last reset and restart the clock.
    r : bool
        Restart the clock after writing.
    """
    level = _level(v)
    if not enabled(level):
        return
    if level in PREFIXES:
        args = (PREFIXES[level],) + args
    if time:
        args = args + (f"({_sec_to_str(passed_time())})",)
    _write_log(*args, end=end)
    if r:
        settings._previous_time = get_time()


def _write_log(*args, end="\n"):
    if settings.logfile == "":
        print(*args, end=end)
        return
    with open(settings.logfile, "a") as f:
        f.write(" ".join(str(a) for a in args) + end)


def _sec_to_str(t):
    """h:mm:ss.s"""
    hms = reduce(lambda acc, b: divmod(acc[0], b) + acc[1:], [(t * 100,), 100, 60, 60])
    return ("%d:%02d:%02d.%02d" % hms)[:-1]


def passed_time():
    """Seconds since the previous call (or reset), restarting the clock."""
    now = get_time()
    if settings._previous_time is None:
        settings._previous_time = now
    elapsed = now - settings._previous_time
    settings._previous_time = now
    return elapsed


def progress(iterable, total=None, desc=None):
    """Wrap `iterable` in a tqdm bar, shown only at verbosity >= info on stdout."""
    disable = not enabled("info") or settings.logfile != ""
    return tqdm(iterable, total=total, desc=desc, disable=disable, leave=False)


def versions():
    """Installed versions of the numerical stack, for report headers."""
    out = {"python": python_version()}
    for mod in STACK:
        try:
            out[mod] = __import__(mod).__version__
        except (ImportError, AttributeError):
            out[mod] = None
    return out


def print_versions():
    stamp = datetime.now().strftime("%Y-%m-%d %H:%M")
    line = "  ".join(f"{k}=={v}" for k, v in versions().items() if v is not None)
    _write_log(f"{line}  ({stamp})")
