"""Settings
"""
import os

verbosity = 2
"""Verbosity level (0=errors, 1=warnings, 2=info, 3=hints)
"""

logfile = ""
"""Name of logfile. By default is set to '' and writes to standard output."""

writedir = "./write/"
"""Directory where reports and exported artifacts are stored (default './write/').
"""

seed = 0
"""Seed for the random rational samplers used by the verification suites.
"""

DEFAULT_SIMPLEX_CAP = 10**7


def simplex_cap_from_env(default=DEFAULT_SIMPLEX_CAP):
    """Read the simplex cap from FRACTAL_HODGE_CAP, falling back to `default`."""
    value = os.environ.get("FRACTAL_HODGE_CAP", "")
    if value.strip() == "":
        return default
    try:
        cap = int(float(value))
    except ValueError:
        return default
    return cap if cap > 0 else default


simplex_cap = simplex_cap_from_env()
"""Refuse to build graphs with more simplices than this (all degrees together).
"""

exact_column_limit = 5000
"""Kernels and ranks are computed over the rationals below this column count.
"""

rank_rtol = 1e-9
"""Singular values below rank_rtol * largest are treated as zero on the float path.
"""

hodge_tol = 1e-10
"""Residual tolerance of the Hodge decomposition.
"""

depth_cap = 12
"""Largest word depth accepted by the word-tree summations of the measure module.
"""

chunk_depth = 6
"""Word-tree summations are vectorized over blocks of N**chunk_depth cells.
"""

_previous_time = None
"""Clock used by the logging module.
"""
