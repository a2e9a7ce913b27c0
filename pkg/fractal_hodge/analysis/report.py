import json
import os
from time import time as get_time

import numpy as np
import pandas as pd

from .. import settings
from .. import logging as logg

SCHEMA_VERSION = 1
STATUSES = ("pass", "fail", "erratum")


class VerificationReport:
    """Class for collecting the checks of a verification run
    """
    columns = ["id", "suite", "description", "status", "lhs", "rhs", "tolerance", "citation"]

    def __init__(self, suite="all", save_path=None, seed=None):
        """
        Arguments
        ---------
        suite : str
            Name of the suite (or 'all').
        save_path : str, optional
            Folder for the JSON report and the CSV table, defaults to `settings.writedir`.
        seed : int, optional
            Seed of the random samplers, defaults to `settings.seed`.
        """
        self.suite = suite
        self.save_path = settings.writedir if save_path is None else save_path
        self.seed = settings.seed if seed is None else seed
        self._rows = []
        self._ids = set()
        self._df = None
        self._start = get_time()
        self._elapsed = {}

    def add_check(self, check_id, description, passed, lhs=None, rhs=None, tolerance=0.0, suite=None,
                  erratum=False, citation=None):
        """Record one check.

        Arguments
        ---------
        check_id : str
            Unique id of the check.
        passed : bool
        erratum : bool
            A failed check that compares a tabulated value with a derived one; it is
            reported as 'erratum' instead of 'fail' and needs a `citation`.
        citation : str, optional
            Where the tabulated value comes from.

        Returns
        -------
        The status string.
        """
        if check_id in self._ids:
            raise ValueError(f"duplicate check id {check_id!r}")
        status = "pass" if passed else ("erratum" if erratum else "fail")
        if status == "erratum" and not citation:
            raise ValueError(f"erratum {check_id!r} needs a citation")
        self._rows.append([check_id, suite or self.suite, description, status, _text(lhs), _text(rhs),
                           float(tolerance), citation or ""])
        self._ids.add(check_id)
        self._df = None
        if status == "fail":
            logg.warn(f"check {check_id} failed: {description} (lhs={_text(lhs)}, rhs={_text(rhs)})")
        else:
            logg.hint(f"{check_id}: {status}")
        return status

    def check_equal(self, check_id, description, lhs, rhs, **kwargs):
        return self.add_check(check_id, description, lhs == rhs, lhs, rhs, 0.0, **kwargs)

    def check_close(self, check_id, description, lhs, rhs, tolerance, **kwargs):
        diff = float(np.max(np.abs(_numeric(lhs) - _numeric(rhs)), initial=0.0))
        return self.add_check(check_id, description, diff <= tolerance, lhs, rhs, tolerance, **kwargs)

    @property
    def df(self):
        """All checks so far as a DataFrame, rebuilt only after new checks."""
        if self._df is None:
            self._df = pd.DataFrame(self._rows, columns=self.columns)
        return self._df

    def time_suite(self, name, seconds):
        self._elapsed[name] = seconds

    @property
    def failures(self):
        return self.df[self.df["status"] == "fail"]

    @property
    def errata(self):
        return self.df[self.df["status"] == "erratum"]

    @property
    def passed(self):
        return len(self.failures) == 0

    def summary(self):
        counts = self.df["status"].value_counts()
        return {s: int(counts.get(s, 0)) for s in STATUSES}

    def environment(self):
        from .. import __version__

        return {"version": __version__, "seed": self.seed, "versions": logg.versions(),
                "timing": {"total": round(get_time() - self._start, 3),
                           **{k: round(v, 3) for k, v in self._elapsed.items()}}}

    def to_dict(self):
        checks = self.df.to_dict(orient="records")
        return {"schema_version": SCHEMA_VERSION, "suite": self.suite, "summary": self.summary(),
                "checks": checks, "environment": self.environment()}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_frame(self):
        return self.df.copy()

    def save(self, file_name=None):
        """Write `<file_name>.json` and `<file_name>.csv` into the save path."""
        if file_name is None:
            file_name = f"verify_{self.suite}"
        os.makedirs(self.save_path, exist_ok=True)
        with open(os.path.join(self.save_path, f"{file_name}.json"), "w") as f:
            f.write(self.to_json() + "\n")
        self.df.to_csv(os.path.join(self.save_path, f"{file_name}.csv"), index=False)
        logg.info(f"report written to {self.save_path}/{file_name}.json")

    def __repr__(self):
        return f"VerificationReport(suite={self.suite!r}, {self.summary()})"


def _text(value):
    if value is None:
        return ""
    if isinstance(value, np.ndarray):
        return np.array2string(value, precision=12, threshold=20)
    return str(value)


def _numeric(value):
    a = np.asarray(value)
    return a.astype(float) if a.dtype == object else a
