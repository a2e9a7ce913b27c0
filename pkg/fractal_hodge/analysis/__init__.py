from .report import VerificationReport
from .verification import SUITES, run_suite, counting_suite, complex_suite, harmonic_suite, kusuoka_suite

__all__ = [
    "VerificationReport",
    "SUITES",
    "run_suite",
    "counting_suite",
    "complex_suite",
    "harmonic_suite",
    "kusuoka_suite",
    ]
