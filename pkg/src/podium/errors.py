"""Exception hierarchy shared across the package.

Two branches matter to callers: `DataError` for malformed or inconsistent
user input (CLI exit code 1) and `EnvironmentFailure` for problems with the
surrounding machinery such as the docker daemon or a busy port (exit code 2).
"""

from __future__ import annotations


class PodiumError(Exception):
    """Base class for all errors raised by this package."""


class DataError(PodiumError):
    """Invalid or inconsistent input data."""


class CorpusError(DataError):
    """Test set or hypothesis files failed to load or align."""


class MetricError(DataError):
    """Metric inputs violate a precondition (length mismatch, empty corpus, ...)."""


class ResultsError(DataError):
    """Results file is malformed, of an unsupported version, or violates an invariant."""


class EnvironmentFailure(PodiumError):
    """The environment (docker daemon, network port, filesystem) is not usable."""


class DockerError(EnvironmentFailure):
    """Docker build/run/cleanup failed."""
