"""Semantic exception hierarchy shared across the package."""

from __future__ import annotations


class HvlabError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(HvlabError, ValueError):
    """Inputs violate a contract: domain, shape, norm, or config schema."""


class ConfigError(ValidationError):
    """A scenario configuration file or value is malformed."""


class ReductionUndefinedError(HvlabError):
    """State preparation on an (almost) orthogonal projector is undefined.

    Raised when the conditioning probability falls at or below the
    orthogonality cutoff.  ``index`` identifies the failing step for
    measurement sequences, and is None otherwise.
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class UndefinedConditionalError(HvlabError):
    """Classical conditioning on a set of (almost) zero measure."""


class WitnessUndefinedError(HvlabError):
    """The requested conflict witness degenerates (e.g. collinear axes)."""


class ZeroProbabilityError(HvlabError):
    """A normalization factor of a zero-probability branch was requested."""


class ScenarioError(HvlabError):
    """A lower-level failure surfaced while running a named scenario."""
