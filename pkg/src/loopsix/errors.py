"""Shared exception hierarchy.

Two broad families matter to callers (and fix the CLI exit codes):

* :class:`InputError` -- the input itself is malformed or mathematically
  inconsistent (non-unimodular form, unrealizable characteristic classes,
  bad table file, ...).
* :class:`UnsupportedError` -- the input is valid but the requested
  computation is outside the supported range (the unresolved d=0 attaching
  numbers, homotopy degrees past the shipped tables, ...).
"""


class LoopSixError(Exception):
    """Base class for all library errors."""


class InputError(LoopSixError):
    """Invalid or inconsistent input data."""


class UnsupportedError(LoopSixError):
    """Valid input outside the supported range of the computation."""


class UnsupportedCase(UnsupportedError):
    """A case the decomposition machinery deliberately refuses to handle."""
