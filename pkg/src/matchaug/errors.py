"""Exceptions shared by the solver stages."""

from __future__ import annotations

from .graph import MapInstance


class InvariantBreach(RuntimeError):
    """A property that the theory guarantees failed to hold.

    ``instance`` carries the offending (sub-)instance so callers can dump it.
    """

    def __init__(self, message: str, instance: MapInstance | None = None):
        super().__init__(message)
        self.instance = instance
