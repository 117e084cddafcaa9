"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class TopologyError(Exception):
    """Base class for domain errors (the CLI maps these to exit code 1)."""

    step: int | None = None

    def at_step(self, step: int) -> TopologyError:
        """Return a copy of this error annotated with a measurement-sequence step index."""
        err = type(self)(f"step {step}: {self}")
        err.step = step
        return err


class UnknownVertexError(TopologyError, KeyError):
    def __str__(self) -> str:
        # KeyError quotes its argument; keep plain messages
        return str(self.args[0]) if self.args else ""


class SimpleGraphError(TopologyError, ValueError):
    """Self-loop or otherwise non-simple input."""


class InvalidSizeError(TopologyError, ValueError):
    pass


class InvalidK0Error(TopologyError, ValueError):
    pass


class SizeLimitError(TopologyError, ValueError):
    pass


class AlreadyMergedError(TopologyError):
    pass


class NotMergedError(TopologyError):
    pass


class UnknownLabelError(TopologyError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class InvalidParamsError(TopologyError, ValueError):
    pass


class UnmappedQubitError(TopologyError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class NotFactorizedError(TopologyError):
    """The qubit to discard is still entangled with the rest of the register."""


class CapExceededError(TopologyError):
    pass


class SessionError(TopologyError):
    pass
