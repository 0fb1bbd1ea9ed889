"""Exception hierarchy shared by every arbor module."""

from __future__ import annotations


class ArborError(Exception):
    """Base class for domain errors; ``code`` is the machine-readable tag."""

    code = "ArborError"


class TreeError(ArborError, ValueError):
    code = "InvalidTree"


class ParseError(TreeError):
    code = "ParseError"


class OutOfRange(TreeError):
    code = "OutOfRange"


class SelfLoop(TreeError):
    code = "SelfLoop"


class DuplicateEdge(TreeError):
    code = "DuplicateEdge"


class CycleDetected(TreeError):
    code = "CycleDetected"


class Disconnected(TreeError):
    code = "Disconnected"


class NoEdges(TreeError):
    code = "NoEdges"


class CapExceeded(ArborError):
    code = "CapExceeded"


class MalformedPoly(ArborError, ValueError):
    code = "MalformedPoly"


class NotFound(ArborError, LookupError):
    code = "NotFound"


class InconsistentPoly(ArborError, ValueError):
    code = "InconsistentPoly"
