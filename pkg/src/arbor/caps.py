"""Size caps for the exponential routines.

Every cap has a default that callers may override per call; the ``ARBOR_CAP``
environment variable, when set, replaces all defaults at once.
"""

from __future__ import annotations

import os

from .errors import CapExceeded

ENV_VAR = "ARBOR_CAP"

SUBTREE_BRUTEFORCE = 22
CSF = 24
CSF_ORACLE = 9
FREE_TREES = 20
PRUFER = 9
SCAN_CSF = 12
SCAN_SUBTREE = 16


def resolve(default: int, override: int | None = None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get(ENV_VAR)
    if env:
        try:
            return int(env)
        except ValueError:
            raise CapExceeded(f"{ENV_VAR}={env!r} is not an integer") from None
    return default


def check(what: str, value: int, default: int, override: int | None = None) -> None:
    cap = resolve(default, override)
    if value > cap:
        raise CapExceeded(f"{what}: {value} exceeds cap {cap}")
