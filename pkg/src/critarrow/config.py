"""Resource caps for the enumeration layers.

Defaults can be overridden with environment variables
``CRITARROW_MAX_BOX`` (filter evaluations per box sweep) and
``CRITARROW_MAX_PARALLELEPIPED`` (lattice-point candidates per cone), or
in-process with :func:`set_limits`.
"""
from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Limits:
    max_box: int = 10**8
    max_parallelepiped: int = 10**6


def _from_env() -> Limits:
    base = Limits()
    return Limits(
        max_box=int(os.environ.get("CRITARROW_MAX_BOX", base.max_box)),
        max_parallelepiped=int(
            os.environ.get("CRITARROW_MAX_PARALLELEPIPED", base.max_parallelepiped)
        ),
    )


_limits = _from_env()


def limits() -> Limits:
    return _limits


def set_limits(**changes) -> Limits:
    global _limits
    _limits = replace(_limits, **changes)
    return _limits


@contextmanager
def limited(**changes):
    """Temporarily override caps (used by tests)."""
    global _limits
    saved = _limits
    _limits = replace(_limits, **changes)
    try:
        yield _limits
    finally:
        _limits = saved
