"""Enumeration ceilings and worker settings shared by the exhaustive routines."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


class CeilingExceeded(RuntimeError):
    """An exhaustive computation would exceed the configured enumeration ceiling."""

    def __init__(self, what: str, cost: int, ceiling: int):
        self.what = what
        self.cost = cost
        self.ceiling = ceiling
        super().__init__(
            f"{what}: estimated cost {cost} exceeds ceiling {ceiling} "
            f"(raise it with --ceiling or SUMRANK_CEILING)"
        )


@dataclass(frozen=True)
class Limits:
    # number of elements swept by any single exhaustive loop
    sweep: int = 2**22
    # largest field q^m that is constructed
    field: int = 2**20
    # q^{n_i} for a single block when enumerating subspaces
    block: int = 2**10
    # total number of supports / anticode products visited
    lattice: int = 10**7
    workers: int = 1


def _from_env() -> Limits:
    limits = Limits()
    raw = os.environ.get("SUMRANK_CEILING")
    if raw:
        limits = replace(limits, sweep=int(raw))
    raw = os.environ.get("SUMRANK_WORKERS")
    if raw:
        limits = replace(limits, workers=int(raw))
    return limits


LIMITS = _from_env()


def set_limits(**changes) -> Limits:
    """Replace global limits; returns the previous value so callers can restore it."""
    global LIMITS
    old = LIMITS
    LIMITS = replace(LIMITS, **changes)
    return old


def check(what: str, cost: int, ceiling: int | None = None) -> None:
    ceiling = LIMITS.sweep if ceiling is None else ceiling
    if cost > ceiling:
        raise CeilingExceeded(what, cost, ceiling)
