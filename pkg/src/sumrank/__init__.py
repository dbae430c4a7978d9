"""Sum-rank metric codes: exhaustive invariants, MacWilliams identities, anticodes, MSRD constructions."""

from sumrank.code import LinearCode, canonicalize, dual_code, minimum_distance
from sumrank.config import CeilingExceeded, set_limits
from sumrank.gf import Field, FieldTower, tower_for
from sumrank.matspace import AmbientShape, Codeword

__all__ = [
    "AmbientShape",
    "CeilingExceeded",
    "Codeword",
    "Field",
    "FieldTower",
    "LinearCode",
    "canonicalize",
    "dual_code",
    "minimum_distance",
    "set_limits",
    "tower_for",
]
