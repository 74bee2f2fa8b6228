"""Automorphism engine, canonical certificates and symmetry-breaking checks."""

from .core import *  # noqa: F401,F403
from .core import __all__ as _core_all
from .group import AutGroup, GroupTooLarge, compose, identity, inverse, orbits_of_action, schreier_sims
from .subsets import is_lex_min, subset_representatives

__all__ = list(_core_all) + [
    "AutGroup", "GroupTooLarge", "compose", "identity", "inverse", "is_lex_min",
    "orbits_of_action", "schreier_sims", "subset_representatives",
]
