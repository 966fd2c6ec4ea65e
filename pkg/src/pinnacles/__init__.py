"""Pinnacle sets of permutations: admissibility, a lattice-path bijection and exact counts."""

__version__ = "0.1.0"

from .perm_core import Permutation, PinnacleSet, SizeLimitError, pinnacle_set
from .admissible import InadmissibleError, canonical_permutation, is_admissible
from .cache import CountCache
from .counting import count

__all__ = [
    "Permutation",
    "PinnacleSet",
    "SizeLimitError",
    "InadmissibleError",
    "CountCache",
    "pinnacle_set",
    "is_admissible",
    "canonical_permutation",
    "count",
    "__version__",
]
