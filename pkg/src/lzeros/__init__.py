"""lzeros: zeros of primitive Dirichlet L-functions at desk scale.

Library + CLI for computing critical-line zeros of primitive Dirichlet
L-functions across a family q ~ Q and reproducing the finite objects of
the pair-correlation / simple-zeros circle of ideas: the explicit-formula
identity, the statistic F_Phi(Q^alpha; W) and its prediction, the exact
character-sum decomposition S = S_D + S_N, the Euler-product constants,
the Fejer-kernel machinery behind the 11/12 simple-zero proportion, and
the Barban-Davenport-Halberstam variance.
"""

__version__ = "0.1.0"

from . import arith, characters, constants, kernels, lfun, simplezeros, stats, testfn  # noqa: F401,E501
from . import cache  # noqa: F401  (after lfun/characters: it needs them)

__all__ = [
    "arith",
    "cache",
    "characters",
    "constants",
    "kernels",
    "lfun",
    "simplezeros",
    "stats",
    "testfn",
    "__version__",
]
