"""Graded Demazure flags of local Weyl modules for sl2[t].

The main entry points are :func:`multiplicity` (exact graded multiplicities
via short exact sequences), :func:`build` / :func:`path_polynomial` (the
same numbers as path sums in a labeled graph), the level-two in level-three
generating functions in :mod:`demflag.series`, and graded characters in
:mod:`demflag.characters`.
"""

__version__ = "0.1.0"

from .errors import (
    DemflagError,
    DomainError,
    EmptyPartition,
    LargestPartMismatch,
    LevelTooSmall,
    MaxPartExceedsLevel,
    NotAVertex,
    ParseError,
    SinkVertex,
)
from .qpoly import *  # noqa: F401,F403
from .partition import *  # noqa: F401,F403
from .flags import *  # noqa: F401,F403
from .graph import *  # noqa: F401,F403
from .series import *  # noqa: F401,F403
from .characters import *  # noqa: F401,F403
