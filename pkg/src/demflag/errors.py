"""Exception hierarchy shared by all modules."""


class DemflagError(ValueError):
    """Base class for every error raised by this package."""

    code = "error"


class ParseError(DemflagError):
    code = "parse_error"


class DomainError(DemflagError):
    code = "domain_error"


class LevelTooSmall(DemflagError):
    """The requested level is below the largest part of the partition."""

    code = "level_too_small"


class MaxPartExceedsLevel(DemflagError):
    code = "max_part_exceeds_level"


class EmptyPartition(DemflagError):
    code = "empty_partition"


class LargestPartMismatch(DemflagError):
    code = "largest_part_mismatch"


class SinkVertex(DemflagError):
    code = "sink_vertex"


class NotAVertex(DemflagError):
    code = "not_a_vertex"
