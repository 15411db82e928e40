from .partitions import (
    EMPTY,
    Partition,
    PartSupport,
    make_partition,
    max_part_at_most,
    partitions_of,
)
from .series import Chart, Series, ser_arith, ser_coeff, ser_compose

__all__ = [
    "EMPTY",
    "Chart",
    "PartSupport",
    "Partition",
    "Series",
    "make_partition",
    "max_part_at_most",
    "partitions_of",
    "ser_arith",
    "ser_coeff",
    "ser_compose",
]
