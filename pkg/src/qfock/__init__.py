"""Exact-arithmetic characters and operator checks for constrained
partition-tuple modules."""

from qfock.qseries import QSeries, euler_inverse, pochhammer, pochhammer_inverse
from qfock.partitions import (
    TailedPartition,
    TupleConstraint,
    VacuumPattern,
    admissible_by_degree,
    enumerate_by_degree,
    enumerate_finitized,
    interleave,
    is_kr_admissible,
    is_member,
    satisfies_pair,
    split_interleaved,
    vacuum_partition,
)

__all__ = [
    "QSeries",
    "euler_inverse",
    "pochhammer",
    "pochhammer_inverse",
    "TailedPartition",
    "TupleConstraint",
    "VacuumPattern",
    "admissible_by_degree",
    "enumerate_by_degree",
    "enumerate_finitized",
    "interleave",
    "is_kr_admissible",
    "is_member",
    "satisfies_pair",
    "split_interleaved",
    "vacuum_partition",
]
