"""Energy/throughput design-space exploration for hybrid dataflow actors.

Periods and energies are ``fractions.Fraction``; decision vectors are bit
strings, one character per SDF actor (``"1"`` = self-powered).
"""

from ._hopskip import (
    DeadlockError,
    DegenerateError,
    DimensionMismatchError,
    Graph,
    HopskipError,
    InvalidArgumentError,
    IoError,
    ParseError,
    PeriodTooShortError,
    SchemaError,
    TooManyGroupsError,
    compare_fronts,
    explore,
    generate,
    hypervolume,
    load_graph,
    min_energy_config,
    min_period,
    parse_graph,
    pareto_filter,
    schedule,
    total_energy,
    verify_schedule,
    weakly_covers,
)

__all__ = [name for name in dir() if not name.startswith("_")]
