"""Exact tools for increasing events on the Boolean cube: positive association,
the lattice condition, independence criteria, and Bernoulli realizations."""

from .analysis import (
    AbcWitness,
    HarrisResult,
    SahiReport,
    abc_scan,
    harris_criterion,
    pa_check,
    sahi_polynomial,
    sahi_scan,
    sahi_value,
)
from .cube import (
    Antichain,
    CoordSet,
    Event,
    IncreasingEvent,
    from_antichain,
    intersect,
    minimal_elements,
    union,
    up_closure,
    z_set,
)
from .enumeration import EnumConfig, count_increasing, enumerate_increasing
from .fui import (
    FuiRealization,
    ThresholdTable,
    build_thresholds,
    discretize,
    footnote2_fixture,
    pushforward,
    random_fui,
)
from .measures import (
    FkgViolation,
    ProductMeasure,
    TableMeasure,
    check_fkg,
    condition,
    fixed_point_measure,
    is_independent,
    is_positively_correlated,
    prob,
)

__version__ = "0.1.0"
