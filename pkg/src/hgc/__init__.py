"""Convolution algebras of finite groupoids acting on finite measured spaces."""

from .category import (
    Arrow,
    NonComposableError,
    convolve,
    fiber_sum,
    find_unit,
    i_norm,
    involute,
    linear_combine,
)
from .examples import build_named, double_coset_space, hecke_pair, named_example, subgroupoid_quotient
from .groupoid import (
    FiniteGroupoid,
    GroupTable,
    ValidationError,
    ValidationReport,
    cyclic_group,
    group_as_groupoid,
    pair_groupoid,
    symmetric_group,
    transformation_groupoid,
    validate_groupoid,
    wide_subgroupoid_check,
)
from .gspace import (
    FiniteGSpace,
    MeasuredGSpace,
    OrbitSpace,
    is_free,
    is_proper,
    orbit_space,
    self_identification,
    validate_gspace,
    validate_measure,
)
from .hypergroupoid import HypergroupoidTable, build_hypergroupoid, detect_hypergroup, is_groupoid_like
from .representations import (
    GroupoidFunction,
    SectionVector,
    WeightedMatrix,
    fullness_rank,
    ideal_check,
    inner_groupoid,
    inner_space,
    is_positive,
    left_action,
    reduced_norm,
    rep_matrix,
    right_action,
)
from .scalar import GaussQ

__version__ = "0.1.0"
