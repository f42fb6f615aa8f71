"""Exact homology-level calculus of Gromov invariants for symplectic 4-manifolds.

The package works entirely with integer and rational arithmetic.  A
manifold enters as a :class:`ManifoldModel`: an intersection lattice with
a canonical class and area form, a set of exceptional sphere classes, and
small tables of known curve counts.  On top of that the modules compute
point budgets, adjunction genera, exceptional-sphere reductions,
decomposition enumerations, multiply-covered-torus generating functions,
spherical invariants, and fiber-sum ledgers.
"""

from .errors import (
    AssignmentAmbiguityWarning,
    ClassParseError,
    DomainError,
    InvalidCandidateError,
    LatticeMismatchError,
    ModelFileError,
    NotInExceptionalSetError,
    ParityError,
    PreconditionError,
    ReductionConsistencyWarning,
    UnknownGr0Error,
    UnknownPresetError,
    UnknownSphereCountError,
)
from .fibersum import (
    EllipticFiberCount,
    Piece,
    base_pieces,
    fiber_gr_table,
    glue,
    gr_elliptic_fiber,
)
from .invariants import (
    NegClassVerdict,
    ReduceResult,
    c1,
    classify_negative,
    ell_g,
    genus_embedded,
    in_forward_cone,
    is_good_class,
    k,
    k_prime,
    light_cone_pair_check,
    m_e,
    moduli_dimension,
    reduce_multicovers,
)
from .lattice import (
    PRESET_NAMES,
    HClass,
    IntersectionLattice,
    ManifoldModel,
    b2_plus,
    format_class,
    omega_area,
    pair,
    parse_class,
    preset,
)
from .model_io import load_model
from .report import Check, Report
from .spherical import (
    SphereConfig,
    assignment_factor,
    embedded_sphere_rule,
    enumerate_sphere_configs,
    gr_s,
    k_for,
)
from .structure import (
    Component,
    Configuration,
    Decomposition,
    check_kmin_constraints,
    enumerate_decompositions,
    gromov_via_decompositions,
    verify_good_configuration,
    verify_kprime_configuration,
)
from .torus_series import (
    ALL_LABELS,
    TorusLabel,
    TruncSeries,
    f_series,
    gr_torus_class,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_LABELS",
    "AssignmentAmbiguityWarning",
    "Check",
    "ClassParseError",
    "Component",
    "Configuration",
    "Decomposition",
    "DomainError",
    "EllipticFiberCount",
    "HClass",
    "IntersectionLattice",
    "InvalidCandidateError",
    "LatticeMismatchError",
    "ManifoldModel",
    "ModelFileError",
    "NegClassVerdict",
    "NotInExceptionalSetError",
    "PRESET_NAMES",
    "ParityError",
    "Piece",
    "PreconditionError",
    "ReduceResult",
    "ReductionConsistencyWarning",
    "Report",
    "SphereConfig",
    "TorusLabel",
    "TruncSeries",
    "UnknownGr0Error",
    "UnknownPresetError",
    "UnknownSphereCountError",
    "assignment_factor",
    "b2_plus",
    "base_pieces",
    "c1",
    "check_kmin_constraints",
    "classify_negative",
    "ell_g",
    "embedded_sphere_rule",
    "enumerate_decompositions",
    "enumerate_sphere_configs",
    "f_series",
    "fiber_gr_table",
    "format_class",
    "genus_embedded",
    "glue",
    "gr_elliptic_fiber",
    "gr_s",
    "gr_torus_class",
    "gromov_via_decompositions",
    "in_forward_cone",
    "is_good_class",
    "k",
    "k_for",
    "k_prime",
    "light_cone_pair_check",
    "load_model",
    "m_e",
    "moduli_dimension",
    "omega_area",
    "pair",
    "parse_class",
    "preset",
    "reduce_multicovers",
    "verify_good_configuration",
    "verify_kprime_configuration",
]
