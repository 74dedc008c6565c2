"""Twisted holomorphic forms and Pfaff systems on diagonal Hopf manifolds."""

from .analysis import (
    CompactLeaf,
    CoordinateStratum,
    PfaffReport,
    ProbabilisticVerdict,
    analyze,
    check_equivariance,
    distribution_involutive,
    enumerate_regular_systems,
    is_decomposable,
    is_integrable,
    is_regular,
    recover_character,
    scan_characters,
    singular_locus,
    torus_invariant,
)
from .errors import (
    DegenerateGenerators,
    DimensionMismatch,
    GeneralResonantUnsupported,
    HopfPfaffError,
    InvalidInput,
    NotMonomialCharacter,
    SymbolicModeUnsupported,
    SymbolicResonantUnsupported,
    Unsupported,
    WrongClass,
    ZeroForm,
)
from .exterior import Gaussian, KForm, Poly, PolyVectorField, dz, ext_d, interior, lie_bracket, pullback_f, wedge
from .sections import (
    GeneralSection,
    MonomialSolution,
    SectionBasis,
    SectionProblem,
    brute_force_kernel,
    general_section,
    p0_apply,
    solve_sections,
    validate_character,
)
from .spectrum import (
    Character,
    HopfClass,
    RelationLattice,
    Spectrum,
    character_from_exponents,
    character_from_value,
    classify,
    compute_relation_lattice,
    lattice_member,
)

__version__ = "0.1.0"
