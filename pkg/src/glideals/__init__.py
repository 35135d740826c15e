"""Exact GF(2) engine for cycle-and-quadric ideals of graph monomials."""

from .gf2 import BitMatrix, BitVector, Echelon, in_rowspace, rref
from .glaction import (
    Derivation,
    Transposition,
    Transvection,
    apply_derivation,
    apply_generator,
    phi,
)
from .ideals import (
    BudgetExceededError,
    IdealEngine,
    IdealSpec,
    cycle_sum_functional,
    generators,
    graded_basis,
    graded_spanning_rows,
    member,
    proof_replay_dkk,
)
from .rings import (
    Monomial,
    Multidegree,
    Polynomial,
    PolynomialFormatError,
    cycle_monomial,
    cycle_structure,
    edge,
    edge_universe,
    enumerate_monomials,
    is_cycle_monomial,
    mono_mul,
    multidegree,
    paired_universe,
    plucker,
    poly_from_json,
    poly_mul,
    poly_to_json,
    standard_cycle,
)
from .verify import (
    VerificationReport,
    dimension_stats,
    verify_all,
    verify_dkk,
    verify_phi_kernel,
    verify_square_containment,
    verify_stability,
    verify_tail_containment,
    verify_trivalent_lemma,
)

__version__ = "0.1.0"
