"""nlcx: a workbench for sequence complexity over finite fields.

Generate inversive and Hermitian-curve sequences, compute their
nonlinear, total-degree, linear and maximum-order complexities exactly,
verify closed-form lower bounds, and run counting and Monte Carlo
experiments.
"""

__version__ = "0.1.0"

from .finite_field import (
    Field,
    FieldElement,
    element_order,
    field_of_order,
    in_cyclic_subgroup,
    is_prime,
    make_field,
    prime_power,
)
from .generators import (
    Sequence,
    SplitMix64,
    child_seed,
    default_periodic_c,
    inversive_finite,
    inversive_periodic,
    least_period,
    random_sequence,
    read_sequence,
    sequence_from_text,
    sequence_to_text,
    write_sequence,
)
from .complexity import (
    ComplexityReport,
    FeedbackPolynomial,
    GuardExceeded,
    brute_force_complexity,
    complexity_at_most,
    linear_complexity,
    linear_profile,
    max_order_complexity,
    monomial_count,
    monomial_exponents,
    nonlinear_complexity,
    profile,
    total_degree_complexity,
)
from .hermitian import (
    INFINITY,
    CurvePoint,
    HermitianCurve,
    OrbitTable,
    PoleFunction,
    apply_automorphism_to_h,
    curve_points,
    eval_h,
    hermitian_sequence,
    orbit_decomposition,
    valuation_at_infinity,
)
from .bounds import (
    BoundCheck,
    bound_hermitian_L,
    bound_hermitian_N,
    bound_inversive,
    bound_periodic,
    verify,
)
from .stats import (
    CountResult,
    ProfileRow,
    ProfileStats,
    empirical_constant,
    exhaustive_count,
    monte_carlo_profile,
)

__all__ = [name for name in dir() if not name.startswith("_")]
