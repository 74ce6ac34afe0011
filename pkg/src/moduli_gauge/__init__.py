"""moduli_gauge: desk-scale verification of counting and height bounds
for singular moduli.

Library layout:

* forms      -- discriminant decomposition, reduced-form enumeration,
                class numbers, form roots, root heights
* arith      -- omega, sigma_k, gcd2, F(Delta), E(Delta), Robin check
* jfun       -- certified j / j' / j'' evaluation, fundamental-domain
                reduction, inverse of j, growth gap, Im-sign classifier
* counting   -- exact neighborhood counts and the two explicit bounds
* heights    -- orbit heights of singular moduli, unit-orbit heights,
                the two lower bounds for h(j - alpha)
* effective  -- separation constants, Pen and M, the linear-forms
                constant, the height upper bound, the closing auxiliary
                functions and the final discriminant bound
* verify     -- brute-force oracles and property suites
* cli        -- the moduli-gauge command-line tool
"""

from .arith import ArithProfile, arith_profile, big_E, big_F, gcd2, omega, robin_check, sigma_k
from .counting import (
    CountReport,
    NeighborhoodQuery,
    cm_count,
    cm_count_full_scan,
    corollary_bound,
    count_report,
    lemma_bound,
    make_query,
)
from .effective import (
    AlphaProfile,
    BoundReport,
    C2Constant,
    SeparationData,
    Section4Report,
    build_alpha_profile,
    c2_constant,
    compute_periods,
    final_delta_bound,
    height_upper_bound,
    pen_and_M,
    section4_functions,
    separation_constants,
    t_orbit,
    verify_lin_log,
)
from .errors import (
    AlphaIsSingularModulus,
    CornerPoint,
    DomainError,
    HypothesisUnmet,
    MissingEmbeddingData,
    ModuliGaugeError,
    NearCriticalPoint,
    NoConvergence,
    NonDiscriminant,
    NotUnitConsistent,
    PrecisionInconclusive,
    PrecisionUnreachable,
    SingularCurve,
    ViolationFound,
)
from .forms import (
    FactoredDiscriminant,
    QuadraticForm,
    UHPoint,
    class_number,
    enumerate_reduced_forms,
    form_root,
    quadratic_height,
    validate_discriminant,
)
from .heights import (
    HeightEstimate,
    lower_bound_colmez,
    lower_bound_trivial,
    singular_modulus_height,
    unit_height_via_small_conjugates,
)
from .jfun import (
    EvalResult,
    JSeries,
    growth_gap,
    j_coefficients,
    j_double_prime,
    j_eval,
    j_inverse,
    j_prime,
    reduce_to_F,
    sign_of_im_j,
)

__version__ = "0.1.0"
