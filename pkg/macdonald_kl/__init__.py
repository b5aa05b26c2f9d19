# Copyright 2022 Ben Kehoe
#
# Licensed under the Apache License, Version 2.0 (the "License"). You
# may not use this file except in compliance with the License. A copy of
# the License is located at
#
# https://www.apache.org/licenses/LICENSE-2.0
#
# or in the "license" file accompanying this file. This file is
# distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF
# ANY KIND, either express or implied. See the License for the specific
# language governing permissions and limitations under the License.

__version__ = "0.2.0"  # update here and pyproject.toml

from .errors import (
    MacdonaldKLError,
    UnsupportedType,
    InvalidJob,
    NotAntiDominant,
    DivisionByZero,
    UnsupportedDenominator,
    PoleAtLimit,
    TruncationTooSmall,
    ZeroNormalizer,
    RecursionFailure,
    CacheSchemaViolation,
    EXIT_INVALID_INPUT,
    EXIT_NO_FINITE_VALUE,
    EXIT_INTERNAL,
)

from .coeffs import (
    ParamMonomial,
    ParamPoly,
    CoeffFraction,
    Indeterminate,
    ParameterScale,
    TruncatedSeries,
    limit_at_zero,
    is_polynomial_in,
    substitute_t,
    substitute_t_value,
    has_integral_t_powers,
    collapse_t,
    expand_in_q_inverse,
)

from .serialization import (
    JSONSerializationConfig,
    set_default_json_serialization_config,
    get_default_json_serialization_config,
    json_dump,
    CompiledFastJSONSchema,
    validate_result_document,
    result_document,
    ResultCache,
)

from .roots import (
    Weight,
    AffineRoot,
    RootSystemData,
    build_root_system,
    parse_system,
    enumerate_affine_roots_negative_on,
    iter_weight_box,
)

from .weyl import (
    FiniteWeylElement,
    ExtendedWeylElement,
    AffineWord,
    WeightOrbitData,
    simple_reflection,
    omega_element,
    finite_longest,
    affine_dot_action,
    level_zero_action,
    descend_to_alcove,
    finite_descent_word,
    stabilizer_longest,
    orbit_data,
    alcove_interval,
    bruhat_leq_weights,
    bruhat_leq,
    bruhat_lower_set,
    bruhat_interval_in_orbit,
    affine_inversion_set,
)

from .heckeops import (
    GroupAlgebraElement,
    Side,
    apply_Ti,
    apply_Ti_inverse,
    apply_T01,
    apply_T02,
    apply_T03,
    apply_X,
    apply_generator,
    apply_word,
    apply_omega,
    apply_Tw,
    apply_Y,
    spectral_q,
    spectral_t,
    chi,
    xi,
    intertwiner_G,
    intertwiner_G_tilde,
    normalized_intertwiner_I,
    zero_hecke_N,
    N_prime,
    demazure,
    apply_N_word,
    apply_N_prime_word,
    apply_demazure_word,
    kappa,
    varsigma,
    iota,
    act_finite,
)

from .macdonald import (
    SpectralVector,
    q_monomial,
    t_monomial,
    normalizer_e,
    MacdonaldResult,
    compute_E,
    normalized_E,
    compute_P,
    compute_P_normalized,
    SPEC_TAGS,
    specialize,
    limit_sequence,
    invert_t,
    E_infinity_direct,
    E_infinity_via_alcove,
    E_tilde_zero_direct,
    E_zero_direct,
    E_zero_zero_direct,
    E_infinity_infinity_demazure,
    w0_E_infinity_t_inverse_direct,
    f_normalizer,
    E_tilde,
    E_tilde_chain,
    PInfinityReport,
    P_infinity_identities,
    weyl_character_oracle,
    dominant_conjugate,
    degenerate_pairing_t,
    PairingConfig,
    set_default_pairing_config,
    get_default_pairing_config,
    TruncatedKernel,
    truncated_kernel,
    cherednik_pairing,
)

from .klbases import (
    BasisKind,
    BasisFamily,
    standard_basis,
    dual_standard_basis,
    basis_family,
    expand_triangular,
    r_polynomials,
    KLPolynomial,
    CanonicalBasisResult,
    canonical_basis,
    verify_antidominant_character,
    kl_pairing_extraction,
    CONJECTURE_MARKER,
    ConjectureReport,
    conjecture_report,
    kl_involution_check,
    HeckeElement,
    kl_element,
    lemma_factorization,
    SupportObservation,
    support_observation,
)

from .verification import DEFAULT_SYSTEMS, SuiteResult, SUITES, expand_suites, run_suite
