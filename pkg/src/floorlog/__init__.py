"""Exact experiments on a(n) = floor(alpha + log_k(n+1)) and its generating series."""

__version__ = "0.1.0"

from .alpha import (  # noqa: E402
    AlphaSpec,
    DecimalInterval,
    KAlphaClass,
    classify_k_alpha,
    floor_alpha_plus_log,
    floor_and_frac_alpha,
    floor_k_power,
    parse_alpha,
)
from .kernel import KernelIndex, RankProfile, kernel_row, rank_profile, rank_profile_generic  # noqa: E402
from .recurrence import (  # noqa: E402
    detect_period,
    guess_linear_recurrence,
    guess_polynomial_recurrence,
    series_to_rational,
)
from .sequence import grouped_by_exponent, sequence_terms, tau, tau_length  # noqa: E402
from .series import (  # noqa: E402
    b_bruteforce,
    b_closed_form,
    b_special_case_k2_half,
    commutative_projection,
    digit_oracle,
    exact_series,
    g_coefficients,
    nc_series_terms,
    rational_part,
    univariate_specialize,
)
