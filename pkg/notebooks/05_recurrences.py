"""
Guessing recurrences
====================

Three bounded detectors look for structure: constant-coefficient
recurrences, rational generating functions and recurrences with polynomial
coefficients. A negative answer only means nothing was found within the
bounds.
"""

# %%
from floorlog import parse_alpha, guess_linear_recurrence, series_to_rational
from floorlog import guess_polynomial_recurrence, exact_series
from floorlog.series import coeff_table, g_coefficients

b0 = coeff_table(2, parse_alpha("0"), 12).b[1:]
print(guess_linear_recurrence(b0, 4))

# %%
# When k^alpha is rational the block sums have a rational series, and
# fifteen terms are enough to find it.
alpha = parse_alpha("log(3)")
fit = series_to_rational(coeff_table(2, alpha, 14).b)
print(fit)
print(fit == exact_series(2, alpha))

# %%
# For alpha=1/2 nothing turns up within the stated bounds.
half = parse_alpha("1/2")
print(guess_linear_recurrence(coeff_table(2, half, 59, "closed").b, 20))
print(series_to_rational(coeff_table(2, half, 59, "closed").b, 20))
print(guess_polynomial_recurrence(g_coefficients(2, half, 64).g, 3, 3))
