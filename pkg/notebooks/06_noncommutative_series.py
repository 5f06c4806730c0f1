"""
Words, specialization and commutative projection
================================================

Attaching a(n) to the word tau(n) gives a noncommutative series. Letting
the letters commute, or collapsing them to one variable, recovers coarser
series.
"""

# %%
from floorlog import parse_alpha, nc_series_terms, univariate_specialize, commutative_projection
from floorlog.series import bivariate_projection_expansion

table = nc_series_terms(2, parse_alpha("1/2"), 3)
for word, coeff in table.entries.items():
    print(f"{str(word) or '(empty)':>6} {coeff}")
print(univariate_specialize(table).b)

# %%
# For alpha=0 and k=2 the commuting image has a closed rational form in two
# variables. Compare a few coefficients [x0^i x1^j] with its expansion.
proj = commutative_projection(nc_series_terms(2, parse_alpha("0"), 8))
expansion = bivariate_projection_expansion(8)
for key in sorted(expansion)[:10]:
    print(key, proj.get(key, 0), expansion[key])
