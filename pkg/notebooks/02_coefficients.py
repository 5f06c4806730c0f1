"""
Block sums: direct summation against the closed form
====================================================

b(m) sums a(n) over one digit-length block. Summing is exponential in m,
while the closed form needs only one exact ceiling of a power of k.
"""

# %%
from floorlog import parse_alpha, b_bruteforce, b_closed_form, rational_part
from floorlog.series import coeff_table, floor_term

alpha = parse_alpha("1/2")
for m in range(1, 10):
    print(m, b_bruteforce(2, alpha, m), b_closed_form(2, alpha, m))

# %%
# The closed form keeps going long after summation becomes impractical.
print(coeff_table(2, alpha, 40, "closed").b[-3:])

# %%
# Each coefficient splits into a rational generating function plus a floor term.
rp = rational_part(2, alpha)
print(rp)
coeffs = rp.coefficients(10)
for m in range(1, 10):
    print(m, coeffs[m], floor_term(2, alpha, m), coeffs[m] + floor_term(2, alpha, m))
