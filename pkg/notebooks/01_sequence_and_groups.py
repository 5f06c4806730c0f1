"""
The sequence a(n) and its exponent groups
=========================================

a(n) = floor(alpha + log_k(n+1)) is a step function of n. Every decision
below is made with exact integers, so the step positions are exact too.
"""

# %%
# First terms for k=2, alpha=1/2, and the indices where a(n) jumps.
from floorlog import parse_alpha, sequence_terms, grouped_by_exponent, tau
from floorlog.sequence import thresholds

alpha = parse_alpha("1/2")
print(sequence_terms(2, alpha, 0, 16).values)
print(thresholds(2, alpha, 0, 64))

# %%
# Grouping n by its number of base-k digits gives the blocks k^(m-1) <= n < k^m.
# Their sums are the coefficients b(m) studied in the next demo.
for m, vals in grouped_by_exponent(2, alpha, 4):
    print(m, "".join(map(str, vals)), sum(vals))

# %%
# Each n also names a word over the digit alphabet, least significant first.
for n in range(1, 8):
    print(n, tau(2, n).letters())

# %%
# Alpha may carry a logarithm; log(3) is read in whatever base k is in use.
print(sequence_terms(3, parse_alpha("1/2+log(5/3)"), 0, 12).values)
