"""
Digits of the floor-term transform
==================================

The differences g(m) = F(m+1) - k F(m) of the floor terms F(m) are base-k
digits of a single real number y. Whether y is rational decides everything.
"""

# %%
from floorlog import parse_alpha, classify_k_alpha, g_coefficients, digit_oracle
from floorlog.recurrence import detect_period

for text in ["log(3)", "1/2", "1", "1/2+log(5/3)"]:
    alpha = parse_alpha(text)
    g = g_coefficients(2, alpha, 64).g
    same = g == digit_oracle(2, alpha, 64)
    rep = detect_period(g, 64, max_span=20)
    print(f"{text:>14}  {classify_k_alpha(2, alpha)!s:<12} oracle agrees={same}  "
          f"period={(rep.preperiod, rep.period) if rep.found else None}")
    print("               ", "".join(map(str, g[:48])))

# %%
# In base 10 the digits are the usual decimal ones: 10^(1/2) gives 4 - sqrt 10.
print("".join(map(str, g_coefficients(10, parse_alpha("1/2"), 30).g)))
