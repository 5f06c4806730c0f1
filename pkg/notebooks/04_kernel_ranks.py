"""
Kernel rank profiles
====================

A k-regular sequence has a finitely generated kernel, the subsequences
a(k^e n + i). Stacking truncated kernel rows and taking exact ranks gives
evidence, never proof, about regularity.
"""

# %%
from floorlog import parse_alpha, rank_profile
from floorlog.kernel import truncation_scan

for text in ["0", "1/2"]:
    prof = rank_profile(2, parse_alpha(text), 8, 4096, require_stability=False)
    print(text, prof.ranks, "stabilized" if prof.stabilized else "growing")

# %%
# A genuine plateau survives longer windows. The truncated rank for alpha=1/2
# levels off as well, but only because a window of length L sees about
# log2(L) distinct steps; compare the final ranks across lengths.
for text in ["0", "1/2"]:
    scan = truncation_scan(2, parse_alpha(text), 7, [256, 1024, 4096])
    print(text, scan["final_ranks"], "plateau stable:", scan["plateau_stable"])
