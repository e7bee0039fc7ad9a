"""
Counting skew braces of small order
===================================

Enumerate every skew brace up to isomorphism for a few orders and look at
how many are symmetric and how many fall outside I_2.
"""

from skewbrace.census import census

for n in (4, 6, 8, 12):
    rep = census(n)
    print(rep.summary())
    print("   by additive group:", rep.by_additive())

# a single row carries the full classification
row = census(8).rows[-1]
print(row.additive, "->", row.multiplicative, "symmetric" if row.symmetric else "not symmetric")
print("nilpotency:", row.nilpotency)
