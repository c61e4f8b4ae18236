"""
First-order action at a fixed point
===================================

A random cubic containing a fixed r-plane, its tangent space, and the
characteristic polynomial of the differential over F_p.
"""

# %%
from grasscalc.jetcheck import check_seed, jet_matrix, sample_cubic
from grasscalc.linalg import charpoly

# %%
c = sample_cubic(1, seed=0)
J = jet_matrix(c)
print("tangent dimension:", J.size, "normal block:", J.normal_size)
for row in J.matrix:
    print([x if x < c.field.p // 2 else x - c.field.p for x in row])

# %%
print("char poly (low to high):", charpoly(J.matrix, c.field))

# %%
for r in (1, 2):
    reports = [check_seed(r, s) for s in range(5)]
    print(r, [rep.passed for rep in reports])
