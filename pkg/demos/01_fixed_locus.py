"""
Class of the fixed locus of the Voisin map
==========================================

Euler classes on X x Gr(r+2, n+1), pushed forward to X by Schubert calculus.
"""

# %%
from grasscalc.chowring import chern_of_sym, euler_tensor
from grasscalc.pipelines import class_coefficients, fixed_locus_class, fixed_locus_upstairs

# %%
# Chern classes of Sym^2 of a rank-3 bundle, degree by degree
for i, piece in enumerate(chern_of_sym(2, 3), start=1):
    print(f"S{i} =", piece)

# %%
# e(E^* (x) (V - F)) for r = 2, keeping c-degree <= 3
e1 = euler_tensor(3, 6, "c", "d", a_cutoff=3)
for key, block in sorted(e1.collect(["c1", "c2", "c3"]).items(), reverse=True):
    print(key, block)

# %%
# the r = 1 run fixes the sign conventions before anything else is trusted
print("r=1:", class_coefficients(fixed_locus_class(1)))

# %%
upstairs = fixed_locus_upstairs(2).collect(["c1", "c2", "c3"])
print("c1^3 block:", upstairs[(3, 0, 0)])
print("r=2:", class_coefficients(fixed_locus_class(2)))

# %%
# the same pipeline with the alternating quotient sign gives a different r=1 answer
print("r=1, d_i -> (-1)^i s(i):", class_coefficients(fixed_locus_class(1, quot_sign=-1)))
