"""
Koszul tables and the Hodge numbers h^{p,1}
===========================================

Bott's theorem on Gr(3, 10) term by term, then the spectral sequence.
"""

# %%
from grasscalc.bott import (
    assemble_restriction,
    bott_cohomology,
    e_tensor_q_dual,
    hodge_numbers_omega,
    koszul_e1_table,
    sym_e,
)
from grasscalc.grassmann import GrassSpec
from grasscalc.symfunc import wedge_of_sym

G = GrassSpec(3, 10)

# %%
for k in range(4):
    print(f"wedge^{k} Sym^3 =", wedge_of_sym(k, 3, 3))

# %%
print(bott_cohomology(G, (), (10, 1, 1)))
print(bott_cohomology(G, (), (3, 0, -3)))

# %%
sym3 = koszul_e1_table(G, sym_e(G, 3))
cot = koszul_e1_table(G, e_tensor_q_dual(G))
print("Sym^3 E:", {c: d for c, d in sym3.dims().items() if d})
print("E (x) Q^*:", {c: d for c, d in cot.dims().items() if d})

# %%
report = assemble_restriction(sym3, dim_x=11)
print(report.exact())
for line in report.assumptions + report.forced:
    print(" -", line)

# %%
hodge = hodge_numbers_omega(2)
print({f"h^{{{p},1}}": v for p, v in sorted(hodge.numbers.items())})
