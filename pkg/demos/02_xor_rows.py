# %% Xor is injective but not surjective; Xor' fixes that with a separate quiescent symbol
from lqca import catalog, decide_unitarity
from lqca.rows import border_vectors, build_n_matrices, full_stability_fast_path, sum_product

xor = catalog.xor()
nm = build_n_matrices(xor)
print("N =\n", nm.N)
bv = border_vectors(nm)
print("l =", bv.l, " r =", bv.r, " (Σl)(Σr) =", sum_product(bv), " vs |qΣ| =", xor.k)

# %% Column test passes, row test fails
for st in decide_unitarity(xor).stages:
    print(f"{st.name:<15} {st.passed}")

# %% Xor' never produces q from two non-quiescent cells, so <q|N 1 N|q> decides rows
xp = catalog.xor_prime()
nm = build_n_matrices(xp)
print("N =\n", nm.N)
print(full_stability_fast_path(xp, nm))
print(decide_unitarity(xp).verdict.value)
