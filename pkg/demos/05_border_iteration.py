# %% Border vectors are least fixed points reached by monotone iteration from e_q
import numpy as np

from lqca import catalog
from lqca.rows import border_vectors, build_n_matrices

N = build_n_matrices(catalog.qflip()).N
v = np.array([1.0, 0.0])
for h in range(8):
    print(h, (np.linalg.matrix_power(N.T, h) @ v).round(6))

# %% Converged values and the iteration count used
bv = border_vectors(build_n_matrices(catalog.qflip()))
print(bv.to_dict())
