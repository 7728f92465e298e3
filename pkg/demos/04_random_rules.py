# %% Random two-symbol rules: algebraic verdicts against brute force on a finite interval
import collections
import time

import numpy as np

from lqca import columns_orthogonal, decide_unitarity
from lqca.oracle import oracle_columns_orthonormal, random_rule

rng = np.random.default_rng(1)
rules = [random_rule(2, rng) for _ in range(300)]

# %%
t0 = time.perf_counter()
agree = sum(columns_orthogonal(r).orthogonal == oracle_columns_orthonormal(r, (0, 3)).orthonormal for r in rules)
print(f"agreement {agree}/{len(rules)} in {time.perf_counter() - t0:.2f}s")

# %%
print(collections.Counter(decide_unitarity(r).verdict.value for r in rules))
