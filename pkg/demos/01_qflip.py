# %% Qflip: a unitary rule whose rows have unboundedly many antecedents
import numpy as np

from lqca import Configuration, catalog, decide_unitarity
from lqca.oracle import oracle_row_norm
from lqca.simulate import apply_global, overlap_after_step

rule = catalog.qflip()
print(catalog.rule_text("qflip"))

# %% One step from a single p
for conf, amp in sorted(apply_global(rule, Configuration({0: "p"})).items()):
    print(f"{amp.real:+.6f}  {conf}")

# %% Runs of n p's all reach the single p, with amplitude 2^(-n/2)
target = Configuration({0: "p"})
for n in range(1, 8):
    run = Configuration({i: "p" for i in range(-n + 1, 1)})
    print(n, overlap_after_step(rule, run, target), 2 ** (-n / 2))

# %% So the row of the single p only reaches norm 1 in the limit
sums = oracle_row_norm(rule, target, 12)
print(np.round(sums, 6))

# %% The decision procedure never enumerates anything
report = decide_unitarity(rule)
print(report.verdict.value)
print(report.to_json(indent=2))
