# %% A three-cell rule, its A-tensor and its two-cell reduction
import numpy as np

from lqca import Configuration, catalog, decide_unitarity
from lqca.reduce import build_a_tensor, decode_configuration, encode_configuration, reduce_neighborhood
from lqca.rulefile import format_rule
from lqca.simulate import apply_global

rule = catalog.sample_rule()
a = build_a_tensor(rule)
words = ["".join(w) for w in a.words()]

# %% Row y, column x; "." marks a null entry
layout = a.printed_layout()
print("      " + "  ".join(words))
for y, wy in enumerate(words):
    cells = []
    for x in range(a.dim):
        v = layout[y, x]
        cells.append(f"|{int(np.argmax(np.abs(v)))}>" if np.any(v) else " . ")
    print(wy, " ", " ".join(cells))

# %% Blocks of two cells become single symbols
red, enc = reduce_neighborhood(rule)
print(format_rule(red, comment=f"blocks of {enc.block_width}, shift {enc.shift}"))

# %% Same evolution, up to the recorded shift
c = Configuration({0: "1", 1: "1", 3: "1"}, quiescent="0")
direct = apply_global(rule, c)
via_blocks = apply_global(red, encode_configuration(enc, c))
for d, amp in via_blocks.items():
    back = decode_configuration(enc, d).shift(-enc.shift)
    print(back, amp, direct.amplitude(back))

print(decide_unitarity(rule).verdict.value, decide_unitarity(red).verdict.value)
