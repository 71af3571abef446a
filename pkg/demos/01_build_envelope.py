"""Present the envelope of 2x3 matrices, complete it, and count normal words."""

import time

from jts_envelope.envelope import build, ideal_generators
from jts_envelope.freealg import format_word
from jts_envelope.rewrite import format_system

p, q = 2, 3
print(f"{len(ideal_generators(p, q))} defining relations, "
      f"{len(ideal_generators(p, q, prune=True))} after removing outer-symmetric duplicates")

t0 = time.perf_counter()
ctx = build(p, q)
print(f"completed in {time.perf_counter() - t0:.2f}s: {len(ctx.system)} rules, status {ctx.system.status}")
print(f"longest rule lead has degree {max(len(l) for l in ctx.system.leads)}")

print("\nfirst rules:")
for line in format_system(ctx.system).splitlines()[:8]:
    print("  ", line)

print(f"\n{ctx.dimension} normal words, expected (p+q)^2 = {(p + q) ** 2}:")
for w in ctx.basis.words:
    print("  ", format_word(w))
