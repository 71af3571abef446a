"""Certificates are not vacuous: broken presentations are caught, but dropping
a single relation is not enough to break anything."""

from jts_envelope.envelope import ideal_generators, present
from jts_envelope.freealg import gen
from jts_envelope.representation import isomorphism_certificate

p, q = 2, 3
gens = ideal_generators(p, q, prune=True)


def report(label, ctx):
    iso = isomorphism_certificate(ctx)
    print(f"{label:<34} status={ctx.system.status:<10} dim={ctx.dimension}  isomorphism={iso.overall}")


bad = list(gens)
bad[0] = bad[0] + gen(1, 1)
report("perturbed coefficient", present(p, q, bad))
report("first 10 relations only", present(p, q, gens[:10], max_degree=6))

# every single relation is a consequence of the others
same = 0
for n in range(0, len(gens), 25):
    ctx = present(p, q, gens[:n] + gens[n + 1:])
    same += ctx.complete and ctx.dimension == (p + q) ** 2
    report(f"drop relation {n}", ctx)
print(f"{same} of {len(range(0, len(gens), 25))} single drops leave the envelope unchanged")
