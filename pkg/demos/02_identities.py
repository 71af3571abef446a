"""Certify the reduction identities family by family and show what a certificate holds."""

import json

from jts_envelope.envelope import build, certify_corollary_identities, certify_lemma_identities
from jts_envelope.freealg import gen

ctx = build(3, 2)

G11, G12 = gen(1, 1), gen(1, 2)
print("NF(G11^3 - G11) =", ctx.nf(G11 ** 3 - G11))
print("NF(G12 G11 G11) =", ctx.nf(G12 * G11 * G11))

for cert in certify_lemma_identities(ctx) + certify_corollary_identities(ctx):
    status = "ok " if cert.passed else "BAD"
    print(f"{status} {cert.id:<16} {cert.instances_checked:>3} instances")

print("\none certificate in full:")
print(json.dumps(certify_lemma_identities(ctx)[1].to_json(timings=False), indent=2))
