"""Map the envelope into (p+q)x(p+q) matrices and confirm it is an isomorphism."""

from jts_envelope.envelope import build, center_element
from jts_envelope.freealg import gen
from jts_envelope.representation import (
    certify_theta_homomorphism,
    evaluate,
    isomorphism_certificate,
    theta,
)

p, q = 2, 4
print("theta(E[1,2]) =")
for row in theta(1, 2, p, q).to_list():
    print("  ", " ".join(row))

hom = certify_theta_homomorphism(p, q)
print(f"\nhomomorphism on {hom.instances_checked} basis triples: {hom.passed}")

ctx = build(p, q)
iso = isomorphism_certificate(ctx)
print(f"well defined {iso.well_defined}, surjective {iso.surjective}, "
      f"dim {iso.dimension} vs {iso.expected_dimension}: isomorphism {iso.overall}")

x = gen(1, 1) * gen(2, 1)
print("\nG11 G21 evaluates to unit support", evaluate(x, p, q).support())
e = center_element(ctx, 2, 2)
print("e evaluates to the identity:", evaluate(e, p, q).support() == [(i, i) for i in range(1, p + q + 1)])
