"""Build the matrix units, check their multiplication table, and find the unit element."""

from jts_envelope.envelope import (
    build,
    center_element,
    centralizer,
    certify_center,
    certify_unit_table,
    matrix_units,
    rank_over_q,
)
from jts_envelope.freealg import format_poly

ctx = build(2, 3)
units = matrix_units(ctx)
n = units.n
print(f"{n * n} units A[i,k] for n = p + q = {n}")
for ik in [(1, 1), (1, 3), (3, 1), (4, 5)]:
    print(f"  A{list(ik)} = {format_poly(units.raw[ik])}")
    print(f"     NF = {format_poly(units.nf[ik])}")

for cert in certify_unit_table(ctx, units):
    print(f"{cert.id}: {'pass' if cert.passed else 'FAIL'} ({cert.instances_checked} checks)")
print("rank of the unit normal forms:", rank_over_q(list(units.nf.values())))

e = center_element(ctx, units.j, units.t)
print("\ncentral idempotent e, normal form:", format_poly(ctx.nf(e)))
for cert in certify_center(ctx, units, e):
    print(f"{cert.id}: {'pass' if cert.passed else 'FAIL'}")
print("centralizer dimension:", len(centralizer(ctx)))
