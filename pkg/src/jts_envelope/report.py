"""Run certification suites over a built envelope and stream the results."""

from __future__ import annotations

import json
import time
from typing import Iterator, List, Sequence, Union

from .envelope import (
    Certificate,
    EnvelopeContext,
    build,
    center_element,
    certify_center,
    certify_choice_independence,
    certify_corollary_identities,
    certify_lemma_identities,
    certify_quotient_consistency,
    certify_unit_table,
    certify_universality,
    matrix_units,
)
from .representation import IsoCertificate, center_image, certify_theta_homomorphism, isomorphism_certificate

__all__ = ["SUITES", "run_suites", "verify", "to_json_line", "to_text_line"]

SUITES = ("lemma", "corollary", "units", "center", "iso")

Record = Union[Certificate, IsoCertificate]


def run_suites(
    ctx: EnvelopeContext,
    suites: Sequence[str] = SUITES,
    seed: int = 0,
    samples: int = 20,
) -> Iterator[Record]:
    """Yield certificates one at a time, in a fixed order."""
    unknown = set(suites) - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suites: {sorted(unknown)}")
    yield certify_quotient_consistency(ctx)
    yield certify_universality(ctx, samples=samples, seed=seed)
    if "lemma" in suites:
        yield from certify_lemma_identities(ctx)
    if "corollary" in suites:
        yield from certify_corollary_identities(ctx)
    units = None
    if {"units", "center", "iso"} & set(suites):
        units = matrix_units(ctx)
    if "units" in suites:
        yield from certify_unit_table(ctx, units)
        yield from certify_choice_independence(ctx)
    if "center" in suites:
        e = center_element(ctx, units.j, units.t)
        yield from certify_center(ctx, units, e)
        yield center_image(ctx, e)[1]
    if "iso" in suites:
        yield certify_theta_homomorphism(ctx.p, ctx.q)
        yield isomorphism_certificate(ctx, units)


def verify(
    p: int,
    q: int,
    max_degree: int = 8,
    suites: Sequence[str] = SUITES,
    allow_unproven: bool = False,
    seed: int = 0,
) -> tuple:
    """Build and run every selected suite; returns ``(ctx, records)``."""
    ctx = build(p, q, max_degree=max_degree, allow_unproven=allow_unproven)
    return ctx, list(run_suites(ctx, suites, seed=seed))


def summary(ctx: EnvelopeContext, records: List[Record], elapsed_s: float = None) -> dict:
    out = dict(ctx.summary())
    failed = [r.to_json()["id"] for r in records if not r.passed]
    dim_ok = ctx.dimension == (ctx.p + ctx.q) ** 2 or ctx.allow_unproven
    out["certificates"] = len(records)
    out["failed"] = failed
    out["result"] = "pass" if not failed and dim_ok else "fail"
    if elapsed_s is not None:
        out["elapsed_s"] = round(elapsed_s, 3)
    return out


def to_json_line(record: Record, timings: bool = True) -> str:
    return json.dumps(record.to_json(timings), sort_keys=True)


def to_text_line(record: Record, timings: bool = True) -> str:
    d = record.to_json(timings)
    line = f"{'PASS' if d['passed'] else 'FAIL'}  {d['id']:<28} instances={d['instances_checked']}"
    if timings:
        line += f"  {d['elapsed_ms']:.1f} ms"
    for f in d["failures"][:5]:
        line += "\n      witness: " + json.dumps(f, sort_keys=True)
    return line


def timed_summary(ctx: EnvelopeContext, records: List[Record], t0: float, timings: bool) -> dict:
    return summary(ctx, records, time.perf_counter() - t0 if timings else None)
