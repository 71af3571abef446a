"""Exact computations in the universal associative envelope of the Jordan
triple system of p x q rational matrices.

Typical use::

    from jts_envelope import build, matrix_units, certify_unit_table
    ctx = build(2, 3)
    ctx.dimension                      # 25
    certify_unit_table(ctx, matrix_units(ctx))
"""

from .envelope import (
    BuildError,
    Certificate,
    EnvelopeContext,
    build,
    center_element,
    certify_center,
    certify_choice_independence,
    certify_corollary_identities,
    certify_lemma_identities,
    certify_unit_table,
    ideal_generators,
    matrix_units,
    present,
)
from .freealg import NcPoly, gen, parse_poly, word_cmp
from .jts import RectMatrix, check_jts_axioms, phi, structure_constants, triple_product
from .representation import evaluate, isomorphism_certificate, theta
from .rewrite import RewriteSystem, Rule, complete, normal_form, normal_words, overlaps

__version__ = "0.1.0"
