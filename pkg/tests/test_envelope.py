import pytest

from jts_envelope.envelope import (
    BuildError,
    build,
    center_element,
    centralizer,
    certify_center,
    certify_choice_independence,
    certify_corollary_identities,
    certify_lemma_identities,
    certify_quotient_consistency,
    certify_unit_table,
    certify_universality,
    corollary_families,
    ideal_generators,
    lemma_families,
    matrix_units,
    present,
    rank_over_q,
)
from jts_envelope.freealg import gen

from conftest import envelope, units_for


def _failed(certs):
    return [c.id for c in certs if not c.passed]


def test_generator_count():
    assert len(ideal_generators(2, 3)) == 216
    assert len(ideal_generators(2, 3, prune=True)) == 126


def test_generators_are_cubic_minus_linear():
    for g in ideal_generators(2, 3, prune=True):
        assert g.degree() == 3
        assert {len(w) for w in g.words()} <= {1, 3}


@pytest.mark.parametrize("pq", [(2, 2), (1, 3), (3, 1), (1, 1)])
def test_hypothesis_enforced(pq):
    with pytest.raises(ValueError, match="p != q"):
        build(*pq)


def test_allow_unproven_square_case():
    ctx = build(2, 2, allow_unproven=True)
    assert ctx.complete and ctx.allow_unproven
    assert ctx.summary()["theorem_assertions"] is False


def test_dimension_and_summary(ctx23):
    assert ctx23.dimension == 25
    s = ctx23.summary()
    assert s["p"] == 2 and s["q"] == 3 and s["dimension"] == 25 and s["status"] == "complete"


def test_quotient_and_universality(ctx23):
    assert certify_quotient_consistency(ctx23).passed
    cert = certify_universality(ctx23, samples=10, seed=3)
    assert cert.passed and cert.instances_checked == 10


def test_family_ids():
    assert [f[0] for f in lemma_families()] == [f"lemma.{r}" for r in "I II III IV V VI VII VIII".split()] + ["lemma.choice"]
    assert [f[0] for f in corollary_families()] == [f"corollary.{r}" for r in "I II III IV V VI VII VIII".split()]


@pytest.mark.parametrize("pq", [(2, 3), (3, 2), (2, 4)])
def test_lemma_and_corollary_families(pq):
    ctx = envelope(*pq)
    certs = certify_lemma_identities(ctx) + certify_corollary_identities(ctx)
    assert _failed(certs) == []
    assert all(c.instances_checked > 0 for c in certs)


def test_certificate_json_shape(ctx23):
    d = certify_lemma_identities(ctx23)[0].to_json()
    assert set(d) >= {"id", "quantifier_ranges", "instances_checked", "failures", "elapsed_ms", "passed"}
    assert certify_lemma_identities(ctx23)[0].to_json(timings=False)["elapsed_ms"] is None


def test_unit_table(ctx23):
    certs = certify_unit_table(ctx23, units_for(2, 3))
    assert _failed(certs) == []
    assert certs[0].instances_checked == 625


def test_unit_normal_forms_full_rank(ctx23):
    u = units_for(2, 3)
    assert rank_over_q(list(u.nf.values())) == 25


def test_choice_independence(ctx23):
    assert _failed(certify_choice_independence(ctx23)) == []


def test_center(ctx23):
    u = units_for(2, 3)
    assert _failed(certify_center(ctx23, u)) == []


def test_centralizer_one_dimensional(ctx23):
    basis = centralizer(ctx23)
    assert len(basis) == 1
    e = ctx23.nf(center_element(ctx23, 2, 2))
    c = basis[0]
    # proportional: e = lambda * c
    w = c.lead()
    assert ctx23.nf(e - (e.coeff(w) / c.coeff(w)) * c).is_zero()


def test_literal_degree_three_center_is_not_central(ctx23):
    # (1-q) G11 G1j G1j in place of the degree-4 word breaks the identity check
    from jts_envelope.representation import evaluate, BlockMatrix
    e = center_element(ctx23, 2, 2)
    w4 = gen(1, 1) * gen(1, 1) * gen(1, 2) * gen(1, 2)
    w3 = gen(1, 1) * gen(1, 2) * gen(1, 2)
    e_literal = e + (3 - 1) * w4 - (3 - 1) * w3
    assert evaluate(e, 2, 3) == BlockMatrix.identity(2, 3)
    assert evaluate(e_literal, 2, 3) != BlockMatrix.identity(2, 3)


def test_require_complete_on_incomplete_presentation():
    gens = ideal_generators(2, 3, prune=True)[:10]
    ctx = present(2, 3, gens, max_degree=6)
    assert not ctx.complete and ctx.dimension is None
    with pytest.raises(BuildError):
        certify_quotient_consistency(ctx)


def test_matrix_units_need_two_columns():
    ctx = build(2, 1, allow_unproven=True)
    with pytest.raises(ValueError):
        matrix_units(ctx)
