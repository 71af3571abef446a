from fractions import Fraction
from itertools import product

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from jts_envelope.freealg import NcPoly, gen, word
from jts_envelope.rewrite import (
    DimensionCapExceeded,
    IncompleteSystemError,
    RewriteSystem,
    Rule,
    complete,
    format_system,
    normal_form,
    normal_words,
    overlaps,
    parse_system,
    unresolved_overlaps,
)

from conftest import envelope
from strategies import polys, rationals

a, b, c, d, e = (1, 1), (1, 2), (1, 3), (2, 1), (2, 2)
G11 = gen(1, 1)


def _rule(*lead, tail=None):
    return Rule(tuple(lead), tail if tail is not None else NcPoly.zero())


# --- toy systems, with oracles by exhaustive reduction ---

def test_single_cubic_relation():
    S = complete([G11 ** 3 - G11], max_degree=6)
    assert S.is_complete
    assert normal_words(S).words == [(), (a,), (a, a)]


def test_single_cubic_oracle_by_hand():
    S = complete([G11 ** 3 - G11], max_degree=6)
    # a^n reduces to a for odd n, a^2 for even n >= 2
    for n in range(1, 9):
        want = G11 if n % 2 else G11 * G11
        assert normal_form(G11 ** n, S) == want


def test_degree_one_rule_kills_everything():
    S = complete([G11], max_degree=3)
    assert normal_words(S).words == [()]
    assert normal_words(S, include_unit=False).dimension == 0


def test_max_degree_below_generators_rejected():
    with pytest.raises(ValueError):
        complete([G11 ** 3 - G11], max_degree=2)


def test_empty_generators_rejected():
    with pytest.raises(ValueError, match="nothing to present"):
        complete([], max_degree=4)


def test_zero_generator_rejected():
    with pytest.raises(ValueError):
        complete([NcPoly.zero()])


def test_rule_tail_must_be_smaller():
    with pytest.raises(ValueError):
        Rule((a,), word(a, b))


# --- overlaps ---

def test_overlap_on_one_letter():
    r1 = _rule(a, b, c)
    r2 = _rule(c, d, e)
    assert len(overlaps(r1, r2)) == 1


def test_overlap_composition_cancels_lead():
    r1 = _rule(a, b, c, tail=gen(1, 1))
    r2 = _rule(c, d, e, tail=gen(1, 2))
    [comp] = overlaps(r1, r2)
    # (abc - a) de - ab (cde - b) = -a de + ab b
    assert comp == word(a, b, b) - word(a, d, e)


def test_no_shared_boundary():
    assert overlaps(_rule(a, b), _rule(c, d)) == []


def test_self_overlap_counted_once():
    assert len(overlaps(_rule(a, a), _rule(a, a))) == 1


def test_inclusion_overlap():
    comps = overlaps(_rule(a, b, c, tail=gen(2, 2)), _rule(b, tail=gen(1, 1)))
    assert comps and all(not x.is_zero() for x in comps)


def test_incomplete_status_reported():
    # the braid-like relation aba = bab has no finite basis under deglex
    S = complete([word(a, b, a) - word(b, a, b)], max_degree=5)
    assert not S.is_complete
    assert S.offending_degree == 6
    with pytest.raises(IncompleteSystemError):
        normal_words(S)


def test_infinite_basis_hits_cap():
    S = complete([word(a, b) - word(b, a)], max_degree=4)
    assert S.is_complete
    with pytest.raises(DimensionCapExceeded):
        normal_words(S, cap=200)


# --- the envelope system ---

@pytest.fixture(scope="module")
def S23():
    return envelope(2, 3).system


def test_envelope_normal_words(S23):
    assert normal_words(S23, include_unit=False).dimension == 25


def test_envelope_normal_words_24():
    assert normal_words(envelope(2, 4).system, include_unit=False).dimension == 36


def test_basis_closed_under_factors(S23):
    basis = set(normal_words(S23).words)
    for w in basis:
        for i, j in product(range(len(w) + 1), repeat=2):
            if i <= j:
                assert w[i:j] in basis


def test_basis_words_irreducible(S23):
    for w in normal_words(S23).words:
        assert not S23.is_reducible(w)


def test_cube_reduces(S23):
    assert normal_form(G11 ** 3 - G11, S23).is_zero()
    assert normal_form(NcPoly.zero(), S23).is_zero()


def test_orthogonal_pair_reduces(S23):
    assert normal_form(gen(1, 2) * gen(2, 1), S23).is_zero()


def test_rules_reduce_to_zero(S23):
    for r in S23.rules:
        assert S23.reduces_to_zero(r.as_poly())


def test_confluence_recheck(S23):
    assert S23.is_complete
    assert unresolved_overlaps(S23) == []


def test_interreduced(S23):
    leads = S23.leads
    for r in S23.rules:
        for l in leads:
            if l != r.lead:
                assert not _factor(l, r.lead)
            for w in r.tail.words():
                assert not _factor(l, w)


def _factor(sub, w):
    n = len(sub)
    return any(w[i:i + n] == sub for i in range(len(w) - n + 1))


def test_leads_have_low_degree(S23):
    assert max(len(l) for l in S23.leads) <= 4


def test_system_round_trip(S23):
    text = format_system(S23)
    again = parse_system(text, S23.alphabet)
    assert again.is_complete
    assert format_system(again) == text


def test_system_text_format(S23):
    first = format_system(S23).splitlines()[0]
    assert " => " in first and first.startswith("G[")


def test_completion_deterministic():
    s1 = format_system(complete(envelope(2, 3).generators, 8, alphabet=envelope(2, 3).alphabet))
    assert s1 == format_system(envelope(2, 3).system)


# --- quotient-algebra properties (>= 500 random polynomials each) ---

P = polys(2, 3, max_len=4, max_terms=5)
NF_SETTINGS = settings(max_examples=500, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@NF_SETTINGS
@given(P)
def test_nf_idempotent(x):
    S = envelope(2, 3).system
    y = normal_form(x, S)
    assert normal_form(y, S) == y
    assert not any(S.is_reducible(w) for w in y.words())


@NF_SETTINGS
@given(P, P, rationals, rationals)
def test_nf_linear(x, y, al, be):
    S = envelope(2, 3).system
    assert normal_form(al * x + be * y, S) == al * normal_form(x, S) + be * normal_form(y, S)


@NF_SETTINGS
@given(P, P)
def test_nf_multiplicative(x, y):
    S = envelope(2, 3).system
    assert normal_form(x * y, S) == normal_form(normal_form(x, S) * normal_form(y, S), S)
