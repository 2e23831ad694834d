from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from handlers.envelope import KempfValue
from handlers.hilbert_mumford import (
    character_exponents,
    kempf_value,
    numerical_mu_filtration,
    numerical_mu_weights,
    one_ps_from_filtration,
)
from handlers.quiver import DimensionVector, StabilityWeights
from handlers.representation import Representation, Subrepresentation, WeightedFiltration
from handlers.subspace import Subspace
from managers.kempf import KempfAnalyzer
from managers.verify import iter_representations
from utils.config import Guards
from utils.constants import SEMISTABLE_MESSAGE
from utils.failures import MalformedInputError, NotApplicableError, ResourceLimitError

F = Fraction


@pytest.fixture
def kempf(config):
    return KempfAnalyzer(config)


def _hn_chain(ex1, weights=None):
    step = Subrepresentation(ex1, [Subspace.full(ex1.field, 1), Subspace.zero(ex1.field, 1)])
    return WeightedFiltration((step, Subrepresentation.full(ex1)), weights)


# ── Character and numerical function ──────────────────────────────


def test_character_exponents(a2, weights):
    d = DimensionVector.of(a2, (1, 1))
    assert character_exponents(d, weights).values == (-1, 1)
    assert character_exponents(d, StabilityWeights.of(a2, (0, 0))).values == (0, 0)
    assert character_exponents(d, StabilityWeights.of(a2, (2, 3), (2, 3))).values == (0, 0)


def test_one_ps_from_filtration(ex1):
    ops = one_ps_from_filtration(_hn_chain(ex1, (-1, 1)))
    assert ops.at("v1") == ((F(-1), 1),)
    assert ops.at("v2") == ((F(1), 1),)
    trivial = one_ps_from_filtration(WeightedFiltration.trivial(ex1, 0))
    assert trivial.at("v1") == ((F(0), 1),)


def test_numerical_function_on_ex1(ex1, weights):
    f = _hn_chain(ex1, (-1, 1))
    assert numerical_mu_filtration(ex1, f, weights) == 2
    assert numerical_mu_weights(ex1, one_ps_from_filtration(f), weights) == 2
    assert numerical_mu_filtration(ex1, WeightedFiltration.trivial(ex1, 7), weights) == 0


def test_numerical_function_ignores_constant_shift(ex1, weights):
    ops = one_ps_from_filtration(_hn_chain(ex1, (-1, 1)))
    assert numerical_mu_weights(ex1, ops.shifted(F(5, 3)), weights) == 2


def test_inconsistent_multiplicities(ex1, weights):
    from handlers.hilbert_mumford import OnePSWeights
    ops = OnePSWeights(("v1", "v2"), (((F(0), 2),), ((F(0), 1),)))
    with pytest.raises(MalformedInputError):
        numerical_mu_weights(ex1, ops, weights)


def test_kempf_value(ex1, weights):
    assert kempf_value(ex1, _hn_chain(ex1, (-1, 1)), weights) == KempfValue(2, 2)
    assert kempf_value(ex1, _hn_chain(ex1, (-2, 2)), weights) == KempfValue(2, 2)


@given(st.lists(st.fractions(min_value=-10, max_value=10, max_denominator=6), min_size=2, max_size=2, unique=True))
@settings(max_examples=50, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
def test_pairings_agree_on_random_weights(ex1, weights, gammas):
    f = _hn_chain(ex1, tuple(sorted(gammas)))
    assert numerical_mu_weights(ex1, one_ps_from_filtration(f), weights) == \
        numerical_mu_filtration(ex1, f, weights)


# ── Hilbert-Mumford criterion ─────────────────────────────────────


def test_chains(kempf, ex1, ex2):
    assert len(kempf.chains(ex1)) == 3
    assert len(kempf.chains(ex2)) == 2
    assert kempf.chains(ex1)[0].length == 1


def test_chain_guard(config, ex1):
    with pytest.raises(ResourceLimitError):
        KempfAnalyzer(config, Guards(chains=2)).chains(ex1)


def test_hm_semistable(kempf, ex1, ex2, weights):
    assert kempf.hm_semistable(ex2, weights)
    assert not kempf.hm_semistable(ex1, weights)
    assert kempf.hm_stable(ex2, weights)
    assert not kempf.hm_stable(ex1, weights)


def test_semistable_pairing_is_non_positive(kempf, ex2, weights):
    for f in kempf.chains(ex2):
        weighted = f.with_weights([F(i) for i in range(f.length)])
        assert numerical_mu_filtration(ex2, weighted, weights) <= 0


@pytest.mark.parametrize("dims", [(1, 1), (2, 1), (2, 2)])
def test_hm_agrees_with_slope_test(config, kempf, a2, f2, dims):
    from managers.stability import StabilityAnalyzer
    stability = StabilityAnalyzer(config)
    w = StabilityWeights.of(a2, (1, 0), (1, 1))
    for m in iter_representations(a2, DimensionVector.of(a2, dims), f2, guard=1000):
        assert kempf.hm_semistable(m, w) == stability.is_semistable(m, w)
        assert kempf.hm_stable(m, w) == stability.is_stable(m, w)


# ── Kempf filtration ──────────────────────────────────────────────


def test_kempf_of_ex1(kempf, ex1, weights):
    result = kempf.kempf_filtration(ex1, weights)
    assert result.filtration.chain == _hn_chain(ex1).chain
    assert result.weights == (F(-1), F(1))
    assert result.value == KempfValue(2, 2)
    assert result.chains_searched == 3


def test_kempf_of_semistable(kempf, ex2, weights):
    with pytest.raises(NotApplicableError, match=SEMISTABLE_MESSAGE):
        kempf.kempf_filtration(ex2, weights)


def test_kempf_of_kronecker(kempf, kronecker, kronecker_zero):
    w = StabilityWeights.of(kronecker, (1, 0), (1, 1))
    result = kempf.kempf_filtration(kronecker_zero, w)
    assert [s.dims.values for s in result.filtration.chain] == [(1, 0), (1, 1)]
    assert result.weights == (F(-1), F(1))
    assert result.value == KempfValue(2, 2)


def test_refinement_keeps_kempf_weights(kempf, a3, f2):
    # Zero maps on A3, Θ = (2, 1, 0): HN chain (F,0,0) ⊂ (F,F,0) ⊂ M
    w = StabilityWeights.of(a3, (2, 1, 0))
    m = Representation.zero_maps(a3, f2, (1, 1, 1))
    result = kempf.kempf_filtration(m, w)
    assert [s.dims.values for s in result.filtration.chain] == [(1, 0, 0), (1, 1, 0), (1, 1, 1)]
    assert result.weights == (F(-3), F(0), F(3))
    assert result.value == KempfValue(18, 18)

    m2 = Representation.zero_maps(a3, f2, (1, 1, 1))
    w2 = StabilityWeights.of(a3, (2, 0, 0))
    coarse = kempf.kempf_filtration(m2, w2)
    assert [s.dims.values for s in coarse.filtration.chain] == [(1, 0, 0), (1, 1, 1)]
    for s in kempf.stability.proper_subreps(m2):
        if s in coarse.filtration.chain:
            continue
        if all(s.leq(t) or t.leq(s) for t in coarse.filtration.chain):
            assert kempf.refinement_gamma(m2, coarse.filtration, s, w2) == coarse.filtration


def test_refinement_rejects_incomparable(kempf, ex1, weights):
    result = kempf.kempf_filtration(ex1, weights)
    other = Subrepresentation(ex1, [Subspace.zero(ex1.field, 1), Subspace.full(ex1.field, 1)])
    with pytest.raises(MalformedInputError):
        kempf.refinement_gamma(ex1, result.filtration, other, weights)
