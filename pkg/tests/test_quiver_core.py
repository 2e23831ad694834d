from fractions import Fraction

import pytest

from handlers.field import Field
from handlers.quiver import (
    Arrow,
    DimensionVector,
    Quiver,
    StabilityWeights,
    sigma_of,
    slope,
    theta_of,
)
from handlers.representation import (
    Representation,
    Subrepresentation,
    WeightedFiltration,
    filtration_quotient_dims,
    pullback,
    quotient_representation,
    validate_subrep,
)
from handlers.subspace import Subspace
from utils.failures import MalformedInputError, UndefinedSlopeError


def _sub(m, *spaces):
    return Subrepresentation(m, [Subspace.span(m.field, n, vecs) for n, vecs in zip(m.dims.values, spaces)])


# ── Quiver data ───────────────────────────────────────────────────


def test_quiver_rejects_unknown_endpoint():
    with pytest.raises(MalformedInputError, match="unknown target vertex 'v9'"):
        Quiver(("v1",), (Arrow("a", "v1", "v9"),))


def test_quiver_rejects_duplicate_arrows():
    with pytest.raises(MalformedInputError):
        Quiver.build(["v1", "v2"], [("a", "v1", "v2"), ("a", "v2", "v1")])


def test_loops_and_parallel_arrows_allowed():
    q = Quiver.build(["v"], [("x", "v", "v"), ("y", "v", "v")])
    assert len(q.arrows) == 2


def test_weights_require_positive_sigma(a2):
    with pytest.raises(MalformedInputError):
        StabilityWeights.of(a2, (1, 0), (0, 1))


def test_theta_sigma_and_slope(a2, weights):
    d = DimensionVector.of(a2, (1, 1))
    assert theta_of(d, weights) == 1
    assert sigma_of(d, weights) == 2
    assert slope(d, weights) == Fraction(1, 2)
    assert slope(DimensionVector.of(a2, (1, 0)), weights) == 1
    assert theta_of(DimensionVector.zero(a2), weights) == 0


def test_weighted_sums(a2):
    w = StabilityWeights.of(a2, (-1, 2), (3, 2))
    assert theta_of(DimensionVector.of(a2, (2, 3)), w) == 4
    assert sigma_of(DimensionVector.of(a2, (2, 1)), w) == 8


def test_slope_of_zero_is_undefined(a2, weights):
    with pytest.raises(UndefinedSlopeError):
        slope(DimensionVector.zero(a2), weights)


def test_vertex_mismatch(a2, a3, weights):
    with pytest.raises(MalformedInputError):
        theta_of(DimensionVector.of(a3, (1, 1, 1)), weights)


# ── Representations ───────────────────────────────────────────────


def test_matrix_shape_checked(a2, f2):
    with pytest.raises(MalformedInputError, match="arrow 'a'"):
        Representation.from_rows(a2, f2, (1, 2), {"a": [[1]]})


def test_mixed_field_matrix_rejected(a2, f2):
    from handlers.matrix import Matrix
    dims = DimensionVector.of(a2, (1, 1))
    with pytest.raises(MalformedInputError):
        Representation(a2, f2, dims, {"a": Matrix.identity(Field.prime(3), 1)})


def test_validate_subrep(ex1, ex2):
    assert validate_subrep(_sub(ex1, [[1]], []))
    assert not validate_subrep(_sub(ex2, [[1]], []))
    assert validate_subrep(Subrepresentation.full(ex2))


def test_quotient_by_zero_is_identity(ex2):
    assert quotient_representation(ex2, Subrepresentation.zero(ex2)) == ex2


def test_quotient_by_everything_is_zero(ex2):
    q = quotient_representation(ex2, Subrepresentation.full(ex2))
    assert q.dims.is_zero


def test_quotient_of_ex1(ex1):
    q = quotient_representation(ex1, _sub(ex1, [[1]], []))
    assert q.dims.values == (0, 1)
    assert q.matrix("a").cols == 0


def test_quotient_rejects_non_subrep(ex2):
    with pytest.raises(MalformedInputError):
        quotient_representation(ex2, _sub(ex2, [[1]], []))


def test_quotient_and_pullback_on_a3(a3, f2):
    # v1 → v2 → v3 with identity maps and d = (1, 1, 1)
    m = Representation.from_rows(a3, f2, (1, 1, 1), {"a": [[1]], "b": [[1]]})
    s = _sub(m, [], [], [[1]])
    q = quotient_representation(m, s)
    assert q.dims.values == (1, 1, 0)
    assert q.matrix("a").to_rows() == [[1]]
    n = Subrepresentation(q, [Subspace.zero(f2, 1), Subspace.full(f2, 1), Subspace.zero(f2, 0)])
    assert validate_subrep(n)
    assert pullback(s, n) == _sub(m, [], [[1]], [[1]])


def test_as_representation(kronecker, f2):
    m = Representation.from_rows(kronecker, f2, (2, 1), {"a": [[1, 0]], "b": [[0, 0]]})
    s = _sub(m, [[0, 1]], [])
    assert validate_subrep(s)
    sub = s.as_representation()
    assert sub.dims.values == (1, 0)
    assert sub.matrix("a").rows == 0


# ── Filtrations ───────────────────────────────────────────────────


def test_filtration_quotient_dims(ex1):
    step = _sub(ex1, [[1]], [])
    f = WeightedFiltration((step, Subrepresentation.full(ex1)))
    assert [d.values for d in filtration_quotient_dims(f)] == [(1, 0), (0, 1)]
    assert [d.values for d in filtration_quotient_dims(WeightedFiltration.trivial(ex1))] == [(1, 1)]


def test_filtration_must_be_strict(ex1):
    full = Subrepresentation.full(ex1)
    with pytest.raises(MalformedInputError):
        WeightedFiltration((full, full))
    with pytest.raises(MalformedInputError):
        WeightedFiltration((_sub(ex1, [[1]], []),))
    with pytest.raises(MalformedInputError):
        WeightedFiltration((Subrepresentation.zero(ex1), full))


def test_filtration_weights_strictly_increasing(ex1):
    chain = (_sub(ex1, [[1]], []), Subrepresentation.full(ex1))
    with pytest.raises(MalformedInputError):
        WeightedFiltration(chain, (1, 1))
    assert WeightedFiltration(chain, (-1, 1)).weights == (Fraction(-1), Fraction(1))
