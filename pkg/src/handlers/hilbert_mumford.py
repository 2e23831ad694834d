"""
Hilbert-Mumford — Character exponents, 1-PS weight data and the numerical
function pairing a representation with a weighted filtration.

Two independent evaluations of the numerical function are kept side by side:

    per vertex:  Σ_v e_v · Σ_i Γ_{v,i} · dim M_v^i
    per layer:   Σ_i Γ_i · [Θ(M)σ(M^i) − σ(M)Θ(M^i)]

with e_v = Θ(d)σ_v − σ(d)Θ_v. They must agree on every filtration.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from handlers.envelope import KempfValue
from handlers.quiver import DimensionVector, StabilityWeights, sigma_of, theta_of
from handlers.representation import (
    Representation,
    WeightedFiltration,
    filtration_quotient_dims,
)
from utils.failures import InternalContradictionError, MalformedInputError


@dataclass(frozen=True)
class CharacterExponents:
    vertices: Tuple[str, ...]
    values: Tuple[int, ...]

    def to_dict(self) -> Dict[str, int]:
        return dict(zip(self.vertices, self.values))


@dataclass(frozen=True)
class OnePSWeights:
    """Per vertex, the (weight, multiplicity) pairs of a diagonal 1-PS."""
    vertices: Tuple[str, ...]
    weights: Tuple[Tuple[Tuple[Fraction, int], ...], ...]

    def at(self, vertex: str) -> Tuple[Tuple[Fraction, int], ...]:
        return self.weights[self.vertices.index(vertex)]

    def shifted(self, c) -> "OnePSWeights":
        """Every weight moved by the constant ``c``."""
        c = Fraction(c)
        return OnePSWeights(self.vertices, tuple(
            tuple((g + c, n) for g, n in entries) for entries in self.weights
        ))


def character_exponents(d: DimensionVector, w: StabilityWeights) -> CharacterExponents:
    """
    e_v = Θ(d)σ_v − σ(d)Θ_v.

    Raises:
        InternalContradictionError: if Σ e_v d_v ≠ 0.
    """
    theta_d = theta_of(d, w)
    sigma_d = sigma_of(d, w)
    values = tuple(theta_d * s - sigma_d * t for t, s in zip(w.theta, w.sigma))
    if sum(e * x for e, x in zip(values, d.values)) != 0:
        raise InternalContradictionError(f"character exponents {list(values)} not trivial on the diagonal")
    return CharacterExponents(d.vertices, values)


def one_ps_from_filtration(f: WeightedFiltration) -> OnePSWeights:
    """Weight Γ_i on the i-th layer, with multiplicity its growth at each vertex."""
    if f.weights is None:
        raise MalformedInputError("a 1-PS needs a weighted filtration")
    quotients = filtration_quotient_dims(f)
    vertices = f.representation.quiver.vertices
    per_vertex = []
    for k, _ in enumerate(vertices):
        per_vertex.append(tuple(
            (g, q.values[k]) for g, q in zip(f.weights, quotients) if q.values[k] > 0
        ))
    return OnePSWeights(vertices, tuple(per_vertex))


def numerical_mu_weights(m: Representation, ops: OnePSWeights, w: StabilityWeights) -> Fraction:
    """Per-vertex evaluation of the numerical function."""
    if ops.vertices != m.quiver.vertices:
        raise MalformedInputError("1-PS weights indexed by different vertices")
    e = character_exponents(m.dims, w)
    total = Fraction(0)
    for v, ev, entries, dv in zip(ops.vertices, e.values, ops.weights, m.dims.values):
        multiplicity = sum(n for _, n in entries)
        if multiplicity != dv or any(n < 0 for _, n in entries):
            raise MalformedInputError(
                f"vertex {v!r}: weight multiplicities sum to {multiplicity}, dimension is {dv}"
            )
        total += ev * sum((Fraction(g) * n for g, n in entries), Fraction(0))
    return total


def numerical_mu_filtration(m: Representation, f: WeightedFiltration, w: StabilityWeights) -> Fraction:
    """Per-layer evaluation of the numerical function."""
    if f.weights is None:
        raise MalformedInputError("the numerical function needs a weighted filtration")
    if f.representation != m:
        raise MalformedInputError("filtration belongs to another representation")
    theta_m = theta_of(m.dims, w)
    sigma_m = sigma_of(m.dims, w)
    total = Fraction(0)
    for g, q in zip(f.weights, filtration_quotient_dims(f)):
        total += g * (theta_m * sigma_of(q, w) - sigma_m * theta_of(q, w))
    return total


def kempf_value(m: Representation, f: WeightedFiltration, w: StabilityWeights) -> KempfValue:
    """K = μ / √(Σ σ(M^i) Γ_i²); all-zero weights give the zero direction."""
    numerator = numerical_mu_filtration(m, f, w)
    norm_square = sum(
        (sigma_of(q, w) * g * g for g, q in zip(f.weights, filtration_quotient_dims(f))),
        Fraction(0),
    )
    return KempfValue(numerator, norm_square)
