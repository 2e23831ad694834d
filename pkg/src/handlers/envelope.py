"""
Envelope — The graph of a filtration's vector, its least concave majorant and
the optimal weights it induces.

For b^i > 0 and v with Σ b^i v_i = 0 the graph joins (0,0) to the points
(b_i, w_i), b_i = b^1 + … + b^i, w_i = −(b^1 v_1 + … + b^i v_i). The least
concave majorant through (0,0) gives heights w̃_i and

    Γ_i = −(w̃_i − w̃_{i−1}) / b^i

which maximize (Γ, v)/‖Γ‖ over the closed cone Γ_1 ≤ … ≤ Γ_{t+1}, where
(x, y) = Σ b^i x_i y_i.
"""
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import total_ordering
from typing import List, Sequence, Tuple

from handlers.quiver import StabilityWeights, sigma_of, theta_of
from handlers.representation import (
    Representation,
    WeightedFiltration,
    filtration_quotient_dims,
)
from utils.failures import MalformedInputError, InternalContradictionError

Point = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class WeightVectorData:
    """Block sizes b^i and the vector v of a filtration."""
    b: Tuple[int, ...]
    v: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        object.__setattr__(self, "v", tuple(Fraction(x) for x in self.v))
        if len(self.b) != len(self.v) or not self.b:
            raise MalformedInputError(f"{len(self.b)} block sizes for {len(self.v)} vector entries")
        if any(x < 1 for x in self.b):
            raise MalformedInputError(f"block sizes must be positive, got {list(self.b)}")
        if sum(bi * vi for bi, vi in zip(self.b, self.v)) != 0:
            raise MalformedInputError("vector violates Σ b^i v_i = 0")

    @property
    def length(self) -> int:
        return len(self.b)

    def points(self) -> List[Point]:
        """Cumulative graph points (b_i, w_i), i = 1 … t+1."""
        out = []
        x, y = Fraction(0), Fraction(0)
        for bi, vi in zip(self.b, self.v):
            x += bi
            y -= bi * vi
            out.append((x, y))
        return out


@dataclass(frozen=True)
class EnvelopeResult:
    heights: Tuple[Fraction, ...]       # w̃_i
    gamma: Tuple[Fraction, ...]         # Γ_i, non-decreasing
    blocks: Tuple[Tuple[int, ...], ...]  # 0-based indices sharing one Γ value

    @property
    def is_zero(self) -> bool:
        return all(g == 0 for g in self.gamma)


@total_ordering
@dataclass(frozen=True)
class KempfValue:
    """
    The exact real N / √D.

    D = 0 marks the zero direction; it compares as the value 0.
    """
    numerator: Fraction
    norm_square: Fraction

    def __post_init__(self):
        object.__setattr__(self, "numerator", Fraction(self.numerator))
        object.__setattr__(self, "norm_square", Fraction(self.norm_square))
        if self.norm_square < 0:
            raise MalformedInputError("norm square must be non-negative")

    @property
    def is_zero_direction(self) -> bool:
        return self.norm_square == 0

    @property
    def sign(self) -> int:
        if self.is_zero_direction or self.numerator == 0:
            return 0
        return 1 if self.numerator > 0 else -1

    def _cmp(self, other: "KempfValue") -> int:
        s, o = self.sign, other.sign
        if s != o:
            return -1 if s < o else 1
        if s == 0:
            return 0
        # Same sign: compare N1²D2 with N2²D1, reversed when negative
        lhs = self.numerator ** 2 * other.norm_square
        rhs = other.numerator ** 2 * self.norm_square
        c = (lhs > rhs) - (lhs < rhs)
        return c if s > 0 else -c

    def __eq__(self, other) -> bool:
        if not isinstance(other, KempfValue):
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other: "KempfValue") -> bool:
        return self._cmp(other) < 0

    def __hash__(self) -> int:
        if self.sign == 0:
            return hash(0)
        # N/√D is determined by sign and N²/D
        return hash((self.sign, self.numerator ** 2 / self.norm_square))

    def decimal(self, digits: int = 12) -> str:
        """Decimal rendering of N / √D, for display only."""
        if self.sign == 0:
            return "0"
        with localcontext() as ctx:
            ctx.prec = digits + 10
            n = Decimal(self.numerator.numerator) / Decimal(self.numerator.denominator)
            d = Decimal(self.norm_square.numerator) / Decimal(self.norm_square.denominator)
            value = n / d.sqrt()
            ctx.prec = digits
            return str(+value)


def vector_of_filtration(m: Representation, f: WeightedFiltration, w: StabilityWeights) -> WeightVectorData:
    """
    b^i = σ(M^i), v_i = Θ(M) − σ(M)Θ(M^i)/σ(M^i).

    Raises:
        MalformedInputError: for a filtration of another representation.
    """
    if f.representation != m:
        raise MalformedInputError("filtration belongs to another representation")
    theta_m = theta_of(m.dims, w)
    sigma_m = sigma_of(m.dims, w)
    b, v = [], []
    for q in filtration_quotient_dims(f):
        if q.is_zero:
            raise MalformedInputError("filtration has a zero quotient")
        sq = sigma_of(q, w)
        b.append(sq)
        v.append(theta_m - Fraction(sigma_m * theta_of(q, w), sq))
    return WeightVectorData(tuple(b), tuple(v))


def _upper_hull(points: Sequence[Point]) -> List[Point]:
    """Monotone-chain upper hull of points with strictly increasing x."""
    hull: List[Point] = []
    for p in points:
        while len(hull) > 1:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            # Drop the middle point when it lies on or below the chord
            if (x1 - x0) * (p[1] - y0) - (p[0] - x0) * (y1 - y0) >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def _height_at(hull: Sequence[Point], x: Fraction) -> Fraction:
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        if x0 <= x <= x1:
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    raise InternalContradictionError(f"abscissa {x} outside the hull")


def concave_majorant(data: WeightVectorData) -> EnvelopeResult:
    """Least concave majorant of the graph through (0,0), read at each b_i."""
    points = data.points()
    hull = _upper_hull([(Fraction(0), Fraction(0))] + points)
    heights = tuple(_height_at(hull, x) for x, _ in points)

    gamma = []
    previous = Fraction(0)
    for bi, h in zip(data.b, heights):
        gamma.append(-(h - previous) / bi)
        previous = h

    blocks: List[List[int]] = []
    for i, g in enumerate(gamma):
        if blocks and gamma[blocks[-1][0]] == g:
            blocks[-1].append(i)
        else:
            blocks.append([i])
    return EnvelopeResult(heights, tuple(gamma), tuple(tuple(b) for b in blocks))


def gamma_opt(data: WeightVectorData) -> EnvelopeResult:
    """
    The weights Γ_v maximizing μ_v on the closed ordered cone.

    An all-zero Γ_v means μ_v ≤ 0 on the whole cone (no destabilizing direction).
    """
    result = concave_majorant(data)
    for i, (h, (_, y)) in enumerate(zip(result.heights, data.points())):
        if h < y:
            raise InternalContradictionError(f"envelope height {h} below graph point {y} at index {i}")
    if any(a > b for a, b in zip(result.gamma, result.gamma[1:])):
        raise InternalContradictionError(f"envelope weights not monotone: {list(result.gamma)}")
    return result


def inner(data: WeightVectorData, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    """(x, y) = Σ b^i x_i y_i."""
    if len(x) != data.length or len(y) != data.length:
        raise MalformedInputError(f"vectors of length {len(x)}, {len(y)} for {data.length} blocks")
    return sum((bi * Fraction(xi) * Fraction(yi) for bi, xi, yi in zip(data.b, x, y)), Fraction(0))


def mu_v_eval(gamma: Sequence[Fraction], data: WeightVectorData) -> KempfValue:
    """μ_v(Γ) = (Γ, v)/‖Γ‖ as the exact pair ((Γ, v), ‖Γ‖²)."""
    return KempfValue(inner(data, gamma, data.v), inner(data, gamma, gamma))


def coarsen(f: WeightedFiltration, gamma: Sequence[Fraction]) -> WeightedFiltration:
    """Drop every M_i with Γ_i = Γ_{i+1}; the result has strictly increasing weights."""
    gamma = tuple(Fraction(g) for g in gamma)
    if len(gamma) != f.length:
        raise MalformedInputError(f"{len(gamma)} weights for a chain of length {f.length}")
    if any(a > b for a, b in zip(gamma, gamma[1:])):
        raise MalformedInputError("weights to coarsen must be non-decreasing")
    chain, weights = [], []
    for i, step in enumerate(f.chain):
        if i + 1 < f.length and gamma[i] == gamma[i + 1]:
            continue
        chain.append(step)
        weights.append(gamma[i])
    return WeightedFiltration(tuple(chain), tuple(weights))
