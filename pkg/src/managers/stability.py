"""
Stability Manager — Subrepresentation search, (Θ,σ)-semistability and the
Harder-Narasimhan filtration.

Architecture:
    [Representation] --enumerate_subreps()--> [Subrepresentation list]
                     --hn_filtration()-----> [HNResult] (quotient, max destabilizing, pull back)

Every search is an exhaustive enumeration over F_p. Subspace tuples are
visited in product order of the per-vertex canonical enumerations and
filtered by arrow invariance.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod
from typing import List, Optional, Tuple

from handlers.problem_file import report_scalar
from handlers.quiver import DimensionVector, StabilityWeights, sigma_of, slope, theta_of
from handlers.representation import (
    Representation,
    Subrepresentation,
    WeightedFiltration,
    filtration_quotient_dims,
    pullback,
    quotient_representation,
    validate_subrep,
)
from handlers.subspace import enumerate_subspaces, galois_number
from utils.config import Config, Guards
from utils.failures import (
    InternalContradictionError,
    MalformedInputError,
    ResourceLimitError,
)
from utils.logger import Logger


@dataclass(frozen=True)
class HNType:
    """Quotient dimension vectors and slopes of an HN filtration."""
    parts: Tuple[Tuple[DimensionVector, Fraction], ...]

    def __str__(self) -> str:
        return "[" + ", ".join(f"{d}@{_fmt(mu)}" for d, mu in self.parts) + "]"

    def to_list(self) -> list:
        return [{"dims": d.to_dict(), "slope": report_scalar(mu)} for d, mu in self.parts]


@dataclass(frozen=True)
class HNResult:
    filtration: WeightedFiltration
    slopes: Tuple[Fraction, ...]
    quotient_dims: Tuple[DimensionVector, ...]

    @property
    def hn_type(self) -> HNType:
        return HNType(tuple(zip(self.quotient_dims, self.slopes)))

    @property
    def is_semistable(self) -> bool:
        return self.filtration.length == 1


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ── Weight arithmetic ─────────────────────────────────────────────


def king_theta(m_dims: DimensionVector, s_dims: DimensionVector, w: StabilityWeights) -> int:
    """θ(S) = Θ(M)σ(S) − σ(M)Θ(S); non-negative on every subrep iff M is semistable."""
    return theta_of(m_dims, w) * sigma_of(s_dims, w) - sigma_of(m_dims, w) * theta_of(s_dims, w)


def transform_weights(w: StabilityWeights, a: int, b: int) -> StabilityWeights:
    """
    Θ' = aΘ + bσ with σ unchanged, so μ' = aμ + b.

    Raises:
        MalformedInputError: if a ≤ 0.
    """
    if a <= 0:
        raise MalformedInputError(f"weight transform needs a > 0, got a={a}")
    theta = tuple(a * t + b * s for t, s in zip(w.theta, w.sigma))
    return StabilityWeights(w.vertices, theta, w.sigma)


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def seesaw_holds(m: Representation, s: Subrepresentation, w: StabilityWeights) -> bool:
    """
    For 0 ≠ S ≠ M: μ(S) − μ(M), μ(S) − μ(M/S) and μ(M) − μ(M/S) share one sign.
    """
    if s.is_zero or s.is_full:
        raise MalformedInputError("see-saw needs a proper nonzero subrepresentation")
    mu_m = slope(m.dims, w)
    mu_s = slope(s.dims, w)
    mu_q = slope(m.dims - s.dims, w)
    return _sign(mu_s - mu_m) == _sign(mu_s - mu_q) == _sign(mu_m - mu_q)


# ── Analyzer ──────────────────────────────────────────────────────


class StabilityAnalyzer:
    """
    Exhaustive slope-stability analysis of representations over F_p.
    """

    def __init__(self, config: Config, guards: Optional[Guards] = None):
        """
        Args:
            config: Application configuration.
            guards: Enumeration ceilings; defaults to ``config.guards()``.
        """
        self.logger = Logger("StabilityAnalyzer")
        self.config = config
        self.guards = guards or config.guards()

    def enumerate_subreps(self, m: Representation, reverse: bool = False) -> List[Subrepresentation]:
        """
        All subrepresentations of M, zero and M included.

        Args:
            m: Representation over a prime field.
            reverse: Visit subspace tuples in reverse order (uniqueness checks).

        Raises:
            MalformedInputError: over the rationals.
            ResourceLimitError: when a subspace count exceeds the guard.
        """
        if not m.field.is_prime:
            raise MalformedInputError(f"subrepresentation search needs a prime field, got {m.field}")
        p = m.field.p
        counts = [galois_number(n, p) for n in m.dims.values]
        tuples = prod(counts)
        if tuples > self.guards.subspaces:
            raise ResourceLimitError("subspace tuples", tuples, self.guards.subspaces)
        per_vertex = [enumerate_subspaces(n, p, self.guards.subspaces) for n in m.dims.values]

        found = []
        for spaces in product(*per_vertex):
            s = Subrepresentation(m, spaces)
            if validate_subrep(s):
                found.append(s)
        self.logger.debug(f"{len(found)} subrepresentations among {tuples} subspace tuples of {m.dims}")
        if reverse:
            found.reverse()
        return found

    def proper_subreps(self, m: Representation, reverse: bool = False) -> List[Subrepresentation]:
        return [s for s in self.enumerate_subreps(m, reverse) if not s.is_zero and not s.is_full]

    def is_semistable(self, m: Representation, w: StabilityWeights) -> bool:
        """No proper nonzero subrep has slope > μ(M)."""
        mu = slope(m.dims, w)
        return all(slope(s.dims, w) <= mu for s in self.proper_subreps(m))

    def is_stable(self, m: Representation, w: StabilityWeights) -> bool:
        """No proper nonzero subrep has slope ≥ μ(M)."""
        mu = slope(m.dims, w)
        return all(slope(s.dims, w) < mu for s in self.proper_subreps(m))

    def king_semistable(self, m: Representation, w: StabilityWeights) -> bool:
        """θ(S) ≥ 0 for every subrep S, with θ the cleared-denominator character."""
        slope(m.dims, w)
        return all(king_theta(m.dims, s.dims, w) >= 0 for s in self.enumerate_subreps(m))

    def destabilizing_witness(self, m: Representation, w: StabilityWeights) -> Optional[Subrepresentation]:
        """The maximal destabilizing subrep when M is unstable, else None."""
        top = self.max_destabilizing(m, w)
        return None if top.is_full else top

    def max_destabilizing(self, m: Representation, w: StabilityWeights,
                          reverse: bool = False) -> Subrepresentation:
        """
        The nonzero subrep of maximal slope, and of maximal σ among those.

        Raises:
            UndefinedSlopeError: for the zero representation.
            InternalContradictionError: if two distinct subreps tie on (slope, σ).
        """
        slope(m.dims, w)
        best: List[Subrepresentation] = []
        best_key = None
        for s in self.enumerate_subreps(m, reverse):
            if s.is_zero:
                continue
            key = (slope(s.dims, w), sigma_of(s.dims, w))
            if best_key is None or key > best_key:
                best, best_key = [s], key
            elif key == best_key:
                best.append(s)
        if len(best) != 1:
            raise InternalContradictionError(
                f"{len(best)} maximal destabilizing subrepresentations of slope {_fmt(best_key[0])}",
                payload={"candidates": [repr(s) for s in best]},
            )
        return best[0]

    def hn_filtration(self, m: Representation, w: StabilityWeights, reverse: bool = False) -> HNResult:
        """
        The Harder-Narasimhan filtration of M.

        Each step takes the maximal destabilizing subrep of the current
        quotient and pulls it back to M. Quotients are re-checked semistable
        and slopes strictly decreasing before returning.

        Raises:
            InternalContradictionError: when a certificate fails.
        """
        slope(m.dims, w)
        chain: List[Subrepresentation] = []
        layers: List[Representation] = []
        current = Subrepresentation.zero(m)
        while not current.is_full:
            q = quotient_representation(m, current)
            top = self.max_destabilizing(q, w, reverse)
            layers.append(top.as_representation())
            current = pullback(current, top)
            chain.append(current)
            self.logger.debug(f"HN step {len(chain)}: {current.dims}, slope {_fmt(slope(top.dims, w))}")

        filtration = WeightedFiltration(tuple(chain))
        quotients = tuple(filtration_quotient_dims(filtration))
        slopes = tuple(slope(d, w) for d in quotients)

        if any(a <= b for a, b in zip(slopes, slopes[1:])):
            raise InternalContradictionError(
                f"HN slopes not strictly decreasing: {[_fmt(x) for x in slopes]}",
                payload={"representation": repr(m)},
            )
        for i, layer in enumerate(layers):
            if layer.dims != quotients[i]:
                raise InternalContradictionError(f"HN layer {i + 1} has dims {layer.dims}, expected {quotients[i]}")
            if not self.is_semistable(layer, w):
                raise InternalContradictionError(
                    f"HN quotient {i + 1} is not semistable",
                    payload={"representation": repr(m), "quotient": repr(layer)},
                )
        return HNResult(filtration, slopes, quotients)
