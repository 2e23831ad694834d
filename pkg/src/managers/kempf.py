"""
Kempf Manager — Hilbert-Mumford semistability and the Kempf filtration.

Architecture:
    [Representation] --chains()--> [every chain 0 ⊂ M_1 ⊂ … ⊂ M]
                     --optimal_weighting()--> envelope Γ_v, coarsened
                     --kempf_value()--> argmax, asserted unique and positive

The weight search is replaced by the envelope: for a fixed chain the Kempf
function equals μ_v, which the envelope weights maximize on the closed cone.
So the maximum over weighted filtrations is a finite maximum over chains.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from handlers.envelope import KempfValue, coarsen, gamma_opt, vector_of_filtration
from handlers.hilbert_mumford import kempf_value, numerical_mu_filtration
from handlers.quiver import StabilityWeights, slope
from handlers.representation import Representation, Subrepresentation, WeightedFiltration
from managers.stability import StabilityAnalyzer
from utils.config import Config, Guards
from utils.constants import SEMISTABLE_MESSAGE
from utils.failures import (
    InternalContradictionError,
    MalformedInputError,
    NotApplicableError,
    ResourceLimitError,
)
from utils.logger import Logger


@dataclass(frozen=True)
class KempfResult:
    filtration: WeightedFiltration
    value: KempfValue
    chains_searched: int

    @property
    def weights(self) -> Tuple[Fraction, ...]:
        return self.filtration.weights


class KempfAnalyzer:
    """
    Exhaustive Kempf filtration search over chains of subrepresentations.
    """

    def __init__(self, config: Config, guards: Optional[Guards] = None,
                 stability: Optional[StabilityAnalyzer] = None):
        """
        Args:
            config: Application configuration.
            guards: Enumeration ceilings; defaults to ``config.guards()``.
            stability: Shared analyzer for subrep enumeration and semistability.
        """
        self.logger = Logger("KempfAnalyzer")
        self.config = config
        self.guards = guards or config.guards()
        self.stability = stability or StabilityAnalyzer(config, self.guards)

    # ── Chains ────────────────────────────────────────────────────

    def chains(self, m: Representation) -> List[WeightedFiltration]:
        """
        Every strict chain of proper nonzero subreps, closed by M.

        Depth-first in subrep enumeration order; the trivial chain 0 ⊂ M comes first.

        Raises:
            ResourceLimitError: when the chain count exceeds ``guards.chains``.
        """
        proper = self.stability.proper_subreps(m)
        full = Subrepresentation.full(m)
        above = [
            [j for j, t in enumerate(proper) if j != i and s.leq(t) and s != t]
            for i, s in enumerate(proper)
        ]
        out: List[WeightedFiltration] = []

        def extend(prefix: Tuple[int, ...]):
            out.append(WeightedFiltration(tuple(proper[k] for k in prefix) + (full,)))
            if len(out) > self.guards.chains:
                raise ResourceLimitError("subrepresentation chains", len(out), self.guards.chains)
            for j in (above[prefix[-1]] if prefix else range(len(proper))):
                extend(prefix + (j,))

        extend(())
        return out

    def optimal_weighting(self, m: Representation, f: WeightedFiltration,
                          w: StabilityWeights) -> WeightedFiltration:
        """The chain weighted by its envelope Γ_v, with equal-weight steps dropped."""
        result = gamma_opt(vector_of_filtration(m, f, w))
        return coarsen(f, result.gamma)

    # ── Hilbert-Mumford criterion ─────────────────────────────────

    def hm_semistable(self, m: Representation, w: StabilityWeights) -> bool:
        """
        True iff the numerical function is ≤ 0 on every chain.

        Per chain only the envelope weights are tested: the supremum over the
        cone is positive exactly when it is positive at Γ_v.
        """
        slope(m.dims, w)
        for f in self.chains(m):
            if numerical_mu_filtration(m, self.optimal_weighting(m, f, w), w) > 0:
                return False
        return True

    def hm_stable(self, m: Representation, w: StabilityWeights) -> bool:
        """True iff every step filtration 0 ⊂ S ⊂ M with weights (0, 1) has μ < 0."""
        slope(m.dims, w)
        full = Subrepresentation.full(m)
        for s in self.stability.proper_subreps(m):
            f = WeightedFiltration((s, full), (Fraction(0), Fraction(1)))
            if numerical_mu_filtration(m, f, w) >= 0:
                return False
        return True

    # ── Kempf filtration ──────────────────────────────────────────

    def kempf_filtration(self, m: Representation, w: StabilityWeights) -> KempfResult:
        """
        The weighted filtration maximizing the Kempf function.

        Raises:
            NotApplicableError: when M is semistable.
            InternalContradictionError: when the maximum is not positive or
                is attained by two distinct weighted filtrations.
        """
        if self.stability.is_semistable(m, w):
            raise NotApplicableError(SEMISTABLE_MESSAGE)

        chains = self.chains(m)
        self.logger.info(f"Kempf search over {len(chains)} chains of {m.dims}")
        best_value: Optional[KempfValue] = None
        maximizers: List[WeightedFiltration] = []
        for f in chains:
            candidate = self.optimal_weighting(m, f, w)
            value = kempf_value(m, candidate, w)
            if best_value is None or value > best_value:
                best_value, maximizers = value, [candidate]
            elif value == best_value and candidate not in maximizers:
                maximizers.append(candidate)

        if best_value.sign <= 0:
            raise InternalContradictionError(
                "unstable representation without a positive Kempf value",
                payload={"representation": repr(m)},
            )
        if len(maximizers) != 1:
            raise InternalContradictionError(
                f"{len(maximizers)} distinct Kempf maximizers",
                payload={"representation": repr(m), "maximizers": [repr(f) for f in maximizers]},
            )
        return KempfResult(maximizers[0], best_value, len(chains))

    def refinement_gamma(self, m: Representation, f: WeightedFiltration, s: Subrepresentation,
                         w: StabilityWeights) -> WeightedFiltration:
        """
        Insert S into the chain of F and re-weight the refined chain.

        For the Kempf filtration the result is F again.

        Raises:
            MalformedInputError: if S is zero, already a step, or not comparable with every step.
        """
        if s.is_zero or s in f.chain:
            raise MalformedInputError("refinement needs a nonzero subrepresentation outside the chain")
        below = [t for t in f.chain if t.leq(s)]
        above = [t for t in f.chain if s.leq(t)]
        if len(below) + len(above) != f.length:
            raise MalformedInputError("refinement step is not comparable with every chain step")
        refined = WeightedFiltration(tuple(below) + (s,) + tuple(above))
        return self.optimal_weighting(m, refined, w)
