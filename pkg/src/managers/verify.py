"""
Verify Manager — Independent cross-checks of the HN and Kempf computations.

Architecture:
    [quiver, d, p] --iter_representations()--> every matrix tuple
                   --_analyze()--> semistability (slope / King / Hilbert-Mumford),
                                   HN type, Kempf = HN, pairing identity
                   --ordered merge--> [ScanReport]

Scans visit raw matrix tuples, so strata count representation points rather
than isomorphism classes. Work units run on a thread pool and are merged in
enumeration order, so reports do not depend on the worker count.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from handlers.field import Field
from handlers.hilbert_mumford import (
    numerical_mu_filtration,
    numerical_mu_weights,
    one_ps_from_filtration,
)
from handlers.matrix import Matrix
from handlers.problem_file import filtration_payload, representation_payload
from handlers.quiver import DimensionVector, Quiver, StabilityWeights, sigma_of, theta_of
from handlers.representation import Representation, WeightedFiltration
from managers.kempf import KempfAnalyzer, KempfResult
from managers.stability import HNResult, HNType, StabilityAnalyzer
from utils.config import Config, Guards
from utils.constants import (
    FAIL_MESSAGE,
    FAILURE_CONTRADICTION,
    FAILURE_GIT_DISAGREEMENT,
    FAILURE_PAIRING,
    FAILURE_THEOREM,
    PASS_MESSAGE,
    SEMISTABLE_MESSAGE,
    VERDICT_FAIL,
    VERDICT_NOT_APPLICABLE,
    VERDICT_PASS,
)
from utils.failures import (
    FailureLedger,
    InternalContradictionError,
    MalformedInputError,
    ResourceLimitError,
)
from utils.logger import Logger


@dataclass(frozen=True)
class TheoremCheck:
    verdict: str
    message: str
    hn: HNResult
    kempf: Optional[KempfResult] = None
    predicted_weights: Tuple[Fraction, ...] = ()

    @property
    def passed(self) -> bool:
        return self.verdict == VERDICT_PASS


@dataclass
class ScanReport:
    quiver: Quiver
    dims: DimensionVector
    field: Field
    weights: StabilityWeights
    total: int = 0
    semistable: int = 0
    unstable: int = 0
    theorem_pass: int = 0
    theorem_fail: int = 0
    strata: Dict[HNType, int] = field(default_factory=dict)
    ledger: FailureLedger = field(default_factory=FailureLedger)

    @property
    def ok(self) -> bool:
        return self.ledger.total == 0 and self.theorem_fail == 0

    def to_dict(self) -> dict:
        return {
            "representation_points": self.total,
            "semistable": self.semistable,
            "unstable": self.unstable,
            "theorem": {"pass": self.theorem_pass, "fail": self.theorem_fail},
            "strata": [{"type": t.to_list(), "count": n} for t, n in self.strata.items()],
            "failures": self.ledger.to_dict(),
        }


@dataclass
class _Outcome:
    semistable: Optional[bool] = None
    hn_type: Optional[HNType] = None
    verdict: Optional[str] = None
    ledger: FailureLedger = field(default_factory=FailureLedger)


def iter_representations(quiver: Quiver, dims: DimensionVector, field: Field,
                         guard: int) -> Iterator[Representation]:
    """
    Every representation of dimension ``dims`` over F_p, one per matrix tuple.

    Entries run over residues in row-major order, arrow by arrow, last entry fastest.

    Raises:
        ResourceLimitError: when p^{Σ d_src·d_tgt} exceeds ``guard``.
    """
    if not field.is_prime:
        raise MalformedInputError(f"scans need a prime field, got {field}")
    p = field.p
    shapes = [(a.id, dims[a.target], dims[a.source]) for a in quiver.arrows]
    entries = sum(r * c for _, r, c in shapes)
    count = p ** entries
    if count > guard:
        raise ResourceLimitError(f"representations of {dims} over {field}", count, guard)
    for values in product(range(p), repeat=entries):
        matrices = {}
        offset = 0
        for arrow_id, rows, cols in shapes:
            matrices[arrow_id] = Matrix(field, rows, cols, values[offset:offset + rows * cols])
            offset += rows * cols
        yield Representation(quiver, field, dims, matrices)


class VerifyManager:
    """
    Runs the consistency checks on single representations and on exhaustive scans.
    """

    def __init__(self, config: Config, guards: Optional[Guards] = None):
        """
        Args:
            config: Application configuration (``scan.workers``,
                    ``verify.pairing_samples``, ``verify.seed``).
            guards: Enumeration ceilings; defaults to ``config.guards()``.
        """
        self.logger = Logger("VerifyManager")
        self.config = config
        self.guards = guards or config.guards()
        self.stability = StabilityAnalyzer(config, self.guards)
        self.kempf = KempfAnalyzer(config, self.guards, self.stability)
        self.workers = max(1, config.get_int('scan.workers', 1))
        self.pairing_samples = config.get_int('verify.pairing_samples', 0)
        self.seed = config.get_int('verify.seed', 0)

    # ── Single representation ─────────────────────────────────────

    def verify_theorem(self, m: Representation, w: StabilityWeights,
                       hn: Optional[HNResult] = None) -> TheoremCheck:
        """
        Compare the Kempf filtration with the HN filtration.

        Both are computed on their own code paths. The check passes when the
        chains agree as canonical subspaces and the Kempf weights equal
        Θ(M) − σ(M)μ(M^i) on the HN quotients.
        """
        hn = hn or self.stability.hn_filtration(m, w)
        if hn.is_semistable:
            return TheoremCheck(VERDICT_NOT_APPLICABLE, SEMISTABLE_MESSAGE, hn)

        kempf = self.kempf.kempf_filtration(m, w)
        theta_m = theta_of(m.dims, w)
        sigma_m = sigma_of(m.dims, w)
        predicted = tuple(theta_m - sigma_m * mu for mu in hn.slopes)

        if not kempf.filtration.same_chain(hn.filtration):
            return TheoremCheck(VERDICT_FAIL, f"{FAIL_MESSAGE} (chains differ)", hn, kempf, predicted)
        if kempf.weights != predicted:
            return TheoremCheck(VERDICT_FAIL, f"{FAIL_MESSAGE} (weights differ)", hn, kempf, predicted)
        return TheoremCheck(VERDICT_PASS, PASS_MESSAGE, hn, kempf, predicted)

    def hn_type(self, m: Representation, w: StabilityWeights) -> HNType:
        return self.stability.hn_filtration(m, w).hn_type

    def check_pairing(self, m: Representation, w: StabilityWeights, samples: int = 0,
                      seed: int = 0, ledger: Optional[FailureLedger] = None) -> int:
        """
        Per-vertex and per-layer numerical functions on every chain of M.

        Every chain is weighted 0, 1, …, t; ``samples`` more chains are drawn
        with random strictly increasing rational weights.

        Returns:
            Number of mismatches (each one recorded in ``ledger`` when given).
        """
        chains = self.kempf.chains(m)
        weighted: List[WeightedFiltration] = [
            f.with_weights([Fraction(i) for i in range(f.length)]) for f in chains
        ]
        rng = np.random.default_rng(seed)
        for _ in range(samples):
            f = chains[int(rng.integers(len(chains)))]
            g = Fraction(int(rng.integers(-20, 21)), int(rng.integers(1, 9)))
            weights = [g]
            for _ in range(f.length - 1):
                g += Fraction(int(rng.integers(1, 21)), int(rng.integers(1, 9)))
                weights.append(g)
            weighted.append(f.with_weights(weights))

        mismatches = 0
        for f in weighted:
            per_vertex = numerical_mu_weights(m, one_ps_from_filtration(f), w)
            per_layer = numerical_mu_filtration(m, f, w)
            if per_vertex != per_layer:
                mismatches += 1
                if ledger is not None:
                    ledger.record(
                        FAILURE_PAIRING,
                        f"per-vertex {per_vertex} != per-layer {per_layer}",
                        {"representation": representation_payload(m), "filtration": filtration_payload(f)},
                    )
        return mismatches

    # ── Exhaustive scan ───────────────────────────────────────────

    def _analyze(self, item: Tuple[int, Representation, StabilityWeights]) -> _Outcome:
        index, m, w = item
        out = _Outcome()
        payload = {"representation": representation_payload(m)}
        try:
            out.semistable = self.stability.is_semistable(m, w)
            for name, verdict, expected in (
                ("Hilbert-Mumford semistability", self.kempf.hm_semistable(m, w), out.semistable),
                ("King semistability", self.stability.king_semistable(m, w), out.semistable),
                ("Hilbert-Mumford stability", self.kempf.hm_stable(m, w), self.stability.is_stable(m, w)),
            ):
                if verdict != expected:
                    out.ledger.record(FAILURE_GIT_DISAGREEMENT,
                                      f"{name} says {verdict}, slope test says {expected}", payload)

            hn = self.stability.hn_filtration(m, w)
            out.hn_type = hn.hn_type
            check = self.verify_theorem(m, w, hn)
            out.verdict = check.verdict
            if check.verdict == VERDICT_FAIL:
                out.ledger.record(FAILURE_THEOREM, check.message, {
                    **payload,
                    "hn": filtration_payload(check.hn.filtration),
                    "kempf": filtration_payload(check.kempf.filtration),
                })
            self.check_pairing(m, w, self.pairing_samples, self.seed + index, out.ledger)
        except InternalContradictionError as e:
            out.ledger.record(FAILURE_CONTRADICTION, e.message, {**payload, **e.payload})
        return out

    def exhaustive_scan(self, quiver: Quiver, dims: DimensionVector, p: int,
                        w: StabilityWeights) -> ScanReport:
        """
        Run every check on every representation of ``dims`` over F_p.

        Raises:
            ResourceLimitError: when the representation count exceeds ``guards.representations``.
        """
        field = Field.prime(p)
        report = ScanReport(quiver, dims, field, w)
        reps = iter_representations(quiver, dims, field, self.guards.representations)
        items = ((i, m, w) for i, m in enumerate(reps))
        self.logger.info(f"Scanning {dims} over {field} with {self.workers} worker(s)")

        if self.workers > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                outcomes = list(pool.map(self._analyze, items))
        else:
            outcomes = [self._analyze(item) for item in items]

        for out in outcomes:
            report.total += 1
            if out.semistable is True:
                report.semistable += 1
            elif out.semistable is False:
                report.unstable += 1
            if out.verdict == VERDICT_PASS:
                report.theorem_pass += 1
            elif out.verdict == VERDICT_FAIL:
                report.theorem_fail += 1
            if out.hn_type is not None:
                report.strata[out.hn_type] = report.strata.get(out.hn_type, 0) + 1
            report.ledger.merge(out.ledger)

        self.logger.info(
            f"Scan done: {report.total} points, {report.semistable} semistable, "
            f"{report.unstable} unstable, theorem {report.theorem_pass} pass / "
            f"{report.theorem_fail} fail, {report.ledger.total} failure(s)"
        )
        return report
