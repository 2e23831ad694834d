"""
Command Manager — Dispatches CLI commands and renders their reports.

Reports are YAML documents that open with a header echoing the problem
(field, dims, Θ, σ and the character exponents). ``envelope`` prints a CSV
table with the same header as ``#`` comments. Only exact values appear except
in fields named ``decimal``.
"""
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import yaml

from handlers.envelope import gamma_opt, vector_of_filtration
from handlers.figure import envelope_csv, envelope_svg, write_svg
from handlers.hilbert_mumford import character_exponents
from handlers.problem_file import (
    ProblemFile,
    filtration_payload,
    report_scalar,
    report_scalars,
    subrep_payload,
)
from handlers.quiver import slope
from managers.stability import transform_weights
from managers.verify import VerifyManager
from utils.config import Config
from utils.constants import (
    COMMAND_ENVELOPE,
    COMMAND_HN,
    COMMAND_KEMPF,
    COMMAND_SCAN,
    COMMAND_SEMISTABLE,
    COMMAND_SLOPE,
    COMMAND_VERIFY,
    COMMANDS,
    DEFAULT_DECIMAL_DIGITS,
    DEFAULT_UNITS_PER_CM,
    EXIT_CONTRADICTION,
    EXIT_OK,
    SEMISTABLE_MESSAGE,
    VERDICT_NOT_APPLICABLE,
    VERDICT_PASS,
)
from utils.failures import MalformedInputError, NotApplicableError
from utils.logger import Logger


@dataclass(frozen=True)
class CommandOptions:
    svg: Optional[str] = None
    transform: Optional[Tuple[int, int]] = None


class CommandManager:
    """
    Runs one command on one problem and returns (report text, exit status).
    """

    def __init__(self, config: Config):
        self.logger = Logger("CommandManager")
        self.config = config
        self.verify = VerifyManager(config)
        self.stability = self.verify.stability
        self.kempf = self.verify.kempf
        self.digits = config.get_int('report.decimal_digits', DEFAULT_DECIMAL_DIGITS)
        self.units_per_cm = config.get_int('figure.units_per_cm', DEFAULT_UNITS_PER_CM)

        self._handlers = {
            COMMAND_SLOPE: self._slope,
            COMMAND_SEMISTABLE: self._semistable,
            COMMAND_HN: self._hn,
            COMMAND_KEMPF: self._kempf,
            COMMAND_VERIFY: self._verify,
            COMMAND_SCAN: self._scan,
            COMMAND_ENVELOPE: self._envelope,
        }

    def dispatch(self, command: str, problem: ProblemFile,
                 options: Optional[CommandOptions] = None) -> Tuple[str, int]:
        """
        Args:
            command: One of ``utils.constants.COMMANDS``.
            problem: Parsed problem file.
            options: ``--svg`` and ``--transform`` settings.

        Raises:
            QuiverError: subclasses carry the exit status for failures.
        """
        if command not in COMMANDS:
            raise MalformedInputError(f"unknown command {command!r}")
        options = options or CommandOptions()
        if options.svg and command != COMMAND_ENVELOPE:
            self.logger.warning(f"--svg is ignored by {command}")
        if options.transform is not None:
            a, b = options.transform
            problem = problem.with_weights(transform_weights(problem.weights, a, b))
        self.logger.info(f"Running {command} on {problem.dims} over {problem.field}")
        return self._handlers[command](problem, options)

    # ── Rendering ─────────────────────────────────────────────────

    def _header(self, command: str, problem: ProblemFile, options: CommandOptions) -> Dict[str, Any]:
        w = problem.weights
        header: Dict[str, Any] = {
            "command": command,
            "field": str(problem.field),
            "dims": problem.dims.to_dict(),
            "theta": dict(zip(w.vertices, w.theta)),
            "sigma": dict(zip(w.vertices, w.sigma)),
            "character_exponents": character_exponents(problem.dims, w).to_dict(),
        }
        if options.transform is not None:
            header["transform"] = list(options.transform)
        return header

    @staticmethod
    def _render(doc: Dict[str, Any]) -> str:
        return yaml.safe_dump(doc, sort_keys=False, allow_unicode=True, default_flow_style=False)

    # ── Commands ──────────────────────────────────────────────────

    def _slope(self, problem: ProblemFile, options: CommandOptions) -> Tuple[str, int]:
        doc = self._header(COMMAND_SLOPE, problem, options)
        doc["slope"] = report_scalar(slope(problem.dims, problem.weights))
        return self._render(doc), EXIT_OK

    def _semistable(self, problem: ProblemFile, options: CommandOptions) -> Tuple[str, int]:
        m, w = problem.representation(), problem.weights
        doc = self._header(COMMAND_SEMISTABLE, problem, options)
        semistable = self.stability.is_semistable(m, w)
        doc["semistable"] = semistable
        doc["stable"] = self.stability.is_stable(m, w)
        if not semistable:
            witness = self.stability.destabilizing_witness(m, w)
            doc["witness"] = {
                "dims": witness.dims.to_dict(),
                "slope": report_scalar(slope(witness.dims, w)),
                "subspaces": subrep_payload(witness),
            }
        return self._render(doc), EXIT_OK

    def _hn(self, problem: ProblemFile, options: CommandOptions) -> Tuple[str, int]:
        m, w = problem.representation(), problem.weights
        hn = self.stability.hn_filtration(m, w)
        doc = self._header(COMMAND_HN, problem, options)
        doc["semistable"] = hn.is_semistable
        doc["chain"] = [subrep_payload(s) for s in hn.filtration.chain]
        doc["quotient_dims"] = [d.to_dict() for d in hn.quotient_dims]
        doc["slopes"] = report_scalars(hn.slopes)
        return self._render(doc), EXIT_OK

    def _kempf(self, problem: ProblemFile, options: CommandOptions) -> Tuple[str, int]:
        m, w = problem.representation(), problem.weights
        result = self.kempf.kempf_filtration(m, w)
        doc = self._header(COMMAND_KEMPF, problem, options)
        doc["chain"] = [subrep_payload(s) for s in result.filtration.chain]
        doc["weights"] = report_scalars(result.weights)
        doc["value"] = {
            "numerator": report_scalar(result.value.numerator),
            "norm_square": report_scalar(result.value.norm_square),
            "decimal": result.value.decimal(self.digits),
        }
        doc["chains_searched"] = result.chains_searched
        return self._render(doc), EXIT_OK

    def _verify(self, problem: ProblemFile, options: CommandOptions) -> Tuple[str, int]:
        m, w = problem.representation(), problem.weights
        check = self.verify.verify_theorem(m, w)
        if check.verdict == VERDICT_NOT_APPLICABLE:
            raise NotApplicableError(SEMISTABLE_MESSAGE)
        doc = self._header(COMMAND_VERIFY, problem, options)
        doc["verdict"] = check.verdict
        doc["message"] = check.message
        doc["hn"] = filtration_payload(check.hn.filtration)
        doc["hn"]["slopes"] = report_scalars(check.hn.slopes)
        doc["kempf"] = filtration_payload(check.kempf.filtration)
        doc["predicted_weights"] = report_scalars(check.predicted_weights)
        status = EXIT_OK if check.verdict == VERDICT_PASS else EXIT_CONTRADICTION
        return check.message + "\n" + self._render(doc), status

    def _scan(self, problem: ProblemFile, options: CommandOptions) -> Tuple[str, int]:
        if not problem.field.is_prime:
            raise MalformedInputError(f"scan needs a prime field, got {problem.field}")
        report = self.verify.exhaustive_scan(problem.quiver, problem.dims, problem.field.p, problem.weights)
        doc = self._header(COMMAND_SCAN, problem, options)
        doc.update(report.to_dict())
        return self._render(doc), EXIT_OK if report.ok else EXIT_CONTRADICTION

    def _envelope(self, problem: ProblemFile, options: CommandOptions) -> Tuple[str, int]:
        m, w = problem.representation(), problem.weights
        hn = self.stability.hn_filtration(m, w)
        data = vector_of_filtration(m, hn.filtration, w)
        env = gamma_opt(data)
        header = self._header(COMMAND_ENVELOPE, problem, options)
        comments = [f"{key}: {self._inline(value)}" for key, value in header.items()]
        comments.append(f"hn_slopes: {self._inline(report_scalars(hn.slopes))}")
        text = envelope_csv(data, env, comments)
        if options.svg:
            title = f"HN envelope of {problem.dims} over {problem.field}"
            write_svg(options.svg, envelope_svg(data, env, title, self.units_per_cm))
            self.logger.info(f"Envelope figure written to {options.svg}")
        return text, EXIT_OK

    @staticmethod
    def _inline(value: Any) -> str:
        return yaml.safe_dump(value, default_flow_style=True, allow_unicode=True, sort_keys=False,
                              width=10_000).strip().removesuffix("...").strip()
