"""
Global constants for the quiverhn workbench.
"""
from pathlib import Path

# Project Structure
BASE_DIR = Path(__file__).parent.parent          # → src/
PROJECT_ROOT = BASE_DIR.parent                   # → quiverhn/
CONFIGS_DIR = PROJECT_ROOT / "configs"
LOGS_DIR = PROJECT_ROOT / "logs"                 # → quiverhn/logs/
DEFAULT_CONFIG_FILE = CONFIGS_DIR / "config.yaml"
LOG_FILE_NAME = "quiverhn.log"

# Resource guards
DEFAULT_GUARD_SUBSPACES = 1_000_000   # subspaces enumerated per vertex
DEFAULT_GUARD_REPS = 100_000          # matrix tuples visited by a scan
DEFAULT_GUARD_CHAINS = 2_000_000      # chains visited by the Kempf search

# Exit statuses (stable contract for scripting)
EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_RESOURCE = 2
EXIT_CONTRADICTION = 3
EXIT_NOT_APPLICABLE = 4

# Field kinds
FIELD_RATIONAL = "rational"
FIELD_PRIME = "prime"

# CLI commands
COMMAND_SLOPE = "slope"
COMMAND_SEMISTABLE = "semistable"
COMMAND_HN = "hn"
COMMAND_KEMPF = "kempf"
COMMAND_VERIFY = "verify"
COMMAND_SCAN = "scan"
COMMAND_ENVELOPE = "envelope"
COMMANDS = (
    COMMAND_SLOPE,
    COMMAND_SEMISTABLE,
    COMMAND_HN,
    COMMAND_KEMPF,
    COMMAND_VERIFY,
    COMMAND_SCAN,
    COMMAND_ENVELOPE,
)

# Theorem verdicts
VERDICT_PASS = "PASS"
VERDICT_FAIL = "FAIL"
VERDICT_NOT_APPLICABLE = "NOT_APPLICABLE"
PASS_MESSAGE = "PASS: Kempf filtration = HN filtration"
FAIL_MESSAGE = "FAIL: Kempf filtration != HN filtration"
SEMISTABLE_MESSAGE = "representation is (Θ,σ)-semistable"

# Failure kinds recorded by the scan ledger
FAILURE_THEOREM = "theorem"
FAILURE_GIT_DISAGREEMENT = "git_disagreement"
FAILURE_PAIRING = "pairing"
FAILURE_CONTRADICTION = "contradiction"

# Figure defaults
DEFAULT_UNITS_PER_CM = 40
DEFAULT_DECIMAL_DIGITS = 12
