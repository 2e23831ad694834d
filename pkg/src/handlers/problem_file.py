"""
Problem File — JSON problem descriptions and plain-data report payloads.

    {
      "quiver": {"vertices": ["v1", "v2"], "arrows": [{"id": "a", "src": "v1", "tgt": "v2"}]},
      "field": {"kind": "prime", "p": 2},
      "dims": {"v1": 1, "v2": 1},
      "matrices": {"a": [[0]]},
      "theta": {"v1": 1, "v2": 0},
      "sigma": {"v1": 1, "v2": 1}
    }

``matrices`` may be omitted for scans; ``sigma`` defaults to 1 at every vertex.
Over the rationals entries may be integers or "a/b" strings.
"""
import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral
from typing import Any, Dict, List, Optional, Sequence, Union

from handlers.field import Field, format_scalar, parse_rational
from handlers.matrix import Matrix
from handlers.quiver import Arrow, DimensionVector, Quiver, StabilityWeights
from handlers.representation import Representation, Subrepresentation, WeightedFiltration
from utils.constants import FIELD_PRIME, FIELD_RATIONAL
from utils.failures import MalformedInputError

ReportScalar = Union[int, str]


@dataclass(frozen=True)
class ProblemFile:
    quiver: Quiver
    field: Field
    dims: DimensionVector
    weights: StabilityWeights
    matrices: Optional[Dict[str, Matrix]] = None

    def representation(self) -> Representation:
        """
        Raises:
            MalformedInputError: when the file carries no matrices.
        """
        if self.matrices is None:
            raise MalformedInputError("problem has no 'matrices' key")
        return Representation(self.quiver, self.field, self.dims, self.matrices)

    def with_weights(self, weights: StabilityWeights) -> "ProblemFile":
        return ProblemFile(self.quiver, self.field, self.dims, weights, self.matrices)


# ── Parsing ───────────────────────────────────────────────────────


def _require(obj: Dict[str, Any], key: str, where: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise MalformedInputError(f"{where}: missing key {key!r}")
    return obj[key]


def _integer(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise MalformedInputError(f"{where}: expected an integer, got {value!r}")
    return int(value)


def _per_vertex(obj: Any, quiver: Quiver, key: str) -> List[int]:
    if not isinstance(obj, dict):
        raise MalformedInputError(f"{key}: expected an object keyed by vertex")
    unknown = sorted(set(obj) - set(quiver.vertices))
    if unknown:
        raise MalformedInputError(f"{key}: unknown vertex {unknown[0]!r}")
    values = []
    for v in quiver.vertices:
        if v not in obj:
            raise MalformedInputError(f"{key}: missing vertex {v!r}")
        values.append(_integer(obj[v], f"{key}.{v}"))
    return values


def _parse_field(obj: Any) -> Field:
    kind = _require(obj, "kind", "field")
    if kind == FIELD_RATIONAL:
        return Field.rational()
    if kind == FIELD_PRIME:
        p = _integer(_require(obj, "p", "field"), "field.p")
        try:
            return Field.prime(p)
        except MalformedInputError as e:
            raise MalformedInputError(f"field.p: {e.message}")
    raise MalformedInputError(f"field.kind: unknown field kind {kind!r}")


def _parse_quiver(obj: Any) -> Quiver:
    vertices = _require(obj, "vertices", "quiver")
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise MalformedInputError("quiver.vertices: expected a list of strings")
    arrows = []
    for i, a in enumerate(obj.get("arrows", [])):
        where = f"quiver.arrows[{i}]"
        arrow_id = _require(a, "id", where)
        arrows.append(Arrow(str(arrow_id), _require(a, "src", where), _require(a, "tgt", where)))
    return Quiver(tuple(vertices), tuple(arrows))


def _parse_entry(field: Field, value: Any, where: str):
    if field.is_prime:
        return field.element(_integer(value, where))
    try:
        return field.element(parse_rational(value))
    except MalformedInputError:
        raise MalformedInputError(f"{where}: {value!r} is not a rational")


def _parse_matrices(obj: Any, quiver: Quiver, field: Field, dims: DimensionVector) -> Dict[str, Matrix]:
    if not isinstance(obj, dict):
        raise MalformedInputError("matrices: expected an object keyed by arrow id")
    ids = [a.id for a in quiver.arrows]
    unknown = sorted(set(obj) - set(ids))
    if unknown:
        raise MalformedInputError(f"matrices: unknown arrow {unknown[0]!r}")
    out = {}
    for a in quiver.arrows:
        rows = _require(obj, a.id, "matrices")
        where = f"matrices.{a.id}"
        n_rows, n_cols = dims[a.target], dims[a.source]
        if not isinstance(rows, list):
            raise MalformedInputError(f"{where}: expected a list of rows")
        # A map out of a zero space may be written [] instead of [[], …]
        if n_cols == 0 and not rows:
            rows = [[] for _ in range(n_rows)]
        if len(rows) != n_rows or any(not isinstance(r, list) or len(r) != n_cols for r in rows):
            raise MalformedInputError(f"{where}: expected a {n_rows}x{n_cols} matrix")
        parsed = [[_parse_entry(field, x, f"{where}[{i}][{j}]") for j, x in enumerate(r)]
                  for i, r in enumerate(rows)]
        out[a.id] = Matrix.from_rows(field, parsed, cols=n_cols)
    return out


def parse_problem(text: str) -> ProblemFile:
    """
    Parse and validate a JSON problem.

    Raises:
        MalformedInputError: naming the offending key, vertex or arrow.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"problem is not valid JSON: {e}")
    if not isinstance(obj, dict):
        raise MalformedInputError("problem must be a JSON object")

    quiver = _parse_quiver(_require(obj, "quiver", "problem"))
    field = _parse_field(_require(obj, "field", "problem"))
    dims = DimensionVector.of(quiver, _per_vertex(_require(obj, "dims", "problem"), quiver, "dims"))
    theta = _per_vertex(_require(obj, "theta", "problem"), quiver, "theta")
    sigma = _per_vertex(obj["sigma"], quiver, "sigma") if "sigma" in obj else [1] * len(quiver.vertices)
    for v, s in zip(quiver.vertices, sigma):
        if s < 1:
            raise MalformedInputError(f"sigma.{v}: must be strictly positive, got {s}")
    weights = StabilityWeights.of(quiver, theta, sigma)

    matrices = None
    if "matrices" in obj:
        matrices = _parse_matrices(obj["matrices"], quiver, field, dims)
    problem = ProblemFile(quiver, field, dims, weights, matrices)
    if matrices is not None:
        problem.representation()
    return problem


def load_problem(path: str) -> ProblemFile:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return parse_problem(f.read())
    except OSError as e:
        raise MalformedInputError(f"cannot read problem file {path}: {e}")
    except UnicodeDecodeError as e:
        raise MalformedInputError(f"problem file {path} is not UTF-8: {e}")


def serialize_problem(problem: ProblemFile) -> str:
    """JSON text that ``parse_problem`` reads back to an identical problem."""
    obj: Dict[str, Any] = {
        "quiver": problem.quiver.to_dict(),
        "field": problem.field.to_dict(),
        "dims": problem.dims.to_dict(),
    }
    if problem.matrices is not None:
        obj["matrices"] = {
            a.id: [[report_scalar(x) for x in row] for row in problem.matrices[a.id].to_rows()]
            for a in problem.quiver.arrows
        }
    obj["theta"] = dict(zip(problem.weights.vertices, problem.weights.theta))
    obj["sigma"] = dict(zip(problem.weights.vertices, problem.weights.sigma))
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# ── Report payloads ───────────────────────────────────────────────


def report_scalar(value: Any) -> ReportScalar:
    """Integers stay integers; other rationals become "a/b"."""
    q = Fraction(value)
    return q.numerator if q.denominator == 1 else format_scalar(q)


def report_scalars(values: Sequence) -> List[ReportScalar]:
    return [report_scalar(x) for x in values]


def subrep_payload(s: Subrepresentation) -> Dict[str, List[List[ReportScalar]]]:
    """Per vertex, the RREF basis rows of the subspace."""
    return {v: [report_scalars(vec) for vec in s.space(v).vectors()]
            for v in s.parent.quiver.vertices}


def representation_payload(m: Representation) -> Dict[str, Any]:
    return {
        "field": str(m.field),
        "dims": m.dims.to_dict(),
        "matrices": {a.id: [report_scalars(row) for row in m.matrix(a.id).to_rows()]
                     for a in m.quiver.arrows},
    }


def filtration_payload(f: WeightedFiltration) -> Dict[str, Any]:
    out: Dict[str, Any] = {"chain": [subrep_payload(s) for s in f.chain]}
    if f.weights is not None:
        out["weights"] = report_scalars(f.weights)
    return out
