"""
Quiver — Finite quivers, dimension vectors and (Θ, σ) stability weights.

All per-vertex data is stored as tuples in the quiver's declared vertex order.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from utils.failures import MalformedInputError, UndefinedSlopeError


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    """Finite directed multigraph; loops and parallel arrows allowed."""
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise MalformedInputError(f"duplicate vertex ids in {list(self.vertices)}")
        ids = [a.id for a in self.arrows]
        if len(set(ids)) != len(ids):
            raise MalformedInputError(f"duplicate arrow ids in {ids}")
        known = set(self.vertices)
        for a in self.arrows:
            for end, name in ((a.source, "source"), (a.target, "target")):
                if end not in known:
                    raise MalformedInputError(f"arrow {a.id!r}: unknown {name} vertex {end!r}")

    @classmethod
    def build(cls, vertices: Iterable[str], arrows: Iterable[Tuple[str, str, str]] = ()) -> "Quiver":
        """Shorthand: arrows as (id, source, target) triples."""
        return cls(tuple(vertices), tuple(Arrow(*a) for a in arrows))

    def index(self, vertex: str) -> int:
        try:
            return self.vertices.index(vertex)
        except ValueError:
            raise MalformedInputError(f"unknown vertex {vertex!r}")

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"id": a.id, "src": a.source, "tgt": a.target} for a in self.arrows],
        }


@dataclass(frozen=True)
class DimensionVector:
    """Non-negative integers indexed by the quiver's vertices."""
    vertices: Tuple[str, ...]
    values: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "values", tuple(int(x) for x in self.values))
        if len(self.vertices) != len(self.values):
            raise MalformedInputError(
                f"dimension vector has {len(self.values)} entries for {len(self.vertices)} vertices"
            )
        for v, x in zip(self.vertices, self.values):
            if x < 0:
                raise MalformedInputError(f"negative dimension {x} at vertex {v!r}")

    @classmethod
    def of(cls, quiver: Quiver, values: Sequence[int]) -> "DimensionVector":
        return cls(quiver.vertices, tuple(values))

    @classmethod
    def from_mapping(cls, quiver: Quiver, values: Mapping[str, int]) -> "DimensionVector":
        return cls(quiver.vertices, tuple(values[v] for v in quiver.vertices))

    @classmethod
    def zero(cls, quiver: Quiver) -> "DimensionVector":
        return cls(quiver.vertices, (0,) * len(quiver.vertices))

    def __getitem__(self, vertex: str) -> int:
        return self.values[self.vertices.index(vertex)]

    def _check(self, other: "DimensionVector"):
        if self.vertices != other.vertices:
            raise MalformedInputError("dimension vectors indexed by different vertices")

    def __add__(self, other: "DimensionVector") -> "DimensionVector":
        self._check(other)
        return DimensionVector(self.vertices, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "DimensionVector") -> "DimensionVector":
        self._check(other)
        return DimensionVector(self.vertices, tuple(a - b for a, b in zip(self.values, other.values)))

    @property
    def is_zero(self) -> bool:
        return not any(self.values)

    def to_dict(self) -> Dict[str, int]:
        return dict(zip(self.vertices, self.values))

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.values) + ")"


@dataclass(frozen=True)
class StabilityWeights:
    """Integer Θ and strictly positive integer σ per vertex."""
    vertices: Tuple[str, ...]
    theta: Tuple[int, ...]
    sigma: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "theta", tuple(int(x) for x in self.theta))
        object.__setattr__(self, "sigma", tuple(int(x) for x in self.sigma))
        n = len(self.vertices)
        if len(self.theta) != n or len(self.sigma) != n:
            raise MalformedInputError(f"stability weights need {n} entries for theta and sigma")
        for v, s in zip(self.vertices, self.sigma):
            if s < 1:
                raise MalformedInputError(f"sigma at vertex {v!r} must be strictly positive, got {s}")

    @classmethod
    def of(cls, quiver: Quiver, theta: Sequence[int], sigma: Sequence[int] = None) -> "StabilityWeights":
        if sigma is None:
            sigma = (1,) * len(quiver.vertices)
        return cls(quiver.vertices, tuple(theta), tuple(sigma))

    def _check(self, d: DimensionVector):
        if d.vertices != self.vertices:
            raise MalformedInputError(
                f"vertex mismatch: weights on {list(self.vertices)}, dims on {list(d.vertices)}"
            )


def theta_of(d: DimensionVector, w: StabilityWeights) -> int:
    """Θ(d) = Σ_v Θ_v d_v."""
    w._check(d)
    return sum(t * x for t, x in zip(w.theta, d.values))


def sigma_of(d: DimensionVector, w: StabilityWeights) -> int:
    """σ(d) = Σ_v σ_v d_v, the total dimension."""
    w._check(d)
    return sum(s * x for s, x in zip(w.sigma, d.values))


def slope(d: DimensionVector, w: StabilityWeights) -> Fraction:
    """μ(d) = Θ(d) / σ(d) for a nonzero dimension vector."""
    total = sigma_of(d, w)
    if d.is_zero:
        raise UndefinedSlopeError("slope of the zero dimension vector is undefined")
    return Fraction(theta_of(d, w), total)
