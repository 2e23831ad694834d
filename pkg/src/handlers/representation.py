"""
Representation — Quiver representations, subrepresentations, quotients and
weighted filtrations.

Quotient coordinates: for a subrepresentation with spaces U_v, the quotient
M_v / U_v is identified with the standard coordinates of k^{d_v} that are not
pivots of U_v's RREF basis. Projection reduces a vector modulo U_v and keeps
those coordinates; lifting places quotient coordinates back in those columns.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from handlers.field import Field, Scalar
from handlers.matrix import Matrix
from handlers.quiver import DimensionVector, Quiver
from handlers.subspace import Subspace, apply_map, subspace_leq
from utils.failures import MalformedInputError


class Representation:
    """A vector space k^{d_v} per vertex and a d_target × d_source matrix per arrow."""

    def __init__(self, quiver: Quiver, field: Field, dims: DimensionVector,
                 matrices: Mapping[str, Matrix]):
        if dims.vertices != quiver.vertices:
            raise MalformedInputError("dimension vector does not match the quiver's vertices")
        arrow_ids = [a.id for a in quiver.arrows]
        unknown = sorted(set(matrices) - set(arrow_ids))
        if unknown:
            raise MalformedInputError(f"matrices given for unknown arrows {unknown}")
        checked: Dict[str, Matrix] = {}
        for a in quiver.arrows:
            if a.id not in matrices:
                raise MalformedInputError(f"arrow {a.id!r} has no matrix")
            m = matrices[a.id]
            if m.field != field:
                raise MalformedInputError(f"arrow {a.id!r}: matrix over {m.field}, representation over {field}")
            shape = (dims[a.target], dims[a.source])
            if (m.rows, m.cols) != shape:
                raise MalformedInputError(
                    f"arrow {a.id!r}: matrix is {m.rows}x{m.cols}, expected {shape[0]}x{shape[1]}"
                )
            checked[a.id] = m
        self.quiver = quiver
        self.field = field
        self.dims = dims
        self.matrices = checked

    @classmethod
    def from_rows(cls, quiver: Quiver, field: Field, dims: Sequence[int],
                  rows: Mapping[str, Sequence[Sequence]]) -> "Representation":
        """Build from per-arrow row lists; empty matrices get their shape from ``dims``."""
        d = DimensionVector.of(quiver, dims)
        matrices = {}
        for a in quiver.arrows:
            matrices[a.id] = Matrix.from_rows(field, rows.get(a.id, []), cols=d[a.source])
        return cls(quiver, field, d, matrices)

    @classmethod
    def zero_maps(cls, quiver: Quiver, field: Field, dims: Sequence[int]) -> "Representation":
        d = DimensionVector.of(quiver, dims)
        return cls(quiver, field, d, {
            a.id: Matrix.zeros(field, d[a.target], d[a.source]) for a in quiver.arrows
        })

    def matrix(self, arrow_id: str) -> Matrix:
        return self.matrices[arrow_id]

    @property
    def is_zero(self) -> bool:
        return self.dims.is_zero

    def key(self):
        return (self.quiver, self.field, self.dims,
                tuple(self.matrices[a.id] for a in self.quiver.arrows))

    def __eq__(self, other) -> bool:
        return isinstance(other, Representation) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        maps = {a.id: self.matrices[a.id].to_rows() for a in self.quiver.arrows}
        return f"Representation({self.field}, dims={self.dims}, maps={maps})"


class Subrepresentation:
    """Per-vertex subspaces U_v of a parent representation."""

    def __init__(self, parent: Representation, spaces: Sequence[Subspace]):
        spaces = tuple(spaces)
        if len(spaces) != len(parent.quiver.vertices):
            raise MalformedInputError(
                f"subrepresentation has {len(spaces)} spaces for {len(parent.quiver.vertices)} vertices"
            )
        for v, u in zip(parent.quiver.vertices, spaces):
            if u.ambient_dim != parent.dims[v] or u.field != parent.field:
                raise MalformedInputError(
                    f"vertex {v!r}: subspace of {u.field}^{u.ambient_dim}, "
                    f"parent space is {parent.field}^{parent.dims[v]}"
                )
        self.parent = parent
        self.spaces = spaces

    @classmethod
    def zero(cls, parent: Representation) -> "Subrepresentation":
        return cls(parent, [Subspace.zero(parent.field, x) for x in parent.dims.values])

    @classmethod
    def full(cls, parent: Representation) -> "Subrepresentation":
        return cls(parent, [Subspace.full(parent.field, x) for x in parent.dims.values])

    def space(self, vertex: str) -> Subspace:
        return self.spaces[self.parent.quiver.index(vertex)]

    @property
    def dims(self) -> DimensionVector:
        return DimensionVector(self.parent.quiver.vertices, tuple(u.dim for u in self.spaces))

    @property
    def is_zero(self) -> bool:
        return all(u.is_zero for u in self.spaces)

    @property
    def is_full(self) -> bool:
        return all(u.is_full for u in self.spaces)

    def leq(self, other: "Subrepresentation") -> bool:
        """Inclusion at every vertex."""
        return all(subspace_leq(a, b) for a, b in zip(self.spaces, other.spaces))

    def __eq__(self, other) -> bool:
        return isinstance(other, Subrepresentation) and self.spaces == other.spaces

    def __hash__(self) -> int:
        return hash(self.spaces)

    def __repr__(self) -> str:
        inner = ", ".join(f"{v}: {[list(x) for x in u.vectors()]}"
                          for v, u in zip(self.parent.quiver.vertices, self.spaces))
        return f"Subrepresentation({inner})"

    def as_representation(self) -> Representation:
        """
        This subrepresentation as a representation in its own coordinates.

        The basis at each vertex is the RREF basis of U_v; the restricted map
        sends a basis vector to its coordinates in the target's RREF basis.
        """
        parent = self.parent
        if not validate_subrep(self):
            raise MalformedInputError("not a subrepresentation: an arrow leaves the subspaces")
        matrices = {}
        for a in parent.quiver.arrows:
            src, tgt = self.space(a.source), self.space(a.target)
            m = parent.matrix(a.id)
            columns = []
            for b in src.vectors():
                image = m.data.dot(np.array(b, dtype=object)) if m.cols else np.zeros(m.rows, dtype=object)
                columns.append(tgt.coordinates(list(parent.field.normalize(image))))
            rows = [[columns[j][i] for j in range(src.dim)] for i in range(tgt.dim)]
            matrices[a.id] = Matrix.from_rows(parent.field, rows, cols=src.dim)
        return Representation(parent.quiver, parent.field, self.dims, matrices)


def validate_subrep(s: Subrepresentation) -> bool:
    """True iff every arrow α: v_i → v_j maps U_{v_i} into U_{v_j}."""
    parent = s.parent
    for a in parent.quiver.arrows:
        image = apply_map(parent.matrix(a.id), s.space(a.source))
        if not subspace_leq(image, s.space(a.target)):
            return False
    return True


# ── Quotients ─────────────────────────────────────────────────────


def _project(u: Subspace, vector: Sequence[Scalar]) -> List[Scalar]:
    """Coordinates of ``vector`` mod ``u`` in the non-pivot standard coordinates."""
    rem = u.reduce(vector)
    return [rem[j] for j in u.non_pivots]


def _lift(u: Subspace, coords: Sequence[Scalar]) -> List[Scalar]:
    out = [u.field.zero] * u.ambient_dim
    for j, x in zip(u.non_pivots, coords):
        out[j] = x
    return out


def quotient_representation(m: Representation, s: Subrepresentation) -> Representation:
    """
    The quotient M / S in non-pivot quotient coordinates.

    Raises:
        MalformedInputError: when S is not a subrepresentation of M.
    """
    if s.parent != m or not validate_subrep(s):
        raise MalformedInputError("quotient by an invalid subrepresentation")
    dims = m.dims - s.dims
    matrices = {}
    for a in m.quiver.arrows:
        src, tgt = s.space(a.source), s.space(a.target)
        mat = m.matrix(a.id)
        columns = []
        for coords in np.eye(dims[a.source], dtype=int).tolist():
            lifted = np.array(_lift(src, coords), dtype=object)
            image = mat.data.dot(lifted) if mat.cols else np.zeros(mat.rows, dtype=object)
            columns.append(_project(tgt, list(m.field.normalize(image))))
        rows = [[columns[j][i] for j in range(dims[a.source])] for i in range(dims[a.target])]
        matrices[a.id] = Matrix.from_rows(m.field, rows, cols=dims[a.source])
    return Representation(m.quiver, m.field, dims, matrices)


def pullback(s: Subrepresentation, n: Subrepresentation) -> Subrepresentation:
    """
    Preimage in M of a subrepresentation N of the quotient M / S.

    ``n.parent`` must be ``quotient_representation(s.parent, s)``.
    """
    spaces = []
    for u, w in zip(s.spaces, n.spaces):
        lifted = [_lift(u, vec) for vec in w.vectors()]
        spaces.append(u + Subspace.span(u.field, u.ambient_dim, lifted))
    return Subrepresentation(s.parent, spaces)


# ── Filtrations ───────────────────────────────────────────────────


@dataclass(frozen=True)
class WeightedFiltration:
    """
    Strict chain M_1 ⊂ … ⊂ M_{t+1} = M with optional weights Γ_1 < … < Γ_{t+1}.

    The leading zero subrepresentation is implicit.
    """
    chain: Tuple[Subrepresentation, ...]
    weights: Optional[Tuple[Fraction, ...]] = None

    def __post_init__(self):
        chain = tuple(self.chain)
        object.__setattr__(self, "chain", chain)
        if not chain:
            raise MalformedInputError("a filtration needs at least the full representation")
        if not chain[-1].is_full:
            raise MalformedInputError("the last filtration step must be the full representation")
        parent = chain[-1].parent
        previous = None
        for i, step in enumerate(chain):
            if step.parent != parent:
                raise MalformedInputError("filtration steps belong to different representations")
            if step.is_zero:
                raise MalformedInputError(f"filtration step {i + 1} is the zero subrepresentation")
            if previous is not None:
                if not previous.leq(step) or previous == step:
                    raise MalformedInputError(f"filtration step {i + 1} does not strictly contain step {i}")
            previous = step
        if self.weights is not None:
            weights = tuple(Fraction(x) for x in self.weights)
            object.__setattr__(self, "weights", weights)
            if len(weights) != len(chain):
                raise MalformedInputError(f"{len(weights)} weights for a chain of length {len(chain)}")
            if any(a >= b for a, b in zip(weights, weights[1:])):
                raise MalformedInputError("filtration weights must be strictly increasing")

    @classmethod
    def trivial(cls, m: Representation, weight: Optional[Fraction] = None) -> "WeightedFiltration":
        """0 ⊂ M, optionally with a single weight."""
        return cls((Subrepresentation.full(m),), None if weight is None else (Fraction(weight),))

    @property
    def representation(self) -> Representation:
        return self.chain[-1].parent

    @property
    def length(self) -> int:
        """t + 1, the number of quotients."""
        return len(self.chain)

    def with_weights(self, weights: Sequence[Fraction]) -> "WeightedFiltration":
        return WeightedFiltration(self.chain, tuple(weights))

    def same_chain(self, other: "WeightedFiltration") -> bool:
        return self.chain == other.chain


def filtration_quotient_dims(f: WeightedFiltration) -> List[DimensionVector]:
    """d^i = d_i − d_{i−1} with d_0 = 0; each nonzero, summing to d."""
    out = []
    previous = DimensionVector.zero(f.representation.quiver)
    for step in f.chain:
        d = step.dims
        out.append(d - previous)
        previous = d
    return out
