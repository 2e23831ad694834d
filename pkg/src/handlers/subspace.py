"""
Subspace — Canonical subspaces of k^n and their lattice operations.

A subspace is stored as the RREF of a spanning set, so two subspaces are equal
exactly when their stored bases are equal. Enumeration over F_p walks pivot
sets and free entries in a fixed order:

    (dim, lexicographic pivot set, lexicographic free entries)
"""
from functools import lru_cache
from itertools import combinations, product
from typing import List, Sequence, Tuple

import numpy as np

from handlers.field import Field, Scalar
from handlers.matrix import Matrix, rref
from utils.failures import MalformedInputError, ResourceLimitError
from utils.logger import Logger

logger = Logger("Subspace")


class Subspace:
    """A subspace of field^ambient_dim in canonical RREF form."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, basis: Matrix, pivots: Tuple[int, ...]):
        """Use ``Subspace.span`` unless ``basis`` is already an RREF with these pivots."""
        self.field = basis.field
        self.ambient_dim = basis.cols
        self.basis = basis
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, field: Field, ambient_dim: int, vectors: Sequence[Sequence]) -> "Subspace":
        """The span of ``vectors`` (any spanning set, possibly dependent or empty)."""
        m = Matrix.from_rows(field, [list(v) for v in vectors], cols=ambient_dim)
        return cls.from_matrix(m)

    @classmethod
    def from_matrix(cls, m: Matrix) -> "Subspace":
        """Row space of ``m``."""
        reduced, pivots = rref(m)
        return cls(reduced, pivots)

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(Matrix.zeros(field, 0, ambient_dim), ())

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(Matrix.identity(field, ambient_dim), tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    @property
    def non_pivots(self) -> Tuple[int, ...]:
        """Standard coordinates spanning a complement; the quotient coordinates."""
        pivots = set(self.pivots)
        return tuple(j for j in range(self.ambient_dim) if j not in pivots)

    def vectors(self) -> List[Tuple[Scalar, ...]]:
        return [self.basis.row(i) for i in range(self.dim)]

    def _key(self):
        return (self.field, self.ambient_dim, self.basis.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"Subspace({self.field}^{self.ambient_dim}, {[list(v) for v in self.vectors()]})"

    # ── Membership ────────────────────────────────────────────────

    def reduce(self, vector: Sequence[Scalar]) -> np.ndarray:
        """Remainder of ``vector`` after eliminating this subspace's pivot coordinates."""
        rem = np.array([self.field.element(x) for x in vector], dtype=object)
        if rem.shape != (self.ambient_dim,):
            raise MalformedInputError(
                f"vector of length {len(vector)} in ambient dimension {self.ambient_dim}"
            )
        for i, col in enumerate(self.pivots):
            c = rem[col]
            if c != 0:
                rem = self.field.normalize(rem - c * self.basis.data[i])
        return rem

    def contains(self, vector: Sequence[Scalar]) -> bool:
        return all(x == 0 for x in self.reduce(vector))

    def coordinates(self, vector: Sequence[Scalar]) -> Tuple[Scalar, ...]:
        """Coefficients of a member vector in the RREF basis (its pivot entries)."""
        if not self.contains(vector):
            raise MalformedInputError(f"{list(vector)} is not in {self!r}")
        return tuple(self.field.element(vector[col]) for col in self.pivots)

    def _check_compatible(self, other: "Subspace"):
        if self.field != other.field or self.ambient_dim != other.ambient_dim:
            raise MalformedInputError(
                f"ambient mismatch: {self.field}^{self.ambient_dim} vs {other.field}^{other.ambient_dim}"
            )

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace.from_matrix(self.basis.vstack(other.basis))


def subspace_leq(a: Subspace, b: Subspace) -> bool:
    """True iff every basis vector of ``a`` lies in ``b``."""
    a._check_compatible(b)
    if a.dim > b.dim:
        return False
    return all(b.contains(v) for v in a.vectors())


def apply_map(m: Matrix, u: Subspace) -> Subspace:
    """Image m·u of a subspace under a linear map, canonicalized."""
    if u.ambient_dim != m.cols or u.field != m.field:
        raise MalformedInputError(
            f"cannot apply a {m.rows}x{m.cols} map over {m.field} to a subspace of {u.field}^{u.ambient_dim}"
        )
    if u.is_zero or m.rows == 0:
        return Subspace.zero(m.field, m.rows)
    # Rows of (basis · m^T) are the images of the basis vectors
    return Subspace.from_matrix(u.basis.matmul(m.transpose()))


# ── Enumeration over F_p ──────────────────────────────────────────


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def galois_number(n: int, q: int) -> int:
    """Total number of subspaces of F_q^n."""
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def enumerate_subspaces(n: int, p: int, guard: int) -> List[Subspace]:
    """
    All subspaces of F_p^n, each once, in canonical order.

    Args:
        n: Ambient dimension.
        p: Prime modulus.
        guard: Largest admissible subspace count.

    Raises:
        ResourceLimitError: when the Galois number exceeds ``guard``.
    """
    if n < 0:
        raise MalformedInputError(f"ambient dimension {n} is negative")
    field = Field.prime(p)
    count = galois_number(n, p)
    if count > guard:
        raise ResourceLimitError(f"subspaces of F_{p}^{n}", count, guard)
    logger.debug(f"Enumerating {count} subspaces of F_{p}^{n}")
    return list(_enumerate_cached(n, field.p))


@lru_cache(maxsize=64)
def _enumerate_cached(n: int, p: int) -> Tuple[Subspace, ...]:
    field = Field.prime(p)
    out: List[Subspace] = []
    for k in range(n + 1):
        for pivots in combinations(range(n), k):
            pivot_set = set(pivots)
            # Free slots: row i, non-pivot column j to the right of its pivot
            free = [(i, j) for i in range(k) for j in range(n)
                    if j not in pivot_set and j > pivots[i]]
            for values in product(range(p), repeat=len(free)):
                data = np.full((k, n), 0, dtype=object)
                for i, col in enumerate(pivots):
                    data[i, col] = 1
                for (i, j), x in zip(free, values):
                    data[i, j] = x
                out.append(Subspace(Matrix._wrap(field, data), pivots))
    return tuple(out)
