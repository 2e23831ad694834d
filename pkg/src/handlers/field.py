"""
Field — Exact scalar arithmetic over the rationals or a prime field F_p.

Scalars are plain Python values: ``Fraction`` over Q, ``int`` residues in
[0, p) over F_p. The ``Field`` descriptor owns normalization, so every
matrix entry and subspace basis shares one canonical representation.
"""
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Rational
from typing import Any, Optional, Union

import numpy as np
from sympy import isprime

from utils.constants import FIELD_RATIONAL, FIELD_PRIME
from utils.failures import MalformedInputError

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class Field:
    """Field descriptor: the rationals, or F_p for a prime p."""
    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == FIELD_RATIONAL:
            if self.p is not None:
                raise MalformedInputError("rational field takes no modulus")
        elif self.kind == FIELD_PRIME:
            if isinstance(self.p, bool) or not isinstance(self.p, Integral) or not isprime(int(self.p)):
                raise MalformedInputError(f"field modulus {self.p!r} is not prime")
        else:
            raise MalformedInputError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> "Field":
        return cls(FIELD_RATIONAL)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(FIELD_PRIME, p)

    @property
    def is_prime(self) -> bool:
        return self.kind == FIELD_PRIME

    def __str__(self) -> str:
        return f"F_{self.p}" if self.is_prime else "Q"

    # ── Scalars ───────────────────────────────────────────────────

    def element(self, value: Any) -> Scalar:
        """
        Coerce a raw value into this field.

        Integers are reduced mod p over F_p. A non-integral rational handed to a
        prime field, or any float/bool/string, is a mixed-field entry.
        """
        if isinstance(value, bool) or not isinstance(value, Rational):
            raise MalformedInputError(f"entry {value!r} is not an element of {self}")
        if self.is_prime:
            if isinstance(value, Integral):
                return int(value) % self.p
            if Fraction(value).denominator != 1:
                raise MalformedInputError(f"entry {value} is not an element of {self}")
            return int(Fraction(value)) % self.p
        return Fraction(value)

    @property
    def zero(self) -> Scalar:
        return 0 if self.is_prime else Fraction(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.is_prime else Fraction(1)

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError(f"zero has no inverse in {self}")
        if self.is_prime:
            return pow(int(a), -1, self.p)
        return 1 / Fraction(a)

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        """Reduce an object array produced by ring operations back into the field."""
        if self.is_prime:
            return arr % self.p
        return arr

    def elements(self):
        """All elements of a prime field in ascending residue order."""
        if not self.is_prime:
            raise MalformedInputError("the rational field cannot be enumerated")
        return range(self.p)

    # ── Serialization ─────────────────────────────────────────────

    def to_dict(self) -> dict:
        if self.is_prime:
            return {"kind": FIELD_PRIME, "p": self.p}
        return {"kind": FIELD_RATIONAL}


def format_scalar(value: Any) -> str:
    """Exact text for a scalar or rational: "3", "-1/2"."""
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(value: Any) -> Fraction:
    """Parse an exact rational from an int or an "a/b" string."""
    if isinstance(value, bool):
        raise MalformedInputError(f"{value!r} is not a rational")
    if isinstance(value, Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise MalformedInputError(f"{value!r} is not a rational")
    raise MalformedInputError(f"{value!r} is not a rational")
