"""Entropy vectors, symmetrized vectors, and inequality coefficient vectors.

An ``EntropyVector`` holds the 2^n - 1 subsystem entropies in the canonical
order (cardinality first, then lexicographic); a ``SymVector`` holds the
ceil(n/2) symmetrized entropies indexed by cardinality. ``Inequality`` and
``SymInequality`` hold coefficient vectors ``q`` of the same two shapes with
the meaning ``q . S >= 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .exact import (
    ShapeError,
    Subsystem,
    subsystem_index,
    subsystem_order,
    sym_dim,
)


def primitive_form(values) -> tuple[int, ...]:
    """Scale a rational vector by a positive factor to coprime integers.

    The direction is preserved (the scale factor is always positive), so two
    vectors agree up to positive scale iff their primitive forms are equal.
    The zero vector maps to all zeros.
    """
    values = [Fraction(v) for v in values]
    if all(v == 0 for v in values):
        return tuple(0 for _ in values)
    denom = lcm(*(v.denominator for v in values))
    ints = [int(v * denom) for v in values]
    g = gcd(*ints)
    return tuple(x // g for x in ints)


def _coerce_entries(entries, expected: int, what: str) -> tuple[Fraction, ...]:
    out = tuple(Fraction(e) for e in entries)
    if len(out) != expected:
        raise ShapeError(f"{what} needs {expected} entries, got {len(out)}")
    return out


@dataclass(frozen=True)
class EntropyVector:
    parties: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "entries",
            _coerce_entries(self.entries, 2**self.parties - 1, f"entropy vector at n={self.parties}"),
        )

    def value(self, sub: Subsystem) -> Fraction:
        """Entropy of a subsystem; raw subsystems fold through the purifier."""
        if sub.parties != self.parties:
            raise ShapeError("subsystem ambient does not match the vector")
        return self.entries[subsystem_index(self.parties)[sub.canonical().mask]]

    def __add__(self, other: "EntropyVector") -> "EntropyVector":
        if not isinstance(other, EntropyVector) or other.parties != self.parties:
            return NotImplemented
        return EntropyVector(
            self.parties, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def scale(self, c) -> "EntropyVector":
        c = Fraction(c)
        return EntropyVector(self.parties, tuple(c * e for e in self.entries))

    def primitive(self) -> tuple[int, ...]:
        return primitive_form(self.entries)


@dataclass(frozen=True)
class SymVector:
    parties: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "entries",
            _coerce_entries(self.entries, sym_dim(self.parties), f"symmetrized vector at n={self.parties}"),
        )

    def value(self, cardinality: int) -> Fraction:
        return self.entries[cardinality - 1]

    def primitive(self) -> tuple[int, ...]:
        return primitive_form(self.entries)


@dataclass(frozen=True)
class Inequality:
    """Coefficients ``q`` over canonical subsystems; asserts ``q . S >= 0``."""

    parties: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "coeffs",
            _coerce_entries(self.coeffs, 2**self.parties - 1, f"inequality at n={self.parties}"),
        )

    @classmethod
    def from_terms(cls, parties: int, terms) -> "Inequality":
        """Build from (coefficient, members) pairs over raw subsystems.

        Terms are folded onto canonical coordinates; the empty set and the
        full set ``[n+1]`` carry entropy 0 and are dropped.
        """
        coeffs = [Fraction(0)] * (2**parties - 1)
        index = subsystem_index(parties)
        for coeff, members in terms:
            members = tuple(members)
            if not members:
                continue
            sub = Subsystem.from_members(parties, members)
            if sub.mask == sub.full_mask:
                continue
            coeffs[index[sub.canonical().mask]] += Fraction(coeff)
        return cls(parties, tuple(coeffs))

    def coeff(self, sub: Subsystem) -> Fraction:
        return self.coeffs[subsystem_index(self.parties)[sub.canonical().mask]]

    def evaluate(self, vector: EntropyVector) -> Fraction:
        if not isinstance(vector, EntropyVector):
            raise ShapeError("an inequality over subsystems evaluates on an EntropyVector")
        if vector.parties != self.parties:
            raise ShapeError("inequality and vector have different party counts")
        return sum(
            (q * s for q, s in zip(self.coeffs, vector.entries) if q and s),
            Fraction(0),
        )

    def primitive(self) -> tuple[int, ...]:
        return primitive_form(self.coeffs)

    def terms(self) -> list[tuple[Fraction, Subsystem]]:
        """Nonzero (coefficient, subsystem) pairs in canonical order."""
        order = subsystem_order(self.parties)
        return [(q, sub) for q, sub in zip(self.coeffs, order) if q]


@dataclass(frozen=True)
class SymInequality:
    """Coefficients over cardinalities 1..ceil(n/2); asserts ``q . S~ >= 0``."""

    parties: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "coeffs",
            _coerce_entries(self.coeffs, sym_dim(self.parties), f"symmetrized inequality at n={self.parties}"),
        )

    def evaluate(self, vector: SymVector) -> Fraction:
        if not isinstance(vector, SymVector):
            raise ShapeError("a symmetrized inequality evaluates on a SymVector")
        if vector.parties != self.parties:
            raise ShapeError("inequality and vector have different party counts")
        return sum(
            (q * s for q, s in zip(self.coeffs, vector.entries)), Fraction(0)
        )

    def primitive(self) -> tuple[int, ...]:
        return primitive_form(self.coeffs)


def evaluate(inequality, vector) -> Fraction:
    """Exact dot product of an inequality with a matching vector.

    Kinds must agree: plain inequalities pair with entropy vectors and
    symmetrized inequalities with symmetrized vectors.
    """
    if isinstance(inequality, (Inequality, SymInequality)):
        return inequality.evaluate(vector)
    raise ShapeError(f"not an inequality: {type(inequality).__name__}")
