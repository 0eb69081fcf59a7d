"""Exact rational arithmetic, exact linear algebra, and subsystem combinatorics.

Every quantity in this package is an exact ``fractions.Fraction``; floating
point never enters any computation. Parties are labeled ``1..n`` with the
purifier as the extra color ``n+1``, and subsystems are bitmasks over
``{1, ..., n+1}`` (bit ``i-1`` encodes party ``i``), which caps the supported
party count at ``MAX_PARTIES``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence

Rational = Fraction

#: Largest supported party count: masks over [n+1] must stay comfortably
#: inside a machine word.
MAX_PARTIES = 62


class EntroconeError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(EntroconeError):
    """Matrix or vector dimensions do not match the operation."""


class SingularMatrixError(EntroconeError):
    """A square matrix required to be invertible has determinant zero."""


class FormatError(EntroconeError):
    """A serialized value or document does not conform to its format."""


class ResourceCapError(EntroconeError):
    """A computation would exceed its configured resource cap."""


_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/[1-9]\d*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse "p" or "p/q" (decimal integers, q > 0) into an exact Fraction.

    This is the only accepted wire format for rationals; decimal points,
    exponents, and whitespace are rejected.
    """
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise FormatError(f"not a rational literal: {text!r}")
    return Fraction(text)


def format_rational(value: Fraction | int) -> str:
    """Render an exact rational as "p" or "p/q" with q > 0."""
    return str(Fraction(value))


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise FormatError("floating-point values are not accepted; use Fraction or int")
    return Fraction(value)


# ---------------------------------------------------------------------------
# Subsystems


@dataclass(frozen=True)
class Subsystem:
    """A nonempty set of colors inside the ambient color set ``[n+1]``.

    ``parties`` is the party count n; colors run over ``1..n+1`` where
    ``n+1`` is the purifier. Canonical subsystems exclude the purifier.
    """

    parties: int
    mask: int

    def __post_init__(self):
        n = self.parties
        if not 1 <= n <= MAX_PARTIES:
            raise ValueError(f"party count must be in 1..{MAX_PARTIES}, got {n}")
        full = (1 << (n + 1)) - 1
        if not 0 < self.mask <= full:
            raise ValueError("subsystem must be a nonempty subset of the colors")

    @classmethod
    def from_members(cls, parties: int, members: Iterable[int]) -> "Subsystem":
        mask = 0
        for m in members:
            if not 1 <= m <= parties + 1:
                raise ValueError(f"color {m} outside 1..{parties + 1}")
            mask |= 1 << (m - 1)
        return cls(parties, mask)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.parties + 1) if self.mask >> i & 1)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    @property
    def full_mask(self) -> int:
        return (1 << (self.parties + 1)) - 1

    @property
    def is_canonical(self) -> bool:
        """True when the purifier color ``n+1`` is absent."""
        return not self.mask >> self.parties & 1

    def complement(self) -> "Subsystem":
        """Complement within ``[n+1]``; undefined (raises) for the full set."""
        mask = self.full_mask ^ self.mask
        if mask == 0:
            raise ValueError("complement of the full color set is empty")
        return Subsystem(self.parties, mask)

    def canonical(self) -> "Subsystem":
        """Fold via the purification symmetry onto a subset of ``[n]``.

        The full set ``[n+1]`` has entropy 0 by convention and no canonical
        coordinate; it is rejected, as is the empty set at construction.
        """
        if self.mask == self.full_mask:
            raise ValueError("the full color set has no canonical coordinate")
        return self if self.is_canonical else self.complement()

    def __str__(self) -> str:
        return "{" + ",".join(str(m) for m in self.members) + "}"


@lru_cache(maxsize=None)
def subsystem_order(parties: int) -> tuple[Subsystem, ...]:
    """All 2^n - 1 canonical subsystems, by cardinality then lexicographically.

    The position of a subsystem in this tuple is its coordinate index in
    entropy and inequality vectors.
    """
    if not 1 <= parties <= MAX_PARTIES:
        raise ValueError(f"party count must be in 1..{MAX_PARTIES}, got {parties}")
    order = []
    for k in range(1, parties + 1):
        for members in itertools.combinations(range(1, parties + 1), k):
            order.append(Subsystem.from_members(parties, members))
    return tuple(order)


@lru_cache(maxsize=None)
def subsystem_index(parties: int) -> dict[int, int]:
    """Mask -> coordinate index lookup, inverse to ``subsystem_order``."""
    return {sub.mask: i for i, sub in enumerate(subsystem_order(parties))}


def sym_dim(parties: int) -> int:
    """Dimension of the symmetrized entropy space: ceil(n/2)."""
    return (parties + 1) // 2


def q_n_k(parties: int, k: int) -> tuple[Subsystem, ...]:
    """All C(n+1, k) subsets of ``[n+1]`` with cardinality k, in a fixed order.

    Valid for 1 <= k <= ceil(n/2); these index classes of the symmetrization.
    """
    if not 1 <= k <= sym_dim(parties):
        raise ValueError(f"cardinality {k} outside 1..{sym_dim(parties)}")
    return tuple(
        Subsystem.from_members(parties, members)
        for members in itertools.combinations(range(1, parties + 2), k)
    )


# ---------------------------------------------------------------------------
# Permutations of the colors [n+1]


@dataclass(frozen=True)
class Permutation:
    """A bijection of the colors ``{1, ..., n+1}``; ``images[i-1]`` is the image of i."""

    parties: int
    images: tuple[int, ...]

    def __post_init__(self):
        m = self.parties + 1
        if len(self.images) != m or sorted(self.images) != list(range(1, m + 1)):
            raise ValueError(f"images must be a bijection of 1..{m}")

    @classmethod
    def identity(cls, parties: int) -> "Permutation":
        return cls(parties, tuple(range(1, parties + 2)))

    @classmethod
    def transposition(cls, parties: int, a: int, b: int) -> "Permutation":
        images = list(range(1, parties + 2))
        images[a - 1], images[b - 1] = images[b - 1], images[a - 1]
        return cls(parties, tuple(images))

    def __call__(self, color: int) -> int:
        return self.images[color - 1]

    def apply(self, sub: Subsystem) -> Subsystem:
        """Elementwise image of a subsystem; preserves cardinality."""
        if sub.parties != self.parties:
            raise ValueError("permutation and subsystem have different ambients")
        mask = 0
        for i in range(self.parties + 1):
            if sub.mask >> i & 1:
                mask |= 1 << (self.images[i] - 1)
        return Subsystem(self.parties, mask)

    def inverse(self) -> "Permutation":
        inv = [0] * (self.parties + 1)
        for i, img in enumerate(self.images):
            inv[img - 1] = i + 1
        return Permutation(self.parties, tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: ``(self.compose(other))(c) == self(other(c))``."""
        if other.parties != self.parties:
            raise ValueError("permutations have different ambients")
        return Permutation(
            self.parties, tuple(self.images[c - 1] for c in other.images)
        )


def all_permutations(parties: int):
    """Iterate the (n+1)! permutations of the colors in a fixed order."""
    for images in itertools.permutations(range(1, parties + 2)):
        yield Permutation(parties, images)


# ---------------------------------------------------------------------------
# Exact dense matrices


class RMatrix:
    """Immutable dense matrix over exact rationals.

    Entries are ``Fraction``; integers are coerced on construction and floats
    are rejected, so no rounding can ever occur.
    """

    __slots__ = ("rows", "cols", "_rows")

    def __init__(self, entries: Sequence[Sequence]):
        rows = tuple(tuple(_as_fraction(x) for x in row) for row in entries)
        if not rows or not rows[0]:
            raise ShapeError("matrix must have at least one row and one column")
        cols = len(rows[0])
        if any(len(row) != cols for row in rows):
            raise ShapeError("all rows must have the same length")
        self._rows = rows
        self.rows = len(rows)
        self.cols = cols

    @classmethod
    def identity(cls, d: int) -> "RMatrix":
        return cls([[Fraction(int(i == j)) for j in range(d)] for i in range(d)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "RMatrix":
        cols = [tuple(col) for col in columns]
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(len(cols[0]))])

    def entry(self, i: int, j: int) -> Fraction:
        return self._rows[i][j]

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self._rows)

    def row_list(self) -> list[list[Fraction]]:
        return [list(row) for row in self._rows]

    def transpose(self) -> "RMatrix":
        return RMatrix([self.column(j) for j in range(self.cols)])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._rows == other._rows
        )

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(format_rational(x) for x in row) for row in self._rows
        )
        return f"RMatrix[{self.rows}x{self.cols}: {body}]"

    def __matmul__(self, other: "RMatrix") -> "RMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        other_t = other.transpose()
        return RMatrix(
            [
                [_dot(row, col) for col in other_t._rows]
                for row in self._rows
            ]
        )

    def mul_vector(self, vec: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(vec) != self.cols:
            raise ShapeError(f"vector length {len(vec)} != column count {self.cols}")
        return tuple(_dot(row, vec) for row in self._rows)

    def scale(self, c) -> "RMatrix":
        c = _as_fraction(c)
        return RMatrix([[x * c for x in row] for row in self._rows])

    def determinant(self) -> Fraction:
        """Exact determinant by Gaussian elimination over Fractions.

        Fractions stay normalized throughout, so the result is the unique
        reduced value regardless of pivot schedule.
        """
        if self.rows != self.cols:
            raise ShapeError("determinant requires a square matrix")
        a = self.row_list()
        d = self.rows
        det = Fraction(1)
        for col in range(d):
            pivot = next((r for r in range(col, d) if a[r][col] != 0), None)
            if pivot is None:
                return Fraction(0)
            if pivot != col:
                a[col], a[pivot] = a[pivot], a[col]
                det = -det
            det *= a[col][col]
            inv = 1 / a[col][col]
            for r in range(col + 1, d):
                if a[r][col] == 0:
                    continue
                factor = a[r][col] * inv
                for c in range(col, d):
                    a[r][c] -= factor * a[col][c]
        return det

    def inverse(self) -> "RMatrix":
        """Exact inverse by Gauss-Jordan elimination; A @ A.inverse() is the identity."""
        if self.rows != self.cols:
            raise ShapeError("inverse requires a square matrix")
        d = self.rows
        a = self.row_list()
        b = RMatrix.identity(d).row_list()
        for col in range(d):
            pivot = next((r for r in range(col, d) if a[r][col] != 0), None)
            if pivot is None:
                raise SingularMatrixError("matrix is singular")
            if pivot != col:
                a[col], a[pivot] = a[pivot], a[col]
                b[col], b[pivot] = b[pivot], b[col]
            inv = 1 / a[col][col]
            a[col] = [x * inv for x in a[col]]
            b[col] = [x * inv for x in b[col]]
            for r in range(d):
                if r == col or a[r][col] == 0:
                    continue
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
                b[r] = [x - factor * y for x, y in zip(b[r], b[col])]
        return RMatrix(b)


def _dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for x, y in zip(u, v):
        if x and y:
            total += x * y
    return total


def determinant(matrix: RMatrix) -> Fraction:
    return matrix.determinant()


def invert(matrix: RMatrix) -> RMatrix:
    return matrix.inverse()


__all__ = [
    "EntroconeError",
    "FormatError",
    "MAX_PARTIES",
    "Permutation",
    "RMatrix",
    "Rational",
    "ResourceCapError",
    "ShapeError",
    "SingularMatrixError",
    "Subsystem",
    "all_permutations",
    "comb",
    "determinant",
    "factorial",
    "format_rational",
    "invert",
    "parse_rational",
    "q_n_k",
    "subsystem_index",
    "subsystem_order",
    "sym_dim",
]
