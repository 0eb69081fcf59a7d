"""Symmetrized holographic and quantum entropy cones for arbitrary n.

Both cones are simplicial in the ceil(n/2)-dimensional symmetrized entropy
space, so extreme rays and facets are columns and rows of mutually inverse
matrices. ``shec_*`` builds the conjectured symmetrized holographic cone
(rays realized by star graphs of varying purifier weight), ``sqec_*`` the
symmetrized quantum cone cut out by subadditivity and strong subadditivity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import RMatrix, ShapeError, sym_dim
from .vectors import SymVector, primitive_form


@dataclass(frozen=True)
class SimplicialCone:
    """A full-dimensional simplicial cone: d independent rays, d facets.

    ``rays`` holds extreme rays as columns, ``facets`` inequality rows
    f . S~ >= 0; row l evaluates to zero on every ray except ray l.
    """

    parties: int
    rays: RMatrix
    facets: RMatrix

    @property
    def dimension(self) -> int:
        return self.rays.rows

    def ray(self, l: int) -> tuple[Fraction, ...]:
        """Extreme ray l (1-based)."""
        return self.rays.column(l - 1)

    def facet(self, l: int) -> tuple[Fraction, ...]:
        """Facet row l (1-based)."""
        return self.facets.row(l - 1)


def shec_rays(parties: int) -> RMatrix:
    """Columns k(n+1 - max{k, l}) for l = 1..ceil(n/2).

    Column l is the symmetrized entropy vector of the star graph with
    purifier weight n - 2(l-1), rescaled by (n+1)/2 to integers.
    """
    if parties < 2:
        raise ValueError("cones are defined for n >= 2")
    d = sym_dim(parties)
    return RMatrix.from_columns(
        [
            [Fraction(k * (parties + 1 - max(k, l))) for k in range(1, d + 1)]
            for l in range(1, d + 1)
        ]
    )


def _rows_with_folding(parties: int, raw_rows) -> RMatrix:
    """Assemble facet rows given as (position, coefficient) pairs.

    Position 0 is dropped (S~_0 = 0) and position d+1 folds onto the stated
    boundary position; every row is reduced to primitive integer form.
    """
    d = sym_dim(parties)
    rows = []
    for pairs, fold_target in raw_rows:
        row = [Fraction(0)] * d
        for pos, coeff in pairs:
            if pos == 0:
                continue
            if pos == d + 1:
                pos = fold_target
            row[pos - 1] += Fraction(coeff)
        rows.append([Fraction(x) for x in primitive_form(row)])
    return RMatrix(rows)


def shec_facets(parties: int) -> RMatrix:
    """The d facet rows of the conjectured symmetrized holographic cone.

    Row 1 is 2 S~_1 - S~_2 >= 0; rows l = 2..d are
    -l(l+1) S~_{l-1} + 2(l-1)(l+1) S~_l - (l-1)l S~_{l+1} >= 0,
    with S~_0 = 0 and the out-of-range S~_{d+1} identified with
    S~_{floor(n/2)} (which is S~_{d-1} for odd n and S~_d for even n).
    """
    if parties < 2:
        raise ValueError("cones are defined for n >= 2")
    d = sym_dim(parties)
    fold = parties // 2
    raw = [([(1, 2), (2, -1)], fold)]
    for l in range(2, d + 1):
        raw.append(
            (
                [(l - 1, -l * (l + 1)), (l, 2 * (l - 1) * (l + 1)), (l + 1, -(l - 1) * l)],
                fold,
            )
        )
    return _rows_with_folding(parties, raw)


def sqec_rays(parties: int) -> RMatrix:
    """Columns min{k, l}; always unimodular (determinant one)."""
    if parties < 2:
        raise ValueError("cones are defined for n >= 2")
    d = sym_dim(parties)
    return RMatrix.from_columns(
        [[Fraction(min(k, l)) for k in range(1, d + 1)] for l in range(1, d + 1)]
    )


def sqec_facets(parties: int) -> RMatrix:
    """Rows -S~_{l-1} + 2 S~_l - S~_{l+1} >= 0 for l = 1..d, with S~_0 = 0
    and S~_{d+1} = S~_d (so the last row is -S~_{d-1} + S~_d >= 0)."""
    if parties < 2:
        raise ValueError("cones are defined for n >= 2")
    d = sym_dim(parties)
    raw = [([(l - 1, -1), (l, 2), (l + 1, -1)], d) for l in range(1, d + 1)]
    return _rows_with_folding(parties, raw)


def shec_cone(parties: int) -> SimplicialCone:
    return SimplicialCone(parties, shec_rays(parties), shec_facets(parties))


def sqec_cone(parties: int) -> SimplicialCone:
    return SimplicialCone(parties, sqec_rays(parties), sqec_facets(parties))


def facets_from_rays(rays: RMatrix) -> RMatrix:
    """Dual facet description of a simplicial cone: primitive rows of the
    inverse ray matrix. Row l then evaluates positively on ray l and to zero
    on every other ray, so no sign flip is ever needed."""
    if rays.rows != rays.cols:
        raise ShapeError("ray matrix must be square for a simplicial cone")
    inverse = rays.inverse()
    return RMatrix(
        [
            [Fraction(x) for x in primitive_form(inverse.row(i))]
            for i in range(inverse.rows)
        ]
    )


@dataclass(frozen=True)
class MembershipResult:
    inside: bool
    coefficients: tuple[Fraction, ...] | None
    violated_facet: tuple[int, ...] | None

    @property
    def is_extreme_ray(self) -> bool:
        """Inside with exactly one nonzero (necessarily positive) coefficient."""
        return self.inside and sum(1 for c in self.coefficients if c) == 1


def membership(cone: SimplicialCone, vector: SymVector) -> MembershipResult:
    """Solve rays . x = v exactly; the vector is inside iff all x_l >= 0.

    Outside vectors report a violated facet (the primitive facet row dual to
    the most negative coefficient).
    """
    if vector.parties != cone.parties:
        raise ShapeError("vector and cone have different party counts")
    if len(vector.entries) != cone.dimension:
        raise ShapeError("vector dimension does not match the cone")
    coeffs = cone.rays.inverse().mul_vector(vector.entries)
    if all(c >= 0 for c in coeffs):
        return MembershipResult(True, tuple(coeffs), None)
    worst = min(range(len(coeffs)), key=lambda i: coeffs[i])
    facet = primitive_form(cone.rays.inverse().row(worst))
    return MembershipResult(False, None, tuple(facet))


def cross_section(cone: SimplicialCone) -> list[tuple[Fraction, ...]]:
    """Vertices of the cone's cut by the hyperplane where coordinates sum
    to one: each ray divided by its coordinate sum (taxicab normalization)."""
    vertices = []
    for l in range(1, cone.dimension + 1):
        ray = cone.ray(l)
        total = sum(ray)
        if total == 0:
            raise ValueError(f"ray {l} is zero and has no cross-section point")
        if any(x < 0 for x in ray):
            raise ValueError(f"ray {l} has negative coordinates")
        vertices.append(tuple(x / total for x in ray))
    return vertices
