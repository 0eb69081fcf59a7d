"""Symmetrization under permutations of the n+1 colors.

The symmetrization averages entropies over all subsystems of equal
cardinality in ``[n+1]`` (complements identified), collapsing the 2^n - 1
coordinates down to ceil(n/2) symmetric variables. ``m_matrix`` implements
the averaging map S~ = M S on vectors, ``n_matrix`` the companion map
q~ = N q on inequality coefficients: row k of N marks each canonical
coordinate of cardinality k or n+1-k exactly once, which makes N^T the
Moore-Penrose right inverse of M and M N^T the identity. (Summing raw
cardinality-k subsets literally would count the self-complementary middle
class twice for odd n; the distinct-representative convention used here is
the one consistent with M N^T = 1.)
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .exact import (
    RMatrix,
    ResourceCapError,
    all_permutations,
    q_n_k,
    subsystem_index,
    subsystem_order,
    sym_dim,
)
from .graphs import GraphModel, recolor
from .vectors import EntropyVector, Inequality, SymInequality, SymVector

#: Default ceiling on recolored copies a permutation-averaged graph may hold.
DEFAULT_AVERAGE_CAP = factorial(8)


def _class_of(size: int, parties: int) -> int:
    """Cardinality class of a canonical subsystem: min(|I|, n+1-|I|)."""
    return min(size, parties + 1 - size)


@lru_cache(maxsize=None)
def m_matrix(parties: int) -> RMatrix:
    """The ceil(n/2) x (2^n - 1) averaging matrix: row k sums the canonical
    images of all cardinality-k subsets of [n+1], divided by C(n+1, k)."""
    index = subsystem_index(parties)
    width = 2**parties - 1
    rows = []
    for k in range(1, sym_dim(parties) + 1):
        row = [Fraction(0)] * width
        unit = Fraction(1, comb(parties + 1, k))
        for raw in q_n_k(parties, k):
            row[index[raw.canonical().mask]] += unit
        rows.append(row)
    return RMatrix(rows)


@lru_cache(maxsize=None)
def n_matrix(parties: int) -> RMatrix:
    """Indicator matrix of cardinality classes: entry 1 where |I| is k or n+1-k."""
    order = subsystem_order(parties)
    rows = []
    for k in range(1, sym_dim(parties) + 1):
        rows.append(
            [Fraction(int(_class_of(sub.size, parties) == k)) for sub in order]
        )
    return RMatrix(rows)


def symmetrize_vector(vector: EntropyVector) -> SymVector:
    """S~ = M S, exactly."""
    return SymVector(vector.parties, m_matrix(vector.parties).mul_vector(vector.entries))


def symmetrize_inequality(inequality: Inequality) -> SymInequality:
    """q~ = N q, exactly."""
    return SymInequality(
        inequality.parties, n_matrix(inequality.parties).mul_vector(inequality.coeffs)
    )


def orbit_sum(inequality: Inequality) -> Inequality:
    """Sum of the inequality over its full color-permutation orbit.

    The coefficient at I is k!(n+1-k)! times the sum of original coefficients
    over all cardinality-k subsets of [n+1] folded to canonical form, with
    k = min(|I|, n+1-|I|). Equals ``orbit_sum_by_enumeration`` on every input,
    and equals (n+1)! M^T N q as a vector identity.
    """
    n = inequality.parties
    index = subsystem_index(n)
    class_sums = []
    for k in range(1, sym_dim(n) + 1):
        total = Fraction(0)
        for raw in q_n_k(n, k):
            total += inequality.coeffs[index[raw.canonical().mask]]
        class_sums.append(total * factorial(k) * factorial(n + 1 - k))
    coeffs = [
        class_sums[_class_of(sub.size, n) - 1] for sub in subsystem_order(n)
    ]
    return Inequality(n, tuple(coeffs))


def orbit_sum_by_enumeration(inequality: Inequality) -> Inequality:
    """Oracle for ``orbit_sum``: literally relabel by every permutation and add."""
    n = inequality.parties
    index = subsystem_index(n)
    order = subsystem_order(n)
    total = [Fraction(0)] * (2**n - 1)
    for sigma in all_permutations(n):
        for q, sub in zip(inequality.coeffs, order):
            if q:
                total[index[sigma.apply(sub).canonical().mask]] += q
    return Inequality(n, tuple(total))


@lru_cache(maxsize=None)
def projection_matrix(parties: int) -> RMatrix:
    """N^T M: the idempotent projector replacing every coordinate by the
    symmetric variable of its cardinality class."""
    m = m_matrix(parties)
    rows = [
        m.row(_class_of(sub.size, parties) - 1) for sub in subsystem_order(parties)
    ]
    return RMatrix(rows)


def average_graph(graph: GraphModel, cap: int = DEFAULT_AVERAGE_CAP) -> GraphModel:
    """Disjoint union of all (n+1)! recolorings, weights scaled by 1/(n+1)!.

    Every entropy of the result equals the symmetric variable of the
    subsystem's cardinality class, so symmetrizing and computing entropies
    commute.
    """
    graph.validate()
    n = graph.parties
    copies = factorial(n + 1)
    if copies > cap:
        raise ResourceCapError(
            f"averaging needs {copies} recolored copies, cap is {cap}"
        )
    unit = Fraction(1, copies)
    vertices = []
    boundary = {}
    edges = []
    for i, sigma in enumerate(all_permutations(n)):
        colored = recolor(graph, sigma)
        vertices.extend(f"{i}:{v}" for v in colored.vertices)
        boundary.update({f"{i}:{v}": c for v, c in colored.boundary.items()})
        edges.extend((f"{i}:{u}", f"{i}:{v}", w * unit) for u, v, w in colored.edges)
    return GraphModel(n, vertices, boundary, edges)


def lift_inequality(inequality: Inequality, parties: int) -> Inequality:
    """Reinterpret an inequality at a larger party count.

    Coefficients carry over on the identical subsets of the original parties;
    every coordinate touching a new party is zero.
    """
    n = inequality.parties
    if parties < n:
        raise ValueError(f"cannot lift from {n} parties down to {parties}")
    if parties == n:
        return inequality
    index = subsystem_index(parties)
    coeffs = [Fraction(0)] * (2**parties - 1)
    for q, sub in zip(inequality.coeffs, subsystem_order(n)):
        coeffs[index[sub.mask]] = q
    return Inequality(parties, tuple(coeffs))
