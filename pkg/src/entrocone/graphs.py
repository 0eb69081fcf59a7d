"""Weighted boundary-colored graphs and their min-cut entropy vectors.

A graph model consists of a finite undirected graph with nonnegative rational
edge weights and a coloring of some vertices by the n+1 colors (parties plus
purifier); the coloring must use every color. The entropy of a subsystem I is
the minimum total weight of edges separating the I-colored boundary vertices
from the rest of the boundary.

Two backends compute min-cuts: an s-t max-flow on denominator-cleared integer
capacities (default), and brute-force enumeration over bulk vertex subsets
(the test oracle). Both are exact; they must agree on every instance.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .exact import (
    EntroconeError,
    Permutation,
    ResourceCapError,
    Subsystem,
    subsystem_order,
)
from .vectors import EntropyVector

#: Default ceiling on candidate cut sets per enumeration call.
DEFAULT_ENUM_CAP = 1 << 24


class GraphValidationError(EntroconeError):
    """A graph model violates one of its structural invariants."""


Edge = tuple[str, str, Fraction]


class GraphModel:
    """Immutable weighted graph with a surjective boundary coloring.

    Parallel edges are merged on construction by summing their weights, since
    the edge set is a set of unordered vertex pairs. Zero-weight edges are
    kept: they contribute nothing to cuts but do join components.
    """

    __slots__ = ("parties", "vertices", "boundary", "edges")

    def __init__(self, parties, vertices, boundary, edges):
        self.parties = int(parties)
        verts = tuple(str(v) for v in vertices)
        if len(set(verts)) != len(verts):
            raise ValueError("duplicate vertex ids")
        self.vertices = verts
        self.boundary = {str(v): int(c) for v, c in dict(boundary).items()}
        merged: dict[tuple[str, str], Fraction] = {}
        loops = []
        for u, v, w in edges:
            u, v = str(u), str(v)
            w = Fraction(w)
            if u == v:
                loops.append((u, v, w))
                continue
            key = (u, v) if u <= v else (v, u)
            merged[key] = merged.get(key, Fraction(0)) + w
        self.edges = tuple(
            (u, v, merged[(u, v)]) for u, v in sorted(merged)
        ) + tuple(loops)

    def validate(self) -> None:
        """Check all invariants, raising on the first violation found."""
        if self.parties < 1:
            raise GraphValidationError(f"party count {self.parties} < 1")
        known = set(self.vertices)
        m = self.parties + 1
        for v, c in self.boundary.items():
            if v not in known:
                raise GraphValidationError(f"unknown vertex id {v!r} in boundary map")
            if not 1 <= c <= m:
                raise GraphValidationError(f"color {c} on vertex {v!r} outside 1..{m}")
        for u, v, w in self.edges:
            if u == v:
                raise GraphValidationError(f"self-loop at vertex {u!r}")
            if u not in known or v not in known:
                raise GraphValidationError(f"unknown vertex id in edge ({u!r}, {v!r})")
            if w < 0:
                raise GraphValidationError(f"negative weight {w} on edge ({u!r}, {v!r})")
        used = set(self.boundary.values())
        for c in range(1, m + 1):
            if c not in used:
                raise GraphValidationError(f"color {c} unused")

    @property
    def bulk_vertices(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if v not in self.boundary)

    def boundary_with_colors(self, colors: set[int]) -> set[str]:
        return {v for v, c in self.boundary.items() if c in colors}

    def components(self) -> list[list[str]]:
        """Connected components (all edges count, including zero weight)."""
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v, _ in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen: set[str] = set()
        comps = []
        for start in self.vertices:
            if start in seen:
                continue
            comp = []
            queue = deque([start])
            seen.add(start)
            while queue:
                x = queue.popleft()
                comp.append(x)
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            comps.append(comp)
        return comps


def validate_graph(graph: GraphModel) -> None:
    graph.validate()


@dataclass(frozen=True)
class Cut:
    """A vertex bipartition: ``side`` contains the I-colored boundary exactly."""

    side: frozenset
    cut_edges: tuple[tuple[str, str], ...]
    weight: Fraction


def _cut_from_side(graph: GraphModel, side: set[str]) -> Cut:
    cut_edges = []
    weight = Fraction(0)
    for u, v, w in graph.edges:
        if (u in side) != (v in side):
            cut_edges.append((u, v))
            weight += w
    return Cut(frozenset(side), tuple(cut_edges), weight)


def _check_subsystem(graph: GraphModel, subsystem: Subsystem) -> set[int]:
    if subsystem.parties != graph.parties:
        raise ValueError("subsystem ambient does not match the graph")
    if subsystem.mask == subsystem.full_mask:
        raise ValueError("subsystem must be a proper subset of the colors")
    return set(subsystem.members)


# ---------------------------------------------------------------------------
# Max-flow backend


class _Dinic:
    """Max flow on integer capacities; arbitrary-precision Python ints."""

    def __init__(self, n: int):
        self.n = n
        self.adj: list[list[list]] = [[] for _ in range(n)]

    def add_edge(self, u: int, v: int, cap_uv: int, cap_vu: int = 0) -> None:
        self.adj[u].append([v, cap_uv, len(self.adj[v])])
        self.adj[v].append([u, cap_vu, len(self.adj[u]) - 1])

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = [-1] * self.n
            level[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for arc in self.adj[u]:
                    if arc[1] > 0 and level[arc[0]] < 0:
                        level[arc[0]] = level[u] + 1
                        queue.append(arc[0])
            if level[t] < 0:
                return flow
            it = [0] * self.n
            while True:
                pushed = self._augment(s, t, None, level, it)
                if pushed == 0:
                    break
                flow += pushed

    def _augment(self, u: int, t: int, limit, level, it) -> int:
        if u == t:
            return limit
        while it[u] < len(self.adj[u]):
            arc = self.adj[u][it[u]]
            v, cap = arc[0], arc[1]
            if cap > 0 and level[v] == level[u] + 1:
                pushed = self._augment(
                    v, t, cap if limit is None else min(limit, cap), level, it
                )
                if pushed:
                    arc[1] -= pushed
                    self.adj[v][arc[2]][1] += pushed
                    return pushed
            it[u] += 1
        return 0

    def reachable(self, s: int) -> set[int]:
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for arc in self.adj[u]:
                if arc[1] > 0 and arc[0] not in seen:
                    seen.add(arc[0])
                    queue.append(arc[0])
        return seen


def _min_cut_flow(graph: GraphModel, colors: set[int]) -> Cut:
    index = {v: i for i, v in enumerate(graph.vertices)}
    nv = len(graph.vertices)
    source, sink = nv, nv + 1
    scale = lcm(1, *(w.denominator for _, _, w in graph.edges)) if graph.edges else 1
    caps = [int(w * scale) for _, _, w in graph.edges]
    infinite = sum(caps) + 1
    net = _Dinic(nv + 2)
    for (u, v, _), c in zip(graph.edges, caps):
        net.add_edge(index[u], index[v], c, c)
    for v, c in graph.boundary.items():
        if c in colors:
            net.add_edge(source, index[v], infinite)
        else:
            net.add_edge(index[v], sink, infinite)
    flow = net.max_flow(source, sink)
    reach = net.reachable(source)
    side = {v for v in graph.vertices if index[v] in reach}
    cut = _cut_from_side(graph, side)
    assert cut.weight * scale == flow
    return cut


# ---------------------------------------------------------------------------
# Enumeration backend


def _min_cut_enum(graph: GraphModel, colors: set[int], cap: int) -> Cut:
    side: set[str] = set()
    candidates = 0
    for comp in graph.components():
        comp_set = set(comp)
        comp_edges = [(u, v, w) for u, v, w in graph.edges if u in comp_set]
        forced_in = [v for v in comp if graph.boundary.get(v) in colors]
        free = [v for v in comp if v not in graph.boundary]
        candidates += 1 << len(free)
        if candidates > cap:
            raise ResourceCapError(
                f"enumeration needs {candidates} candidate sets, cap is {cap}"
            )
        if not comp_edges:
            side.update(forced_in)
            continue
        scale = lcm(1, *(w.denominator for _, _, w in comp_edges))
        pos = {v: i for i, v in enumerate(free)}
        in_forced = set(forced_in)
        arcs = []
        for u, v, w in comp_edges:
            arcs.append((pos.get(u), u in in_forced, pos.get(v), v in in_forced, int(w * scale)))
        best_weight = None
        best_mask = 0
        for mask in range(1 << len(free)):
            weight = 0
            for iu, fu, iv, fv, w in arcs:
                u_in = fu if iu is None else bool(mask >> iu & 1)
                v_in = fv if iv is None else bool(mask >> iv & 1)
                if u_in != v_in:
                    weight += w
            if best_weight is None or weight < best_weight:
                best_weight = weight
                best_mask = mask
        side.update(forced_in)
        side.update(v for v in free if best_mask >> pos[v] & 1)
    return _cut_from_side(graph, side)


def min_cut(
    graph: GraphModel,
    subsystem: Subsystem,
    backend: str = "flow",
    cap: int = DEFAULT_ENUM_CAP,
) -> Cut:
    """Minimum-weight cut separating the I-colored boundary from the rest.

    The achieving side need not be unique, but the returned weight is: it is
    the entropy of the subsystem. ``backend`` selects "flow" (max-flow on
    cleared denominators) or "enum" (bulk-subset enumeration, capped).
    """
    graph.validate()
    colors = _check_subsystem(graph, subsystem)
    if backend == "flow":
        return _min_cut_flow(graph, colors)
    if backend == "enum":
        return _min_cut_enum(graph, colors, cap)
    raise ValueError(f"unknown backend {backend!r}")


def entropy_vector(
    graph: GraphModel, backend: str = "flow", cap: int = DEFAULT_ENUM_CAP
) -> EntropyVector:
    """Min-cut entropies of all canonical subsystems, in canonical order."""
    graph.validate()
    entries = []
    for sub in subsystem_order(graph.parties):
        colors = _check_subsystem(graph, sub)
        if backend == "flow":
            entries.append(_min_cut_flow(graph, colors).weight)
        elif backend == "enum":
            entries.append(_min_cut_enum(graph, colors, cap).weight)
        else:
            raise ValueError(f"unknown backend {backend!r}")
    return EntropyVector(graph.parties, tuple(entries))


# ---------------------------------------------------------------------------
# Constructions


def star_graph(parties: int, purifier_weight) -> GraphModel:
    """Star with one bulk center and one leaf per color.

    Leaves 1..n attach with unit weight; the purifier leaf attaches with
    weight w > 0. Entropies are min{|I|, n - |I| + w} for canonical I.
    """
    w = Fraction(purifier_weight)
    if w <= 0:
        raise ValueError("purifier edge weight must be positive")
    if parties < 1:
        raise ValueError("need at least one party")
    vertices = ["c"] + [f"b{i}" for i in range(1, parties + 2)]
    boundary = {f"b{i}": i for i in range(1, parties + 2)}
    edges = [("c", f"b{i}", Fraction(1)) for i in range(1, parties + 1)]
    edges.append(("c", f"b{parties + 1}", w))
    return GraphModel(parties, vertices, boundary, edges)


def recolor(graph: GraphModel, sigma: Permutation) -> GraphModel:
    """Replace every boundary color c by sigma(c); entropies permute accordingly."""
    if sigma.parties != graph.parties:
        raise ValueError("permutation ambient does not match the graph")
    return GraphModel(
        graph.parties,
        graph.vertices,
        {v: sigma(c) for v, c in graph.boundary.items()},
        graph.edges,
    )


def scale_weights(graph: GraphModel, factor) -> GraphModel:
    """Multiply every edge weight by a nonnegative rational."""
    c = Fraction(factor)
    if c < 0:
        raise ValueError("scale factor must be nonnegative")
    return GraphModel(
        graph.parties,
        graph.vertices,
        graph.boundary,
        [(u, v, w * c) for u, v, w in graph.edges],
    )


def combine(graph1: GraphModel, graph2: GraphModel, mode: str = "disjoint") -> GraphModel:
    """Combine two graph models; entropy vectors add in both modes.

    "disjoint" keeps the vertex sets separate. "glued" merges all boundary
    vertices of equal color into a single vertex per color, which never
    changes any entropy because same-colored vertices always sit on the same
    side of every admissible cut.
    """
    if graph1.parties != graph2.parties:
        raise ValueError("party counts differ")
    if mode == "disjoint":
        vertices = [f"1:{v}" for v in graph1.vertices] + [f"2:{v}" for v in graph2.vertices]
        boundary = {f"1:{v}": c for v, c in graph1.boundary.items()}
        boundary.update({f"2:{v}": c for v, c in graph2.boundary.items()})
        edges = [(f"1:{u}", f"1:{v}", w) for u, v, w in graph1.edges]
        edges += [(f"2:{u}", f"2:{v}", w) for u, v, w in graph2.edges]
        return GraphModel(graph1.parties, vertices, boundary, edges)
    if mode == "glued":
        def rename(prefix, g):
            return {
                v: (f"@{g.boundary[v]}" if v in g.boundary else f"{prefix}:{v}")
                for v in g.vertices
            }

        map1 = rename("1", graph1)
        map2 = rename("2", graph2)
        vertices = []
        for name in list(map1.values()) + list(map2.values()):
            if name not in vertices:
                vertices.append(name)
        boundary = {f"@{c}": c for c in range(1, graph1.parties + 2)}
        edges = []
        for mapping, g in ((map1, graph1), (map2, graph2)):
            for u, v, w in g.edges:
                nu, nv = mapping[u], mapping[v]
                if nu != nv:  # merged same-colored endpoints: edge is never cut
                    edges.append((nu, nv, w))
        return GraphModel(graph1.parties, vertices, boundary, edges)
    raise ValueError(f"unknown combine mode {mode!r}")


def empty_graph(parties: int) -> GraphModel:
    """One isolated boundary vertex per color; every entropy is zero."""
    vertices = [f"b{i}" for i in range(1, parties + 2)]
    return GraphModel(parties, vertices, {f"b{i}": i for i in range(1, parties + 2)}, [])
