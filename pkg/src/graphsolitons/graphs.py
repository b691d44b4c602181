"""Simple graphs with ordered edge lists, coherent components, automorphisms.

Vertices are 1-based (``1..p``).  Edges keep the order in which they were
given — downstream weight vectors are indexed by that order, so it is part of
the data and is never re-sorted.  Each edge is stored with its endpoints
ascending.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    DimensionMismatch,
    DuplicateEdge,
    EmptyEdgeSet,
    GroupTooLarge,
    IndexOutOfRange,
    MalformedLine,
    NotAnAutomorphism,
    SelfLoop,
)

COMPLETE = "complete"
DISCRETE = "discrete"


@dataclass(frozen=True)
class Graph:
    """An undirected simple graph on vertices ``1..p`` with ordered edges."""

    p: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.p < 1:
            raise MalformedLine(f"vertex count must be >= 1, got {self.p}")
        normalized = []
        seen = set()
        for i, j in self.edges:
            if i == j:
                raise SelfLoop(f"edge ({i},{j}) is a self-loop")
            if not (1 <= i <= self.p and 1 <= j <= self.p):
                raise IndexOutOfRange(f"edge ({i},{j}) outside 1..{self.p}")
            if i > j:
                i, j = j, i
            if (i, j) in seen:
                raise DuplicateEdge(f"edge ({i},{j}) listed twice")
            seen.add((i, j))
            normalized.append((i, j))
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def q(self) -> int:
        return len(self.edges)

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset, ...]:
        """neighbor_sets[v-1] is the set of neighbors of vertex v."""
        nbrs = [set() for _ in range(self.p)]
        for i, j in self.edges:
            nbrs[i - 1].add(j)
            nbrs[j - 1].add(i)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def edge_index(self) -> dict:
        """Maps an ascending vertex pair to its 0-based position in ``edges``."""
        return {e: k for k, e in enumerate(self.edges)}

    @cached_property
    def vertex_edges(self) -> tuple[tuple[int, ...], ...]:
        """vertex_edges[v-1] lists 0-based indices of edges incident to v."""
        incident = [[] for _ in range(self.p)]
        for k, (i, j) in enumerate(self.edges):
            incident[i - 1].append(k)
            incident[j - 1].append(k)
        return tuple(tuple(lst) for lst in incident)

    def degree(self, v: int) -> int:
        return len(self.neighbor_sets[v - 1])

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edge_index


def parse_graph(text: str) -> Graph:
    """Parse the plain-text graph format.

    First non-comment line: vertex count ``p``.  Each further line: one edge
    ``i j`` (1-based; either endpoint order).  ``#`` starts a comment; blank
    lines are ignored.
    """
    p = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if p is None:
            if len(parts) != 1 or not parts[0].lstrip("-").isdigit():
                raise MalformedLine(f"line {lineno}: expected vertex count, got {raw!r}")
            p = int(parts[0])
            if p < 1:
                raise MalformedLine(f"line {lineno}: vertex count must be >= 1")
            continue
        if len(parts) != 2:
            raise MalformedLine(f"line {lineno}: expected 'i j', got {raw!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLine(f"line {lineno}: expected integers, got {raw!r}") from None
        if i == j:
            raise SelfLoop(f"line {lineno}: self-loop at vertex {i}")
        if not (1 <= i <= p and 1 <= j <= p):
            raise IndexOutOfRange(f"line {lineno}: vertex outside 1..{p}")
        lo, hi = min(i, j), max(i, j)
        if (lo, hi) in seen:
            raise DuplicateEdge(f"line {lineno}: edge ({lo},{hi}) listed twice")
        seen.add((lo, hi))
        edges.append((lo, hi))
    if p is None:
        raise MalformedLine("no vertex count line found")
    return Graph(p=p, edges=tuple(edges))


def line_graph(g: Graph) -> Graph:
    """The line graph: one vertex per edge of ``g`` (keeping edge order),
    adjacent iff the underlying edges share an endpoint."""
    if g.q == 0:
        raise EmptyEdgeSet("line graph of an edgeless graph is empty")
    new_edges = []
    for k, l in itertools.combinations(range(g.q), 2):
        a, b = g.edges[k], g.edges[l]
        if set(a) & set(b):
            new_edges.append((k + 1, l + 1))
    return Graph(p=g.q, edges=tuple(new_edges))


@dataclass(frozen=True)
class Permutation:
    """A permutation of ``1..n``; ``images[i-1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.images}")

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, v: int) -> int:
        return self.images[v - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: ``(self.compose(other))(v) == self(other(v))``."""
        if self.n != other.n:
            raise DimensionMismatch("permutation sizes differ")
        return Permutation(tuple(self.images[other.images[v] - 1] for v in range(self.n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for v, w in enumerate(self.images, start=1):
            inv[w - 1] = v
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(w == v for v, w in enumerate(self.images, start=1))


@dataclass(frozen=True)
class CoherentDecomposition:
    """Partition of the vertices into coherent components.

    ``components`` are sorted vertex tuples, ordered by smallest vertex;
    ``flags[b]`` is ``"complete"`` or ``"discrete"`` (singletons count as
    discrete); ``coherence_edges`` are 0-based component index pairs (a, b)
    with a < b, present iff the two components are joined (all cross pairs
    adjacent).
    """

    components: tuple[tuple[int, ...], ...]
    flags: tuple[str, ...]
    coherence_edges: tuple[tuple[int, int], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.components)

    def component_of(self, v: int) -> int:
        for b, comp in enumerate(self.components):
            if v in comp:
                return b
        raise IndexOutOfRange(f"vertex {v} not in any component")


def coherent_components(g: Graph) -> CoherentDecomposition:
    """Coarsest partition into twin classes.

    Vertices i, j land in one component iff N(i)\\{j} = N(j)\\{i}; each
    component induces a complete or an edgeless subgraph, and two components
    are joined either completely or not at all.
    """
    parent = list(range(g.p + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    nbrs = g.neighbor_sets
    for i in range(1, g.p + 1):
        for j in range(i + 1, g.p + 1):
            if nbrs[i - 1] - {j} == nbrs[j - 1] - {i}:
                parent[find(i)] = find(j)

    groups = {}
    for v in range(1, g.p + 1):
        groups.setdefault(find(v), []).append(v)
    components = tuple(sorted((tuple(sorted(c)) for c in groups.values())))

    flags = []
    for comp in components:
        if len(comp) >= 2 and g.has_edge(comp[0], comp[1]):
            flags.append(COMPLETE)
        else:
            flags.append(DISCRETE)

    joins = []
    for a, b in itertools.combinations(range(len(components)), 2):
        if g.has_edge(components[a][0], components[b][0]):
            joins.append((a, b))
    return CoherentDecomposition(
        components=components, flags=tuple(flags), coherence_edges=tuple(joins)
    )


def automorphisms(g: Graph, max_vertices: int = 12) -> list[Permutation]:
    """The full automorphism group, identity first, sorted by image tuple.

    Plain backtracking with degree/neighborhood pruning; refuses graphs with
    more than ``max_vertices`` vertices since the list itself can be
    factorially large.
    """
    if g.p > max_vertices:
        raise GroupTooLarge(f"refusing to enumerate Aut for p={g.p} > {max_vertices}")
    nbrs = g.neighbor_sets
    # cheap vertex invariant: degree plus sorted neighbor degrees
    degs = [len(nbrs[v]) for v in range(g.p)]
    invariant = [
        (degs[v], tuple(sorted(degs[w - 1] for w in nbrs[v]))) for v in range(g.p)
    ]
    found = []
    image = [0] * (g.p + 1)
    used = [False] * (g.p + 1)

    def extend(v):
        if v > g.p:
            found.append(tuple(image[1:]))
            return
        for w in range(1, g.p + 1):
            if used[w] or invariant[w - 1] != invariant[v - 1]:
                continue
            ok = True
            for u in range(1, v):
                if (u in nbrs[v - 1]) != (image[u] in nbrs[w - 1]):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                extend(v + 1)
                used[w] = False
        image[v] = 0

    extend(1)
    found.sort()
    return [Permutation(t) for t in found]


def induced_edge_permutation(g: Graph, sigma: Permutation) -> Permutation:
    """How a vertex automorphism permutes the (1-based) edge indices."""
    if sigma.n != g.p:
        raise DimensionMismatch(f"permutation acts on {sigma.n} vertices, graph has {g.p}")
    images = []
    for i, j in g.edges:
        a, b = sigma(i), sigma(j)
        if a > b:
            a, b = b, a
        k = g.edge_index.get((a, b))
        if k is None:
            raise NotAnAutomorphism(f"edge ({i},{j}) maps to non-edge ({a},{b})")
        images.append(k + 1)
    return Permutation(tuple(images))
