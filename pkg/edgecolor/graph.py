from __future__ import annotations

from functools import cached_property
from dataclasses import dataclass, field
from typing import Iterable

import networkx as nx


VertexSet = frozenset


class GraphError(Exception):
    '''
    GraphErrors are raised when a multigraph would violate its structural invariants
    (loops, vertices out of range, duplicate edge ids) or when an operation receives
    a vertex set that it cannot work on.
    '''


@dataclass(frozen=True, order=True)
class Edge:
    '''
    A single edge with a permanent id. Parallel edges are distinct Edge objects
    with distinct ids.
    '''
    id: int
    u: int
    v: int

    @property
    def pair(self) -> tuple[int, int]:
        return (self.u, self.v) if self.u < self.v else (self.v, self.u)

    def other(self, w: int) -> int:
        return self.v if w == self.u else self.u

    def meets(self, members: frozenset[int]) -> int:
        '''
        Number of endpoints inside the specified vertex set (0, 1 or 2).
        '''
        return (self.u in members) + (self.v in members)


@dataclass(frozen=True)
class Multigraph:
    '''
    Immutable loopless multigraph on the vertices 0..n-1. Edges are kept sorted by
    their id. All derived quantities (degrees, multiplicities, adjacency) are
    computed lazily and cached on the instance.
    '''
    n: int
    edges: tuple[Edge, ...] = field(default=())

    def __post_init__(self) -> None:
        '''
        Validates the multigraph invariants and normalizes the edge order.
        '''
        if type(self.n) is not int or self.n < 1:
            raise GraphError(f'Vertex count needs to be a positive integer, got {self.n}.')

        edges = tuple(sorted(self.edges, key=lambda edge: edge.id))
        seen = set()

        for edge in edges:

            if edge.u == edge.v:
                raise GraphError(f'Edge {edge.id} is a loop at vertex {edge.u}.')

            if not (0 <= edge.u < self.n and 0 <= edge.v < self.n):
                raise GraphError(f'Edge {edge.id} has an endpoint outside of [0, {self.n}).')

            if edge.id in seen:
                raise GraphError(f'Edge id {edge.id} is used twice.')

            seen.add(edge.id)

        object.__setattr__(self, 'edges', edges)

    def from_pairs(n: int, pairs: Iterable[tuple[int, int]], start: int = 0) -> Multigraph:
        '''
        Creates a new Multigraph from a list of endpoint pairs. Edge ids are assigned
        in the order of the pairs, beginning with 'start'.

        Parameters:
            n           Number of vertices
            pairs       Endpoint pairs (one entry per parallel edge)
            start       First edge id to assign

        Returns:
            Multigraph  Newly created multigraph
        '''
        return Multigraph(n, tuple(Edge(start + ctr, u, v) for ctr, (u, v) in enumerate(pairs)))

    def from_multiplicities(n: int, multiplicities: dict[tuple[int, int], int]) -> Multigraph:
        '''
        Creates a new Multigraph from a pair -> multiplicity mapping. Pairs are expanded in
        sorted order, so that parallel edges receive consecutive ids.
        '''
        pairs = []

        for pair in sorted(multiplicities):
            pairs += [pair] * multiplicities[pair]

        return Multigraph.from_pairs(n, pairs)

    def __str__(self) -> str:
        return f'Multigraph(n={self.n}, e={self.e}, delta={self.delta})'

    @property
    def e(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_ids(self) -> frozenset[int]:
        return frozenset(edge.id for edge in self.edges)

    @cached_property
    def edge_index(self) -> dict[int, Edge]:
        return {edge.id: edge for edge in self.edges}

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        degrees = [0] * self.n

        for edge in self.edges:
            degrees[edge.u] += 1
            degrees[edge.v] += 1

        return tuple(degrees)

    @property
    def delta(self) -> int:
        return max(self.degrees)

    @cached_property
    def incidence(self) -> tuple[tuple[Edge, ...], ...]:
        incidence = [[] for _ in range(self.n)]

        for edge in self.edges:
            incidence[edge.u].append(edge)
            incidence[edge.v].append(edge)

        return tuple(tuple(edges) for edges in incidence)

    @cached_property
    def multiplicities(self) -> dict[tuple[int, int], int]:
        counts = {}

        for edge in self.edges:
            counts[edge.pair] = counts.get(edge.pair, 0) + 1

        return counts

    @property
    def max_multiplicity(self) -> int:
        return max(self.multiplicities.values(), default=0)

    def degree(self, v: int) -> int:
        '''
        Degree of v with parallel edges counted with multiplicity.
        '''
        check_vertex(self, v)
        return self.degrees[v]

    def neighbors(self, v: int) -> list[int]:
        '''
        Sorted list of distinct neighbors of v.
        '''
        return sorted({edge.other(v) for edge in self.incidence[v]})

    def support(self) -> nx.Graph:
        '''
        Returns the simple underlying graph as a networkx Graph. Each networkx edge
        carries the lowest id among the parallel edges it represents ('edge_id').

        Parameters:
            None

        Returns:
            graph       Simple networkx graph on all vertices of the multigraph
        '''
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))

        for edge in self.edges:
            if not graph.has_edge(edge.u, edge.v):
                graph.add_edge(edge.u, edge.v, edge_id=edge.id)

        return graph

    def to_networkx(self) -> nx.MultiGraph:
        '''
        Returns the multigraph as a networkx MultiGraph keyed by edge id.
        '''
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from((edge.u, edge.v, edge.id) for edge in self.edges)

        return graph

    def remove_edges(self, edge_ids: Iterable[int]) -> Multigraph:
        '''
        Returns a copy without the specified edges. Remaining edges keep their ids.
        '''
        drop = set(edge_ids)
        missing = drop - self.edge_ids

        if missing:
            raise GraphError(f'Cannot remove unknown edges {sorted(missing)}.')

        return Multigraph(self.n, tuple(edge for edge in self.edges if edge.id not in drop))

    def keep_edges(self, edge_ids: Iterable[int]) -> Multigraph:
        '''
        Returns a copy that only contains the specified edges (unknown ids are ignored).
        '''
        keep = set(edge_ids)
        return Multigraph(self.n, tuple(edge for edge in self.edges if edge.id in keep))

    def next_edge_id(self) -> int:
        '''
        Smallest id that is larger than all ids in use.
        '''
        return max(self.edge_ids, default=-1) + 1


@dataclass(frozen=True)
class InducedResult:
    '''
    Induced subgraph plus the maps back into its host. Surviving edges keep their ids,
    so 'edge_map' maps every id onto itself.
    '''
    graph: Multigraph
    vertex_map: dict[int, int]
    edge_map: dict[int, int]


@dataclass(frozen=True)
class ShrinkResult:
    '''
    The multigraph obtained by shrinking a vertex set S to the single vertex s_vertex.
    Surviving vertices are renumbered densely in their original order and s_vertex is
    the last vertex. Surviving edges keep their ids.
    '''
    shrunk: Multigraph
    s_vertex: int
    subset: frozenset[int]
    vertex_map: dict[int, int]
    edge_map: dict[int, int]
    dropped: frozenset[int]

    @cached_property
    def coboundary(self) -> frozenset[int]:
        '''
        Ids of the edges that were re-terminated at s_vertex.
        '''
        return frozenset(edge.id for edge in self.shrunk.incidence[self.s_vertex])


def check_vertex(g: Multigraph, v: int) -> None:
    '''
    Raises a GraphError if v is not a vertex of g.
    '''
    if type(v) is not int or not 0 <= v < g.n:
        raise GraphError(f'Vertex {v} is out of range [0, {g.n}).')


def vertex_set(g: Multigraph, members: Iterable[int], proper: bool = False) -> frozenset[int]:
    '''
    Validates a vertex set against its host multigraph.

    Parameters:
        g           Host multigraph
        members     Vertices of the set
        proper      Require a non-empty proper subset

    Returns:
        members     The vertex set as frozenset
    '''
    members = frozenset(members)

    for v in members:
        check_vertex(g, v)

    if not members:
        raise GraphError('Vertex set needs to be non-empty.')

    if proper and len(members) == g.n:
        raise GraphError('Vertex set needs to be a proper subset of the vertices.')

    return members


def complement(g: Multigraph, members: Iterable[int]) -> frozenset[int]:
    return frozenset(range(g.n)) - frozenset(members)


def degree(g: Multigraph, v: int) -> int:
    '''
    Degree of v in g (parallel edges are counted with multiplicity).
    '''
    return g.degree(v)


def coboundary(g: Multigraph, s: Iterable[int]) -> frozenset[int]:
    '''
    Returns the ids of all edges with exactly one endpoint in s.

    Parameters:
        g           Host multigraph
        s           Non-empty proper vertex subset

    Returns:
        edge_ids    Coboundary of s
    '''
    members = vertex_set(g, s, proper=True)
    return frozenset(edge.id for edge in g.edges if edge.meets(members) == 1)


def induced(g: Multigraph, s: Iterable[int]) -> InducedResult:
    '''
    Returns the subgraph induced by s. The vertices of s are renumbered in increasing
    order, edges keep their ids.

    Parameters:
        g           Host multigraph
        s           Non-empty vertex subset

    Returns:
        result      InducedResult with the subgraph and its provenance maps
    '''
    members = vertex_set(g, s)
    vertex_map = {v: ctr for ctr, v in enumerate(sorted(members))}
    edges = [Edge(edge.id, vertex_map[edge.u], vertex_map[edge.v]) for edge in g.edges if edge.meets(members) == 2]

    return InducedResult(Multigraph(len(members), tuple(edges)), vertex_map, {edge.id: edge.id for edge in edges})


def shrink(g: Multigraph, s: Iterable[int]) -> ShrinkResult:
    '''
    Shrinks the vertex set s to a single new vertex. Edges inside s are dropped, edges
    of the coboundary are re-terminated at the new vertex and all other edges are kept.

    Parameters:
        g           Host multigraph
        s           Non-empty proper vertex subset

    Returns:
        result      ShrinkResult describing the shrunk multigraph
    '''
    members = vertex_set(g, s, proper=True)
    survivors = [v for v in range(g.n) if v not in members]
    s_vertex = len(survivors)

    vertex_map = {v: ctr for ctr, v in enumerate(survivors)}
    vertex_map.update({v: s_vertex for v in members})

    edges = []
    dropped = []

    for edge in g.edges:

        if edge.meets(members) == 2:
            dropped.append(edge.id)

        else:
            edges.append(Edge(edge.id, vertex_map[edge.u], vertex_map[edge.v]))

    shrunk = Multigraph(s_vertex + 1, tuple(edges))
    return ShrinkResult(shrunk, s_vertex, members, vertex_map, {edge.id: edge.id for edge in edges}, frozenset(dropped))


def add_edges(g: Multigraph, pairs: Iterable[tuple[int, int]], start: int = None) -> tuple[Multigraph, tuple[int, ...]]:
    '''
    Adds new edges between the specified endpoint pairs. The new edges receive fresh ids,
    beginning at 'start' (or right after the largest id in use).

    Parameters:
        g           Host multigraph
        pairs       Endpoint pairs of the new edges
        start       Optional first id for the new edges

    Returns:
        graph       Multigraph containing the old and the new edges
        new_ids     Ids of the new edges in the order of 'pairs'
    '''
    start = g.next_edge_id() if start is None else start

    if start < g.next_edge_id():
        raise GraphError(f'Edge id {start} may collide with ids in use.')

    new_edges = []

    for ctr, (u, v) in enumerate(pairs):
        check_vertex(g, u)
        check_vertex(g, v)

        if u == v:
            raise GraphError(f'Cannot add a loop at vertex {u}.')

        new_edges.append(Edge(start + ctr, u, v))

    return Multigraph(g.n, g.edges + tuple(new_edges)), tuple(edge.id for edge in new_edges)


def add_vertex(g: Multigraph) -> Multigraph:
    '''
    Returns a copy of g with one additional isolated vertex (index n).
    '''
    return Multigraph(g.n + 1, g.edges)
