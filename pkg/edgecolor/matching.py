from __future__ import annotations

from functools import lru_cache
from dataclasses import dataclass
from typing import Iterable

import networkx as nx

from edgecolor.graph import Multigraph, check_vertex


class MatchingError(Exception):
    '''
    MatchingErrors are raised when a matching that the reduction relies on does not
    exist, or when a matching is requested for an argument it is not defined for.
    '''


@dataclass(frozen=True)
class Matching:
    '''
    A set of pairwise disjoint edges of a host multigraph. 'uncovered' contains the
    vertices that the matching misses.
    '''
    edge_ids: frozenset[int]
    uncovered: frozenset[int]

    def __len__(self) -> int:
        return len(self.edge_ids)

    @property
    def perfect(self) -> bool:
        return not self.uncovered


@dataclass(frozen=True)
class TutteCertificate:
    '''
    A vertex set K such that g - K has more odd components than |K|. Its existence
    proves that g has no perfect matching.
    '''
    blocker: frozenset[int]
    odd_components: int

    def check(self, g: Multigraph) -> bool:
        '''
        Recounts the odd components of g - K.
        '''
        return count_odd_components(g, self.blocker) == self.odd_components > len(self.blocker)


def count_odd_components(g: Multigraph, removed: Iterable[int]) -> int:
    '''
    Number of odd order connected components of g minus the specified vertices.
    '''
    support = g.support()
    support.remove_nodes_from(removed)

    return sum(1 for component in nx.connected_components(support) if len(component) % 2 == 1)


def maximum_matching(g: Multigraph, removed: Iterable[int] = ()) -> Matching:
    '''
    Computes a maximum cardinality matching with the blossom algorithm of networkx.
    Parallel edges are collapsed, every matched pair is mapped back to its lowest
    edge id.

    Parameters:
        g           Host multigraph
        removed     Vertices that are ignored for the matching

    Returns:
        matching    Maximum matching of g - removed
    '''
    removed = frozenset(removed)
    support = g.support()
    support.remove_nodes_from(removed)

    pairs = nx.max_weight_matching(support, maxcardinality=True)
    edge_ids = frozenset(support.edges[u, v]['edge_id'] for u, v in pairs)

    covered = set()

    for u, v in pairs:
        covered.update((u, v))

    return Matching(edge_ids, frozenset(v for v in range(g.n) if v not in covered and v not in removed))


def tutte_certificate(g: Multigraph) -> TutteCertificate:
    '''
    Builds a Tutte blocker from the Gallai-Edmonds decomposition. D contains the
    vertices that are missed by some maximum matching and K = A(g) contains the
    neighbors of D outside of D. Every component of g[D] is odd and their number
    exceeds |K| by the deficiency of g.

    Parameters:
        g           Multigraph without a perfect matching

    Returns:
        certificate TutteCertificate with the blocker K
    '''
    size = len(maximum_matching(g))
    deficient = set()

    for v in range(g.n):
        if len(maximum_matching(g, [v])) == size:
            deficient.add(v)

    blocker = set()

    for v in deficient:
        blocker.update(u for u in g.neighbors(v) if u not in deficient)

    certificate = TutteCertificate(frozenset(blocker), count_odd_components(g, blocker))

    if not certificate.odd_components > len(certificate.blocker):
        raise MatchingError(f'Gallai-Edmonds set {sorted(blocker)} is not a Tutte blocker.')

    return certificate


def perfect_matching(g: Multigraph) -> Matching | TutteCertificate:
    '''
    Returns a perfect matching of g or, when none exists, a Tutte certificate that
    proves its absence. The returned matching is the one with the lexicographically
    smallest edge id sequence: edges are taken in id order whenever the remaining
    vertices still admit a perfect matching.

    Parameters:
        g           Multigraph of even order

    Returns:
        result      Matching or TutteCertificate
    '''
    if g.n % 2 == 1:
        raise MatchingError(f'Perfect matchings require even order, got n = {g.n}.')

    if not maximum_matching(g).perfect:
        return tutte_certificate(g)

    covered = set()
    edge_ids = set()

    for edge in g.edges:

        if edge.u in covered or edge.v in covered:
            continue

        if maximum_matching(g, covered | {edge.u, edge.v}).perfect:
            covered.update((edge.u, edge.v))
            edge_ids.add(edge.id)

    matching = Matching(frozenset(edge_ids), frozenset())
    validate_matching(g, matching)

    return matching


def select_v(g: Multigraph, s: int, d: int) -> int:
    '''
    Chooses the partner vertex for a near-perfect matching around the isolated vertex s:
    a vertex of degree d that is adjacent to a vertex of degree d+1 when one exists,
    otherwise any vertex of degree d. Ties are broken by the smallest index.

    Parameters:
        g           Host multigraph
        s           Vertex of degree 0
        d           Reference degree

    Returns:
        v           Selected vertex
    '''
    check_vertex(g, s)

    if g.degrees[s] != 0:
        raise MatchingError(f'Vertex {s} needs degree 0, got {g.degrees[s]}.')

    candidates = [v for v in range(g.n) if v != s and g.degrees[v] == d]

    if not candidates:
        raise MatchingError(f'No vertex besides {s} has degree {d}.')

    for v in candidates:
        if any(g.degrees[u] == d + 1 for u in g.neighbors(v)):
            return v

    return candidates[0]


def near_perfect_matching(g: Multigraph, exclude: int, d: int = None) -> Matching:
    '''
    Returns a perfect matching of g - exclude - v where v is chosen by select_v. The
    matching covers all vertices but 'exclude' and v.

    Parameters:
        g           Multigraph of even order
        exclude     Vertex of degree 0
        d           Reference degree (defaults to the minimum degree besides 'exclude')

    Returns:
        matching    Near-perfect matching
    '''
    if g.n % 2 == 1:
        raise MatchingError(f'Near-perfect matchings require even order, got n = {g.n}.')

    check_vertex(g, exclude)

    if d is None:
        d = min(g.degrees[v] for v in range(g.n) if v != exclude)

    v = select_v(g, exclude, d)
    matching = maximum_matching(g, [exclude, v])

    if not matching.perfect:
        raise MatchingError(f'{g} - {exclude} - {v} has no perfect matching.')

    matching = Matching(matching.edge_ids, frozenset((exclude, v)))
    validate_matching(g, matching)

    return matching


def validate_matching(g: Multigraph, matching: Matching) -> None:
    '''
    Checks that the matching consists of disjoint edges of g that cover exactly the
    vertices outside of 'uncovered'.
    '''
    covered = set()

    for edge_id in matching.edge_ids:

        if edge_id not in g.edge_index:
            raise MatchingError(f'Edge {edge_id} is not part of the host multigraph.')

        edge = g.edge_index[edge_id]

        if edge.u in covered or edge.v in covered:
            raise MatchingError(f'Edge {edge_id} shares an endpoint with another matching edge.')

        covered.update((edge.u, edge.v))

    expected = set(range(g.n)) - matching.uncovered

    if covered != expected:
        raise MatchingError(f'Matching covers {sorted(covered)} instead of {sorted(expected)}.')


def exhaustive_matching_size(g: Multigraph, removed: Iterable[int] = ()) -> int:
    '''
    Size of a maximum matching computed by exhaustive search over vertex masks. Only
    meant as a cross-check for the blossom based matcher on small multigraphs.
    '''
    removed = frozenset(removed)
    neighbors = [sum(1 << u for u in g.neighbors(v)) for v in range(g.n)]

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        if mask == 0:
            return 0

        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        result = best(rest)

        candidates = neighbors[v] & rest

        while candidates:
            u = (candidates & -candidates).bit_length() - 1
            candidates &= candidates - 1
            result = max(result, 1 + best(rest & ~(1 << u)))

        return result

    return best(sum(1 << v for v in range(g.n) if v not in removed))
