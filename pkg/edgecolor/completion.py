from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from edgecolor.graph import Multigraph, Edge, add_vertex
from edgecolor.invariants import gamma, phi, subset_table, odd_cuts_at_least


SEARCH_BUDGET = 20000


class CompletionError(Exception):
    '''
    CompletionErrors are raised when a multigraph cannot be completed to an r-graph.
    When 'internal' is False, the requested r is too small for the multigraph. When
    'internal' is True, the completion search failed although an r-graph exists.
    '''

    def __init__(self, message: str, internal: bool = False) -> None:
        super().__init__(message)
        self.internal = internal


@dataclass(frozen=True)
class CompletionResult:
    '''
    An r-graph containing the input multigraph. 'added' holds the ids of the new edges
    and 'added_vertex' the index of the isolated vertex that was appended to reach even
    order (None if the order was already even).
    '''
    graph: Multigraph
    r: int
    added: tuple[int, ...]
    added_vertex: int | None


class CutLedger:
    '''
    Tracks for every odd vertex set S the current coboundary size and the remaining
    degree deficiency (r - deg summed over S) while edges are added. An edge uv can be
    added safely as long as every odd S keeps cut(S) + min(D(S), D(S^c)) >= r, since
    the edges that are still missing can cross the coboundary of S at most
    min(D(S), D(S^c)) times.
    '''

    def __init__(self, g: Multigraph, r: int) -> None:
        '''
        Initializes the ledger for the multigraph g and target degree r.

        Parameters:
            g           Multigraph of even order with maximum degree <= r
            r           Target degree

        Returns:
            None
        '''
        table = subset_table(g)
        selector = table.size % 2 == 1

        self.r = r
        self.masks = table.masks[selector]
        self.cut = table.cut[selector].astype(np.int64)
        self.deficiency = r * table.size[selector].astype(np.int64) - table.degsum[selector]
        self.total = r * g.n - 2 * g.e

    def feasible(self) -> bool:
        return bool((self.cut + np.minimum(self.deficiency, self.total - self.deficiency) >= self.r).all())

    def shifts(self, u: int, v: int) -> tuple[np.ndarray, np.ndarray]:
        in_u = (self.masks >> u) & 1
        in_v = (self.masks >> v) & 1

        return in_u ^ in_v, in_u + in_v

    def add(self, u: int, v: int) -> None:
        cut_shift, deficiency_shift = self.shifts(u, v)

        self.cut += cut_shift
        self.deficiency -= deficiency_shift
        self.total -= 2

    def remove(self, u: int, v: int) -> None:
        cut_shift, deficiency_shift = self.shifts(u, v)

        self.cut -= cut_shift
        self.deficiency += deficiency_shift
        self.total += 2


def candidate_pairs(degrees: list[int], r: int) -> list[tuple[int, int]]:
    '''
    Pairs of deficient vertices, the least saturated pairs first.
    '''
    deficient = [v for v in range(len(degrees)) if degrees[v] < r]
    pairs = [(u, v) for ctr, u in enumerate(deficient) for v in deficient[ctr + 1:]]

    return sorted(pairs, key=lambda pair: (degrees[pair[0]] + degrees[pair[1]], pair[0], pair[1]))


def rgraph_complete(g: Multigraph, r: int, start: int = None) -> CompletionResult:
    '''
    Extends g to an r-graph by adding edges (and an isolated vertex if the order is odd).
    Edges are added greedily between the least saturated deficient vertices, each
    addition is checked against the odd cut condition of the CutLedger, and a bounded
    backtracking search takes over if the greedy choice runs into a dead end.

    Parameters:
        g           Multigraph to extend
        r           Target degree (needs to be at least phi(g))
        start       First id for the new edges (defaults to the next unused id)

    Returns:
        result      CompletionResult with the r-graph and the added edges
    '''
    if type(r) is not int or r < 1:
        raise CompletionError(f'Target degree needs to be a positive integer, got {r}.')

    if r < phi(g):
        raise CompletionError(f'No {r}-graph contains {g}, its phi value is {phi(g)}.')

    added_vertex = None
    host = g

    if g.n % 2 == 1:
        host = add_vertex(g)
        added_vertex = g.n

    ledger = CutLedger(host, r)

    if not ledger.feasible():
        raise CompletionError(f'{host} violates the odd cut condition for r = {r}.', internal=True)

    degrees = list(host.degrees)
    budget = [SEARCH_BUDGET]
    pairs = []

    def search() -> bool:
        '''
        Depth first search over edge additions. Returns True once all degrees equal r.
        '''
        if all(degree == r for degree in degrees):
            return True

        for u, v in candidate_pairs(degrees, r):

            if budget[0] <= 0:
                return False

            budget[0] -= 1
            ledger.add(u, v)

            if ledger.feasible():
                degrees[u] += 1
                degrees[v] += 1
                pairs.append((u, v))

                if search():
                    return True

                pairs.pop()
                degrees[u] -= 1
                degrees[v] -= 1

            ledger.remove(u, v)

        return False

    if not search():
        raise CompletionError(f'Completion of {host} to a {r}-graph was not found.', internal=True)

    start = host.next_edge_id() if start is None else start
    new_edges = tuple(Edge(start + ctr, u, v) for ctr, (u, v) in enumerate(pairs))
    completed = Multigraph(host.n, host.edges + new_edges)

    if not is_rgraph(completed, r):
        raise CompletionError(f'Completed multigraph {completed} is not a {r}-graph.', internal=True)

    return CompletionResult(completed, r, tuple(edge.id for edge in new_edges), added_vertex)


def is_rgraph(g: Multigraph, r: int) -> bool:
    '''
    Checks whether g is an r-graph: even order, r-regular and Gamma(g) <= r. The Gamma
    condition is tested in its coboundary form (every odd vertex set has at least r
    coboundary edges).

    Parameters:
        g           Multigraph to check
        r           Degree

    Returns:
        result      True if g is an r-graph
    '''
    if g.n % 2 == 1 or any(degree != r for degree in g.degrees):
        return False

    return odd_cuts_at_least(g, r)


def is_rgraph_by_gamma(g: Multigraph, r: int) -> bool:
    '''
    Same check as is_rgraph, but compares Gamma(g) with r directly.
    '''
    if g.n % 2 == 1 or any(degree != r for degree in g.degrees):
        return False

    if g.n < 3:
        return True

    value, _ = gamma(g)
    return value <= r
