from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property, lru_cache
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from edgecolor.graph import Multigraph, vertex_set
from edgecolor.utils import max_order


class InvariantError(Exception):
    '''
    InvariantErrors are raised when an invariant is requested for an argument it is
    not defined for (even order, less than three vertices, k < 1).
    '''


class EnumerationLimitError(Exception):
    '''
    EnumerationLimitErrors are raised when an exhaustive subset search is requested
    for a multigraph that has more vertices than the configured guard (GF_MAX_N).
    '''

    def __init__(self, n: int, limit: int) -> None:
        '''
        Parameters:
            n           Number of vertices of the rejected multigraph
            limit       Currently configured guard
        '''
        super().__init__(f'Subset enumeration on {n} vertices exceeds the limit of {limit} (GF_MAX_N).')
        self.n = n
        self.limit = limit


@dataclass(frozen=True)
class SubgraphScore:
    '''
    Score of the odd subgraph induced by 'subset' with respect to the reference degree k.
    The identity excess + slack = (|subset| - 1) / 2 always holds.
    '''
    subset: frozenset[int]
    excess: int
    slack: int
    k: int
    edges: int
    coboundary: int

    @property
    def size(self) -> int:
        return len(self.subset)

    @property
    def t(self) -> Fraction:
        return Fraction(2 * self.edges, self.size - 1)

    def __str__(self) -> str:
        members = ','.join(str(v) for v in sorted(self.subset))
        return f'{{{members}}} (k={self.k}, ex={self.excess}, sl={self.slack}, cut={self.coboundary})'


@dataclass(frozen=True)
class InvariantReport:
    '''
    Summary of the fractional invariants of a multigraph. 'gamma' and 'witness' are
    None when the multigraph has less than three vertices.
    '''
    delta: int
    gamma: Fraction | None
    chi_f: Fraction
    phi: int
    witness: frozenset[int] | None


class SubsetTable:
    '''
    Vectorized tables over all 2^n vertex subsets of a multigraph. Subsets are encoded
    as bit masks where bit v stands for vertex v. For every mask the table stores the
    number of induced edges, the degree sum, the cardinality and the coboundary size.

    The tables are built by doubling: adding vertex v appends a copy of every table
    shifted by the contribution of v.
    '''

    def __init__(self, g: Multigraph) -> None:
        '''
        Builds the subset tables of g.

        Parameters:
            g           Multigraph to enumerate

        Returns:
            None
        '''
        self.g = g
        self.n = g.n

        adjacency = np.zeros((g.n, g.n), dtype=np.int32)

        for (u, v), count in g.multiplicities.items():
            adjacency[u, v] = count
            adjacency[v, u] = count

        edges = np.zeros(1, dtype=np.int32)
        degsum = np.zeros(1, dtype=np.int32)
        size = np.zeros(1, dtype=np.int16)

        for v in range(g.n):
            inner = np.zeros(1, dtype=np.int32)

            for u in range(v):
                inner = np.concatenate((inner, inner + adjacency[u, v]))

            edges = np.concatenate((edges, edges + inner))
            degsum = np.concatenate((degsum, degsum + g.degrees[v]))
            size = np.concatenate((size, size + 1))

        self.edges = edges
        self.degsum = degsum
        self.size = size
        self.cut = degsum - 2 * edges

    @cached_property
    def masks(self) -> np.ndarray:
        return np.arange(1 << self.n, dtype=np.int64)

    @cached_property
    def full(self) -> int:
        return (1 << self.n) - 1

    def mask_of(self, members: Iterable[int]) -> int:
        mask = 0

        for v in members:
            mask |= 1 << v

        return mask

    def members(self, mask: int) -> frozenset[int]:
        return frozenset(v for v in range(self.n) if mask >> v & 1)

    def odd(self, min_size: int = 3, max_size: int = None) -> np.ndarray:
        '''
        Boolean selector of all odd subsets with min_size <= |S| <= max_size.
        '''
        max_size = self.n if max_size is None else max_size
        return (self.size % 2 == 1) & (self.size >= min_size) & (self.size <= max_size)

    def within(self, members: Iterable[int]) -> np.ndarray:
        '''
        Boolean selector of all subsets of the specified vertex set.
        '''
        outside = self.full & ~self.mask_of(members)
        return (self.masks & outside) == 0

    def containing(self, members: Iterable[int]) -> np.ndarray:
        '''
        Boolean selector of all supersets of the specified vertex set.
        '''
        inside = self.mask_of(members)
        return (self.masks & inside) == inside

    def excess(self, k: int) -> np.ndarray:
        return self.edges.astype(np.int64) - (k * (self.size.astype(np.int64) - 1)) // 2

    def slack(self, k: int) -> np.ndarray:
        return ((k + 1) * (self.size.astype(np.int64) - 1)) // 2 - self.edges.astype(np.int64)

    def pick(self, candidates: np.ndarray) -> int:
        '''
        Deterministic choice among candidate masks: minimum cardinality first, then the
        lexicographically smallest sorted member list. Among sets of equal size the
        lexicographically smallest member list has the largest bit reversed mask.

        Parameters:
            candidates  Array of candidate masks (non-empty)

        Returns:
            mask        The chosen mask
        '''
        sizes = self.size[candidates]
        candidates = candidates[sizes == sizes.min()]

        reversed_masks = np.zeros(len(candidates), dtype=np.int64)

        for v in range(self.n):
            reversed_masks |= ((candidates >> v) & 1) << (self.n - 1 - v)

        return int(candidates[np.argmax(reversed_masks)])

    def score(self, mask: int, k: int) -> SubgraphScore:
        '''
        Creates the SubgraphScore of the specified mask.
        '''
        edges = int(self.edges[mask])
        size = int(self.size[mask])
        excess = edges - k * (size - 1) // 2
        slack = (k + 1) * (size - 1) // 2 - edges

        return SubgraphScore(self.members(mask), excess, slack, k, edges, int(self.cut[mask]))


def check_order(g: Multigraph) -> None:
    '''
    Raises an EnumerationLimitError if g has more vertices than GF_MAX_N allows.
    '''
    limit = max_order()

    if g.n > limit:
        raise EnumerationLimitError(g.n, limit)


def subset_table(g: Multigraph) -> SubsetTable:
    '''
    Returns the (cached) SubsetTable of g.
    '''
    check_order(g)
    return cached_table(g)


@lru_cache(maxsize=8)
def cached_table(g: Multigraph) -> SubsetTable:
    return SubsetTable(g)


def check_k(k: int) -> None:
    if type(k) is not int or k < 1:
        raise InvariantError(f'Reference degree needs to be a positive integer, got {k}.')


def odd_subset(g: Multigraph, s: Iterable[int]) -> frozenset[int]:
    '''
    Validates that s is an odd vertex set with at least three members.
    '''
    members = vertex_set(g, s)

    if len(members) % 2 == 0 or len(members) < 3:
        raise InvariantError(f'Vertex set needs odd cardinality of at least 3, got {len(members)}.')

    return members


def induced_edge_count(g: Multigraph, s: Iterable[int]) -> int:
    '''
    Number of edges with both endpoints in s.
    '''
    members = frozenset(s)
    return sum(1 for edge in g.edges if edge.meets(members) == 2)


def t_value(h: Multigraph) -> Fraction:
    '''
    Computes t(h) = 2e(h) / (n(h) - 1) for a multigraph of odd order.

    Parameters:
        h           Multigraph of odd order n >= 3

    Returns:
        t           Exact rational value
    '''
    if h.n < 3 or h.n % 2 == 0:
        raise InvariantError(f't is only defined for odd order of at least 3, got n = {h.n}.')

    return Fraction(2 * h.e, h.n - 1)


def excess(g: Multigraph, s: Iterable[int], k: int) -> int:
    '''
    k-excess of the subgraph induced by the odd vertex set s. Negative values are
    possible.
    '''
    members = odd_subset(g, s)
    return induced_edge_count(g, members) - k * (len(members) - 1) // 2


def slack(g: Multigraph, s: Iterable[int], k: int) -> int:
    '''
    k-slack of the subgraph induced by the odd vertex set s.
    '''
    members = odd_subset(g, s)
    return (k + 1) * (len(members) - 1) // 2 - induced_edge_count(g, members)


def score(g: Multigraph, s: Iterable[int], k: int) -> SubgraphScore:
    '''
    Returns the complete SubgraphScore of the odd vertex set s.
    '''
    members = odd_subset(g, s)
    edges = induced_edge_count(g, members)
    cut = sum(1 for edge in g.edges if edge.meets(members) == 1)

    return SubgraphScore(members, edges - k * (len(members) - 1) // 2,
                         (k + 1) * (len(members) - 1) // 2 - edges, k, edges, cut)


def gamma(g: Multigraph) -> tuple[Fraction, frozenset[int]]:
    '''
    Computes Gamma(g), the maximum of t over all odd induced subgraphs of order at least
    three, by exhaustive enumeration. For each odd cardinality only the densest subset
    matters, so the maximum is taken over one candidate per cardinality first.

    Parameters:
        g           Multigraph with at least three vertices

    Returns:
        gamma       Exact rational value of Gamma(g)
        witness     Vertex set attaining the value (deterministic tie-break)
    '''
    if g.n < 3:
        raise InvariantError(f'Gamma is undefined for less than three vertices, got n = {g.n}.')

    check_order(g)
    return cached_gamma(g)


@lru_cache(maxsize=256)
def cached_gamma(g: Multigraph) -> tuple[Fraction, frozenset[int]]:
    table = cached_table(g)
    best = None

    for size in range(3, g.n + 1, 2):
        densest = int(table.edges[table.size == size].max())
        value = Fraction(2 * densest, size - 1)

        if best is None or value > best:
            best = value

    selector = table.odd() & (2 * table.edges.astype(np.int64) * best.denominator ==
                              best.numerator * (table.size.astype(np.int64) - 1))

    witness = table.pick(table.masks[selector])
    return best, table.members(witness)


def phi(g: Multigraph) -> int:
    '''
    Computes phi(g), the integer round-up of the fractional chromatic index
    max(Delta(g), Gamma(g)). For less than three vertices Gamma is absent and phi
    equals the maximum degree.
    '''
    if g.n < 3:
        return g.delta

    value, _ = gamma(g)
    return max(g.delta, math.ceil(value))


def phi_integer(g: Multigraph) -> int:
    '''
    Computes phi(g) with integer ceiling divisions only. Used to cross-check phi.
    '''
    if g.n < 3:
        return g.delta

    table = subset_table(g)
    selector = table.odd()

    edges = table.edges[selector].astype(np.int64)
    sizes = table.size[selector].astype(np.int64)
    ceilings = (2 * edges + sizes - 2) // (sizes - 1)

    return max(g.delta, int(ceilings.max()))


def report(g: Multigraph) -> InvariantReport:
    '''
    Returns the InvariantReport (Delta, Gamma, chi_f, phi and witness) of g.
    '''
    if g.n < 3:
        return InvariantReport(g.delta, None, Fraction(g.delta), g.delta, None)

    value, witness = gamma(g)
    return InvariantReport(g.delta, value, max(Fraction(g.delta), value), phi(g), witness)


def find_min_slack_overfull(g: Multigraph, k: int, restrict_to: Iterable[int] = None, max_coboundary: int = None,
                            min_excess: int = 1, max_size: int = None) -> SubgraphScore | None:
    '''
    Searches the odd subsets S (|S| >= 3) whose k-excess is at least 'min_excess'
    (k-overfull for the default of 1) and returns one of minimum k-slack.

    Parameters:
        g               Multigraph to search
        k               Reference degree
        restrict_to     Only consider subsets of this vertex set
        max_coboundary  Only consider subsets with at most this many coboundary edges
        min_excess      Required minimum excess (0 also admits k-full subgraphs)
        max_size        Only consider subsets up to this cardinality

    Returns:
        score           SubgraphScore of the chosen subset or None
    '''
    check_k(k)

    if g.n < 3:
        return None

    table = subset_table(g)
    selector = table.odd(3, max_size) & (table.excess(k) >= min_excess)

    if restrict_to is not None:
        selector &= table.within(restrict_to)

    if max_coboundary is not None:
        selector &= table.cut <= max_coboundary

    if not selector.any():
        return None

    slacks = table.slack(k)
    candidates = table.masks[selector]
    candidates = candidates[slacks[selector] == slacks[selector].min()]

    return table.score(table.pick(candidates), k)


def find_max_excess_full_or_overfull(g: Multigraph, k: int, restrict_to: Iterable[int] = None,
                                     max_size: int = None) -> SubgraphScore | None:
    '''
    Searches the odd subsets S (|S| >= 3) that are k-full or k-overfull and returns one
    of maximum k-excess.

    Parameters:
        g               Multigraph to search
        k               Reference degree
        restrict_to     Only consider subsets of this vertex set
        max_size        Only consider subsets up to this cardinality

    Returns:
        score           SubgraphScore of the chosen subset or None
    '''
    check_k(k)

    if g.n < 3:
        return None

    table = subset_table(g)
    excesses = table.excess(k)
    selector = table.odd(3, max_size) & (excesses >= 0)

    if restrict_to is not None:
        selector &= table.within(restrict_to)

    if not selector.any():
        return None

    candidates = table.masks[selector]
    candidates = candidates[excesses[selector] == excesses[selector].max()]

    return table.score(table.pick(candidates), k)


def find_smallest_overfull(g: Multigraph, k: int, restrict_to: Iterable[int] = None) -> SubgraphScore | None:
    '''
    Returns the k-overfull odd subset of minimum cardinality (or None).
    '''
    check_k(k)

    if g.n < 3:
        return None

    table = subset_table(g)
    selector = table.odd() & (table.excess(k) > 0)

    if restrict_to is not None:
        selector &= table.within(restrict_to)

    if not selector.any():
        return None

    return table.score(table.pick(table.masks[selector]), k)


def find_tight_subset(g: Multigraph, k: int, contains: Iterable[int] = (), min_size: int = 3,
                      max_size: int = None) -> SubgraphScore | None:
    '''
    Searches an odd subset S with t(S) = k exactly, i.e. e(S) = k(|S| - 1) / 2.

    Parameters:
        g               Multigraph to search
        k               Target value of t
        contains        Vertices that need to be members of S
        min_size        Minimum cardinality of S
        max_size        Maximum cardinality of S

    Returns:
        score           SubgraphScore (with respect to k) of the chosen subset or None
    '''
    check_k(k)

    if g.n < 3:
        return None

    table = subset_table(g)
    selector = table.odd(min_size, max_size) & (2 * table.edges.astype(np.int64) == k * (table.size.astype(np.int64) - 1))
    selector &= table.containing(contains)

    if not selector.any():
        return None

    return table.score(table.pick(table.masks[selector]), k)


def find_excess_violation(g: Multigraph, k: int, n_root: int) -> SubgraphScore | None:
    '''
    Searches a k-overfull odd subset R whose k-excess exceeds (n_root - |R| - 1) / 2.
    Multigraphs inside the first reduction stage never contain such a subset.

    Parameters:
        g               Multigraph to search
        k               Reference degree
        n_root          Order of the multigraph the reduction started with

    Returns:
        score           SubgraphScore of a violating subset or None
    '''
    check_k(k)

    if g.n < 3:
        return None

    table = subset_table(g)
    excesses = table.excess(k)
    selector = table.odd() & (excesses > 0) & (2 * excesses > n_root - table.size.astype(np.int64) - 1)

    if not selector.any():
        return None

    return table.score(table.pick(table.masks[selector]), k)


def is_slack_dominant(g: Multigraph, s: int, d: int) -> bool:
    '''
    Decides whether H - s is d-slack dominant: every odd R inside V - s with
    3 <= |R| <= n - 3 and at most d coboundary edges (measured in H) has a d-slack
    strictly larger than the d-slack of H - s.

    Parameters:
        g           Multigraph H of even order
        s           Special vertex
        d           Reference degree

    Returns:
        dominant    True if H - s is d-slack dominant
    '''
    return slack_dominance_witness(g, s, d) is None


def slack_dominance_witness(g: Multigraph, s: int, d: int) -> SubgraphScore | None:
    '''
    Returns the minimum d-slack subset R that prevents H - s from being d-slack dominant
    or None when H - s is d-slack dominant.
    '''
    check_k(d)
    vertex_set(g, [s])

    if g.n % 2 == 1:
        raise InvariantError(f'Slack dominance requires even order, got n = {g.n}.')

    rest = [v for v in range(g.n) if v != s]

    if g.n < 6:
        return None

    reference = slack(g, rest, d)
    table = subset_table(g)
    slacks = table.slack(d)

    selector = table.odd(3, g.n - 3) & table.within(rest) & (table.cut <= d) & (slacks <= reference)

    if not selector.any():
        return None

    candidates = table.masks[selector]
    candidates = candidates[slacks[selector] == slacks[selector].min()]

    return table.score(table.pick(candidates), d)


def odd_cuts_at_least(g: Multigraph, r: int) -> bool:
    '''
    Checks whether every odd vertex set S has at least r coboundary edges. Singletons
    are included.
    '''
    table = subset_table(g)
    selector = (table.size % 2 == 1) & (table.masks != table.full)

    return bool((table.cut[selector] >= r).all())
