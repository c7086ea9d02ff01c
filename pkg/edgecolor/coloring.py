from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Iterable

import networkx as nx

from edgecolor.constants import DEFAULT_ORACLE_EDGES
from edgecolor.graph import Multigraph, ShrinkResult
from edgecolor.invariants import phi
from edgecolor.matching import Matching
from edgecolor.logging import Logger
from edgecolor.utils import Settings


class ColoringError(Exception):
    '''
    ColoringErrors are raised when an edge coloring is not proper, does not cover the
    edges it should cover, or when two colorings cannot be merged.
    '''


class OracleLimitError(Exception):
    '''
    OracleLimitErrors are raised when the exact chromatic index search is requested for
    a multigraph with more edges than the configured limit.
    '''

    def __init__(self, edges: int, limit: int) -> None:
        super().__init__(f'Exact search on {edges} edges exceeds the oracle limit of {limit} edges.')
        self.edges = edges
        self.limit = limit


@dataclass(frozen=True)
class EdgeColoring:
    '''
    Assignment of color indices (starting at 0) to edge ids.
    '''
    assignment: dict[int, int] = field(default_factory=dict)

    @property
    def colors_used(self) -> int:
        return len(set(self.assignment.values()))

    def classes(self) -> dict[int, list[int]]:
        '''
        Color classes as color -> sorted edge ids.
        '''
        classes = {}

        for edge_id in sorted(self.assignment):
            classes.setdefault(self.assignment[edge_id], []).append(edge_id)

        return classes

    def restrict(self, edge_ids: Iterable[int]) -> EdgeColoring:
        keep = set(edge_ids)
        return EdgeColoring({edge_id: color for edge_id, color in self.assignment.items() if edge_id in keep})

    def shift(self, offset: int) -> EdgeColoring:
        return EdgeColoring({edge_id: color + offset for edge_id, color in self.assignment.items()})

    def compact(self) -> EdgeColoring:
        '''
        Renumbers the used colors to 0..k-1 keeping their order.
        '''
        mapping = {color: ctr for ctr, color in enumerate(sorted(set(self.assignment.values())))}
        return EdgeColoring({edge_id: mapping[color] for edge_id, color in self.assignment.items()})


@dataclass(frozen=True)
class BoundCertificate:
    '''
    Comparison of a coloring with the logarithmic bound phi + log_{3/2}(min{n'/3, phi}),
    where n' is the order rounded up to the next even number. 'bound' is the largest
    integer below the real valued bound, 'satisfied' is decided in exact arithmetic and
    'float_satisfied' mirrors the decision in floating point.
    '''
    n: int
    phi: int
    colors_used: int
    bound_value: float
    bound: int
    satisfied: bool
    float_satisfied: bool
    reference: dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class ColoringResult:
    '''
    Output of the coloring pipeline. 'tree' is None for trivial inputs.
    '''
    coloring: EdgeColoring
    tree: object = None


def check_proper(g: Multigraph, c: EdgeColoring) -> None:
    '''
    Raises a ColoringError unless c colors exactly the edges of g and no two edges with
    a common endpoint share a color.

    Parameters:
        g           Multigraph
        c           Coloring to check

    Returns:
        None
    '''
    if set(c.assignment) != g.edge_ids:
        missing = sorted(g.edge_ids - set(c.assignment))
        extra = sorted(set(c.assignment) - g.edge_ids)
        raise ColoringError(f'Coloring domain mismatch (missing: {missing}, unknown: {extra}).')

    for v in range(g.n):
        seen = {}

        for edge in g.incidence[v]:
            color = c.assignment[edge.id]

            if color < 0:
                raise ColoringError(f'Edge {edge.id} has negative color {color}.')

            if color in seen:
                raise ColoringError(f'Edges {seen[color]} and {edge.id} share color {color} at vertex {v}.')

            seen[color] = edge.id


def is_proper(g: Multigraph, c: EdgeColoring) -> bool:
    try:
        check_proper(g, c)
        return True

    except ColoringError:
        return False


def oracle_order(g: Multigraph) -> list:
    '''
    Edge order of the exact search: vertices by decreasing degree, and for each vertex
    its edges that were not listed yet, sorted by the other endpoint. Parallel edges
    are therefore consecutive.
    '''
    vertices = sorted(range(g.n), key=lambda v: (-g.degrees[v], v))
    listed = set()
    order = []

    for v in vertices:
        for edge in sorted(g.incidence[v], key=lambda edge: (edge.other(v), edge.id)):

            if edge.id not in listed:
                listed.add(edge.id)
                order.append(edge)

    return order


def color_with(g: Multigraph, k: int) -> EdgeColoring | None:
    '''
    Searches a proper k-edge-coloring of g. Colors are introduced in order (the first
    edge gets color 0), parallel edges receive increasing colors and a vertex never has
    more uncolored edges than free colors.

    Parameters:
        g           Multigraph
        k           Number of colors

    Returns:
        coloring    Proper k-edge-coloring or None
    '''
    order = oracle_order(g)
    used = [0] * g.n
    remaining = list(g.degrees)
    colors = [0] * len(order)

    if any(degree > k for degree in remaining):
        return None

    def search(position: int, introduced: int) -> bool:

        if position == len(order):
            return True

        edge = order[position]
        lowest = 0

        if position > 0 and order[position - 1].pair == edge.pair:
            lowest = colors[position - 1] + 1

        taken = used[edge.u] | used[edge.v]

        for color in range(lowest, min(introduced + 1, k)):

            if taken >> color & 1:
                continue

            used[edge.u] |= 1 << color
            used[edge.v] |= 1 << color
            remaining[edge.u] -= 1
            remaining[edge.v] -= 1

            if remaining[edge.u] <= k - bin(used[edge.u]).count('1') and \
               remaining[edge.v] <= k - bin(used[edge.v]).count('1'):

                colors[position] = color

                if search(position + 1, max(introduced, color + 1)):
                    return True

            used[edge.u] &= ~(1 << color)
            used[edge.v] &= ~(1 << color)
            remaining[edge.u] += 1
            remaining[edge.v] += 1

        return False

    if not search(0, 0):
        return None

    return EdgeColoring({edge.id: colors[ctr] for ctr, edge in enumerate(order)})


def exact_chromatic_index(g: Multigraph, limit: int = None) -> tuple[int, EdgeColoring]:
    '''
    Computes the chromatic index of g by exhaustive search, starting at phi(g) and
    stopping at the first k that admits a proper k-edge-coloring.

    Parameters:
        g           Multigraph
        limit       Maximum number of edges (defaults to DEFAULT_ORACLE_EDGES)

    Returns:
        index       Chromatic index
        coloring    Witness coloring with 'index' colors
    '''
    limit = DEFAULT_ORACLE_EDGES if limit is None else limit

    if g.e > limit:
        raise OracleLimitError(g.e, limit)

    if g.e == 0:
        return 0, EdgeColoring()

    upper = min(g.delta + g.max_multiplicity, 3 * g.delta // 2)

    for k in range(phi(g), upper + 1):
        coloring = color_with(g, k)

        if coloring is not None:
            check_proper(g, coloring)
            return k, coloring

    raise ColoringError(f'No coloring of {g} with at most {upper} colors was found.')


def color_paths_and_cycles(h: Multigraph) -> EdgeColoring:
    '''
    Colors a multigraph with maximum degree at most 2 with phi colors. Each component is
    a path or a cycle (a doubled edge is a cycle of length 2); edges are colored
    alternately along the walk and the last edge of an odd cycle gets color 2.
    '''
    assignment = {}
    visited = set()

    for component in sorted(nx.connected_components(h.to_networkx()), key=min):
        ends = [v for v in component if h.degrees[v] == 1]
        current = min(ends) if ends else min(component)
        walk = []

        while True:
            edge = next((edge for edge in h.incidence[current] if edge.id not in visited), None)

            if edge is None:
                break

            visited.add(edge.id)
            walk.append(edge)
            current = edge.other(current)

        cycle = not ends and len(walk) > 1

        for ctr, edge in enumerate(walk):
            assignment[edge.id] = ctr % 2

        if cycle and len(walk) % 2 == 1:
            assignment[walk[-1].id] = 2

    return EdgeColoring(assignment)


def maximal_matchings(h: Multigraph, required: frozenset[int]) -> Iterable[Matching]:
    '''
    Enumerates the maximal matchings of the simple support of h that cover every vertex
    in 'required'. Matched pairs use their lowest edge id.
    '''
    support = h.support()
    neighbors = {v: sorted(support.neighbors(v)) for v in range(h.n)}

    def extend(free: frozenset[int], skipped: frozenset[int], chosen: list[int]) -> Iterable[Matching]:
        open_vertices = [v for v in sorted(free) if any(u in free for u in neighbors[v])]

        if not open_vertices:
            uncovered = free | skipped

            if uncovered & required:
                return

            if not any(u in uncovered for v in uncovered for u in neighbors[v]):
                yield Matching(frozenset(chosen), uncovered)

            return

        v = open_vertices[0]

        for u in neighbors[v]:
            if u in free:
                yield from extend(free - {u, v}, skipped, chosen + [support.edges[v, u]['edge_id']])

        if v not in required:
            yield from extend(free - {v}, skipped | {v}, chosen)

    yield from extend(frozenset(range(h.n)), frozenset(), [])


def find_peel(h: Multigraph) -> Matching | None:
    '''
    Returns a maximal matching M with phi(h - M) = phi(h) - 1, or None if there is none.
    '''
    target = phi(h)
    required = frozenset(v for v in range(h.n) if h.degrees[v] == target)

    for matching in maximal_matchings(h, required):
        if phi(h.remove_edges(matching.edge_ids)) == target - 1:
            return matching

    return None


def peel_matchings(h: Multigraph, count: int) -> tuple[list[Matching], Multigraph]:
    '''
    Removes 'count' matchings from h, each of them lowering phi by exactly one.

    Parameters:
        h           Multigraph
        count       Number of matchings to remove

    Returns:
        matchings   The removed matchings
        remainder   h without the removed matchings
    '''
    if count > phi(h):
        raise ColoringError(f'Cannot peel {count} matchings from a multigraph with phi {phi(h)}.')

    matchings = []

    for _ in range(count):
        matching = find_peel(h)

        if matching is None:
            raise ColoringError(f'No matching lowers phi of {h} below {phi(h)}.')

        matchings.append(matching)
        h = h.remove_edges(matching.edge_ids)

    return matchings, h


def color_by_peeling(h: Multigraph) -> EdgeColoring | None:
    '''
    Colors h with phi(h) colors by peeling phi-lowering matchings until no edge is left.
    Returns None if a peeling step fails.
    '''
    assignment = {}
    color = 0

    while h.e > 0:
        matching = find_peel(h)

        if matching is None:
            return None

        for edge_id in matching.edge_ids:
            assignment[edge_id] = color

        color += 1
        h = h.remove_edges(matching.edge_ids)

    return EdgeColoring(assignment)


def color_terminal(h: Multigraph, tag: str, settings: Settings = None) -> EdgeColoring:
    '''
    Colors a leaf of the decomposition tree. Leaves tagged 1A or 2A are colored with
    exactly phi(h) colors, all other leaves with the exact oracle or, beyond the oracle
    limit, by a nested pipeline run.

    Parameters:
        h           Leaf multigraph
        tag         Halting tag of the leaf
        settings    Pipeline settings

    Returns:
        coloring    Proper coloring of h
    '''
    settings = settings or Settings()

    if h.e == 0:
        return EdgeColoring()

    if tag in ('1A', '2A'):

        if h.delta <= 2:
            coloring = color_paths_and_cycles(h)

        else:
            coloring = color_by_peeling(h) if h.n <= 8 else None

        if coloring is not None:
            check_proper(h, coloring)

            if coloring.colors_used != phi(h):
                raise ColoringError(f'Leaf coloring uses {coloring.colors_used} colors instead of {phi(h)}.')

            return coloring

        Logger.print_warning(f'Peeling a {tag} leaf with {h.n} vertices failed, using the exact search.')

    if h.e <= settings.oracle_edges:
        return exact_chromatic_index(h, settings.oracle_edges)[1]

    if settings.depth >= settings.max_depth:
        raise OracleLimitError(h.e, settings.oracle_edges)

    return color_multigraph(h, settings.nested()).coloring


def merge_split(coloring_S: EdgeColoring, coloring_Sc: EdgeColoring, shrink_S: ShrinkResult,
                shrink_Sc: ShrinkResult, k: int) -> EdgeColoring:
    '''
    Merges the colorings of the two multigraphs of a splitting. 'shrink_S' is the result
    of shrinking S and 'shrink_Sc' the result of shrinking its complement; both contain
    the coboundary edges of S at their new vertex. The colors of coloring_Sc are permuted
    so that every coboundary edge gets the color it has in coloring_S. The forced pairs
    are completed to a permutation of 0..k-1 in increasing order.

    Parameters:
        coloring_S      Coloring of the multigraph with S shrunk
        coloring_Sc     Coloring of the multigraph with S^c shrunk
        shrink_S        ShrinkResult of S
        shrink_Sc       ShrinkResult of S^c
        k               Number of available colors

    Returns:
        coloring        Coloring of the host multigraph with at most k colors
    '''
    if shrink_S.coboundary != shrink_Sc.coboundary:
        raise ColoringError('The two sides of the splitting disagree on the coboundary edges.')

    for coloring in (coloring_S, coloring_Sc):
        if any(color >= k for color in coloring.assignment.values()):
            raise ColoringError(f'Coloring uses more than {k} colors.')

    permutation = {}

    for edge_id in sorted(shrink_S.coboundary):
        source = coloring_Sc.assignment[edge_id]
        target = coloring_S.assignment[edge_id]

        if permutation.get(source, target) != target:
            raise ColoringError(f'Coboundary edge {edge_id} forces two different colors.')

        permutation[source] = target

    if len(set(permutation.values())) != len(permutation):
        raise ColoringError('Coboundary colors do not form a partial bijection.')

    free = [color for color in range(k) if color not in permutation.values()]
    open_colors = [color for color in range(k) if color not in permutation]

    permutation.update(zip(open_colors, free))

    assignment = dict(coloring_S.assignment)

    for edge_id, color in coloring_Sc.assignment.items():
        assignment[edge_id] = permutation[color]

    return EdgeColoring(assignment)


def reconstruct(tree, settings: Settings = None) -> EdgeColoring:
    '''
    Builds a coloring of the input multigraph from the decomposition tree. Leaves are
    colored with color_terminal; nodes are then processed bottom up: removed matchings
    take the colors 0..w-1 and shift the child colors by w, splittings are merged with
    merge_split, virtual edges are dropped where they were added, and the edges of the
    completion are dropped at the root. Every intermediate coloring is checked.

    Parameters:
        tree        Decomposition tree
        settings    Pipeline settings

    Returns:
        coloring    Proper coloring of the input multigraph
    '''
    colorings = {}

    for node_id in sorted(tree.nodes, reverse=True):
        node = tree.nodes[node_id]
        children = [tree.nodes[child_id] for child_id in node.children]

        if not children:
            coloring = color_terminal(node.graph, node.halting, settings)

        elif len(children) == 2:
            first, second = children
            colored = [colorings.pop(first.id).compact(), colorings.pop(second.id).compact()]
            k = max(coloring.colors_used for coloring in colored)
            coloring = merge_split(colored[0], colored[1], first.shrink, second.shrink, k)

        else:
            child = children[0]
            coloring = colorings.pop(child.id)

            if child.kind == 'matching':
                coloring = coloring.compact().shift(child.weight)
                assignment = dict(coloring.assignment)

                for color, matching in enumerate(child.matchings):
                    assignment.update({edge_id: color for edge_id in matching.edge_ids})

                coloring = EdgeColoring(assignment)

            elif child.kind == 'augment':
                coloring = coloring.restrict(node.graph.edge_ids)

        check_proper(node.graph, coloring)
        colorings[node.id] = coloring

    coloring = colorings[tree.root].restrict(tree.original.edge_ids).compact()
    check_proper(tree.original, coloring)

    return coloring


def color_multigraph(g: Multigraph, settings: Settings = None) -> ColoringResult:
    '''
    Runs the complete coloring pipeline on g: reduction, leaf colorings and
    reconstruction. Multigraphs without edges or with less than three vertices are
    colored directly.

    Parameters:
        g           Input multigraph
        settings    Pipeline settings

    Returns:
        result      ColoringResult with the coloring and the decomposition tree
    '''
    from edgecolor.reduction import reduce

    if g.e == 0:
        return ColoringResult(EdgeColoring())

    if g.n < 3:
        return ColoringResult(EdgeColoring({edge.id: ctr for ctr, edge in enumerate(g.edges)}))

    tree = reduce(g, settings)
    coloring = reconstruct(tree, settings)

    return ColoringResult(coloring, tree)


def log_ratio_floor(measure: Fraction) -> int:
    '''
    Largest integer j >= 0 with (3/2)^j <= measure.
    '''
    j = 0

    while Fraction(3, 2) ** (j + 1) <= measure:
        j += 1

    return j


def certify(g: Multigraph, c: EdgeColoring) -> BoundCertificate:
    '''
    Checks c against the logarithmic bound. With j = colors - phi the bound holds iff
    j <= 0 or 3^j <= m 2^j for m = min{n'/3, phi}. For less than three vertices the
    bound is phi itself.

    Parameters:
        g           Multigraph
        c           Proper coloring of g

    Returns:
        certificate BoundCertificate
    '''
    check_proper(g, c)

    phi_value = phi(g)
    colors = c.colors_used
    j = colors - phi_value

    reference = {
        'vizing': g.delta + g.max_multiplicity,
        'shannon': 3 * g.delta // 2,
        'small-order': phi_value + math.ceil(g.n / 8) - 1,
    }

    if g.n < 3 or phi_value == 0:
        satisfied = j <= 0
        return BoundCertificate(g.n, phi_value, colors, float(phi_value), phi_value, satisfied, satisfied, reference)

    order = g.n if g.n % 2 == 0 else g.n + 1
    measure = min(Fraction(order, 3), Fraction(phi_value))

    satisfied = j <= 0 or 3 ** j <= measure * 2 ** j
    bound_value = phi_value + math.log(measure) / math.log(1.5)
    bound = phi_value + log_ratio_floor(measure)

    return BoundCertificate(g.n, phi_value, colors, bound_value, bound, satisfied, colors <= bound_value + 1e-9, reference)
