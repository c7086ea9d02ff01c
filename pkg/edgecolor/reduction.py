from __future__ import annotations

from collections import deque
from fractions import Fraction
from functools import cached_property
from dataclasses import dataclass, field

from edgecolor.constants import MAX_NODES
from edgecolor.graph import Multigraph, ShrinkResult, shrink, complement, add_edges
from edgecolor.invariants import InvariantError, phi, excess, slack, find_min_slack_overfull, \
                                 find_max_excess_full_or_overfull, find_tight_subset, find_excess_violation, \
                                 find_smallest_overfull, slack_dominance_witness
from edgecolor.matching import Matching, MatchingError, TutteCertificate, perfect_matching, near_perfect_matching
from edgecolor.completion import CompletionResult, rgraph_complete
from edgecolor.logging import Logger
from edgecolor.utils import Settings


HALTING_TAGS = ('1A', '1B', '1C', '2A', '2B', '2C', '2D', 'FB')
COST_BOUNDS = {'1A': 1, '1B': 1, '1C': 1, '2A': 1, '2B': 1, '2C': 2, '2D': 1}
NODE_KINDS = ('root', 'matching', 'split', 'augment', 'handoff')


class InternalStateViolation(Exception):
    '''
    An InternalStateViolation is raised when a condition that the reduction relies on
    does not hold at runtime. The exception keeps the offending node and the tree, so
    that a repro bundle can be written.
    '''

    def __init__(self, check: str, message: str, node: DecompNode = None, tree: DecompTree = None) -> None:
        '''
        Parameters:
            check       Short name of the failed check
            message     Human readable description
            node        Node the check failed on
            tree        Tree that was under construction
        '''
        super().__init__(f'{check}: {message}')
        self.check = check
        self.message = message
        self.node = node
        self.tree = tree


@dataclass(eq=False)
class DecompNode:
    '''
    One multigraph of the decomposition tree together with the operation that created
    it from its parent ('kind'):

        root        The completed input multigraph
        matching    Parent minus the matchings in 'matchings'
        split       Parent with 'subset' (side S) or its complement (side Sc) shrunk
        augment     Parent plus the virtual edges in 'added'
        handoff     Same multigraph as the parent, entering the second stage
    '''
    id: int
    graph: Multigraph
    parent: int | None
    kind: str
    mr: int
    stage: int
    phase: str = 'iterate'
    d_ref: int | None = None
    matchings: tuple[Matching, ...] = ()
    subset: frozenset[int] | None = None
    side: str | None = None
    shrink: ShrinkResult | None = None
    added: tuple[int, ...] = ()
    virtual: frozenset[int] = frozenset()
    halting: str | None = None
    step: str | None = None
    violation: str | None = None
    children: list[int] = field(default_factory=list)

    @cached_property
    def phi(self) -> int:
        return phi(self.graph)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def weight(self) -> int:
        return len(self.matchings)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def special_vertex(self) -> int:
        '''
        Vertex of minimum degree (smallest index on ties).
        '''
        degrees = self.graph.degrees
        return degrees.index(min(degrees))


@dataclass(frozen=True)
class StepOutcome:
    '''
    Result of a single reduction step: 'halt' (with tag), 'removed', 'split',
    'edge_added' or 'handoff' (with the created children).
    '''
    kind: str
    children: tuple[DecompNode, ...] = ()
    tag: str | None = None


class DecompTree:
    '''
    Decomposition tree of a completed multigraph. Besides the nodes, the tree holds the
    quantities of the multigraph G the reduction started with (order, phi and maximum
    degree), which all halting criteria refer to, and a trace of decisions.
    '''

    def __init__(self, original: Multigraph, completion: CompletionResult) -> None:
        '''
        Parameters:
            original    Input multigraph
            completion  r-graph completion of the input

        Returns:
            None
        '''
        self.original = original
        self.completion = completion
        self.nodes = {}
        self.root = 0
        self.next_node_id = 0
        self.n_root = completion.graph.n
        self.phi_root = phi(completion.graph)
        self.delta_root = completion.graph.delta
        self.next_edge_id = completion.graph.next_edge_id()
        self.trace = []
        self.violations = []

    def add_node(self, parent: DecompNode | None, graph: Multigraph, kind: str, **kwargs) -> DecompNode:
        '''
        Creates a new node and registers it as child of 'parent'. Stage, phase, mr and
        d_ref are inherited from the parent unless specified.

        Parameters:
            parent      Parent node (None for the root)
            graph       Multigraph of the node
            kind        Incoming operation
            kwargs      Further DecompNode fields

        Returns:
            node        Newly created node
        '''
        if parent is not None:
            kwargs.setdefault('mr', parent.mr)
            kwargs.setdefault('stage', parent.stage)
            kwargs.setdefault('phase', parent.phase)
            kwargs.setdefault('d_ref', parent.d_ref)
            kwargs.setdefault('virtual', parent.virtual & graph.edge_ids)

        node = DecompNode(self.next_node_id, graph, None if parent is None else parent.id, kind, **kwargs)
        self.nodes[node.id] = node
        self.next_node_id += 1

        if parent is not None:
            parent.children.append(node.id)

        return node

    def cost(self, node: DecompNode) -> int:
        '''
        cost(G -> H) = mr(H) + phi(H) - phi(G)
        '''
        return node.mr + node.phi - self.phi_root

    def leaves(self) -> list[DecompNode]:
        return [node for node in self.nodes.values() if node.is_leaf]

    def path(self, node: DecompNode) -> list[DecompNode]:
        '''
        Nodes on the path from the root to 'node' (both included).
        '''
        path = [node]

        while path[-1].parent is not None:
            path.append(self.nodes[path[-1].parent])

        return path[::-1]

    def fresh_ids(self, count: int) -> int:
        '''
        Reserves 'count' unused edge ids and returns the first of them.
        '''
        start = self.next_edge_id
        self.next_edge_id += count

        return start

    def log(self, node: DecompNode, step: str, *details: str) -> None:
        '''
        Records a decision in the trace and reports it in verbose mode.
        '''
        node.step = step
        line = f'node {node.id}: {step}'

        if details:
            line += ' ' + ' '.join(details)

        self.trace.append(line)
        Logger.print_step(node.id, step, *details)


class Reducer:
    '''
    Builds the decomposition tree of a completed multigraph. Nodes are processed in
    creation order. Each node is dispatched to the preamble (first 1-factor removals
    and the first split), the first stage iteration or the second stage iteration.
    '''

    def __init__(self, tree: DecompTree, settings: Settings = None) -> None:
        self.tree = tree
        self.settings = settings or Settings()

    def violation(self, check: str, message: str, node: DecompNode) -> InternalStateViolation:
        return InternalStateViolation(check, message, node, self.tree)

    def run(self) -> DecompTree:
        '''
        Processes nodes until every leaf carries a halting tag.

        Parameters:
            None

        Returns:
            tree        The completed decomposition tree
        '''
        queue = deque([self.tree.nodes[self.tree.root]])

        while queue:
            node = queue.popleft()

            if len(self.tree.nodes) > MAX_NODES:
                raise self.violation('termination', f'more than {MAX_NODES} nodes were created', node)

            try:
                outcome = self.step(node)

            except InternalStateViolation as e:

                if not self.settings.fallback:
                    raise e

                for child_id in node.children:
                    del self.tree.nodes[child_id]

                node.children.clear()
                node.halting = 'FB'
                node.violation = str(e)
                self.tree.violations.append(e)
                self.tree.log(node, 'fallback', str(e))
                Logger.print_warning(f'Node {node.id} became a fallback leaf ({e}).')
                continue

            queue.extend(outcome.children)

        return self.tree

    def step(self, node: DecompNode) -> StepOutcome:
        '''
        Dispatches a node to the step function of its stage and phase.
        '''
        try:

            if node.stage == 2:
                return self.stage2_step(node)

            if node.phase == 'preamble':
                return self.preamble_step(node)

            return self.stage1_step(node)

        except MatchingError as e:
            raise self.violation('matching', str(e), node)

    def halt(self, node: DecompNode, tag: str, reason: str) -> StepOutcome:
        node.halting = tag
        self.tree.log(node, f'halt-{tag}', reason, f'n={node.n}', f'phi={node.phi}', f'cost={self.tree.cost(node)}')

        return StepOutcome('halt', tag=tag)

    def remove(self, node: DecompNode, matching: Matching, step: str, **kwargs) -> StepOutcome:
        '''
        Creates the child node that results from removing a matching.
        '''
        graph = node.graph.remove_edges(matching.edge_ids)
        child = self.tree.add_node(node, graph, 'matching', mr=node.mr + 1, matchings=(matching,), **kwargs)
        self.tree.log(node, step, f'removed={len(matching)}', f'child={child.id}', f'phi={child.phi}')

        return StepOutcome('removed', (child,))

    def split(self, node: DecompNode, subset: frozenset[int], step: str, **kwargs) -> StepOutcome:
        '''
        Creates the two children of a splitting on 'subset'. The first child has 'subset'
        shrunk to a single vertex, the second child its complement.
        '''
        if not 3 <= len(subset) <= node.n - 3:
            raise self.violation('nontrivial-split', f'split set of size {len(subset)} on {node.n} vertices', node)

        children = []

        for side, members in (('S', subset), ('Sc', complement(node.graph, subset))):
            result = shrink(node.graph, members)
            children.append(self.tree.add_node(node, result.shrunk, 'split', subset=frozenset(subset),
                                               side=side, shrink=result, **kwargs))

        members = ','.join(str(v) for v in sorted(subset))
        self.tree.log(node, step, f'S={{{members}}}', f'children={children[0].id},{children[1].id}')

        return StepOutcome('split', tuple(children))

    def augment(self, node: DecompNode, u: int, v: int, step: str) -> StepOutcome:
        '''
        Creates the child node that results from adding the virtual edge uv.
        '''
        graph, added = add_edges(node.graph, [(u, v)], start=self.tree.fresh_ids(1))
        child = self.tree.add_node(node, graph, 'augment', added=added, virtual=node.virtual | frozenset(added))
        self.tree.log(node, step, f'edge={u}-{v}', f'child={child.id}')

        return StepOutcome('edge_added', (child,))

    def preamble_step(self, node: DecompNode) -> StepOutcome:
        '''
        Handles the regular multigraphs at the top of the tree. An r-graph is reduced by
        1-factor removals as long as they lower phi. When a removal keeps phi, the
        resulting multigraph is split on a maximum excess set and both halves enter
        the first stage iteration.

        Parameters:
            node        Node in the preamble phase

        Returns:
            outcome     StepOutcome of the applied operation
        '''
        h = node.graph
        delta = h.delta

        if node.phi == delta + 1:
            found = find_max_excess_full_or_overfull(h, delta)

            if found is None or found.excess < 1:
                raise self.violation('max-excess-split', f'no {delta}-overfull set in a multigraph with phi {node.phi}', node)

            return self.split(node, found.subset, 'max-excess-split', phase='iterate')

        if node.phi != delta or any(degree != delta for degree in h.degrees):
            raise self.violation('regular-preamble', f'expected a {delta}-graph, got phi={node.phi}', node)

        if delta <= 2:
            return self.halt(node, '1A', 'max-degree')

        matching = perfect_matching(h)

        if isinstance(matching, TutteCertificate):
            raise self.violation('one-factor-exists', f'{delta}-graph without 1-factor (blocker {sorted(matching.blocker)})', node)

        reduced = phi(h.remove_edges(matching.edge_ids))

        if reduced > delta:
            raise self.violation('phi-after-removal', f'phi grew from {delta} to {reduced}', node)

        if h.n <= 8 and reduced == delta - 1:
            return self.halt(node, '1A', 'order')

        return self.remove(node, matching, 'one-factor')

    def stage1_checks(self, node: DecompNode, target: int) -> list[int]:
        '''
        Verifies the degree, phi and excess conditions of a first stage node and returns
        the vertices with degree below the target degree.
        '''
        h = node.graph

        if h.delta > target:
            raise self.violation('degree-profile', f'max degree {h.delta} exceeds {target}', node)

        deficient = [v for v in range(h.n) if h.degrees[v] < target]

        if len(deficient) > 2:
            raise self.violation('degree-profile', f'{len(deficient)} vertices below degree {target}', node)

        if node.phi > target + 1:
            raise self.violation('phi-bound', f'phi {node.phi} exceeds {target + 1}', node)

        violating = find_excess_violation(h, target, self.tree.n_root)

        if violating is not None:
            raise self.violation('excess-bound', f'{violating} exceeds (n - |R| - 1)/2 for n={self.tree.n_root}', node)

        return deficient

    def stage1_step(self, node: DecompNode) -> StepOutcome:
        '''
        Performs one step of the first stage iteration on a node whose vertices all have
        degree Delta* = Delta(G) - mr, except for at most two deficient vertices.

        Parameters:
            node        First stage node

        Returns:
            outcome     StepOutcome of the applied operation
        '''
        h = node.graph
        target = self.tree.delta_root - node.mr
        deficient = self.stage1_checks(node, target)
        s = node.special_vertex()
        rest = [v for v in range(h.n) if v != s]

        if h.delta <= 2 or h.n <= 8:
            return self.halt(node, '1A', 'max-degree' if h.delta <= 2 else 'order')

        if 4 * excess(h, rest, h.delta) >= h.n:

            if not stage1_postcheck_1B(node, self.tree):
                raise self.violation('criterion-1B', f'order {h.n} or max degree {h.delta} out of range', node)

            return self.halt(node, '1B', 'excess')

        if 0 in h.degrees:

            if len(deficient) == 1 and 3 * h.delta > self.tree.n_root:
                raise self.violation('criterion-1C', f'max degree {h.delta} exceeds n/3 for n={self.tree.n_root}', node)

            node.halting = '1C'
            child = self.tree.add_node(node, h, 'handoff', stage=2, d_ref=h.delta)
            self.tree.log(node, 'handoff', f'd={h.delta}', f'child={child.id}')

            return StepOutcome('handoff', (child,), '1C')

        if len(deficient) == 2:
            return self.saturate(node, target, deficient)

        reference = slack(h, rest, target)
        inner = find_min_slack_overfull(h, target, restrict_to=rest)

        if inner is not None and inner.slack < reference:
            found = find_min_slack_overfull(h, target)
            return self.split(node, found.subset, 'overfull-split')

        if 2 * excess(h, rest, target) != target - h.degrees[s]:
            raise self.violation('excess-identity', f'ex(H-s) differs from (Delta* - deg(s))/2', node)

        smallest = find_smallest_overfull(h, target, restrict_to=rest)

        if smallest is not None and 2 * smallest.size < h.n:
            raise self.violation('overfull-size', f'{smallest} is smaller than half the order', node)

        matching = perfect_matching(h)

        if isinstance(matching, TutteCertificate):
            raise self.violation('one-factor-exists', f'no 1-factor (blocker {sorted(matching.blocker)})', node)

        reduced = phi(h.remove_edges(matching.edge_ids))

        if reduced > target:
            raise self.violation('phi-after-removal', f'phi {reduced} exceeds {target}', node)

        return self.remove(node, matching, 'one-factor')

    def saturate(self, node: DecompNode, target: int, deficient: list[int]) -> StepOutcome:
        '''
        Handles a first stage node with two deficient vertices s and s_R: split on a set
        W containing both with t(W) = Delta* + 1 if there is one, else add the edge
        s s_R.
        '''
        h = node.graph
        s, s_r = deficient

        found = find_tight_subset(h, target + 1, contains=(s, s_r), max_size=h.n - 3)

        if found is not None:
            return self.split(node, found.subset, 'tight-split')

        if find_tight_subset(h, target + 1, contains=(s, s_r), min_size=h.n - 1) is not None:
            raise self.violation('nontrivial-split', f'only V - v is tight around {s} and {s_r}', node)

        return self.augment(node, s, s_r, 'augment')

    def stage2_step(self, node: DecompNode) -> StepOutcome:
        '''
        Performs one step of the second stage iteration. Here d is the reference degree
        of the node; vertices have degree d or d+1 (Type 0 or Type 1) except for the
        deficient ones.

        Parameters:
            node        Second stage node

        Returns:
            outcome     StepOutcome of the applied operation
        '''
        h = node.graph
        d = node.d_ref
        tree = self.tree
        cost = tree.cost(node)

        if h.delta > d + 1:
            raise self.violation('degree-profile', f'max degree {h.delta} exceeds d+1={d + 1}', node)

        if node.phi > d + 2:
            raise self.violation('phi-bound', f'phi {node.phi} exceeds d+2={d + 2}', node)

        tag = stage2_criterion(node, tree)

        if tag is not None:
            return self.halt(node, tag, 'criterion')

        s = node.special_vertex()
        type1 = sum(1 for degree in h.degrees if degree == d + 1)

        if node.phi <= d + 1 and type1 > d:
            raise self.violation('type1-count', f'{type1} vertices of degree {d + 1} (cost {cost})', node)

        if h.n >= 4 and Fraction(2 * (h.e - h.degrees[s]), h.n - 2) > d + 1:
            raise self.violation('t-without-s', f't(H-s) exceeds d+1={d + 1}', node)

        if node.phi > d + 1:
            found = find_min_slack_overfull(h, d + 1)
            return self.split(node, found.subset, 'overfull-split')

        if node.phi == d + 1:
            found = find_tight_subset(h, d + 1, max_size=h.n - 3)

            if found is not None:
                return self.split(node, found.subset, 'tight-split')

        low = [v for v in range(h.n) if h.degrees[v] < d]

        if len(low) >= 2:
            w = next(v for v in low if v != s)
            outcome = self.augment(node, s, w, 'augment')

            if outcome.children[0].phi > d + 1:
                raise self.violation('augment-phi', f'adding {s}-{w} raised phi above {d + 1}', node)

            return outcome

        if d < 2:
            raise self.violation('degree-bound', f'reference degree {d} is below 2', node)

        witness = slack_dominance_witness(h, s, d)

        if witness is None:
            return self.matching_step(node, s, d)

        return self.slack_split(node, s, d, witness.subset)

    def matching_step(self, node: DecompNode, s: int, d: int) -> StepOutcome:
        '''
        Removes a perfect matching (deg(s) > 0) or a near-perfect matching that misses s
        and one vertex of degree d (deg(s) = 0). The reference degree drops by one. The
        step requires ex(H - s, d) < n/4.
        '''
        h = node.graph
        rest = [v for v in range(h.n) if v != s]

        if 4 * excess(h, rest, d) >= h.n:
            raise self.violation('matching-hypothesis', f'ex(H-s, {d}) is not below n/4 for n={h.n}', node)

        if h.degrees[s] > 0:
            matching = perfect_matching(h)

            if isinstance(matching, TutteCertificate):
                raise self.violation('matching-exists', f'no perfect matching (blocker {sorted(matching.blocker)})', node)

            return self.remove(node, matching, 'one-factor', d_ref=d - 1)

        if not any(h.degrees[v] == d for v in rest):
            raise self.violation('matching-exists', f'no vertex of degree {d} besides {s}', node)

        matching = near_perfect_matching(h, s, d)
        return self.remove(node, matching, 'near-one-factor', d_ref=d - 1)

    def slack_split(self, node: DecompNode, s: int, d: int, subset: frozenset[int]) -> StepOutcome:
        '''
        Splits a node whose H - s is not d-slack dominant. 'subset' is the minimum d-slack
        set R that blocks the dominance. Degree d vertices of R are paired in index order
        into sl(R, d) virtual edges M. The shortest prefix M' of M for which H + M' has a
        (d+1)-full set S with 3 <= |S| <= n-3 determines the split of H; if no prefix
        creates such a set, R itself is used.
        '''
        h = node.graph
        needed = slack(h, subset, d)
        candidates = sorted(v for v in subset if h.degrees[v] == d)

        if 2 * needed > len(candidates):
            raise self.violation('slack-split', f'{len(candidates)} vertices of degree {d} cannot absorb slack {needed}', node)

        pairs = [(candidates[2 * ctr], candidates[2 * ctr + 1]) for ctr in range(needed)]

        for count in range(1, len(pairs) + 1):
            augmented, _ = add_edges(h, pairs[:count])
            found = find_tight_subset(augmented, d + 1, max_size=h.n - 3)

            if found is not None:
                return self.split(node, found.subset, 'slack-split')

        return self.split(node, subset, 'slack-split')


def stage1_postcheck_1B(node: DecompNode, tree: DecompTree) -> bool:
    '''
    Verifies the consequences of halting criterion 1B: n(H) <= 2n(G)/3 and
    Delta(H) >= n(H)/2.
    '''
    h = node.graph
    return 3 * h.n <= 2 * tree.n_root and 2 * h.delta >= h.n


def stage2_criterion(node: DecompNode, tree: DecompTree) -> str | None:
    '''
    Returns the first second stage halting criterion (2A, 2B, 2C, 2D) the node satisfies
    or None.
    '''
    h = node.graph
    cost = tree.cost(node)

    if (h.n <= 8 or h.delta <= 2) and cost <= 1:
        return '2A'

    if 3 * h.n <= 2 * tree.n_root and 2 * node.phi >= h.n and cost <= 1:
        return '2B'

    if h.n <= tree.phi_root and 3 * h.n <= tree.n_root and cost <= 2:
        return '2C'

    if 9 * node.phi <= 2 * tree.n_root and 2 * node.phi <= tree.phi_root and cost <= 1:
        return '2D'

    return None


def reduce(g: Multigraph, settings: Settings = None) -> DecompTree:
    '''
    Builds the decomposition tree of g. The input is padded to even order and completed
    to an r-graph with r = phi(g), then reduced until every leaf satisfies a halting
    criterion.

    Parameters:
        g           Input multigraph (n >= 3, at least one edge)
        settings    Pipeline settings (fallback handling)

    Returns:
        tree        Decomposition tree
    '''
    if g.n < 3 or g.e == 0:
        raise InvariantError(f'Reduction requires at least three vertices and one edge, got {g}.')

    completion = rgraph_complete(g, phi(g), start=g.next_edge_id())
    tree = DecompTree(g, completion)
    tree.add_node(None, completion.graph, 'root', mr=0, stage=1, phase='preamble', virtual=frozenset(completion.added))

    return Reducer(tree, settings).run()


@dataclass
class LeafCheck:
    '''
    Verification result of a single leaf. 'peels' is the number of additional matching
    peels a 1A/2A leaf needs to reach the reduction factor (0 if none are needed).
    '''
    node_id: int
    tag: str
    n: int
    phi: int
    cost: int
    reduced: bool
    peels: int = 0
    problems: list[str] = field(default_factory=list)


@dataclass
class TreeReport:
    '''
    Result of verify_tree. The report is clean when no leaf has problems and no leaf
    was turned into a fallback leaf.
    '''
    leaves: list[LeafCheck] = field(default_factory=list)
    fallback: list[int] = field(default_factory=list)
    continuation: list[int] = field(default_factory=list)

    @property
    def failures(self) -> list[str]:
        return [f'node {leaf.node_id} ({leaf.tag}): {problem}' for leaf in self.leaves for problem in leaf.problems]

    @property
    def peeled(self) -> list[int]:
        return [leaf.node_id for leaf in self.leaves if leaf.peels > 0]

    @property
    def ok(self) -> bool:
        return not self.failures and not self.fallback


def size_measure(n: int, phi_value: int) -> Fraction:
    '''
    min{n/3, phi} as exact rational.
    '''
    return min(Fraction(n, 3), Fraction(phi_value))


def side_conditions(node: DecompNode, tree: DecompTree) -> list[str]:
    '''
    Checks the conditions that come with the halting tag of a leaf.
    '''
    h = node.graph
    tag = node.halting
    problems = []

    if tag in ('1A', '2A') and not (h.delta <= 2 or h.n <= 8):
        problems.append(f'neither max degree <= 2 nor order <= 8 (n={h.n}, delta={h.delta})')

    if tag == '1B' and not stage1_postcheck_1B(node, tree):
        problems.append(f'n(H) <= 2n(G)/3 or Delta(H) >= n(H)/2 fails (n={h.n}, delta={h.delta})')

    if tag == '2B' and not (3 * h.n <= 2 * tree.n_root and 2 * node.phi >= h.n):
        problems.append(f'n(H) <= 2n(G)/3 or phi(H) >= n(H)/2 fails (n={h.n}, phi={node.phi})')

    if tag == '2C' and not (h.n <= tree.phi_root and 3 * h.n <= tree.n_root):
        problems.append(f'n(H) <= phi(G) or n(H) <= n(G)/3 fails (n={h.n})')

    if tag == '2D' and not (9 * node.phi <= 2 * tree.n_root and 2 * node.phi <= tree.phi_root):
        problems.append(f'phi(H) <= 2n(G)/9 or phi(H) <= phi(G)/2 fails (phi={node.phi})')

    cost = tree.cost(node)

    if tag in COST_BOUNDS and cost > COST_BOUNDS[tag]:
        problems.append(f'cost {cost} exceeds {COST_BOUNDS[tag]}')

    return problems


def verify_tree(tree: DecompTree) -> TreeReport:
    '''
    Verifies a decomposition tree: every leaf carries a halting tag, mr adds up along
    every path, the tag specific conditions and cost bounds hold, and every leaf H with
    cost k satisfies 3^k min{n(H)/3, phi(H)} <= 2^k min{n(G)/3, phi(G)}. Leaves tagged
    1A or 2A that miss the last inequality may peel additional matchings, each of them
    lowering phi(H) by one. The number of peels is reported and checked.

    Parameters:
        tree        Decomposition tree to verify

    Returns:
        report      TreeReport with one LeafCheck per leaf
    '''
    from edgecolor.coloring import ColoringError, peel_matchings

    report = TreeReport()
    limit = size_measure(tree.n_root, tree.phi_root)

    for node in tree.nodes.values():

        if node.kind == 'matching' and node.phase == 'preamble' and tree.cost(node) == 0:
            report.continuation.append(node.id)

    for node in tree.leaves():

        if node.halting == 'FB':
            report.fallback.append(node.id)
            continue

        cost = tree.cost(node)
        factor = Fraction(3, 2) ** cost
        reduced = size_measure(node.n, node.phi) * factor <= limit
        check = LeafCheck(node.id, node.halting, node.n, node.phi, cost, reduced)

        if node.halting not in HALTING_TAGS:
            check.problems.append('leaf without halting tag')
            report.leaves.append(check)
            continue

        mr = sum(member.weight for member in tree.path(node))

        if mr != node.mr:
            check.problems.append(f'mr {node.mr} differs from the {mr} matchings on the path')

        check.problems += side_conditions(node, tree)

        if not reduced and node.halting in ('1A', '2A'):
            peels = next((j for j in range(1, node.phi) if size_measure(node.n, node.phi - j) * factor <= limit), None)

            if peels is None:
                check.problems.append('reduction factor not reached by peeling')

            else:
                try:
                    peel_matchings(node.graph, peels)
                    check.peels = peels

                except ColoringError as e:
                    check.problems.append(f'peeling {peels} matchings failed: {e}')

        elif not reduced:
            check.problems.append(f'reduction factor violated (n={node.n}, phi={node.phi}, cost={cost})')

        report.leaves.append(check)

    return report
