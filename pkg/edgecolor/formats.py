from __future__ import annotations

from typing import Any
from pathlib import Path

import yaml

from edgecolor.graph import Multigraph, Edge, GraphError
from edgecolor.coloring import EdgeColoring
from edgecolor.constants import TRACE_SCHEMA, TRACE_VERSION, VERSION


TRACE_NODE_KEYS = ('id', 'parent', 'kind', 'stage', 'mr', 'n', 'e', 'phi', 'cost', 'weight', 'd', 'halting',
                   'step', 'subset', 'side', 'virtual', 'violation')


class FormatError(Exception):
    '''
    FormatErrors are raised when a multigraph, coloring or trace text cannot be parsed.
    The (1-based) line number is included in the message when it is known.
    '''

    def __init__(self, message: str, line: int = None, path: Path = None) -> None:
        '''
        Parameters:
            message     Description of the problem
            line        Line number of the offending line
            path        File the text was read from
        '''
        if line is not None:
            message = f'line {line}: {message}'

        super().__init__(message)
        self.line = line
        self.path = path


def content_lines(text: str) -> list[tuple[int, list[str]]]:
    '''
    Splits text into (line number, tokens) pairs, skipping comments and blank lines.
    '''
    lines = []

    for ctr, line in enumerate(text.splitlines(), start=1):
        line = line.strip()

        if line and not line.startswith('#'):
            lines.append((ctr, line.split()))

    return lines


def parse_int(token: str, what: str, line: int) -> int:

    try:
        return int(token)

    except ValueError:
        raise FormatError(f"{what} needs to be an integer, got '{token}'.", line)


def parse_multigraph(text: str) -> Multigraph:
    '''
    Parses the multigraph text format:

        # comment
        p mgraph <n> <m>
        e <u> <v> [mult]
        i <id> <u> <v> [mult]

    Vertices are 1-based, every edge line stands for 'mult' parallel edges (default 1)
    and m counts the edge lines. 'e' lines continue the ids of the previous line
    (starting at 0), 'i' lines start at the specified id.

    Parameters:
        text        Multigraph text

    Returns:
        graph       Parsed Multigraph
    '''
    lines = content_lines(text)

    if not lines:
        raise FormatError('Missing header line.')

    line, header = lines[0]

    if len(header) != 4 or header[0] != 'p' or header[1] != 'mgraph':
        raise FormatError(f"Header needs the form 'p mgraph <n> <m>', got '{' '.join(header)}'.", line)

    n = parse_int(header[2], 'Vertex count', line)
    m = parse_int(header[3], 'Edge line count', line)

    if n < 1 or m < 0:
        raise FormatError(f'Invalid header values n = {n}, m = {m}.', line)

    if len(lines) - 1 != m:
        raise FormatError(f'Header announces {m} edge lines, found {len(lines) - 1}.', line)

    edges = []
    next_id = 0

    for line, tokens in lines[1:]:

        if tokens[0] == 'i' and len(tokens) in (4, 5):
            next_id = parse_int(tokens[1], 'Edge id', line)
            tokens = tokens[1:]

            if next_id < 0:
                raise FormatError(f'Edge ids need to be non-negative, got {next_id}.', line)

        elif tokens[0] != 'e' or len(tokens) not in (3, 4):
            raise FormatError(f"Edge lines need the form 'e <u> <v> [mult]' or 'i <id> <u> <v> [mult]', got '{' '.join(tokens)}'.", line)

        u = parse_int(tokens[1], 'Vertex', line)
        v = parse_int(tokens[2], 'Vertex', line)
        mult = parse_int(tokens[3], 'Multiplicity', line) if len(tokens) == 4 else 1

        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError(f'Vertex out of range 1..{n} in edge {u} {v}.', line)

        if u == v:
            raise FormatError(f'Loop at vertex {u}.', line)

        if mult < 1:
            raise FormatError(f'Multiplicity needs to be positive, got {mult}.', line)

        for _ in range(mult):
            edges.append(Edge(next_id, u - 1, v - 1))
            next_id += 1

    try:
        return Multigraph(n, tuple(edges))

    except GraphError as e:
        raise FormatError(str(e))


def emit_multigraph(g: Multigraph, comment: str = None) -> str:
    '''
    Writes g in the multigraph text format. Edges (in id order) between the same pair
    with consecutive ids are written as one line with a multiplicity. A line whose
    first id does not continue the previous line is written in the 'i <id>' form, so
    that parsing the text reproduces the edge ids of g.

    Parameters:
        g           Multigraph
        comment     Optional comment line

    Returns:
        text        Multigraph text
    '''
    runs = []

    for edge in g.edges:

        if runs and runs[-1][0] == (edge.u, edge.v) and runs[-1][1] + runs[-1][2] == edge.id:
            runs[-1][2] += 1

        else:
            runs.append([(edge.u, edge.v), edge.id, 1])

    lines = [] if comment is None else [f'# {comment}']
    lines.append(f'p mgraph {g.n} {len(runs)}')
    next_id = 0

    for (u, v), start, mult in runs:
        line = f'e {u + 1} {v + 1}' if start == next_id else f'i {start} {u + 1} {v + 1}'
        lines.append(line if mult == 1 else f'{line} {mult}')
        next_id = start + mult

    return '\n'.join(lines) + '\n'


def parse_coloring(text: str) -> EdgeColoring:
    '''
    Parses the coloring text format: a header 's colors <k>' followed by lines
    'c <edge_id> <color>'. The header has to match the number of distinct colors.

    Parameters:
        text        Coloring text

    Returns:
        coloring    Parsed EdgeColoring
    '''
    lines = content_lines(text)

    if not lines:
        raise FormatError('Missing header line.')

    line, header = lines[0]

    if len(header) != 3 or header[:2] != ['s', 'colors']:
        raise FormatError(f"Header needs the form 's colors <k>', got '{' '.join(header)}'.", line)

    k = parse_int(header[2], 'Color count', line)
    assignment = {}

    for line, tokens in lines[1:]:

        if len(tokens) != 3 or tokens[0] != 'c':
            raise FormatError(f"Color lines need the form 'c <edge_id> <color>', got '{' '.join(tokens)}'.", line)

        edge_id = parse_int(tokens[1], 'Edge id', line)
        color = parse_int(tokens[2], 'Color', line)

        if edge_id in assignment:
            raise FormatError(f'Edge {edge_id} is colored twice.', line)

        if color < 0:
            raise FormatError(f'Colors need to be non negative, got {color}.', line)

        assignment[edge_id] = color

    coloring = EdgeColoring(assignment)

    if coloring.colors_used != k:
        raise FormatError(f'Header announces {k} colors, found {coloring.colors_used}.')

    return coloring


def emit_coloring(c: EdgeColoring) -> str:
    '''
    Writes c in the coloring text format with lines sorted by edge id.
    '''
    lines = [f's colors {c.colors_used}']
    lines += [f'c {edge_id} {c.assignment[edge_id]}' for edge_id in sorted(c.assignment)]

    return '\n'.join(lines) + '\n'


def node_record(tree, node) -> dict[str, Any]:
    '''
    Trace record of a single decomposition node.
    '''
    return {
        'id': node.id,
        'parent': node.parent,
        'kind': node.kind,
        'stage': node.stage,
        'mr': node.mr,
        'n': node.n,
        'e': node.graph.e,
        'phi': node.phi,
        'cost': tree.cost(node),
        'weight': node.weight,
        'd': node.d_ref,
        'halting': node.halting,
        'step': node.step,
        'subset': None if node.subset is None else sorted(node.subset),
        'side': node.side,
        'virtual': sorted(node.virtual),
        'violation': node.violation,
    }


def trace_document(tree) -> dict[str, Any]:
    '''
    Builds the trace document of a decomposition tree. Node records are ordered by id.
    '''
    completion = tree.completion

    return {
        'schema': TRACE_SCHEMA,
        'version': TRACE_VERSION,
        'generator': f'edgecolor {VERSION}',
        'input': {'n': tree.original.n, 'e': tree.original.e},
        'root': {
            'n': tree.n_root,
            'phi': tree.phi_root,
            'delta': tree.delta_root,
            'added_edges': list(completion.added),
            'added_vertex': completion.added_vertex,
        },
        'nodes': [node_record(tree, tree.nodes[node_id]) for node_id in sorted(tree.nodes)],
        'decisions': list(tree.trace),
    }


def emit_trace(tree) -> str:
    '''
    Writes the decomposition trace as YAML. The document carries the schema name and
    version, the root quantities, one record per node and the decision log.

    Parameters:
        tree        Decomposition tree

    Returns:
        text        YAML text
    '''
    return yaml.safe_dump(trace_document(tree), sort_keys=False, default_flow_style=None)


def parse_trace(text: str) -> dict[str, Any]:
    '''
    Reads a trace document and checks its schema, version and node records.

    Parameters:
        text        YAML text produced by emit_trace

    Returns:
        trace       Trace document as dict
    '''
    try:
        trace = yaml.safe_load(text)

    except yaml.YAMLError as e:
        raise FormatError(f'Trace is not valid YAML: {e}')

    if type(trace) is not dict or trace.get('schema') != TRACE_SCHEMA:
        raise FormatError(f"Trace documents need the schema '{TRACE_SCHEMA}'.")

    if trace.get('version') != TRACE_VERSION:
        raise FormatError(f"Unsupported trace version '{trace.get('version')}'.")

    nodes = trace.get('nodes')

    if type(nodes) is not list:
        raise FormatError("Trace documents need a 'nodes' list.")

    ids = set()

    for record in nodes:

        if type(record) is not dict or tuple(record.keys()) != TRACE_NODE_KEYS:
            raise FormatError(f'Malformed node record: {record}')

        if record['parent'] is not None and record['parent'] not in ids:
            raise FormatError(f"Node {record['id']} refers to unknown parent {record['parent']}.")

        ids.add(record['id'])

    return trace


def repro_bundle(violation) -> dict[str, Any]:
    '''
    Collects everything that is needed to reproduce an internal state violation: the
    failed check, the offending node and its multigraph, the root multigraph and the
    decisions that were taken so far.

    Parameters:
        violation   InternalStateViolation

    Returns:
        bundle      Repro bundle as dict
    '''
    bundle = {'schema': 'edgecolor-repro', 'version': VERSION, 'check': violation.check, 'message': violation.message}
    node = violation.node
    tree = violation.tree

    if node is not None:
        bundle['node'] = {
            'id': node.id,
            'kind': node.kind,
            'stage': node.stage,
            'mr': node.mr,
            'd': node.d_ref,
            'edge_ids': sorted(node.graph.edge_ids),
            'graph': emit_multigraph(node.graph),
        }

    if tree is not None:
        bundle['input'] = emit_multigraph(tree.original)
        bundle['root'] = emit_multigraph(tree.completion.graph)
        bundle['decisions'] = list(tree.trace)

    return bundle


def write_repro(violation, path: Path) -> Path:
    '''
    Writes the repro bundle of a violation to 'path'.
    '''
    path = Path(path)
    path.write_text(yaml.safe_dump(repro_bundle(violation), sort_keys=False))

    return path


def read_multigraph(path: Path) -> Multigraph:
    '''
    Reads a multigraph file. Parse errors carry the path.
    '''
    path = Path(path)

    try:
        return parse_multigraph(path.read_text())

    except FormatError as e:
        e.path = path
        raise e


def read_coloring(path: Path) -> EdgeColoring:
    '''
    Reads a coloring file. Parse errors carry the path.
    '''
    path = Path(path)

    try:
        return parse_coloring(path.read_text())

    except FormatError as e:
        e.path = path
        raise e
