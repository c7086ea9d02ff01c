from __future__ import annotations

import csv
import math
import typing
import multiprocessing as mp
from typing import Any
from pathlib import Path
from functools import partial
from dataclasses import dataclass, field

import yaml

import edgecolor.utils
from edgecolor.graph import Multigraph
from edgecolor.invariants import gamma, phi
from edgecolor.coloring import EdgeColoring, color_multigraph, exact_chromatic_index, certify, is_proper
from edgecolor.reduction import InternalStateViolation, verify_tree
from edgecolor.formats import read_multigraph
from edgecolor.generators import get_family
from edgecolor.constants import DEFAULT_SEED
from edgecolor.logging import Logger
from edgecolor.utils import Settings


CSV_COLUMNS = ('index', 'name', 'family', 'seed', 'n', 'e', 'delta', 'gamma', 'phi', 'colors', 'oracle', 'bound',
               'bound_value', 'strong_conjecture', 'weak_conjecture', 'status')

CORPUS_KEYS = ('title', 'description', 'oracle', 'jobs')
INSTANCE_KEYS = ('name', 'family', 'params', 'seed', 'seeds', 'file', 'corrupt')


class CorpusKeyError(Exception):
    '''
    CorpusKeyErrors are raised when a corpus specification misses required keys or
    contains values of the wrong type.
    '''

    def __init__(self, key: str, path: Path = None, message: str = None) -> None:
        '''
        Parameters:
            key         Name of the offending key
            path        Path of the corpus specification
            message     Optional custom message
        '''
        if message:
            self.message = message

        else:
            self.message = f"Corpus specification misses required key '{key}'"

        self.key = key
        self.path = None if path is None else str(Path(path).resolve())
        self.number = None

        super().__init__(self.message)

    def add_number(self, ctr: int) -> None:
        '''
        Adds the position of the offending instance within the 'instances' list.
        '''
        self.number = ctr

    def __str__(self) -> str:

        if self.number:
            return f'{self.message} ({edgecolor.utils.make_ordinal(self.number)} instance).'

        return self.message


@dataclass(frozen=True)
class Instance:
    '''
    A single corpus instance: either a family with parameters and seed or a multigraph
    file. 'corrupt' breaks the pipeline coloring on purpose.
    '''
    index: int
    name: str
    family: str
    params: Any = None
    seed: int = DEFAULT_SEED
    file: Path | None = None
    corrupt: bool = False

    def build(self) -> Multigraph:
        '''
        Creates the multigraph of the instance.
        '''
        if self.file is not None:
            return read_multigraph(self.file)

        return get_family(self.family, self.params, self.seed).generate()

    def from_dict(path: Path, input_dict: dict, index: int) -> list[Instance]:
        '''
        Creates the instances of a single entry of the 'instances' list. Entries with a
        'seeds' key expand into one instance per seed.

        Parameters:
            path            Path of the corpus specification
            input_dict      Entry as read from the YAML file
            index           Index of the first created instance

        Returns:
            instances       List of Instance objects
        '''
        if type(input_dict) is not dict:
            raise CorpusKeyError(None, path, 'Instances need to be specified as dictionaries')

        edgecolor.utils.check_keys(INSTANCE_KEYS, input_dict, 'Instance definition')

        file = input_dict.get('file')
        family = input_dict.get('family')
        corrupt = input_dict.get('corrupt', False)

        edgecolor.utils.validate_type('corrupt', corrupt, bool, path)

        if file is not None:
            edgecolor.utils.validate_type('file', file, str, path)
            name = input_dict.get('name', Path(file).stem)

            return [Instance(index, name, 'file', file=Path(path).parent / file, corrupt=corrupt)]

        if family is None:
            raise CorpusKeyError('family', path, "Instances require either the 'family' or the 'file' key")

        edgecolor.utils.validate_type('family', family, str, path)
        params = input_dict.get('params', {})

        if type(params) not in (dict, list):
            raise CorpusKeyError('params', path, "The 'params' attribute requires type 'dict' or 'list'")

        instances = []

        for seed in Instance.expand_seeds(path, input_dict):
            label = input_dict.get('name') or get_family(family, params, seed).label()
            instances.append(Instance(index + len(instances), label, family, params, seed, corrupt=corrupt))

        return instances

    def expand_seeds(path: Path, input_dict: dict) -> list[int]:
        '''
        Resolves the 'seed' / 'seeds' keys of an instance entry into a list of seeds.
        'seeds' can be a list or a dict with 'start' and 'count'.
        '''
        if 'seeds' in input_dict:
            seeds = input_dict['seeds']

            if type(seeds) is dict:
                start = seeds.get('start', 0)
                count = seeds.get('count')

                if count is None:
                    raise CorpusKeyError('count', path, "The 'seeds' dictionary requires the 'count' key")

                edgecolor.utils.validate_type('start', start, int, path)
                edgecolor.utils.validate_type('count', count, int, path)

                return list(range(start, start + count))

            edgecolor.utils.validate_type('seeds', seeds, list, path)

            for seed in seeds:
                edgecolor.utils.validate_type('seeds', seed, int, path)

            return seeds

        seed = input_dict.get('seed', DEFAULT_SEED)
        edgecolor.utils.validate_type('seed', seed, int, path)

        return [seed]


@dataclass
class Corpus:
    '''
    A corpus specification: a header and a list of instances.

        corpus:
          title: Default corpus
          oracle: 40
          jobs: 1

        instances:
          - family: fat-triangle
            params: {k: 2}

          - family: random
            params: {n: 8, maxmult: 3, p: 0.5}
            seeds: {start: 0, count: 20}

          - file: petersen.txt
    '''
    title: str
    description: str = ''
    oracle: int | None = None
    jobs: int = 1
    instances: list[Instance] = field(default_factory=list)
    path: Path | None = None

    def from_dict(input_dict: dict | None, path: Path = None) -> Corpus:
        '''
        Creates a Corpus from a parsed YAML document. An empty document is an empty
        corpus.

        Parameters:
            input_dict      Parsed YAML document
            path            Path of the specification

        Returns:
            corpus          Corpus object
        '''
        path = Path(path) if path is not None else Path('.') / 'corpus.yml'

        if input_dict is None:
            return Corpus('', path=path)

        if type(input_dict) is not dict:
            raise CorpusKeyError(None, path, 'Corpus specifications need to be a dictionary')

        edgecolor.utils.check_keys(['corpus', 'instances'], input_dict, 'Corpus specification')
        header = input_dict.get('corpus')

        if type(header) is not dict:
            raise CorpusKeyError('corpus', path)

        edgecolor.utils.check_keys(CORPUS_KEYS, header, "Section 'corpus'")

        title = header.get('title')

        if title is None:
            raise CorpusKeyError('title', path, "Corpus specification misses required key 'title' in the 'corpus' section")

        oracle = header.get('oracle')
        jobs = header.get('jobs', 1)

        edgecolor.utils.validate_type('title', title, str, path)
        edgecolor.utils.validate_type('jobs', jobs, int, path)

        if oracle is not None:
            edgecolor.utils.validate_type('oracle', oracle, int, path)

        entries = input_dict.get('instances') or []

        if type(entries) is not list:
            raise CorpusKeyError('instances', path, "The 'instances' attribute requires type 'list'")

        instances = []

        for ctr, entry in enumerate(entries):

            try:
                instances += Instance.from_dict(path, entry, len(instances))

            except CorpusKeyError as e:
                e.add_number(ctr + 1)
                raise e

        return Corpus(title, header.get('description', ''), oracle, jobs, instances, path)

    def from_file(path: Path) -> Corpus:
        '''
        Reads a corpus specification from a YAML file.
        '''
        path = Path(path)

        with open(path, 'r') as f:
            input_dict = yaml.safe_load(f.read())

        return Corpus.from_dict(input_dict, path)


@dataclass(frozen=True)
class CorpusRow:
    '''
    Result of a single corpus instance. Columns that do not apply are '-'.
    '''
    index: int
    name: str
    family: str
    seed: Any
    n: int
    e: int
    delta: int
    gamma: str
    phi: int
    colors: int
    oracle: Any
    bound: int
    bound_value: str
    strong_conjecture: str
    weak_conjecture: str
    status: str
    problems: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.status == 'pass'

    def values(self) -> list[Any]:
        return [getattr(self, column) for column in CSV_COLUMNS]


def corrupt_coloring(g: Multigraph, c: EdgeColoring) -> EdgeColoring:
    '''
    Breaks a coloring on purpose: two edges at the first vertex of degree two or more
    get the same color. Without such a vertex the first edge loses its color.
    '''
    assignment = dict(c.assignment)

    for v in range(g.n):
        if len(g.incidence[v]) >= 2:
            first, second = g.incidence[v][:2]
            assignment[second.id] = assignment[first.id]
            return EdgeColoring(assignment)

    if assignment:
        del assignment[min(assignment)]

    else:
        assignment[-1] = 0

    return EdgeColoring(assignment)


def conjecture_columns(g: Multigraph, index: int) -> tuple[str, str]:
    '''
    Compares an exact chromatic index with max{delta + 1, ceil(Gamma)} and with
    1 + max{delta, ceil(Gamma)}.
    '''
    rounded = g.delta if g.n < 3 else math.ceil(gamma(g)[0])

    strong = 'yes' if index <= max(g.delta + 1, rounded) else 'no'
    weak = 'yes' if index <= 1 + max(g.delta, rounded) else 'no'

    return strong, weak


def run_instance(instance: Instance, settings: Settings = None, oracle_limit: int = None) -> CorpusRow:
    '''
    Colors a single corpus instance and checks the result: the coloring is proper, it
    satisfies the logarithmic bound, the decomposition tree passes verify_tree and the
    exact chromatic index (when within the oracle limit) lies between phi and the
    number of colors used.

    Parameters:
        instance        Corpus instance
        settings        Pipeline settings
        oracle_limit    Edge limit for the oracle column

    Returns:
        row             CorpusRow
    '''
    settings = settings or Settings()
    oracle_limit = settings.oracle_edges if oracle_limit is None else oracle_limit

    g = instance.build()
    phi_value = phi(g)
    gamma_value = '-' if g.n < 3 else str(gamma(g)[0])
    problems = []

    try:
        result = color_multigraph(g, settings)

    except InternalStateViolation as e:
        return CorpusRow(instance.index, instance.name, instance.family, instance.seed, g.n, g.e, g.delta,
                         gamma_value, phi_value, '-', '-', '-', '-', '-', '-', 'violation', (str(e),))

    coloring = result.coloring

    if instance.corrupt:
        coloring = corrupt_coloring(g, coloring)

    if not is_proper(g, coloring):
        certificate = None
        problems.append('coloring is not proper')

    else:
        certificate = certify(g, coloring)

        if not certificate.satisfied:
            problems.append(f'{coloring.colors_used} colors exceed the bound {certificate.bound}')

        if certificate.satisfied != certificate.float_satisfied:
            problems.append('exact and floating point bound checks disagree')

    fallback = []

    if result.tree is not None:
        report = verify_tree(result.tree)
        problems += report.failures
        fallback = report.fallback

    oracle, strong, weak = '-', '-', '-'

    if g.e <= oracle_limit:
        oracle, _ = exact_chromatic_index(g, oracle_limit)
        strong, weak = conjecture_columns(g, oracle)

        if not phi_value <= oracle <= coloring.colors_used:
            problems.append(f'oracle index {oracle} is not between phi {phi_value} and {coloring.colors_used} colors')

    status = 'fail' if problems else 'fallback' if fallback else 'pass'

    bound = '-' if certificate is None else certificate.bound
    bound_value = '-' if certificate is None else f'{certificate.bound_value:.6f}'

    return CorpusRow(instance.index, instance.name, instance.family, instance.seed, g.n, g.e, g.delta, gamma_value,
                     phi_value, coloring.colors_used, oracle, bound, bound_value, strong, weak, status, tuple(problems))


def run_corpus(corpus: Corpus, settings: Settings = None, jobs: int = None) -> list[CorpusRow]:
    '''
    Runs all instances of a corpus. With more than one job the instances are distributed
    over a process pool; rows are always returned in instance order.

    Parameters:
        corpus          Corpus to run
        settings        Pipeline settings
        jobs            Number of worker processes (defaults to the corpus setting)

    Returns:
        rows            One CorpusRow per instance
    '''
    settings = settings or Settings()
    jobs = corpus.jobs if jobs is None else jobs
    worker = partial(run_instance, settings=settings, oracle_limit=corpus.oracle)

    if jobs > 1 and len(corpus.instances) > 1:
        with mp.Pool(jobs) as pool:
            rows = pool.map(worker, corpus.instances)

    else:
        rows = [worker(instance) for instance in corpus.instances]

    for row in rows:

        if not row.passed:
            Logger.print_mixed_red('Instance', row.name, f'({row.status}):', '; '.join(row.problems), e=True)

    return rows


def write_csv(rows: list[CorpusRow], stream: typing.TextIO) -> None:
    '''
    Writes the corpus rows as CSV including the header line.
    '''
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(CSV_COLUMNS)

    for row in rows:
        writer.writerow(row.values())
