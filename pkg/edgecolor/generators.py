from __future__ import annotations

import sys
import random
from typing import Any

from edgecolor.graph import Multigraph
from edgecolor.constants import DEFAULT_SEED


this = sys.modules[__name__]
this.families = {}


def register_family(family_name: str, family_class: type) -> None:
    '''
    Registers a generator class under the specified name. Registered families can be
    used on the command line ('edgecolor gen <family>') and within corpus
    specifications. The default families are registered at the end of this file.

    Parameters:
        family_name     Name of the family
        family_class    Reference to the corresponding Family class

    Returns:
        None
    '''
    this.families[family_name] = family_class


def get_family(family_name: str, params: Any = None, seed: int = DEFAULT_SEED) -> Family:
    '''
    Searches for the specified family within the registered families and creates a
    generator instance from it. Parameters can be specified as dict (corpus files) or
    as list of strings (command line), which are mapped to the parameter names of the
    family in order.

    Parameters:
        family_name     Name of the requested family
        params          Family parameters
        seed            Seed for random families

    Returns:
        family          Family instance
    '''
    family_class = this.families.get(family_name)

    if family_class is None:
        raise FamilyError(family_name, f"Unknown family '{family_name}'. Available: {', '.join(get_family_list())}")

    return family_class(family_name, params, seed)


def get_family_list() -> list[str]:
    '''
    Returns a list of currently registered family names.

    Parameters:
        None

    Returns:
        family_list     List of registered families
    '''
    return list(this.families.keys())


def generate(family_name: str, params: Any = None, seed: int = DEFAULT_SEED) -> Multigraph:
    '''
    Creates the multigraph of a family for the specified parameters and seed.
    '''
    return get_family(family_name, params, seed).generate()


class FamilyError(Exception):
    '''
    FamilyErrors are raised when an unknown family is requested or when a family is
    used with incorrect parameters.
    '''

    def __init__(self, family: str, message: str) -> None:
        super().__init__(message)
        self.family = family


class Family:
    '''
    Base class of all multigraph families. Subclasses declare their parameters in
    'parameters' as name -> {'type': type, 'min': lower bound, 'max': upper bound}
    (bounds are optional) and implement the 'generate' method. Families that use
    randomness have to draw exclusively from 'self.random', a random.Random (MT19937)
    instance seeded with the instance seed, so that every multigraph is reproducible
    across platforms.
    '''
    parameters = {}
    description = ''

    def __init__(self, name: str, params: Any, seed: int) -> None:
        '''
        Initializes the family instance.

        Parameters:
            name        Name of the family (as registered)
            params      dict or list of parameters
            seed        Seed of the random generator
        '''
        self.name = name
        self.seed = seed
        self.random = random.Random(seed)
        self.params = self.check_params(params)

    def check_params(self, params: Any) -> dict[str, Any]:
        '''
        Converts the specified parameters into a dict and validates their types and
        ranges. Strings are converted into the declared type.

        Parameters:
            params      dict, list or None

        Returns:
            params      Validated parameter dict
        '''
        if params is None:
            params = {}

        if type(params) in (list, tuple):

            if len(params) != len(self.parameters):
                raise FamilyError(self.name, f"Family '{self.name}' expects {len(self.parameters)} parameters "
                                             f"({', '.join(self.parameters)}), got {len(params)}.")

            params = dict(zip(self.parameters, params))

        if type(params) is not dict:
            raise FamilyError(self.name, f"Parameters of family '{self.name}' need to be a dict or a list.")

        unknown = set(params) - set(self.parameters)

        if unknown:
            raise FamilyError(self.name, f"Family '{self.name}' has no parameter(s) {', '.join(sorted(unknown))}.")

        checked = {}

        for key, spec in self.parameters.items():

            if key not in params:
                raise FamilyError(self.name, f"Family '{self.name}' requires the parameter '{key}'.")

            checked[key] = self.convert(key, params[key], spec)

        return checked

    def convert(self, key: str, value: Any, spec: dict[str, Any]) -> Any:
        '''
        Converts a single parameter value and checks its bounds.
        '''
        expected = spec['type']

        try:
            if type(value) is str or (expected is float and type(value) is int):
                value = expected(value)

        except ValueError:
            raise FamilyError(self.name, f"Parameter '{key}' of family '{self.name}' requires type "
                                         f"'{expected.__name__}', got '{value}'.")

        if type(value) is not expected:
            raise FamilyError(self.name, f"Parameter '{key}' of family '{self.name}' requires type "
                                         f"'{expected.__name__}'.")

        if 'min' in spec and value < spec['min'] or 'max' in spec and value > spec['max']:
            raise FamilyError(self.name, f"Parameter '{key}' of family '{self.name}' is out of range "
                                         f"[{spec.get('min', '-inf')}, {spec.get('max', 'inf')}].")

        return value

    def label(self) -> str:
        '''
        Instance name for reports, e.g. 'random-8-3-0.5'.
        '''
        return '-'.join([self.name] + [str(value) for value in self.params.values()])

    def generate(self) -> Multigraph:
        '''
        Creates the multigraph. Needs to be implemented by subclasses.
        '''
        raise NotImplementedError('Families need to implement the generate method.')


class FatTriangle(Family):
    '''
    The fat triangle T_k: three vertices, every pair joined by k parallel edges. It has
    maximum degree 2k and phi = chromatic index = 3k.
    '''
    parameters = {'k': {'type': int, 'min': 1}}
    description = 'three vertices, every pair joined by k parallel edges'

    def generate(self) -> Multigraph:
        k = self.params['k']
        return Multigraph.from_multiplicities(3, {(0, 1): k, (1, 2): k, (0, 2): k})


class Shannon(Family):
    '''
    Triangle with multiplicities floor(d/2), floor(d/2) and ceil(d/2). It has maximum
    degree d and chromatic index floor(3d/2), the extremal case of Shannon's bound.
    '''
    parameters = {'d': {'type': int, 'min': 2}}
    description = "triangle with maximum degree d and chromatic index floor(3d/2)"

    def generate(self) -> Multigraph:
        d = self.params['d']
        return Multigraph.from_multiplicities(3, {(0, 1): d // 2, (0, 2): d // 2, (1, 2): d - d // 2})


class Petersen(Family):
    '''
    The Petersen graph: outer 5-cycle 0..4, spokes i - i+5 and inner pentagram.
    '''
    parameters = {}
    description = 'the Petersen graph (phi = 3, chromatic index 4)'

    def generate(self) -> Multigraph:
        pairs = [(i, (i + 1) % 5) for i in range(5)]
        pairs += [(i, i + 5) for i in range(5)]
        pairs += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]

        return Multigraph.from_pairs(10, pairs)


class DoubledPrism(Family):
    '''
    Two doubled triangles a, b, c (0, 1, 2) and d, e, f (3, 4, 5) joined by the doubled
    perfect matching a-d, b-e, c-f. The multigraph is 6-regular with n = phi = 6. The
    matching edges come first, which makes the cross matching the canonical perfect
    matching of the multigraph.
    '''
    parameters = {}
    description = 'two doubled triangles joined by a doubled perfect matching (n = delta = phi = 6)'

    def generate(self) -> Multigraph:
        pairs = [(0, 3), (0, 3), (1, 4), (1, 4), (2, 5), (2, 5)]

        for triangle in ((0, 1, 2), (3, 4, 5)):
            a, b, c = triangle
            pairs += [(a, b), (a, b), (b, c), (b, c), (a, c), (a, c)]

        return Multigraph.from_pairs(6, pairs)


class RandomMultigraph(Family):
    '''
    Random multigraph on n vertices. Every pair u < v (in lexicographic order) receives
    a multiplicity drawn as the number of successes in 'maxmult' independent trials
    with success probability p.
    '''
    parameters = {
        'n': {'type': int, 'min': 1},
        'maxmult': {'type': int, 'min': 0},
        'p': {'type': float, 'min': 0.0, 'max': 1.0},
    }
    description = 'n vertices, pair multiplicities ~ Binomial(maxmult, p)'

    def generate(self) -> Multigraph:
        n = self.params['n']
        multiplicities = {}

        for u in range(n):
            for v in range(u + 1, n):
                mult = sum(1 for _ in range(self.params['maxmult']) if self.random.random() < self.params['p'])

                if mult > 0:
                    multiplicities[(u, v)] = mult

        return Multigraph.from_multiplicities(n, multiplicities)


register_family('fat-triangle', FatTriangle)
register_family('petersen', Petersen)
register_family('fig2', DoubledPrism)
register_family('random', RandomMultigraph)
register_family('shannon', Shannon)
