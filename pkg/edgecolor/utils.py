from __future__ import annotations

import os
from typing import Any
from pathlib import Path

import edgecolor
from edgecolor.constants import DEFAULT_MAX_N, DEFAULT_ORACLE_EDGES, MAX_RECURSION


class EdgecolorEnvVariableError(Exception):
    '''
    An EdgecolorEnvVariableError is raised, when an environment variable that configures
    edgecolor contains a value that cannot be used.
    '''


def max_order() -> int:
    '''
    Returns the largest vertex count that exhaustive subset searches are allowed to handle.
    The value is taken from the GF_MAX_N environment variable when present and falls back
    to the compiled in default otherwise.

    Parameters:
        None

    Returns:
        max_n       Maximum number of vertices for subset enumeration
    '''
    value = os.environ.get('GF_MAX_N')

    if value is None or value.strip() == '':
        return DEFAULT_MAX_N

    try:
        max_n = int(value)

    except ValueError:
        raise EdgecolorEnvVariableError(f"GF_MAX_N needs to be a positive integer, got '{value}'.")

    if max_n < 1:
        raise EdgecolorEnvVariableError(f"GF_MAX_N needs to be a positive integer, got '{value}'.")

    return max_n


class Settings:
    '''
    Per run options of the coloring pipeline. A Settings object is created once (usually by
    the command line interface) and passed down explicitly. Recursive pipeline runs on leaf
    multigraphs use a copy with an increased depth.
    '''

    def __init__(self, oracle_edges: int = DEFAULT_ORACLE_EDGES, fallback: bool = False,
                 max_depth: int = MAX_RECURSION, depth: int = 0) -> None:
        '''
        Initializes the Settings object.

        Parameters:
            oracle_edges    Edge limit for the exact chromatic index oracle
            fallback        Turn internal-state violations into fallback leaves
            max_depth       Maximum nesting of pipeline runs on leaf multigraphs
            depth           Current nesting level

        Returns:
            None
        '''
        self.oracle_edges = oracle_edges
        self.fallback = fallback
        self.max_depth = max_depth
        self.depth = depth

    def nested(self) -> Settings:
        '''
        Returns a copy of the current settings for a pipeline run one level deeper.
        '''
        return Settings(self.oracle_edges, self.fallback, self.max_depth, self.depth + 1)


def make_ordinal(n: int) -> str:
    '''
    Convert an integer into its ordinal representation. Used for pretty printing and copied
    from: https://stackoverflow.com/questions/9647202/ordinal-numbers-replacement

        make_ordinal(0)   => '0th'
        make_ordinal(3)   => '3rd'
        make_ordinal(122) => '122nd'
        make_ordinal(213) => '213th'
    '''
    n = int(n)
    suffix = ['th', 'st', 'nd', 'rd', 'th'][min(n % 10, 4)]
    if 11 <= (n % 100) <= 13:
        suffix = 'th'
    return str(n) + suffix


def check_keys(expected_keys: list[str], yaml_dict: dict, what: str) -> None:
    '''
    Checks for unexpected keys within a YAML definition and prints a warning if one is
    encountered. Misspelled keys are otherwise silently ignored, which usually leads to
    surprising corpus runs.

    Parameters:
        expected_keys   List of keys that are expected to appear
        yaml_dict       Python dictionary that represents the YAML section
        what            Human readable name of the section

    Returns:
        None
    '''
    for key in yaml_dict.keys():
        if key not in expected_keys:
            edgecolor.Logger.print_yellow('Warning:', end=' ')
            edgecolor.Logger.print_mixed_blue_plain(what, 'contains unexpected key', end=': ')
            edgecolor.Logger.print_yellow_plain(key)


def validate_type(name: str, value: Any, expected_type: Any, path: Path = None) -> None:
    '''
    Validates that the input parameter 'value' has a type of 'expected_type'.
    If not, a corresponding exception is raised that contains the 'name' of the
    parameter and it's expected type. Integers are accepted where floats are expected.

    Parameters:
        name            Name of the parameter
        value           Value of the parameter
        expected_type   Expected type of the parameter
        path            Optional path to a configuration file

    Returns:
        None
    '''
    if expected_type is float and type(value) is int:
        return

    if type(value) is not expected_type:
        raise edgecolor.CorpusKeyError(name, path, f"The '{name}' attribute requires type '{expected_type.__name__}'.")
