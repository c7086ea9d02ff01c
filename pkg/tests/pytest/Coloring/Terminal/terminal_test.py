#!/usr/bin/python3

import edgecolor
import pytest


cycle5 = edgecolor.Multigraph.from_pairs(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
path = edgecolor.Multigraph.from_pairs(4, [(0, 1), (1, 2), (2, 3)])
digon = edgecolor.Multigraph.from_pairs(3, [(0, 1), (1, 0)])
k4 = edgecolor.Multigraph.from_pairs(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


config_list = [(cycle5, 3)]
config_list.append((path, 2))
config_list.append((digon, 2))
config_list.append((edgecolor.Multigraph.from_pairs(4, [(0, 1), (2, 3)]), 1))


@pytest.mark.parametrize('h, colors', config_list)
def test_paths_and_cycles(h, colors):
    '''
    Paths and cycles are colored with phi colors.

    Parameters:
        h           Multigraph with maximum degree at most 2
        colors      Expected number of colors

    Returns:
        None
    '''
    coloring = edgecolor.color_paths_and_cycles(h)

    assert edgecolor.is_proper(h, coloring)
    assert coloring.colors_used == colors == edgecolor.phi(h)


def test_maximal_matchings():
    '''
    All maximal matchings of K4 that cover every vertex are perfect.
    '''
    matchings = list(edgecolor.maximal_matchings(k4, frozenset(range(4))))

    assert len(matchings) == 3
    assert all(matching.perfect for matching in matchings)

    matchings = list(edgecolor.maximal_matchings(path, frozenset()))
    assert sorted(sorted(matching.edge_ids) for matching in matchings) == [[0, 2], [1]]


def test_peel_matchings():
    '''
    Every peeled matching lowers phi by one.
    '''
    matchings, remainder = edgecolor.peel_matchings(k4, 1)

    assert len(matchings) == 1
    assert remainder.e == 4
    assert edgecolor.phi(remainder) == 2

    with pytest.raises(edgecolor.ColoringError):
        edgecolor.peel_matchings(k4, 4)


def test_color_by_peeling():
    '''
    K4 and the doubled K4 are colored with phi colors.
    '''
    coloring = edgecolor.color_by_peeling(k4)

    assert coloring.colors_used == 3
    assert edgecolor.is_proper(k4, coloring)

    doubled = edgecolor.rgraph_complete(edgecolor.generate('fat-triangle', [2]), 6).graph
    coloring = edgecolor.color_by_peeling(doubled)

    assert coloring.colors_used == 6
    assert edgecolor.is_proper(doubled, coloring)


config_list = [(cycle5, '1A', 3)]
config_list.append((k4, '1A', 3))
config_list.append((k4, '2A', 3))
config_list.append((edgecolor.generate('petersen'), 'FB', 4))
config_list.append((edgecolor.generate('shannon', [5]), '2C', 7))
config_list.append((edgecolor.Multigraph(4), '1A', 0))


@pytest.mark.parametrize('h, tag, colors', config_list)
def test_color_terminal(h, tag, colors):
    '''
    Leaves are colored with phi colors (1A, 2A) or by the exact oracle.

    Parameters:
        h           Leaf multigraph
        tag         Halting tag
        colors      Expected number of colors

    Returns:
        None
    '''
    coloring = edgecolor.color_terminal(h, tag)

    assert edgecolor.is_proper(h, coloring)
    assert coloring.colors_used == colors


def test_nested_pipeline():
    '''
    Leaves beyond the oracle limit are colored by a nested pipeline run, as long as the
    nesting depth allows it.
    '''
    g = edgecolor.generate('fat-triangle', [2])

    with pytest.raises(edgecolor.OracleLimitError):
        edgecolor.color_terminal(g, 'FB', edgecolor.Settings(oracle_edges=5, max_depth=0))

    coloring = edgecolor.color_terminal(g, 'FB', edgecolor.Settings(oracle_edges=5, max_depth=1))

    assert edgecolor.is_proper(g, coloring)
    assert coloring.colors_used == 6
