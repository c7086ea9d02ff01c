#!/usr/bin/python3

import edgecolor
import pytest


config_list = [('petersen', frozenset({0, 2, 9, 10, 11}))]
config_list.append(('fig2', frozenset({0, 2, 4})))


@pytest.mark.parametrize('family, edge_ids', config_list)
def test_perfect_matching(family, edge_ids):
    '''
    The perfect matching with the lexicographically smallest id sequence is returned.

    Parameters:
        family      Name of the family
        edge_ids    Expected matching

    Returns:
        None
    '''
    g = edgecolor.generate(family)
    matching = edgecolor.perfect_matching(g)

    assert matching.edge_ids == edge_ids
    assert matching.perfect
    assert len(matching) == g.n // 2


def test_petersen_remainder():
    '''
    Removing the canonical 1-factor of the Petersen graph leaves two 5-cycles.
    '''
    g = edgecolor.generate('petersen')
    h = g.remove_edges(edgecolor.perfect_matching(g).edge_ids)

    assert h.degrees == (2,) * 10
    assert edgecolor.coboundary(h, [0, 3, 4, 5, 8]) == frozenset()
    assert edgecolor.phi(h) == 3


def test_odd_order():
    '''
    Perfect matchings are only defined for even order.
    '''
    with pytest.raises(edgecolor.MatchingError):
        edgecolor.perfect_matching(edgecolor.generate('fat-triangle', [2]))


def test_maximum_matching():
    '''
    Parallel edges are mapped back to their lowest id.
    '''
    g = edgecolor.Multigraph.from_pairs(3, [(0, 1), (0, 1), (1, 2)])
    matching = edgecolor.maximum_matching(g)

    assert len(matching) == 1
    assert len(matching.uncovered) == 1
    assert matching.edge_ids <= frozenset({0, 2})

    matching = edgecolor.maximum_matching(g, removed=[2])

    assert matching.edge_ids == frozenset({0})
    assert matching.uncovered == frozenset()


def test_near_perfect_matching():
    '''
    The near-perfect matching misses the isolated vertex and the selected partner.
    '''
    g = edgecolor.Multigraph.from_pairs(4, [(0, 1), (1, 2), (0, 2)])

    assert edgecolor.select_v(g, 3, 2) == 0

    matching = edgecolor.near_perfect_matching(g, 3)

    assert matching.edge_ids == frozenset({1})
    assert matching.uncovered == frozenset({0, 3})


def test_select_v():
    '''
    Degree d vertices next to a degree d+1 vertex are preferred.
    '''
    g = edgecolor.Multigraph.from_pairs(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 2)])

    assert g.degrees == (1, 2, 3, 2, 2, 0)
    assert edgecolor.select_v(g, 5, 2) == 1
    assert edgecolor.select_v(g, 5, 1) == 0

    with pytest.raises(edgecolor.MatchingError):
        edgecolor.select_v(g, 1, 2)

    with pytest.raises(edgecolor.MatchingError):
        edgecolor.select_v(g, 5, 4)


def test_validate_matching():
    '''
    Shared endpoints, unknown edges and wrong coverage are rejected.
    '''
    g = edgecolor.generate('fat-triangle', [1])
    edgecolor.validate_matching(g, edgecolor.Matching(frozenset({0}), frozenset({2})))

    with pytest.raises(edgecolor.MatchingError):
        edgecolor.validate_matching(g, edgecolor.Matching(frozenset({0, 1}), frozenset()))

    with pytest.raises(edgecolor.MatchingError):
        edgecolor.validate_matching(g, edgecolor.Matching(frozenset({7}), frozenset()))

    with pytest.raises(edgecolor.MatchingError):
        edgecolor.validate_matching(g, edgecolor.Matching(frozenset({0}), frozenset()))
