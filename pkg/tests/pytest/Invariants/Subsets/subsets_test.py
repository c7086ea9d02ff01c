#!/usr/bin/python3

import numpy as np
import edgecolor
import pytest


petersen = edgecolor.generate('petersen')
fig2 = edgecolor.generate('fig2')
t2 = edgecolor.generate('fat-triangle', [2])


config_list = [(petersen, range(9), 3, 0, 4)]
config_list.append((petersen, range(5), 2, 1, 1))
config_list.append((t2, range(3), 4, 2, -1))
config_list.append((fig2, [0, 1, 2], 5, 1, 0))
config_list.append((fig2, [0, 1, 3], 5, -1, 2))


@pytest.mark.parametrize('g, subset, k, excess, slack', config_list)
def test_excess_and_slack(g, subset, k, excess, slack):
    '''
    Checks excess and slack of odd subsets. Their sum is always (|S| - 1) / 2.

    Parameters:
        g           Multigraph
        subset      Odd vertex set
        k           Reference degree
        excess      Expected k-excess
        slack       Expected k-slack

    Returns:
        None
    '''
    assert edgecolor.excess(g, subset, k) == excess
    assert edgecolor.slack(g, subset, k) == slack

    score = edgecolor.score(g, subset, k)

    assert score.excess == excess
    assert score.slack == slack
    assert score.excess + score.slack == (score.size - 1) // 2


def test_even_subset():
    '''
    Excess and slack are only defined for odd sets with at least three vertices.
    '''
    with pytest.raises(edgecolor.InvariantError):
        edgecolor.excess(petersen, [0, 1, 2, 3], 3)

    with pytest.raises(edgecolor.InvariantError):
        edgecolor.slack(petersen, [0], 3)

    with pytest.raises(edgecolor.InvariantError):
        edgecolor.excess(petersen, range(5), 0)


def test_subset_table():
    '''
    Table entries agree with direct counts.
    '''
    table = edgecolor.subset_table(petersen)
    mask = table.mask_of(range(5))

    assert table.members(mask) == frozenset(range(5))
    assert int(table.edges[mask]) == 5
    assert int(table.cut[mask]) == 5
    assert int(table.size[mask]) == 5
    assert int(table.degsum[table.full]) == 30
    assert int(table.edges[table.full]) == 15


def test_min_slack_overfull():
    '''
    The 2-overfull sets of the Petersen graph with minimum slack have nine vertices.
    '''
    found = edgecolor.find_min_slack_overfull(petersen, 2)

    assert found.subset == frozenset(range(9))
    assert found.slack == 0
    assert found.excess == 4

    assert edgecolor.find_min_slack_overfull(petersen, 3) is None


def test_max_excess():
    '''
    The maximum 5-excess in fig2 minus its cross matching is attained on the triangles.
    '''
    h = fig2.remove_edges([0, 2, 4])
    found = edgecolor.find_max_excess_full_or_overfull(h, 5)

    assert found.subset == frozenset({0, 1, 2})
    assert found.excess == 1
    assert found.coboundary == 3


def test_smallest_overfull():
    '''
    The smallest 2-overfull set of the Petersen graph is its outer cycle.
    '''
    found = edgecolor.find_smallest_overfull(petersen, 2)

    assert found.subset == frozenset(range(5))
    assert found.excess == 1

    inner = edgecolor.find_smallest_overfull(petersen, 2, restrict_to=range(5, 10))
    assert inner.subset == frozenset(range(5, 10))


def test_tight_subset():
    '''
    Sets with t(S) = 3 in the Petersen graph have nine vertices.
    '''
    assert edgecolor.find_tight_subset(petersen, 3).subset == frozenset(range(9))
    assert edgecolor.find_tight_subset(petersen, 3, contains=[9]).subset == frozenset(range(10)) - {8}
    assert edgecolor.find_tight_subset(petersen, 3, max_size=7) is None


def test_excess_violation():
    '''
    A 5-overfull set R of fig2 with ex(R) > (n - |R| - 1)/2.
    '''
    found = edgecolor.find_excess_violation(fig2, 5, 6)

    assert found.subset == frozenset(range(5))
    assert found.excess == 2

    assert edgecolor.find_excess_violation(fig2, 6, 6) is None


def test_slack_dominance():
    '''
    Odd sets of the Petersen graph have at least five coboundary edges, nothing can
    block the dominance.
    '''
    assert edgecolor.is_slack_dominant(petersen, 0, 3)
    assert edgecolor.slack_dominance_witness(petersen, 0, 3) is None

    with pytest.raises(edgecolor.InvariantError):
        edgecolor.is_slack_dominant(t2, 0, 3)


def test_odd_cuts():
    '''
    The Petersen graph is a 3-graph, but not a 4-graph.
    '''
    assert edgecolor.odd_cuts_at_least(petersen, 3)
    assert not edgecolor.odd_cuts_at_least(petersen, 4)


def test_subset_sizes(monkeypatch):
    '''
    The cardinality table counts the members of every mask and has room for every
    order that GF_MAX_N may allow.
    '''
    monkeypatch.setenv('GF_MAX_N', '200')
    table = edgecolor.SubsetTable(petersen)

    assert np.iinfo(table.size.dtype).max >= edgecolor.max_order()
    assert table.size.tolist() == [bin(mask).count('1') for mask in range(1 << 10)]
    assert table.cut[(1 << 10) - 1] == 0
    assert table.edges[(1 << 10) - 1] == 15
