#!/usr/bin/python3

import edgecolor
import pytest


def missing_matching(g: edgecolor.Multigraph) -> edgecolor.TutteCertificate:
    '''
    Stand-in for perfect_matching that claims a 1-factor does not exist.
    '''
    return edgecolor.TutteCertificate(frozenset(), 0)


def test_violation(monkeypatch):
    '''
    Without fallback handling, a missing 1-factor aborts the reduction.
    '''
    monkeypatch.setattr(edgecolor.reduction, 'perfect_matching', missing_matching)

    with pytest.raises(edgecolor.InternalStateViolation) as e:
        edgecolor.reduce(edgecolor.generate('petersen'))

    assert e.value.check == 'one-factor-exists'
    assert e.value.node.id == 0
    assert e.value.tree is not None


def test_fallback_leaf(monkeypatch):
    '''
    With fallback handling, the violating node becomes an FB leaf that is colored by the
    exact oracle.
    '''
    monkeypatch.setattr(edgecolor.reduction, 'perfect_matching', missing_matching)

    settings = edgecolor.Settings(fallback=True)
    result = edgecolor.color_multigraph(edgecolor.generate('petersen'), settings)
    tree = result.tree

    root = tree.nodes[tree.root]

    assert root.halting == 'FB'
    assert root.children == []
    assert root.violation.startswith('one-factor-exists')
    assert len(tree.violations) == 1
    assert result.coloring.colors_used == 4

    report = edgecolor.verify_tree(tree)

    assert report.fallback == [0]
    assert not report.ok


def test_repro_bundle(monkeypatch):
    '''
    Repro bundles contain the failed check, the node and the decisions.
    '''
    monkeypatch.setattr(edgecolor.reduction, 'perfect_matching', missing_matching)

    with pytest.raises(edgecolor.InternalStateViolation) as e:
        edgecolor.reduce(edgecolor.generate('petersen'))

    bundle = edgecolor.repro_bundle(e.value)

    assert bundle['check'] == 'one-factor-exists'
    assert bundle['node']['id'] == 0
    assert bundle['node']['edge_ids'] == list(range(15))
    assert edgecolor.parse_multigraph(bundle['node']['graph']) == edgecolor.generate('petersen')
    assert bundle['decisions'] == []


def test_write_repro(monkeypatch, tmp_path):
    '''
    Repro bundles are written as YAML.
    '''
    monkeypatch.setattr(edgecolor.reduction, 'perfect_matching', missing_matching)

    with pytest.raises(edgecolor.InternalStateViolation) as e:
        edgecolor.reduce(edgecolor.generate('petersen'))

    path = edgecolor.write_repro(e.value, tmp_path / 'repro.yml')
    text = path.read_text()

    assert 'check: one-factor-exists' in text
    assert 'schema: edgecolor-repro' in text


def second_stage_node(g: edgecolor.Multigraph) -> tuple[edgecolor.Reducer, edgecolor.DecompNode]:
    '''
    Creates a reducer whose root node already is in the second stage with d = phi(g).
    '''
    completion = edgecolor.rgraph_complete(g, edgecolor.phi(g), start=g.next_edge_id())
    tree = edgecolor.DecompTree(g, completion)
    node = tree.add_node(None, completion.graph, 'root', mr=0, stage=2, phase='iterate', d_ref=completion.graph.delta)

    return edgecolor.Reducer(tree), node


def test_matching_step():
    '''
    With ex(H-s, d) below n/4, the matching step removes a 1-factor and lowers d.
    '''
    reducer, node = second_stage_node(edgecolor.generate('petersen'))
    outcome = reducer.matching_step(node, 0, 3)

    assert outcome.kind == 'removed'
    assert node.step == 'one-factor'
    assert outcome.children[0].d_ref == 2
    assert outcome.children[0].graph.e == 10


def test_matching_hypothesis(monkeypatch):
    '''
    A matching step whose excess hypothesis fails raises an InternalStateViolation
    instead of removing a matching.
    '''
    monkeypatch.setattr(edgecolor.reduction, 'excess', lambda h, vertices, d: h.n)
    reducer, node = second_stage_node(edgecolor.generate('petersen'))

    with pytest.raises(edgecolor.InternalStateViolation) as e:
        reducer.matching_step(node, 0, 3)

    assert e.value.check == 'matching-hypothesis'
    assert e.value.node is node
    assert node.children == []

    bundle = edgecolor.repro_bundle(e.value)

    assert bundle['check'] == 'matching-hypothesis'
    assert bundle['node']['id'] == 0
