#!/usr/bin/python3

import io
import edgecolor
import pytest

from pathlib import Path


def test_from_file():
    '''
    Instances are created from named families and multigraph files.
    '''
    corpus = edgecolor.Corpus.from_file(edgecolor.fixture('corpus.yml'))

    assert corpus.title == 'Fixture corpus'
    assert corpus.oracle == 40
    assert corpus.jobs == 1
    assert [instance.name for instance in corpus.instances] == ['fat-triangle-1', 'fat-triangle-2', 'shannon-5',
                                                                'petersen', 'fig2']
    assert [instance.index for instance in corpus.instances] == [0, 1, 2, 3, 4]

    instance = corpus.instances[4]

    assert instance.family == 'file'
    assert instance.file == edgecolor.fixture('fig2.txt')
    assert instance.build() == edgecolor.generate('fig2')


def test_run_corpus():
    '''
    All fixture instances pass.
    '''
    corpus = edgecolor.Corpus.from_file(edgecolor.fixture('corpus.yml'))
    rows = edgecolor.run_corpus(corpus)

    assert [row.status for row in rows] == ['pass'] * 5
    assert [row.colors for row in rows] == [3, 6, 7, 4, 7]
    assert [row.oracle for row in rows] == [3, 6, 7, 4, 6]
    assert [row.phi for row in rows] == [3, 6, 7, 3, 6]
    assert [row.bound for row in rows] == [3, 6, 7, 5, 7]
    assert [row.gamma for row in rows] == ['3', '6', '7', '3', '6']
    assert all(row.strong_conjecture == 'yes' for row in rows)
    assert rows[3].bound_value == '5.709511'


def test_parallel_run():
    '''
    Process pools return the rows in instance order.
    '''
    corpus = edgecolor.Corpus.from_file(edgecolor.fixture('corpus.yml'))
    rows = edgecolor.run_corpus(corpus, jobs=2)

    assert [row.index for row in rows] == [0, 1, 2, 3, 4]
    assert all(row.passed for row in rows)


def test_corrupt_instance():
    '''
    Corrupted colorings are reported as failures.
    '''
    corpus = edgecolor.Corpus.from_file(edgecolor.fixture('corrupt-corpus.yml'))
    rows = edgecolor.run_corpus(corpus)

    assert rows[0].status == 'pass'
    assert rows[1].status == 'fail'
    assert 'coloring is not proper' in rows[1].problems
    assert rows[1].bound == '-'


def test_empty_corpus():
    '''
    Empty corpus specifications produce no rows.
    '''
    corpus = edgecolor.Corpus.from_file(edgecolor.fixture('empty-corpus.yml'))

    assert corpus.instances == []
    assert edgecolor.run_corpus(corpus) == []
    assert edgecolor.Corpus.from_dict(None).instances == []


def test_seeds():
    '''
    Seed ranges and seed lists expand into one instance per seed.
    '''
    spec = {'corpus': {'title': 'Seeds'},
            'instances': [{'family': 'random', 'params': {'n': 5, 'maxmult': 2, 'p': 0.5}, 'seeds': {'start': 3, 'count': 2}},
                          {'family': 'random', 'params': [4, 1, 0.5], 'seeds': [11, 12, 13]},
                          {'family': 'petersen', 'name': 'P', 'seed': 5}]}

    corpus = edgecolor.Corpus.from_dict(spec)

    assert [instance.seed for instance in corpus.instances] == [3, 4, 11, 12, 13, 5]
    assert [instance.index for instance in corpus.instances] == [0, 1, 2, 3, 4, 5]
    assert corpus.instances[0].name == 'random-5-2-0.5'
    assert corpus.instances[5].name == 'P'


config_list = [({'instances': []}, None)]
config_list.append(({'corpus': {'description': 'no title'}, 'instances': []}, None))
config_list.append(({'corpus': {'title': 'T', 'jobs': 'two'}, 'instances': []}, None))
config_list.append(({'corpus': {'title': 'T'}, 'instances': {'family': 'petersen'}}, None))
config_list.append(({'corpus': {'title': 'T'}, 'instances': [{'params': {'k': 1}}]}, 1))
config_list.append(({'corpus': {'title': 'T'}, 'instances': [{'family': 'petersen'}, {'family': 'fig2', 'seed': 'x'}]}, 2))
config_list.append(({'corpus': {'title': 'T'}, 'instances': [{'family': 'random', 'seeds': {'start': 0}}]}, 1))
config_list.append(({'corpus': {'title': 'T'}, 'instances': ['petersen']}, 1))
config_list.append(({'corpus': {'title': 'T'}, 'instances': [{'family': 'petersen', 'corrupt': 'yes'}]}, 1))


@pytest.mark.parametrize('spec, number', config_list)
def test_invalid_corpus(spec, number):
    '''
    Missing keys and values of the wrong type raise a CorpusKeyError that names the
    offending instance.

    Parameters:
        spec        Corpus specification
        number      Expected instance number (1-based) or None

    Returns:
        None
    '''
    with pytest.raises(edgecolor.CorpusKeyError) as e:
        edgecolor.Corpus.from_dict(spec)

    assert e.value.number == number

    if number is not None:
        assert edgecolor.make_ordinal(number) in str(e.value)


def test_write_csv():
    '''
    The CSV output starts with the header line and contains one line per row.
    '''
    corpus = edgecolor.Corpus.from_dict({'corpus': {'title': 'T'}, 'instances': [{'family': 'fat-triangle', 'params': [1]}]})
    rows = edgecolor.run_corpus(corpus)

    stream = io.StringIO()
    edgecolor.write_csv(rows, stream)
    lines = stream.getvalue().splitlines()

    assert lines[0] == ','.join(edgecolor.CSV_COLUMNS)
    assert lines[1].startswith('0,fat-triangle-1,fat-triangle,0,3,3,2,3,3,3,3,3,')
    assert lines[1].endswith(',yes,yes,pass')
    assert len(lines) == 2


def test_corrupt_coloring():
    '''
    The corrupted coloring of a triangle has a conflict.
    '''
    g = edgecolor.generate('fat-triangle', [1])
    _, coloring = edgecolor.exact_chromatic_index(g)

    assert not edgecolor.is_proper(g, edgecolor.corrupt_coloring(g, coloring))


resources = Path(__file__).parents[4] / 'resources'

config_list = [(edgecolor.fixture('default-corpus.yml'), 58), (resources / 'default-corpus.yml', 58)]
config_list.append((resources / 'large-corpus.yml', 509))


@pytest.mark.parametrize('path, count', config_list)
def test_shipped_corpora(path, count):
    '''
    The shipped corpus specifications parse without errors.

    Parameters:
        path        Path of the corpus specification
        count       Expected number of instances

    Returns:
        None
    '''
    corpus = edgecolor.Corpus.from_file(path)

    assert len(corpus.instances) == count
    assert [instance.index for instance in corpus.instances] == list(range(count))
    assert len({(instance.name, instance.seed) for instance in corpus.instances}) == count
