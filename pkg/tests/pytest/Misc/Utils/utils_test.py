#!/usr/bin/python3

import edgecolor
import pytest


config_list = [(0, '0th'), (1, '1st'), (2, '2nd'), (3, '3rd'), (11, '11th'), (22, '22nd'), (113, '113th')]


@pytest.mark.parametrize('number, ordinal', config_list)
def test_make_ordinal(number, ordinal):
    '''
    Ordinal representation of integers.

    Parameters:
        number      Integer
        ordinal     Expected ordinal string

    Returns:
        None
    '''
    assert edgecolor.make_ordinal(number) == ordinal


def test_max_order(monkeypatch):
    '''
    GF_MAX_N overrides the default enumeration guard.
    '''
    monkeypatch.delenv('GF_MAX_N', raising=False)
    assert edgecolor.max_order() == edgecolor.DEFAULT_MAX_N

    monkeypatch.setenv('GF_MAX_N', '12')
    assert edgecolor.max_order() == 12

    monkeypatch.setenv('GF_MAX_N', ' ')
    assert edgecolor.max_order() == edgecolor.DEFAULT_MAX_N


@pytest.mark.parametrize('value', ['0', '-3', 'ten', '1.5'])
def test_invalid_max_order(monkeypatch, value):
    '''
    GF_MAX_N needs to be a positive integer.

    Parameters:
        value       Environment value

    Returns:
        None
    '''
    monkeypatch.setenv('GF_MAX_N', value)

    with pytest.raises(edgecolor.EdgecolorEnvVariableError):
        edgecolor.max_order()


def test_settings():
    '''
    Nested settings keep the options and increase the depth.
    '''
    settings = edgecolor.Settings(oracle_edges=12, fallback=True, max_depth=2)
    nested = settings.nested()

    assert nested.oracle_edges == 12
    assert nested.fallback
    assert nested.max_depth == 2
    assert nested.depth == 1
    assert settings.depth == 0


def test_validate_type():
    '''
    Type mismatches raise a CorpusKeyError, integers are accepted as floats.
    '''
    edgecolor.validate_type('p', 1, float)
    edgecolor.validate_type('k', 1, int)

    with pytest.raises(edgecolor.CorpusKeyError):
        edgecolor.validate_type('k', '1', int)

    with pytest.raises(edgecolor.CorpusKeyError):
        edgecolor.validate_type('k', 1.0, int)


def test_logger_quiet(capsys):
    '''
    Quiet mode suppresses warnings and steps, errors are still shown.
    '''
    edgecolor.Logger.set_verbosity(0)

    try:
        edgecolor.Logger.print_warning('hidden')
        edgecolor.Logger.print_step(1, 'one-factor')
        edgecolor.Logger.print_mixed_yellow('Caught', 'Error', e=True)

    finally:
        edgecolor.Logger.set_verbosity(1)

    captured = capsys.readouterr()

    assert 'hidden' not in captured.err
    assert 'one-factor' not in captured.err
    assert 'Caught' in captured.err
    assert captured.out == ''


def test_logger_steps(capsys):
    '''
    Reduction steps are only printed in verbose mode.
    '''
    edgecolor.Logger.print_step(3, 'tight-split')
    assert 'tight-split' not in capsys.readouterr().err

    edgecolor.Logger.set_verbosity(2)

    try:
        edgecolor.Logger.print_step(3, 'tight-split', 'S={0,1,2}')

    finally:
        edgecolor.Logger.set_verbosity(1)

    err = capsys.readouterr().err

    assert 'node 3:' in err
    assert 'tight-split' in err
    assert 'S={0,1,2}' in err


def test_logfile(tmp_path, capsys):
    '''
    Logfiles mirror the diagnostic output until they are removed.
    '''
    path = tmp_path / 'edgecolor.log'
    logfile = open(path, 'w')

    edgecolor.Logger.add_logfile(logfile)
    edgecolor.Logger.print_mixed_yellow('Colored', 'T2', 'with 6 colors.')
    edgecolor.Logger.remove_logfile(logfile)
    edgecolor.Logger.print_plain('not mirrored')

    content = path.read_text()

    assert 'Colored' in content
    assert 'with 6 colors.' in content
    assert 'not mirrored' not in content
    assert edgecolor.Logger.tee is None
    assert edgecolor.Logger.stream is None
    assert 'not mirrored' in capsys.readouterr().err
