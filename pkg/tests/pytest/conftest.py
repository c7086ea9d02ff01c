import sys
import edgecolor

from pathlib import Path


fixtures = Path(__file__).parent.parent / 'fixtures'


def resolve(base: str, filename: str) -> Path:
    '''
    Resolve the specified filename to the directory specified in base.

    Parameters:
        base        base directory to resolve to
        filename    filename inside base

    Returns:
        path        Path object of the resolved file
    '''
    return Path(base).parent.joinpath(filename)


def fixture(filename: str) -> Path:
    '''
    Returns the path of a file within the tests/fixtures directory.

    Parameters:
        filename    filename inside the fixtures directory

    Returns:
        path        Path object of the fixture
    '''
    return fixtures / filename


def load(filename: str) -> edgecolor.Multigraph:
    '''
    Reads a multigraph fixture.

    Parameters:
        filename    filename inside the fixtures directory

    Returns:
        graph       Parsed Multigraph
    '''
    return edgecolor.read_multigraph(fixture(filename))


sys.modules['edgecolor'].resolve = resolve
sys.modules['edgecolor'].fixture = fixture
sys.modules['edgecolor'].load = load
