from .constants import *
from .logging import *
from .utils import *
from .graph import *
from .invariants import *
from .matching import *
from .completion import *
from .reduction import *
from .coloring import *
from .formats import *
from .generators import *
from .corpus import *

name = 'edgecolor'
