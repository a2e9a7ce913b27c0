__version__ = "0.1.0"

from fractal_hodge.gasket import *
from fractal_hodge.derham import *
from fractal_hodge.harmonic import *
from fractal_hodge.analysis import *
from . import kusuoka
from .io import (write_graph,
                 read_graph,
                 graph_document,
                 graph_from_document,
                 write_operator,
                 read_operator,
                 export_operators,
                 write_form,
                 read_form,
                 write_basis,
                 read_basis)
