from .gasket import (GasketGraph, GasketTower, Simplex, Vertex, build_graph, enumerate_cell_maps, classify_vertices, degree,
                     lattice_points, word_origin, edge_sub_letters, cells_along_edge, cells_inside)
from .counting import (cell_count, count_vertices, vertices_at_level_one, junction_correction,
                       count_vertices_closed_form_n2, junction_count, simplex_count)

__all__ = [
    "GasketGraph",
    "GasketTower",
    "Simplex",
    "Vertex",
    "build_graph",
    "enumerate_cell_maps",
    "classify_vertices",
    "degree",
    "lattice_points",
    "word_origin",
    "edge_sub_letters",
    "cells_along_edge",
    "cells_inside",
    "cell_count",
    "count_vertices",
    "vertices_at_level_one",
    "junction_correction",
    "count_vertices_closed_form_n2",
    "junction_count",
    "simplex_count",
    ]
