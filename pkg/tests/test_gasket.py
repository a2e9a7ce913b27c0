from math import comb

import numpy as np
import pytest

from fractal_hodge.errors import ResourceCapError, UnknownVertexError, GenerationMismatchError
from fractal_hodge.gasket import (build_graph, enumerate_cell_maps, cell_count, count_vertices, vertices_at_level_one,
                                  count_vertices_closed_form_n2, junction_count, simplex_count, edge_sub_letters,
                                  cells_along_edge, cells_inside, word_origin, GasketTower)


def test_cell_maps_lexicographic():
    assert enumerate_cell_maps(2, 2) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert enumerate_cell_maps(2, 3) == [(0, 0, 2), (0, 1, 1), (0, 2, 0), (1, 0, 1), (1, 1, 0), (2, 0, 0)]


@pytest.mark.parametrize("n, level, expected", [(2, 2, 3), (2, 3, 6), (3, 2, 4), (3, 3, 10), (4, 4, 35)])
def test_cell_count(n, level, expected):
    assert cell_count(n, level) == expected
    assert len(enumerate_cell_maps(n, level)) == expected


def test_cell_count_recursion():
    for n in range(2, 7):
        for level in range(2, 7):
            assert cell_count(n, level) == cell_count(n - 1, level) + cell_count(n, level - 1)


def test_generation_zero_is_one_simplex():
    g = build_graph(2, 2, 0)
    assert (g.num_vertices, g.num_simplices(1), g.num_simplices(2)) == (3, 3, 1)


@pytest.mark.parametrize("n, level, m, expected", [(2, 2, 1, 6), (2, 2, 2, 15), (2, 3, 1, 10), (2, 3, 2, 52),
                                                   (3, 2, 1, 10), (3, 3, 1, 20)])
def test_vertex_counts(n, level, m, expected):
    assert build_graph(n, level, m).num_vertices == expected
    assert count_vertices(n, level, m) == expected


@pytest.mark.parametrize("n, level", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)])
def test_level_one_binomial(n, level):
    assert build_graph(n, level, 1).num_vertices == vertices_at_level_one(n, level) == comb(n + level, n)


def test_closed_form_by_residue_class():
    for level in range(1, 20):
        assert count_vertices_closed_form_n2(level) == comb(level + 2, 2)


def test_junction_classes():
    assert junction_count(2, 3, 3, 2) == 7
    assert junction_count(2, 4, 3, 2) == 33
    for level in (3, 4, 5):
        for m in (1, 2):
            g = build_graph(2, level, m)
            counts = {k: len(v) for k, v in g.classify_vertices().items()}
            assert counts == {k: junction_count(2, level, k, m) for k in counts}
            assert sum(counts.values()) == g.num_vertices


def test_simplex_count_matches_tables():
    g = build_graph(3, 2, 2)
    assert sum(g.num_simplices(k) for k in range(4)) == simplex_count(3, 2, 2)


def test_cap():
    with pytest.raises(ResourceCapError) as err:
        build_graph(2, 3, 3, cap=100)
    assert err.value.cap == 100
    assert isinstance(err.value, MemoryError)


def test_degrees():
    g = build_graph(2, 2, 1)
    corners = g.corner_ids()
    assert all(g.degree(v) == 2 for v in corners)
    assert all(g.degree(v) == 4 for v in range(g.num_vertices) if v not in corners)
    with pytest.raises(UnknownVertexError):
        g.degree(99)


def test_vertices_sorted_and_cells_share_junctions():
    g = build_graph(2, 3, 1)
    keys = [tuple(c) for c in g.coords]
    assert keys == sorted(keys)
    assert g.multiplicity.max() == 3
    center = g.vertex_id((1, 1, 1))
    assert g.multiplicity[center] == 3


def test_word_origin():
    offsets = enumerate_cell_maps(2, 3)
    assert list(word_origin((5, 0), offsets, 3)) == [6, 0, 2]


def test_edge_helpers():
    offsets = enumerate_cell_maps(2, 3)
    assert edge_sub_letters(offsets, 1, 2) == [2, 1, 0]
    assert len(cells_along_edge((4,), 0, 1, offsets, 3)) == 9
    assert len(cells_inside((4,), 6, 3)) == 36


def test_sub_edges_chain_from_tail_to_head():
    tower = GasketTower(2, 3)
    coarse, fine = tower[1], tower[2]
    for edge in coarse.simplices[1][:6]:
        ids = coarse.sub_edges(edge, fine)
        assert len(ids) == 3
        parts = [fine.simplices[1][i].vertex_ids for i in ids]
        tail, head = edge.vertex_ids
        assert np.array_equal(fine.coords[parts[0][0]], 3 * coarse.coords[tail])
        assert np.array_equal(fine.coords[parts[-1][1]], 3 * coarse.coords[head])
        assert all(a[1] == b[0] for a, b in zip(parts, parts[1:]))
    with pytest.raises(GenerationMismatchError):
        coarse.sub_edges(coarse.simplices[1][0], tower[3])


def test_same_tables():
    assert build_graph(2, 3, 2).same_tables(build_graph(2, 3, 2))
    assert not build_graph(2, 3, 1).same_tables(build_graph(2, 2, 1))
