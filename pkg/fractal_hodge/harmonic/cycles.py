"""1-cycles generating H_1 of the triangle-filled complex, and their periods.
"""
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import NamedTuple

import numpy as np

from ..errors import SingularSystemError
from ..derham import exact_linalg
from ..derham.forms import Chain, integrate
from ..derham.operators import assemble_d
from ..gasket import build_graph, edge_sub_letters, enumerate_cell_maps


class CycleBasis(NamedTuple):
    generation: int
    cycles: list
    labels: list

    def __len__(self):
        return len(self.cycles)


def homology_cycles(graph):
    """Cycles spanning ker boundary_1 modulo im boundary_2, chosen with exact pivots.

    Returns a list of edge-coefficient dictionaries.
    """
    n_edges = graph.num_simplices(1)
    d0 = assemble_d(graph, 0)
    # boundary_1 = d_0^T, one row per vertex
    boundary_rows = d0.transpose().rows()
    reducer = exact_linalg.RowReducer()
    if graph.n >= 2:
        for row in assemble_d(graph, 1).rows():
            reducer.add(row)
    cycles = []
    for z in exact_linalg.nullspace(boundary_rows, n_edges):
        row = exact_linalg.sparse_row(z)
        if reducer.add(row):
            cycles.append(row)
    return cycles


def _upside_down_triangles(level):
    """Level-1 cycles of SG_l^2 as {(letter, local_face): coefficient}.

    For p with |p| = l - 2 the triangle has vertices A = p+e1+e2, B = p+e0+e2,
    C = p+e0+e1 and is traversed A -> B -> C -> A.
    """
    letters = {a: i for i, a in enumerate(enumerate_cell_maps(2, level))}
    out = []
    for p in product(range(level - 1), repeat=3):
        if sum(p) != level - 2:
            continue
        shift = lambda j: tuple(p[k] + int(k == j) for k in range(3))
        out.append({
            (letters[shift(2)], (0, 1)): Fraction(-1),
            (letters[shift(0)], (1, 2)): Fraction(-1),
            (letters[shift(1)], (0, 2)): Fraction(1),
        })
    return sorted(out, key=lambda c: sorted(c))


@lru_cache(maxsize=None)
def level_one_cycles(n, level):
    """Cycles of G_l^{n,1} keyed by (letter, local_face)."""
    if n == 2:
        return tuple(tuple(sorted(c.items())) for c in _upside_down_triangles(level))
    graph = build_graph(n, level, 1)
    cycles = []
    for row in homology_cycles(graph):
        cycles.append(tuple(sorted(((graph.simplices[1][e].word[0], graph.simplices[1][e].local_face), c)
                                   for e, c in row.items())))
    return tuple(cycles)


def refine_edges(terms, offsets, depth):
    """Replace every (word, (s, t)) by its sub-edges until the words have length `depth`."""
    out = dict(terms)
    while out and len(next(iter(out))[0]) < depth:
        finer = {}
        for (word, (s, t)), c in out.items():
            for b in edge_sub_letters(offsets, s, t):
                key = (word + (b,), (s, t))
                finer[key] = finer.get(key, 0) + c
        out = finer
    return out


def push_forward(cycle, word):
    """F_word applied to a level-1 cycle."""
    return {(tuple(word) + (letter,), face): c for (letter, face), c in cycle}


def cycle_chain(terms, graph):
    return Chain(1, graph.generation, {graph.face_id(word, face): c for (word, face), c in terms.items()})


def cycle_basis(graph):
    """The cycles F_w gamma_j for |w| <= m-1, refined to generation m."""
    m = graph.generation
    if m == 0:
        return CycleBasis(0, [], [])
    base = level_one_cycles(graph.n, graph.level)
    cycles, labels = [], []
    for length in range(m):
        for word in product(range(graph.n_maps), repeat=length):
            for j, gamma in enumerate(base):
                terms = refine_edges(push_forward(gamma, word), graph.offsets, m)
                cycles.append(cycle_chain(terms, graph))
                labels.append((word, j))
    return CycleBasis(m, cycles, labels)


def cycles_independent(basis, graph):
    """True when no nontrivial combination of the cycles bounds a 2-chain."""
    reducer = exact_linalg.RowReducer()
    if graph.n >= 2:
        for row in assemble_d(graph, 1).rows():
            reducer.add(row)
    return all(reducer.add(c.coefficients) for c in basis.cycles)


def cycle_integral_matrix(forms, cycles):
    """Period matrix P[i][j] = integral of forms[j] over cycles[i]."""
    exact = all(f.exact for f in forms)
    table = [[integrate(f, c) for f in forms] for c in cycles]
    if exact:
        return table
    return np.array(table, dtype=complex if any(np.iscomplexobj(f.values) for f in forms) else float)


def normalize_by_periods(forms, cycles):
    """Recombine `forms` so that the integral of form j over cycle i is delta_ij."""
    if not forms:
        return []
    periods = cycle_integral_matrix(forms, cycles)
    if len(periods) != len(forms) or any(len(r) != len(forms) for r in periods):
        raise SingularSystemError(f"{len(cycles)} cycles for {len(forms)} forms: period matrix is not square")
    if isinstance(periods, np.ndarray):
        if np.linalg.matrix_rank(periods) < len(forms):
            raise SingularSystemError("period matrix is singular, the forms are not a basis")
        inv = np.linalg.inv(periods)
    else:
        try:
            inv = exact_linalg.inverse(periods)
        except SingularSystemError as err:
            raise SingularSystemError(f"period matrix is singular, the forms are not a basis: {err}")
    out = []
    for j in range(len(forms)):
        acc = forms[0].scale(inv[0][j])
        for l in range(1, len(forms)):
            acc = acc + forms[l].scale(inv[l][j])
        out.append(acc)
    return out
