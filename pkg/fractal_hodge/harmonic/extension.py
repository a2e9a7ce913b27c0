"""Harmonic extension of vertex values and of harmonic 1-forms by one generation.
"""
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

from .. import logging as logg
from ..errors import (SingularSystemError, GenerationMismatchError, NotHarmonicError,
                      InconsistentPotentialError)
from ..derham import exact_linalg
from ..derham.forms import KForm, assemble_weights
from ..derham.operators import assemble_d, assemble_delta
from ..gasket import build_graph, enumerate_cell_maps, lattice_points


class ExtensionRule:
    """Harmonic extension from the n+1 corners to the level-1 lattice of one cell.

    `coefficients[v]` gives, for a non-corner lattice point v (integer vector summing
    to l), the weights of the corner values q_0..q_n in h(v).
    """

    def __init__(self, n, level, coefficients):
        self.n = n
        self.level = level
        self.coefficients = coefficients

    def row(self, point):
        point = tuple(point)
        if point in self.coefficients:
            return self.coefficients[point]
        if sorted(point) == [0] * self.n + [self.level]:
            return tuple(Fraction(int(x == self.level)) for x in point)
        raise KeyError(f"{point} is not a level-1 lattice point of SG_{self.level}^{self.n}")

    def points(self):
        return lattice_points(self.n, self.level)

    def apply(self, corner_values):
        """Values at every level-1 lattice point, keyed by local coordinates."""
        exact = all(isinstance(v, (int, Fraction)) for v in corner_values)
        out = {}
        for p in self.points():
            row = self.row(p)
            if exact:
                out[p] = sum((c * v for c, v in zip(row, corner_values)), Fraction(0))
            else:
                out[p] = sum(float(c) * v for c, v in zip(row, corner_values))
        return out

    def violations(self):
        """Rows breaking positivity, normalization, monotonicity or symmetry."""
        bad = []
        for p, row in self.coefficients.items():
            if any(c <= 0 for c in row):
                bad.append((p, "non-positive coefficient"))
            if sum(row) != 1:
                bad.append((p, "coefficients do not sum to 1"))
            for i, j in combinations(range(self.n + 1), 2):
                if p[i] == p[j] and row[i] != row[j]:
                    bad.append((p, f"corners {i} and {j} are symmetric but weighted differently"))
                if (p[i] - p[j]) * (row[i] - row[j]) < 0 or (p[i] != p[j] and row[i] == row[j]):
                    bad.append((p, f"weights of corners {i} and {j} are not ordered like the coordinates"))
        return bad

    def __repr__(self):
        return f"ExtensionRule(n={self.n}, level={self.level}, points={len(self.coefficients)})"


@lru_cache(maxsize=None)
def extension_rule(n, level):
    """Solve the mean value system A X = B of G_l^{n,1} over the rationals.

    A has deg(x) on the diagonal and -1 for adjacent interior vertices; column j
    of B collects the adjacency of the interior vertices to the corner q_j.
    """
    graph = build_graph(n, level, 1)
    corners = graph.corner_ids()
    corner_pos = {v: j for j, v in enumerate(corners)}
    interior = [v for v in range(graph.num_vertices) if v not in corner_pos]
    index = {v: i for i, v in enumerate(interior)}
    rows = []
    for v in interior:
        row = {index[v]: Fraction(graph.degree(v))}
        for u in graph.adjacency[v]:
            if u in index:
                row[index[u]] = row.get(index[u], 0) - 1
        rows.append(row)
    solutions = []
    for j, q in enumerate(corners):
        rhs = [Fraction(int(q in graph.adjacency[v])) for v in interior]
        try:
            solutions.append(exact_linalg.solve(rows, rhs, len(interior)))
        except SingularSystemError as err:
            raise SingularSystemError(f"mean value system of SG_{level}^{n} is singular: {err}")
    coefficients = {tuple(int(x) for x in graph.coords[v]): tuple(solutions[j][i] for j in range(n + 1))
                    for i, v in enumerate(interior)}
    logg.hint(f"extension rule of SG_{level}^{n}: {len(interior)} interior points")
    return ExtensionRule(n, level, coefficients)


@lru_cache(maxsize=None)
def extension_matrices(n, level):
    """Per-map matrices A_i with (corner values of F_i K) = A_i (boundary values)."""
    rule = extension_rule(n, level)
    mats = []
    for a in enumerate_cell_maps(n, level):
        mats.append(tuple(tuple(rule.row(tuple(a[k] + int(k == j) for k in range(n + 1)))) for j in range(n + 1)))
    return tuple(mats)


def boundary_energy(values):
    """E_0 with unit weights: sum over i < j of (x_i - x_j)^2."""
    return sum(((a - b) ** 2 for a, b in combinations(values, 2)), Fraction(0) if isinstance(values[0], (int, Fraction)) else 0.0)


@lru_cache(maxsize=None)
def energy_renormalization(n, level):
    """The constant r with r * sum_i E_0(A_i x) = E_0(x) for every boundary vector x."""
    mats = extension_matrices(n, level)
    unit_inputs = [tuple(Fraction(int(k == i)) for k in range(n + 1)) for i in range(n + 1)]
    unit_inputs += [tuple(Fraction(int(k in (i, j))) for k in range(n + 1)) for i, j in combinations(range(n + 1), 2)]
    ratios = set()
    for x in unit_inputs:
        fine = sum((boundary_energy(exact_linalg.matvec(a, x)) for a in mats), Fraction(0))
        coarse = boundary_energy(x)
        if coarse == 0:
            continue
        ratios.add(coarse / fine)
    if len(ratios) != 1:
        raise SingularSystemError(f"level-1 energy of SG_{level}^{n} is not a multiple of E_0: {sorted(ratios)}")
    return ratios.pop()


def _check_pair(coarse, fine):
    if fine.generation != coarse.generation + 1 or (fine.n, fine.level) != (coarse.n, coarse.level):
        raise GenerationMismatchError(f"cannot extend from generation {coarse.generation} of SG_{coarse.level}^{coarse.n} "
                                      f"to generation {fine.generation} of SG_{fine.level}^{fine.n}")


def _cell_points(coarse, fine, word):
    """Fine vertex id of every local lattice point of the cell F_word."""
    origin = coarse.origins[coarse.cell_index(word)]
    return {p: fine.vertex_id(coarse.level * origin + np.asarray(p, dtype=np.int64))
            for p in lattice_points(coarse.n, coarse.level)}


def extend_zero_form(f, coarse, fine):
    """Harmonic extension of a 0-form from generation m to m+1, cell by cell."""
    _check_pair(coarse, fine)
    f.check(coarse, 0)
    rule = extension_rule(coarse.n, coarse.level)
    out = [None] * fine.num_vertices
    for c, word in enumerate(coarse.words):
        corner_values = [f.values[int(v)] for v in coarse.cell_vertices[c]]
        local = rule.apply(corner_values)
        for p, v in _cell_points(coarse, fine, word).items():
            out[v] = local[p]
    if f.exact:
        return KForm(0, fine.generation, out, exact=True)
    return KForm(0, fine.generation, np.asarray(out), exact=False)


def harmonic_defects(h, graph, weights=None):
    """(||d_1 h||, ||delta_1 h||) computed exactly for exact forms."""
    weights = assemble_weights(graph) if weights is None else weights
    d = assemble_d(graph, 1).apply(h)
    delta = assemble_delta(graph, weights, 1).apply(h)
    if h.exact:
        return sum(abs(v) for v in d.values), sum(abs(v) for v in delta.values)
    return float(np.max(np.abs(d.values), initial=0.0)), float(np.max(np.abs(delta.values), initial=0.0))


def cell_potential(h, graph, word, tol=1e-9):
    """Potential on the corners of F_word with p(q_0) = 0 and p(q_j) = h([q_0, q_j])."""
    n = graph.n
    p = [Fraction(0) if h.exact else 0.0]
    for j in range(1, n + 1):
        p.append(h.values[graph.face_id(word, (0, j))])
    for i, j in combinations(range(1, n + 1), 2):
        value = h.values[graph.face_id(word, (i, j))]
        defect = value - (p[j] - p[i])
        if (h.exact and defect != 0) or (not h.exact and abs(defect) > tol):
            raise InconsistentPotentialError(f"edge ({i}, {j}) of cell {word} breaks d_1 h = 0 (defect {defect})")
    return p


def extend_one_form(h, coarse, fine, weights=None, check=True):
    """Extend a harmonic 1-form from generation m to m+1.

    Inside every m-cell the form is the differential of a corner potential; the
    potential is extended harmonically and differenced along the (m+1)-edges.
    """
    _check_pair(coarse, fine)
    h.check(coarse, 1)
    if check:
        d_defect, delta_defect = harmonic_defects(h, coarse, weights)
        if (h.exact and (d_defect != 0 or delta_defect != 0)) or (not h.exact and max(d_defect, delta_defect) > 1e-9):
            raise NotHarmonicError(f"input is not harmonic: |d_1 h| = {d_defect}, |delta_1 h| = {delta_defect}")
    if weights is not None and not weights.system.is_uniform():
        logg.warn("extending 1-forms with non-uniform multipliers is experimental")
    rule = extension_rule(coarse.n, coarse.level)
    offsets = coarse.offsets
    n = coarse.n
    out = [None] * fine.num_simplices(1)
    for word in coarse.words:
        local = rule.apply(cell_potential(h, coarse, word))
        for b, a in enumerate(offsets):
            for s, t in combinations(range(n + 1), 2):
                head = tuple(a[k] + int(k == t) for k in range(n + 1))
                tail = tuple(a[k] + int(k == s) for k in range(n + 1))
                out[fine.face_id(word + (b,), (s, t))] = local[head] - local[tail]
    if h.exact:
        return KForm(1, fine.generation, out, exact=True)
    return KForm(1, fine.generation, np.asarray(out, dtype=float), exact=False)


def telescoping_defects(h, h_fine, coarse, fine):
    """Coarse edges e where h(e) differs from the sum of h_fine over the sub-edges of e."""
    bad = []
    for i, edge in enumerate(coarse.simplices[1]):
        total = sum((h_fine.values[j] for j in coarse.sub_edges(edge, fine)), Fraction(0) if h_fine.exact else 0.0)
        if (h.exact and total != h.values[i]) or (not h.exact and abs(total - h.values[i]) > 1e-9):
            bad.append(i)
    return bad
