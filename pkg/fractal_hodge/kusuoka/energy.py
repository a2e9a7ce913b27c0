"""Energy measures of harmonic functions and the transfer matrices of cell energy triples.

Cells of SG_3^2 are labelled F_0, F_1, F_2 (corner cells at q_0, q_1, q_2) and
F_3, F_4, F_5 (middle cells opposite q_0, q_1, q_2). Words over labels are turned
into words over cell-map indices with LABEL_TO_MAP. The triple of a cell F_w is
(nu(F_w F_0 K), nu(F_w F_1 K), nu(F_w F_2 K)); E_i sends the triple of F_w to the
triple of F_{w i} and C sends it to the middle-cell triple of F_w.
"""
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .. import logging as logg
from ..errors import UnsupportedGasketError, SingularSystemError
from ..derham import exact_linalg
from ..derham.forms import KForm
from ..gasket import build_graph, enumerate_cell_maps
from ..harmonic import extension_matrices, energy_renormalization, boundary_energy, extend_zero_form
from . import tables

N_DIM, LEVEL = 2, 3
BOTTOM_LABELS = (1, 2, 3)
"""Labels of the cells meeting the edge [q_1, q_2]."""

SWAP = ((1, 0, 0), (0, 0, 1), (0, 1, 0))
"""Exchanges the entries belonging to q_1 and q_2."""

ENERGY_BASIS = ((1, 0, 0), (0, 1, -1))
"""Boundary values of an energy-orthogonal harmonic pair, symmetric and antisymmetric under q_1 <-> q_2."""


def _label_to_map():
    offsets = enumerate_cell_maps(N_DIM, LEVEL)
    corners = [tuple((LEVEL - 1) * int(j == i) for j in range(N_DIM + 1)) for i in range(N_DIM + 1)]
    middles = [tuple(int(j != i) for j in range(N_DIM + 1)) for i in range(N_DIM + 1)]
    return tuple(offsets.index(a) for a in corners + middles)


LABEL_TO_MAP = _label_to_map()


def to_map_word(labels):
    labels = tuple(labels)
    bad = [a for a in labels if a not in range(len(LABEL_TO_MAP))]
    if bad:
        raise UnsupportedGasketError(f"labels {bad} do not name cells of SG_{LEVEL}^{N_DIM}")
    return tuple(LABEL_TO_MAP[a] for a in labels)


#######################################################################
# Cell energies
#######################################################################


def cell_boundary_values(x, word, n=N_DIM, level=LEVEL):
    """Values of the harmonic extension of x at the corners of F_word (word over map indices)."""
    mats = extension_matrices(n, level)
    y = list(x)
    for letter in word:
        y = exact_linalg.matvec(mats[letter], y)
    return y


def cell_energy(x, word, n=N_DIM, level=LEVEL):
    """nu_h(F_word K) = rho**|word| E_0 of h restricted to the cell, for h harmonic with boundary values x.

    Works on any SG_l^n; `word` lists cell-map indices.
    """
    rho = energy_renormalization(n, level)
    return rho ** len(word) * boundary_energy(cell_boundary_values(x, word, n, level))


def energy_measure(x, labels):
    """nu_h(F_w K) on SG_3^2 with w given by cell labels."""
    return cell_energy(x, to_map_word(labels))


def kusuoka_measure(labels, basis=ENERGY_BASIS):
    """nu(F_w K) = sum of nu_h(F_w K) / E_0(h) over an energy-orthogonal pair h."""
    _check_orthogonal(basis)
    total = 0
    for x in basis:
        total = total + energy_measure(x, labels) / boundary_energy(x)
    return total


def energy_pairing(x, y):
    """Bilinear E_0(x, y), by polarization."""
    s = [a + b for a, b in zip(x, y)]
    return (boundary_energy(s) - boundary_energy(list(x)) - boundary_energy(list(y))) / 2


def _check_orthogonal(basis, tol=1e-12):
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            p = energy_pairing(basis[i], basis[j])
            if abs(p) > tol:
                raise ValueError(f"harmonic functions {basis[i]} and {basis[j]} are not energy-orthogonal ({p})")


def corner_triple(x, prefix=()):
    return tuple(energy_measure(x, tuple(prefix) + (i,)) for i in range(3))


def middle_triple(x, prefix=()):
    return tuple(energy_measure(x, tuple(prefix) + (i,)) for i in range(3, 6))


#######################################################################
# Transfer matrices
#######################################################################


def _unit_inputs():
    return [tuple(Fraction(int(k == i)) for k in range(3)) for i in range(3)]


def _columns(triples):
    return [[t[r] for t in triples] for r in range(3)]


@lru_cache(maxsize=None)
def derive_transfer():
    """E_1, E_2, E_3 and C from the harmonic extension matrices, over the rationals.

    Cell triples are quadratic in the boundary values and vanish on constants, so
    they are linear functions on a 3-dimensional space; the unit inputs e_0, e_1, e_2
    span it and every map is recovered as V_target V_corner^{-1}.
    """
    unit_inputs = _unit_inputs()
    v_corner = _columns([corner_triple(x) for x in unit_inputs])
    try:
        inv = exact_linalg.inverse(v_corner)
    except SingularSystemError as err:
        raise SingularSystemError(f"corner energy triples are degenerate: {err}")
    c = exact_linalg.matmul(_columns([middle_triple(x) for x in unit_inputs]), inv)
    transfer = {i: exact_linalg.matmul(_columns([corner_triple(x, (i,)) for x in unit_inputs]), inv) for i in range(6)}
    logg.hint("derived transfer matrices of SG_3^2")
    return transfer[1], transfer[2], transfer[3], c, transfer


def transfer_matrix(label):
    return derive_transfer()[4][label]


class KusuokaModel:
    """Transfer matrices, the middle-cell map C and the initial triple e of a measure.

    Arguments
    ---------
    transfer : dict
        Label (1, 2, 3) -> 3x3 matrix E_i.
    c : 3x3 matrix
    e : tuple
        Triple of the whole gasket.
    basis : sequence of (boundary values, weight)
        The measure is the weighted sum of nu_h over these functions.
    source : {'printed', 'derived'}
    """

    def __init__(self, transfer, c, e, basis, source):
        self.transfer = {k: tuple(tuple(r) for r in v) for k, v in transfer.items()}
        self.c = tuple(tuple(r) for r in c)
        self.e = tuple(e)
        self.basis = tuple(basis)
        self.source = source

    @property
    def E1(self):
        return self.transfer[1]

    @property
    def E2(self):
        return self.transfer[2]

    @property
    def E3(self):
        return self.transfer[3]

    @property
    def A(self):
        return tuple(tuple(sum(self.transfer[i][r][s] for i in BOTTOM_LABELS) for s in range(3)) for r in range(3))

    def _total(self, v):
        middle = exact_linalg.matvec(self.c, v)
        return sum(v) + sum(middle)

    def cell_measure(self, labels):
        """(1 1 1)(I + C) E_{w_m} ... E_{w_1} e for a word over the bottom labels."""
        v = list(self.e)
        for a in labels:
            if a not in self.transfer:
                raise UnsupportedGasketError(f"no transfer matrix for label {a}")
            v = exact_linalg.matvec(self.transfer[a], v)
        return self._total(v)

    def omega_measure(self, depth):
        """(1 1 1)(I + C) A**depth e."""
        a = self.A
        v = list(self.e)
        for _ in range(depth):
            v = exact_linalg.matvec(a, v)
        return self._total(v)

    def direct_measure(self, labels):
        """The same quantity from harmonic extension energies."""
        return sum(w * energy_measure(x, labels) for x, w in self.basis)

    def __repr__(self):
        return f"KusuokaModel(source={self.source!r}, e={tuple(str(v) for v in self.e)})"


def measure_basis(basis=ENERGY_BASIS, normalize=True):
    """Pairs (x, weight) with weight 1/E_0(x) for the normalized measure."""
    if normalize:
        _check_orthogonal(basis)
        return tuple((tuple(x), 1 / Fraction(boundary_energy(list(x)))) for x in basis)
    return tuple((tuple(x), Fraction(1)) for x in basis)


def initial_triple(basis):
    triple = [Fraction(0)] * 3
    for x, w in basis:
        triple = [t + w * v for t, v in zip(triple, corner_triple(x))]
    return tuple(triple)


def derived_model(basis=ENERGY_BASIS, normalize=True):
    """Model with derived matrices; by default the measure nu = nu_h/E(h) + nu_hp/E(hp)."""
    e1, e2, e3, c, _ = derive_transfer()
    pairs = measure_basis(basis, normalize)
    return KusuokaModel({1: e1, 2: e2, 3: e3}, c, initial_triple(pairs), pairs, "derived")


def printed_model(basis=ENERGY_BASIS, normalize=True):
    """Model with the tabulated matrices and the derived initial triple."""
    pairs = measure_basis(basis, normalize)
    return KusuokaModel({1: tables.PRINTED_E1, 2: tables.PRINTED_E2, 3: tables.PRINTED_E3}, tables.PRINTED_C,
                        initial_triple(pairs), pairs, "printed")


def swap_conjugate(m):
    """P m P with P = SWAP."""
    return exact_linalg.matmul(exact_linalg.matmul(SWAP, m), SWAP)


def brute_force_cell_energies(x, depth=2):
    """nu_h of all cells of the given depth from a harmonic extension on the graph G_3^{2,depth}.

    Independent of the extension matrices: the function is extended vertex by
    vertex on the graphs and the energies are summed over the edges of each cell.
    """
    graphs = [build_graph(N_DIM, LEVEL, g) for g in range(depth + 1)]
    f = KForm(0, 0, [Fraction(0)] * graphs[0].num_vertices, exact=True)
    for j, v in enumerate(graphs[0].corner_ids()):
        f.values[v] = Fraction(x[j])
    for g in range(depth):
        f = extend_zero_form(f, graphs[g], graphs[g + 1])
    rho = energy_renormalization(N_DIM, LEVEL)
    fine = graphs[depth]
    out = {}
    for word in product(range(len(LABEL_TO_MAP)), repeat=depth):
        ids = fine.cell_corner_ids(to_map_word(word))
        out[word] = rho ** depth * boundary_energy([f.values[v] for v in ids])
    return out


def basis_independence(words, angle=(0.6, 0.8)):
    """Largest difference of nu over `words` between the normalized pair and a rotated pair (float)."""
    cos, sin = angle
    h = np.array(ENERGY_BASIS[0], dtype=float) / np.sqrt(float(boundary_energy(list(ENERGY_BASIS[0]))))
    hp = np.array(ENERGY_BASIS[1], dtype=float) / np.sqrt(float(boundary_energy(list(ENERGY_BASIS[1]))))
    rotated = (cos * h + sin * hp, -sin * h + cos * hp)
    diff = 0.0
    for w in words:
        a = float(kusuoka_measure(w))
        b = sum(float(energy_measure(list(x), w)) for x in rotated)
        diff = max(diff, abs(a - b))
    return diff
