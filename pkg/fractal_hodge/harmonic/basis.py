"""Localized harmonic 1-form bases h_{w,j} = h_{1,j} o F_w^{-1}, extended to a common generation.
"""
from fractions import Fraction
from itertools import product
from typing import NamedTuple, Tuple

import numpy as np
import pandas as pd

from .. import settings
from .. import logging as logg
from ..errors import WordLengthError, VerificationFailure
from ..derham import exact_linalg
from ..derham.forms import KForm, inner_product, integrate, assemble_weights
from ..derham.operators import harmonic_space
from ..gasket import GasketTower, cell_count
from .cycles import cycle_basis, level_one_cycles, push_forward, refine_edges, cycle_chain, normalize_by_periods
from .extension import extend_one_form


class TaggedForm(NamedTuple):
    word: Tuple[int, ...]
    index: int
    form: KForm

    @property
    def label(self):
        return f"w={''.join(map(str, self.word)) or '-'},j={self.index}"


def expected_dimension(n, level, generation, m_one=None):
    """M (N**m - 1) / (N - 1) with M = dim of the harmonic 1-forms of G_l^{n,1}."""
    if generation == 0:
        return 0
    m_one = len(level_one_cycles(n, level)) if m_one is None else m_one
    big_n = cell_count(n, level)
    return m_one * (big_n ** generation - 1) // (big_n - 1)


def level_one_harmonic_basis(n, level, weights=None, tower=None):
    """Harmonic 1-forms of G_l^{n,1} normalized so that the integral of h_j over gamma_i is delta_ij."""
    tower = GasketTower(n, level) if tower is None else tower
    graph = tower[1]
    weights = assemble_weights(graph) if weights is None else weights
    kernel = harmonic_space(graph, weights, 1, exact=True)
    cycles = cycle_basis(graph).cycles
    logg.hint(f"level-1 harmonic space of SG_{level}^{n}: {len(kernel)} forms, {len(cycles)} cycles")
    return normalize_by_periods(kernel, cycles)


def localize(h, word, tower, generation=None, weights=None, check=True):
    """Copy a generation-1 form into the cell F_word and extend it harmonically.

    Arguments
    ---------
    h : `KForm`
        Harmonic 1-form of generation 1.
    word : tuple of int
    tower : `GasketTower`
    generation : int, optional
        Target generation, at least len(word) + 1 (the default).

    Returns
    -------
    `KForm` of the target generation, zero off F_word K.
    """
    word = tuple(word)
    depth = len(word) + 1
    generation = depth if generation is None else generation
    if generation < depth:
        raise WordLengthError(f"word {word} of length {len(word)} does not fit in generation {generation}")
    base = tower[1]
    h.check(base, 1)
    graph = tower[depth]
    values = [Fraction(0)] * graph.num_simplices(1) if h.exact else np.zeros(graph.num_simplices(1), dtype=h.values.dtype)
    for b in range(graph.n_maps):
        for face in graph.faces[1]:
            values[graph.face_id(word + (b,), face)] = h.values[base.face_id((b,), face)]
    out = KForm(1, depth, values, exact=h.exact)
    for g in range(depth, generation):
        out = extend_one_form(out, tower[g], tower[g + 1], weights=weights, check=check)
    return out


def harmonic_one_basis(n, level, generation, weights=None, tower=None, check=True):
    """The forms h_{w,j} for every word |w| <= m-1, all living on G_l^{n,m}.

    With `check`, the set is verified to be independent, of the predicted size and,
    below `settings.exact_column_limit` edges, of the dimension of the harmonic space.
    """
    tower = GasketTower(n, level) if tower is None else tower
    if generation == 0:
        return []
    base = level_one_harmonic_basis(n, level, tower=tower)
    n_maps = tower[1].n_maps
    words = [w for length in range(generation) for w in product(range(n_maps), repeat=length)]
    basis = []
    for word in logg.progress(words, total=len(words), desc="localizing"):
        for j, h in enumerate(base):
            basis.append(TaggedForm(word, j, localize(h, word, tower, generation, weights=weights, check=check)))
    logg.info(f"harmonic 1-form basis of G_{level}^{{{n},{generation}}}: {len(basis)} forms")
    if check:
        _verify_basis(basis, tower[generation], weights, expected_dimension(n, level, generation, len(base)))
    return basis


def _verify_basis(basis, graph, weights, expected):
    if len(basis) != expected:
        raise VerificationFailure(f"built {len(basis)} forms, expected {expected}")
    if all(t.form.exact for t in basis):
        reducer = exact_linalg.RowReducer()
        rank = sum(reducer.add(exact_linalg.sparse_row(t.form.values)) for t in basis)
    else:
        rank = exact_linalg.float_rank(np.array([t.form.to_float().values for t in basis]))
    if rank != len(basis):
        raise VerificationFailure(f"basis of {len(basis)} forms has rank {rank}")
    if graph.num_simplices(1) > settings.exact_column_limit:
        logg.hint(f"skipping the kernel dimension check on {graph.num_simplices(1)} edges")
        return
    weights = assemble_weights(graph) if weights is None else weights
    dim = len(harmonic_space(graph, weights, 1))
    if dim != len(basis):
        raise VerificationFailure(f"harmonic space has dimension {dim}, basis has {len(basis)} forms")


def gram_matrix(basis, graph, weights=None):
    weights = assemble_weights(graph) if weights is None else weights
    return [[inner_product(a.form, b.form, weights) for b in basis] for a in basis]


def orthogonality_table(basis, graph, weights=None):
    """Gram matrix of a tagged basis as a DataFrame indexed by form labels."""
    labels = [t.label for t in basis]
    gram = gram_matrix(basis, graph, weights)
    if all(t.form.exact for t in basis):
        return pd.DataFrame(gram, index=labels, columns=labels, dtype=object)
    return pd.DataFrame(np.array(gram, dtype=float), index=labels, columns=labels)


def orthogonality_violations(basis, graph, weights=None, tol=1e-9):
    """Pairs of forms with different words and a nonzero inner product."""
    gram = gram_matrix(basis, graph, weights)
    bad = []
    for i, a in enumerate(basis):
        for j in range(i + 1, len(basis)):
            b = basis[j]
            if a.word == b.word:
                continue
            v = gram[i][j]
            if (isinstance(v, Fraction) and v != 0) or (not isinstance(v, Fraction) and abs(v) > tol):
                bad.append((a.label, b.label, v))
    return bad


def localized_periods(basis, graph):
    """Integral of h_{w,j} over the refinement of F_w gamma_j, one value per form."""
    cycles = level_one_cycles(graph.n, graph.level)
    out = []
    for t in basis:
        terms = refine_edges(push_forward(cycles[t.index], t.word), graph.offsets, graph.generation)
        out.append(integrate(t.form, cycle_chain(terms, graph)))
    return out


def cell_cycle_integrals(h, graph, word):
    """Integrals of h over the cycles F_word gamma_i lying inside the cell F_word K.

    For a form extended from generation len(word) they all vanish.
    """
    out = []
    for gamma in level_one_cycles(graph.n, graph.level):
        terms = refine_edges(push_forward(gamma, word), graph.offsets, graph.generation)
        out.append(integrate(h, cycle_chain(terms, graph)))
    return out
