"""Renormalized delta_2 and d_1 on SG_3^2 for f dmu (balanced measure) and f dnu (Kusuoka measure).

A sampled function f is either vectorized, taking an (k, 3) array of barycentric
coordinates and returning k values, or, on the exact paths, a callable of one
tuple of Fractions.
"""
from fractions import Fraction
from itertools import combinations, product
from typing import NamedTuple, Tuple

import numpy as np
import pandas as pd

from .. import settings
from .. import logging as logg
from ..errors import GenerationMismatchError, ShapeMismatchError
from ..gasket import enumerate_cell_maps, edge_sub_letters, cells_along_edge, cells_inside, word_origin
from ..harmonic import extension_matrices, energy_renormalization
from .energy import N_DIM, LEVEL, derived_model
from .growth import check_depth, spectral_growth, _row_energies

OFFSETS = enumerate_cell_maps(N_DIM, LEVEL)
N_MAPS = len(OFFSETS)
EDGES = list(combinations(range(N_DIM + 1), 2))
CELL_MASS = Fraction(1, N_MAPS)
EDGE_GROWTH = Fraction(N_MAPS, len(edge_sub_letters(OFFSETS, 0, 1)))
"""mu of an m-cell is 6**-m and 3**(n-m) n-cells lie along an m-edge, hence 2**n."""


class EdgeSegment(NamedTuple):
    """The edge F_word([q_s, q_t]) of generation len(word)."""
    generation: int
    word: Tuple[int, ...]
    edge: Tuple[int, int]

    @classmethod
    def bottom(cls):
        """[q_1, q_2] as a generation-0 edge."""
        return cls(0, (), (1, 2))

    def check(self):
        if len(self.word) != self.generation:
            raise GenerationMismatchError(f"word {self.word} does not have length {self.generation}")
        if tuple(self.edge) not in EDGES or any(a not in range(N_MAPS) for a in self.word):
            raise ShapeMismatchError(f"{self} is not an edge of G_3^{{2,{self.generation}}}")
        return self


def centroids(origins, generation):
    """Barycentric centroids of the cells with the given origin numerators."""
    return (np.asarray(origins, dtype=float) + 1.0 / (N_DIM + 1)) / float(LEVEL) ** generation


def exact_centroid(word):
    origin = word_origin(word, OFFSETS, LEVEL)
    scale = Fraction(LEVEL) ** len(word)
    return tuple((int(o) + Fraction(1, N_DIM + 1)) / scale for o in origin)


def tail_origins(letters, length):
    """Origin numerators of every tail over `letters` of the given length, in lexicographic order."""
    table = np.zeros((1, N_DIM + 1), dtype=np.int64)
    offsets = np.array([OFFSETS[a] for a in letters], dtype=np.int64)
    for _ in range(length):
        table = (LEVEL * table[:, None, :] + offsets[None, :, :]).reshape(-1, N_DIM + 1)
    return table


def cell_blocks(word, letters, depth, chunk=None):
    """Origins of the depth-`depth` cells refining F_word with tails over `letters`, in blocks.

    The last `chunk` letters of a tail come from a precomputed table, the others
    are enumerated.
    """
    chunk = settings.chunk_depth if chunk is None else chunk
    tail = depth - len(word)
    suffix = min(tail, chunk)
    table = tail_origins(letters, suffix)
    for prefix in product(letters, repeat=tail - suffix):
        base = word_origin(tuple(word) + prefix, OFFSETS, LEVEL)
        yield LEVEL ** suffix * base[None, :] + table


#######################################################################
# Balanced measure
#######################################################################


def integrate_balanced(f, word, depth, exact=False):
    """Integral of f dmu over F_word K with f sampled at the centroids of the depth cells."""
    check_depth(depth)
    if depth < len(word):
        raise GenerationMismatchError(f"depth {depth} is coarser than the cell {word}")
    if exact:
        total = sum((Fraction(f(exact_centroid(w))) for w in cells_inside(word, N_MAPS, depth)), Fraction(0))
        return total * CELL_MASS ** depth
    sums = [float(np.sum(f(centroids(o, depth)))) for o in cell_blocks(word, range(N_MAPS), depth)]
    return float(np.sum(sums)) / N_MAPS ** depth


def _edge_sum(f, segment, depth, exact):
    s, t = segment.edge
    if exact:
        return sum((Fraction(f(exact_centroid(w))) for w in cells_along_edge(segment.word, s, t, OFFSETS, depth)),
                   Fraction(0))
    letters = edge_sub_letters(OFFSETS, s, t)
    return float(np.sum([np.sum(f(centroids(o, depth))) for o in cell_blocks(segment.word, letters, depth)]))


def delta2_at(f, segment, n, exact=False):
    """One term of the delta_2 sequence, at depth n."""
    total = _edge_sum(f, segment, n, exact)
    if exact:
        return EDGE_GROWTH ** n * CELL_MASS ** n * total
    return float(EDGE_GROWTH) ** n * total / N_MAPS ** n


def delta2_balanced(f, segment, depth, exact=False):
    """(6/3)**n times the sum of f dmu over the n-cells along the edge, for n = m .. depth.

    Returns a Series indexed by n.
    """
    segment = EdgeSegment(*segment).check()
    check_depth(depth)
    values = {n: delta2_at(f, segment, n, exact) for n in range(segment.generation, depth + 1)}
    return pd.Series(values, name="delta2", dtype=object if exact else float)


def d1_renormalized(f1, word, depth):
    """(3/6)**n times the sum of f1 over the 3 * 6**(n-m) generation-n edges inside F_word K.

    `f1` is called with an `EdgeSegment` of generation n.
    """
    check_depth(depth)
    if depth < len(word):
        raise GenerationMismatchError(f"depth {depth} is coarser than the cell {word}")
    total = 0
    for w in cells_inside(word, N_MAPS, depth):
        for edge in EDGES:
            total = total + f1(EdgeSegment(depth, w, edge))
    return total / EDGE_GROWTH ** depth if not isinstance(total, float) else total / float(EDGE_GROWTH) ** depth


def _suffix_multiplicity(inner):
    """For every tail of length `inner`, the number of local edges of its ancestor it lies along."""
    along = [set(edge_sub_letters(OFFSETS, s, t)) for s, t in EDGES]
    return np.array([sum(all(a in letters for a in tail) for letters in along)
                     for tail in product(range(N_MAPS), repeat=inner)], dtype=float)


def _cell_ratio(lhs, rhs, tol):
    if abs(rhs) <= tol:
        return np.nan, abs(lhs - rhs)
    return lhs / rhs, abs(lhs - rhs)


def verify_prop_4_2(f, m, depth, inner=1, tol=1e-14):
    """Compare d_1 delta_2 (f dmu) with 3 f dmu on every generation-m cell.

    delta_2 is evaluated at depth + inner on the generation-`depth` edges and d_1
    sums those edges inside each m-cell; both sides then run over the cells of
    depth + inner, the left one weighted by how many depth-edges each cell lies along.

    Returns a DataFrame with one row per m-cell: word, lhs, rhs, ratio and abs_diff
    (ratio is NaN where the right side vanishes).
    """
    if depth < m:
        raise GenerationMismatchError(f"depth {depth} is coarser than generation {m}")
    check_depth(depth + inner)
    if inner > settings.chunk_depth:
        raise ValueError(f"inner depth {inner} exceeds the chunk depth {settings.chunk_depth}")
    fine = depth + inner
    mult = _suffix_multiplicity(inner)
    rows = []
    for word in logg.progress(list(product(range(N_MAPS), repeat=m)), desc="cells"):
        weighted, plain = [], []
        for block in cell_blocks(word, range(N_MAPS), fine, chunk=max(inner, min(settings.chunk_depth, fine - m))):
            values = f(centroids(block, fine))
            weights = np.tile(mult, len(block) // len(mult))
            weighted.append(np.sum(weights * values))
            plain.append(np.sum(values))
        lhs = 2.0 ** inner * float(np.sum(weighted)) / N_MAPS ** fine
        rhs = 3.0 * float(np.sum(plain)) / N_MAPS ** fine
        ratio, diff = _cell_ratio(lhs, rhs, tol)
        rows.append({"word": "".join(map(str, word)) or "-", "lhs": lhs, "rhs": rhs, "ratio": ratio, "abs_diff": diff})
    return pd.DataFrame(rows)


def verify_prop_4_2_literal(f, m, depth, inner=1, exact=False):
    """The same comparison by literally composing d1_renormalized with delta2_balanced (small depths)."""
    rows = []
    for word in product(range(N_MAPS), repeat=m):
        lhs = d1_renormalized(lambda seg: delta2_at(f, seg, depth + inner, exact), word, depth)
        rhs = 3 * integrate_balanced(f, word, depth + inner, exact)
        rows.append({"word": "".join(map(str, word)) or "-", "lhs": lhs, "rhs": rhs})
    return pd.DataFrame(rows)


def laplacian_two_ratio(f, m, depth, inner=1):
    """Mean over the m-cells of d_1 delta_2 (f dmu) / (f dmu), expected to approach 3."""
    table = verify_prop_4_2(f, m, depth, inner)
    ratios = table["ratio"].dropna()
    return 3.0 * float(ratios.mean()) if len(ratios) else float("nan")


#######################################################################
# Kusuoka measure
#######################################################################


def delta2_prime_kusuoka(f, segment=None, depth=8, model=None):
    """lambda_+**-n times the sum of f dnu over the n-cells along the edge, for n = m .. depth.

    nu(c) comes from the harmonic extension energies of the model's basis and
    lambda_+ from the swap-symmetric sector of the derived A.
    """
    segment = EdgeSegment.bottom() if segment is None else EdgeSegment(*segment).check()
    check_depth(depth)
    model = derived_model() if model is None else model
    lam = float(spectral_growth(model).lambda_plus)
    mats = extension_matrices(N_DIM, LEVEL)
    rho = float(energy_renormalization(N_DIM, LEVEL))
    s, t = segment.edge
    letters = edge_sub_letters(OFFSETS, s, t)
    offsets = np.array([OFFSETS[a] for a in letters], dtype=np.int64)
    float_mats = [np.array(mats[a], dtype=float) for a in letters]

    origins = word_origin(segment.word, OFFSETS, LEVEL)[None, :]
    values = []
    for x, w in model.basis:
        y = np.array([x], dtype=float)
        for a in segment.word:
            y = y @ np.array(mats[a], dtype=float).T
        values.append((float(w), y))
    out = {}
    for n in range(segment.generation, depth + 1):
        if n > segment.generation:
            origins = (LEVEL * origins[:, None, :] + offsets[None, :, :]).reshape(-1, N_DIM + 1)
            values = [(w, np.stack([y @ m.T for m in float_mats], axis=1).reshape(-1, N_DIM + 1)) for w, y in values]
        nu = sum(w * rho ** n * _row_energies(y) for w, y in values)
        out[n] = float(np.sum(f(centroids(origins, n)) * nu)) / lam ** n
    return pd.Series(out, name="delta2_prime", dtype=float)


def successive_ratios(series):
    """s[n+1] / s[n] as a Series."""
    return (series / series.shift(1)).dropna()


#######################################################################
# Sample functions
#######################################################################


def _one(x):
    return np.ones(len(x))


def _first_coordinate(x):
    return x[:, 0]


def _bump(x):
    return 2.0 + np.cos(np.pi * x[:, 1]) + x[:, 0] * x[:, 2]


SAMPLE_FUNCTIONS = {"one": _one, "linear": _first_coordinate, "bump": _bump}
"""Vectorized functions on barycentric coordinates used by the measure checks and the CLI."""
