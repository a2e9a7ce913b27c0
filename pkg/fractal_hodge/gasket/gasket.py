"""Graph approximations G_l^{n,m} of the level-l Sierpinski gasket in dimension n.

Points are stored by their barycentric numerators: a generation-m vertex is an
integer vector of length n+1 with entries >= 0 summing to l**m. A cell map F_a
sends x to (x + a) / l, so the cell of word w = w_1...w_m has origin
o(w) = l**(m-1) a_{w_1} + ... + a_{w_m} and corners o(w) + e_j.
"""
from itertools import combinations, product
from typing import NamedTuple, Tuple

import numpy as np

from .. import settings
from .. import logging as logg
from ..errors import ResourceCapError, UnknownVertexError, GenerationMismatchError
from .counting import simplex_count


Word = Tuple[int, ...]
CellOffset = Tuple[int, ...]


class Vertex(NamedTuple):
    coords: Tuple[int, ...]
    generation: int


class Simplex(NamedTuple):
    """An oriented k-simplex F_word([q_{i_0}, ..., q_{i_k}]) with i_0 < ... < i_k."""
    degree: int
    vertex_ids: Tuple[int, ...]
    word: Word
    local_face: Tuple[int, ...]


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_cell_maps(n, level):
    """Offsets of the N_l^n cell maps in lexicographic order.

    Arguments
    ---------
    n : int
        Dimension of the gasket.
    level : int
        Number of subdivisions per edge.

    Returns
    -------
    List of tuples of length n+1 with non-negative entries summing to level-1.
    """
    if n < 1 or level < 1:
        raise ValueError(f"need n >= 1 and level >= 1, got n={n}, level={level}")
    return list(_compositions(level - 1, n + 1))


def lattice_points(n, total):
    """Integer vectors of length n+1, entries >= 0, summing to `total`, lexicographic."""
    return list(_compositions(total, n + 1))


def word_origin(word, offsets, level):
    """Barycentric numerator of the origin of cell F_word."""
    origin = np.zeros(len(offsets[0]), dtype=np.int64)
    for letter in word:
        origin = level * origin + np.asarray(offsets[letter], dtype=np.int64)
    return origin


def edge_sub_letters(offsets, s, t):
    """Letters whose cells lie along the local edge (s, t) of their parent, ordered from s to t."""
    letters = [i for i, a in enumerate(offsets) if all(a[j] == 0 for j in range(len(a)) if j not in (s, t))]
    return sorted(letters, key=lambda i: -offsets[i][s])


def cells_along_edge(word, s, t, offsets, depth):
    """Words of length `depth` refining `word` whose cells share the edge (s, t) of F_word."""
    letters = edge_sub_letters(offsets, s, t)
    return [tuple(word) + tail for tail in product(letters, repeat=depth - len(word))]


def cells_inside(word, n_maps, depth):
    """Words of length `depth` with prefix `word`."""
    return [tuple(word) + tail for tail in product(range(n_maps), repeat=depth - len(word))]


class GasketGraph:
    """One generation of the graph approximation of SG_l^n.

    Built from the list of cell words; every table is derived deterministically:
    vertex ids follow the lexicographic order of coordinates and k-simplex ids for
    k >= 1 follow the order of (word, local_face).
    """

    def __init__(self, n, level, generation, words=None):
        self.n = n
        self.level = level
        self.generation = generation
        self.offsets = enumerate_cell_maps(n, level)
        self.n_maps = len(self.offsets)
        self._full = words is None
        if words is None:
            words = list(product(range(self.n_maps), repeat=generation))
        self.words = [tuple(w) for w in words]
        self.faces = {k: list(combinations(range(n + 1), k + 1)) for k in range(n + 1)}
        self._face_index = {k: {f: i for i, f in enumerate(fs)} for k, fs in self.faces.items()}

        self.origins = self._origins()
        corners = self.origins[:, None, :] + np.eye(n + 1, dtype=np.int64)[None, :, :]
        coords, inverse = np.unique(corners.reshape(-1, n + 1), axis=0, return_inverse=True)
        self.coords = coords
        self.cell_vertices = np.asarray(inverse).reshape(len(self.words), n + 1)
        self.multiplicity = np.bincount(self.cell_vertices.ravel(), minlength=len(coords))

        self.simplices = {0: self._vertex_simplices()}
        for k in range(1, n + 1):
            self.simplices[k] = [Simplex(k, tuple(int(v) for v in self.cell_vertices[c, list(face)]), word, face)
                                 for c, word in enumerate(self.words) for face in self.faces[k]]
        self._lookup = {}
        self.adjacency = self._adjacency()

    def _origins(self):
        origins = np.zeros((1, self.n + 1), dtype=np.int64)
        if self.generation == 0:
            return origins
        offsets = np.asarray(self.offsets, dtype=np.int64)
        if self._full:
            for _ in range(self.generation):
                origins = (self.level * origins[:, None, :] + offsets[None, :, :]).reshape(-1, self.n + 1)
            return origins
        return np.array([word_origin(w, self.offsets, self.level) for w in self.words], dtype=np.int64)

    def _vertex_simplices(self):
        table = [None] * len(self.coords)
        for c in range(len(self.words) - 1, -1, -1):
            for j in range(self.n, -1, -1):
                v = int(self.cell_vertices[c, j])
                table[v] = Simplex(0, (v,), self.words[c], (j,))
        return table

    def _adjacency(self):
        neighbors = [set() for _ in range(len(self.coords))]
        if self.n >= 1:
            for s in self.simplices[1]:
                a, b = s.vertex_ids
                neighbors[a].add(b)
                neighbors[b].add(a)
        return [tuple(sorted(x)) for x in neighbors]

    #######################################################################
    # Lookups
    #######################################################################

    @property
    def num_vertices(self):
        return len(self.coords)

    def num_simplices(self, k):
        return len(self.simplices[k])

    def vertex(self, i):
        self._check_vertex(i)
        return Vertex(tuple(int(x) for x in self.coords[i]), self.generation)

    def vertex_id(self, coords):
        key = tuple(int(x) for x in coords)
        if "coords" not in self._lookup:
            self._lookup["coords"] = {tuple(int(x) for x in c): i for i, c in enumerate(self.coords)}
        try:
            return self._lookup["coords"][key]
        except KeyError:
            raise UnknownVertexError(f"no vertex with coordinates {key} at generation {self.generation}")

    def cell_index(self, word):
        if len(word) != self.generation:
            raise GenerationMismatchError(f"word {word} has length {len(word)}, graph generation is {self.generation}")
        if "words" not in self._lookup:
            self._lookup["words"] = {w: i for i, w in enumerate(self.words)}
        return self._lookup["words"][tuple(word)]

    def face_id(self, word, face):
        """Id of the simplex F_word(face) for a face of degree >= 1."""
        k = len(face) - 1
        return self.cell_index(word) * len(self.faces[k]) + self._face_index[k][tuple(face)]

    def simplex_id(self, k, vertex_ids):
        """Id of the k-simplex with the given ordered vertex ids, or None."""
        if k == 0:
            return int(vertex_ids[0])
        if k not in self._lookup:
            self._lookup[k] = {s.vertex_ids: i for i, s in enumerate(self.simplices[k])}
        return self._lookup[k].get(tuple(vertex_ids))

    def corner_ids(self):
        """Ids of q_0, ..., q_n."""
        scale = self.level ** self.generation
        return [self.vertex_id(tuple(scale * int(i == j) for j in range(self.n + 1))) for i in range(self.n + 1)]

    def cell_corner_ids(self, word):
        return [int(v) for v in self.cell_vertices[self.cell_index(word)]]

    def degree(self, vertex):
        """Number of neighbours of a vertex id."""
        self._check_vertex(vertex)
        return len(self.adjacency[vertex])

    def _check_vertex(self, i):
        if not isinstance(i, (int, np.integer)) or i < 0 or i >= len(self.coords):
            raise UnknownVertexError(f"vertex id {i} not in graph with {len(self.coords)} vertices")

    def classify_vertices(self):
        """Partition of the vertex ids by multiplicity class; corners are class 1."""
        classes = {}
        corners = set(self.corner_ids())
        for v, mult in enumerate(self.multiplicity):
            k = 1 if v in corners else int(mult)
            classes.setdefault(k, []).append(v)
        return dict(sorted(classes.items()))

    def vertex_class(self):
        out = np.empty(len(self.coords), dtype=np.int64)
        for k, ids in self.classify_vertices().items():
            out[ids] = k
        return out

    def same_tables(self, other):
        """True when both graphs carry identical vertex and simplex tables."""
        if (self.n, self.level, self.generation) != (other.n, other.level, other.generation):
            return False
        if not np.array_equal(self.coords, other.coords):
            return False
        return all(self.simplices[k] == other.simplices[k] for k in range(self.n + 1))

    def __repr__(self):
        sizes = ", ".join(f"|E_{k}|={len(self.simplices[k])}" for k in range(self.n + 1))
        return f"GasketGraph(n={self.n}, level={self.level}, generation={self.generation}, {sizes})"

    #######################################################################
    # Refinement between generations
    #######################################################################

    def sub_edges(self, edge, finer):
        """Ids of the edges of `finer` (generation + 1) that subdivide `edge`, ordered tail to head."""
        if finer.generation != self.generation + 1:
            raise GenerationMismatchError("sub_edges needs the next generation")
        s, t = edge.local_face
        return [finer.face_id(edge.word + (b,), (s, t)) for b in edge_sub_letters(self.offsets, s, t)]


def build_graph(n, level, generation, cap=None):
    """Construct G_l^{n,m}.

    Arguments
    ---------
    n, level, generation : int
        Dimension, level and generation m >= 0.
    cap : int, optional
        Largest number of simplices allowed; defaults to `settings.simplex_cap`.

    Returns
    -------
    `GasketGraph`
    """
    if generation < 0:
        raise ValueError(f"generation must be >= 0, got {generation}")
    cap = settings.simplex_cap if cap is None else cap
    requested = simplex_count(n, level, generation)
    if requested > cap:
        raise ResourceCapError(requested, cap)
    graph = GasketGraph(n, level, generation)
    logg.hint(f"built {graph}")
    return graph


def classify_vertices(graph):
    return graph.classify_vertices()


def degree(graph, vertex):
    return graph.degree(vertex)


class GasketTower:
    """Lazily built graphs G_l^{n,0}, G_l^{n,1}, ... sharing one cap."""

    def __init__(self, n, level, cap=None):
        self.n = n
        self.level = level
        self.cap = cap
        self._graphs = {}

    def __getitem__(self, generation):
        if generation not in self._graphs:
            self._graphs[generation] = build_graph(self.n, self.level, generation, cap=self.cap)
        return self._graphs[generation]
