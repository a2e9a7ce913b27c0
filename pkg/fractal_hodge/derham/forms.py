"""k-forms, chains and weights on G_l^{n,m}.
"""
from fractions import Fraction
from itertools import combinations
from math import prod

import numpy as np

from ..errors import (GenerationMismatchError, ShapeMismatchError, NonPositiveWeightError,
                      InvalidDegreeError)
from .exact_linalg import as_fraction


#######################################################################
# Orientation
#######################################################################


def sign_incidence(lower, upper):
    """Parity sgn(lower, upper) in {-1, 0, 1} of a k-simplex in a (k+1)-simplex.

    The sign is (-1)**p where p is the position (in the stored orientation of
    `upper`) of the vertex that `lower` omits, and 0 when `lower` is not a face.
    Simplices of different generations (cell words of different length) raise
    `GenerationMismatchError`.
    """
    if len(lower.word) != len(upper.word):
        raise GenerationMismatchError(f"simplices from generations {len(lower.word)} and {len(upper.word)}")
    if upper.degree != lower.degree + 1:
        return 0
    up = upper.vertex_ids
    for p in range(len(up)):
        if up[:p] + up[p + 1:] == lower.vertex_ids:
            return -1 if p % 2 else 1
    return 0


#######################################################################
# Weights
#######################################################################


class WeightSystem:
    """Base weights mu_k^0 on the initial faces and multipliers b_k^j per map.

    `base[k]` lists one positive value per k-face of the initial simplex (in the
    order of itertools.combinations) and `multipliers[k]` one value per cell map.
    Missing degrees default to 1.
    """

    def __init__(self, n, n_maps, base=None, multipliers=None):
        self.n = n
        self.n_maps = n_maps
        n_faces = {k: len(_faces(n, k)) for k in range(n + 1)}
        base = base or {}
        multipliers = multipliers or {}
        self.base = {k: [as_fraction(x) for x in base.get(k, [1] * n_faces[k])] for k in range(n + 1)}
        self.multipliers = {k: [as_fraction(x) for x in multipliers.get(k, [1] * n_maps)] for k in range(n + 1)}
        for k in range(n + 1):
            if len(self.base[k]) != n_faces[k]:
                raise ShapeMismatchError(f"degree {k} needs {n_faces[k]} base weights, got {len(self.base[k])}")
            if len(self.multipliers[k]) != n_maps:
                raise ShapeMismatchError(f"degree {k} needs {n_maps} multipliers, got {len(self.multipliers[k])}")
            for x in self.base[k] + self.multipliers[k]:
                if x <= 0:
                    raise NonPositiveWeightError(f"weights must be positive, got {x} in degree {k}")

    @classmethod
    def uniform(cls, graph):
        return cls(graph.n, graph.n_maps)

    def is_uniform(self):
        return all(len(set(v)) == 1 for v in self.multipliers.values())

    def word_factor(self, k, word):
        return prod((self.multipliers[k][j] for j in word), start=Fraction(1))

    def to_dict(self):
        return {"base": {str(k): [str(x) for x in v] for k, v in self.base.items()},
                "multipliers": {str(k): [str(x) for x in v] for k, v in self.multipliers.items()}}

    @classmethod
    def from_dict(cls, n, n_maps, d):
        base = {int(k): v for k, v in d.get("base", {}).items()}
        mult = {int(k): v for k, v in d.get("multipliers", {}).items()}
        return cls(n, n_maps, base, mult)


def _faces(n, k):
    return list(combinations(range(n + 1), k + 1))


class SimplexWeights:
    """mu_k evaluated on every simplex of one graph."""

    def __init__(self, graph, system, values):
        self.graph = graph
        self.system = system
        self.values = values

    def __getitem__(self, k):
        return self.values[k]

    def as_array(self, k):
        return np.array([float(x) for x in self.values[k]], dtype=float)


def assemble_weights(graph, base=None, multipliers=None):
    """Evaluate the weights on every simplex of `graph`.

    k >= 1: mu_k(F_w face) = b_k^w mu_k^0(face), with b_k^w the product over the letters.
    k = 0: mu_0(x) is the sum of b_0^w mu_0^0(q_j) over every (w, j) with F_w q_j = x.
    """
    system = base if isinstance(base, WeightSystem) else WeightSystem(graph.n, graph.n_maps, base, multipliers)
    values = {}
    face_index = {k: {f: i for i, f in enumerate(graph.faces[k])} for k in range(graph.n + 1)}
    for k in range(1, graph.n + 1):
        values[k] = [system.word_factor(k, s.word) * system.base[k][face_index[k][s.local_face]]
                     for s in graph.simplices[k]]
    mu0 = [Fraction(0)] * graph.num_vertices
    for c, word in enumerate(graph.words):
        factor = system.word_factor(0, word)
        for j in range(graph.n + 1):
            mu0[int(graph.cell_vertices[c, j])] += factor * system.base[0][j]
    values[0] = mu0
    return SimplexWeights(graph, system, values)


#######################################################################
# Forms and chains
#######################################################################


class KForm:
    """A degree-k cochain of one generation.

    Values are a list of Fractions when `exact`, otherwise a float or complex
    numpy array.
    """

    def __init__(self, degree, generation, values, exact=None):
        if exact is None:
            exact = not isinstance(values, np.ndarray) and all(isinstance(v, (int, Fraction)) for v in values)
        self.degree = degree
        self.generation = generation
        self.exact = exact
        if exact:
            self.values = [as_fraction(v) for v in values]
        else:
            self.values = np.asarray(values)
            if not np.iscomplexobj(self.values):
                self.values = self.values.astype(float)

    def __len__(self):
        return len(self.values)

    @classmethod
    def zeros(cls, graph, k, exact=True):
        size = graph.num_simplices(k)
        return cls(k, graph.generation, [Fraction(0)] * size if exact else np.zeros(size), exact=exact)

    @classmethod
    def constant(cls, graph, k, value=1):
        return cls(k, graph.generation, [as_fraction(value)] * graph.num_simplices(k), exact=True)

    @classmethod
    def indicator(cls, graph, k, simplex_id):
        f = cls.zeros(graph, k)
        f.values[simplex_id] = Fraction(1)
        return f

    @classmethod
    def random_rational(cls, graph, k, rng, denominator=7, size=10):
        nums = rng.integers(-size, size + 1, graph.num_simplices(k))
        dens = rng.integers(1, denominator + 1, graph.num_simplices(k))
        return cls(k, graph.generation, [Fraction(int(a), int(b)) for a, b in zip(nums, dens)], exact=True)

    def check(self, graph, k=None):
        k = self.degree if k is None else k
        if self.generation != graph.generation:
            raise GenerationMismatchError(f"form of generation {self.generation} on graph of generation {graph.generation}")
        if self.degree != k or len(self) != graph.num_simplices(k):
            raise ShapeMismatchError(f"expected a {k}-form with {graph.num_simplices(k)} values, "
                                     f"got degree {self.degree} with {len(self)}")
        return self

    def _compatible(self, other):
        if self.generation != other.generation:
            raise GenerationMismatchError(f"forms of generations {self.generation} and {other.generation}")
        if self.degree != other.degree or len(self) != len(other):
            raise ShapeMismatchError("forms differ in degree or length")

    def to_float(self):
        if not self.exact:
            return self
        return KForm(self.degree, self.generation, np.array([float(v) for v in self.values]), exact=False)

    def __add__(self, other):
        self._compatible(other)
        if self.exact and other.exact:
            return KForm(self.degree, self.generation, [a + b for a, b in zip(self.values, other.values)], exact=True)
        return KForm(self.degree, self.generation, self.to_float().values + other.to_float().values, exact=False)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if self.exact and isinstance(c, (int, Fraction)):
            return KForm(self.degree, self.generation, [c * v for v in self.values], exact=True)
        return KForm(self.degree, self.generation, c * self.to_float().values, exact=False)

    def __rmul__(self, c):
        return self.scale(c)

    def is_zero(self, tol=0.0):
        if self.exact:
            return all(v == 0 for v in self.values)
        return bool(np.all(np.abs(self.values) <= tol))

    def __eq__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        if (self.degree, self.generation, len(self)) != (other.degree, other.generation, len(other)):
            return False
        if self.exact and other.exact:
            return self.values == other.values
        return bool(np.array_equal(self.to_float().values, other.to_float().values))

    def __repr__(self):
        kind = "exact" if self.exact else "float"
        return f"KForm(degree={self.degree}, generation={self.generation}, size={len(self)}, {kind})"


class Chain:
    """A finite formal sum of k-simplices of one generation."""

    def __init__(self, degree, generation, coefficients=None):
        self.degree = degree
        self.generation = generation
        self.coefficients = {int(i): as_fraction(c) if isinstance(c, (int, Fraction, str)) else c
                             for i, c in (coefficients or {}).items() if c != 0}

    @classmethod
    def from_simplices(cls, degree, generation, ids, coefficients=None):
        coefficients = coefficients or [1] * len(ids)
        out = {}
        for i, c in zip(ids, coefficients):
            out[i] = out.get(i, 0) + c
        return cls(degree, generation, out)

    @classmethod
    def random(cls, graph, k, rng, support=6, size=5):
        n = graph.num_simplices(k)
        ids = rng.choice(n, size=min(support, n), replace=False)
        coefs = rng.integers(-size, size + 1, len(ids))
        return cls(k, graph.generation, {int(i): Fraction(int(c)) for i, c in zip(ids, coefs)})

    def __add__(self, other):
        if (self.degree, self.generation) != (other.degree, other.generation):
            raise ShapeMismatchError("chains differ in degree or generation")
        out = dict(self.coefficients)
        for i, c in other.coefficients.items():
            out[i] = out.get(i, 0) + c
        return Chain(self.degree, self.generation, out)

    def scale(self, c):
        return Chain(self.degree, self.generation, {i: c * v for i, v in self.coefficients.items()})

    def is_zero(self):
        return not self.coefficients

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return (self.degree, self.generation, self.coefficients) == (other.degree, other.generation, other.coefficients)

    def __repr__(self):
        return f"Chain(degree={self.degree}, generation={self.generation}, support={len(self.coefficients)})"


#######################################################################
# Operations
#######################################################################


def inner_product(f, g, weights):
    """<f, g> = sum_e mu_k(e) f(e) conj(g(e))."""
    f._compatible(g)
    if f.generation != weights.graph.generation:
        raise GenerationMismatchError("weights belong to another generation")
    mu = weights[f.degree]
    if len(mu) != len(f):
        raise ShapeMismatchError(f"{len(f)} values but {len(mu)} weights")
    if f.exact and g.exact:
        return sum((m * a * b for m, a, b in zip(mu, f.values, g.values)), Fraction(0))
    mu = weights.as_array(f.degree)
    return np.sum(mu * f.to_float().values * np.conj(g.to_float().values))


def norm_squared(f, weights):
    return inner_product(f, f, weights)


def boundary(c, graph):
    """Boundary of a k-chain, k >= 1."""
    if c.degree < 1:
        raise InvalidDegreeError("the boundary of a 0-chain is not defined")
    if c.generation != graph.generation:
        raise GenerationMismatchError(f"chain of generation {c.generation} on graph of generation {graph.generation}")
    out = {}
    for i, coef in c.coefficients.items():
        up = graph.simplices[c.degree][i].vertex_ids
        for p in range(len(up)):
            j = graph.simplex_id(c.degree - 1, up[:p] + up[p + 1:])
            out[j] = out.get(j, 0) + (-coef if p % 2 else coef)
    return Chain(c.degree - 1, c.generation, out)


def integrate(f, c):
    """Integral of a k-form over a k-chain, sum of a_e f(e)."""
    if f.degree != c.degree:
        raise ShapeMismatchError(f"cannot integrate a {f.degree}-form over a {c.degree}-chain")
    if f.generation != c.generation:
        raise GenerationMismatchError(f"form of generation {f.generation}, chain of generation {c.generation}")
    if f.exact:
        return sum((coef * f.values[i] for i, coef in c.coefficients.items()), Fraction(0))
    return sum((f.values[i] * float(coef) for i, coef in c.coefficients.items()), 0.0)


def parity_violations(graph):
    """Incident pairs (k-1, k+1) whose signed sum over intermediate k-faces is nonzero.

    Enumerates every (k+1)-simplex and each (k-1)-face of it directly, so it is
    independent of the operator matrices.
    """
    bad = []
    for k in range(1, graph.n):
        for upper in graph.simplices[k + 1]:
            up = upper.vertex_ids
            totals = {}
            for p in range(len(up)):
                mid_ids = up[:p] + up[p + 1:]
                mid = graph.simplices[k][graph.simplex_id(k, mid_ids)]
                s_up = sign_incidence(mid, upper)
                for q in range(len(mid_ids)):
                    low_ids = mid_ids[:q] + mid_ids[q + 1:]
                    low = graph.simplices[k - 1][graph.simplex_id(k - 1, low_ids)]
                    totals[low_ids] = totals.get(low_ids, 0) + sign_incidence(low, mid) * s_up
            bad.extend((k, low, upper.vertex_ids) for low, t in totals.items() if t != 0)
    return bad
