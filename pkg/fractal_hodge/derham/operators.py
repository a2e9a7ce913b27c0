"""de Rham operators d_k, delta_k and the Hodge Laplacian on G_l^{n,m}.
"""
from fractions import Fraction
from typing import NamedTuple

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .. import settings
from .. import logging as logg
from ..errors import InvalidDegreeError, ShapeMismatchError, GenerationMismatchError
from . import exact_linalg
from .forms import KForm, assemble_weights, boundary, integrate


class SparseOperator:
    """A linear map between two simplex tables, stored as (row, col) -> value.

    `row_space` and `col_space` are (degree, generation) pairs of the codomain and
    domain. Exact operators hold Fractions.
    """

    def __init__(self, name, shape, row_space, col_space, entries, exact=True):
        self.name = name
        self.shape = tuple(shape)
        self.row_space = tuple(row_space)
        self.col_space = tuple(col_space)
        self.exact = exact
        self.entries = {}
        for (r, c), v in entries.items():
            if not (0 <= r < self.shape[0] and 0 <= c < self.shape[1]):
                raise ShapeMismatchError(f"entry ({r}, {c}) outside shape {self.shape}")
            if v != 0:
                self.entries[(int(r), int(c))] = v
        self._rows = None

    def rows(self):
        """One sparse row {col: value} per row index."""
        if self._rows is None:
            rows = [dict() for _ in range(self.shape[0])]
            for (r, c), v in self.entries.items():
                rows[r][c] = v
            self._rows = rows
        return self._rows

    def triples(self):
        return sorted((r, c, v) for (r, c), v in self.entries.items())

    def is_zero(self):
        return not self.entries

    def transpose(self, name=None):
        return SparseOperator(name or f"{self.name}^T", self.shape[::-1], self.col_space, self.row_space,
                              {(c, r): v for (r, c), v in self.entries.items()}, exact=self.exact)

    def __add__(self, other):
        if self.shape != other.shape or self.row_space != other.row_space or self.col_space != other.col_space:
            raise ShapeMismatchError(f"cannot add {self.name} {self.shape} and {other.name} {other.shape}")
        out = dict(self.entries)
        for key, v in other.entries.items():
            out[key] = out.get(key, 0) + v
        return SparseOperator(f"{self.name}+{other.name}", self.shape, self.row_space, self.col_space, out,
                              exact=self.exact and other.exact)

    def __matmul__(self, other):
        if self.col_space != other.row_space or self.shape[1] != other.shape[0]:
            raise ShapeMismatchError(f"cannot compose {self.name} {self.shape} with {other.name} {other.shape}")
        right = other.rows()
        out = {}
        for i, row in enumerate(self.rows()):
            for k, a in row.items():
                for j, b in right[k].items():
                    out[(i, j)] = out.get((i, j), 0) + a * b
        return SparseOperator(f"{self.name}*{other.name}", (self.shape[0], other.shape[1]), self.row_space,
                              other.col_space, out, exact=self.exact and other.exact)

    def apply(self, f):
        """Image of a KForm living on the domain table."""
        if f.generation != self.col_space[1]:
            raise GenerationMismatchError(f"{self.name} acts on generation {self.col_space[1]}, got {f.generation}")
        if f.degree != self.col_space[0] or len(f) != self.shape[1]:
            raise ShapeMismatchError(f"{self.name} expects a {self.col_space[0]}-form of length {self.shape[1]}, "
                                     f"got degree {f.degree} of length {len(f)}")
        if f.exact and self.exact:
            out = [Fraction(0)] * self.shape[0]
            for (r, c), v in self.entries.items():
                if f.values[c] != 0:
                    out[r] += v * f.values[c]
            return KForm(self.row_space[0], self.row_space[1], out, exact=True)
        return KForm(self.row_space[0], self.row_space[1], self.to_scipy() @ f.to_float().values, exact=False)

    def to_scipy(self):
        if not self.entries:
            return sp.csr_matrix(self.shape, dtype=float)
        rows, cols, vals = zip(*self.triples())
        return sp.csr_matrix((np.array([float(v) for v in vals]), (rows, cols)), shape=self.shape)

    def to_dense(self):
        return self.to_scipy().toarray()

    def rank(self):
        if self.shape[1] < settings.exact_column_limit and self.exact:
            return exact_linalg.rank(self.rows())
        return exact_linalg.float_rank(self.to_dense())

    def __repr__(self):
        kind = "exact" if self.exact else "float"
        return f"SparseOperator({self.name}, shape={self.shape}, nnz={len(self.entries)}, {kind})"


def _check_degree(graph, k, low, high, what):
    if not low <= k <= high:
        raise InvalidDegreeError(f"{what} needs {low} <= k <= {high}, got k={k} (n={graph.n})")


def _weights(graph, weights):
    return assemble_weights(graph) if weights is None else weights


def assemble_d(graph, k):
    """Matrix of d_k: (d f)(e_{k+1}) = sum sgn(e_k, e_{k+1}) f(e_k); d_n is the zero map."""
    _check_degree(graph, k, 0, graph.n, "d_k")
    g = graph.generation
    if k == graph.n:
        return SparseOperator(f"d_{k}", (0, graph.num_simplices(k)), (k + 1, g), (k, g), {})
    entries = {}
    for i, upper in enumerate(graph.simplices[k + 1]):
        up = upper.vertex_ids
        for p in range(len(up)):
            j = graph.simplex_id(k, up[:p] + up[p + 1:])
            entries[(i, j)] = -1 if p % 2 else 1
    return SparseOperator(f"d_{k}", (graph.num_simplices(k + 1), graph.num_simplices(k)), (k + 1, g), (k, g),
                          {key: Fraction(v) for key, v in entries.items()})


def assemble_delta(graph, weights, k):
    """Matrix of delta_k = M_{k-1}^{-1} d_{k-1}^T M_k; delta_0 is the zero map."""
    _check_degree(graph, k, 0, graph.n, "delta_k")
    weights = _weights(graph, weights)
    g = graph.generation
    if k == 0:
        return SparseOperator("delta_0", (0, graph.num_simplices(0)), (-1, g), (0, g), {})
    d = assemble_d(graph, k - 1)
    mu_hi, mu_lo = weights[k], weights[k - 1]
    entries = {(c, r): v * mu_hi[r] / mu_lo[c] for (r, c), v in d.entries.items()}
    return SparseOperator(f"delta_{k}", (graph.num_simplices(k - 1), graph.num_simplices(k)), (k - 1, g), (k, g),
                          entries)


def laplacian(graph, weights, k):
    """-Delta_k = delta_{k+1} d_k + d_{k-1} delta_k (a single term at k = 0 and k = n)."""
    _check_degree(graph, k, 0, graph.n, "laplacian")
    weights = _weights(graph, weights)
    terms = []
    if k < graph.n:
        terms.append(assemble_delta(graph, weights, k + 1) @ assemble_d(graph, k))
    if k > 0:
        terms.append(assemble_d(graph, k - 1) @ assemble_delta(graph, weights, k))
    op = terms[0]
    for t in terms[1:]:
        op = op + t
    op.name = f"-laplacian_{k}"
    return op


def _sq_norm(f, weights):
    if len(f) == 0:
        return Fraction(0) if f.exact else 0.0
    mu = weights[f.degree]
    if f.exact:
        return sum((m * v * v for m, v in zip(mu, f.values)), Fraction(0))
    return float(np.sum(weights.as_array(f.degree) * np.abs(f.values) ** 2))


def energy_form(f, g, graph, weights=None):
    """E_k(f, g) = <d f, d g>_{k+1} + <delta f, delta g>_{k-1}."""
    weights = _weights(graph, weights)
    f.check(graph)
    g.check(graph, f.degree)
    k = f.degree
    total = Fraction(0) if f.exact and g.exact else 0.0
    ops = []
    if k < graph.n:
        ops.append(assemble_d(graph, k))
    if k > 0:
        ops.append(assemble_delta(graph, weights, k))
    for op in ops:
        a, b = op.apply(f), op.apply(g)
        mu = weights[a.degree]
        if a.exact and b.exact:
            total += sum((m * x * y for m, x, y in zip(mu, a.values, b.values)), Fraction(0))
        else:
            total += np.sum(weights.as_array(a.degree) * a.to_float().values * np.conj(b.to_float().values))
    return total


def energy(f, graph, weights=None):
    """E_k(f, f) = ||d f||^2 + ||delta f||^2."""
    weights = _weights(graph, weights)
    f.check(graph)
    k = f.degree
    total = Fraction(0) if f.exact else 0.0
    if k < graph.n:
        total += _sq_norm(assemble_d(graph, k).apply(f), weights)
    if k > 0:
        total += _sq_norm(assemble_delta(graph, weights, k).apply(f), weights)
    return total


def stacked_rows(graph, weights, k):
    """Rows of [d_k; delta_k]; the delta rows are scaled by mu_{k-1} to stay integral."""
    weights = _weights(graph, weights)
    rows = [dict(r) for r in assemble_d(graph, k).rows()]
    if k > 0:
        mu_lo = weights[k - 1]
        for j, r in enumerate(assemble_delta(graph, weights, k).rows()):
            rows.append({c: v * mu_lo[j] for c, v in r.items()})
    return rows


def harmonic_space(graph, weights, k, exact=None):
    """Basis of ker d_k and ker delta_k as a list of KForms.

    Exact rational kernel when the system has fewer than `settings.exact_column_limit`
    columns (or when `exact` is forced), otherwise an orthonormal float basis from
    the SVD with relative cut `settings.rank_rtol`.
    """
    _check_degree(graph, k, 0, graph.n, "harmonic_space")
    ncols = graph.num_simplices(k)
    exact = ncols < settings.exact_column_limit if exact is None else exact
    rows = stacked_rows(graph, weights, k)
    if exact:
        basis = exact_linalg.nullspace(rows, ncols)
        return [KForm(k, graph.generation, v, exact=True) for v in basis]
    dense = np.zeros((len(rows), ncols))
    for i, r in enumerate(rows):
        for c, v in r.items():
            dense[i, c] = float(v)
    kernel = exact_linalg.float_nullspace(dense)
    logg.hint(f"float kernel of [d_{k}; delta_{k}] on {ncols} columns: dimension {kernel.shape[1]}")
    return [KForm(k, graph.generation, kernel[:, j], exact=False) for j in range(kernel.shape[1])]


def hodge_dimensions(graph, weights, k):
    """rank d_{k-1}, rank delta_{k+1} and dim of the harmonic space in degree k."""
    weights = _weights(graph, weights)
    rank_d = assemble_d(graph, k - 1).rank() if k > 0 else 0
    rank_delta = assemble_delta(graph, weights, k + 1).rank() if k < graph.n else 0
    harmonic = len(harmonic_space(graph, weights, k))
    return {"degree": k, "forms": graph.num_simplices(k), "rank_d": rank_d, "rank_delta": rank_delta,
            "harmonic": harmonic}


def is_connected(graph):
    if graph.num_vertices <= 1:
        return True
    d0 = assemble_d(graph, 0).to_scipy()
    adjacency = abs(d0.T) @ abs(d0)
    n_components, _ = connected_components(adjacency, directed=False)
    return n_components == 1


def spectrum(graph, weights, k, count=None):
    """Lowest eigenvalues and eigenvectors of -Delta_k on the float path.

    -Delta_k is self-adjoint for the weighted inner product, so the eigenproblem
    is solved for the symmetric matrix M^{1/2} (-Delta_k) M^{-1/2}.
    """
    weights = _weights(graph, weights)
    lap = laplacian(graph, weights, k).to_dense()
    mu = weights.as_array(k)
    s = np.sqrt(mu)
    sym = (s[:, None] * lap) / s[None, :]
    sym = (sym + sym.T) / 2
    vals, vecs = scipy.linalg.eigh(sym)
    vecs = vecs / s[:, None]
    if count is not None:
        vals, vecs = vals[:count], vecs[:, :count]
    return vals, vecs


class StokesCheck(NamedTuple):
    lhs: object
    rhs: object
    equal: bool


def verify_stokes(f, c, graph):
    """Both sides of the integral identity: int_c d f = int_{boundary c} f."""
    if f.generation != c.generation:
        raise GenerationMismatchError(f"form of generation {f.generation}, chain of generation {c.generation}")
    if c.degree != f.degree + 1:
        raise ShapeMismatchError(f"a {f.degree}-form pairs with {f.degree + 1}-chains, got a {c.degree}-chain")
    f.check(graph)
    lhs = integrate(assemble_d(graph, f.degree).apply(f), c)
    rhs = integrate(f, boundary(c, graph))
    equal = lhs == rhs if f.exact else bool(np.isclose(lhs, rhs, rtol=1e-12, atol=1e-12))
    return StokesCheck(lhs, rhs, equal)
