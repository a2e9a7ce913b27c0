"""Hodge decomposition of k-forms into exact, coexact and harmonic parts.
"""
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .. import settings
from ..errors import HodgeSolverError
from .forms import KForm, assemble_weights
from .operators import assemble_d, assemble_delta


class HodgeSplit(NamedTuple):
    exact: KForm
    coexact: KForm
    harmonic: KForm
    residual_norm: float
    reconstruction: float
    orthogonality: float
    condition: float


def _weighted_lstsq(matrix, target, sw, rtol=None):
    """argmin ||sw * (matrix x - target)|| with one step of iterative refinement.

    Singular values below `rtol` times the largest are dropped (default
    `settings.rank_rtol`), so rank-deficient d and delta give orthogonal projections.

    Returns the projection matrix @ x and the condition number of the kept part.
    """
    rtol = settings.rank_rtol if rtol is None else rtol
    if matrix.shape[1] == 0:
        return np.zeros_like(target), 1.0
    a = sw[:, None] * matrix
    b = sw * target
    try:
        x, _, rank, s = scipy.linalg.lstsq(a, b, cond=rtol, lapack_driver="gelsd")
        r = b - a @ x
        dx, _, _, _ = scipy.linalg.lstsq(a, r, cond=rtol, lapack_driver="gelsd")
        x = x + dx
    except (scipy.linalg.LinAlgError, ValueError) as err:
        cond = np.linalg.cond(a) if a.size else np.inf
        raise HodgeSolverError(f"least squares projection failed: {err}", condition_number=cond)
    cond = float(s[0] / s[rank - 1]) if rank > 0 else float("inf")
    return matrix @ x, cond


def hodge_decompose(f, graph, weights=None, tol=None):
    """Split f into d g + delta h + harmonic.

    Arguments
    ---------
    f : `KForm`
        Form of degree k on `graph`.
    graph : `GasketGraph`
    weights : `SimplexWeights`, optional
        Defaults to unit weights.
    tol : float, optional
        Largest accepted residual relative to max(1, ||f||), defaults to `settings.hodge_tol`.

    Returns
    -------
    `HodgeSplit` with float components, the reconstruction residual and the largest
    weighted inner product between two components.

    Raises `HodgeSolverError`, carrying the condition number, when the residual
    exceeds the tolerance.
    """
    tol = settings.hodge_tol if tol is None else tol
    weights = assemble_weights(graph) if weights is None else weights
    f.check(graph)
    k = f.degree
    target = f.to_float().values
    mu = weights.as_array(k)
    sw = np.sqrt(mu)

    d_prev = assemble_d(graph, k - 1).to_dense() if k > 0 else np.zeros((len(target), 0))
    delta_next = assemble_delta(graph, weights, k + 1).to_dense() if k < graph.n else np.zeros((len(target), 0))

    exact_part, cond_d = _weighted_lstsq(d_prev, target, sw)
    coexact_part, cond_delta = _weighted_lstsq(delta_next, target, sw)
    harmonic_part = target - exact_part - coexact_part

    def ip(a, b):
        return np.sum(mu * a * np.conj(b))

    reconstruction = float(np.sqrt(abs(ip(target - exact_part - coexact_part - harmonic_part,
                                          target - exact_part - coexact_part - harmonic_part))))
    orthogonality = float(max(abs(ip(exact_part, coexact_part)), abs(ip(exact_part, harmonic_part)),
                              abs(ip(coexact_part, harmonic_part))))
    residual = max(reconstruction, orthogonality)
    cond = max(cond_d, cond_delta)
    if residual > tol * max(1.0, float(np.sqrt(abs(ip(target, target))))):
        raise HodgeSolverError(f"Hodge residual {residual:.3e} above tolerance {tol:.1e} "
                               f"(reconstruction {reconstruction:.3e}, orthogonality {orthogonality:.3e})",
                               condition_number=cond)

    def form(values):
        return KForm(k, graph.generation, values, exact=False)

    return HodgeSplit(form(exact_part), form(coexact_part), form(harmonic_part), residual, reconstruction,
                      orthogonality, cond)
