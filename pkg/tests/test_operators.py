from fractions import Fraction

import numpy as np
import pytest
from pytest import approx

from fractal_hodge.errors import HodgeSolverError, InvalidDegreeError, ShapeMismatchError
from fractal_hodge.gasket import build_graph
from fractal_hodge.derham import (KForm, Chain, assemble_weights, assemble_d, assemble_delta, laplacian, energy,
                                  energy_form, inner_product, harmonic_space, hodge_dimensions, hodge_decompose,
                                  is_connected, spectrum, verify_stokes)

GRID = [(2, 2, 1), (2, 3, 1), (2, 2, 2), (3, 2, 1), (3, 3, 1)]


def test_d0_on_one_simplex():
    g = build_graph(2, 2, 0)
    d0 = assemble_d(g, 0)
    assert d0.shape == (3, 3)
    assert sorted(d0.entries.values()) == [-1, -1, -1, 1, 1, 1]
    assert all(sum(r.values()) == 0 for r in d0.rows())


@pytest.mark.parametrize("n, level, m", GRID)
def test_d_squared_and_delta_squared(n, level, m):
    g = build_graph(n, level, m)
    w = assemble_weights(g)
    for k in range(n):
        assert (assemble_d(g, k + 1) @ assemble_d(g, k)).is_zero()
    for k in range(1, n):
        assert (assemble_delta(g, w, k) @ assemble_delta(g, w, k + 1)).is_zero()


@pytest.mark.parametrize("n, level, m", GRID)
def test_adjointness(n, level, m):
    g = build_graph(n, level, m)
    w = assemble_weights(g, multipliers={k: list(range(1, g.n_maps + 1)) for k in range(n + 1)})
    rng = np.random.default_rng(0)
    for k in range(n):
        f = KForm.random_rational(g, k + 1, rng)
        h = KForm.random_rational(g, k, rng)
        assert inner_product(assemble_delta(g, w, k + 1).apply(f), h, w) == inner_product(f, assemble_d(g, k).apply(h), w)


def test_degree_errors():
    g = build_graph(2, 2, 1)
    with pytest.raises(InvalidDegreeError):
        assemble_d(g, 3)
    with pytest.raises(ShapeMismatchError):
        assemble_d(g, 1).apply(KForm.zeros(g, 0))
    with pytest.raises(ShapeMismatchError):
        assemble_d(g, 0) @ assemble_d(g, 0)


def test_laplacian_annihilates_constants():
    g = build_graph(2, 3, 2)
    lap = laplacian(g, assemble_weights(g), 0)
    assert all(sum(r.values(), Fraction(0)) == 0 for r in lap.rows())
    assert lap.apply(KForm.constant(g, 0)).is_zero()


def test_energy_polarization():
    g = build_graph(2, 3, 1)
    w = assemble_weights(g)
    rng = np.random.default_rng(1)
    f, h = KForm.random_rational(g, 1, rng), KForm.random_rational(g, 1, rng)
    assert energy(f + h, g, w) - energy(f - h, g, w) == 4 * energy_form(f, h, g, w)
    assert energy(f, g, w) == energy_form(f, f, g, w)


@pytest.mark.parametrize("n, level, m, expected", [(2, 2, 1, 1), (2, 2, 2, 4), (2, 3, 1, 3), (3, 2, 1, 3)])
def test_harmonic_one_forms(n, level, m, expected):
    g = build_graph(n, level, m)
    assert len(harmonic_space(g, None, 1)) == expected


@pytest.mark.parametrize("n, level, m", GRID)
def test_hodge_dimensions_and_euler(n, level, m):
    g = build_graph(n, level, m)
    w = assemble_weights(g)
    dims = [hodge_dimensions(g, w, k) for k in range(n + 1)]
    for d in dims:
        assert d["forms"] == d["rank_d"] + d["rank_delta"] + d["harmonic"]
    assert dims[0]["harmonic"] == 1 and is_connected(g)
    assert sum((-1) ** k * d["harmonic"] for k, d in enumerate(dims)) == \
        sum((-1) ** k * g.num_simplices(k) for k in range(n + 1))


def test_float_kernel_matches_exact(monkeypatch):
    from fractal_hodge import settings

    g = build_graph(2, 3, 2)
    monkeypatch.setattr(settings, "exact_column_limit", 10)
    floats = harmonic_space(g, None, 1)
    assert not floats[0].exact
    assert len(floats) == 21


@pytest.mark.parametrize("n, level, m, k", [(2, 3, 2, 1), (3, 2, 2, 1), (3, 2, 2, 2), (3, 2, 1, 2)])
def test_hodge_decomposition(n, level, m, k):
    g = build_graph(n, level, m)
    w = assemble_weights(g)
    rng = np.random.default_rng(2)
    for _ in range(5):
        f = KForm(k, m, rng.standard_normal(g.num_simplices(k)), exact=False)
        split = hodge_decompose(f, g, w)
        assert split.reconstruction < 1e-10
        assert split.orthogonality < 1e-10
        if k < n:
            assert assemble_d(g, k).apply(split.harmonic).is_zero(1e-9)
        assert assemble_delta(g, w, k).apply(split.harmonic).is_zero(1e-9)


def test_hodge_residual_over_tolerance_raises():
    g = build_graph(3, 2, 1)
    f = KForm(1, 1, np.ones(g.num_simplices(1)), exact=False)
    with pytest.raises(HodgeSolverError) as info:
        hodge_decompose(f, g, tol=-1.0)
    assert info.value.condition_number >= 1.0


def test_spectrum_starts_at_zero():
    g = build_graph(2, 3, 1)
    vals, vecs = spectrum(g, assemble_weights(g), 0, count=3)
    assert vals[0] == approx(0, abs=1e-10)
    assert np.ptp(vecs[:, 0]) == approx(0, abs=1e-10)
    assert vals[1] > 1e-6


def test_stokes_on_random_chains():
    g = build_graph(3, 2, 1)
    rng = np.random.default_rng(5)
    for k in (1, 2, 3):
        for _ in range(20):
            c = Chain.random(g, k, rng)
            check = verify_stokes(KForm.random_rational(g, k - 1, rng), c, g)
            assert check.equal and check.lhs == check.rhs
