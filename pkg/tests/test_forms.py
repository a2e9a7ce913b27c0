from fractions import Fraction

import numpy as np
import pytest

from fractal_hodge.errors import GenerationMismatchError, ShapeMismatchError, NonPositiveWeightError, InvalidDegreeError
from fractal_hodge.gasket import build_graph
from fractal_hodge.derham import (KForm, Chain, WeightSystem, assemble_weights, sign_incidence, inner_product,
                                  norm_squared, boundary, integrate, parity_violations)


@pytest.fixture
def sg2():
    return build_graph(2, 2, 1)


def test_sign_incidence():
    g = build_graph(2, 2, 0)
    tri = g.simplices[2][0]
    edges = g.simplices[1]
    # faces (0,1), (0,2), (1,2) omit vertex 2, 1, 0
    assert [sign_incidence(e, tri) for e in edges] == [1, -1, 1]
    assert sign_incidence(g.simplices[0][0], tri) == 0
    fine_edge = build_graph(2, 2, 1).simplices[1][0]
    with pytest.raises(GenerationMismatchError):
        sign_incidence(fine_edge, tri)


def test_boundary_of_triangle():
    g = build_graph(2, 2, 0)
    c = Chain.from_simplices(2, 0, [0])
    assert boundary(c, g) == Chain(1, 0, {0: 1, 1: -1, 2: 1})
    assert boundary(boundary(c, g), g).is_zero()
    with pytest.raises(InvalidDegreeError):
        boundary(Chain(0, 0, {0: 1}), g)


def test_form_arithmetic(sg2):
    f = KForm.constant(sg2, 1, 2)
    g = KForm.indicator(sg2, 1, 4)
    h = f - g
    assert h.values[4] == 1 and h.values[0] == 2
    assert (Fraction(1, 2) * f).values == [Fraction(1)] * sg2.num_simplices(1)
    assert (f - f).is_zero()
    assert not f.to_float().exact
    assert f.to_float() == f


def test_form_checks(sg2):
    f = KForm.zeros(sg2, 1)
    with pytest.raises(ShapeMismatchError):
        f.check(sg2, 0)
    with pytest.raises(GenerationMismatchError):
        f + KForm.zeros(build_graph(2, 2, 2), 1)


def test_random_rational_is_seeded(sg2):
    a = KForm.random_rational(sg2, 1, np.random.default_rng(3))
    b = KForm.random_rational(sg2, 1, np.random.default_rng(3))
    assert a == b and a.exact


def test_uniform_weights(sg2):
    w = assemble_weights(sg2)
    corners = set(sg2.corner_ids())
    assert all(w[0][v] == (1 if v in corners else 2) for v in range(sg2.num_vertices))
    assert set(w[1]) == {1} and set(w[2]) == {1}


def test_weight_multipliers(sg2):
    w = assemble_weights(sg2, multipliers={1: [2, 3, 5]})
    assert [w[1][sg2.face_id((b,), (0, 1))] for b in range(3)] == [2, 3, 5]
    with pytest.raises(NonPositiveWeightError):
        WeightSystem(2, 3, multipliers={1: [1, 0, 1]})
    with pytest.raises(ShapeMismatchError):
        WeightSystem(2, 3, base={1: [1, 1]})


def test_inner_product_and_integral(sg2):
    w = assemble_weights(sg2)
    f = KForm.constant(sg2, 1, 3)
    assert inner_product(f, KForm.indicator(sg2, 1, 2), w) == 3
    assert norm_squared(f, w) == 9 * sg2.num_simplices(1)
    c = Chain(1, 1, {0: 2, 5: -1})
    assert integrate(f, c) == 3
    with pytest.raises(ShapeMismatchError):
        integrate(KForm.zeros(sg2, 0), c)


@pytest.mark.parametrize("n, level, m", [(2, 3, 1), (3, 2, 1), (3, 3, 1), (4, 2, 1)])
def test_parity(n, level, m):
    assert parity_violations(build_graph(n, level, m)) == []
