from fractions import Fraction

import numpy as np
import pytest

from fractal_hodge.errors import NotHarmonicError, WordLengthError, SingularSystemError
from fractal_hodge.gasket import GasketTower, build_graph
from fractal_hodge.derham import KForm, assemble_weights, harmonic_space, inner_product
from fractal_hodge.harmonic import (extension_rule, extension_matrices, energy_renormalization, boundary_energy,
                                    extend_zero_form, extend_one_form, harmonic_defects, telescoping_defects,
                                    cycle_basis, cycles_independent, cycle_integral_matrix, normalize_by_periods,
                                    level_one_harmonic_basis, harmonic_one_basis, expected_dimension, localize,
                                    orthogonality_violations, orthogonality_table, localized_periods,
                                    cell_cycle_integrals)

F = Fraction


@pytest.mark.parametrize("n, level, point, row", [
    (2, 2, (1, 1, 0), (F(2, 5), F(2, 5), F(1, 5))),
    (2, 3, (2, 1, 0), (F(8, 15), F(4, 15), F(3, 15))),
    (2, 3, (1, 1, 1), (F(1, 3), F(1, 3), F(1, 3))),
    (3, 3, (2, 1, 0, 0), (F(28, 64), F(14, 64), F(11, 64), F(11, 64))),
])
def test_extension_rules(n, level, point, row):
    assert tuple(extension_rule(n, level).row(point)) == row


@pytest.mark.parametrize("n, level", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)])
def test_rule_properties(n, level):
    assert extension_rule(n, level).violations() == []


def test_renormalization():
    assert energy_renormalization(2, 2) == F(5, 3)
    assert energy_renormalization(2, 3) == F(15, 7)


def test_extension_matrices_preserve_energy_up_to_rho():
    mats = extension_matrices(2, 3)
    x = [F(1), F(-2), F(5)]
    total = sum(boundary_energy([sum(m[r][s] * x[s] for s in range(3)) for r in range(3)]) for m in mats)
    assert energy_renormalization(2, 3) * total == boundary_energy(x)


def test_extend_zero_form():
    tower = GasketTower(2, 2)
    coarse, fine = tower[0], tower[1]
    f = KForm.zeros(coarse, 0)
    f.values[coarse.corner_ids()[0]] = F(1)
    h = extend_zero_form(f, coarse, fine)
    assert sorted(h.values) == [0, 0, F(1, 5), F(2, 5), F(2, 5), 1]


@pytest.mark.parametrize("n, level", [(2, 2), (2, 3), (3, 2)])
def test_extension_of_harmonic_one_forms(n, level):
    tower = GasketTower(n, level)
    g1, g2 = tower[1], tower[2]
    for h in harmonic_space(g1, None, 1, exact=True):
        fine = extend_one_form(h, g1, g2)
        assert harmonic_defects(fine, g2) == (0, 0)
        assert telescoping_defects(h, fine, g1, g2) == []
        for b in range(g1.n_maps):
            assert all(v == 0 for v in cell_cycle_integrals(fine, g2, (b,)))


def test_extension_rejects_non_harmonic():
    tower = GasketTower(2, 3)
    f = KForm.random_rational(tower[1], 1, np.random.default_rng(0))
    with pytest.raises(NotHarmonicError):
        extend_one_form(f, tower[1], tower[2])


def test_cycles_and_periods():
    g = build_graph(2, 3, 1)
    cycles = cycle_basis(g)
    assert len(cycles) == 3
    assert cycles_independent(cycles, g)
    base = level_one_harmonic_basis(2, 3)
    periods = cycle_integral_matrix(base, cycles.cycles)
    assert periods == [[int(i == j) for j in range(3)] for i in range(3)]
    with pytest.raises(SingularSystemError):
        normalize_by_periods(base[:2], cycles.cycles)


def test_float_period_normalization():
    g = build_graph(2, 3, 1)
    forms = [h.to_float() for h in harmonic_space(g, None, 1, exact=True)]
    cycles = cycle_basis(g).cycles
    out = normalize_by_periods(forms, cycles)
    assert np.allclose(cycle_integral_matrix(out, cycles), np.eye(3))


@pytest.mark.parametrize("n, level, m, expected", [(2, 2, 2, 4), (2, 3, 1, 3), (2, 3, 2, 21), (3, 2, 2, 15)])
def test_basis_dimension(n, level, m, expected):
    assert expected_dimension(n, level, m) == expected
    basis = harmonic_one_basis(n, level, m)
    assert len(basis) == expected


def test_basis_orthogonality_and_periods():
    tower = GasketTower(2, 3)
    basis = harmonic_one_basis(2, 3, 2, tower=tower)
    g = tower[2]
    assert orthogonality_violations(basis, g) == []
    assert localized_periods(basis, g) == [1] * len(basis)
    table = orthogonality_table(basis, g)
    assert table.shape == (21, 21)
    assert table.loc["w=-,j=0", "w=0,j=1"] == 0


def test_localized_form_vanishes_off_its_cell():
    tower = GasketTower(2, 3)
    h = level_one_harmonic_basis(2, 3, tower=tower)[0]
    local = localize(h, (4,), tower)
    g = tower[2]
    support = {s.word[0] for i, s in enumerate(g.simplices[1]) if local.values[i] != 0}
    assert support == {4}
    with pytest.raises(WordLengthError):
        localize(h, (4, 1), tower, generation=2)


def test_coarse_form_orthogonal_to_localized_form():
    tower = GasketTower(2, 2)
    basis = harmonic_one_basis(2, 2, 2, tower=tower)
    w = assemble_weights(tower[2])
    assert (basis[0].word, basis[1].word) == ((), (0,))
    assert inner_product(basis[0].form, basis[1].form, w) == 0
