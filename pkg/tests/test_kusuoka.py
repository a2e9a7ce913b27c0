from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from pytest import approx

from fractal_hodge import kusuoka
from fractal_hodge.errors import DepthCapError, UnsupportedGasketError, ShapeMismatchError
from fractal_hodge.kusuoka import growth, tables
from fractal_hodge.kusuoka.growth import check_depth

F = Fraction
RHO = F(15, 7)


@pytest.fixture(scope="module")
def model():
    return kusuoka.derived_model()


def test_label_to_map():
    assert kusuoka.LABEL_TO_MAP == (5, 2, 0, 1, 3, 4)
    assert kusuoka.to_map_word((0, 3)) == (5, 1)
    with pytest.raises(UnsupportedGasketError):
        kusuoka.to_map_word((7,))


def test_level_one_cell_energies():
    x = (1, 0, 0)
    assert [kusuoka.energy_measure(x, (i,)) for i in range(6)] == [RHO * F(v, 225) for v in (98, 26, 26, 8, 26, 26)]
    assert kusuoka.energy_measure(x, (0,)) == F(14, 15)


def test_measure_of_whole_gasket():
    assert kusuoka.kusuoka_measure(()) == 2
    assert sum(kusuoka.kusuoka_measure((i,)) for i in range(6)) == 2
    with pytest.raises(ValueError):
        kusuoka.kusuoka_measure((), basis=((1, 0, 0), (0, 1, 0)))


def test_transfer_matrices():
    e1, e2, e3, c, _ = kusuoka.derive_transfer()
    assert [list(r) for r in c] == [list(r) for r in tables.PRINTED_C]
    assert kusuoka.swap_conjugate(e1) == [list(r) for r in e2]
    assert kusuoka.swap_conjugate(e3) == [list(r) for r in e3]


def test_depth_two_triples_against_graph_oracle():
    x = (2, -1, 5)
    oracle = kusuoka.brute_force_cell_energies(x, depth=2)
    assert oracle == {w: kusuoka.energy_measure(x, w) for w in product(range(6), repeat=2)}
    triple = kusuoka.corner_triple(x)
    for i in (1, 2, 3):
        image = [sum(kusuoka.transfer_matrix(i)[r][s] * triple[s] for s in range(3)) for r in range(3)]
        assert image == [oracle[(i, j)] for j in range(3)]


def test_cell_formula_matches_direct_energies(model):
    for length in range(4):
        for word in product(kusuoka.BOTTOM_LABELS, repeat=length):
            assert model.cell_measure(word) == model.direct_measure(word)


def test_nu_omega(model):
    for n in range(5):
        r = kusuoka.nu_omega_n(model, n)
        assert r.direct == r.matrix
    assert model.omega_measure(0) == 2
    table = kusuoka.nu_omega_table(model, range(9))
    assert table["equal"].all()


def test_spectral_growth(model):
    growth = kusuoka.spectral_growth(model)
    eig = np.sort(np.linalg.eigvals(np.array(growth.A, dtype=float)).real)
    expected = np.sort([float(growth.lambda_plus), float(growth.lambda_minus), float(growth.lambda_anti)])
    assert eig == approx(expected, rel=1e-10)
    assert float(growth.lambda_plus) > abs(float(growth.lambda_minus))


def test_two_term_fit(model):
    fit = kusuoka.two_term_fit(model)
    assert fit.max_relative_residual < 1e-8
    assert fit.lambda_plus > abs(fit.lambda_minus)


def test_two_term_fit_uses_direct_oracle(model, monkeypatch):
    seen = []
    direct = growth.direct_omega

    def recording(m, depth, exact=None):
        seen.append((depth, exact))
        return direct(m, depth, exact)

    monkeypatch.setattr(growth, "direct_omega", recording)
    monkeypatch.setattr(type(model), "omega_measure", lambda self, n: pytest.fail("fit read the matrix formula"))
    growth.two_term_fit(model)
    assert seen == [(n, False) for n in range(2, 11)]


def test_discrepancy_report(model):
    report = kusuoka.discrepancy_report(model)
    records = {r["entry"]: r["equal"] for r in report}
    assert all(v for k, v in records.items() if k.startswith("C["))
    # the tabulated A is not the sum of the tabulated E's off the swap-symmetric block
    table_sum = {k[len("A vs sum of tabulated E"):]: v for k, v in records.items()
                 if k.startswith("A vs sum of tabulated E")}
    assert sorted(k for k, v in table_sum.items() if not v) == ["[0][1]", "[0][2]", "[1][0]", "[2][0]"]
    assert sorted(k for k, v in table_sum.items() if v) == ["[0][0]", "[1][1]", "[1][2]", "[2][1]", "[2][2]"]
    entry = next(r for r in report if r["entry"] == "A vs sum of tabulated E[0][1]")
    assert (entry["printed"], entry["derived"]) == ("94619/22500", "88739/22500")
    assert records["E2 = P E1 P"]
    assert records["lambda_anti of tabulated A"]
    assert not records["lambda_anti eigenvector"]
    assert not records["B vs restriction of tabulated A[1][1]"]
    assert not all(v for k, v in records.items() if k.startswith("E1["))


def test_basis_independence():
    assert kusuoka.basis_independence([(1,), (1, 2), (3, 0, 5), (4, 4)]) < 1e-12


def test_depth_cap(monkeypatch):
    with pytest.raises(DepthCapError):
        check_depth(13)
    with pytest.raises(DepthCapError):
        kusuoka.delta2_balanced(lambda p: 1, kusuoka.EdgeSegment.bottom(), 20)


def test_edge_segments():
    assert kusuoka.EdgeSegment.bottom() == (0, (), (1, 2))
    with pytest.raises(ShapeMismatchError):
        kusuoka.EdgeSegment(1, (0,), (0, 3)).check()


def test_balanced_integral_and_delta2():
    assert kusuoka.integrate_balanced(lambda p: 1, (), 3, exact=True) == 1
    assert kusuoka.integrate_balanced(kusuoka.SAMPLE_FUNCTIONS["one"], (2,), 4) == approx(1 / 6)
    s = kusuoka.delta2_balanced(lambda p: 1, kusuoka.EdgeSegment.bottom(), 4, exact=True)
    assert list(s) == [1] * 5
    s = kusuoka.delta2_balanced(lambda p: 1, (1, (0,), (1, 2)), 4, exact=True)
    assert list(s) == [F(1, 3)] * 4


def test_d1_counts_edges_inside_a_cell():
    # 3 * 6**n edges, scaled by 2**-n
    assert kusuoka.d1_renormalized(lambda seg: 1, (), 0) == 3
    assert kusuoka.d1_renormalized(lambda seg: 1, (), 1) == 9
    assert kusuoka.d1_renormalized(lambda seg: 1.0, (4,), 2) == approx(9 / 2)


def test_prop_4_2_constant_exact():
    table = kusuoka.verify_prop_4_2_literal(lambda p: 1, 1, 2, exact=True)
    assert list(table["lhs"]) == list(table["rhs"]) == [F(1, 2)] * 6


@pytest.mark.parametrize("name, tol", [("one", 1e-12), ("linear", 1e-9), ("bump", 1e-2)])
def test_prop_4_2_ratios(name, tol):
    table = kusuoka.verify_prop_4_2(kusuoka.SAMPLE_FUNCTIONS[name], 1, 3)
    assert len(table) == 6
    assert np.max(np.abs(table["ratio"] - 1)) < tol


@pytest.mark.slow
@pytest.mark.parametrize("name", ["linear", "bump"])
def test_prop_4_2_within_one_percent_at_depth_ten(name):
    table = kusuoka.verify_prop_4_2(kusuoka.SAMPLE_FUNCTIONS[name], 1, 10)
    assert len(table) == 6
    assert np.max(np.abs(table["ratio"] - 1)) < 1e-2


def test_prop_4_2_fast_path_matches_literal():
    f = kusuoka.SAMPLE_FUNCTIONS["bump"]
    fast = kusuoka.verify_prop_4_2(f, 1, 2)
    literal = kusuoka.verify_prop_4_2_literal(f, 1, 2)
    assert fast["lhs"].to_numpy() == approx(literal["lhs"].to_numpy(), rel=1e-12)
    assert fast["rhs"].to_numpy() == approx(literal["rhs"].to_numpy(), rel=1e-12)


def test_laplacian_two_ratio():
    assert kusuoka.laplacian_two_ratio(kusuoka.SAMPLE_FUNCTIONS["linear"], 1, 3) == approx(3)


def test_delta2_prime_converges(model):
    s = kusuoka.delta2_prime_kusuoka(kusuoka.SAMPLE_FUNCTIONS["one"], depth=8, model=model)
    lam = float(kusuoka.spectral_growth(model).lambda_plus)
    assert s[3] == approx(float(model.omega_measure(3)) / lam ** 3, rel=1e-10)
    ratios = kusuoka.successive_ratios(s)
    assert abs(ratios.iloc[-1] - 1) < 1e-2
    assert abs(ratios.iloc[-1] - 1) <= abs(ratios.iloc[0] - 1)
