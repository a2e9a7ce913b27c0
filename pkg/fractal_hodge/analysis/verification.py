"""Verification suites: every check is recorded in a `VerificationReport`.
"""
from fractions import Fraction
from inspect import signature
from itertools import product
from math import comb
from time import time as get_time

import numpy as np

from .. import settings
from .. import logging as logg
from ..errors import FractalHodgeError, HodgeSolverError, ResourceCapError
from ..gasket import (build_graph, enumerate_cell_maps, cell_count, count_vertices, vertices_at_level_one,
                      count_vertices_closed_form_n2, junction_count, simplex_count, GasketTower)
from ..derham import (KForm, Chain, assemble_weights, assemble_d, assemble_delta, laplacian, inner_product,
                      boundary, parity_violations, verify_stokes, hodge_dimensions, hodge_decompose, is_connected)
from ..harmonic import (extension_rule, energy_renormalization, extend_one_form, harmonic_defects,
                        telescoping_defects, cycle_basis, cycles_independent, cycle_integral_matrix,
                        level_one_harmonic_basis, harmonic_one_basis, expected_dimension, orthogonality_violations,
                        localized_periods, cell_cycle_integrals)
from ..derham.operators import harmonic_space
from .. import kusuoka
from .report import VerificationReport

COUNTING_RANGE = range(2, 5)
COMPLEX_GRID = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]
HARMONIC_GRID = [(2, 2), (2, 3), (3, 2)]
QUOTED_RULES = {
    (2, 2): {(1, 1, 0): (Fraction(2, 5), Fraction(2, 5), Fraction(1, 5))},
    (2, 3): {(2, 1, 0): (Fraction(8, 15), Fraction(4, 15), Fraction(3, 15))},
    (3, 3): {(2, 1, 0, 0): (Fraction(28, 64), Fraction(14, 64), Fraction(11, 64), Fraction(11, 64))},
}
RENORMALIZATION = {(2, 2): Fraction(5, 3), (2, 3): Fraction(15, 7)}


def _graphs(grid, generations):
    for n, level in grid:
        for m in generations:
            try:
                yield n, level, m, build_graph(n, level, m)
            except ResourceCapError as err:
                logg.warn(f"skipping G_{level}^{{{n},{m}}}: {err}")


#######################################################################
# Counting
#######################################################################


def counting_suite(report, levels=COUNTING_RANGE, generations=(0, 1, 2)):
    for n, level in product(range(2, 7), repeat=2):
        report.check_equal(f"counting.maps.{n}.{level}", f"number of cell maps of SG_{level}^{n}",
                           len(enumerate_cell_maps(n, level)), comb(n + level - 1, n), suite="counting")
        report.check_equal(f"counting.maps_recursion.{n}.{level}", "N_l^n = N_l^{n-1} + N_{l-1}^n",
                           cell_count(n, level), cell_count(n - 1, level) + cell_count(n, level - 1), suite="counting")
    for level in range(2, 13):
        report.check_equal(f"counting.closed_form.{level}", "M_l^{2,1} by residue class",
                           count_vertices_closed_form_n2(level), comb(level + 2, 2), suite="counting")
    for n, level, m, graph in _graphs(product(levels, repeat=2), generations):
        key = f"{n}.{level}.{m}"
        report.check_equal(f"counting.vertices.{key}", f"vertices of G_{level}^{{{n},{m}}} vs recursion",
                           graph.num_vertices, count_vertices(n, level, m), suite="counting")
        if m == 1:
            report.check_equal(f"counting.level_one.{key}", "M_l^{n,1} = C(n+l, n)",
                               graph.num_vertices, vertices_at_level_one(n, level), suite="counting")
        classes = graph.classify_vertices()
        counts = {k: len(v) for k, v in classes.items()}
        expected = {k: junction_count(n, level, k, m) for k in range(1, n + 2) if junction_count(n, level, k, m)}
        report.check_equal(f"counting.junctions.{key}", "vertices per multiplicity class", counts, expected,
                           suite="counting")
        report.check_equal(f"counting.simplices.{key}", "simplices of all degrees",
                           sum(graph.num_simplices(k) for k in range(n + 1)), simplex_count(n, level, m),
                           suite="counting")


#######################################################################
# Complex identities
#######################################################################


def complex_suite(report, grid=COMPLEX_GRID, generations=(1, 2), n_chains=200, n_hodge=50, rng=None):
    rng = np.random.default_rng(settings.seed) if rng is None else rng
    for n, level, m, graph in logg.progress(list(_graphs(grid, generations)), desc="complex"):
        key = f"{n}.{level}.{m}"
        weights = assemble_weights(graph)
        for k in range(n):
            report.add_check(f"complex.dd.{key}.{k}", f"d_{k+1} d_{k} = 0",
                             (assemble_d(graph, k + 1) @ assemble_d(graph, k)).is_zero(), suite="complex")
        for k in range(1, n):
            report.add_check(f"complex.deltadelta.{key}.{k}", f"delta_{k} delta_{k+1} = 0",
                             (assemble_delta(graph, weights, k) @ assemble_delta(graph, weights, k + 1)).is_zero(),
                             suite="complex")
        for k in range(n):
            f = KForm.random_rational(graph, k + 1, rng)
            g = KForm.random_rational(graph, k, rng)
            lhs = inner_product(assemble_delta(graph, weights, k + 1).apply(f), g, weights)
            rhs = inner_product(f, assemble_d(graph, k).apply(g), weights)
            report.check_equal(f"complex.adjoint.{key}.{k}", f"<delta f, g>_{k} = <f, d g>_{k+1}", lhs, rhs,
                               suite="complex")
        report.check_equal(f"complex.parity.{key}", "signed sums over intermediate faces vanish",
                           len(parity_violations(graph)), 0, suite="complex")
        bad_stokes, bad_boundary = 0, 0
        for i in range(n_chains):
            k = 1 + i % n
            c = Chain.random(graph, k, rng)
            f = KForm.random_rational(graph, k - 1, rng)
            bad_stokes += not verify_stokes(f, c, graph).equal
            if k >= 2:
                bad_boundary += not boundary(boundary(c, graph), graph).is_zero()
        report.check_equal(f"complex.stokes.{key}", f"Stokes on {n_chains} random chains", bad_stokes, 0,
                           suite="complex")
        report.check_equal(f"complex.boundary.{key}", "boundary of a boundary vanishes", bad_boundary, 0,
                           suite="complex")
        lap0 = laplacian(graph, weights, 0)
        row_sums = [sum(r.values(), Fraction(0)) for r in lap0.rows()]
        report.add_check(f"complex.laplacian_rows.{key}", "-Delta_0 annihilates constants",
                         all(s == 0 for s in row_sums), suite="complex")
        dims = [hodge_dimensions(graph, weights, k) for k in range(n + 1)]
        report.add_check(f"complex.hodge_dims.{key}", "dim k-forms = rank d + rank delta + dim harmonic",
                         all(d["forms"] == d["rank_d"] + d["rank_delta"] + d["harmonic"] for d in dims),
                         suite="complex")
        report.check_equal(f"complex.euler.{key}", "alternating sum of harmonic dimensions vs of simplex counts",
                           sum((-1) ** d["degree"] * d["harmonic"] for d in dims),
                           sum((-1) ** k * graph.num_simplices(k) for k in range(n + 1)), suite="complex")
        report.add_check(f"complex.connected.{key}", "connected graph with one harmonic 0-form",
                         is_connected(graph) and dims[0]["harmonic"] == 1, suite="complex")
        worst = 0.0
        for _ in range(n_hodge):
            f = KForm(1, m, rng.standard_normal(graph.num_simplices(1)), exact=False)
            try:
                split = hodge_decompose(f, graph, weights)
            except HodgeSolverError as err:
                logg.warn(str(err))
                worst = float("inf")
                break
            worst = max(worst, split.reconstruction, split.orthogonality)
        report.add_check(f"complex.hodge.{key}", f"Hodge residuals on {n_hodge} random 1-forms", worst < 1e-10,
                         worst, 0.0, 1e-10, suite="complex")


#######################################################################
# Harmonic engine
#######################################################################


def harmonic_suite(report, grid=HARMONIC_GRID, generations=(1, 2)):
    for (n, level), quoted in QUOTED_RULES.items():
        rule = extension_rule(n, level)
        for point, row in quoted.items():
            report.check_equal(f"harmonic.rule.{n}.{level}", f"extension rule of SG_{level}^{n} at {point}",
                               tuple(rule.row(point)), row, suite="harmonic")
    for n, level in product(range(2, 5), repeat=2):
        report.check_equal(f"harmonic.rule_order.{n}.{level}", "rule rows positive, normalized and ordered",
                           extension_rule(n, level).violations(), [], suite="harmonic")
    for (n, level), rho in RENORMALIZATION.items():
        report.check_equal(f"harmonic.renormalization.{n}.{level}", "energy renormalization factor",
                           energy_renormalization(n, level), rho, suite="harmonic")

    for n, level in grid:
        tower = GasketTower(n, level)
        g1, g2 = tower[1], tower[2]
        w1, w2 = assemble_weights(g1), assemble_weights(g2)
        kernel = harmonic_space(g1, w1, 1, exact=True)
        cycles = cycle_basis(g1)
        report.check_equal(f"harmonic.cycles.{n}.{level}", "cycle basis size equals the harmonic dimension",
                           len(cycles), len(kernel), suite="harmonic")
        report.add_check(f"harmonic.cycles_independent.{n}.{level}", "cycles are independent modulo boundaries",
                         cycles_independent(cycles, g1), suite="harmonic")
        for j, h in enumerate(kernel):
            fine = extend_one_form(h, g1, g2, w1)
            report.check_equal(f"harmonic.extend.{n}.{level}.{j}", "extended form is harmonic",
                               harmonic_defects(fine, g2, w2), (0, 0), suite="harmonic")
            report.check_equal(f"harmonic.telescoping.{n}.{level}.{j}", "coarse edge values are sums of sub-edges",
                               telescoping_defects(h, fine, g1, g2), [], suite="harmonic")
            report.check_equal(f"harmonic.cell_cycles.{n}.{level}.{j}", "cycles inside a coarse cell integrate to 0",
                               [cell_cycle_integrals(fine, g2, (b,)) for b in range(g1.n_maps)],
                               [[0] * len(cycles)] * g1.n_maps, suite="harmonic")
        normalized = level_one_harmonic_basis(n, level, tower=tower)
        periods = cycle_integral_matrix(normalized, cycles.cycles)
        report.check_equal(f"harmonic.periods.{n}.{level}", "normalized period matrix is the identity",
                           periods, [[int(i == j) for j in range(len(periods))] for i in range(len(periods))],
                           suite="harmonic")
        for m in generations:
            key = f"{n}.{level}.{m}"
            try:
                basis = harmonic_one_basis(n, level, m, tower=tower)
            except FractalHodgeError as err:
                report.add_check(f"harmonic.basis.{key}", f"basis construction: {err}", False, suite="harmonic")
                continue
            graph = tower[m]
            report.check_equal(f"harmonic.dimension.{key}", "basis size vs M (N^m - 1) / (N - 1)", len(basis),
                               expected_dimension(n, level, m, len(kernel)), suite="harmonic")
            report.check_equal(f"harmonic.kernel_dimension.{key}", "basis size vs kernel dimension", len(basis),
                               len(harmonic_space(graph, assemble_weights(graph), 1)), suite="harmonic")
            report.check_equal(f"harmonic.orthogonal.{key}", "forms with different words are orthogonal",
                               orthogonality_violations(basis, graph), [], suite="harmonic")
            report.check_equal(f"harmonic.localized_periods.{key}", "period of h_{w,j} over F_w gamma_j",
                               localized_periods(basis, graph), [1] * len(basis), suite="harmonic")
    report.check_equal("harmonic.dimension_sg3", "harmonic 1-forms of G_3^{2,1}",
                       len(harmonic_space(build_graph(2, 3, 1), None, 1)), 3, suite="harmonic")


#######################################################################
# Kusuoka measure
#######################################################################


CITATION = "tabulated SG_3^2 transfer data"


def kusuoka_suite(report, depth=10, max_word=4, n_random=20, rng=None):
    rng = np.random.default_rng(settings.seed) if rng is None else rng
    e1, e2, e3, c, _ = kusuoka.derive_transfer()
    report.check_equal("kusuoka.C", "derived middle-cell map equals the tabulated C",
                       [list(r) for r in c], [list(r) for r in kusuoka.tables.PRINTED_C], suite="kusuoka")
    report.check_equal("kusuoka.C_rows", "rows of C sum to 2/5", [sum(r) for r in c], [Fraction(2, 5)] * 3,
                       suite="kusuoka")
    report.check_equal("kusuoka.swap_E", "E2 = P E1 P", kusuoka.swap_conjugate(e1), [list(r) for r in e2],
                       suite="kusuoka")
    report.check_equal("kusuoka.swap_E3", "E3 commutes with P", kusuoka.swap_conjugate(e3), [list(r) for r in e3],
                       suite="kusuoka")

    for x in [(1, 0, 0), (0, 1, -1), (2, -1, 5)]:
        oracle = kusuoka.brute_force_cell_energies(x, depth=2)
        model = kusuoka.derived_model(basis=(x,), normalize=False)
        bad = 0
        for i in range(6):
            v = list(model.e)
            if i in model.transfer:
                v = [sum(model.transfer[i][r][s] * v[s] for s in range(3)) for r in range(3)]
                bad += v != [oracle[(i, j)] for j in range(3)]
            bad += sum(kusuoka.energy_measure(x, (i, j)) != oracle[(i, j)] for j in range(6))
        report.check_equal(f"kusuoka.depth2.{x}", "transfer maps reproduce depth-2 cell energies", bad, 0,
                           suite="kusuoka")
        bad = 0
        for length in range(max_word + 1):
            for word in product(kusuoka.BOTTOM_LABELS, repeat=length):
                bad += model.cell_measure(word) != kusuoka.energy_measure(x, word)
        report.check_equal(f"kusuoka.cell_formula.{x}", f"(1 1 1)(I+C) E_w e vs direct energies, |w| <= {max_word}",
                           bad, 0, suite="kusuoka")

    bad = 0
    for _ in range(n_random):
        x = [Fraction(int(a), int(b)) for a, b in zip(rng.integers(-9, 10, 3), rng.integers(1, 8, 3))]
        whole = kusuoka.energy_measure(x, ())
        for length in range(1, max_word + 1):
            bad += whole != sum(kusuoka.energy_measure(x, w) for w in product(range(6), repeat=length))
    report.check_equal("kusuoka.additivity", f"nu_h(K) is the sum over cells, {n_random} random boundary values",
                       bad, 0, suite="kusuoka")

    model = kusuoka.derived_model()
    report.check_equal("kusuoka.total", "nu(K) = 2 for the normalized pair", model.omega_measure(0), 2,
                       suite="kusuoka")
    for n in range(0, 6):
        r = kusuoka.nu_omega_n(model, n)
        report.check_equal(f"kusuoka.omega.{n}", "nu(Omega_n) direct vs matrix power", r.direct, r.matrix,
                           suite="kusuoka")
    fit = kusuoka.two_term_fit(model)
    report.add_check("kusuoka.two_term", "two-term geometric fit of nu(Omega_n), n = 2..10",
                     fit.max_relative_residual < 1e-6, fit.max_relative_residual, 0.0, 1e-6, suite="kusuoka")
    growth = kusuoka.spectral_growth(model)
    report.check_close("kusuoka.trace", "trace(A) = sum of eigenvalues", float(sum(growth.eigenvalues.real)),
                       float(sum(growth.A[i][i] for i in range(3))), 1e-12 * float(abs(growth.A[1][1])) + 1e-12,
                       suite="kusuoka")
    report.add_check("kusuoka.independence", "nu does not depend on the orthonormal pair",
                     kusuoka.basis_independence([(1,), (1, 2), (3, 0, 5)]) < 1e-12, suite="kusuoka")
    for record in kusuoka.discrepancy_report(model):
        report.add_check(f"kusuoka.table.{record['entry']}", f"tabulated {record['entry']}", record["equal"],
                         record["printed"], record["derived"], erratum=True, citation=CITATION, suite="kusuoka")

    segment = kusuoka.EdgeSegment(1, (0,), (1, 2))
    report.check_equal("kusuoka.delta2_one", "delta_2(dmu) on a 1-edge is 1/3 at every depth",
                       list(kusuoka.delta2_balanced(lambda p: 1, segment, 5, exact=True)), [Fraction(1, 3)] * 5,
                       suite="kusuoka")
    literal = kusuoka.verify_prop_4_2_literal(lambda p: 1, 1, 2, exact=True)
    report.check_equal("kusuoka.prop42_exact", "d_1 delta_2 (dmu) = 3 dmu, exact at depth 2",
                       list(literal["lhs"]), list(literal["rhs"]), suite="kusuoka")
    for name, f in kusuoka.SAMPLE_FUNCTIONS.items():
        table = kusuoka.verify_prop_4_2(f, 1, depth)
        deviation = float(np.max(np.abs(table["ratio"] - 1)))
        tol = 1e-12 if name != "bump" else 1e-2
        report.add_check(f"kusuoka.prop42.{name}", f"d_1 delta_2 (f dmu) / 3 f dmu at depth {depth}",
                         deviation < tol, deviation, 0.0, tol, suite="kusuoka")
    seq = kusuoka.delta2_prime_kusuoka(kusuoka.SAMPLE_FUNCTIONS["one"], depth=depth, model=model)
    omega = [float(model.omega_measure(n)) / float(growth.lambda_plus) ** n for n in seq.index]
    report.check_close("kusuoka.delta2_prime", "delta_2' (dnu) on [q_1, q_2] = lambda_+^-n nu(Omega_n)",
                       seq.to_numpy(), omega, 1e-9 * max(omega), suite="kusuoka")


SUITES = {
    "counting": counting_suite,
    "complex": complex_suite,
    "harmonic": harmonic_suite,
    "kusuoka": kusuoka_suite,
}


def run_suite(name="all", report=None, **params):
    """Run one suite (or all of them) and return the report."""
    names = list(SUITES) if name == "all" else [name]
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite {unknown[0]!r}, choose from {['all'] + list(SUITES)}")
    report = VerificationReport(name) if report is None else report
    for s in names:
        logg.info(f"running the {s} suite", r=True)
        start = get_time()
        kwargs = {k: v for k, v in params.items() if k in signature(SUITES[s]).parameters}
        SUITES[s](report, **kwargs)
        report.time_suite(s, get_time() - start)
        logg.info(f"    finished {s}", time=True)
    logg.info(f"verification {report.summary()}")
    return report
