"""Growth of nu(Omega_n), eigen-data of A = E_1 + E_2 + E_3 and the comparison with tabulated values.
"""
from fractions import Fraction
from typing import NamedTuple

import numpy as np
import pandas as pd
import sympy

from .. import settings
from .. import logging as logg
from ..errors import DepthCapError
from ..derham import exact_linalg
from ..harmonic import extension_matrices, energy_renormalization, boundary_energy
from . import tables
from .energy import BOTTOM_LABELS, N_DIM, LEVEL, to_map_word, derived_model, swap_conjugate

EXACT_DEPTH = 6
"""Direct sums over at most 3**EXACT_DEPTH cells are done over the rationals."""


class NuOmega(NamedTuple):
    depth: int
    direct: object
    matrix: object


class SpectralGrowth(NamedTuple):
    A: tuple
    B: tuple
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    lambda_anti: Fraction
    anti_vector: tuple
    lambda_plus: sympy.Expr
    lambda_minus: sympy.Expr


class TwoTermFit(NamedTuple):
    a: float
    b: float
    lambda_plus: float
    lambda_minus: float
    max_relative_residual: float


def check_depth(depth):
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    if depth > settings.depth_cap:
        raise DepthCapError(depth, settings.depth_cap)


def _row_energies(ys):
    return (ys[:, 0] - ys[:, 1]) ** 2 + (ys[:, 0] - ys[:, 2]) ** 2 + (ys[:, 1] - ys[:, 2]) ** 2


def direct_omega(model, depth, exact=None):
    """nu(Omega_n) by summing the energies of all 3**n cells F_w, w over the bottom labels."""
    check_depth(depth)
    exact = depth <= EXACT_DEPTH if exact is None else exact
    mats = extension_matrices(N_DIM, LEVEL)
    rho = energy_renormalization(N_DIM, LEVEL)
    letters = to_map_word(BOTTOM_LABELS)
    if exact:
        total = Fraction(0)
        for x, w in model.basis:
            ys = [list(x)]
            for _ in range(depth):
                ys = [exact_linalg.matvec(mats[a], y) for y in ys for a in letters]
            total += w * rho ** depth * sum((boundary_energy(y) for y in ys), Fraction(0))
        return total
    float_mats = [np.array(mats[a], dtype=float) for a in letters]
    total = 0.0
    for x, w in model.basis:
        ys = np.array([x], dtype=float)
        for _ in range(depth):
            ys = np.concatenate([ys @ m.T for m in float_mats])
        total += float(w) * float(rho) ** depth * float(np.sum(_row_energies(ys)))
    return total


def nu_omega_n(model, depth, exact=None):
    """nu(Omega_n) by direct enumeration and by (1 1 1)(I + C) A**n e."""
    direct = direct_omega(model, depth, exact)
    matrix = model.omega_measure(depth)
    if isinstance(direct, float):
        matrix = float(matrix)
    return NuOmega(depth, direct, matrix)


def nu_omega_table(model, depths):
    """DataFrame with the direct and matrix values of nu(Omega_n) and successive ratios."""
    rows = []
    for n in logg.progress(list(depths), desc="nu(Omega_n)"):
        r = nu_omega_n(model, n)
        rows.append({"depth": n, "direct": float(r.direct), "matrix": float(r.matrix),
                     "equal": r.direct == r.matrix if not isinstance(r.direct, float)
                     else bool(np.isclose(r.direct, r.matrix, rtol=1e-10))})
    table = pd.DataFrame(rows).set_index("depth")
    table["ratio"] = table["matrix"] / table["matrix"].shift(1)
    return table


def _sym(m):
    return sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in m])


def symmetric_restriction(a):
    """Matrix of A on the vectors (c, d, d) in the basis (1, 0, 0), (0, 1, 1)."""
    return ((a[0][0], a[0][1] + a[0][2]), (a[1][0], a[1][1] + a[1][2]))


def spectral_growth(model=None):
    """Eigen-data of A and of its restriction to the swap-symmetric vectors."""
    model = derived_model() if model is None else model
    a = tuple(tuple(Fraction(v) for v in row) for row in model.A)
    b = symmetric_restriction(a)
    vals, vecs = np.linalg.eig(np.array(a, dtype=float))
    order = np.argsort(-vals.real)
    lambda_anti = a[1][1] - a[1][2]
    anti = (0, 1, -1)
    image = exact_linalg.matvec(a, anti)
    if image != [lambda_anti * v for v in anti]:
        logg.warn(f"(0, 1, -1) is not an eigenvector of A from the {model.source} matrices")
    roots = sorted(_sym(b).eigenvals(), key=lambda r: float(sympy.re(r)), reverse=True)
    return SpectralGrowth(a, b, vals[order], vecs[:, order], lambda_anti, anti, roots[0], roots[-1])


def two_term_fit(model=None, depths=range(2, 11)):
    """Least-squares fit of nu(Omega_n) = a lambda_+^n + b lambda_-^n over `depths`.

    nu(Omega_n) comes from the direct sum over the 3**n bottom-edge cells (float
    path), the eigenvalues from the swap-symmetric block of A.
    """
    model = derived_model() if model is None else model
    growth = spectral_growth(model)
    lp, lm = float(growth.lambda_plus), float(growth.lambda_minus)
    depths = np.array(list(depths))
    values = np.array([direct_omega(model, int(n), exact=False) for n in depths])
    design = np.stack([lp ** depths, lm ** depths], axis=1)
    (a, b), *_ = np.linalg.lstsq(design, values, rcond=None)
    residual = np.max(np.abs(design @ np.array([a, b]) - values) / np.abs(values))
    return TwoTermFit(float(a), float(b), lp, lm, float(residual))


#######################################################################
# Comparison with tabulated values
#######################################################################


def _entry(name, printed, derived, equal=None):
    if equal is None:
        equal = printed == derived
    return {"entry": name, "printed": str(printed), "derived": str(derived), "equal": bool(equal)}


def _matrix_entries(name, printed, derived):
    return [_entry(f"{name}[{i}][{j}]", printed[i][j], derived[i][j])
            for i in range(len(printed)) for j in range(len(printed[0]))]


def _same_number(a, b):
    return sympy.simplify(sympy.sympify(a) - sympy.sympify(b)) == 0


def discrepancy_report(derived=None):
    """One record {entry, printed, derived, equal} per tabulated value.

    Besides printed-vs-derived, it records the internal consistency of the table:
    A against E_1 + E_2 + E_3, B against A, and the printed eigenvalues against
    those of the printed A.
    """
    derived = derived_model() if derived is None else derived
    printed_a = tuple(tuple(sum(m[r][s] for m in (tables.PRINTED_E1, tables.PRINTED_E2, tables.PRINTED_E3))
                            for s in range(3)) for r in range(3))
    records = []
    records += _matrix_entries("E1", tables.PRINTED_E1, derived.E1)
    records += _matrix_entries("E2", tables.PRINTED_E2, derived.E2)
    records += _matrix_entries("E3", tables.PRINTED_E3, derived.E3)
    records += _matrix_entries("C", tables.PRINTED_C, derived.c)
    records += _matrix_entries("A", tables.PRINTED_A, derived.A)
    records += _matrix_entries("A vs sum of tabulated E", tables.PRINTED_A, printed_a)
    records += _matrix_entries("B vs restriction of tabulated A", tables.PRINTED_B,
                               symmetric_restriction(tables.PRINTED_A))
    records += _matrix_entries("B", tables.PRINTED_B, symmetric_restriction(derived.A))

    growth = spectral_growth(derived)
    records.append(_entry("lambda_anti", tables.PRINTED_LAMBDA_ANTI, growth.lambda_anti))
    records.append(_entry("lambda_anti of tabulated A", tables.PRINTED_LAMBDA_ANTI,
                          tables.PRINTED_A[1][1] - tables.PRINTED_A[1][2]))
    records.append(_entry("lambda_anti eigenvector", tables.PRINTED_LAMBDA_ANTI_VECTOR, growth.anti_vector))
    records.append(_entry("lambda_plus", tables.PRINTED_LAMBDA_PLUS, growth.lambda_plus,
                          _same_number(tables.PRINTED_LAMBDA_PLUS, growth.lambda_plus)))
    records.append(_entry("lambda_minus", tables.PRINTED_LAMBDA_MINUS, growth.lambda_minus,
                          _same_number(tables.PRINTED_LAMBDA_MINUS, growth.lambda_minus)))

    tab = spectral_growth(_TabulatedA())
    records.append(_entry("lambda_plus of tabulated A", tables.PRINTED_LAMBDA_PLUS, tab.lambda_plus,
                          _same_number(tables.PRINTED_LAMBDA_PLUS, tab.lambda_plus)))
    records.append(_entry("lambda_minus of tabulated A", tables.PRINTED_LAMBDA_MINUS, tab.lambda_minus,
                          _same_number(tables.PRINTED_LAMBDA_MINUS, tab.lambda_minus)))
    printed_sum = sympy.sympify(tables.PRINTED_LAMBDA_PLUS) + sympy.sympify(tables.PRINTED_LAMBDA_MINUS) \
        + sympy.Rational(tables.PRINTED_LAMBDA_ANTI.numerator, tables.PRINTED_LAMBDA_ANTI.denominator)
    trace = sum(tables.PRINTED_A[i][i] for i in range(3))
    records.append(_entry("trace of tabulated A vs sum of tabulated eigenvalues", sympy.simplify(printed_sum), trace,
                          _same_number(printed_sum, sympy.Rational(trace.numerator, trace.denominator))))
    printed_swap = swap_conjugate(tables.PRINTED_E1) == [list(r) for r in tables.PRINTED_E2]
    derived_swap = swap_conjugate(derived.E1) == [list(r) for r in derived.E2]
    records.append(_entry("E2 = P E1 P", printed_swap, derived_swap, printed_swap and derived_swap))
    n_bad = sum(not r["equal"] for r in records)
    logg.info(f"discrepancy report: {n_bad} of {len(records)} tabulated entries differ")
    return records


class _TabulatedA:
    """Stand-in model exposing the tabulated A to `spectral_growth`."""
    source = "printed"
    A = tables.PRINTED_A
