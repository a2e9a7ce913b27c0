"""Command line entry point: fractal-hodge <generate|operators|verify|basis|spectrum|extend|kusuoka>.
"""
import argparse
import os
import sys
from itertools import product

import numpy as np
import pandas as pd

from . import settings
from . import logging as logg
from . import io
from .errors import FractalHodgeError, InvalidDegreeError, MalformedDocumentError
from .gasket import build_graph, GasketTower
from .derham import assemble_weights, assemble_d, assemble_delta, laplacian, spectrum
from .harmonic import harmonic_one_basis, localized_periods, extend_zero_form, extend_one_form
from .analysis import run_suite, SUITES
from . import kusuoka
from .kusuoka.growth import check_depth

KUSUOKA_TABLES = ("measure", "omega", "growth", "errata", "prop42", "delta2")


def _graph_args(p, gen=True):
    p.add_argument("-n", "--dim", type=int, default=2, help="dimension n of the gasket")
    p.add_argument("-l", "--level", type=int, default=3, help="level l (subdivisions per edge)")
    if gen:
        p.add_argument("-m", "--gen", type=int, default=1, help="generation m")


def build_parser():
    parser = argparse.ArgumentParser("fractal-hodge", description="Discrete Hodge theory on level-l Sierpinski gaskets")
    parser.add_argument("--cap", type=int, default=None, help="largest number of simplices (FRACTAL_HODGE_CAP)")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--verbosity", type=int, default=None, help="0=errors, 1=warnings, 2=info, 3=hints")
    parser.add_argument("--logfile", type=str, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write the graph document of G_l^{n,m}")
    _graph_args(p)
    p.add_argument("-o", "--out", type=str, required=True)

    p = sub.add_parser("operators", help="export d_k, delta_k and -Delta_k")
    p.add_argument("-i", "--input", type=str, default=None, help="graph document (default: build from --dim/--level/--gen)")
    _graph_args(p)
    p.add_argument("-k", "--degree", type=int, default=0)
    p.add_argument("-o", "--out", type=str, default="operators")
    p.add_argument("--format", choices=("mm", "csv", "json"), default="mm")

    p = sub.add_parser("verify", help="run verification suites and write the report")
    p.add_argument("suite", nargs="?", default="all", choices=["all"] + list(SUITES))
    p.add_argument("--depth", type=int, default=10, help="depth of the measure checks")
    p.add_argument("-o", "--out", type=str, default=None, help="report folder (default: settings.writedir)")

    p = sub.add_parser("basis", help="export the localized harmonic 1-form basis")
    _graph_args(p)
    p.add_argument("-o", "--out", type=str, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("spectrum", help="lowest eigenvalues of -Delta_k")
    _graph_args(p)
    p.add_argument("-k", "--degree", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("-o", "--out", type=str, default=None)

    p = sub.add_parser("extend", help="extend a 0-form or a harmonic 1-form one generation")
    p.add_argument("-i", "--input", type=str, required=True, help="form document")
    p.add_argument("-o", "--out", type=str, required=True)

    p = sub.add_parser("kusuoka", help="measure tables on SG_3^2")
    p.add_argument("table", choices=KUSUOKA_TABLES)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--gen", type=int, default=1, help="cell generation of the prop42 table")
    p.add_argument("--measure", choices=("nu", "mu"), default="mu")
    p.add_argument("--function", choices=list(kusuoka.SAMPLE_FUNCTIONS), default="one")
    p.add_argument("--source", choices=("derived", "printed"), default="derived")
    p.add_argument("-o", "--out", type=str, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def _configure(args):
    if args.verbosity is not None:
        settings.verbosity = args.verbosity
    if args.logfile is not None:
        settings.logfile = args.logfile
    if args.seed is not None:
        settings.seed = args.seed
    if args.cap is not None:
        settings.simplex_cap = args.cap


def _emit(df, out, fmt="csv"):
    if out is None:
        logg.info(df.to_string())
    elif fmt == "json":
        io.write_text(out, df.to_json(orient="records", indent=1) + "\n")
    else:
        io.write_table(df, out)


#######################################################################
# Commands
#######################################################################


def cmd_generate(args):
    graph = build_graph(args.dim, args.level, args.gen)
    io.write_graph(graph, args.out)
    return 0


def cmd_operators(args):
    if args.input is not None:
        graph, weights = io.read_graph(args.input)
    else:
        graph = build_graph(args.dim, args.level, args.gen)
        weights = assemble_weights(graph)
    if args.format == "mm":
        io.export_operators(graph, weights, args.degree, args.out)
        return 0
    ops = {f"d_{args.degree}": assemble_d(graph, args.degree),
           f"delta_{args.degree}": assemble_delta(graph, weights, args.degree),
           f"laplacian_{args.degree}": laplacian(graph, weights, args.degree)}
    for name, op in ops.items():
        table = pd.DataFrame(op.triples(), columns=["row", "col", "value"])
        table["value"] = table["value"].astype(str)
        _emit(table, os.path.join(args.out, f"{name}.{args.format}"), args.format)
    return 0


def cmd_verify(args):
    report = run_suite(args.suite, depth=args.depth)
    if args.out is not None:
        report.save_path = args.out
    report.save()
    for _, row in report.errata.iterrows():
        logg.hint(f"erratum {row['id']}: tabulated {row['lhs']} vs derived {row['rhs']}")
    if not report.passed:
        logg.error(f"{len(report.failures)} checks failed")
        return 1
    return 0


def cmd_basis(args):
    tower = GasketTower(args.dim, args.level)
    basis = harmonic_one_basis(args.dim, args.level, args.gen, tower=tower)
    graph = tower[args.gen]
    if args.format == "json":
        io.write_basis(basis, graph, args.out)
    else:
        io.write_table(io.period_table(basis, localized_periods(basis, graph)), args.out)
    return 0


def cmd_spectrum(args):
    graph = build_graph(args.dim, args.level, args.gen)
    vals, _ = spectrum(graph, assemble_weights(graph), args.degree, count=args.count)
    _emit(pd.DataFrame({"index": np.arange(len(vals)), "eigenvalue": vals}), args.out)
    return 0


def cmd_extend(args):
    doc = io.read_json(args.input)
    try:
        n, level, generation = doc["n"], doc["level"], doc["generation"]
    except (KeyError, TypeError):
        raise MalformedDocumentError(f"{args.input} is not a form document")
    coarse, fine = build_graph(n, level, generation), build_graph(n, level, generation + 1)
    f = io.form_from_document(doc, coarse)
    if f.degree == 0:
        out = extend_zero_form(f, coarse, fine)
    elif f.degree == 1:
        out = extend_one_form(f, coarse, fine)
    else:
        raise InvalidDegreeError(f"only 0-forms and 1-forms can be extended, got degree {f.degree}")
    io.write_form(out, fine, args.out)
    logg.info(f"extended the {f.degree}-form to generation {fine.generation}")
    return 0


def _kusuoka_model(source):
    return kusuoka.derived_model() if source == "derived" else kusuoka.printed_model()


def cmd_kusuoka(args):
    model = _kusuoka_model(args.source)
    f = kusuoka.SAMPLE_FUNCTIONS[args.function]
    if args.table == "measure":
        check_depth(args.depth)
        words = list(product(range(len(kusuoka.LABEL_TO_MAP)), repeat=args.depth))
        df = pd.DataFrame({"word": ["".join(map(str, w)) or "-" for w in words],
                           "nu": [float(kusuoka.kusuoka_measure(w)) for w in words]})
    elif args.table == "omega":
        df = kusuoka.nu_omega_table(model, range(args.depth + 1)).reset_index()
    elif args.table == "growth":
        growth = kusuoka.spectral_growth(model)
        fit = kusuoka.two_term_fit(model)
        df = pd.DataFrame([{"lambda_plus": str(growth.lambda_plus), "lambda_minus": str(growth.lambda_minus),
                            "lambda_anti": str(growth.lambda_anti), "a": fit.a, "b": fit.b,
                            "max_relative_residual": fit.max_relative_residual}])
    elif args.table == "errata":
        df = pd.DataFrame(kusuoka.discrepancy_report())
    elif args.table == "prop42":
        df = kusuoka.verify_prop_4_2(f, args.gen, args.depth)
    elif args.measure == "mu":
        s = kusuoka.delta2_balanced(f, kusuoka.EdgeSegment.bottom(), args.depth)
        df = pd.DataFrame({"depth": s.index, "delta2": s.to_numpy()})
    else:
        s = kusuoka.delta2_prime_kusuoka(f, depth=args.depth, model=model)
        df = pd.DataFrame({"depth": s.index, "delta2_prime": s.to_numpy(),
                           "ratio": kusuoka.successive_ratios(s).reindex(s.index).to_numpy()})
    _emit(df, args.out, args.format)
    return 0


COMMANDS = {
    "generate": cmd_generate,
    "operators": cmd_operators,
    "verify": cmd_verify,
    "basis": cmd_basis,
    "spectrum": cmd_spectrum,
    "extend": cmd_extend,
    "kusuoka": cmd_kusuoka,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    _configure(args)
    if logg.enabled("hint"):
        logg.print_versions()
    logg.info(f"fractal-hodge {args.command}", r=True)
    try:
        code = COMMANDS[args.command](args)
    except FractalHodgeError as err:
        logg.error(str(err))
        return 2
    except OSError as err:
        logg.error(f"{type(err).__name__}: {err}")
        return 2
    logg.info(f"    finished {args.command}", time=True)
    return code


if __name__ == "__main__":
    sys.exit(main())
