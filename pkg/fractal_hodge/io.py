"""Reading and writing graphs, operators, forms and bases.

Graphs are JSON documents carrying a `schema_version`; operators are Matrix Market
files with an exact "p/q" sidecar; bases and period tables are JSON and CSV.
"""
import json
import os
from fractions import Fraction

import numpy as np
import pandas as pd
import scipy.io
import scipy.sparse as sp

from . import logging as logg
from .errors import MalformedDocumentError
from .gasket import build_graph
from .derham import KForm, SparseOperator, WeightSystem, assemble_weights, assemble_d, assemble_delta, laplacian
from .derham.exact_linalg import as_fraction

SCHEMA_VERSION = 1
SIDECAR_SUFFIX = ".exact.json"


def _dumps(doc):
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def write_text(path, text):
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)
    with open(path, "w") as f:
        f.write(text)


def read_json(path):
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as err:
        raise MalformedDocumentError(f"{path} is not valid JSON: {err}")


def _check_schema(doc, kind):
    if not isinstance(doc, dict):
        raise MalformedDocumentError(f"{kind} document must be a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise MalformedDocumentError(f"{kind} document has schema_version {doc.get('schema_version')!r}, "
                                     f"expected {SCHEMA_VERSION}")
    if doc.get("kind") != kind:
        raise MalformedDocumentError(f"expected a {kind} document, got {doc.get('kind')!r}")


#######################################################################
# Graph documents
#######################################################################


def graph_document(graph, weights=None):
    """JSON-ready description of G_l^{n,m}: vertices with their class, simplices of every degree and weights."""
    weights = assemble_weights(graph) if weights is None else weights
    classes = graph.vertex_class()
    vertices = [{"id": i, "coords": [int(x) for x in c], "class": int(classes[i])} for i, c in enumerate(graph.coords)]
    simplices = {str(k): [{"id": i, "word": list(s.word), "face": list(s.local_face), "vertex_ids": list(s.vertex_ids)}
                          for i, s in enumerate(graph.simplices[k])] for k in range(graph.n + 1)}
    return {"schema_version": SCHEMA_VERSION, "kind": "graph", "n": graph.n, "level": graph.level,
            "generation": graph.generation, "vertices": vertices, "simplices": simplices,
            "weights": weights.system.to_dict()}


def write_graph(graph, path, weights=None):
    """Write the graph document; identical graphs give identical bytes."""
    write_text(path, _dumps(graph_document(graph, weights)))
    logg.info(f"graph written to {path}")


def graph_from_document(doc, cap=None):
    """Rebuild the graph and its weights from a document and check every table against it.

    Returns
    -------
    (`GasketGraph`, `SimplexWeights`)
    """
    _check_schema(doc, "graph")
    try:
        n, level, generation = int(doc["n"]), int(doc["level"]), int(doc["generation"])
    except (KeyError, TypeError, ValueError) as err:
        raise MalformedDocumentError(f"graph document lacks a valid n, level or generation: {err}")
    graph = build_graph(n, level, generation, cap=cap)
    try:
        system = WeightSystem.from_dict(n, graph.n_maps, doc.get("weights", {}))
    except (AttributeError, TypeError, ValueError) as err:
        raise MalformedDocumentError(f"graph document has invalid weights: {err}")
    expected = graph_document(graph, assemble_weights(graph, system))
    for key in ("vertices", "simplices"):
        if doc.get(key) != expected[key]:
            raise MalformedDocumentError(f"the {key} table does not match G_{level}^{{{n},{generation}}}")
    return graph, assemble_weights(graph, system)


def read_graph(path, cap=None):
    return graph_from_document(read_json(path), cap=cap)


#######################################################################
# Operators (Matrix Market with exact sidecar)
#######################################################################


def write_operator(op, path):
    """Write `op` to `path` (.mtx) and, for exact operators, the "p/q" entries to the sidecar.

    Returns the list of written paths; zero-sized operators are skipped.
    """
    if 0 in op.shape:
        logg.hint(f"skipping {op.name}: shape {op.shape}")
        return []
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)
    scipy.io.mmwrite(path, sp.coo_matrix(op.to_scipy()), comment=f" {op.name}", field="real", precision=17)
    written = [path if path.endswith(".mtx") else path + ".mtx"]
    if op.exact:
        sidecar = {"schema_version": SCHEMA_VERSION, "kind": "operator", "name": op.name, "shape": list(op.shape),
                   "row_space": list(op.row_space), "col_space": list(op.col_space),
                   "entries": [[r, c, str(v)] for r, c, v in op.triples()]}
        side_path = _sidecar_path(written[0])
        write_text(side_path, _dumps(sidecar))
        written.append(side_path)
    return written


def _sidecar_path(mtx_path):
    return mtx_path[:-len(".mtx")] + SIDECAR_SUFFIX if mtx_path.endswith(".mtx") else mtx_path + SIDECAR_SUFFIX


def read_operator(path):
    """Read a Matrix Market file, using the exact sidecar next to it when present."""
    try:
        matrix = sp.coo_matrix(scipy.io.mmread(path))
    except (OSError, ValueError) as err:
        raise MalformedDocumentError(f"cannot read Matrix Market file {path}: {err}")
    side_path = _sidecar_path(path)
    if not os.path.exists(side_path):
        entries = {(int(r), int(c)): float(v) for r, c, v in zip(matrix.row, matrix.col, matrix.data)}
        name = os.path.splitext(os.path.basename(path))[0]
        return SparseOperator(name, matrix.shape, (None, None), (None, None), entries, exact=False)

    doc = read_json(side_path)
    _check_schema(doc, "operator")
    try:
        entries = {(int(r), int(c)): as_fraction(v) for r, c, v in doc["entries"]}
        op = SparseOperator(doc["name"], doc["shape"], doc["row_space"], doc["col_space"], entries, exact=True)
    except (KeyError, TypeError, ValueError) as err:
        raise MalformedDocumentError(f"operator sidecar {side_path} is malformed: {err}")
    if op.shape != matrix.shape or not np.allclose(op.to_scipy().toarray(), matrix.toarray(), rtol=1e-12, atol=0):
        raise MalformedDocumentError(f"{path} and its sidecar disagree")
    return op


def export_operators(graph, weights, k, out_folder):
    """Write d_k, delta_k and -Delta_k of one degree; returns the written paths."""
    ops = [assemble_d(graph, k), assemble_delta(graph, weights, k), laplacian(graph, weights, k)]
    names = [f"d_{k}", f"delta_{k}", f"laplacian_{k}"]
    written = []
    for name, op in zip(names, ops):
        written += write_operator(op, os.path.join(out_folder, f"{name}.mtx"))
    logg.info(f"wrote {len(written)} operator files to {out_folder}")
    return written


#######################################################################
# Forms and bases
#######################################################################


def _encode_values(f):
    if f.exact:
        return {"exact": True, "values": [str(v) for v in f.values]}
    values = np.asarray(f.values)
    if np.iscomplexobj(values):
        return {"exact": False, "values": values.real.tolist(), "imag": values.imag.tolist()}
    return {"exact": False, "values": values.tolist()}


def form_document(f, graph):
    f.check(graph)
    return {"schema_version": SCHEMA_VERSION, "kind": "form", "n": graph.n, "level": graph.level,
            "generation": f.generation, "degree": f.degree, **_encode_values(f)}


def form_from_document(doc, graph=None):
    """KForm from a form document, checked against `graph` when given."""
    _check_schema(doc, "form")
    try:
        values = doc["values"]
        if doc["exact"]:
            f = KForm(int(doc["degree"]), int(doc["generation"]), [as_fraction(v) for v in values], exact=True)
        else:
            data = np.asarray(values, dtype=float)
            if "imag" in doc:
                data = data + 1j * np.asarray(doc["imag"], dtype=float)
            f = KForm(int(doc["degree"]), int(doc["generation"]), data, exact=False)
    except (KeyError, TypeError, ValueError) as err:
        raise MalformedDocumentError(f"form document is malformed: {err}")
    if graph is not None:
        if (doc.get("n"), doc.get("level")) != (graph.n, graph.level):
            raise MalformedDocumentError(f"form belongs to SG_{doc.get('level')}^{doc.get('n')}, "
                                         f"graph is SG_{graph.level}^{graph.n}")
        f.check(graph)
    return f


def write_form(f, graph, path):
    write_text(path, _dumps(form_document(f, graph)))


def read_form(path, graph=None):
    return form_from_document(read_json(path), graph)


def basis_document(basis, graph):
    """A tagged basis h_{w,j} as one JSON document."""
    forms = [{"word": list(t.word), "index": t.index, "label": t.label, **_encode_values(t.form)} for t in basis]
    return {"schema_version": SCHEMA_VERSION, "kind": "basis", "n": graph.n, "level": graph.level,
            "generation": graph.generation, "degree": 1, "forms": forms}


def write_basis(basis, graph, path):
    write_text(path, _dumps(basis_document(basis, graph)))
    logg.info(f"{len(basis)} basis forms written to {path}")


def read_basis(path, graph=None):
    """Returns a list of (word, index, KForm)."""
    doc = read_json(path)
    _check_schema(doc, "basis")
    out = []
    for entry in doc.get("forms", []):
        form_doc = {"schema_version": SCHEMA_VERSION, "kind": "form", "n": doc["n"], "level": doc["level"],
                    "generation": doc["generation"], "degree": doc["degree"], **entry}
        out.append((tuple(entry["word"]), entry["index"], form_from_document(form_doc, graph)))
    return out


def period_table(basis, periods):
    """DataFrame with one row per form: label, word, index and its period."""
    return pd.DataFrame({"label": [t.label for t in basis],
                         "word": ["".join(map(str, t.word)) or "-" for t in basis],
                         "index": [t.index for t in basis],
                         "period": [str(p) if isinstance(p, Fraction) else p for p in periods]})


def write_table(df, path, index=False):
    """CSV export of a result table."""
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)
    df.to_csv(path, index=index)
    logg.info(f"table written to {path}")
