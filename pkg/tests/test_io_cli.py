import json
from fractions import Fraction

import pandas as pd
import pytest

from fractal_hodge import io, settings
from fractal_hodge.cli import main
from fractal_hodge.errors import MalformedDocumentError
from fractal_hodge.gasket import build_graph
from fractal_hodge.derham import KForm, assemble_weights, assemble_d


def test_graph_document_round_trip(tmp_path):
    g = build_graph(2, 3, 2)
    path = tmp_path / "g.json"
    io.write_graph(g, str(path))
    g2, w = io.read_graph(str(path))
    assert g.same_tables(g2)
    assert w.system.is_uniform()


def test_small_document():
    doc = io.graph_document(build_graph(2, 2, 0))
    assert doc["schema_version"] == io.SCHEMA_VERSION
    assert len(doc["vertices"]) == 3
    assert [len(doc["simplices"][k]) for k in ("0", "1", "2")] == [3, 3, 1]
    assert [v["id"] for v in doc["vertices"]] == [0, 1, 2]


def test_weights_survive_round_trip(tmp_path):
    g = build_graph(2, 2, 1)
    w = assemble_weights(g, multipliers={1: [1, 2, 3]})
    io.write_graph(g, str(tmp_path / "g.json"), w)
    _, w2 = io.read_graph(str(tmp_path / "g.json"))
    assert w2[1] == w[1]


def test_malformed_documents(tmp_path):
    doc = io.graph_document(build_graph(2, 2, 1))
    doc["vertices"][0]["coords"] = [9, 9, 9]
    with pytest.raises(MalformedDocumentError):
        io.graph_from_document(doc)
    with pytest.raises(MalformedDocumentError):
        io.graph_from_document({**doc, "schema_version": 99})
    with pytest.raises(MalformedDocumentError):
        io.graph_from_document({"schema_version": 1, "kind": "graph"})
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(MalformedDocumentError):
        io.read_graph(str(bad))


def test_operator_export_and_product(tmp_path):
    g = build_graph(2, 3, 1)
    w = assemble_weights(g)
    io.export_operators(g, w, 0, str(tmp_path))
    io.export_operators(g, w, 1, str(tmp_path))
    d0 = io.read_operator(str(tmp_path / "d_0.mtx"))
    d1 = io.read_operator(str(tmp_path / "d_1.mtx"))
    assert d0.exact and d0.entries == assemble_d(g, 0).entries
    assert (d1 @ d0).is_zero()
    lap = io.read_operator(str(tmp_path / "laplacian_0.mtx"))
    assert all(sum(r.values(), Fraction(0)) == 0 for r in lap.rows())
    assert not (tmp_path / "delta_0.mtx").exists()


def test_operator_without_sidecar(tmp_path):
    g = build_graph(2, 2, 0)
    io.write_operator(assemble_d(g, 0), str(tmp_path / "d0.mtx"))
    (tmp_path / "d0.exact.json").unlink()
    op = io.read_operator(str(tmp_path / "d0.mtx"))
    assert not op.exact
    assert sorted(op.entries.values()) == [-1.0] * 3 + [1.0] * 3


def test_form_round_trip(tmp_path):
    g = build_graph(2, 2, 1)
    f = KForm.indicator(g, 1, 3).scale(Fraction(2, 7))
    io.write_form(f, g, str(tmp_path / "f.json"))
    assert io.read_form(str(tmp_path / "f.json"), g) == f
    with pytest.raises(MalformedDocumentError):
        io.read_form(str(tmp_path / "f.json"), build_graph(2, 3, 1))


def test_cli_generate_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["generate", "--dim", "2", "--level", "3", "--gen", "2", "-o", str(a)]) == 0
    assert main(["generate", "--dim", "2", "--level", "3", "--gen", "2", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert len(json.loads(a.read_text())["vertices"]) == 52


def test_cli_cap_error(tmp_path):
    assert main(["--cap", "50", "generate", "--gen", "3", "-o", str(tmp_path / "g.json")]) == 2
    assert settings.simplex_cap == 50


def test_cli_operators_from_document(tmp_path):
    main(["generate", "--dim", "2", "--level", "2", "--gen", "0", "-o", str(tmp_path / "g.json")])
    assert main(["operators", "-i", str(tmp_path / "g.json"), "-k", "0", "-o", str(tmp_path / "ops")]) == 0
    assert (tmp_path / "ops" / "d_0.mtx").exists()
    assert main(["operators", "--gen", "1", "-k", "1", "-o", str(tmp_path / "csv"), "--format", "csv"]) == 0
    table = pd.read_csv(tmp_path / "csv" / "delta_1.csv")
    assert list(table.columns) == ["row", "col", "value"]


def test_cli_basis(tmp_path):
    out = tmp_path / "basis.json"
    assert main(["basis", "--dim", "2", "--level", "3", "--gen", "2", "-o", str(out)]) == 0
    forms = io.read_basis(str(out), build_graph(2, 3, 2))
    assert len(forms) == 21
    assert main(["basis", "--level", "2", "--gen", "2", "-o", str(tmp_path / "p.csv"), "--format", "csv"]) == 0
    periods = pd.read_csv(tmp_path / "p.csv")
    assert list(periods["period"]) == [1] * 4


def test_cli_spectrum(tmp_path):
    out = tmp_path / "spec.csv"
    assert main(["spectrum", "--level", "3", "--gen", "1", "--count", "4", "-o", str(out)]) == 0
    vals = pd.read_csv(out)["eigenvalue"]
    assert len(vals) == 4 and abs(vals[0]) < 1e-10


def test_cli_extend(tmp_path):
    g = build_graph(2, 2, 0)
    f = KForm.zeros(g, 0)
    f.values[g.corner_ids()[0]] = Fraction(1)
    io.write_form(f, g, str(tmp_path / "f.json"))
    assert main(["extend", "-i", str(tmp_path / "f.json"), "-o", str(tmp_path / "h.json")]) == 0
    h = io.read_form(str(tmp_path / "h.json"))
    assert h.generation == 1
    assert sorted(h.values) == [0, 0, Fraction(1, 5), Fraction(2, 5), Fraction(2, 5), 1]


def test_cli_kusuoka_tables(tmp_path):
    out = tmp_path / "ratios.csv"
    assert main(["kusuoka", "prop42", "--depth", "3", "-o", str(out)]) == 0
    assert (pd.read_csv(out)["ratio"] - 1).abs().max() < 1e-12
    assert main(["kusuoka", "errata", "-o", str(tmp_path / "errata.json"), "--format", "json"]) == 0
    records = json.loads((tmp_path / "errata.json").read_text())
    assert {"entry", "printed", "derived", "equal"} <= set(records[0])
    assert main(["kusuoka", "delta2", "--measure", "nu", "--depth", "5", "-o", str(tmp_path / "d.csv")]) == 0
    assert main(["kusuoka", "measure", "--depth", "13"]) == 2


def test_cli_verify_counting(tmp_path):
    assert main(["verify", "counting", "-o", str(tmp_path)]) == 0
    report = json.loads((tmp_path / "verify_counting.json").read_text())
    assert report["schema_version"] == 1
    assert report["summary"]["fail"] == 0
    assert (tmp_path / "verify_counting.csv").exists()
