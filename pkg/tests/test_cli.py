"""End-to-end CLI coverage: subcommands, formats, exit codes, artifacts."""

import json

import pytest

from ig_lab.cli import main
from ig_lab.corpus import brandt_b2, left_zero, rectangular_band
from ig_lab.serialize import dump_json


@pytest.fixture(scope="module")
def inputs(tmp_path_factory):
    root = tmp_path_factory.mktemp("inputs")
    paths = {}
    for name, table in (("b2", brandt_b2()), ("lz2", left_zero(2)), ("rb22", rectangular_band(2, 2))):
        p = root / f"{name}.json"
        dump_json(table.to_json(), p)
        paths[name] = str(p)
    bad = root / "bad.json"
    bad.write_text(json.dumps({"size": 2, "table": [[0, 1], [0, 0]]}))
    paths["bad"] = str(bad)
    notjson = root / "notjson.json"
    notjson.write_text("{nope")
    paths["notjson"] = str(notjson)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_ok(capsys, inputs):
    code, out, _ = run(capsys, "validate", inputs["b2"])
    assert code == 0
    data = json.loads(out)
    assert data["ok"] and len(data["summary"]["d_classes"]) == 3


def test_validate_rejects_non_associative(capsys, inputs):
    code, _, err = run(capsys, "validate", inputs["bad"])
    assert code == 1
    assert "not associative" in err


def test_validate_rejects_malformed_json(capsys, inputs):
    code, _, err = run(capsys, "validate", inputs["notjson"])
    assert code == 1
    assert "input error" in err


def test_missing_file(capsys, inputs):
    code, _, err = run(capsys, "validate", inputs["b2"] + ".nope")
    assert code == 1


def test_models_json(capsys, inputs):
    code, out, _ = run(capsys, "models", inputs["b2"])
    assert code == 0
    data = json.loads(out)
    assert set(data["models"]) == {"0", "1", "2"}


def test_models_graceful_on_rectangular_band(capsys, inputs):
    code, out, _ = run(capsys, "models", inputs["rb22"])
    assert code == 0
    data = json.loads(out)
    assert data["models"] == {} and "0" in data["model_errors"]


def test_contact_with_dot(capsys, inputs, tmp_path):
    dot = tmp_path / "a.dot"
    code, out, _ = run(capsys, "contact", inputs["b2"], "--d1", "1", "--d2", "2",
                       "--dot", str(dot))
    assert code == 0
    data = json.loads(out)
    assert data["edges"] == []
    text = dot.read_text()
    assert text.startswith("graph") and "l0i0" in text


def test_word_eq(capsys, inputs):
    code, out, _ = run(capsys, "word-eq", inputs["b2"], "--u", '["e11","e22"]',
                       "--v", '["e22","e11"]')
    assert code == 0
    data = json.loads(out)
    assert data["equal"] is False
    assert data["oracle"]["status"] == "distinct"


def test_word_eq_equal_with_certificate(capsys, inputs):
    code, out, _ = run(capsys, "word-eq", inputs["lz2"], "--u", '["a","b"]', "--v", '["a"]')
    data = json.loads(out)
    assert data["equal"] is True
    assert data["oracle"]["certificate"]


def test_green_cli(capsys, inputs):
    code, out, _ = run(capsys, "green", inputs["lz2"], "--u", '["a"]', "--v", '["b"]',
                       "--rel", "L")
    assert code == 0 and json.loads(out)["related"] is True


def test_schutz_cli(capsys, inputs):
    code, out, _ = run(capsys, "schutz", inputs["b2"], "--word", '["e11","e22"]')
    assert code == 0
    assert json.loads(out)["schutzenberger"]["order"] == 1


def test_census_cli(capsys, inputs):
    code, out, _ = run(capsys, "census", inputs["b2"], "--word", '["e11","e22"]')
    assert code == 0
    assert json.loads(out)["census"]["d_class_size"] == 1


def test_cross_validate_ok(capsys, inputs):
    code, out, _ = run(capsys, "cross-validate", inputs["lz2"], "--exhaustive-len", "3",
                       "--samples", "60")
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_cross_validate_fault_exit_two(capsys, inputs):
    code, out, _ = run(capsys, "cross-validate", inputs["b2"], "--exhaustive-len", "3",
                       "--samples", "60", "--inject-fault", "sandwich")
    assert code == 2
    assert json.loads(out)["ok"] is False


def test_report_writes_artifacts(capsys, inputs, tmp_path):
    out_dir = tmp_path / "rep"
    code, out, _ = run(capsys, "report", inputs["b2"], "--out-dir", str(out_dir), "--figures")
    assert code == 0
    assert (out_dir / "report.json").exists()
    assert (out_dir / "models.csv").exists()
    figures = list((out_dir / "figures").glob("*.png"))
    assert len(figures) >= 4  # 3 egg-boxes + contact automata
    report = json.loads((out_dir / "report.json").read_text())
    assert set(report["models"]) == {"0", "1", "2"}
    csv_text = (out_dir / "models.csv").read_text()
    assert csv_text.splitlines()[0].startswith("dclass_id,")


def test_report_deterministic(capsys, inputs, tmp_path):
    d1, d2 = tmp_path / "r1", tmp_path / "r2"
    run(capsys, "report", inputs["b2"], "--out-dir", str(d1), "--seed", "3")
    run(capsys, "report", inputs["b2"], "--out-dir", str(d2), "--seed", "3")
    assert (d1 / "report.json").read_bytes() == (d2 / "report.json").read_bytes()
