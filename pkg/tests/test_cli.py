import json
from pathlib import Path

import jsonschema
import pytest

from tandemwalks.cli import main
from tandemwalks.kmsw import phi
from tandemwalks.verify import EXAMPLE_WALK

SCHEMAS = Path(__file__).parents[1] / "docs" / "schemas"
WALK_SCHEMA = json.loads((SCHEMAS / "walk.schema.json").read_text())
MAP_SCHEMA = json.loads((SCHEMAS / "map.schema.json").read_text())


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out.strip(), out.err


def test_closed_form(capsys):
    assert run(capsys, "closed-form", "baxter", "--n", "3")[:2] == (0, "6")
    assert run(capsys, "closed-form", "tutte", "--n", "2")[:2] == (0, "5")
    assert run(capsys, "closed-form", "baxter", "--n", "0")[0] == 1


def test_count(capsys):
    argv = ["count", "--p", "1", "--z", "0,1", "--from", "0,0", "--to", "0,0", "--len", "6", "--region", "quadrant"]
    assert run(capsys, *argv)[:2] == (0, "5")
    rc, out, _ = run(capsys, "count", "--p", "1", "--z", "1/2,1", "--from", "0,0", "--to", "0,0", "--len", "3")
    assert rc == 0 and out == "9/8"


def test_series(capsys):
    rc, out, _ = run(capsys, "series", "w", "--p", "1", "--z", "0,1", "--order", "5")
    data = json.loads(out)
    assert rc == 0 and data["coefficients"] == ["1", "1", "2", "4", "9"] and data["min_order"] == 1


def test_bijection_round_trip(capsys, tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text('{"steps": []}')
    rc, out, _ = run(capsys, "bijection", "phi", "--in", str(empty))
    unit = json.loads(out)
    assert rc == 0
    jsonschema.validate(unit, MAP_SCHEMA)
    assert unit["vertices"] == 2 and len(unit["edges"]) == 1

    walk = tmp_path / "w.json"
    walk.write_text(json.dumps(EXAMPLE_WALK.to_json()))
    jsonschema.validate(EXAMPLE_WALK.to_json(), WALK_SCHEMA)
    omap = tmp_path / "o.json"
    assert run(capsys, "bijection", "phi", "--in", str(walk), "--out", str(omap))[0] == 0
    assert json.loads(omap.read_text()) == phi(EXAMPLE_WALK).to_json()
    assert run(capsys, "validate", "--in", str(omap))[0] == 0
    rc, out, _ = run(capsys, "bijection", "phi-inverse", "--in", str(omap))
    assert rc == 0 and json.loads(out) == EXAMPLE_WALK.to_json()


def test_invalid_orientation(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    data = phi(EXAMPLE_WALK).to_json()
    data["S"], data["N"] = data["N"], data["S"]
    bad.write_text(json.dumps(data))
    assert run(capsys, "validate", "--in", str(bad))[0] == 1


def test_sample_outputs(capsys, tmp_path):
    rc, out, _ = run(capsys, "sample", "excursion-p1", "--n", "6", "--seed", "1")
    assert rc == 0
    jsonschema.validate(json.loads(out), WALK_SCHEMA)
    assert run(capsys, "sample", "excursion-p1", "--n", "6", "--seed", "1")[1] == out
    svg = tmp_path / "w.svg"
    assert run(capsys, "sample", "excursion-window", "--p", "2", "--n", "5", "--seed", "3", "--emit", str(svg))[0] == 0
    assert svg.read_text().startswith("<svg")
    dot = tmp_path / "m.dot"
    assert run(capsys, "sample", "quadrant", "--n", "5", "--emit", str(dot))[0] == 0
    assert dot.read_text().startswith("digraph")
    assert run(capsys, "sample", "excursion-window", "--n", "1")[0] == 1


def test_asymptotics_and_harmonic(capsys):
    rc, out, _ = run(capsys, "asymptotics", "--omega", "3")
    assert rc == 0 and json.loads(out)["kappa"] == pytest.approx(44.6576405291652)
    rc, out, _ = run(capsys, "harmonic", "--p", "1", "--a", "2", "--b", "3")
    data = json.loads(out)
    assert data["rational_part"] == "252" and isinstance(data["value"], float)


def test_render(capsys, tmp_path):
    walk = tmp_path / "w.json"
    walk.write_text(json.dumps(EXAMPLE_WALK.to_json()))
    rc, out, _ = run(capsys, "render", "--in", str(walk), "--svg", "--start", "3,2")
    assert rc == 0 and out.startswith("<svg")


def test_verify_suite(capsys):
    rc, out, _ = run(capsys, "verify", "asymptotics", "--fast", "--json")
    data = json.loads(out)
    assert rc == 0 and {r["criterion"] for r in data} == {9, 11, 12}


def test_bad_usage(capsys):
    rc, _, err = run(capsys, "no-such-command")
    assert rc == 2 and "invalid choice" in err
