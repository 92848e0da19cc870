import json
from pathlib import Path

import jsonschema
import pytest

from tandemwalks.kmsw import phi
from tandemwalks.maps import (MarkedBipolarOrientation, face_census, rho, sigma, signature,
                              unit_orientation, validate)
from tandemwalks.oracle import exhaustive_walks
from tandemwalks.steps import WeightSpec, parse_walk
from tandemwalks.verify import EXAMPLE_WALK

SCHEMA = json.loads((Path(__file__).parents[1] / "docs/schemas/map.schema.json").read_text())


def small_maps(n_max=5):
    spec = WeightSpec(3)
    for n in range(n_max + 1):
        for w in exhaustive_walks(spec, n):
            yield phi(w)


def test_unit():
    U = unit_orientation()
    assert U.n_vertices == 2 and U.n_plain_edges() == 1
    assert signature(U).as_tuple() == (0, 0, 0, 0)
    assert validate(U)
    assert face_census(U)[0] == {}
    assert rho(U).canonical_key() == U.canonical_key()
    assert sigma(U).canonical_key() == U.canonical_key()


def test_reversed_unit_fails():
    O = MarkedBipolarOrientation(2, [(1, 0, "plain")], [(1,), (0,)], 0, 1, 0, 1)
    rep = validate(O)
    assert not rep.ok and rep.violation == "source mismatch"


def test_malformed_rotations_rejected():
    with pytest.raises(ValueError):
        MarkedBipolarOrientation(2, [(0, 1, "plain")], [(0,), (0,)], 0, 1, 0, 1)


def test_example_signatures():
    O = phi(EXAMPLE_WALK)
    assert signature(O).as_tuple() == (3, 2, 1, 2)
    assert signature(rho(O)).as_tuple() == (2, 1, 2, 3)
    assert signature(sigma(O)).as_tuple() == (2, 2, 1, 3)


def test_face_census():
    w = parse_walk([(0, 1), (1, 0), (0, 1), (2, 0), (1, 1), (3, 0), "SE", "SE", "SE", "SE"])
    O = phi(w)
    assert face_census(O)[0] == {3: 3, 4: 2, 5: 1}
    assert face_census(rho(O))[0] == face_census(O)[0]


def test_involutions_exhaustive():
    for O in small_maps():
        assert validate(O)
        for f in (rho, sigma):
            assert f(f(O)).canonical_key() == O.canonical_key()
        s = sigma(O)
        assert validate(s) and s.n_plain_edges() == O.n_plain_edges()
        a, b, c, d = signature(O).as_tuple()
        assert signature(s).as_tuple() == (d, b, c, a)


def test_json_schema_and_round_trip():
    for O in list(small_maps(3))[:50]:
        data = O.to_json()
        jsonschema.validate(data, SCHEMA)
        assert MarkedBipolarOrientation.from_json(json.dumps(data)).canonical_key() == O.canonical_key()


def test_dot_export():
    dot = phi(EXAMPLE_WALK).to_dot()
    assert dot.startswith("digraph") and "->" in dot
