import json

import pytest

from acslab.acmodel import SchemaError, generic_rank, load_model, model_from_dict


def test_builtin_and_coordinate(tmp_path):
    m = model_from_dict({"kind": "builtin", "name": "torus_mni", "n": 3, "A": "3"})
    assert generic_rank(m) == 3
    d = {"kind": "coordinate", "n": 2,
         "oscillators": [{"name": "u1", "derivations": {"dz1": "1/2*i*u1", "dzb1": "1/2*i*u1"}}],
         "coframe": [["1", "0", "0", "u1"], ["0", "1", "0", "0"]]}
    assert generic_rank(model_from_dict(d)) == 1
    (tmp_path / "a.json").write_text(json.dumps(d))
    (tmp_path / "p.json").write_text(json.dumps({"kind": "product", "factors": ["a.json", "a.json"]}))
    p = load_model(str(tmp_path / "p.json"))
    assert p.n == 4 and generic_rank(p) == 2


def test_lie_formats():
    J = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
    a = model_from_dict({"kind": "lie_algebra", "n": 2, "brackets": [{"i": 1, "j": 2, "out": {"4": "-1"}}], "J": J})
    b = model_from_dict({"kind": "lie_algebra", "n": 2, "differentials": {"4": {"1,2": "1"}}, "J": J})
    assert generic_rank(a) == generic_rank(b) == 0


@pytest.mark.parametrize("bad", [
    [], {"kind": "nope"}, {"kind": "builtin"}, {"kind": "builtin", "name": "torus_mni"},
    {"kind": "lie_algebra", "n": 2, "J": [[1]]}, {"kind": "coordinate", "n": 2, "coframe": [["1"]]},
    {"kind": "product", "factors": []},
])
def test_schema_errors(bad):
    with pytest.raises(SchemaError):
        model_from_dict(bad)


def test_malformed_file(tmp_path):
    f = tmp_path / "m.json"
    f.write_text("{ not json")
    with pytest.raises(SchemaError):
        load_model(str(f))
