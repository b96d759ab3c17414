import json
import random

import pytest
from hypothesis import given

from conftest import complexes, specs
from ppjoin import io
from ppjoin.classify import SpaceMeta
from ppjoin.complexes import cycle
from ppjoin.errors import ValidationError


def test_complex_format():
    assert io.dumps_complex(cycle(4)) == \
        '{"vertices": ["1", "2", "3", "4"], "maximal_faces": [["1", "2"], ["1", "4"], ["2", "3"], ["3", "4"]]}\n'


def test_reader_recanonicalizes():
    text = '{"maximal_faces": [["4", "3"], ["2", "1"], ["1"], ["4", "1"], ["3", "2"]], "vertices": ["4", "3", "2", "1"]}'
    assert io.dumps_complex(io.loads_complex(text)) == io.dumps_complex(cycle(4))


@given(complexes(6))
def test_complex_round_trip_is_byte_stable(K):
    text = io.dumps_complex(K)
    assert io.loads_complex(text) == K
    assert io.dumps_complex(io.loads_complex(text)) == text


@given(complexes(5))
def test_shuffled_input_gives_same_bytes(K):
    obj = io.complex_to_json(K)
    rng = random.Random(len(K))
    obj["vertices"] = rng.sample(obj["vertices"], len(obj["vertices"]))
    obj["maximal_faces"] = [rng.sample(f, len(f)) for f in reversed(obj["maximal_faces"])]
    assert io.dumps_complex(io.complex_from_json(obj)) == io.dumps_complex(K)


@given(specs())
def test_spec_round_trip_is_byte_stable(spec):
    text = io.dumps_spec(spec)
    back = io.loads_spec(text)
    assert back == spec
    assert io.dumps_spec(back) == text


def test_spec_pairs_follow_written_base_order():
    obj = {"base": {"vertices": ["2", "1"], "maximal_faces": [["1"], ["2"]]},
           "pairs": [{"big": {"vertices": ["a"], "maximal_faces": [["a"]]}, "small": {"vertices": ["a"], "maximal_faces": []}},
                     {"big": {"vertices": ["b"], "maximal_faces": [["b"]]}, "small": {"vertices": ["b"], "maximal_faces": []}}]}
    spec = io.spec_from_json(obj)
    assert spec.pair("2").big.vertices == ("a",)
    assert spec.pair("1").big.vertices == ("b",)


@pytest.mark.parametrize("obj, pointer", [
    ({"vertices": ["1"]}, "/"),
    ({"vertices": ["1", 2], "maximal_faces": []}, "/vertices/1"),
    ({"vertices": ["1"], "maximal_faces": [["1", "a b"]]}, "/maximal_faces/0/1"),
    ({"vertices": ["1"], "maximal_faces": [], "extra": 1}, "/"),
])
def test_complex_schema_errors_carry_pointer(obj, pointer):
    with pytest.raises(ValidationError) as err:
        io.complex_from_json(obj)
    assert err.value.pointer == pointer


def test_spec_errors_carry_pointer():
    good = {"vertices": ["a"], "maximal_faces": [["a"]]}
    obj = {"base": {"vertices": ["1"], "maximal_faces": [["1"]]},
           "pairs": [{"big": good, "small": {"vertices": ["a"], "maximal_faces": [["b"]]}}]}
    with pytest.raises(ValidationError) as err:
        io.spec_from_json(obj)
    assert err.value.pointer.startswith("/pairs/0/small")
    obj["pairs"][0]["small"] = {"vertices": ["a"], "maximal_faces": "x"}
    with pytest.raises(ValidationError) as err:
        io.spec_from_json(obj)
    assert err.value.pointer == "/pairs/0/small/maximal_faces"


def test_meta_round_trip_and_errors():
    metas = {"*": SpaceMeta.sphere(2, "*"), "X": SpaceMeta.sphere(3, "X").replace(dimension=None)}
    text = io.dumps_metas(metas)
    back = io.metas_from_json(json.loads(text))
    assert back == metas
    assert io.dumps_metas(back) == text
    bad = json.loads(text)
    del bad["X"]["finite_cw"]
    with pytest.raises(ValidationError) as err:
        io.metas_from_json(bad)
    assert err.value.pointer == "/X"
    bad = json.loads(text)
    bad["X"]["susp_in_W"] = "yes"
    with pytest.raises(ValidationError) as err:
        io.metas_from_json(bad)
    assert err.value.pointer == "/X/susp_in_W"


def test_unreadable_file(tmp_path):
    with pytest.raises(ValidationError):
        io.read_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    with pytest.raises(ValidationError, match="invalid JSON"):
        io.read_json(bad)


def test_shipped_schemas_are_valid():
    import jsonschema
    names = io.schema_names()
    assert {"complex", "spec", "meta", "verdict", "oracle-line"} <= set(names)
    for name in names:
        jsonschema.Draft202012Validator.check_schema(io.load_schema(name))
