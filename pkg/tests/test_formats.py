"""
Tests for reading and writing category files.
"""
import json

import pytest

from restrictcat.exceptions import InputError
from restrictcat.fixtures import load_fixture
from restrictcat.formats import (
    bundle_to_dict,
    category_from_dict,
    dump_category,
    load_category,
    map_components_from_dict,
    presheaf_parts_from_dict,
    read_json,
    resolve_category,
)


def test_category_file_round_trip(tmp_path):
    """Test that writing and reading PFIN2 keeps every table."""
    bundle = load_fixture("pfin2")
    path = tmp_path / "pfin2.json"
    dump_category(bundle, path)
    loaded = load_category(path)
    assert loaded.category == bundle.category
    assert loaded.restriction == bundle.restriction
    assert loaded.name == "pfin2"


def test_output_is_deterministic():
    """Test that serialising twice gives the same bytes."""
    bundle = load_fixture("ab2")
    assert dump_category(bundle) == dump_category(load_fixture("ab2"))


def test_unknown_keys_are_rejected():
    """Test that stray top-level keys are input errors."""
    data = bundle_to_dict(load_fixture("triv3"))
    data["colour"] = "blue"
    with pytest.raises(InputError):
        category_from_dict(data)


def test_missing_keys_and_bad_entries():
    """Test required keys and entry shapes."""
    data = bundle_to_dict(load_fixture("triv3"))
    del data["composition"]
    with pytest.raises(InputError):
        category_from_dict(data)
    data = bundle_to_dict(load_fixture("triv3"))
    data["morphisms"][0]["extra"] = 1
    with pytest.raises(InputError):
        category_from_dict(data)
    data = bundle_to_dict(load_fixture("triv3"))
    data["restriction"] = {"nope": "nope"}
    with pytest.raises(InputError):
        category_from_dict(data)


def test_resolve_category_falls_back_to_fixtures(tmp_path):
    """Test that a missing file named after a fixture loads the fixture."""
    bundle = resolve_category(tmp_path / "max5b.json")
    assert bundle.category == load_fixture("max5b").category
    with pytest.raises(InputError):
        resolve_category(tmp_path / "absent.json")


def test_invalid_json_is_an_input_error(tmp_path):
    """Test that a malformed file is reported, not raised as a decode error."""
    path = tmp_path / "broken.json"
    path.write_text("{ not json")
    with pytest.raises(InputError):
        read_json(path)
    path.write_text(json.dumps([1, 2]))
    with pytest.raises(InputError):
        load_category(path)


@pytest.mark.parametrize(
    "key, value",
    [
        ("composition", 5),
        ("morphisms", {"id": "0"}),
        ("identities", {"*": ["0"]}),
        ("restriction", []),
        ("restriction", {"0": ["0"]}),
        ("msystem", [["0"]]),
    ],
)
def test_wrongly_typed_collections_are_input_errors(key, value):
    """Test that valid JSON of the wrong shape is reported, not raised as a TypeError."""
    data = bundle_to_dict(load_fixture("max5b"))
    data[key] = value
    with pytest.raises(InputError):
        category_from_dict(data)


def test_wrongly_typed_presheaf_parts(tmp_path):
    """Test restriction, set and action shapes in presheaf files."""
    base = {"base": "max5b.json", "sets": {"*": []}, "actions": []}
    for override in ({"restriction": []}, {"restriction": {"*:x": 3}}, {"sets": {"*": 1}}, {"actions": {}}):
        with pytest.raises(InputError):
            presheaf_parts_from_dict({**base, **override}, relative_to=tmp_path)


def test_map_file_needs_components():
    """Test that a map file without components is an input error."""
    with pytest.raises(InputError):
        map_components_from_dict({})
    with pytest.raises(InputError):
        map_components_from_dict({"components": {"*": 3}})
    assert map_components_from_dict({"components": {"*": [["a", "b"]]}}) == {"*": {"a": "b"}}
