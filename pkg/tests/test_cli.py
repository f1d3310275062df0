"""
Tests for the restrictcat command-line interface.
"""
import io
import json

import pytest

from restrictcat.cli import build_parser, run
from restrictcat.fixtures import FIXTURES


def _run(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def test_check_passes_on_fixture():
    """Test category, restriction and M-system laws on PFIN2."""
    code, output = _run("check", "pfin2.json")
    assert code == 0
    report = json.loads(output)
    assert report["status"] == "pass"
    assert report["metadata"]["category"] == "pfin2"


def test_text_format():
    """Test the text rendering of a passing check."""
    code, output = _run("--format", "text", "check", "triv3.json")
    assert code == 0
    assert output.startswith("check: pass")


def test_cocheck_reports_ab2_failure():
    """Test that AB2 fails cocompleteness with the diagonal as witness."""
    code, output = _run("--shape-bound", "2", "cocheck", "ab2.json")
    assert code == 1
    assert "delta" in output
    assert json.loads(output)["metadata"]["verdict"] == "not-cocomplete"


def test_kr_output_is_a_valid_category(tmp_path):
    """Test that the emitted Kr(MAX5/B) file checks clean."""
    path = tmp_path / "kr.json"
    code, output = _run("kr", "max5b.json", "-o", str(path))
    assert code == 0
    assert output == ""
    code, _ = _run("check", str(path))
    assert code == 0
    assert len(json.loads(path.read_text())["objects"]) == 4


def test_mtotal_of_non_split_category_is_an_input_error():
    """Test the precondition witness for MAX5/B."""
    code, output = _run("mtotal", "max5b.json")
    assert code == 2
    report = json.loads(output)
    assert report["status"] == "input-error"
    assert report["metadata"]["witness"] == {"idempotent": "1"}


def test_usage_errors_exit_two(tmp_path):
    """Test unknown commands, missing files and bad bounds."""
    assert _run("frobnicate")[0] == 2
    assert _run("check", str(tmp_path / "absent.json"))[0] == 2
    assert _run("--shape-bound", "0", "check", "triv3.json")[0] == 2


def test_fixtures_export(tmp_path):
    """Test listing and exporting the bundled fixtures."""
    code, output = _run("fixtures", "--export", str(tmp_path))
    assert code == 0
    assert {entry["name"] for entry in json.loads(output)} == set(FIXTURES)
    assert sorted(p.stem for p in tmp_path.glob("*.json")) == sorted(FIXTURES)
    code, _ = _run("check", str(tmp_path / "inj2.json"))
    assert code == 0


def test_parser_lists_every_command():
    """Test that each command accepts --help."""
    parser = build_parser()
    with pytest.raises(SystemExit) as excinfo:
        parser.parse_args(["kr", "--help"])
    assert excinfo.value.code == 0


def test_malformed_files_exit_two(tmp_path):
    """Test that wrongly typed but valid JSON gives an input-error report."""
    category = tmp_path / "bad.json"
    category.write_text(json.dumps({"objects": ["*"], "morphisms": [], "identities": {}, "composition": 5}))
    code, output = _run("check", str(category))
    assert code == 2
    assert json.loads(output)["status"] == "input-error"

    presheaf = tmp_path / "bad_rpsh.json"
    presheaf.write_text(json.dumps({"base": "max5b.json", "sets": {"*": []}, "actions": [], "restriction": []}))
    code, output = _run("rpsh-check", str(presheaf))
    assert code == 2
    assert json.loads(output)["status"] == "input-error"


def test_structures_follow_the_enumeration_limit():
    """Test enumeration on the max-monoid and the configured morphism cap."""
    code, output = _run("structures", "max5b.json")
    assert code == 0
    assert json.loads(output)["metadata"]["count"] == 32
    code, output = _run("--enumeration-limit", "10", "structures", "pfin2.json")
    assert code == 2
    assert "10 morphisms" in json.loads(output)["error"]
