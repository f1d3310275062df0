"""
Canonical command output compared byte for byte against committed files.

Files live in ``tests/golden`` as ``<command>_<fixture>.json``. After an
intended change to canonical ordering, rerun with ``--update-golden``.
"""
import io
from pathlib import Path

import pytest

from restrictcat.cli import run

GOLDEN = Path(__file__).parent / "golden"

CASES = [
    ("kr", "triv3"),
    ("kr", "max5a"),
    ("kr", "max5b"),
    ("total", "triv3"),
    ("total", "max5a"),
    ("total", "max5b"),
    pytest.param("kr", "pfin2", marks=pytest.mark.slow),
    pytest.param("total", "pfin2", marks=pytest.mark.slow),
    pytest.param("par", "inj2", marks=pytest.mark.slow),
    pytest.param("par", "ab2", marks=pytest.mark.slow),
]


def _output(command, name):
    out = io.StringIO()
    code = run([command, f"{name}.json"], stdout=out)
    return code, out.getvalue()


@pytest.mark.parametrize("command, name", CASES)
def test_output_matches_golden_file(command, name, request):
    """Test that the emitted category file is unchanged."""
    path = GOLDEN / f"{command}_{name}.json"
    code, output = _output(command, name)
    assert code == 0
    if request.config.getoption("--update-golden"):
        path.write_text(output, encoding="utf-8")
        return
    if not path.exists():
        pytest.skip(f"{path.name} not recorded; run with --update-golden")
    assert output == path.read_text(encoding="utf-8")


def test_golden_kr_file_is_the_split_max_monoid():
    """Test the recorded Kr(MAX5/B) against its hand count."""
    text = (GOLDEN / "kr_max5b.json").read_text(encoding="utf-8")
    assert text.count('"id"') == 43
    assert '"objects": [\n    "*|0",\n    "*|1",\n    "*|3",\n    "*|5"\n  ]' in text
