import json

import pytest

from sutura import cli, verify


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "3")
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 6
    assert lines[-1] == "5 = 1+3+1"


def test_enumerate_by_euler(capsys):
    code, out, _ = run(capsys, "enumerate", "4", "--e", "-1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["rows"]) == 6


def test_enumerate_cap(capsys):
    code, _, err = run(capsys, "enumerate", "12")
    assert code == 1 and "cap" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["enumerate"])
    assert exc.value.code == 2


def test_decompose_and_frompair_roundtrip(capsys):
    code, out, _ = run(capsys, "frompair", "--", "--++", "+-+-")
    assert code == 0
    diagram = out.strip()
    code, out, _ = run(capsys, "decompose", diagram, "--format", "json")
    assert code == 0
    assert json.loads(out)["words"] == ["--++", "-++-", "+--+", "+-+-"]


def test_decompose_parse_error(capsys):
    code, _, err = run(capsys, "decompose", "not-a-diagram")
    assert code == 1 and "error" in err


def test_stack(capsys):
    code, out, _ = run(capsys, "stack", "0-5,1-4,2-3", "0-5,1-4,2-3")
    assert code == 0
    assert out.startswith("tight loops=1")
    code, out, _ = run(capsys, "stack", "0-1,2-3", "0-3,1-2", "--format", "json")
    payload = json.loads(out)
    assert payload["tight"] is False and payload["agree"] is True


def test_stack_size_mismatch(capsys):
    code, _, err = run(capsys, "stack", "0-1", "0-1,2-3")
    assert code == 1


def test_category(capsys):
    # universal bounds for three-minus/one-plus words: the total order
    code, out, _ = run(capsys, "category", "0-7,1-4,2-3,5-6", "0-1,2-7,3-4,5-6")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["objects"]) == 3
    assert len(payload["hasse"]) == 2


def test_category_not_tight(capsys):
    code, _, err = run(capsys, "category", "0-1,2-5,3-4", "0-5,1-4,2-3")
    assert code == 1


def test_render_deterministic(capsys):
    code, first, _ = run(capsys, "render", "0-5,1-4,2-3")
    assert code == 0
    code, second, _ = run(capsys, "render", "0-5,1-4,2-3")
    assert first == second
    assert "B" in first and "R" in first and "*" in first
    code, svg1, _ = run(capsys, "render", "0-11,1-10,2-9,3-8,4-5,6-7", "--format", "svg")
    code, svg2, _ = run(capsys, "render", "0-11,1-10,2-9,3-8,4-5,6-7", "--format", "svg")
    assert svg1 == svg2
    assert svg1.count("<line") == 6
    assert 'fill="white"' in svg1  # hollow root marker on a basis diagram


def test_render_non_basis_has_no_root(capsys):
    _, svg, _ = run(capsys, "render", "0-3,1-2,4-5", "--format", "svg")
    assert 'fill="white"' not in svg


def test_cache_roundtrip(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("SUTURA_CACHE_DIR", str(tmp_path))
    code, out1, _ = run(capsys, "decompose", "0-3,1-2,4-5")
    assert code == 0
    cache = tmp_path / "decompose.kv"
    assert cache.exists()
    text = cache.read_text()
    assert "\t" in text
    code, out2, _ = run(capsys, "decompose", "0-3,1-2,4-5")
    assert out1 == out2


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--level", "quick", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["failures"] == []
    assert len(payload["checks"]) == 10


def test_mutated_connector_reports_failures():
    problems = verify.check_stackability(3, 3, connector_shift=+1)
    assert problems, "the opposite rounding convention must fail calibration"
