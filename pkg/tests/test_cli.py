"""Input format round-trips and command-line exit-code contracts."""

import json

import pytest

from toricell.cli import main
from toricell.fans import p2
from toricell.io_formats import ParseError, SemanticError, parse_input, serialize
from toricell.singular import PerturbationSpec
from toricell.toric import PairCoefficients

P2_TEXT = """\
rank 2
ray 1 0
ray 0 1
ray -1 -1
cone 0 1
cone 1 2
cone 2 0
"""

POLE_TEXT = """\
rank 2
ray 1 0
ray -1 0
ray 0 1
ray 0 -1
cone 0 2
cone 2 1
cone 1 3
cone 3 0
pair -1 -1 0 0
perturbation 1 1 0 0
"""


def _write(tmp_path, text, name="fan.txt"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_round_trip_identity(tmp_path):
    text = serialize(p2(), PairCoefficients((0, 0, -3)),
                     PerturbationSpec((1, 1, -2)))
    fan, pair, pert = parse_input(_write(tmp_path, text))
    assert serialize(fan, pair, pert) == text


def test_parse_reports_line_numbers(tmp_path):
    path = _write(tmp_path, "rank 2\nray 1 0\nbogus 1\n")
    with pytest.raises(ParseError) as err:
        parse_input(path)
    assert err.value.line == 3


def test_parse_rejects_non_primitive_ray(tmp_path):
    path = _write(tmp_path, "rank 2\nray 2 4\nray 0 1\ncone 0 1\n")
    with pytest.raises(SemanticError) as err:
        parse_input(path)
    assert "non-primitive" in str(err.value)
    assert err.value.line == 2


def test_parse_rejects_wrong_cone_size(tmp_path):
    path = _write(tmp_path, "rank 2\nray 1 0\nray 0 1\ncone 0\n")
    with pytest.raises(SemanticError):
        parse_input(path)


def test_validate_command(tmp_path, capsys):
    path = _write(tmp_path, P2_TEXT)
    assert main(["validate", path, "--format", "structured"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["smooth"] and payload["complete"]
    assert not payload["canonical_q_trivial"]


def test_genus_command_chi_y_anchor(tmp_path, capsys):
    path = _write(tmp_path, P2_TEXT)
    assert main(["genus", path, "--order", "1",
                 "--format", "structured"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["series"]["q^0"] == {"y^-1": "1", "1": "1", "y^1": "1"}


def test_missing_file_is_input_error(tmp_path, capsys):
    assert main(["genus", str(tmp_path / "missing.txt")]) == 2


def test_malformed_file_is_input_error(tmp_path, capsys):
    path = _write(tmp_path, "rank 2\nray 1 0\n")
    assert main(["validate", path]) == 2


def test_log_canonical_pair_is_precondition_error(tmp_path, capsys):
    text = P2_TEXT + "pair -1 -1 -1\n"
    path = _write(tmp_path, text)
    assert main(["genus", path, "--order", "1"]) == 3


def test_vanishing_command(tmp_path, capsys):
    text = P2_TEXT + "pair 0 0 -3\n"
    path = _write(tmp_path, text)
    assert main(["vanishing", path, "--order", "2", "--xi", "1,2",
                 "--format", "structured"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["calabi_yau"] and payload["vanishes"]


def test_limit_command_pole_exit_code(tmp_path, capsys):
    path = _write(tmp_path, POLE_TEXT)
    assert main(["limit", path, "--order", "1",
                 "--format", "structured"]) == 4
    payload = json.loads(capsys.readouterr().out)
    assert payload["status"] == "pole"
    assert payload["simple"] is True


def test_structured_output_is_deterministic(tmp_path, capsys):
    path = _write(tmp_path, P2_TEXT)
    argv = ["equivariant", path, "--order", "1", "--xi", "1,2",
            "--format", "structured"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    second = capsys.readouterr().out
    assert first == second
