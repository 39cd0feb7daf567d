""" Tests for the command line front end """

import os

import pytest

from grossca.cli import parse_window, run

from .test_utils import data_file

ONE_SIDED = [data_file("one_sided_x.cfg"), data_file("one_sided_y.cfg")]
FINITE = [data_file("finite_window_x.cfg"), data_file("finite_window_y.cfg")]
SINGLE = data_file("single1.cfg")


def output(capsys, argv, code=0):
    assert run(argv) == code
    return capsys.readouterr().out


def test_parse_window():
    assert parse_window("-2:2") == (-2, 2)
    assert parse_window("3:3") == (3, 3)


@pytest.mark.parametrize("argv, expected", [
    (["distance"] + ONE_SIDED, "2^-(①+3)\n"),
    (["--ascii", "distance"] + ONE_SIDED, "2^-(G+3)\n"),
    (["distance", "--ascii"] + ONE_SIDED, "2^-(G+3)\n"),
    (["distance", "--mode", "classical"] + ONE_SIDED, "1/8\n"),
    (["distance"] + FINITE, "1/16\n"),
    (["distance", "--mode", "summed"] + FINITE, "3/8\n"),
])
def test_distance(capsys, argv, expected):
    assert output(capsys, argv) == expected


def test_meet(capsys):
    assert output(capsys, ["meet"] + ONE_SIDED) == "m=-2\nn=①\nwitness=-\n"
    assert output(capsys, ["meet"] + FINITE) == "m=-1\nn=2\nwitness=0000\n"
    assert output(capsys, ["meet", ONE_SIDED[0], ONE_SIDED[0]]) == "identical\n"


@pytest.mark.parametrize("argv, expected", [
    (["cardinality", "--space"], "2^(2①+1)\n"),
    (["cardinality", "--disk", "-m", "-2", "-n", "3"], "2^(2①-5)\n"),
    (["cardinality", "--shift-bmn", "-s", "3"], "3^① + 1\n"),
    (["cardinality", "--shift-bmn", "-m", "-2"], "2^① + 1\nagreement on [-2, ①]: 2^(①-2)\n"),
])
def test_cardinality(capsys, argv, expected):
    assert output(capsys, argv) == expected


def test_evolve_rule90(capsys):
    argv = ["evolve", "--elementary", "90", SINGLE, "--steps", "2", "--window", "-2:2"]
    assert output(capsys, argv) == "··#··\n·#·#·\n#···#\n"
    assert output(capsys, ["--ascii"] + argv) == "..#..\n.#.#.\n#...#\n"


def test_evolve_pgm_to_file(capsys, tmp_path):
    target = tmp_path / "rule90.pgm"
    argv = ["evolve", "--elementary", "90", SINGLE, "--steps", "2", "--window", "-2:2",
            "--render", "pgm", "--output", str(target)]
    assert output(capsys, argv) == ""
    assert target.read_text() == "P2\n5 3\n1\n0 0 1 0 0\n0 1 0 1 0\n1 0 0 0 1\n"


def test_evolve_random_is_seeded(capsys):
    argv = ["evolve", "--totalistic", "20", "--range", "2", "--random", "5", "--steps", "20", "--window", "-20:19"]
    first = output(capsys, argv)
    assert first == output(capsys, argv)
    assert len(first.splitlines()) == 21


def test_evolve_report(capsys, output_base):
    argv = ["evolve", "--elementary", "90", SINGLE, "--steps", "2", "--report"]
    output(capsys, argv)
    assert os.path.exists(output_base / "evolve" / "grossca_report_spacetime.xlsx")


def test_bmn_enumerate_shift(capsys):
    argv = ["bmn", "--enumerate", "--shift", "--word", "00010000", "-m", "-1", "-n", "1", "-T", "8"]
    assert output(capsys, argv) == "count=1\n00010000\n"


def test_bmn_count_only(capsys):
    argv = ["bmn", "--enumerate", "--shift", "--word", "00010000", "-m", "-1", "-n", "1", "-T", "2", "--count-only"]
    assert output(capsys, argv) == "count=8\n"


def test_bmn_check(capsys):
    argv = ["bmn", "--check"] + FINITE + ["--elementary", "90", "-m", "0", "-n", "0", "-T", "0"]
    assert output(capsys, argv) == "member\n"
    argv = ["bmn", "--check"] + FINITE + ["--shift", "-m", "0", "-n", "0", "-T", "3"]
    assert output(capsys, argv) == "not member\n"


def test_verify_ultrametric(capsys):
    argv = ["verify", "--ultrametric", "--samples", "200", "--seed", "7"]
    first = output(capsys, argv)
    assert "ultrametric inequality (nested meets)" in first
    assert "FAIL" not in first
    assert first == output(capsys, argv)


def test_verify_suite_alias(capsys):
    text = output(capsys, ["verify", "--example3"])
    assert "rule128-decay" in text
    assert "ultrametric" not in text


def test_verify_report(capsys, output_base):
    output(capsys, ["verify", "--rule90-additivity", "--samples", "20", "--report"])
    assert os.path.exists(output_base / "verify" / "grossca_report_verify.xlsx")


def test_domain_errors_exit_1(capsys):
    assert run(["evolve", "--elementary", "256", SINGLE]) == 1
    assert "error" in capsys.readouterr().err
    assert run(["cardinality", "--disk", "-m", "1", "-n", "2"]) == 1
    assert run(["bmn", "--enumerate", "--shift", "--word", "0" * 21]) == 1
    assert run(["bmn", "--enumerate", "--totalistic", "5", "-s", "3", "--word", "01201201201201201201"]) == 1
    assert "candidates" in capsys.readouterr().err


@pytest.mark.parametrize("name, content, command", [
    ("bad.yaml", b"alphabet: 2\nrange: [1\n", "rule"),
    ("bad.yaml", b"alphabet: 2\nrange: x\ntable:\n  '0': 1\n  '1': 0\n", "rule"),
    ("bad.cfg", b"left=\xff core=- offset=0 right=0\n", "distance"),
    ("bad.cfg", b"left=0 core=- offset=0\n", "distance"),
])
def test_malformed_inputs_exit_1(capsys, tmp_path, name, content, command):
    path = tmp_path / name
    path.write_bytes(content)
    if command == "rule":
        argv = ["evolve", "--rule-table", str(path), SINGLE, "--steps", "1"]
    else:
        argv = ["distance", str(path), ONE_SIDED[1]]
    assert run(argv) == 1
    err = capsys.readouterr().err
    assert err.startswith("grossca: error: bad.")
    assert len(err.splitlines()) == 1


def test_unwritable_output_exits_1(capsys, tmp_path):
    target = tmp_path / "missing" / "out.pgm"
    argv = ["evolve", "--elementary", "90", SINGLE, "--steps", "1", "--window", "-2:2",
            "--render", "pgm", "--output", str(target)]
    assert run(argv) == 1
    err = capsys.readouterr().err
    assert err.startswith("grossca: error: No such file or directory")
    assert str(target) in err


@pytest.mark.parametrize("argv", [
    [],
    ["distance", "missing.cfg", ONE_SIDED[1]],
    ["evolve", "--elementary", "90"],
    ["evolve", "--elementary", "90", SINGLE, "--window", "3:1"],
    ["cardinality", "--disk", "-m", "-1"],
    ["bmn", "--enumerate", "--shift"],
    ["--config", "missing.yaml", "cardinality", "--space"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(argv) == 2


def test_unreadable_settings_file_exits_2(capsys, tmp_path):
    path = tmp_path / "settings.yaml"
    path.write_bytes(b"logging:\n  level: \xff\n")
    assert run(["--config", str(path), "cardinality", "--space"]) == 2
    assert capsys.readouterr().err.startswith("grossca: error:")
