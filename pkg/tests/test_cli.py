import json
from os import path

import pytest

from cdo_workbench.cli import build_parser, inputs_digest, run
from tests.conftest import DATA, GOLDEN


def run_json(argv, capsys):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


def golden(name: str) -> dict:
    with open(path.join(GOLDEN, name), encoding="utf8") as f:
        return json.load(f)


def without_digest(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "inputs_digest"}


def test_classify_borel_matches_golden(capsys):
    code, report = run_json(["classify", "--space", "G/B", "--algebra", "sl2"], capsys)
    assert code == 0
    assert without_digest(report) == golden("classify_borel_sl2.json")


def test_cohomology_dims_matches_golden(capsys):
    code, report = run_json(["cohomology", "dims", "heisenberg3"], capsys)
    assert code == 0
    assert without_digest(report) == golden("cohomology_dims_heisenberg3.json")


@pytest.mark.parametrize("argv, name", [
    (["classify", "--space", "group", "--algebra", "sl2"], "classify_group_sl2.json"),
    (["classify", "--space", "group", "--algebra", "sl3"], "classify_group_sl3.json"),
    (["classify", "--space", "G/N", "--algebra", "sl3"], "classify_unipotent_sl3.json"),
    (["classify", "--space", "G/B", "--algebra", "sl3"], "classify_borel_sl3.json"),
    (["classify", "--space", "G/P", "--algebra", "sl3"], "classify_parabolic_sl3.json"),
])
def test_classify_matches_golden(argv, name, capsys):
    code, report = run_json(argv, capsys)
    assert code == 0
    assert without_digest(report) == golden(name)


def test_classify_borel_sl3(capsys):
    code, report = run_json(["classify", "--space", "G/B", "--algebra", "sl3"], capsys)
    assert code == 0
    assert report["verdict"] == "unique"
    assert report["ch2"]["verdict"] == "zero"


def test_classify_projective_plane(capsys):
    code, report = run_json(["classify", "--space", "G/P", "--algebra", "sl3", "--parabolic", "2"], capsys)
    assert code == 0
    assert report["verdict"] == "empty"
    assert report["parabolic"] == [2]
    assert report["admissible_levels"]["verdict"] == "none"


def test_unknown_space_is_a_usage_error(capsys):
    assert run(["classify", "--space", "G/Q", "--algebra", "sl2"]) == 2
    assert capsys.readouterr().out == ""


def test_brst_square_heisenberg(capsys):
    code, report = run_json(["brst", "square", "heisenberg3", "--max-weight", "1"], capsys)
    assert code == 0
    assert report["verdict"] == "d²=0"
    assert report["nonzero_blocks"] == []


def test_brst_square_sl2(capsys):
    code, report = run_json(["brst", "square", "sl2", "--max-weight", "1"], capsys)
    assert code == 0
    assert report["verdict"] == "d²≠0"
    assert report["matches_killing_operator"]


def test_brst_cohomology_with_oracle(capsys):
    code, report = run_json(
        ["brst", "cohomology", "--algebra", "heisenberg3", "--max-weight", "1", "--oracle"], capsys
    )
    assert code == 0
    assert report["oracle"] == "agrees"
    assert report["dims"]["0"] == {"0": 1, "1": 2, "2": 2, "3": 1}


def test_brst_cohomology_of_betagamma(capsys):
    code, report = run_json(
        ["brst", "cohomology", "--algebra", "abelian1", "--module", "betagamma", "--max-weight", "1",
         "--torus-radius", "1"],
        capsys,
    )
    assert code == 0
    assert report["dims"]["0"] == {"0": 1}


def test_brst_cohomology_relative(capsys):
    code, report = run_json(
        ["brst", "cohomology", "--algebra", "borel(sl2)", "--module", "currents:-1", "--max-weight", "1",
         "--relative"],
        capsys,
    )
    assert code == 0
    assert report["relative"]["stable"]


def test_brst_cohomology_with_nonzero_square_is_rejected(capsys):
    assert run(["brst", "cohomology", "--algebra", "sl2", "--max-weight", "1"]) == 2
    assert capsys.readouterr().out == ""


def test_bad_module_is_a_usage_error():
    assert run(["brst", "cohomology", "--algebra", "sl2", "--module", "spinors"]) == 2


def test_broken_presentation(capsys):
    assert run(["lie", "validate", path.join(DATA, "broken.json")]) == 2
    assert capsys.readouterr().out == ""


def test_valid_presentation(capsys):
    code, report = run_json(["lie", "validate", path.join(DATA, "sl2.json")], capsys)
    assert code == 0
    assert report["semisimple"] and not report["nilpotent"]
    assert report["basis"] == ["e", "h", "f"]


def test_lie_levels(capsys):
    code, report = run_json(["lie", "levels", "sl2"], capsys)
    assert code == 0
    assert report["critical_level"][1][1] == "-4"
    assert report["dual_level"][1][1] == "-8*t - 8"


def test_lie_forms(capsys):
    code, report = run_json(["lie", "forms", "abelian2"], capsys)
    assert code == 0
    assert report["dimension"] == 3


def test_algebroid_commands(capsys):
    code, report = run_json(["algebroid", "check", "sl2", "--level", "1"], capsys)
    assert code == 0
    assert report["verdict"] == "verified"
    assert report["morphism_to_full_cocycle"] is False
    code, report = run_json(["algebroid", "pi0", "sl2"], capsys)
    assert code == 0
    assert report["verdict"] == "agree"


def test_group_verify_dual(capsys):
    code, report = run_json(["group", "verify-dual", "SL2", "--level", "critical"], capsys)
    assert code == 0
    assert report["verdict"] == "verified"
    assert report["level"] == report["dual_level"]


def test_flag_ch2(capsys):
    code, report = run_json(["flag", "ch2", "--type", "A", "--rank", "2", "--parabolic", "2"], capsys)
    assert code == 0
    assert report["verdict"] == "nonzero"
    assert report["matrix"] == [["2", "1"], ["1", "1"]]
    assert report["invariant_quadratics"] == 1


def test_unknown_algebra(capsys):
    assert run(["lie", "killing", "sl"]) == 2
    assert capsys.readouterr().out == ""


@pytest.mark.parametrize("argv", [[], ["lie"], ["flag", "ch2", "--type", "A"], ["brst", "square", "sl2", "--max-weight", "x"]])
def test_usage_errors(argv):
    assert run(argv) == 2


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    assert run(["--output", str(target), "cohomology", "dims", "sl2"]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text(encoding="utf8"))["dims"] == [1, 0, 0, 1]


def test_inputs_digest():
    assert inputs_digest(["lie", "killing", "sl2"]) == inputs_digest(["lie", "killing", "sl2"])
    assert inputs_digest(["lie", "killing", "sl2"]) != inputs_digest(["lie", "killing", "sl3"])
    assert inputs_digest(["--output", "a.json", "lie", "killing", "sl2"]) == inputs_digest(["lie", "killing", "sl2"])


def test_digest_covers_file_content(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    first.write_text(open(path.join(DATA, "sl2.json"), encoding="utf8").read(), encoding="utf8")
    second.write_text(open(path.join(DATA, "heisenberg3.json"), encoding="utf8").read(), encoding="utf8")
    assert inputs_digest(["lie", "validate", str(first)]) != inputs_digest(["lie", "validate", str(second)])


def test_parser_has_every_group():
    parser = build_parser()
    for argv in (["lie", "killing", "sl2"], ["cohomology", "dims", "sl2"], ["algebroid", "pi0", "sl2"],
                 ["group", "verify-dual", "SL2"], ["brst", "square", "sl2"], ["flag", "ch2", "--type", "A", "--rank", "1"],
                 ["classify", "--space", "group", "--algebra", "sl2"]):
        assert callable(parser.parse_args(argv).handler)


def test_brst_square_algebra_option(capsys):
    code, report = run_json(["brst", "square", "--algebra", "heisenberg3", "--max-weight", "2"], capsys)
    assert code == 0
    assert report["verdict"] == "d²=0"


@pytest.mark.parametrize("argv", [
    ["brst", "square", "sl2", "--algebra", "heisenberg3"],
    ["brst", "square", "--max-weight", "1"],
])
def test_brst_square_needs_one_algebra(argv, capsys):
    assert run(argv) == 2
    assert capsys.readouterr().out == ""


def test_brst_cohomology_relative_to_named_cartan(capsys):
    code, report = run_json(
        ["brst", "cohomology", "--algebra", "borel(sl2)", "--module", "currents:critical", "--max-weight", "1",
         "--relative", "h"],
        capsys,
    )
    assert code == 0
    assert report["relative"]["stable"]


def test_brst_cohomology_relative_to_unknown_subalgebra(capsys):
    argv = ["brst", "cohomology", "--algebra", "borel(sl2)", "--module", "currents:-1", "--max-weight", "1",
            "--relative", "q"]
    assert run(argv) == 2
    assert capsys.readouterr().out == ""


def test_betagamma_report_names_the_torus_window(capsys):
    code, report = run_json(
        ["brst", "cohomology", "--algebra", "abelian1", "--module", "betagamma", "--max-weight", "1",
         "--torus-radius", "1"],
        capsys,
    )
    assert code == 0
    assert report["torus_radius"] == 1
    assert report["torus_weights"] == [[-1], [0], [1]]


def test_algebroid_check_names_the_normalization(capsys):
    code, report = run_json(["algebroid", "check", "sl2", "--level", "1"], capsys)
    assert code == 0
    assert report["connecting_morphism"] == "Ã(sl2) -> A(sl2;c/2)"
    assert report["morphism_to_half_cocycle"] is True
    assert "c_(,)/2" in report["connecting_normalization"]


def test_undecodable_presentation(tmp_path, capsys):
    target = tmp_path / "latin1.json"
    target.write_bytes(b'{"name": "\xff\xfe", "basis": ["x"]}')
    assert run(["lie", "validate", str(target)]) == 2
    assert capsys.readouterr().out == ""
