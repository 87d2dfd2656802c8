import json
import subprocess
import sys
from importlib.resources import files

import jsonschema
import pytest

from thetaorbit.cli import main

SCHEMA = json.loads(files("thetaorbit").joinpath("schema.json").read_text())
OSP = ["--pair", "osp", "--p", "3", "--q", "3", "--n", "1"]
UU = ["--pair", "uu", "--p", "2", "--q", "2", "--m", "1", "--n", "1"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    return code, data


def test_schema_is_valid():
    jsonschema.Draft202012Validator.check_schema(SCHEMA)


def test_orbit_lift_text(capsys):
    code, out, _ = run(capsys, "orbits", "lift", *OSP, "--diagram", "[(+)(-)]")
    assert code == 0 and out == "[(+-)(-+)(+)(-)]\n"


def test_orbit_list(capsys):
    code, out, _ = run(capsys, "orbits", "list", *UU)
    assert code == 0 and len(out.splitlines()) == 3
    code, data = run_json(capsys, "orbits", "list", *UU)
    assert [d["text"] for d in data["diagrams"]] == out.split()


def test_empty_diagram_is_usage_error(capsys):
    code, out, err = run(capsys, "orbits", "lift", *OSP, "--diagram", "[]")
    assert code == 2 and out == "" and "error" in err


def test_stable_range_is_usage_error(capsys):
    code, _, _ = run(capsys, "degree", "--pair", "osp", "--p", "3", "--q", "2", "--n", "1")
    assert code == 2


def test_missing_params_usage_error(capsys):
    assert run(capsys, "degree", "--pair", "osp", "--p", "3")[0] == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["degree", "--method", "bogus"])
    assert exc.value.code == 2


def test_ring_csv(capsys):
    code, out, _ = run(capsys, "ring", "decompose", *OSP, "--orbit", "trivial", "-K", "4", "--format", "csv")
    assert code == 0 and out.splitlines() == ["k,H(k)", "0,1", "1,9", "2,25", "3,49", "4,81"]
    code, out, _ = run(capsys, "ring", "decompose", *OSP, "--orbit", "regular-hol", "-K", "2", "--format", "text")
    assert out.splitlines()[-1] == "H = 1,9,30"
    code, out, _ = run(capsys, "ring", "decompose", *OSP, "-K", "0", "--format", "text")
    assert out.splitlines() == ["0\tO(3)[]\tO(3)[]\t1", "H = 1"]


def test_ring_json_and_file_input(capsys, tmp_path):
    code, data = run_json(capsys, "ring", "decompose", *OSP, "--orbit", "trivial", "-K", "3")
    assert data["hilbert"] == [1, 9, 25, 49]
    # feed the zero orbit back in through a file and get the same answer
    path = tmp_path / "zero.json"
    path.write_text(json.dumps({"entries": [{"deg": 0, "labels": [
        {"kprime": [{"group": "GL(1)", "weight": [0]}], "mult": 1}]}]}))
    code, again = run_json(capsys, "ring", "decompose", *OSP, "--orbit", "file", "--input", str(path), "-K", "3")
    assert again["entries"] == data["entries"]


def test_ring_harmonics_check(capsys):
    code, data = run_json(capsys, "ring", "harmonics", *UU, "--side", "plus", "-K", "6", "--check")
    assert code == 0 and data["complete_intersection_match"] is True


def test_degree_both(capsys):
    code, data = run_json(capsys, "degree", *OSP, "--orbit", "trivial", "--method", "both")
    assert code == 0
    assert data["asymptotic"] == "8" and data["hilbert_fit"] == "8" and data["literal"] == "4/5"
    assert data["agree"] == {"asym_fit": True, "literal_asym": False}
    code, _, _ = run(capsys, "degree", *OSP, "--strict-literal")
    assert code == 1


def test_degree_single_methods(capsys):
    assert run_json(capsys, "degree", *UU, "--orbit", "regular-hol", "--method", "asymptotic")[1]["asymptotic"] == "4"
    assert run_json(capsys, "degree", *OSP, "--orbit", "regular-hol", "--method", "fit")[1]["hilbert_fit"] == "6"
    assert run_json(capsys, "degree", *OSP, "--method", "literal")[1]["literal"] == "4/5"


def test_degree_table(capsys):
    code, out, _ = run(capsys, "degree-table", "--grid", "osp:3,3,1;spostar:2,2,1")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("pair,orbit,d,asymptotic")
    assert len(lines) == 5 and '"OSp(3,3,1)",trivial,2,8,8,4/5,true,false' in lines
    assert run(capsys, "degree-table", "--grid", "osp:3,3")[0] == 2


def test_selberg(capsys):
    assert run(capsys, "selberg", "--n", "2", "--kappa", "1")[1] == "1/30 = 1/30, equal:true\n"
    code, data = run_json(capsys, "selberg", "--n", "2", "--kappa", "2", "--dsquared")
    assert data["equal"] is True
    assert run(capsys, "selberg", "--n", "2", "--kappa", "0")[0] == 2
    assert run(capsys, "selberg", "--n", "2", "--kappa", "x")[0] == 2


def test_geometry_check(capsys):
    code, data = run_json(capsys, "geometry", "check-lift", *OSP, "--all")
    assert code == 0 and data["all_ok"] and len(data["checks"]) == 3
    code, out, _ = run(capsys, "geometry", "check-lift", *UU, "--diagram", "[(-+)]", "--format", "text")
    assert out.strip().endswith("true")


def test_config_file_and_flag_precedence(capsys, tmp_path):
    conf = tmp_path / "run.conf"
    conf.write_text("# degrees for the unitary pair\npair = uu\np=2\nq=2\nm=1\nn=1\norbit=regular-hol\n")
    assert run_json(capsys, "degree", "--config", str(conf), "--method", "asymptotic")[1]["asymptotic"] == "4"
    out = run_json(capsys, "degree", "--config", str(conf), "--orbit", "trivial", "--method", "asymptotic")[1]
    assert out["asymptotic"] == "6"
    bad = tmp_path / "bad.conf"
    bad.write_text("pair uu\n")
    assert run(capsys, "degree", "--config", str(bad))[0] == 2


def test_output_is_deterministic(capsys):
    args = ["ring", "decompose", "--pair", "osp", "--p", "5", "--q", "5", "--n", "2", "--orbit", "flat",
            "-K", "4", "--format", "json"]
    first = run(capsys, *args, "--threads", "1")[1]
    second = run(capsys, *args, "--threads", "3")[1]
    assert first == second


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "thetaorbit", "selberg", "--n", "1", "--kappa", "5"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "1/5 = 1/5, equal:true\n"


def test_config_values_are_validated(capsys, tmp_path):
    conf = tmp_path / "bad_pair.conf"
    conf.write_text("pair=foo\np=3\nq=3\nn=1\n")
    assert run(capsys, "degree", "--config", str(conf))[0] == 2
    conf.write_text("pair=osp\np=three\nq=3\nn=1\n")
    assert run(capsys, "degree", "--config", str(conf))[0] == 2


def test_harmonics_default_side(capsys):
    code, out, _ = run(capsys, "ring", "harmonics", *OSP, "-K", "3", "--format", "csv")
    assert code == 0 and out.splitlines()[1:] == ["0,1", "1,3", "2,5", "3,7"]
