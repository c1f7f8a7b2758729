import json
import subprocess
import sys

import pytest

from dehnkit.cli import main
from dehnkit.knotdb import dump_records, embedded_fixtures


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


@pytest.mark.parametrize("argv, expected", [
    (["lens-cw", 3, 1], {"lambda": "-1/36"}),
    (["surgery-cw", 2, 1, 1], {"lambda": "1/1"}),
    (["d-inv", 2, 1, 0], {"d": "1/4"}),
    (["d-inv", 5, 1, 0, "--v", "2,1,0"], {"d": "-3/1"}),
    (["d-gap", 5, 2], {"gap": "-3/5"}),
    (["link-form", 5, 2, 1, 2], {"value": "1/5"}),
    (["residue-check", 5, 2, 3], {"square": True, "obstructed": False}),
    (["cable-reduce", 3, 2, 13, 2], {"slope": "13/8"}),
    (["cable-reduce", 3, 2, 10, 2], {"slope": None}),
    (["prop51", 7], {"p": 7, "required_sum": 5, "obstructed": False}),
    (["prop51", 9], {"p": 9, "required_sum": None, "obstructed": True}),
])
def test_simple_commands(capsys, argv, expected):
    assert run_json(capsys, *argv) == (0, expected)


def test_lens_cw_exact_bytes(capsys):
    assert run(capsys, "lens-cw", 3, 1) == (0, '{"lambda":"-1/36"}\n')


def test_moser(capsys):
    code, out = run_json(capsys, "moser", 3, 2, 1, 1)
    assert out == {"kind": "SFS_over_S2", "fibers": [2, 3, 5], "lens_space": False}
    code, out = run_json(capsys, "moser", 3, 2, 1, 1, "--mirror")
    assert out["fibers"] == [-3, -2, 7]
    code, out = run_json(capsys, "moser", 3, 2, 6, 1)
    assert out["kind"] == "ConnectedSumLens" and out["lens_pair"] == [[3, 2], [2, 3]]


def test_alex_twist_and_matrix(capsys):
    code, out = run_json(capsys, "alex-twist", "--link", "L9a20", "--component", 2, "--k", 2)
    assert code == 0 and len(out["normalized"]) == 11
    code, out = run_json(capsys, "distinct-matrix", "--link", "L9a20", "--range", 3, 3)
    assert out["pairs"] == 36 and out["equal_up_to_units"] == [[-1, -1], [1, 1]]


def test_link_from_file(tmp_path, capsys):
    path = tmp_path / "links.jsonl"
    path.write_text(dump_records(embedded_fixtures()))
    code, out = run_json(capsys, "alex-twist", "--link", path, "--component", 1, "--k", 1)
    assert code == 0 and out["link"] == "L9a20"


def test_cable_slopes(capsys):
    code, out = run_json(capsys, "cable-slopes", "--max-p", 5, "--max-s", 2)
    assert "1/4" in out["slopes"] and "3/4" in out["slopes"] and out["count"] == len(out["slopes"])


def test_find_and_verify(tmp_path, capsys):
    code, out = run_json(capsys, "find-slopes", "--C", 10, "--q", 13, "--count", 1, "--limit", 100000)
    assert code == 0 and out["verified"]
    assert [c["p"] for c in out["certificates"]] == ["4201"]
    path = tmp_path / "certs.json"
    path.write_text(json.dumps(out))
    code, report = run_json(capsys, "verify-cert", path, "--C", 10, "--q", 13)
    assert code == 0 and report["valid"]

    single = out["certificates"][0]
    single["p"] = "4213"
    path.write_text(json.dumps(single))
    code, report = run_json(capsys, "verify-cert", path, "--C", 10, "--q", 13)
    assert code == 1 and not report["valid"]


def test_exhausted_search_exits_one(capsys):
    code, out = run_json(capsys, "find-slopes", "--C", 10, "--q", 13, "--count", 1, "--limit", 1000)
    assert code == 1 and out["exhausted"] and out["certificates"] == []


def test_hyp_consts(capsys):
    code, out = run_json(capsys, "hyp-consts", "--sys", 1)
    assert out["c"] == 0.0735 and out["D"] == 10.69
    assert out["five_D"] == pytest.approx(53.45, rel=1e-9)


def test_twist_slopes(capsys):
    code, out = run_json(capsys, "twist-slopes", "--l", 2, "--m", 1, "--n", 1)
    assert out["slope_n"] == out["counterpart_n"] == "3/-1"


def test_fixtures_command(capsys):
    code, out = run_json(capsys, "fixtures")
    assert {r["name"] for r in out["records"]} >= {"L9a20", "K3a1", "K4a1", "K5a2"}


@pytest.mark.parametrize("argv", [["lens-cw", 4, 2], ["d-gap", 5, 1], ["moser", 2, 4, 1, 1],
                                  ["alex-twist", "--link", "nope", "--component", 1, "--k", 1],
                                  ["verify-cert", "/nonexistent.json", "--C", 10, "--q", 13],
                                  ["hyp-consts", "--sys", 0]])
def test_domain_errors_exit_two(capsys, argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    assert code == 2 and captured.out == "" and captured.err.startswith("error:")


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["lens-cw", "three", "1"])
    assert exc.value.code == 2


def test_pretty_mode_reports_same_values(capsys):
    _, plain = run_json(capsys, "d-gap", 5, 2)
    _, pretty = run(capsys, "--pretty", "d-gap", 5, 2)
    assert pretty == f"gap: {plain['gap']}\n"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dehnkit", "lens-cw", "3", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == '{"lambda":"-1/36"}\n'
