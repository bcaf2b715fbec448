from rotset import main
from rotset.config import __version__
from rotset.serialize import shipped_path
import json
import pytest


def run(capsys, *argv):
    with pytest.raises(SystemExit) as e:
        main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return e.value.code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def write_json(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0
    assert out.strip() == __version__


def test_polygon_segment(capsys):
    code, doc, _ = run_json(capsys, "polygon", shipped_path("full_2_shift"))
    assert code == 0
    assert doc["tag"] == "segment"
    assert doc["vertices"] == [["0/1", "0/1"], ["1/1", "0/1"]]
    assert doc["seed"] == 0
    assert doc["version"] == __version__
    assert doc["command"] == "polygon"


def test_polygon_triangle(capsys):
    code, doc, _ = run_json(capsys, "polygon", shipped_path("triangle"))
    assert code == 0
    assert doc["tag"] == "polygon"
    assert doc["vertices"] == [["0/1", "0/1"], ["1/1", "0/1"], ["0/1", "1/1"]]


def test_output_is_deterministic(capsys):
    _, first, _ = run(capsys, "polygon", shipped_path("triangle"), "--seed", 7)
    _, second, _ = run(capsys, "polygon", shipped_path("triangle"), "--seed", 7)
    assert first == second
    assert json.loads(first)["seed"] == 7


def test_support(capsys):
    code, doc, _ = run_json(capsys, "support", shipped_path("full_2_shift"), "1/1,0/1")
    assert code == 0
    assert doc["value"] == "1/1"
    assert doc["witness"] == [1]
    assert doc["witness_mean"] == ["1/1", "0/1"]


def test_support_zero_direction(capsys):
    code, _, err = run(capsys, "support", shipped_path("full_2_shift"), "0/1,0/1")
    assert code == 3
    assert "zero direction" in err


def test_support_malformed_direction(capsys):
    code, _, err = run(capsys, "support", shipped_path("full_2_shift"), "1/2")
    assert code == 2
    assert err.startswith("rotset: error:")


def test_oracle(capsys):
    code, doc, err = run_json(
        capsys, "oracle", shipped_path("triangle"), "--n-max", 9, "-v"
    )
    assert code == 0
    assert doc["pass"]
    assert doc["equal_at"] == 1
    assert len(doc["rows"]) == 9
    assert "bound^2" in err


def test_oracle_cap(capsys):
    code, _, err = run(
        capsys, "oracle", shipped_path("triangle"), "--n-max", 20, "--cap-words", 1000
    )
    assert code == 5
    assert "cap" in err


def test_decompose(capsys):
    code, doc, _ = run_json(capsys, "decompose", shipped_path("triangle"), "01201")
    assert code == 0
    assert doc["decomposition"]["cycles"] == [[0, 1, 2]]
    assert doc["decomposition"]["remainder"] == [0, 1]
    assert doc["psi"] == [2, 1]
    assert doc["conserved"]


def test_decompose_inadmissible(capsys):
    code, _, _ = run(capsys, "decompose", shipped_path("two_cycle"), "00")
    assert code == 3


def test_power(capsys):
    code, doc, _ = run_json(capsys, "power", shipped_path("full_2_shift"), 2)
    assert code == 0
    assert doc["alphabet"] == 4
    assert doc["displacements"] == [[0, 0], [1, 0], [1, 0], [2, 0]]
    assert doc["labels"] == ["00", "01", "10", "11"]


def test_affine(capsys, tmp_path):
    out = tmp_path / "rotated.json"
    code, _, _ = run(
        capsys, "affine", shipped_path("full_2_shift"), "0,-1,1,0", "-o", out
    )
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["displacements"] == [[0, 0], [0, 1]]

    code, poly, _ = run_json(capsys, "polygon", out)
    assert code == 0
    assert poly["vertices"] == [["0/1", "0/1"], ["0/1", "1/1"]]


def test_affine_malformed_matrix(capsys):
    code, _, _ = run(capsys, "affine", shipped_path("full_2_shift"), "1,0,0")
    assert code == 2


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "polygon", tmp_path / "nothing.json")
    assert code == 2
    assert "cannot be found" in err


def test_invalid_system(capsys, tmp_path):
    path = write_json(
        tmp_path / "bad.json",
        {"alphabet": 2, "transitions": [[0, 1], []], "displacements": [[0, 0], [1, 0]]},
    )
    code, _, err = run(capsys, "polygon", path)
    assert code == 3
    assert "empty successor set at 1" in err


def test_polygon_svg(capsys, tmp_path):
    out = tmp_path / "triangle.json"
    code, _, _ = run(capsys, "polygon", shipped_path("triangle"), "-o", out, "--svg")
    assert code == 0
    assert (tmp_path / "triangle.svg").exists()


def test_ap_literal(capsys):
    code, doc, _ = run_json(capsys, "ap", "3/10")
    assert code == 0
    assert doc["t"] == 2
    assert doc["verified_to_depth"] == 5
    s = {row["n"]: row["S"] for row in doc["checkpoints"]}
    assert s[2] == "3/32"
    assert s[3] == "483/512"
    assert doc["density"]["dense"]
    assert doc["density"]["burn_in"] == 512
    assert doc["step_bound"]["pass"]
    # the literal sequence misses its first word in some window
    assert not doc["recurrence"][0]["pass"]


def test_ap_toeplitz(capsys):
    code, doc, _ = run_json(
        capsys, "ap", "3/10", "--variant", "toeplitz", "--cap-sum", 600
    )
    assert code == 0
    assert doc["verified_to_depth"] == 3
    assert all(r["pass"] for r in doc["recurrence"])
    assert doc["checkpoints"][3]["S"] == "453/512"


def test_ap_bad_delta(capsys):
    code, _, _ = run(capsys, "ap", "3/2")
    assert code == 3


def test_ap_bad_variant(capsys):
    code, _, _ = run(capsys, "ap", "1/4", "--variant", "sturmian")
    assert code == 2


def test_simulate_translation(capsys, tmp_path):
    out = tmp_path / "translation.json"
    code, _, _ = run(
        capsys,
        "simulate",
        shipped_path("translation"),
        "--grid",
        8,
        "-n",
        100,
        "-o",
        out,
    )
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["estimate"]["tag"] == "estimate"
    assert doc["cauchy"]["pass"]
    lines = (tmp_path / "translation.csv").read_text().splitlines()
    assert lines[0] == "x,y,phi_x,phi_y"
    assert len(lines) == 65


def test_simulate_demo_chart(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, doc, _ = run_json(
        capsys,
        "simulate",
        shipped_path("shear_pair"),
        "--chart",
        shipped_path("demo_chart"),
        "-n",
        200,
    )
    assert code == 0
    assert doc["chart"]["pass"]
    assert doc["displacement"]["pass"]
    assert doc["displacement"]["segments"] > 0
    lines = (tmp_path / "cloud.csv").read_text().splitlines()
    assert len(lines) == 1 + 32 * 32


def test_simulate_wrong_chart(capsys, tmp_path):
    path = write_json(
        tmp_path / "chart.json",
        {
            "domain": [[0.05, 0.05], [0.95, 0.95]],
            "rectangles": [
                {"rect": [[0.15, 0.15], [0.35, 0.35]], "s": [0, 0]},
                {"rect": [[0.15, 0.6], [0.35, 0.8]], "s": [0, 0]},
            ],
        },
    )
    code, _, err = run(
        capsys, "simulate", shipped_path("shear_pair"), "--chart", path, "-n", 10
    )
    assert code == 3
    assert "rectangle 1" in err


def test_simulate_unknown_family(capsys, tmp_path):
    path = write_json(tmp_path / "lift.json", {"family": "horseshoe"})
    code, _, _ = run(capsys, "simulate", path)
    assert code == 3
