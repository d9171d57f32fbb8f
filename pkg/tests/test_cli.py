import json

import pytest

from lp_lab.cli import run
from lp_lab.model import pair_at
from lp_lab.serialization import save_pair, save_prior, save_model


@pytest.fixture
def files(tmp_path, fa, fb, fc, fd, fe):
    paths = {}
    paths["pairB1"] = tmp_path / "b1.pair"
    save_pair(pair_at(fb, "y1"), paths["pairB1"])
    paths["pairB2"] = tmp_path / "b2.pair"
    save_pair(pair_at(fb, "y2"), paths["pairB2"])
    paths["pairC1"] = tmp_path / "c1.pair"
    save_pair(pair_at(fc, "z1"), paths["pairC1"])
    paths["pairA1"] = tmp_path / "a1.pair"
    save_pair(pair_at(fa, "x1"), paths["pairA1"])
    paths["modelD"] = tmp_path / "d.model"
    save_model(fd, paths["modelD"])
    paths["prior"] = tmp_path / "e.prior"
    save_prior(fe, paths["prior"])
    paths["dir"] = tmp_path
    return {k: str(v) for k, v in paths.items()}


def test_relate_l_holds(files, capsys):
    code = run(["relate", "--kind", "L", files["pairB2"], files["pairC1"]])
    out = capsys.readouterr().out
    assert code == 0
    assert "3/2" in out


def test_relate_c_fails(files, capsys):
    assert run(["relate", "--kind", "C", files["pairB2"], files["pairC1"]]) == 1


def test_relate_s_holds(files):
    assert run(["relate", "--kind", "S", files["pairA1"], files["pairB1"]]) == 0


def test_missing_file_is_usage_error(files, capsys):
    code = run(["relate", "--kind", "L", "missing.pair", files["pairB1"]])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_bad_kind_is_usage_error(files, capsys):
    assert run(["relate", "--kind", "Q", files["pairB1"], files["pairB1"]]) == 2


def test_validate_model_and_pair(files, capsys):
    assert run(["validate", files["modelD"]]) == 0
    assert run(["validate", files["pairB1"]]) == 0


def test_validate_rejects_bad_model(tmp_path, capsys):
    bad = tmp_path / "bad.model"
    bad.write_text(
        json.dumps(
            {"theta": ["t1"], "space": ["a", "b"], "probs": [["1/2", "1/3"]]}
        )
    )
    assert run(["validate", str(bad)]) == 2


def test_reduce(files, capsys):
    assert run(["reduce", files["pairA1"]]) == 0
    assert "1/3" in capsys.readouterr().out


def test_ancillaries(files, capsys):
    assert run(["ancillaries", files["modelD"], "--maximal"]) == 0
    out = capsys.readouterr().out
    assert "(2)" in out
    assert run(["ancillaries", files["modelD"], "--laminal"]) == 0
    out = capsys.readouterr().out
    assert "1,2,3,4" in out


def test_chain_sc_and_c(files, capsys):
    assert run(["chain", "--kind", "SC", files["pairB2"], files["pairC1"]]) == 0
    assert "verified" in capsys.readouterr().out
    assert run(["chain", "--kind", "C", files["pairB2"], files["pairC1"]]) == 0


def test_chain_requires_l(files, capsys):
    assert run(["chain", "--kind", "SC", files["pairB1"], files["pairC1"]]) == 2


def test_closure_with_augmentation(tmp_path, fb, fc, capsys):
    d = tmp_path / "universe"
    d.mkdir()
    save_pair(pair_at(fb, "y2"), d / "b.pair")
    save_pair(pair_at(fc, "z1"), d / "c.pair")
    assert run(["closure", "--kind", "SC", "--dir", str(d)]) == 0
    assert "2 classes" in capsys.readouterr().out
    assert (
        run(["closure", "--kind", "SC", "--dir", str(d), "--augment", "birnbaum"])
        == 0
    )
    assert "1 classes" in capsys.readouterr().out


def test_search_l_minus_sc(capsys):
    code = run(
        ["search", "l-minus-sc", "--max-space", "2", "--max-denominator", "4"]
    )
    assert code == 0


def test_search_exhausted(capsys):
    code = run(
        ["search", "l-minus-sc", "--max-space", "1", "--max-denominator", "1"]
    )
    assert code == 1


def test_rb_analyze_and_strength(files, capsys):
    assert (
        run(
            [
                "rb",
                "analyze",
                files["pairB1"],
                "--prior",
                files["prior"],
                "--hypothesis",
                "t1",
            ]
        )
        == 0
    )
    out = capsys.readouterr().out
    assert "BF = 2" in out
    assert (
        run(
            [
                "rb",
                "strength",
                files["pairB1"],
                "--prior",
                files["prior"],
                "--theta",
                "t2",
            ]
        )
        == 0
    )
    assert "1/3" in capsys.readouterr().out


def test_check_model_and_prior(files, capsys):
    assert run(["check", "model", files["pairA1"]]) == 0
    assert "1/3" in capsys.readouterr().out
    assert run(["check", "prior", files["pairB1"], "--prior", files["prior"]]) == 0
    assert "3/8" in capsys.readouterr().out


def test_machine_output_is_deterministic_json(files, capsys):
    args = ["--machine", "relate", "--kind", "L", files["pairB2"], files["pairC1"]]
    assert run(args) == 0
    first = capsys.readouterr().out
    assert run(args) == 0
    second = capsys.readouterr().out
    assert first == second
    payload = json.loads(first)
    assert payload["witness"] == "3/2"


def test_decimal_annotation(files, capsys):
    assert (
        run(["--decimal", "3", "relate", "--kind", "L", files["pairB2"], files["pairC1"]])
        == 0
    )
    assert "1.500" in capsys.readouterr().out
