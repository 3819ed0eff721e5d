import json

import pytest

from wreathmgs import automaton as am
from wreathmgs.acceptance import branch_b_instance
from wreathmgs.cli import main
from wreathmgs.construct import dump_instance
from wreathmgs.perm import Permutation, cyclic, save_group, symmetric
from wreathmgs.portrait import random_portrait


@pytest.fixture
def files(tmp_path):
    save_group(symmetric(5), tmp_path / "s5.json")
    save_group(symmetric(4), tmp_path / "s4.json")
    am.save_machine(am.odometer(), tmp_path / "odo.json")
    am.save_machine(am.m0_generator(1), tmp_path / "m0.json")
    (tmp_path / "p.json").write_text(json.dumps(random_portrait((2,) * 4, 3).to_json()))
    (tmp_path / "bb.json").write_text(json.dumps(dump_instance(branch_b_instance())))
    C4 = cyclic(4)
    r = C4.generators[0]
    bad = {"A": symmetric(5).to_json(), "H": C4.to_json(), "H0": "power", "k": 2,
           "F": [list(r.images)]}
    (tmp_path / "c4.json").write_text(json.dumps(bad))
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def test_ps_check(files, capsys):
    code, out = run(capsys, "ps-check", files / "s5.json")
    assert code == 0
    data = json.loads(out)
    assert data["witness"]["x1"] == [0, 1] and data["witness"]["x2"] == [2, 3, 4]
    code, out = run(capsys, "ps-check", files / "s4.json")
    assert code == 1
    assert json.loads(out)["reason"].startswith("no disjoint subsets of required sizes")


def test_lemma_replay(files, capsys):
    code, out = run(capsys, "lemma-replay", files / "bb.json", "--lemma", "power", "--trials", "5")
    assert code == 0 and json.loads(out)["replay"]["instances_checked"] == 5
    code, _ = run(capsys, "lemma-replay", files / "c4.json", "--lemma", "t")
    assert code == 1


def test_theta_classify(files, capsys):
    code, out = run(capsys, "theta", files / "odo.json", "-N", "4")
    assert code == 0 and json.loads(out)["theta"] == [1] * 5
    code, out = run(capsys, "classify", files / "m0.json")
    assert code == 0
    assert json.loads(out)["finitary_depth"] == 3


def test_parity_decompose(files, capsys):
    code, out = run(capsys, "parity", files / "m0.json", "--depth", "5")
    assert code == 0 and json.loads(out)["not_a_square_at"] == 2
    code, out = run(capsys, "decompose", files / "p.json", "-k", "2")
    assert code == 0 and json.loads(out)["round_trip"] is True


def test_compose(files, capsys):
    out_path = files / "prod.json"
    code, _ = run(capsys, "compose", files / "odo.json", files / "m0.json", "-o", out_path)
    assert code == 0
    g = am.load_machine(out_path)
    assert g == am.odometer() * am.m0_generator(1)


def test_text_format(files, capsys):
    code, out = run(capsys, "theta", files / "odo.json", "-N", "2", "--format", "text")
    assert code == 0 and out.startswith("N: 2")


def test_usage_errors(files, capsys):
    with pytest.raises(SystemExit) as info:
        main(["bogus"])
    assert info.value.code == 64
    with pytest.raises(SystemExit) as info:
        main(["theta", str(files / "odo.json"), "--unknown"])
    assert info.value.code == 64
    assert main(["theta", str(files / "missing.json")]) == 64


def test_resource_error(files, capsys):
    code, out = run(capsys, "ps-check", files / "s5.json", "--cap", "10")
    assert code == 3 and json.loads(out)["error"] == "GroupTooLarge"


def test_suite_deterministic(capsys):
    code1, out1 = run(capsys, "suite", "--seed", "7")
    code2, out2 = run(capsys, "suite", "--seed", "7")
    assert code1 == code2 == 0 and out1 == out2
    data = json.loads(out1)
    assert [c["number"] for c in data["criteria"]] == list(range(1, 10))
