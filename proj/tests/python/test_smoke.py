import pytest

import reeb_forge as rf


def ranks(h):
    return [d["rank"] for d in h]


def test_smith_normal_form():
    assert rf.smith_normal_form([[2, 4], [6, 8]]) == [2, 4]
    big = 2**80
    assert rf.smith_normal_form([[big, 0], [0, 3]]) == [1, 3 * big]


def test_homology_of_lens_complex():
    h = rf.homology_of_complex([[[0]], [[3]], [[0]]])
    assert h == [
        {"rank": 1, "torsion": []},
        {"rank": 0, "torsion": [3]},
        {"rank": 0, "torsion": []},
        {"rank": 1, "torsion": []},
    ]


def test_normalize_module():
    assert rf.normalize_module("Z/2 + Z/3") == "Z/6"


def test_plan_free_round_trip():
    report = rf.plan_free(3, [1, 1, 0, 2])
    assert report["target_met"]
    profile = rf.run_script(report["script"])
    assert ranks(profile["homology"]) == [1, 1, 0, 2]
    assert rf.euler_characteristic(profile["homology"]) == -2
    assert rf.verify(profile)["passed"]


def test_infeasible_free_target():
    with pytest.raises(rf.InfeasibleError, match="g_n"):
        rf.plan_free(3, [1, 2, 0, 1])


def test_wedge_beyond_normal_bound():
    report = rf.plan_wedge(4, [1, 3, 0, 0, 1])
    assert ranks(report["achieved"]) == [1, 3, 0, 0, 1]


def test_euler_targets():
    for target in range(-5, 6):
        assert rf.euler_characteristic(rf.plan_euler(4, target)["achieved"]) == target


def test_torsion_plan_and_gap():
    report = rf.plan_torsion(7, [1], ["Z/3"])
    assert report["target_met"]
    profile = rf.run_script(report["script"])
    assert profile["homology"][2] == {"rank": 0, "torsion": [3]}
    gap = rf.torsion_gap(profile, 1)
    assert gap["holds"]
    assert [w["degree"] for w in gap["witnesses"]] == [2, 5]


def test_bundle_plan():
    report = rf.plan_bundle(6, 4, 0, {"kind": "surface", "genus": 1})
    assert ranks(report["achieved"]) == [1, 1, 2, 1, 1, 2, 1]


def test_oracle_check():
    r = rf.oracle_check("lens:3,1 x sphere:3")
    assert r["outcome"] == "pass"
    assert r["formula"] == r["oracle"]
    assert rf.oracle_check("hsphere:5")["outcome"] == "not-oracle-expressible"


def test_bad_input_raises_value_error():
    with pytest.raises(ValueError):
        rf.oracle_check("lens:4,2")
    with pytest.raises(ValueError):
        rf.run_script({"ambient": 3, "ops": [{"type": "normal", "manifold": {"kind": "sphere", "dim": 3}}]})


def test_cli_in_process():
    code, out, _ = rf.cli("oracle-check", "--space", "lens:3,1")
    assert code == 0
    assert "pass" in out
    assert rf.cli("plan-free", "--ranks", "1,1")[0] == 2
