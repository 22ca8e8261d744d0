import json
from pathlib import Path

import pytest

from qrweight.cli import main
from qrweight.fixtures import load_p137


def run(capsys, *argv) -> tuple[int, str]:
    rc = main(list(argv))
    return rc, capsys.readouterr().out


def test_construct_json(capsys):
    rc, out = run(capsys, "construct", "--p", "17")
    assert rc == 0
    payload = json.loads(out)
    assert payload["p"] == 17
    assert payload["m"] == 2
    assert payload["residues"] == [1, 2, 4, 8, 9, 13, 15, 16]
    assert payload["codes"]["extended"] == [18, 9]
    assert int(payload["generators_hex_lsb_x0"]["q"], 16).bit_length() == 9  # degree 8


def test_construct_table_format(capsys):
    rc, out = run(capsys, "construct", "--p", "17", "--format", "table")
    assert rc == 0
    assert "p = 17" in out


def test_construct_artifacts_byte_identical(tmp_path, capsys):
    rc1, _ = run(capsys, "construct", "--p", "17", "--out", str(tmp_path / "a"))
    rc2, _ = run(capsys, "construct", "--p", "17", "--out", str(tmp_path / "b"))
    assert rc1 == rc2 == 0
    a = (tmp_path / "a" / "construct.json").read_bytes()
    b = (tmp_path / "b" / "construct.json").read_bytes()
    assert a == b


def test_group_json(capsys):
    rc, out = run(capsys, "group", "--p", "137", "--format", "json")
    assert rc == 0
    payload = json.loads(out)
    assert payload["order"] == 1285608
    assert payload["factorization"] == [[2, 3], [3, 1], [17, 1], [23, 1], [137, 1]]
    assert payload["generators"]["T_order_2"]


def test_group_table(capsys):
    rc, out = run(capsys, "group", "--p", "17")
    assert rc == 0
    assert "|PSL2(17)| = 2448" in out


def test_congruence_command(capsys):
    rc, out = run(capsys, "congruence", "--p", "17", "--weights", "2..4")
    assert rc == 0
    payload = json.loads(out)
    assert payload["constraints"]["4"]["modulus"] == 2448
    assert payload["h2_source"] == "computed"


def test_shard_plan_output(capsys):
    rc, out = run(capsys, "shard-plan", "--s", "8", "--t", "3", "--M", "10")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "1 0 10"
    assert lines[-1] == "6 50 6"


def test_census_and_solve_and_verify(tmp_path, capsys):
    out_dir = str(tmp_path)
    rc, _ = run(capsys, "census", "--p", "17", "--t", "4", "--out", out_dir)
    assert rc == 0
    rc, _ = run(capsys, "congruence", "--p", "17", "--weights", "2..4", "--out", out_dir)
    assert rc == 0
    rc, out = run(
        capsys,
        "solve", "--p", "17",
        "--census", str(tmp_path / "census.json"),
        "--constraint", str(tmp_path / "congruence.json"),
        "--out", out_dir,
    )
    assert rc == 0
    payload = json.loads(out)
    ext = dict((j, c) for j, c in payload["extended"])
    assert ext[6] == 102 and ext[18] == 1
    assert payload["sign_certificate"]["chosen_sign"] in (1, -1)
    assert (tmp_path / "table.txt").exists()
    rc, out = run(capsys, "verify", "--p", "17", "--table", str(tmp_path / "solution.json"))
    assert rc == 0
    assert "ok" in out


def test_verify_rejects_wrong_prime(tmp_path, capsys):
    out_dir = str(tmp_path)
    assert run(capsys, "census", "--p", "17", "--t", "2", "--out", out_dir)[0] == 0
    assert run(capsys, "solve", "--p", "17", "--census", str(tmp_path / "census.json"),
               "--out", out_dir)[0] == 0
    rc, _ = run(capsys, "verify", "--p", "41", "--table", str(tmp_path / "solution.json"))
    assert rc == 1


def test_verify_rejects_tampered_artifact(tmp_path, capsys):
    out_dir = str(tmp_path)
    assert run(capsys, "census", "--p", "17", "--t", "2", "--out", out_dir)[0] == 0
    assert run(capsys, "solve", "--p", "17", "--census", str(tmp_path / "census.json"),
               "--out", out_dir)[0] == 0
    path = tmp_path / "solution.json"
    artifact = json.loads(path.read_text())
    artifact["payload"]["extended"][6][1] += 1
    path.write_text(json.dumps(artifact))
    rc, _ = run(capsys, "verify", "--p", "17", "--table", str(path))
    assert rc == 1


def test_fragment_emit_and_merge(tmp_path, capsys):
    plan_out = run(capsys, "census", "--p", "17", "--t", "4")
    assert plan_out[0] == 0
    total = json.loads(plan_out[1])["provenance"]["total_shards"]
    fragments = []
    for index in range(1, total + 1):
        frag = tmp_path / f"frag{index}.json"
        rc, _ = run(capsys, "census", "--p", "17", "--t", "4",
                    "--shard-index", str(index), "--emit-fragment", str(frag))
        assert rc == 0
        fragments.append(str(frag))
    payload = json.loads(Path(fragments[0]).read_text())
    assert set(payload) == {"code_id", "shard", "counts", "plan"}
    assert set(payload["shard"]) >= {"index", "start_rank", "count"}
    rc, out = run(capsys, "census-merge", *fragments)
    assert rc == 0
    merged = json.loads(out)
    assert dict((w, c) for w, c in merged["counts"]) == dict(
        (w, c) for w, c in json.loads(plan_out[1])["counts"]
    )


def test_pipeline_p17(tmp_path, capsys):
    rc, out = run(capsys, "pipeline", "--p", "17", "--t", "4", "--out", str(tmp_path))
    assert rc == 0
    assert "all checks passed" in out
    for name in ("construct.json", "congruence.json", "census.json", "solution.json", "table.txt"):
        assert (tmp_path / name).exists()


def test_pipeline_p41_matches_brute_force(tmp_path, capsys, family41, dist41):
    rc, _ = run(capsys, "pipeline", "--p", "41", "--t", "6", "--out", str(tmp_path))
    assert rc == 0
    solution = json.loads((tmp_path / "solution.json").read_text())["payload"]
    assert [c for _, c in solution["extended"]] == dist41


def test_pipeline_budget_gate(capsys):
    rc, _ = run(capsys, "pipeline", "--p", "137", "--t", "16")
    assert rc == 3


def test_pipeline_rejects_wrong_residue_class(capsys):
    rc, _ = run(capsys, "pipeline", "--p", "7", "--t", "2")
    assert rc == 2


def test_paper_regression_passes(capsys):
    rc, out = run(capsys, "paper-regression")
    assert rc == 0
    assert "regression suite passed" in out
    assert "K = 69" in out


def _write_perturbed_fixture(tmp_path, mutate) -> str:
    from importlib import resources

    raw = json.loads(resources.files("qrweight").joinpath("data/p137.json").read_text())
    mutate(raw)
    path = tmp_path / "fixture.json"
    path.write_text(json.dumps(raw))
    return str(path)


def test_paper_regression_detects_perturbed_census(tmp_path, capsys):
    def mutate(raw):
        raw["partial_census"]["values"]["32"] += 1

    path = _write_perturbed_fixture(tmp_path, mutate)
    rc, out = run(capsys, "paper-regression", "--fixtures", path)
    assert rc == 1
    assert "FAIL: A_32 congruence quotient" in out


def test_paper_regression_detects_perturbed_residue(tmp_path, capsys):
    def mutate(raw):
        raw["crt_residues"]["values"]["34"] += 1

    path = _write_perturbed_fixture(tmp_path, mutate)
    rc, out = run(capsys, "paper-regression", "--fixtures", path)
    assert rc == 1
    assert "FAIL" in out


def test_paper_regression_both_rejected_certificate(tmp_path, capsys):
    # damaging a subgroup count changes the weight-34 congruence so that
    # neither sign candidate survives: the certificate must be printed
    def mutate(raw):
        raw["subgroup_table"]["counts"]["H2"]["34"] += 1

    path = _write_perturbed_fixture(tmp_path, mutate)
    rc, out = run(capsys, "paper-regression", "--fixtures", path)
    assert rc == 1
    assert "candidate sign" in out
    assert "top-coefficient resolution" in out


def test_usage_errors(capsys):
    assert main(["no-such-command"]) == 2
    assert main([]) == 2
    assert main(["solve", "--p", "17"]) == 2  # nothing to solve from


def test_solve_from_injections_only(capsys):
    rc, out = run(capsys, "solve", "--p", "17", "--inject-a", "2=0", "--inject-a", "4=0")
    assert rc == 0
    payload = json.loads(out)
    assert payload["coefficients"] == [1, -9, -9]


def test_census_rejects_unknown_shard(capsys):
    rc, _ = run(capsys, "census", "--p", "17", "--t", "4", "--shard-index", "999",
                "--emit-fragment", "/tmp/nonexistent-fragment.json")
    assert rc == 1
