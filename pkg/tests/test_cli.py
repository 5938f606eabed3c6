import json

from click.testing import CliRunner

from sepnoether.cli import main


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_list_json_is_deterministic():
    a, b = run("list", "--format", "json"), run("list", "--format", "json")
    assert a.exit_code == 0 and a.output == b.output
    data = json.loads(a.output)
    ids = [r["id"] for r in data["rows"]]
    assert "(16,13)" in ids and "dic:8" in ids


def test_list_family():
    r = run("list", "--family", "dic", "--format", "json")
    assert r.exit_code == 0
    assert {x["id"] for x in json.loads(r.output)["rows"]} == {"dic:8", "dic:12", "dic:16"}
    assert run("list", "--family", "nope").exit_code == 2


def test_beta_command():
    r = run("beta", "dic:8", "--module", "W1", "--format", "json")
    assert r.exit_code == 0, r.output
    data = json.loads(r.output)
    assert data["beta"] == 6 and data["degrees"] == [4, 4, 6]
    assert "parity" in data


def test_beta_tsv_and_human():
    assert run("beta", "dic:8", "--module", "W1", "--format", "tsv").exit_code == 0
    r = run("beta", "q8", "--module", "W1")
    assert "beta: 6" in r.output


def test_witness_command():
    r = run("witness", "dic:8", "--format", "json")
    assert r.exit_code == 0
    assert json.loads(r.output)["rows"][0]["degree"] == 6


def test_betasep_command(tmp_path):
    out = tmp_path / "r.json"
    r = run("betasep", "dic:8", "--format", "json", "--out", str(out))
    assert r.exit_code == 0, r.output
    data = json.loads(out.read_text())
    assert data["betasep"] == 6 and data["status"] == "PASS"
    assert "time" not in json.dumps(data)


def test_prime_preconditions():
    assert run("beta", "dic:8", "--module", "W1", "--prime", "19").exit_code == 2   # 18 not divisible by 8
    assert run("beta", "dic:8", "--module", "W1", "--prime", "15").exit_code == 2   # not prime
    assert run("beta", "dic:8", "--module", "W1", "--prime", "41").exit_code == 0


def test_unknown_group_exit_code():
    assert run("beta", "(16,7)", "--module", "W1").exit_code == 2
    assert run("beta", "dic:8", "--module", "W9").exit_code == 2


def test_verify_all_subset():
    r = run("verify-all", "--only", "dic:8", "--format", "json")
    assert r.exit_code == 0, r.output
    data = json.loads(r.output[r.output.index("{"):])
    assert data["all_pass"] and [x["id"] for x in data["rows"]] == ["dic:8"]


def test_beta_sum_with_parity_note():
    r = run("beta", "(16,4)", "--module", "W1+W2", "--format", "json")
    data = json.loads(r.output)
    assert r.exit_code == 0 and data["beta"] <= 6 and "parity" in data


def test_beta_sign_line():
    data = json.loads(run("beta", "c2", "--module", "sign", "--format", "json").output)
    assert data["beta"] == 2


def test_witness_pauli():
    r = run("witness", "pauli", "--format", "json")
    assert r.exit_code == 0
    assert json.loads(r.output)["rows"][0]["degree"] == 7
