import json

import pytest

from bihecke.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_table1_a3(capsys):
    code, out, _ = run(capsys, "table1", "A3")
    assert code == 0
    assert out == "A3 24 71 477 1^8 2^4 3^4 4^6 5^2 62\n"


def test_table1_keeps_the_given_name(capsys):
    _, out, _ = run(capsys, "table1", "G2", "A1xA1")
    assert out.splitlines() == ["G2 12 32 153 1^4 2^2 3^2 4^2 5^2 32", "A1xA1 4 4 9 1^4 4"]


def test_decomposition_csv(capsys):
    code, out, _ = run(capsys, "decomposition", "A2", "--format=csv")
    assert code == 0
    rows = [line for line in out.splitlines() if not line.startswith("#")]
    assert rows[0] == ",123,132,213,231,312,321,Simp."
    assert rows[4] == "231,0,0,1,1,0,0,2"
    assert "# group: A2" in out and "# order:" in out


def test_cutting_poset_dot(capsys):
    code, out, _ = run(capsys, "cutting-poset", "A3", "--format=dot")
    assert code == 0
    nodes = [line for line in out.splitlines() if line.strip().endswith(";") and "->" not in line and "rankdir" not in line]
    assert len(nodes) == 24
    assert out.count("->") == 31


def test_qcartan_json(capsys):
    code, out, _ = run(capsys, "qcartan", "A2", "--monoid", "Mw0", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["group"] == "A2"
    assert data["entries"][1][4] == [0, 1]


@pytest.mark.parametrize(
    "argv",
    [["frobnicate", "A2"], ["table1", "--bogus"], ["decomposition"], ["decomposition", "Q7"], ["blocks", "A2", "999"], ["monoid", "A2", "--format", "dot"]],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and "usage" in err


def test_cap_violation_exits_1_and_names_the_flag(capsys):
    code, out, err = run(capsys, "monoid", "A3", "--max-elements", "100")
    assert code == 1 and out == ""
    assert "100" in err and "--max-elements" in err
    code, _, err = run(capsys, "qcartan", "A3")
    assert code == 1 and "477" in err and "--slow" in err


def test_threads_do_not_change_output(capsys):
    _, a, _ = run(capsys, "qcartan", "B2", "--format", "csv", "--threads", "1")
    _, b, _ = run(capsys, "qcartan", "B2", "--format", "csv", "--threads", "3")
    assert a == b


def test_progress_goes_to_stderr(capsys):
    code, out, err = run(capsys, "monoid", "A2", "--progress", "--format", "json")
    assert code == 0 and json.loads(out)["M"] == 23
    assert "closure" in err


def test_cache_dir_and_env(tmp_path, capsys, monkeypatch):
    code, first, _ = run(capsys, "monoid", "B2", "--cache-dir", str(tmp_path), "--format", "json")
    assert code == 0 and (tmp_path / "B2.bhm").exists()
    monkeypatch.setenv("BIHECKE_CACHE_DIR", str(tmp_path))
    code, out, err = run(capsys, "monoid", "B2", "--format", "json", "--progress")
    assert code == 0 and out == first and "loading" in err


def test_corrupt_cache_is_refused(tmp_path, capsys):
    (tmp_path / "A2.bhm").write_bytes(b"BHMC\x63\x00" + b"\x00" * 64)
    code, _, err = run(capsys, "monoid", "A2", "--cache-dir", str(tmp_path))
    assert code == 1 and "version" in err


def test_check_subset(capsys):
    code, out, _ = run(capsys, "check", "A2", "--only", "blocks", "fmonoid.e_w")
    assert code == 0
    assert "0 failed" in out.splitlines()[-1]
    assert all(line.startswith(("PASS", "SKIP")) for line in out.splitlines()[:-1])


def test_group_listing(capsys):
    code, out, _ = run(capsys, "group", "A2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data["elements"]) == 6 and data["w0"] == "321"
    _, dot, _ = run(capsys, "group", "A2", "--format", "dot", "--order", "B")
    assert dot.count("->") == 8


def test_blocks_and_simples(capsys):
    _, out, _ = run(capsys, "blocks", "A3", "4312", "--reduced", "--format", "json")
    blocks = json.loads(out)["blocks"]["4312"]
    assert sorted(b["cutting_point"] for b in blocks) == ["1234", "3412", "4123", "4312"]
    _, out, _ = run(capsys, "simples", "A3", "--format", "csv")
    assert "4312,3,1432 4132 4312" in out
