"""End-to-end runs of the command-line frontend."""

from __future__ import annotations

import json

import pytest

from hrrc.cli import main
from hrrc.model import example_g2, load_matching, save_instance, save_matching
from hrrc.model import Assignment
from hrrc.stability import is_strongly_stable


@pytest.fixture()
def g2_file(tmp_path):
    path = tmp_path / "g2.json"
    path.write_text(save_instance(example_g2()))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_classify(capsys, g2_file):
    code, out, _ = run(capsys, "classify", g2_file)
    assert code == 0
    assert "alpha=2" in out
    code, out, _ = run(capsys, "classify", g2_file, "--json")
    assert json.loads(out) == {"alpha": 2, "beta": 2, "gamma": 2, "disjoint": True}


def test_solve_g2_reports_none_exists(capsys, g2_file):
    code, out, _ = run(capsys, "solve", g2_file)
    assert code == 1
    assert "none-exists" in out


def test_solve_writes_matching_document(capsys, tmp_path):
    from dataclasses import replace

    from hrrc.model import Region

    cap2 = replace(example_g2(), regions=(Region(frozenset({"h1", "h2"}), 2),))
    inst_path = tmp_path / "cap2.json"
    inst_path.write_text(save_instance(cap2))
    out_path = tmp_path / "matching.json"
    code, out, _ = run(capsys, "solve", str(inst_path), "--out", str(out_path))
    assert code == 0
    matching = load_matching(out_path.read_text())
    assert matching == Assignment.of([("r1", "h1"), ("r2", "h2")])

    code, out, _ = run(capsys, "solve", str(inst_path), "--json")
    payload = json.loads(out)
    assert payload["status"] == "found"
    assert payload["matching"]["pairs"] == [["r1", "h1"], ["r2", "h2"]]


def test_solve_explicit_algorithm_and_precondition_error(capsys, g2_file):
    code, _, err = run(capsys, "solve", g2_file, "--algorithm", "alg1")
    assert code == 2
    assert "gamma" in err
    code, out, _ = run(capsys, "solve", g2_file, "--algorithm", "alg5")
    assert code == 1
    code, out, _ = run(capsys, "solve", g2_file, "--algorithm", "brute")
    assert code == 1


def test_check_exit_codes(capsys, tmp_path, g2_file):
    m_path = tmp_path / "m.json"
    m_path.write_text(save_matching(Assignment.of([("r1", "h1")])))
    code, out, _ = run(capsys, "check", g2_file, str(m_path))
    assert code == 1
    assert "strongly stable: no" in out

    from dataclasses import replace

    from hrrc.model import Region

    cap2 = replace(example_g2(), regions=(Region(frozenset({"h1", "h2"}), 2),))
    inst_path = tmp_path / "cap2.json"
    inst_path.write_text(save_instance(cap2))
    good = tmp_path / "good.json"
    good.write_text(save_matching(Assignment.of([("r1", "h1"), ("r2", "h2")])))
    code, out, _ = run(capsys, "check", str(inst_path), str(good))
    assert code == 0
    code, out, _ = run(capsys, "check", str(inst_path), str(good), "--json")
    payload = json.loads(out)
    assert payload["strongly_stable"] is True
    assert payload["blocking_pairs"] == []


def test_check_reports_conditions(capsys, tmp_path, g2_file):
    m_path = tmp_path / "m.json"
    m_path.write_text(save_matching(Assignment.of([("r1", "h1")])))
    code, out, _ = run(capsys, "check", g2_file, str(m_path), "--json")
    payload = json.loads(out)
    assert payload["strong_blocking_pairs"] == [
        {
            "resident": "r2",
            "hospital": "h1",
            "conditions": ["preferred-over-assignee(r1)"],
        }
    ]


def test_check_rejects_non_matching(capsys, tmp_path, g2_file):
    m_path = tmp_path / "bad.json"
    m_path.write_text(save_matching(Assignment.of([("r1", "h1"), ("r1", "h2")])))
    code, _, err = run(capsys, "check", g2_file, str(m_path))
    assert code == 2
    assert "not a matching" in err


def test_brute_size_cap_and_force(capsys, g2_file, monkeypatch):
    monkeypatch.setenv("HRRC_BRUTE_LIMIT", "2")
    code, _, err = run(capsys, "brute", g2_file)
    assert code == 2
    assert "--force" in err
    code, out, _ = run(capsys, "brute", g2_file, "--force")
    assert code == 1
    monkeypatch.delenv("HRRC_BRUTE_LIMIT")


def test_brute_all_lists_matchings(capsys, tmp_path):
    from dataclasses import replace

    from hrrc.model import Region

    cap2 = replace(example_g2(), regions=(Region(frozenset({"h1", "h2"}), 2),))
    inst_path = tmp_path / "cap2.json"
    inst_path.write_text(save_instance(cap2))
    code, out, _ = run(capsys, "brute", str(inst_path), "--all", "--json")
    payload = json.loads(out)
    assert code == 0
    assert payload["count"] >= 1


def test_reduce_then_brute_roundtrip(capsys, tmp_path):
    cnf = tmp_path / "clause.cnf"
    cnf.write_text("p cnf 3 1\n1 2 3 0\n")
    code, out, _ = run(capsys, "reduce", str(cnf), "--target", "one-in-three-222")
    assert code == 0
    inst_path = tmp_path / "reduced.json"
    inst_path.write_text(out)
    code, out, _ = run(capsys, "brute", str(inst_path), "--force")
    assert code == 0


def test_reduce_ppn_writes_sidecar(capsys, tmp_path):
    cnf = tmp_path / "ppn.cnf"
    cnf.write_text("p cnf 3 3\n-1 2 3 0\n1 -2 3 0\n1 2 -3 0\n")
    out_path = tmp_path / "inst.json"
    occ_path = tmp_path / "occ.json"
    code, _, _ = run(
        capsys,
        "reduce", str(cnf), "--target", "ppn-223",
        "--out", str(out_path), "--occurrences", str(occ_path),
    )
    assert code == 0
    occ = json.loads(occ_path.read_text())
    assert {v["variable"] for v in occ["variables"]} == {1, 2, 3}
    assert out_path.exists()


def test_reduce_normalize_ppn_accepts_plain_3sat(capsys, tmp_path):
    cnf = tmp_path / "raw.cnf"
    cnf.write_text("p cnf 2 2\n1 2 0\n-1 2 0\n")
    code, out, _ = run(capsys, "reduce", str(cnf), "--target", "ppn-223", "--normalize-ppn", "--json")
    assert code == 0
    payload = json.loads(out)
    assert "instance" in payload and "occurrences" in payload
    # Without normalization the same file is rejected.
    code, _, err = run(capsys, "reduce", str(cnf), "--target", "ppn-223")
    assert code == 2


def test_decode_full_chain(capsys, tmp_path):
    import hrrc.reductions as red
    from hrrc.exhaustive import exists_strongly_stable

    cnf = tmp_path / "ppn.cnf"
    cnf.write_text("p cnf 3 3\n-1 2 3 0\n1 -2 3 0\n1 2 -3 0\n")
    formula = red.parse_dimacs(cnf.read_text())
    inst, _ = red.reduce_ppn(formula, red.ReductionVariant.PPN_322)
    found = exists_strongly_stable(inst).matching
    m_path = tmp_path / "found.json"
    m_path.write_text(save_matching(found))
    code, out, _ = run(capsys, "decode", str(cnf), str(m_path), "--target", "ppn-322", "--json")
    assert code == 0
    assignment = {int(k): v for k, v in json.loads(out)["assignment"].items()}
    assert red.satisfies(formula, assignment)


def test_decode_rejects_unstable_matching(capsys, tmp_path):
    cnf = tmp_path / "clause.cnf"
    cnf.write_text("p cnf 3 1\n1 2 3 0\n")
    m_path = tmp_path / "empty.json"
    m_path.write_text('{"pairs": []}')
    code, _, err = run(capsys, "decode", str(cnf), str(m_path), "--target", "one-in-three-222")
    assert code == 1
    assert "not strongly stable" in err


def test_usage_error_exit_code(capsys, tmp_path):
    missing = str(tmp_path / "nope.json")
    code, _, err = run(capsys, "classify", missing)
    assert code == 2
    assert "error" in err


def test_solve_auto_is_byte_deterministic(capsys, g2_file):
    runs = [run(capsys, "solve", g2_file, "--json") for _ in range(3)]
    assert len({(code, out) for code, out, _ in runs}) == 1
