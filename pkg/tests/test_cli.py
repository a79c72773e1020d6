"""Command-line behavior: outputs, exit codes, determinism."""

import json

import pytest

from pronykit.cli import main

CLASSIC = {
    "kind": "expsum",
    "n": 1,
    "domain": "nat",
    "terms": [{"coeff": "1", "base": ["2"]}, {"coeff": "1", "base": ["3"]}],
}
CHEB = {"kind": "chebpoly", "coeffs": {"3": "1"}, "base": "2"}
CIRCLE = {
    "n": 2,
    "order": "degrevlex",
    "generators": [{"terms": {"(2,0)": "1", "(0,2)": "1", "(0,0)": "-1"}}],
}


def _write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_reconstruct_generator_auto(tmp_path, capsys):
    gen = _write(tmp_path / "g.json", CLASSIC)
    code, out = _run(capsys, "reconstruct", "--generator", gen, "--auto", "--max-d", "6")
    assert code == 0
    doc = json.loads(out)
    assert doc["support"] == [["2"], ["3"]]
    assert doc["coefficients"] == ["1", "1"]
    assert doc["mode"] == "stabilized"
    assert doc["exact"] is True


def test_reconstruct_samples_rank_bound(tmp_path, capsys):
    samples = {
        "n": 1,
        "domain": "nat",
        "field": "rational",
        "samples": [
            {"index": [0], "value": "2"},
            {"index": [1], "value": "5"},
            {"index": [2], "value": "13"},
            {"index": [3], "value": "35"},
        ],
    }
    f = _write(tmp_path / "s.json", samples)
    code, out = _run(capsys, "reconstruct", "--samples", f, "--rank-bound", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["support"] == [["2"], ["3"]]
    assert doc["mode"] == "rank_bound"
    assert doc["evaluations"] == 4


def test_reconstruct_chebyshev_answer(tmp_path, capsys):
    gen = _write(tmp_path / "c.json", CHEB)
    code, out = _run(
        capsys,
        "reconstruct", "--structure", "chebyshev", "--generator", gen,
        "--rank-bound", "2",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["support"] == [["2"], ["26"]]
    assert doc["coefficients"] == ["3/4", "1/4"]
    assert doc["answer"]["indices"] == [1, 3]


def test_reconstruct_relative(tmp_path, capsys):
    gen = _write(
        tmp_path / "g.json",
        {
            "kind": "expsum",
            "n": 2,
            "domain": "nat",
            "terms": [
                {"coeff": "1", "base": ["3/5", "4/5"]},
                {"coeff": "1", "base": ["1", "0"]},
            ],
        },
    )
    yfile = _write(tmp_path / "y.json", CIRCLE)
    code, out = _run(
        capsys, "reconstruct", "--generator", gen, "--relative", yfile, "--auto"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["support"] == [["3/5", "4/5"], ["1", "0"]]


def test_reconstruct_requires_one_source(tmp_path, capsys):
    gen = _write(tmp_path / "g.json", CLASSIC)
    code, _ = _run(capsys, "reconstruct", "--generator", gen, "--samples", gen)
    assert code == 1
    code, _ = _run(capsys, "reconstruct", "--auto")
    assert code == 1


def test_reconstruct_missing_file(capsys):
    code, _ = _run(capsys, "reconstruct", "--generator", "no-such-file.json")
    assert code == 1


def test_reconstruct_missing_samples_listed(tmp_path, capsys):
    samples = {
        "n": 1,
        "domain": "nat",
        "field": "rational",
        "samples": [{"index": [0], "value": "2"}, {"index": [1], "value": "5"}],
    }
    f = _write(tmp_path / "s.json", samples)
    code = main(["reconstruct", "--samples", f, "--rank-bound", "2"])
    err = capsys.readouterr().err
    assert code == 1
    assert "(2,)" in err and "(3,)" in err


def test_tol_requires_float_mode(tmp_path, capsys):
    gen = _write(tmp_path / "g.json", CLASSIC)
    code, _ = _run(capsys, "reconstruct", "--generator", gen, "--tol", "1e-6")
    assert code == 1
    code, _ = _run(
        capsys, "reconstruct", "--generator", gen, "--float", "--tol", "1e-6",
        "--rank-bound", "2",
    )
    assert code == 0


def test_bad_flags_exit_one(capsys):
    assert main(["reconstruct", "--nonsense"]) == 1
    assert main([]) == 1
    assert main(["--help"]) == 0


def test_byte_determinism(tmp_path, capsys):
    gen = _write(tmp_path / "g.json", CLASSIC)
    outputs = set()
    for _ in range(2):
        code, out = _run(capsys, "reconstruct", "--generator", gen, "--auto")
        assert code == 0
        outputs.add(out)
    assert len(outputs) == 1


def test_output_flag_writes_file(tmp_path, capsys):
    gen = _write(tmp_path / "g.json", CLASSIC)
    target = tmp_path / "r.json"
    code, out = _run(
        capsys, "reconstruct", "--generator", gen, "--auto", "--output", str(target)
    )
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["support"] == [["2"], ["3"]]


def test_verify_ok_and_tamper(tmp_path, capsys):
    gen = _write(tmp_path / "g.json", CLASSIC)
    result = tmp_path / "r.json"
    assert main(["reconstruct", "--generator", gen, "--auto", "--output", str(result)]) == 0
    capsys.readouterr()

    code, out = _run(capsys, "verify", "--result", str(result), "--generator", gen)
    assert code == 0
    assert json.loads(out)["verdict"] == "ok"

    doc = json.loads(result.read_text())
    doc["coefficients"][0] = "7"
    bad = _write(tmp_path / "bad.json", doc)
    code, out = _run(capsys, "verify", "--result", bad, "--generator", gen)
    assert code == 2
    assert json.loads(out)["verdict"] == "verification_failed"


def test_verify_wrong_support(tmp_path, capsys):
    gen = _write(tmp_path / "g.json", CLASSIC)
    result = tmp_path / "r.json"
    main(["reconstruct", "--generator", gen, "--auto", "--output", str(result)])
    capsys.readouterr()
    doc = json.loads(result.read_text())
    doc["support"] = [["2"], ["4"]]
    bad = _write(tmp_path / "bad.json", doc)
    code, out = _run(capsys, "verify", "--result", bad, "--generator", gen)
    assert code == 2
    verdict = json.loads(out)["verdict"]
    assert verdict in ("zl_mismatch", "vanishing_violation", "verification_failed")


def test_moeller_output(tmp_path, capsys):
    pts = _write(
        tmp_path / "p.json",
        {"n": 2, "points": [["0", "0"], ["1", "0"], ["0", "1"]]},
    )
    code, out = _run(capsys, "moeller", "--points", pts, "--degree", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["identity_ok"] is True
    assert doc["zl_match"] is True
    assert doc["cardinalities"] == {
        "border": 4,
        "degrees": 6,
        "groebner": 7,
        "points": 3,
    }
    assert sorted(map(tuple, doc["normal_set"])) == [(0, 0), (0, 1), (1, 0)]


def test_evalcount_output(capsys):
    code, out = _run(capsys, "evalcount", "-n", "2", "-d", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc == {"n": 2, "d": 2, "hankel": 15, "toeplitz": 19}


def test_project_output(tmp_path, capsys):
    gen = _write(
        tmp_path / "g.json",
        {
            "kind": "expsum",
            "n": 2,
            "domain": "nat",
            "terms": [{"coeff": "1", "base": ["2", "3"]}],
        },
    )
    code, out = _run(
        capsys, "project", "--generator", gen, "--direction", "(1,1)",
        "--max-index", "3",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["n"] == 1
    assert [s["value"] for s in doc["samples"]] == ["1", "6", "36", "216"]


def test_projected_samples_feed_reconstruct(tmp_path, capsys):
    gen = _write(
        tmp_path / "g.json",
        {
            "kind": "expsum",
            "n": 2,
            "domain": "nat",
            "terms": [{"coeff": "1", "base": ["2", "3"]}],
        },
    )
    proj = tmp_path / "line.json"
    assert main([
        "project", "--generator", gen, "--direction", "(1,1)",
        "--max-index", "4", "--output", str(proj),
    ]) == 0
    code, out = _run(capsys, "reconstruct", "--samples", str(proj), "--rank-bound", "1")
    assert code == 0
    assert json.loads(out)["support"] == [["6"]]


def test_degree_exhausted_exit_two(tmp_path, capsys):
    # five-term signal cannot stabilize within max-d 2
    gen = _write(
        tmp_path / "g.json",
        {
            "kind": "expsum",
            "n": 1,
            "domain": "nat",
            "terms": [
                {"coeff": "1", "base": [str(b)]} for b in (2, 3, 5, 7, 11)
            ],
        },
    )
    code, _ = _run(capsys, "reconstruct", "--generator", gen, "--auto", "--max-d", "2")
    assert code == 2
