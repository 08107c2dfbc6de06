import json

from weylhh.cli import main

Y1 = {"terms": [{"coeff": {"re": ["1", "1"], "im": ["0", "1"]},
                 "exps": [["Y", 1, 1]]}]}
Y2 = {"terms": [{"coeff": {"re": ["1", "1"], "im": ["0", "1"]},
                 "exps": [["Y", 2, 1]]}]}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_star_command(capsys):
    code, out = run(capsys, "--format", "json", "star",
                    json.dumps({"n": 1, "a": Y1, "b": Y2}))
    assert code == 0
    payload = json.loads(out)
    assert payload["version"]
    assert payload["config"]["command"] == "star"
    terms = payload["result"]["terms"]
    # y1 * y2 = y1 y2 + i
    assert {"coeff": {"re": ["0", "1"], "im": ["1", "1"]}, "exps": []} in terms


def test_ffs_eval(capsys):
    code, out = run(capsys, "--format", "json", "ffs", "eval",
                    "--args", json.dumps({"n": 1, "args": [Y1, Y2]}))
    assert code == 0
    result = json.loads(out)["result"]
    assert result["terms"] == [
        {"coeff": {"re": ["1", "2"], "im": ["0", "1"]}, "exps": []}]


def test_descent_eval_with_trace(capsys, tmp_path):
    trace = tmp_path / "trace.json"
    code, out = run(capsys, "--format", "json", "descent", "eval",
                    "--args", json.dumps({"n": 1, "args": [Y1, Y2]}),
                    "--twist", "none", "--trace", str(trace))
    assert code == 0
    payload = json.loads(out)
    assert payload["trace_ok"] is True
    assert payload["result"]["terms"][0]["coeff"]["re"] == ["1", "2"]
    saved = json.loads(trace.read_text())
    assert saved["verification"]["passed"] == saved["verification"]["checked"]


def test_descent_eval_twisted(capsys):
    code, out = run(capsys, "--format", "json", "descent", "eval",
                    "--args", json.dumps({"n": 1, "args": [Y1, Y2]}),
                    "--twist", json.dumps({"diag": ["-1", "-1"]}))
    assert code == 0
    payload = json.loads(out)
    assert payload["result"]["terms"][0]["coeff"]["re"] == ["-1", "2"]


def test_descent_budget_exit_code(capsys):
    big = {"terms": [{"coeff": {"re": ["1", "1"], "im": ["0", "1"]},
                      "exps": [["Y", 1, 2]]}]}
    code, _ = run(capsys, "descent", "eval",
                  "--args", json.dumps({"n": 1, "args": [big, big]}),
                  "--budget", "1")
    assert code == 3


def test_smash_dims(capsys):
    code, out = run(capsys, "--format", "json", "smash", "dims",
                    "--group", json.dumps({"preset": "higher-spin-4d"}))
    assert code == 0
    assert json.loads(out)["dims"] == {"0": 1, "2": 2, "4": 1}


def test_smash_theta(capsys):
    code, out = run(capsys, "--format", "json", "smash", "theta",
                    "--group", json.dumps({"preset": "higher-spin-4d"}),
                    "--gamma", json.dumps({"kappa": "1"}),
                    "--args", json.dumps({"n": 2, "args": [{"1": Y1}, {"1": Y2}]}),
                    "--degree", "2")
    assert code == 0
    result = json.loads(out)["result"]
    assert list(result) == ["kappa"]
    assert result["kappa"]["terms"][0]["coeff"]["re"] == ["-1", "2"]


def test_simplex_fuzz(capsys):
    code, out = run(capsys, "--format", "json", "simplex", "fuzz",
                    "--dim", "2", "--count", "40", "--seed", "9")
    assert code == 0
    report = json.loads(out)["report"]
    assert report["passed"] == 40 and report["failed"] == 0


def test_verify_all_small(capsys):
    code, out = run(capsys, "--format", "json", "verify-all",
                    "--samples", "4", "--degree", "2", "--seed", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    names = [s["name"] for s in payload["suites"]]
    assert names == ["weyl-invariants", "form-homotopy", "ffs-cocycle-n1",
                     "ffs-cocycle-n2", "route-agreement-n1", "twisted-minus",
                     "higher-spin", "simplex-identity"]


def test_verify_all_seed_independent_verdict(capsys):
    # exactness: different seeds check different tuples but the verdict is
    # always a pass
    for seed in (1, 2, 5):
        code, out = run(capsys, "--format", "json", "verify-all",
                        "--samples", "3", "--degree", "2", "--seed", str(seed))
        assert code == 0
        assert json.loads(out)["ok"] is True


def test_text_and_json_agree(capsys):
    code_j, out_j = run(capsys, "--format", "json", "ffs", "eval",
                        "--args", json.dumps({"n": 1, "args": [Y1, Y2]}))
    code_t, out_t = run(capsys, "ffs", "eval",
                        "--args", json.dumps({"n": 1, "args": [Y1, Y2]}))
    assert code_j == code_t == 0
    result = json.loads(out_j)["result"]
    assert json.dumps(result) in out_t


def test_usage_error_exit_code(capsys):
    code, _ = run(capsys, "smash", "dims", "--group",
                  json.dumps({"preset": "unknown"}))
    assert code == 2
