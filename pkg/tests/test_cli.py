import io
import json

import pytest

from hyp43 import cli

PAIR = ["--a", "0.5,1.5,0.3,0.8", "--b", "2.7,1.3,1.9"]


def run(argv):
    out = io.StringIO()
    args = cli.build_parser().parse_args(argv)
    code = args.func(args, out)
    return code, out.getvalue()


def test_eval_json_expansion():
    code, text = run(["eval", *PAIR, "--z=-5", "--digits", "30", "--json"])
    data = json.loads(text)
    assert code == 0
    assert data["method"] == "Expansion1"
    assert data["value"]["re"].startswith("0.918131160024127572605165")
    assert set(data) == {"value", "abs_err", "terms", "method", "warnings"}


def test_eval_text_series():
    code, text = run(["eval", "--a", "0.5,1.7,0.3,0.8", "--b", "2.7,1.3,1.9", "--z=-0.25"])
    assert code == 0
    assert "method:  Series" in text


@pytest.mark.parametrize(
    "argv, code",
    [
        (["eval", "--a", "0.2,1.2,0.7,2.7", "--b", "1,2,3", "--z=-5"], 4),
        (["eval", "--a", "0.2,1.2,0.7", "--b", "1,2,3", "--z=-5"], 2),
        (["eval", *PAIR, "--z=2"], 2),
        (["eval", *PAIR, "--z=abc"], 2),
        (["eval", *PAIR], 2),
        (["eval", *PAIR, "--z=-5", "--digits", "8"], 2),
        (["eval", *PAIR, "--z=-5", "--use-printed", "bogus"], 2),
        (["eval", *PAIR, "--z=-1.5", "--use-printed", "triple-tail-power", "--method", "exp2"], 4),
        (["eval", "--a", "0.3,1.3,3.3,0.95", "--b", "1.4,2.2,0.85", "--z=-2.5", "--use-printed",
          "triple-tail-power"], 3),
        (["verify", "--methods", "expansion,nope"], 2),
        (["verify", "--only", "kind=pair"], 2),
        (["frobnicate"], 2),
    ],
)
def test_exit_codes(argv, code):
    assert cli.main(argv) == code


def test_explain_lists_errata():
    code, text = run(["eval", "--explain"])
    assert code == 0
    assert "triple-tail-half" in text and "spectator-families" in text


def test_config_precedence(tmp_path, monkeypatch):
    cfg = tmp_path / "hyp43.cfg"
    cfg.write_text("# comment\ndigits = 22\nmax-terms = 500\n")
    monkeypatch.setenv("HYP43_DIGITS", "40")
    args = cli.build_parser().parse_args(["eval", "--config", str(cfg)])
    s = cli.resolve_settings(args)
    assert (s.digits, s.max_terms) == (22, 500)
    args = cli.build_parser().parse_args(["eval", "--config", str(cfg), "--digits", "25"])
    assert cli.resolve_settings(args).digits == 25
    args = cli.build_parser().parse_args(["eval"])
    assert cli.resolve_settings(args).digits == 40
    monkeypatch.delenv("HYP43_DIGITS")
    assert cli.resolve_settings(args).digits == 30


def test_bad_config(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert cli.main(["eval", *PAIR, "--z=-5", "--config", str(cfg)]) == 2


def test_verify_suite_file(tmp_path):
    suite = tmp_path / "suite.json"
    suite.write_text(json.dumps([
        {"id": "pair", "pattern": "pair", "a": ["0.5", "1.5", "0.3", "0.8"], "b": ["2.7", "1.3", "1.9"], "z": "-5"},
        {"a": ["0.5", "1.7", "0.3", "0.8"], "b": ["2.7", "1.3", "1.9"], "z": "-0.5"},
    ]))
    out = tmp_path / "report.jsonl"
    assert cli.main(["verify", "--suite", str(suite), "--output", str(out)]) == 0
    records = [json.loads(line) for line in out.read_text().splitlines()]
    assert [r["status"] for r in records] == ["pass", "pass"]
    assert records[0]["tolerance"] == 1e-6
    assert {m["method"] for m in records[0]["methods"]} == {"Expansion1", "MellinBarnes", "EpsilonLimit"}
    assert records[1]["id"] == "case-001"


def test_verify_only_filter():
    code, text = run(["verify", "--per-kind", "1", "--only", "pattern=quad", "--methods", "expansion,mb"])
    records = [json.loads(line) for line in text.splitlines()]
    assert code == 0 and len(records) == 1 and records[0]["pattern"] == "quad"


def test_sweep_ray():
    code, text = run(["sweep", *PAIR, "--z-grid=-2,-10,5"])
    rows = text.splitlines()
    assert code == 0
    assert rows[0] == "z_re,z_im,f_re,f_im,abs_err,method,terms"
    assert len(rows) == 6
    assert all(r.split(",")[5] == "Expansion1" for r in rows[1:])


def test_sweep_marks_boundary_rows():
    code, text = run(["sweep", *PAIR, "--z-grid=-0.5,-1.5,3"])
    methods = [r.split(",")[5] for r in text.splitlines()[1:]]
    assert code == 0
    assert methods == ["Series", "OutsideDomain", "Expansion1"]


def test_sweep_parallel_matches_serial():
    grid = "--z-grid=rect:-4,-2,3,-1,1,2"
    assert run(["sweep", *PAIR, grid, "--jobs", "2"]) == run(["sweep", *PAIR, grid])


def test_sweep_bad_grid():
    assert cli.main(["sweep", *PAIR, "--z-grid=1,2"]) == 2
