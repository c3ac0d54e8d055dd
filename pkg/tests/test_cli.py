"""
Tests for the command-line driver.
"""
import json
from pathlib import Path

import pytest

from tlfree_core.cli import build_parser, main
from tlfree_core.graph import LoopWord, alternating_word, single_edge
from tlfree_core.planar import PAElement, unit, x_variable


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_nc_enumerate(capsys):
    code, payload = run(capsys, "nc", "enumerate", "3")
    assert code == 0
    assert len(payload) == 5
    assert {"n": 3, "blocks": [[1, 2, 3]]} in payload


def test_nc_kreweras(capsys):
    code, payload = run(capsys, "nc", "kreweras", '{"n": 3, "blocks": [[1, 2], [3]]}')
    assert code == 0
    assert payload == {"n": 3, "blocks": [[1], [2, 3]]}


def test_report_lf(capsys):
    code, payload = run(capsys, "report", "lf", "--delta", "2", "--index", "1", "--k", "1")
    assert code == 0
    assert payload == 1.75


def test_usage_errors_exit_64():
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["--bogus"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["nc"])
    assert exc.value.code == 64


@pytest.mark.parametrize("argv, expected", [
    (["nc", "enumerate", "13"], 2),
    (["tl", "jw", "7"], 2),
    (["tl", "jw", "3", "--delta", "1"], 1),
    (["nc", "kreweras", "{not json"], 1),
    (["calc", "conjugate", "--cutoff", "1", "--delta", "1"], 3),
    (["gibbs", "oracle", "--potential", "quartic", "--m", "4", "--order", "0"], 2),
])
def test_exit_codes(capsys, argv, expected):
    code, _ = run(capsys, *argv)
    assert code == expected


def test_negative_threads(capsys):
    assert main(["--threads", "0", "nc", "enumerate", "2"]) == 64


def test_law_round_trip(capsys):
    _, moments = run(capsys, "law", "moments", "--law", "semicircle", "--depth", "4")
    assert moments["moments"] == ["0", "1", "0", "2"]
    _, cumulants = run(capsys, "law", "cumulants", "--moments", "0,1,0,2")
    assert cumulants["cumulants"] == ["0", "1", "0", "0"]


def test_custom_law(capsys):
    _, moments = run(capsys, "law", "moments", "--law", "custom", "--cumulants", "1,1", "--depth", "2")
    assert moments["moments"] == ["1", "2"]


def test_trace_cup(capsys):
    code, payload = run(capsys, "trace", "cup", "--n", "2", "--delta", "2")
    assert code == 0
    assert payload["2"] == {"formal": {"1": "1"}, "value": "2"}


def test_trace_eval(capsys):
    element = json.dumps({"k": 1, "terms": [{"pairs": [[1, 2], [3, 4], [5, 6]]}]})
    code, payload = run(capsys, "trace", "eval", "--element", element, "--k", "1", "--delta", "formal")
    assert code == 0
    assert payload["tau"] == {"formal": {"1": "1"}}
    code, _ = run(capsys, "trace", "eval", "--element", element, "--k", "0")
    assert code == 1


def test_fisher(capsys):
    code, payload = run(capsys, "calc", "fisher", "--cutoff", "1", "--delta", "2")
    assert code == 0
    assert payload == {"fisher": "2"}
    _, payload = run(capsys, "calc", "fisher", "--cutoff", "1", "--delta", "2", "--profile")
    assert payload == {"delta": "2", "profile": ["0", "2"]}


def test_conjugate_variable(capsys):
    code, payload = run(capsys, "calc", "conjugate", "--cutoff", "1")
    assert code == 0
    assert payload["exact"] is True
    assert payload["delta"] == "2"


def test_free_poisson_conjugate_variable(capsys):
    code, payload = run(capsys, "calc", "conjugate", "--law", "free-poisson", "--cutoff", "1", "--delta", "2")
    assert code == 0
    assert payload["exact"] is True
    assert payload["residual_norm"] == "0"
    assert "held_out_exact" in payload
    assert PAElement.from_json(payload["xi"]) == x_variable() - unit(1)
    _, payload = run(capsys, "calc", "fisher", "--law", "free-poisson", "--cutoff", "1", "--delta", "2")
    assert payload == {"fisher": "2"}


def test_calc_diff(capsys):
    element = '{"k": 1, "terms": [{"n": 1, "pairs": [[1, 2], [3, 4]]}]}'
    code, payload = run(capsys, "calc", "diff", "--element", element)
    assert code == 0
    assert payload["operator"] == "d"
    assert PAElement.from_json(payload["source"]) == x_variable()
    code, payload = run(capsys, "calc", "diff", "--element", element, "--prime")
    assert code == 0
    assert payload["operator"] == "d'"


def test_gibbs(capsys, output_dir):
    report = Path(output_dir) / "gibbs.json"
    code, payload = run(capsys, "gibbs", "solve", "--potential", "quartic", "--depth", "2", "--t-degree", "1", "--report", str(report))
    assert code == 0
    assert payload["depth"] == 2
    assert json.loads(report.read_text()) == payload
    code, payload = run(capsys, "gibbs", "oracle", "--potential", "quartic", "--m", "2", "--order", "0")
    assert code == 0
    assert payload["order"] == "1"
    assert payload["T"]["m"] == 2


def test_graph_commands(capsys, output_dir):
    graph = Path(output_dir) / "edge.json"
    word = Path(output_dir) / "word.json"
    graph.write_text(json.dumps(single_edge().to_json()))
    word.write_text(json.dumps(alternating_word(0, 0, 2).to_json()))
    code, payload = run(capsys, "graph", "wick", "--graph", str(graph), "--word", str(word))
    assert code == 0
    assert payload == {"wick": "2", "normalized": 2.0}
    code, payload = run(capsys, "graph", "mc", "--graph", str(graph), "--word", str(word), "--dim", "20", "--samples", "10")
    assert code == 0
    assert payload["wick"] == 2.0
    assert payload["dims"] == {"v": 20}
    assert payload["seed"] == 7
    word.write_text(json.dumps(LoopWord(((0, 0),)).to_json()))
    code, _ = run(capsys, "graph", "wick", "--graph", str(graph), "--word", str(word))
    assert code == 0


def test_out_flag(capsys, output_dir):
    target = Path(output_dir) / "nc.json"
    assert main(["--out", str(target), "nc", "enumerate", "2"]) == 0
    assert capsys.readouterr().out == ""
    assert len(json.loads(target.read_text())) == 2


def test_health_report(capsys):
    code, payload = run(capsys, "report", "health")
    assert code == 0
    assert set(payload) == {"memory", "disk", "cpu", "nc_enumeration"}


@pytest.mark.slow
def test_verify_core(capsys):
    code, payload = run(capsys, "verify", "--suite", "core")
    assert code == 0
    assert all(r["passed"] for r in payload.values())
