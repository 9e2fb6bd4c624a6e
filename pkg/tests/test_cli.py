import json
from fractions import Fraction

import pytest

from parhiggs.cli import (CORPUS, REPORT_SCHEMA, corpus_configs, dump_report, emit_examples, main,
                          run_report, to_json)
from parhiggs.config import CONFIG_SCHEMA, ConfigError, load_config, parse_config
from parhiggs.core import Poly

SP2_R5 = corpus_configs()["sp2_r5.json"]


def write(tmp_path, data, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return path


def walk(x):
    yield x
    if isinstance(x, dict):
        for v in x.values():
            yield from walk(v)
    elif isinstance(x, list):
        for v in x:
            yield from walk(v)


def test_load_valid_config(tmp_path):
    cfg = load_config(write(tmp_path, SP2_R5))
    assert cfg.bundle.r == 5 and cfg.pairing.rank == 2
    assert cfg.weights[0] == (Fraction(1, 4), Fraction(3, 4))
    assert cfg.seed == 5


@pytest.mark.parametrize("patch,needle", [
    ({"points": [0, 1, 1]}, "duplicate"),
    ({"splitting": [0, 0, 0], "weights": ["1/8", "1/2", "7/8"],
      "pairing": {"symmetry": "antisymmetric", "degree": 0, "omega": "standard"}}, "even rank"),
    ({"tasks": []}, "tasks"),
    ({"weights": ["3/4", "1/4"]}, "weight"),
    ({"colour": "blue"}, "colour"),
    ({"g": 2}, "g"),
    ({"weights": [0.25, 0.75]}, "exact rational"),
])
def test_config_errors(tmp_path, patch, needle):
    data = dict(SP2_R5)
    data.update(patch)
    with pytest.raises(ConfigError) as info:
        load_config(write(tmp_path, data))
    assert any(needle in p for p in info.value.problems), info.value.problems


def test_json_syntax_error_reports_position(tmp_path):
    path = write(tmp_path, '{\n  "points": [0, 1,\n}\n')
    with pytest.raises(ConfigError) as info:
        load_config(path)
    assert "line 3" in info.value.problems[0]


def test_parse_config_requires_schema_tag():
    data = dict(SP2_R5)
    assert data["schema"] == CONFIG_SCHEMA
    data["schema"] = "something/else"
    with pytest.raises(ConfigError):
        parse_config(data)


def test_report_on_r5():
    rep = run_report(parse_config(SP2_R5))
    assert rep["schema"] == REPORT_SCHEMA and rep["failed_tasks"] == []
    tasks = rep["tasks"]
    assert tasks["sections"]["result"]["dim_W_st"] == 2
    serre = tasks["serre"]["result"]
    assert serre["equal"] and serre["h1"] == 2
    assert tasks["hitchin"]["result"]["strong"]["vanish_at_marked_points"]
    assert tasks["equivariance"]["result"]["all_hold"]
    assert tasks["very-stable"]["result"]["strong"]["dimension"] == 2
    assert tasks["stability"]["result"]["verdict"] == "Stable"


def test_dimensions_task():
    rep = run_report(parse_config(corpus_configs()["sp2_dimensions.json"]))
    res = rep["tasks"]["dimensions"]["result"]
    assert res["dimension"] == 8 and res["agree"]
    assert rep["task_order"] == ["dimensions"]


def test_task_filter_and_no_floats():
    rep = run_report(parse_config(SP2_R5), ["serre", "hitchin"])
    assert rep["task_order"] == ["hitchin", "serre"]
    assert not any(isinstance(x, float) for x in walk(json.loads(dump_report(rep))))


def test_to_json_is_exact():
    assert to_json(Fraction(-3, 4)) == "-3/4"
    assert to_json(Poly([1, Fraction(1, 2)])) == ["1/1", "1/2"]
    with pytest.raises(TypeError):
        to_json(0.5)


def test_emit_examples_is_deterministic(tmp_path):
    first = emit_examples(tmp_path / "a")
    second = emit_examples(tmp_path / "b")
    assert len(first) == len(CORPUS) >= 6
    for p, q in zip(first, second):
        assert p.read_bytes() == q.read_bytes()
        load_config(p)


def test_main_check_and_exit_codes(tmp_path, capsys):
    good = write(tmp_path, SP2_R5)
    out = tmp_path / "report.json"
    assert main(["check", str(good), "--task", "serre", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["tasks"]["serre"]["result"]["equal"]
    bad = write(tmp_path, dict(SP2_R5, points=[0, 0, 1, 2, 3]), "bad.json")
    assert main(["check", str(bad)]) == 1
    assert "duplicate" in capsys.readouterr().err
    assert main(["check", str(tmp_path / "missing.json")]) == 1


def test_main_seed_override(tmp_path):
    good = write(tmp_path, SP2_R5)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["check", str(good), "--task", "sections", "--seed", "9", "--out", str(a)]) == 0
    assert main(["check", str(good), "--task", "sections", "--seed", "9", "--out", str(b)]) == 0
    assert json.loads(a.read_text())["seed"] == 9
    assert a.read_bytes() == b.read_bytes()


def test_main_dim_and_corpus(tmp_path, capsys):
    assert main(["dim", "Sp", "1", "2", "1"]) == 0
    assert capsys.readouterr().out.strip() == "8"
    assert main(["dim", "SO(4)", "1", "2", "1"]) == 1
    assert main(["corpus", str(tmp_path / "ex")]) == 0
    assert len(list((tmp_path / "ex").glob("*.json"))) == len(CORPUS)
