import json
import re

import pytest

from persona_sched.cli import main
from persona_sched.data import FLOORPLAN_FILE, LOCATIONS_FILE, REFERENCE_FILE, TEMPLATE_FILE, read_text
from persona_sched.formats import load_reference_collection
from persona_sched.timeline import PALETTE, activity_colors, render_timeline

from conftest import FIXTURES

VALIDATOR = FIXTURES / "validator"


@pytest.fixture
def household(tmp_path):
    paths = {}
    for key, name in [("template", TEMPLATE_FILE), ("reference", REFERENCE_FILE),
                      ("floorplan", FLOORPLAN_FILE), ("locations", LOCATIONS_FILE)]:
        paths[key] = tmp_path / name
        paths[key].write_text(read_text(name))
    return paths


def test_validate_valid(capsys):
    assert main(["validate", str(VALIDATOR / "valid_fig3_style.json")]) == 0
    assert capsys.readouterr().out.startswith("valid")


def test_validate_chronological(capsys):
    assert main(["validate", str(VALIDATOR / "chronological_evening_before_noon.json")]) == 1
    assert "chronological" in capsys.readouterr().out


def test_validate_json(capsys):
    assert main(["validate", "--json", str(VALIDATOR / "underconstrained_floating.json")]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["valid"] is False and doc["findings"][0]["kind"] == "underconstrained"


def test_validate_missing_file(tmp_path):
    assert main(["validate", str(tmp_path / "nope.json")]) == 2


def test_validate_unparseable(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"name": "x", "entries": []}')
    assert main(["validate", str(bad)]) == 2


def test_generate_deterministic(household, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert main(["generate", str(household["template"]), "--days", "10", "--seed", "42",
                     "--out", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert len(json.loads(a.read_text())["days"]) == 10


def test_generate_seed_from_env(household, tmp_path, monkeypatch):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    monkeypatch.setenv("PERSONA_SCHED_SEED", "42")
    assert main(["generate", str(household["template"]), "--days", "3", "--out", str(a)]) == 0
    assert main(["generate", str(household["template"]), "--days", "3", "--seed", "42",
                 "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_generate_underconstrained(tmp_path, capsys):
    out = tmp_path / "out.json"
    assert main(["generate", str(VALIDATOR / "underconstrained_floating.json"), "--days", "2",
                 "--out", str(out)]) == 1
    assert "underconstrained" in capsys.readouterr().err
    assert not out.exists()
    assert list(tmp_path.iterdir()) == []


def test_generate_zero_days(household, tmp_path):
    assert main(["generate", str(household["template"]), "--days", "0",
                 "--out", str(tmp_path / "o.json")]) == 2


def test_evaluate_identity(household, capsys):
    ref = str(household["reference"])
    assert main(["evaluate", "--generated", ref, "--reference", ref]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["sim_cross"] < 1.0  # reference days differ from each other
    assert set(doc) >= {"sim_cross", "sim_self_reference", "sim_cross_baseline", "pairs"}
    assert doc["pairs"] == 100


def test_evaluate_single_day_identity(tmp_path, capsys):
    one = tmp_path / "one.json"
    one.write_text(json.dumps({"label": "x", "activities": ["a"], "days": [
        [{"activity": "a", "start": "00:00", "end": "12:00"}]]}))
    assert main(["evaluate", "--generated", str(one), "--reference", str(one)]) == 1
    assert "two days" in capsys.readouterr().err


def test_evaluate_window_and_gap_fill(tmp_path, capsys):
    doc = {"label": "x", "activities": ["a", "b"], "days": [
        [{"activity": "a", "start": "09:00", "end": "14:00"}, {"activity": "b", "start": "14:00", "end": "20:00"}],
        [{"activity": "a", "start": "09:00", "end": "15:00"}, {"activity": "b", "start": "15:00", "end": "20:00"}],
    ]}
    path = tmp_path / "x.json"
    path.write_text(json.dumps(doc))
    assert main(["evaluate", "--generated", str(path), "--reference", str(path),
                 "--window", "09:00-20:00"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["window"] == "09:00-20:00"
    assert out["sim_self_reference"] == round(1 - 60 / 660, 6)


def test_evaluate_bad_schema(tmp_path, household):
    bad = tmp_path / "bad.json"
    bad.write_text('{"label": "x", "days": [[{"activity": "a", "start": "7pm", "end": "08:00"}]]}')
    assert main(["evaluate", "--generated", str(bad), "--reference", str(household["reference"])]) == 2


def test_evaluate_bad_window(household):
    ref = str(household["reference"])
    with pytest.raises(SystemExit) as info:
        main(["evaluate", "--generated", ref, "--reference", ref, "--window", "20:00-09:00"])
    assert info.value.code == 2


def test_trace(household, tmp_path):
    gen, out = tmp_path / "gen.json", tmp_path / "trace.csv"
    assert main(["generate", str(household["template"]), "--days", "2", "--seed", "1",
                 "--out", str(gen)]) == 0
    assert main(["trace", str(gen), str(household["floorplan"]), "--day", "1", "--hz", "0.1",
                 "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "t_s,x_m,y_m,activity"
    assert len(lines) == 1 + 8640
    assert re.fullmatch(r"\d+\.\d{3},\d+\.\d{3},\d+\.\d{3},\w+", lines[1])


def test_trace_unmapped(household, tmp_path, capsys):
    sched = tmp_path / "s.json"
    sched.write_text(json.dumps({"label": "x", "activities": ["sleep", "gym"], "days": [
        [{"activity": "sleep", "start": "00:00", "end": "12:00"},
         {"activity": "gym", "start": "12:00", "end": "24:00"}]]}))
    assert main(["trace", str(sched), str(household["floorplan"]), "--out", str(tmp_path / "t.csv")]) == 1
    assert "gym" in capsys.readouterr().err
    assert not (tmp_path / "t.csv").exists()


def test_trace_day_out_of_range(household, tmp_path):
    assert main(["trace", str(household["reference"]), str(household["floorplan"]), "--day", "99",
                 "--out", str(tmp_path / "t.csv")]) == 2


def test_timeline(household, tmp_path):
    gen, svg = tmp_path / "gen.json", tmp_path / "t.svg"
    assert main(["generate", str(household["template"]), "--days", "10", "--seed", "3",
                 "--out", str(gen)]) == 0
    assert main(["timeline", str(household["reference"]), str(gen), "--out", str(svg)]) == 0
    text = svg.read_text()
    assert text.startswith("<svg") and text.rstrip().endswith("</svg>")
    assert text.count(">day 0<") == 2
    # reference panel drawn first
    assert text.index("household_reference") < text.index("household_template")


def test_timeline_empty_days(tmp_path):
    empty = tmp_path / "e.json"
    empty.write_text('{"label": "e", "activities": [], "days": []}')
    assert main(["timeline", str(empty), "--out", str(tmp_path / "t.svg")]) == 2


def test_render_timeline_bands_and_legend():
    c = load_reference_collection(read_text(REFERENCE_FILE))
    svg = render_timeline([c])
    assert len(re.findall(r">day \d+<", svg)) == 10
    for a in c.activity_vocabulary:
        assert svg.count(f">{a}</text>") == 1
    assert render_timeline([c]) == svg


def test_palette_cycles():
    colors = activity_colors([f"a{i:02d}" for i in range(22)])
    assert colors["a00"] == PALETTE[0] and colors["a20"] == PALETTE[0] and colors["a19"] == PALETTE[19]
