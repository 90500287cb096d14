import json
import re
import subprocess
import sys
from pathlib import Path

import pytest

from valifs.cli import main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
VERIFY_CASES = [("ball_covering", 0), ("window", 0), ("ternary", 0), ("local", 0),
                ("baire", 1), ("kappa_omega", 0), ("omega", 0), ("cofinite", 0), ("line", 0)]


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def bars(svg):
    rows = {}
    for y, w in re.findall(r'<rect x="[^"]+" y="(\d+)" width="([^"]+)" height="\d+" fill="#3465a4"', svg):
        rows.setdefault(int(y), []).append(float(w))
    return [rows[y] for y in sorted(rows)]


@pytest.mark.parametrize("name,code", VERIFY_CASES)
def test_verify_exit_codes_and_replay(tmp_path, capsys, name, code):
    out = tmp_path / f"{name}.json"
    got, text, _ = run(["verify", "--config", CONFIGS / f"{name}.json", "--oracle", "--out", out],
                       capsys)
    assert got == code
    assert out.read_text() and out.with_suffix(".txt").read_text() == text
    got, text, _ = run(["verify", "--config", CONFIGS / f"{name}.json", "--replay", out], capsys)
    assert got == 0 and text == "certificate replay: ok\n"


def test_invalid_config_exits_2(capsys):
    code, _, err = run(["verify", "--config", CONFIGS / "bad.json"], capsys)
    assert code == 2 and "colour" in err and "covering/sets" in err
    code, _, err = run(["verify", "--config", CONFIGS / "missing.json"], capsys)
    assert code == 2


def test_not_a_covering_exits_2(tmp_path, capsys):
    cfg = tmp_path / "gap.json"
    cfg.write_text(json.dumps({"context": {"p": 2, "precision": 4},
                               "covering": {"sets": ["B(1)@digits=0", "B(2)@digits=1"]}}))
    code, _, err = run(["verify", "--config", cfg], capsys)
    assert code == 2 and "invalid input" in err


def test_replay_detects_tampering(tmp_path, capsys):
    out = tmp_path / "r.json"
    run(["verify", "--config", CONFIGS / "ball_covering.json", "--out", out], capsys)
    doc = json.loads(out.read_text())
    doc["certificate"][0][1] = 2
    out.write_text(json.dumps(doc))
    code, text, _ = run(["verify", "--config", CONFIGS / "ball_covering.json", "--replay", out],
                        capsys)
    assert code == 1 and "FAILED" in text


@pytest.mark.parametrize("example", ["3", "4", "5", "18"])
def test_demos_pass(capsys, example):
    code, text, _ = run(["demo", example], capsys)
    assert code == 0 and "[FAIL]" not in text and "[ok]" in text


def test_demo_options(capsys):
    code, text, _ = run(["demo", "4", "--mu", "2"], capsys)
    assert code == 0 and "length 3" in text
    code, text, _ = run(["demo", "18", "--center", "offset=-2; digits=1,1"], capsys)
    assert code == 0


def test_render_bars(tmp_path, capsys):
    cfg = tmp_path / "p2.json"
    cfg.write_text(json.dumps({"context": {"p": 2, "precision": 4},
                               "covering": {"sets": ["B(0)@digits=0"]}}))
    _, svg, _ = run(["render", "--config", cfg, "--depth", "2"], capsys)
    assert [len(r) for r in bars(svg)] == [1, 2, 4]
    _, svg, _ = run(["render", "--config", CONFIGS / "ternary.json", "--depth", "1"], capsys)
    assert [round(w / 680, 4) for w in bars(svg)[1]] == [0.3333] * 3
    _, svg, _ = run(["render", "--config", CONFIGS / "window.json", "--depth", "1"], capsys)
    assert [round(w / 680, 4) for w in bars(svg)[1]] == [0.25] * 4


def test_byte_identical_across_processes(tmp_path):
    cmds = {
        "demo.txt": ["demo", "18", "--out"],
        "verify.json": ["verify", "--config", str(CONFIGS / "line.json"), "--out"],
        "render.svg": ["render", "--config", str(CONFIGS / "window.json"), "--depth", "3",
                       "--out"],
    }
    for run_id in ("a", "b"):
        for name, argv in cmds.items():
            target = tmp_path / run_id / name
            subprocess.run([sys.executable, "-m", "valifs.cli", *argv, str(target)], check=False,
                           capture_output=True)
    for name in cmds:
        a, b = (tmp_path / "a" / name).read_bytes(), (tmp_path / "b" / name).read_bytes()
        assert a and a == b
