import json
from pathlib import Path
import subprocess
import sys

import pytest

from qfold import cli
from qfold.config import ConfigError, parse_config

C2 = """\
# type C2 given as a matrix block
cartan:
  2 -1
  -2 2
symmetrizers = 2 1
weights = 0 1 ; 1 0
"""


def write(tmp_path, text, name="job.cfg"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


def run_main(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_block_and_named():
    cfg = parse_config(C2 + "command = fold\ndepth = 3\n")
    assert cfg.cartan == [[2, -1], [-2, 2]]
    assert cfg.symmetrizers == [2, 1]
    assert cfg.weights == [[0, 1], [1, 0]]
    assert cfg.command == "fold" and cfg.depth == 3
    named = parse_config("cartan = G2\nweights = 0 1\n")
    assert named.cartan == [[2, -1], [-3, 2]]
    assert named.name == "G2"
    assert named.cartan_data().s == (3, 1)


@pytest.mark.parametrize(
    "text",
    [
        "weights = 1 0\n",
        "cartan = Z9\n",
        "cartan:\n  2 -1\n  -1\n",
        "cartan:\n\ncommand = fold\n",
        "cartan = A2\ncommand = explode\n",
        "cartan = A2\nfoo = 1\n",
        "cartan = A2\ndepth = -1\n",
        "cartan = A2\ndepth = 1 2\n",
        "cartan = A2\nweights = 1 x\n",
        "cartan = A2\nweights = 1 0\nweights = 0 1\n",
        "cartan = A2\njust words\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_semantic_config_errors():
    with pytest.raises(ConfigError):
        parse_config("cartan:\n  2 1\n  1 2\n").cartan_data()
    with pytest.raises(ConfigError):
        parse_config("cartan:\n  2 -1\n  -2 2\nsymmetrizers = 1 1\n").cartan_data()
    cfg = parse_config("cartan = A2\nweights = 1 -1 ; 1 0 0\n")
    cd = cfg.cartan_data()
    with pytest.raises(ConfigError):
        cfg.weight_list(cd)


def test_fold_command(tmp_path, capsys):
    cfg = write(tmp_path, C2 + "command = fold\n")
    out_dir = tmp_path / "out"
    code, text, _ = run_main(capsys, "--config", cfg, "--out", str(out_dir))
    assert code == 0
    rep = json.loads(text)
    assert rep["verdict"] == "pass"
    assert rep["sections"]["fold"]["vertices"] == 3
    assert rep["sections"]["fold"]["round_trip"] == "pass"
    assert set(rep["design"]) == {"coproduct", "braiding", "crystal", "tensor_rule", "layout"}
    assert (out_dir / "report.json").read_text(encoding="utf-8") == text
    assert (out_dir / "quiver.dot").read_text(encoding="utf-8").startswith("digraph")


def test_module_command_a1(tmp_path, capsys):
    cfg = write(tmp_path, "cartan = A1\ncommand = module\nweights = 2\n")
    code, text, _ = run_main(capsys, "--config", cfg)
    assert code == 0
    rep = json.loads(text)
    sec = rep["sections"]["L[2] character"]
    assert [row["mult"] for row in sec["table"]] == [1, 1, 1]
    assert all(v["ok"] for v in rep["sections"]["L[2] relations"].values())


def test_ybe_command_a1(tmp_path, capsys):
    cfg = write(tmp_path, "cartan = A1\ncommand = ybe\nweights = 1\n")
    code, text, _ = run_main(capsys, "--config", cfg)
    rep = json.loads(text)
    assert code == 0
    assert rep["sections"]["ybe"] == {
        "dim": 8,
        "verdict": "pass",
        "paths": ["123>213>231>321", "123>132>312>321"],
    }


@pytest.mark.parametrize("command", ["crystal", "fold-crystal", "tensor", "theta", "forms", "module"])
def test_every_command_passes_on_c2(tmp_path, capsys, command):
    cfg = write(tmp_path, C2)
    out_dir = tmp_path / command
    code, text, err = run_main(capsys, "--config", cfg, "--command", command, "--out", str(out_dir))
    assert code == 0, text
    assert json.loads(text)["verdict"] == "pass"
    if command == "crystal":
        assert sorted(p.name for p in out_dir.glob("*.dot")) == ["crystal_1.dot", "crystal_2.dot", "tensor.dot"]


def test_depth_override_on_affine(tmp_path, capsys):
    cfg = write(tmp_path, "cartan = A1~\ncommand = module\nweights = 1 0\n")
    code, text, _ = run_main(capsys, "--config", cfg, "--depth", "3")
    assert code == 0
    sec = json.loads(text)["sections"]["L[1, 0] character"]
    assert sec["window"] == 3 and sec["matches_freudenthal"]


@pytest.mark.parametrize(
    "text, argv",
    [
        ("cartan = A1\ncommand = ybe\nweights = 1 ; 1\n", []),
        ("cartan = A1\ncommand = tensor\nweights = 1\n", []),
        ("cartan = A1\ncommand = module\nweights = -1\n", []),
        ("cartan = A1\nweights = 1\n", []),
        ("cartan = A1~\ncommand = forms\nweights = 1 0\n", ["--command", "theta"]),
        ("cartan = A1\ncommand = module\nweights = 1\n", ["--depth", "-2"]),
    ],
)
def test_config_errors_exit_2(tmp_path, capsys, text, argv):
    cfg = write(tmp_path, text)
    code, out, err = run_main(capsys, "--config", cfg, *argv)
    assert code == 2
    assert err.startswith("config error:")
    assert out == ""


def test_missing_config_file_exit_2(tmp_path, capsys):
    code, _, err = run_main(capsys, "--config", str(tmp_path / "nope.cfg"))
    assert code == 2 and "cannot read" in err


def test_failed_verification_exit_1(tmp_path, capsys, monkeypatch):
    def broken(cd, mods, depth=None):
        return {"relation": "Yang-Baxter", "ok": False, "dim": 8, "paths": [], "first_failure": {"target": [[0]]}}

    monkeypatch.setattr(cli, "verify_yang_baxter", broken)
    cfg = write(tmp_path, "cartan = A1\ncommand = ybe\nweights = 1\n")
    code, text, _ = run_main(capsys, "--config", cfg)
    rep = json.loads(text)
    assert code == 1
    assert rep["verdict"] == "fail"
    assert rep["first_failure"]["section"] == "ybe"
    assert rep["first_failure"]["identity"] == "R23 R13 R12 = R12 R13 R23"
    assert rep["first_failure"]["block"] == {"target": [[0]]}


def test_reports_are_deterministic(tmp_path, capsys):
    cfg = write(tmp_path, C2 + "command = theta\n")
    first = run_main(capsys, "--config", cfg)[1]
    second = run_main(capsys, "--config", cfg)[1]
    assert first == second
    assert first == cli.dumps(json.loads(first))


def test_module_entry_point(tmp_path):
    cfg = write(tmp_path, "cartan = A1\ncommand = fold\n")
    proc = subprocess.run([sys.executable, "-m", "qfold", "--config", cfg], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] == "pass"


CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


@pytest.mark.parametrize("path", sorted(CONFIG_DIR.glob("*.cfg")), ids=lambda p: p.name)
def test_shipped_configs_pass(path, capsys):
    code, text, _ = run_main(capsys, "--config", str(path))
    assert code == 0
    assert json.loads(text)["verdict"] == "pass"
