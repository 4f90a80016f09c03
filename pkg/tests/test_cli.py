import json

import pytest

from flk.cli import load_config, main
from flk.errors import ConfigInvalid


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_and_load(tmp_path, capsys):
    out = tmp_path / "alg.bin"
    code, text, _ = _run(capsys, "build", "--type", "A1", "--ell", "5", "--p", "11", "--r", "0",
                         "--part", "b", "--out", str(out))
    assert code == 0 and json.loads(text)["dim"] == 25
    assert out.read_bytes().startswith(b"FLK-ALG 1\n")
    code, text, _ = _run(capsys, "build", "--type", "A1", "--part", "u", "--dump-json")
    assert json.loads(text)["dim"] == 5


def test_betti_and_modules(capsys):
    code, text, _ = _run(capsys, "betti", "--type", "A2", "--degree", "4", "--invariant", "5")
    rep = json.loads(text)
    assert rep["betti"] == [1, 2, 5, 7, 12] and rep["invariant_betti"] == [1, 0, 3, 0, 6]
    code, text, _ = _run(capsys, "verma", "--p", "3", "--r", "1", "--part", "G_r", "--weight", "7")
    rep = json.loads(text)
    assert (rep["verma_dim"], rep["simple_dim"]) == (15, 6)
    code, text, _ = _run(capsys, "simples", "--type", "A1")
    assert [s["dim"] for s in json.loads(text)["simples"]] == [1, 2, 3, 4, 5]


def test_restrict_and_cocycle(capsys):
    code, text, _ = _run(capsys, "restrict", "--root", "2")
    deg2 = [d for d in json.loads(text)["degrees"] if d["degree"] == 2][0]
    assert deg2["survivors"] == [[0, 5]]
    code, text, _ = _run(capsys, "cocycle-check", "--p", "3", "--r", "1", "--gen", "F(5)")
    assert json.loads(text)["cocycle"] is True
    code, text, _ = _run(capsys, "cocycle-check", "--p", "3", "--r", "1", "--gen", "F", "--mutate")
    assert json.loads(text)["cocycle"] is False


def test_even_ell_is_invalid(tmp_path, capsys):
    cfg = tmp_path / "bad.ini"
    cfg.write_text("[suite]\nchecks = AC-01\n\n[AC-01]\nell = 4\n")
    with pytest.raises(ConfigInvalid):
        load_config(cfg)
    code, _, err = _run(capsys, "verify", "--config", str(cfg))
    assert code == 2 and "invalid configuration" in err


@pytest.mark.parametrize("text", [
    "[suite]\nchecks = AC-99\n",
    "[AC-02]\np = 5\n",
    "[AC-02]\nbogus = 1\n",
    "[suite]\nfrobnicate = yes\n",
])
def test_other_invalid_configs(tmp_path, text):
    cfg = tmp_path / "c.ini"
    cfg.write_text(text)
    with pytest.raises(ConfigInvalid):
        load_config(cfg)


def test_verify_is_deterministic_and_cache_neutral(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "ok.ini"
    cfg.write_text("[suite]\nchecks = AC-01, AC-02, AC-10, AC-14, AC-15\nseed = 7\n")
    cold, warm, plain = tmp_path / "cold.json", tmp_path / "warm.json", tmp_path / "plain.json"
    monkeypatch.delenv("FLK_CACHE_DIR", raising=False)
    assert main(["verify", "--config", str(cfg), "--out", str(plain)]) == 0
    monkeypatch.setenv("FLK_CACHE_DIR", str(tmp_path / "cache"))
    assert main(["verify", "--config", str(cfg), "--out", str(cold)]) == 0
    assert main(["verify", "--config", str(cfg), "--out", str(warm)]) == 0
    assert plain.read_bytes() == cold.read_bytes() == warm.read_bytes()
    rep = json.loads(plain.read_text())
    assert rep["seed"] == 7 and rep["failed"] == []
    assert [c["id"] for c in rep["checks"]][0] == "AC-01 dimension laws"
    assert all("seconds" not in c and c["expected_from"] for c in rep["checks"])


def test_verify_failure_exit_code(tmp_path, capsys):
    cfg = tmp_path / "fail.ini"
    # a 0-second limit cannot be met, so the check must fail
    cfg.write_text("[suite]\nchecks = AC-02\n\n[AC-02]\nseconds = 0\n")
    code = main(["verify", "--config", str(cfg), "--timings", "--out", str(tmp_path / "r.json")])
    assert code == 1
    rep = json.loads((tmp_path / "r.json").read_text())
    assert rep["checks"][0]["status"] == "fail" and "seconds" in rep["checks"][0]
