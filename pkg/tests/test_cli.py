"""The command-line shell: every behavior reachable through library calls,
outputs stable for golden comparison."""

import json

import pytest

from clarith.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_check_cla4(capsys, corpus_dir):
    code, out = run_cli(capsys, "check", str(corpus_dir / "zeroness.cla4"))
    assert code == 0
    assert "ok: 7 lines, 3 trusted arithmetic, 0 trusted stability" in out
    assert out.count("TRUSTED arithmetic") == 3


def test_check_cl12(capsys, corpus_dir):
    code, out = run_cli(capsys, "check", str(corpus_dir / "cube.cl12"))
    assert code == 0 and "sequent proof: 10 lines" in out and "ok" in out


def test_check_rejects_broken_file(capsys, tmp_path, corpus_dir):
    bad = tmp_path / "bad.cl12"
    text = (corpus_dir / "cube.cl12").read_text().replace(
        "ex-choose at=s t=r", "ex-choose at=s t=s")
    bad.write_text(text)
    code, out = run_cli(capsys, "check", str(bad))
    assert code == 1 and "REJECTED" in out


def test_no_trusted_policy(capsys, corpus_dir):
    code, out = run_cli(capsys, "check", str(corpus_dir / "zeroness.cla4"),
                        "--no-trusted")
    assert code == 1 and "disallowed by policy" in out


def test_search_positive_and_negative(capsys):
    code, out = run_cli(capsys, "search", "!x:?y:(p(x) -> p(y))")
    assert code == 0 and "ex-choose" in out
    code, out = run_cli(capsys, "search", "!x:?y:(y = f(x))")
    assert code == 1 and "no proof" in out


def test_extract_play_certify_round_trip(capsys, corpus_dir, tmp_path):
    bundle = tmp_path / "onesuc.bundle"
    code, out = run_cli(capsys, "extract", str(corpus_dir / "onesuc.cla4"),
                        "-o", str(bundle))
    assert code == 0 and "wrote" in out
    code, out = run_cli(capsys, "play", str(bundle), "--moves", "101")
    assert code == 0 and "T:1011" in out and "verdict: T" in out
    code, out = run_cli(capsys, "play", str(bundle), "--random", "20",
                        "--seed", "5", "--max-bits", "64")
    assert code == 0 and "20/20 wins" in out
    code, out = run_cli(capsys, "certify", str(bundle), "--at", "0,8")
    assert code == 0 and "bound(0) =" in out and "bound(8) =" in out
    payload = json.loads(bundle.read_text())
    assert payload["format"] == "clarith-bundle"


def test_play_script_transcript_round_trip(capsys, corpus_dir, tmp_path):
    bundle = tmp_path / "z.bundle"
    run_cli(capsys, "extract", str(corpus_dir / "zeroness.cla4"), "-o", str(bundle))
    script = tmp_path / "session.log"
    script.write_text("B:110\n")
    out_file = tmp_path / "replay.log"
    code, out = run_cli(capsys, "play", str(bundle), "--script", str(script),
                        "--transcript", str(out_file))
    assert code == 0
    assert out_file.read_text() == "B:110\nT:1\n"
    # replaying the produced transcript reproduces it exactly
    code, out = run_cli(capsys, "play", str(bundle), "--script", str(out_file))
    assert code == 0 and "B:110" in out and "T:1" in out


def test_codec_subcommand(capsys, machines_dir):
    code, out = run_cli(capsys, "codec", str(machines_dir / "appender.hpm"),
                        "roundtrip", "60")
    assert code == 0 and "round-trip and successor agree" in out
    code, out = run_cli(capsys, "codec", str(machines_dir / "beeper.hpm"),
                        "trace", "--fuel", "4")
    assert code == 0 and "T:1" in out
