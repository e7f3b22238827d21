import json
import os
import subprocess
import sys

import pytest

from folex import corpus
from folex.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dims(capsys):
    code, out, _ = run(capsys, "dims", "--n", "3", "--q", "1", "--k", "2")
    r = json.loads(out)
    assert code == 0 and (r["bott"], r["direct"]) == (6, 6) and r["schema"] == 1


def test_kernel_witness_regime(capsys):
    code, out, _ = run(capsys, "kernel", "--f", "fermat:3:4", "--q", "1", "--k", "5")
    assert code == 0 and json.loads(out)["kernel_dim"] >= 1


def test_extend_contact(capsys):
    code, out, _ = run(capsys, "extend", "--f", "fermat:3:2", "--beta", "contact")
    assert code == 0 and json.loads(out)["verdict"] == "UniqueNonIntegrable"


def test_morse_report(capsys):
    code, out, _ = run(capsys, "morse", "--f", "x1^2 + x2^2 - x0*x3", "--g", "x3 + x1^2", "--point", "0,0,0")
    r = json.loads(out)
    assert code == 0 and r["verdict"] == "Morse" and r["det"] == 8 and r["critical"] is True


def test_human_rendering(capsys):
    code, out, _ = run(capsys, "dims", "--n", "3", "--q", "1", "--k", "2", "--human")
    assert code == 0
    rows = dict(line.split(None, 1) for line in out.splitlines())
    assert rows["bott"] == "6" and rows["verdict"] == "agree"


def test_assert_mode(capsys):
    assert run(capsys, "integrable", "--omega", "pencil", "--n", "3", "--assert", "true")[0] == 0
    code, _, err = run(capsys, "integrable", "--omega", "contact", "--n", "3", "--assert", "true")
    assert code == 1 and "assertion failed" in err


@pytest.mark.parametrize("argv", [
    ["dims", "--n", "3"],
    ["nosuch"],
    ["dims", "--n", "x", "--q", "1", "--k", "2"],
    ["extend", "--f", "fermat:3:2", "--beta", "x0*dx1 + dx0"],
    ["gauss", "--f", "quadric:3", "--point", "1,0,0,0"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_corpus_passes(capsys):
    code, out, _ = run(capsys, "corpus")
    r = json.loads(out)
    assert code == 0 and r["failed"] == 0 and r["total"] == len(corpus.load_cases())


def test_corpus_anchors_present():
    assert all(c.anchor for c in corpus.load_cases())


def test_corrupted_corpus_fails(tmp_path, capsys):
    case = {"id": "bad", "anchor": "Bott formula for twisted differentials", "command": "dims",
            "args": {"n": "3", "q": "1", "k": "2"}, "expect": {"bott": 7}}
    (tmp_path / "bad.json").write_text(json.dumps([case]))
    code, out, _ = run(capsys, "corpus", "--dir", str(tmp_path))
    r = json.loads(out)
    assert code == 1 and r["failed"] == 1 and r["cases"][0]["mismatches"]


def test_empty_corpus_warns(tmp_path, capsys):
    code, out, err = run(capsys, "corpus", "--dir", str(tmp_path))
    assert code == 0 and json.loads(out)["total"] == 0 and "empty" in err


def _cli(args, threads):
    env = dict(os.environ, FOLEX_THREADS=str(threads))
    return subprocess.run([sys.executable, "-m", "folex", *args], env=env, capture_output=True, check=False)


def test_output_identical_across_thread_counts():
    outs = [_cli(["corpus"], t) for t in (1, 4)]
    assert all(o.returncode == 0 for o in outs)
    assert outs[0].stdout == outs[1].stdout
    again = [_cli(["kernel", "--f", "fermat:3:3", "--q", "1", "--k", "4", "--basis"], t).stdout for t in (1, 3)]
    assert again[0] == again[1]
