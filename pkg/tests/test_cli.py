import json
import subprocess
import sys

import pytest

from hopf_pfaff.cli import JobSpec, main, run
from hopf_pfaff.corpus import corpus_dir

CORPUS = corpus_dir()


def cli(*args):
    return subprocess.run([sys.executable, "-m", "hopf_pfaff.cli", *args], capture_output=True, text=True)


def load(name):
    return json.loads((CORPUS / name).read_text())


def test_classify_corpus_file():
    out, code = run(JobSpec("classify", manifold=load("noresonance_235.json")))
    assert code == 0 and json.loads(out)["class"] == "NoResonance"


def test_sections_classical_dim_50():
    bundle = load("classical_n5.json")
    out, code = run(JobSpec("sections", manifold=bundle["manifold"], character=bundle["character"], k=2))
    data = json.loads(out)
    assert code == 0 and data["dim"] == 50 and data["class"] == "Classical"


def test_sections_text_cites_case():
    bundle = load("weak_2235.json")
    out, code = run(JobSpec("sections", manifold=bundle["manifold"], character=bundle["character"], k=1,
                            output="text", general=True))
    assert code == 0
    assert out.splitlines()[0].startswith("weak no-resonance case")
    assert "dim = 7" in out and "c[3|2,0,0,0]*z1^2" in out


def test_basis_lists_one_based_solutions():
    bundle = load("weak_2235.json")
    data = json.loads(run(JobSpec("basis", manifold=bundle["manifold"], character=bundle["character"], k=1))[0])
    assert {"idx": [3], "alpha": [2, 0, 0, 0]} in data["solutions"]


def test_analyze_example_1():
    path = str(CORPUS / "paper_example_1.json")
    proc = cli("analyze", path)
    data = json.loads(proc.stdout)
    assert proc.returncode == 0 and data["is_regular"] is True and data["k"] == 2


def test_analyze_text_output():
    bundle = load("paper_example_2.json")
    out, code = run(JobSpec("analyze", manifold=bundle["exact_manifold"], form=bundle["form"], output="text"))
    assert code == 0
    assert "sing_codim=2" in out and "mu1*mu2*mu3*mu4*mu5" in out and "not applicable" in out


def test_oracle_agrees():
    bundle = load("resonant_2435.json")
    data = json.loads(run(JobSpec("oracle", manifold=bundle["manifold"], character=bundle["character"], k=2))[0])
    assert data["matches_solve_sections"] is True


def test_enumerate_regular():
    data = json.loads(run(JobSpec("enumerate-regular", manifold=load("noresonance_235.json"), k=1))[0])
    assert data["count"] == 3
    assert [s["compact_leaf"]["zero_coords"] for s in data["systems"]] == [[1], [2], [3]]


def test_not_monomial_character_reports_dim_0():
    out, code = run(JobSpec("sections", manifold=load("noresonance_235.json"), character={"value": {"num": 1, "den": 7}}, k=1))
    assert code == 0 and json.loads(out)["dim"] == 0


@pytest.mark.parametrize("job, code, field", [
    (JobSpec("sections", manifold={"n": 3, "mode": "exact", "mu": []}, character={"exponents": [1, 0, 0]}, k=1),
     2, "manifold.mu"),
    (JobSpec("sections", manifold={"n": 3, "mode": "symbolic", "classes": [1, 2, 3]}, k=1), 2, "character"),
    (JobSpec("general", manifold={"n": 3, "mode": "symbolic", "classes": [1, 1, 2]}, character={"exponents": [1, 0, 1]},
             k=3), 2, "k must"),
    (JobSpec("sections", manifold={"n": 4, "mode": "symbolic", "classes": [1, 1, 2, 2]},
             character={"exponents": [1, 0, 1, 0]}, k=1), 3, "resonant"),
    (JobSpec("enumerate-regular", manifold={"n": 4, "mode": "symbolic", "classes": [1, 1, 2, 3]}, k=1), 3, "NoResonance"),
])
def test_exit_codes(job, code, field):
    out, got = run(job)
    assert got == code
    assert field in json.loads(out)["message"]


def test_malformed_json_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    proc = cli("classify", "--manifold", str(bad))
    assert proc.returncode == 2 and "manifold" in proc.stdout
    proc = cli("classify", "--manifold", str(tmp_path / "missing.json"))
    assert proc.returncode == 2


def test_inline_json_and_determinism(capsys):
    args = ["sections", "--manifold", '{"n":4,"mode":"exact","mu":[{"num":1,"den":2},{"num":1,"den":4},'
            '{"num":1,"den":3},{"num":1,"den":5}]}', "--character", '{"value":{"num":1,"den":48}}', "-k", "2",
            "--basis"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    assert capsys.readouterr().out == first
    assert json.loads(first)["dim"] > 0


def test_corpus_verify_command():
    proc = cli("corpus-verify")
    assert proc.returncode == 0
    assert "FAIL" not in proc.stdout and proc.stdout.count("PASS") >= 30
