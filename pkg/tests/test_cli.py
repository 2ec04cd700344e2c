import json

import pytest

from farey_cf.cli import main
from farey_cf.expansion import CFExpansion, parse_expansion
from farey_cf.graph import Modulus


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand_eleven_fortieths(capsys):
    code, out, _ = run(capsys, "--p", "5", "--l", "1", "--x", "11/40", "expand")
    assert code == 0
    lines = out.splitlines()
    assert lines[1] == "1/0+ 5/1+ 1/2+ 1/1+ 1/2"
    assert lines[2] == "convergents: 1/5 3/10 4/15 11/40"
    assert lines[3] == "fins: 3/8 2/3 1/2 0/1"


def test_expand_b_set_point(capsys):
    code, out, _ = run(capsys, "--p", "5", "--l", "2", "--x", "1/5", "expand")
    assert code == 0 and out.startswith("classification: B-set")
    assert "1/0+ 25/4+ tail:+" in out and "1/0+ 25/6+ tail:-" in out


def test_expand_surd_truncates(capsys):
    code, out, _ = run(capsys, "--p", "5", "--x", "quad:0,1,2,1", "expand", "--max-terms", "10")
    assert code == 0
    text = out.splitlines()[1]
    assert text.endswith("+ ...") and len(text.split("+ ")) == 2 + 10 + 1


def test_flags_after_subcommand(capsys):
    a = run(capsys, "expand", "--p", "5", "--x", "11/40")
    b = run(capsys, "--p", "5", "--x", "11/40", "expand")
    assert a == b


def test_expand_json_round_trips(capsys):
    code, out, _ = run(capsys, "--p", "5", "--x", "7/27", "--format", "json", "expand")
    data = json.loads(out)
    m = Modulus(5, 1)
    texts = ["1/0+ 5/1+ 1/3+ 1/2+ 1/1+ 1/3+ tail:-", "1/0+ 5/1+ 1/3+ 1/2+ 1/1+ 1/1+ tail:+"]
    got = [CFExpansion.from_json(e) for e in data["expansions"]]
    assert got == [parse_expansion(t, m) for t in texts]
    assert data["classification"].startswith("GeneralRational")


def test_enumerate(capsys):
    code, out, _ = run(capsys, "--p", "5", "--x", "11/40", "enumerate")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 8
    assert [ln for ln in lines if ln.startswith("* ")] == ["* 1/0+ 5/1+ 1/2+ 1/1+ 1/2"]
    code, out, _ = run(capsys, "--p", "5", "--x", "3/10", "enumerate")
    assert [ln[:2] for ln in out.splitlines()] == ["* ", "* "]
    code, out, _ = run(capsys, "--p", "5", "--x", "1/5", "enumerate")
    assert len(out.splitlines()) == 1


def test_enumerate_off_the_vertex_set(capsys):
    code, _, err = run(capsys, "--p", "5", "--x", "7/27", "enumerate")
    assert code == 3 and "error" in err


def test_best_and_verify(capsys):
    code, out, _ = run(capsys, "best", "--x", "7/27", "--p", "5")
    assert code == 0 and out.splitlines()[0].endswith(": 1/5 4/15 9/35 13/50")
    code, out, _ = run(capsys, "verify", "--x", "11/40", "--p", "5", "--v-max", "40")
    assert code == 0 and "agreement=true" in out
    code, out, _ = run(capsys, "best", "--x", "1/5", "--p", "5", "--l", "2")
    assert code == 0 and "no best approximation" in out


def test_best_oracle_method_and_json(capsys):
    code, out, _ = run(capsys, "best", "--x", "11/40", "--p", "5", "--method", "oracle", "--format", "json")
    data = json.loads(out)
    assert data["method"] == "oracle" and [(r["u"], r["v"]) for r in data["best"]][-1] == (11, 40)


def test_irrational_best_needs_v_max(capsys):
    code, _, err = run(capsys, "best", "--x", "quad:0,1,2,1", "--p", "5")
    assert code == 1 and "v-max" in err
    code, out, _ = run(capsys, "verify", "--x", "quad:0,1,2,1", "--p", "5", "--v-max", "2000")
    assert code == 0 and "agreement=true" in out


def test_classify_and_decompose(capsys):
    assert run(capsys, "decompose", "--x", "7/27", "--p", "5")[1].strip() == "R1=13/50 R2=22/85 Nx=3"
    out = run(capsys, "decompose", "--x", "1/5", "--p", "5", "--l", "2")[1]
    assert out.startswith("R1=4/25 R2=6/25")
    assert run(capsys, "classify", "--x", "3/10", "--p", "5")[1].strip() == "MediantPoint t=1"
    code, _, _ = run(capsys, "decompose", "--x", "11/40", "--p", "5")
    assert code == 3


@pytest.mark.parametrize(
    "argv,code",
    [
        (["--p", "5", "--x", "dec:0.2:1e-2", "expand"], 2),
        (["--p", "5", "--x", "1/0", "expand"], 1),
        (["--p", "4", "--x", "1/3", "expand"], 1),
        (["--p", "5", "--x", "abc", "classify"], 1),
        (["--x", "1/3", "expand"], 1),
        (["--p", "5", "--x", "1/3"], 1),
        (["--p", "5", "--x", "1/3", "nonsense"], 1),
    ],
)
def test_exit_codes(capsys, argv, code):
    try:
        got = main(argv)
    except SystemExit as exc:  # argparse usage errors
        got = exc.code
    capsys.readouterr()
    assert got == code


def test_fuzz(capsys):
    code, out, _ = run(capsys, "fuzz", "--p", "5", "--seed", "42", "--trials", "200")
    assert code == 0 and "failures=0" in out
    code, out, _ = run(capsys, "fuzz", "--p", "3", "--l", "3", "--trials", "100", "--format", "json")
    assert code == 0 and json.loads(out)["failures"] == 0
    code, out, _ = run(capsys, "fuzz", "--p", "5", "--self-test")
    assert code == 0 and "p divides" in out


def test_fuzz_is_deterministic(capsys):
    a = run(capsys, "fuzz", "--p", "3", "--l", "2", "--seed", "5", "--trials", "50")
    b = run(capsys, "fuzz", "--p", "3", "--l", "2", "--seed", "5", "--trials", "50")
    assert a == b


def test_batch(tmp_path, capsys):
    f = tmp_path / "xs.txt"
    f.write_text("# inputs\n11/40\n7/27\nbad\n")
    code, out, _ = run(capsys, "--p", "5", "--batch", str(f), "classify")
    assert code == 1
    assert out.splitlines() == [
        "# x = 11/40", "Vertex",
        "# x = 7/27", "GeneralRational R1=13/50 R2=22/85 s1=10 s2=17 Nx=3",
        "# x = bad", out.splitlines()[-1],
    ]
    code, out, _ = run(capsys, "--p", "5", "--batch", str(f), "--format", "json", "classify")
    rows = [json.loads(ln) for ln in out.splitlines()]
    assert rows[0]["classification"] == "Vertex" and rows[2]["exit"] == 1
