import json

import pytest

from listcolour.cli import main
from listcolour.io import read_graph
from listcolour.oracle import verify_colouring

EXPECTED_EXIT = {"yes": 0, "no": 1, "rejected": 2, "exhausted": 3}


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def certificate(out):
    return {int(p[1]) - 1: int(p[2]) for p in (line.split() for line in out.splitlines()) if p[0] == "v"}


def field(out, key):
    for line in out.splitlines():
        if line.startswith(key + " "):
            return line.split(" ", 1)[1]
    return None


def gen(capsys, path, seed, forbid="k4,p3p4", n=14):
    code, _ = run(capsys, "gen", "--n", str(n), "--forbid", forbid, "--require-p7", "--seed", str(seed),
                  "--lists", "-o", str(path))
    assert code == 0
    return path


def test_gen_is_byte_identical(tmp_path, capsys):
    a = gen(capsys, tmp_path / "a.col", 1).read_bytes()
    b = gen(capsys, tmp_path / "b.col", 1).read_bytes()
    assert a == b


def test_gen_output_passes_check_free(tmp_path, capsys):
    for seed in range(4):
        f = gen(capsys, tmp_path / f"g{seed}.col", seed)
        code, out = run(capsys, "check-free", "--pattern", "p3p4", str(f))
        assert code == 0 and field(out, "free") == "yes"
        code, out = run(capsys, "check-free", "--pattern", "p7", str(f))
        assert code == 1 and field(out, "witness") is not None


def test_solve_exit_codes_and_certificates(tmp_path, capsys):
    seen = set()
    for seed in range(12):
        f = gen(capsys, tmp_path / f"s{seed}.col", seed)
        code, out = run(capsys, "solve", str(f), "--h", "p3p4")
        answer = field(out, "answer")
        seen.add(answer)
        assert code == EXPECTED_EXIT[answer]
        if answer == "yes":
            g, lists, _ = read_graph(str(f))
            assert verify_colouring(g, lists, certificate(out))
    assert {"yes", "no"} <= seen


def test_solve_rejects_non_free_input(tmp_path, capsys):
    f = tmp_path / "p3p5.col"
    f.write_text("p 8 6\ne 1 2\ne 2 3\ne 4 5\ne 5 6\ne 6 7\ne 7 8\n")
    code, out = run(capsys, "solve", str(f))
    assert code == 2 and field(out, "answer") == "rejected"
    code, out = run(capsys, "solve", str(f), "--verify-freeness", "off")
    assert code == 0 and field(out, "answer") == "yes"


def test_trace_file_written(tmp_path, capsys):
    f = gen(capsys, tmp_path / "t.col", 5)
    trace = tmp_path / "t.trace"
    run(capsys, "solve", str(f), "--trace", str(trace))
    lines = trace.read_text().splitlines()
    assert lines and all(line.startswith("B") for line in lines)


def test_json_report(tmp_path, capsys):
    f = tmp_path / "c5.col"
    f.write_text("p 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n")
    code, out = run(capsys, "solve", str(f), "--json")
    obj = json.loads(out)
    assert code == 0 and obj["answer"] == "yes" and len(obj["certificate"]) == 5


def test_oracle_command(tmp_path, capsys):
    f = tmp_path / "k4.col"
    f.write_text("p 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n")
    code, out = run(capsys, "oracle", str(f))
    assert code == 1 and field(out, "answer") == "no"
    code, out = run(capsys, "oracle", str(f), "--k", "4")
    assert code == 0 and len(certificate(out)) == 4
    f.write_text("p 9 0\n" + "".join(f"e {u} {v}\n" for u in range(1, 10) for v in range(u + 1, 10)))
    code, out = run(capsys, "oracle", str(f), "--k", "8", "--budget-nodes", "5")
    assert code == 3 and field(out, "answer") == "exhausted"


def test_classify_command(tmp_path, capsys):
    claw = tmp_path / "claw.col"
    claw.write_text("p 4 3\ne 1 2\ne 1 3\ne 1 4\n")
    code, out = run(capsys, "classify", str(claw))
    assert code == 1 and field(out, "label") == "NPCompleteExpected"
    lf = tmp_path / "p3p4.col"
    lf.write_text("p 7 5\ne 1 2\ne 2 3\ne 4 5\ne 5 6\ne 6 7\n")
    code, out = run(capsys, "classify", str(lf))
    assert code == 0 and field(out, "label") == "PolynomialLinearForest"
    big = tmp_path / "p8.col"
    big.write_text("p 8 0\n")
    assert run(capsys, "classify", str(big))[0] == 2


def test_gadget_commands(tmp_path, capsys):
    f = tmp_path / "f.txt"
    f.write_text("v 4\nc 1 2 3\nc 2 3 4\n")
    out_graph = tmp_path / "gp.col"
    code, out = run(capsys, "gadget", "build", str(f), "--prime", "-o", str(out_graph))
    assert code == 0 and field(out, "vertices") == str(2 * 4 + 8 * 2 + 5)
    g, _, _ = read_graph(str(out_graph))
    assert len(g) == 29
    for lemma in ("11", "12", "13"):
        code, out = run(capsys, "gadget", "verify", str(f), "--lemma", lemma)
        assert code == 0 and field(out, "result") == "confirmed"
    plain = tmp_path / "g.col"
    run(capsys, "gadget", "build", str(f), "-o", str(plain))
    code, out = run(capsys, "oracle", str(plain))
    assert code == 0


def test_usage_errors(tmp_path, capsys):
    missing = tmp_path / "nope.col"
    assert main(["solve", str(missing)]) == 2
    bad = tmp_path / "bad.col"
    bad.write_text("p 2 1\ne 1 5\n")
    assert main(["solve", str(bad)]) == 2
    assert main(["gen", "--n", "5", "--forbid", "bogus"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["solve"])
    assert exc.value.code == 2


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "listcolour" in capsys.readouterr().out
