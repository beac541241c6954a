from interfmin.cli import main
from interfmin.textio import format_assignment, parse_assignment


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_solve_dp(tmp_path, capsys):
    inst = tmp_path / "p2.txt"
    code, out, _ = run(capsys, "gen", "p", "2", "-o", str(inst))
    assert code == 0
    code, out, _ = run(capsys, "solve", "--method", "dp", str(inst))
    assert code == 0
    assert "optimum: 2" in out


def test_gen_solve_oracle_q0(tmp_path, capsys):
    inst = tmp_path / "q0.txt"
    run(capsys, "gen", "q", "0", "-o", str(inst))
    code, out, _ = run(capsys, "solve", "--method", "oracle", str(inst))
    assert code == 0
    assert "optimum: 2" in out


def test_solve_verifies_witness(tmp_path, capsys):
    inst = tmp_path / "i.txt"
    inst.write_text("0\n1\n3\n4\n")
    wit = tmp_path / "w.txt"
    code, out, _ = run(capsys, "solve", "--method", "nna", str(inst), "--witness-out", str(wit))
    assert code == 0
    assert f"witness_path: {wit}" in out
    text = wit.read_text()
    assert format_assignment(parse_assignment(text)) == text


def test_check_bends_on_q3_witness(tmp_path, capsys):
    inst = tmp_path / "q3.txt"
    run(capsys, "gen", "q", "3", "-o", str(inst), "--with-witness")
    code, out, _ = run(capsys, "check", "bends", str(inst), str(inst) + ".assign")
    assert code == 0
    bends = int(out.split("bends:")[1].split()[0])
    assert bends >= 3


def test_check_valid_and_cross(tmp_path, capsys):
    inst = tmp_path / "i.txt"
    inst.write_text("0\n1\n2\n")
    assign = tmp_path / "a.txt"
    assign.write_text("model sinktree1d\nsink 2\n0 2\n1 2\n")
    code, out, _ = run(capsys, "check", "valid", str(inst), str(assign))
    assert code == 0 and "valid: true" in out
    code, out, _ = run(capsys, "check", "cross", str(inst), str(assign))
    assert code == 0 and "cross_edges: 1" in out and "cross: 0 2" in out
    code, out, _ = run(capsys, "check", "bst", str(inst), str(assign))
    assert code == 0 and "bst: false" in out


def test_determinism_byte_identical(tmp_path, capsys):
    inst = tmp_path / "i.txt"
    inst.write_text("0\n3\n4\n9\n11\n")
    outputs = []
    witnesses = []
    for run_idx in range(2):
        wit = tmp_path / f"w{run_idx}.txt"
        code, out, _ = run(capsys, "solve", "--method", "dp", str(inst), "--witness-out", str(wit))
        assert code == 0
        # normalize the per-run witness path out of the report
        outputs.append(out.replace(str(wit), "WITNESS"))
        witnesses.append(wit.read_text())
    assert outputs[0] == outputs[1]
    assert witnesses[0] == witnesses[1]


def test_exit_code_malformed(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("zap\n")
    code, _, err = run(capsys, "solve", "--method", "dp", str(bad))
    assert code == 1
    assert "error" in err


def test_exit_code_cap(tmp_path, capsys):
    inst = tmp_path / "p4.txt"
    run(capsys, "gen", "p", "4", "-o", str(inst))
    code, _, err = run(capsys, "solve", "--method", "oracle", str(inst))
    assert code == 2
    assert "refused" in err


def test_exit_code_unknown_flag(capsys):
    code, _, _ = run(capsys, "solve", "--nonsense")
    assert code == 1


def test_dp_rejects_2d(tmp_path, capsys):
    inst = tmp_path / "tri.txt"
    inst.write_text("0 0\n1 0\n0 1\n")
    code, _, err = run(capsys, "solve", "--method", "dp", str(inst))
    assert code == 1 and "1D" in err
    code, _, err = run(capsys, "check", "bst", str(inst), str(inst))
    assert code == 1


def test_cap_override(tmp_path, capsys):
    inst = tmp_path / "i.txt"
    inst.write_text("0\n1\n3\n4\n")
    code, _, err = run(capsys, "solve", "--method", "oracle", str(inst), "--cap", "3")
    assert code == 2 and "refused" in err
    code, out, _ = run(capsys, "solve", "--method", "oracle", str(inst), "--cap", "4")
    assert code == 0 and "optimum: 2" in out


def test_dot_export(tmp_path, capsys):
    inst = tmp_path / "tri.txt"
    inst.write_text("0 0\n1 0\n0 1\n")
    dot = tmp_path / "g.dot"
    code, _, _ = run(capsys, "solve", "--method", "oracle", str(inst), "--dot", str(dot))
    assert code == 0
    text = dot.read_text()
    assert text.startswith("digraph") and "->" in text


def test_gen_loglower(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "loglower", "5")
    assert code == 0
    assert out.split() == ["0", "1", "3", "4", "9"]


def test_reduce_and_gadget_check(tmp_path, capsys):
    grid = tmp_path / "grid.txt"
    grid.write_text("0 0\n1 0\n2 0\n")
    points = tmp_path / "red.txt"
    code, _, _ = run(capsys, "reduce", str(grid), "-o", str(points))
    assert code == 0
    roles = (points.parent / (points.name + ".roles")).read_text().splitlines()
    assert len(roles) == 39
    assert roles[0] == "0 0 0 M"
    code, out, _ = run(capsys, "check", "gadget", str(grid))
    assert code == 0 and "gadget: ok" in out


def test_ham_assign(tmp_path, capsys):
    grid = tmp_path / "grid.txt"
    grid.write_text("0 0\n1 0\n2 0\n")
    pts = tmp_path / "pts.txt"
    assign = tmp_path / "assign.txt"
    code, out, _ = run(
        capsys, "ham", "assign", str(grid), "--points-out", str(pts), "--assign-out", str(assign)
    )
    assert code == 0
    assert "interference: 5" in out
    code, out, _ = run(capsys, "check", "interference", str(pts), str(assign))
    assert code == 0 and "interference: 5" in out


def test_ham_no_path(tmp_path, capsys):
    grid = tmp_path / "tee.txt"
    grid.write_text("0 0\n1 0\n2 0\n1 1\n1 2\n")
    code, out, _ = run(capsys, "ham", "find", str(grid))
    assert code == 2
    assert "ham_path: none" in out


def test_gen_random_deterministic(capsys):
    code, out1, _ = run(capsys, "gen", "random", "6", "--seed", "11")
    code, out2, _ = run(capsys, "gen", "random", "6", "--seed", "11")
    assert out1 == out2
    assert len(out1.split()) == 6
