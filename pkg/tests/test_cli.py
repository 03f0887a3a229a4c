"""Command-line behavior: subcommands, formats, and the exit-code contract."""

import json

import pytest

from amlab import matrix_algebra, matrix_diagonal, serialize
from amlab.cli import main


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture()
def m2_file(tmp_path):
    return write(tmp_path / "M2.json",
                 serialize.algebra_to_dict(matrix_algebra(2)))


@pytest.fixture()
def good_net_file(tmp_path):
    A = matrix_algebra(2)
    t = matrix_diagonal(2, algebra=A)
    net = {"algebra": "M2", "tolerance": "0",
           "entries": [serialize.tensor_to_dict(t)["terms"]],
           "test_set": [{"label": lab, "coeffs": [[i, "1"]]}
                        for i, lab in enumerate(A.labels)]}
    return write(tmp_path / "net.json", net)


def test_check_diagonal_pass(m2_file, good_net_file, tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["check-diagonal", m2_file, good_net_file,
                 "--require-symmetric", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["verdict"] is True
    assert report["entries"][0]["symmetric"] is True


def test_check_diagonal_fails_on_broken_tensor(m2_file, tmp_path):
    A = matrix_algebra(2)
    t = matrix_diagonal(2, algebra=A)
    terms = serialize.tensor_to_dict(t)["terms"]
    terms[1][2] = "-1/2"  # flip one sign
    net = {"tolerance": "0", "entries": [terms],
           "test_set": [{"label": "E11", "coeffs": [[0, "1"]]}]}
    net_file = write(tmp_path / "bad_net.json", net)
    code = main(["check-diagonal", m2_file, net_file])
    assert code == 1


def test_check_diagonal_csv(m2_file, good_net_file, capsys):
    code = main(["check-diagonal", m2_file, good_net_file, "--format", "csv"])
    assert code == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == \
        "entry_index,element_label,d1,d2,d3,d4,symmetric,verdict"


def test_malformed_json_exits_2(tmp_path, good_net_file):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    assert main(["check-diagonal", str(bad), good_net_file]) == 2


def test_invalid_presentation_exits_3(tmp_path, good_net_file):
    broken = {"basis": ["a", "b"], "weights": [1, 1],
              "mul": [[0, 0, 1, "1"], [1, 0, 0, "1"]], "unit": None}
    path = write(tmp_path / "broken.json", broken)
    assert main(["check-diagonal", path, good_net_file]) == 3


def test_build_matrix_diagonal(tmp_path, capsys):
    out = tmp_path / "t.json"
    alg_out = tmp_path / "alg.json"
    code = main(["build-diagonal", "matrix", "2",
                 "--out", str(out), "--algebra-out", str(alg_out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["symmetric"] is True
    assert payload["proj_norm"] == "2"
    algebra = serialize.algebra_from_dict(json.loads(alg_out.read_text()), "rational")
    t = serialize.tensor_from_dict(payload, algebra)
    assert t == matrix_diagonal(2, algebra=algebra)


def test_build_group_diagonal(tmp_path):
    group = {"labels": ["e", "g"], "table": [[0, 1], [1, 0]]}
    gpath = write(tmp_path / "C2.json", group)
    out = tmp_path / "t.json"
    assert main(["build-diagonal", "group", gpath, "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["symmetric"] is True
    assert sorted(payload["terms"]) == [[0, 0, "1/2"], [1, 1, "1/2"]]


def test_build_group_rejects_non_group(tmp_path):
    gpath = write(tmp_path / "notgroup.json",
                  {"labels": ["a", "b"], "table": [[1, 1], [1, 1]]})
    assert main(["build-diagonal", "group", gpath]) == 3


def test_build_ideal_delegates(tmp_path, m2_file):
    t_file = tmp_path / "t.json"
    main(["build-diagonal", "matrix", "2", "--out", str(t_file)])
    e_file = write(tmp_path / "e.json",
                   {"coeffs": [[0, "1"], [3, "1"]]})  # the unit of M2
    out = tmp_path / "m.json"
    assert main(["build-diagonal", "ideal", m2_file, str(t_file), str(e_file),
                 "--out", str(out)]) == 0
    m = json.loads(out.read_text())
    assert m["terms"] == json.loads(t_file.read_text())["terms"]


def test_build_direct_sum_and_pushforward(tmp_path):
    a2 = write(tmp_path / "A2.json", serialize.algebra_to_dict(matrix_algebra(2)))
    a3 = write(tmp_path / "A3.json", serialize.algebra_to_dict(matrix_algebra(3)))
    t2 = tmp_path / "t2.json"
    t3 = tmp_path / "t3.json"
    main(["build-diagonal", "matrix", "2", "--out", str(t2)])
    main(["build-diagonal", "matrix", "3", "--out", str(t3)])
    sum_out = tmp_path / "sum.json"
    sum_alg = tmp_path / "sum_alg.json"
    code = main(["build-diagonal", "direct-sum", a2, str(t2), a3, str(t3),
                 "--out", str(sum_out), "--algebra-out", str(sum_alg)])
    assert code == 0
    payload = json.loads(sum_out.read_text())
    assert payload["symmetric"] is True
    assert len(payload["terms"]) == 4 + 9


def test_build_truncated_diagonal(tmp_path):
    out = tmp_path / "t.json"
    alg_out = tmp_path / "alg.json"
    assert main(["build-diagonal", "truncated", "2", "4",
                 "--out", str(out), "--algebra-out", str(alg_out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["symmetric"] is True
    assert len(payload["terms"]) == 4       # the 2-block inside 4x4
    algebra = serialize.algebra_from_dict(json.loads(alg_out.read_text()), "rational")
    assert algebra.meta["matrix_n"] == 4    # provenance survives the file


def test_build_truncated_bad_params(tmp_path):
    assert main(["build-diagonal", "truncated", "5", "4"]) == 2


def test_build_pushforward(tmp_path):
    from amlab import block_projection, direct_sum_algebra, serialize as ser
    A2, A3 = matrix_algebra(2), matrix_algebra(3)
    S = direct_sum_algebra([A2, A3])
    dom = write(tmp_path / "S.json", ser.algebra_to_dict(S))
    cod = write(tmp_path / "M2.json", ser.algebra_to_dict(A2))
    theta = write(tmp_path / "theta.json",
                  ser.linear_map_to_dict(block_projection(S, 0)))
    # the summed diagonal over S, via the library, saved as a tensor file
    from amlab import direct_sum_diagonal, matrix_diagonal as md
    ts = direct_sum_diagonal([md(2, algebra=A2), md(3, algebra=A3)], ambient=S)
    tfile = write(tmp_path / "ts.json", ser.tensor_to_dict(ts))
    out = tmp_path / "pushed.json"
    assert main(["build-diagonal", "pushforward", dom, cod, theta, tfile,
                 "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    got = ser.tensor_from_dict(payload, matrix_algebra(2))
    assert got.coeffs == matrix_diagonal(2).coeffs


def test_build_pushforward_rejects_non_epimorphism(tmp_path, m2_file):
    t_file = tmp_path / "t.json"
    main(["build-diagonal", "matrix", "2", "--out", str(t_file)])
    bad = write(tmp_path / "bad_map.json",
                {"matrix": [["0", "1", "0", "0"], ["1", "0", "0", "0"],
                            ["0", "0", "0", "1"], ["0", "0", "1", "0"]]})
    assert main(["build-diagonal", "pushforward", m2_file, m2_file, bad,
                 str(t_file)]) == 3


def test_convergence_table(tmp_path, capsys):
    test_file = write(tmp_path / "tests.json",
                      {"elements": [{"label": "E14", "coeffs": [[3, "1"]]}]})
    code = main(["convergence-table", "6", str(test_file)])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "n,element,d1,d2,d3,d4,tail_bound"
    # E14 sits at row 1, column 4: d1 = 1 until n reaches 4
    by_n = {int(line.split(",")[0]): line.split(",") for line in lines[1:]}
    assert by_n[3][2] == "1" and by_n[4][2] == "0"


def test_convergence_table_empty_test_set(tmp_path, capsys):
    test_file = write(tmp_path / "tests.json", {"elements": []})
    assert main(["convergence-table", "4", str(test_file)]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines == ["n,element,d1,d2,d3,d4,tail_bound"]


def test_convergence_table_rejects_support_outside(tmp_path):
    test_file = write(tmp_path / "tests.json",
                      {"elements": [{"label": "big", "coeffs": [[99, "1"]]}]})
    assert main(["convergence-table", "3", str(test_file)]) == 2


def test_witness_feasible_and_infeasible(tmp_path, m2_file, capsys):
    z = write(tmp_path / "z.json", {"coeffs": [[0, "1"], [3, "1"]]})
    assert main(["witness", m2_file, z]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["decision"] == "FEASIBLE"
    assert payload["functional"]["values"] == ["1/2", "0", "0", "1/2"]
    z2 = write(tmp_path / "z2.json", {"coeffs": [[0, "1"], [3, "-1"]]})
    assert main(["witness", m2_file, z2]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["decision"] == "INFEASIBLE"
    assert payload["certificate"]


def test_witness_with_diagonal(tmp_path, m2_file, capsys):
    z = write(tmp_path / "z.json", {"coeffs": [[0, "1"], [3, "1"]]})
    t = tmp_path / "t.json"
    main(["build-diagonal", "matrix", "2", "--out", str(t)])
    g = write(tmp_path / "g.json", {"values": ["1", "0", "0", "0"]})
    code = main(["witness", m2_file, z, "--diagonal", str(t),
                 "--seed-functional", g])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    wd = payload["witness_from_diagonal"]
    assert wd["commutator_defect"] == "0"
    assert wd["unit_residual"] == "0"


def test_decompose_jordan_cli(tmp_path, m2_file, capsys):
    # D = [E12, .] as a dense matrix, row q = image of basis q:
    # D(E11) = -E12, D(E12) = 0, D(E21) = E11 - E22, D(E22) = E12
    D = [["0", "-1", "0", "0"],
         ["0", "0", "0", "0"],
         ["1", "0", "0", "-1"],
         ["0", "1", "0", "0"]]
    map_file = write(tmp_path / "D.json", {"matrix": D})
    t_file = tmp_path / "t.json"
    main(["build-diagonal", "matrix", "2", "--out", str(t_file)])
    omega_file = tmp_path / "omega.json"
    code = main(["decompose-jordan", m2_file, "regular", map_file, str(t_file),
                 "--out-omega", str(omega_file)])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["ok"] is True
    omega = json.loads(omega_file.read_text())
    assert omega["coeffs"] == [[1, "-1"]]


def test_decompose_lie_cli(tmp_path, m2_file, capsys):
    # D(a) = [E12, a] + trace(a) I:
    # D(E11) = -E12 + I, D(E12) = 0, D(E21) = E11 - E22, D(E22) = E12 + I
    D = [["1", "-1", "0", "1"],
         ["0", "0", "0", "0"],
         ["1", "0", "0", "-1"],
         ["1", "1", "0", "1"]]
    map_file = write(tmp_path / "D.json", {"matrix": D})
    t_file = tmp_path / "t.json"
    main(["build-diagonal", "matrix", "2", "--out", str(t_file)])
    inner_file = tmp_path / "d.json"
    trace_file = tmp_path / "tau.json"
    code = main(["decompose-lie", m2_file, "regular", map_file, str(t_file),
                 "--out-inner", str(inner_file), "--out-trace", str(trace_file)])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["ok"] is True
    assert all(v in ("0", 0) for v in payload["residuals"].values())
    tau = json.loads(trace_file.read_text())["matrix"]
    assert tau == [["1", "0", "0", "1"],
                   ["0", "0", "0", "0"],
                   ["0", "0", "0", "0"],
                   ["1", "0", "0", "1"]]


def test_decompose_jordan_central_route(tmp_path, m2_file, capsys):
    # the zero map is vacuously a central Jordan derivation
    D = [["0"] * 4 for _ in range(4)]
    map_file = write(tmp_path / "D.json", {"matrix": D})
    t_file = tmp_path / "t.json"
    main(["build-diagonal", "matrix", "2", "--out", str(t_file)])
    code = main(["decompose-jordan", m2_file, "regular", map_file, str(t_file),
                 "--central"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["ok"] is True
    assert payload["symmetric_bimodule"] is False


def test_classify_cli(m2_file, capsys):
    assert main(["classify", "lie", m2_file, "regular"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["dimension"] == 4


def test_center_cli(m2_file, capsys):
    assert main(["center", m2_file]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["elements"]) == 1


def test_quotient_cli(tmp_path, m2_file, capsys):
    from amlab import direct_sum_bimodule, regular_bimodule
    A = matrix_algebra(2)
    Y = direct_sum_bimodule([regular_bimodule(A), regular_bimodule(A)])
    bim_file = write(tmp_path / "Y.json", serialize.bimodule_to_dict(Y))
    sub_file = write(tmp_path / "sub.json",
                     {"elements": [{"coeffs": [[k, "1"]]} for k in range(4)]})
    assert main(["quotient", m2_file, bim_file, sub_file]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["bimodule"]["basis"]) == 4


def test_quotient_rejects_non_invariant(tmp_path, m2_file):
    from amlab import direct_sum_bimodule, regular_bimodule
    A = matrix_algebra(2)
    Y = direct_sum_bimodule([regular_bimodule(A), regular_bimodule(A)])
    bim_file = write(tmp_path / "Y.json", serialize.bimodule_to_dict(Y))
    sub_file = write(tmp_path / "sub.json",
                     {"elements": [{"coeffs": [[0, "1"]]}]})
    assert main(["quotient", m2_file, bim_file, sub_file]) == 3


def test_mode_env_default(tmp_path, m2_file, good_net_file, monkeypatch, capsys):
    monkeypatch.setenv("AMLAB_MODE", "float")
    code = main(["check-diagonal", m2_file, good_net_file])
    assert code == 0  # exact-zero cases keep their exit code across modes
    payload = json.loads(capsys.readouterr().out)
    assert payload["entries"][0]["rows"][0]["d1"] == 0.0


def test_float_mode_flag(tmp_path, m2_file, good_net_file, capsys):
    code = main(["--mode", "float", "check-diagonal", m2_file, good_net_file])
    assert code == 0
