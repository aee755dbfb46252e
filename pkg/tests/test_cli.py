"""Command-line interface: exit codes, output bytes, determinism."""

import json
import subprocess
import sys

import pytest

from monoidgeo.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ------------------------------------------------------ documented outputs


def test_area_equal_exact_bytes(capsys):
    code, out, _ = invoke(
        capsys, "area", "--pres", "bicyclic", "--u", "a a b b", "--v", "1", "--depth", "10"
    )
    assert code == 0
    assert out == '{"status":"Equal","area":2}\n'


def test_area_accepts_concatenated_words(capsys):
    code, out, _ = invoke(capsys, "area", "--pres", "bicyclic", "--u", "aabb", "--v", "1")
    assert code == 0
    assert out == '{"status":"Equal","area":2}\n'


def test_mbound_exact_bytes(capsys):
    code, out, _ = invoke(
        capsys, "mbound", "--lambda", "2", "--eps", "1", "--mu", "1", "--n", "3"
    )
    assert code == 0
    assert out == "10\n"


def test_mx_iso_exact_bytes(capsys):
    code, out, _ = invoke(capsys, "mx-iso", "--x", "finite:1", "--y", "evens", "--L", "5")
    assert code == 0
    assert out == '{"verdict":"pass","labels_differ":true}\n'


# ----------------------------------------------------------- exit code 2


def test_area_unknown_exits_2(capsys):
    code, out, _ = invoke(
        capsys, "area", "--pres", "bicyclic", "--u", "aabb", "--v", "1", "--depth", "1"
    )
    assert code == 2
    assert json.loads(out)["status"] == "Unknown"


def test_dist_unresolved_exits_2(capsys):
    code, out, _ = invoke(capsys, "dist", "--pres", "bicyclic", "--L", "4", "--x", "b", "--y", "0")
    assert code == 2
    assert out == '{"value":"unresolved","exact":false,"bound":3}\n'


def test_dist_exact_exits_0(capsys):
    code, out, _ = invoke(capsys, "dist", "--pres", "free(1)", "--L", "3", "--x", "a", "--y", "aaa")
    assert code == 0
    d = json.loads(out)
    assert d["value"] == 2 and d["exact"] is True


def test_dist_infinite_is_exact_on_tree(capsys):
    code, out, _ = invoke(capsys, "dist", "--pres", "free(1)", "--L", "3", "--x", "aa", "--y", "a")
    assert code == 0
    assert json.loads(out)["value"] == "inf"


def test_qmetric_pass_with_skips_exits_2(capsys):
    code, out, _ = invoke(
        capsys, "qmetric", "--pres", "f2_group", "--L", "2", "--lambda", "1", "--mu", "0"
    )
    assert code == 2
    rep = json.loads(out)
    assert rep["verdict"] == "pass" and rep["skipped"] > 0


def test_qmetric_counterexample_exits_0(capsys):
    code, out, _ = invoke(capsys, "qmetric", "--pres", "free(1)", "--L", "3", "--lambda", "1")
    assert code == 0
    assert json.loads(out)["verdict"] == "counterexample"


def test_qsc_inconclusive_exits_2(capsys):
    code, out, _ = invoke(
        capsys, "qsc", "--pres", "free_commutative_2", "--L", "4", "--n", "3", "--i-max", "4"
    )
    assert code == 2
    assert json.loads(out)["verdict"] == "inconclusive"


def test_type_cmp_no_witness_exits_2(capsys, tmp_path):
    f = tmp_path / "f.csv"
    g = tmp_path / "g.csv"
    f.write_text("n,value\n" + "".join(f"{n},{n * n}\n" for n in range(15)))
    g.write_text("n,value\n" + "".join(f"{n},{n}\n" for n in range(15)))
    code, out, _ = invoke(capsys, "type-cmp", "--f", str(f), "--g", str(g), "--a-max", "2")
    assert code == 2
    assert json.loads(out) == {"verdict": "no-witness", "witness": None, "a_max": 2}


def test_type_cmp_witness_found(capsys, tmp_path):
    f = tmp_path / "f.csv"
    g = tmp_path / "g.csv"
    f.write_text("n,value\n" + "".join(f"{n},{n}\n" for n in range(12)))
    g.write_text("n,value\n" + "".join(f"{n},{n * n}\n" for n in range(12)))
    code, out, _ = invoke(capsys, "type-cmp", "--f", str(f), "--g", str(g), "--a-max", "3")
    assert code == 0
    assert json.loads(out)["verdict"] == "holds"


# ----------------------------------------------------------- exit code 1


@pytest.mark.parametrize(
    "argv",
    [
        ("no-such-command",),
        ("area", "--pres", "bicyclic", "--u", "a"),  # missing --v
        ("area", "--pres", "bicyclic", "--u", "a", "--v", "b", "--format", "dot"),
        ("ball", "--pres", "no_such_builtin", "--L", "2"),
        ("ball", "--pres", "bicyclic", "--L", "2", "--format", "csv"),
        ("nf", "--pres", "section4_S", "--w", "a1"),  # not confluent
        ("area", "--pres", "bicyclic", "--u", "xyz", "--v", "1"),  # bad letters
        ("dist", "--pres", "bicyclic", "--L", "2", "--x", "bbb", "--y", "0"),  # off-ball
        ("mx-nf", "--x", "primes:2", "--w", "abc"),
        ("bushy", "--pres", "f2_group", "--L", "2"),  # --cap is required
        ("type-cmp", "--f", "/nonexistent", "--g", "/nonexistent", "--a", "1"),
        (),
    ],
)
def test_usage_and_input_errors_exit_1(capsys, argv):
    code, _, err = invoke(capsys, *argv)
    assert code == 1
    assert err != ""


# ------------------------------------------------------------ subcommands


def test_parse_builtin(capsys):
    code, out, _ = invoke(capsys, "parse", "--pres", "section4_S")
    assert code == 0
    info = json.loads(out)
    assert len(info["generators"]) == 11
    assert info["relations"] == 22
    assert info["confluent"] is False


def test_parse_from_file(capsys, tmp_path):
    src = tmp_path / "p.txt"
    src.write_text("# the bicyclic monoid\ngens: a b\nrel: a b = 1\n")
    code, out, _ = invoke(capsys, "parse", "--pres", str(src))
    assert code == 0
    assert json.loads(out)["generators"] == ["a", "b"]


def test_nf_text_format(capsys):
    code, out, _ = invoke(
        capsys, "nf", "--pres", "bicyclic", "--w", "baab", "--format", "text"
    )
    assert code == 0
    assert out == "b a\n"


def test_nf_json(capsys):
    code, out, _ = invoke(capsys, "nf", "--pres", "free_commutative_2", "--w", "abab")
    assert code == 0
    assert json.loads(out) == {"input": "a b a b", "normal_form": "b b a a"}


def test_ball_json_schema(capsys):
    code, out, _ = invoke(capsys, "ball", "--pres", "free(1)", "--L", "2")
    assert code == 0
    ball = json.loads(out)
    assert set(ball) == {"radius", "certified", "vertices", "edges", "frontier"}
    assert ball["radius"] == 2 and ball["certified"] is True
    assert ball["vertices"][0] == {"id": 0, "repr": "1", "len": 0}
    assert {"src": 0, "label": "a", "dst": 1} in ball["edges"]


def test_ball_dot_output(capsys):
    code, out, _ = invoke(capsys, "ball", "--pres", "free(1)", "--L", "1", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph") and "->" in out


def test_dehn_csv(capsys):
    code, out, _ = invoke(capsys, "dehn", "--pres", "bicyclic", "--n-max", "4")
    assert code == 0
    assert out == "n,value\n0,0\n1,0\n2,1\n3,1\n4,2\n"


def test_dehn_unknown_rows_exit_2(capsys):
    code, out, _ = invoke(
        capsys, "dehn", "--pres", "bicyclic", "--n-max", "6", "--depth", "2"
    )
    assert code == 2
    assert "unknown" in out


def test_scc_text(capsys):
    code, out, _ = invoke(
        capsys, "scc", "--pres", "bicyclic", "--L", "2", "--format", "text"
    )
    assert code == 0
    assert out.splitlines()[0].startswith("~")  # approximate on a truncated ball


def test_schutz_json(capsys):
    code, out, _ = invoke(capsys, "schutz", "--pres", "bicyclic", "--L", "3", "--h", "b")
    assert code == 0
    graph = json.loads(out)
    assert set(graph) == {"vertices", "edges", "approximate"}


def test_kn_cells_at_grid_origin(capsys):
    code, out, _ = invoke(
        capsys, "kn-cells", "--pres", "free_commutative_2", "--L", "4", "--n", "4"
    )
    assert code == 0
    cells = json.loads(out)
    assert {"top": ["a", "b"], "bottom": ["b", "a"]} in cells
    assert {"top": ["b", "a"], "bottom": ["a", "b"]} in cells


def test_homotopy_found(capsys):
    code, out, _ = invoke(
        capsys,
        "homotopy", "--pres", "free_commutative_2", "--L", "10", "--n", "4",
        "--p", "aabb", "--q", "bbaa",
    )
    assert code == 0
    assert json.loads(out) == {"status": "found", "area": 4, "certified": True}


def test_homotopy_show_path(capsys):
    code, out, _ = invoke(
        capsys,
        "homotopy", "--pres", "free_commutative_2", "--L", "6", "--n", "4",
        "--p", "ab", "--q", "ba", "--show-path",
    )
    assert code == 0
    res = json.loads(out)
    assert res["area"] == 1 and len(res["two_path"]) == 1


def test_gamma_csv(capsys):
    code, out, _ = invoke(
        capsys,
        "gamma", "--pres", "free_commutative_2", "--L", "10", "--n", "4",
        "--i-max", "8", "--roots", "0",
    )
    assert code == 0
    rows = dict(ln.split(",") for ln in out.splitlines()[1:])
    assert rows["8"] == "4"


def test_qsc_pass(capsys):
    code, out, _ = invoke(
        capsys, "qsc", "--pres", "free_commutative_2", "--L", "10", "--n", "4", "--i-max", "6"
    )
    assert code == 0
    assert json.loads(out)["verdict"] == "pass"


def test_qi_check_identity(capsys):
    code, out, _ = invoke(
        capsys,
        "qi-check", "--x-pres", "free(1)", "--x-L", "3",
        "--map", "identity", "--lambda", "1", "--eps", "1",
    )
    assert code == 0
    assert json.loads(out) == {"verdict": "pass", "witness": None, "skipped": 0}


def test_qi_check_map_file(capsys, tmp_path):
    mapfile = tmp_path / "double.map"
    mapfile.write_text("# double each ray point\n0 -> 0\n1 -> 2\n2 -> 4\n3 -> 6\n")
    code, out, _ = invoke(
        capsys,
        "qi-check", "--x-pres", "free(1)", "--x-L", "3", "--y-L", "6",
        "--map", str(mapfile), "--lambda", "2", "--eps", "1",
    )
    assert code == 0
    assert json.loads(out)["verdict"] == "pass"


def test_qi_density_full_image(capsys):
    code, out, _ = invoke(
        capsys, "qi-density", "--pres", "free(1)", "--L", "3", "--image", "0,1,2,3"
    )
    assert code == 0
    assert json.loads(out)["verdict"] == "pass"


def test_qi_density_gap_on_ray(capsys):
    code, out, _ = invoke(
        capsys, "qi-density", "--pres", "free(1)", "--L", "4", "--image", "0,2,4", "--mu", "1"
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["verdict"] == "counterexample" and rep["witness"] == 1


def test_qi_inverse_identity(capsys):
    code, out, _ = invoke(
        capsys,
        "qi-inverse", "--x-pres", "free(1)", "--x-L", "3",
        "--map", "identity", "--lambda", "1", "--eps", "1", "--mu", "0",
    )
    assert code == 0
    res = json.loads(out)
    assert res["verdict"] == "ok"
    assert res["f"] == [0, 1, 2, 3]
    assert res["constants"]["mu"] == "2"


def test_mbound_rational_constants(capsys):
    code, out, _ = invoke(
        capsys, "mbound", "--lambda", "3/2", "--eps", "1/2", "--n", "2"
    )
    assert code == 0
    from monoidgeo import QiSpec, m_bound

    assert out.strip() == str(m_bound(QiSpec("3/2", "1/2", 0), 2))


def test_bushy_pass(capsys):
    code, out, _ = invoke(capsys, "bushy", "--pres", "f2_group", "--L", "3", "--cap", "4")
    assert code == 0
    assert json.loads(out)["verdict"] == "pass"


def test_bushy_fail_on_ray(capsys):
    code, out, _ = invoke(capsys, "bushy", "--pres", "free(1)", "--L", "3", "--cap", "4")
    assert code == 0
    assert json.loads(out)["verdict"] == "fail"


def test_mx_nf_formats(capsys):
    code, out, _ = invoke(capsys, "mx-nf", "--x", "evens", "--w", "abc")
    assert code == 0
    assert json.loads(out) == {"input": "a b c", "normal_form": "a b e"}
    code, out, _ = invoke(capsys, "mx-nf", "--x", "evens", "--w", "abc", "--format", "text")
    assert out == "a b e\n"


def test_mx_wp(capsys):
    code, out, _ = invoke(capsys, "mx-wp", "--x", "finite:1", "--u", "abc", "--v", "abd")
    assert code == 0
    assert json.loads(out) == {"equal": True}


def test_mx_ball_text(capsys):
    code, out, _ = invoke(capsys, "mx-ball", "--x", "evens", "--L", "2", "--format", "text")
    assert code == 0
    assert out == "radius 2: 30 vertices, 30 edges, certified=true\n"


def test_f2_ball_json(capsys):
    code, out, _ = invoke(capsys, "f2-ball", "--L", "1")
    assert code == 0
    assert len(json.loads(out)["vertices"]) == 5


# ------------------------------------------------------------ determinism


@pytest.mark.parametrize(
    "argv",
    [
        ["area", "--pres", "bicyclic", "--u", "aabb", "--v", "1"],
        ["ball", "--pres", "f2_group", "--L", "2"],
        ["scc", "--pres", "bicyclic", "--L", "3"],
        ["mx-ball", "--x", "periodic:t=4,p=3,r=0,2", "--L", "3"],
    ],
)
def test_byte_identical_across_processes(argv):
    cmd = [sys.executable, "-m", "monoidgeo", *argv]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout
    assert first.stdout != b""
