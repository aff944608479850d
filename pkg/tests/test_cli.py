import csv
import io
import json
from fractions import Fraction as F

from ncur.cli import main, report_document
from ncur.convex import LinearSystem, Polytope
from ncur.theories import OCTAHEDRON, TheorySpec, make_theory


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_boundary_qubit_csv(capsys):
    code, out, _ = run(capsys, "boundary", "--theory", "qubit", "--axes", "xz", "-n", "360", "--format", "csv")
    assert code == 0
    table = out.split("\n\n")[0]
    rows = list(csv.DictReader(io.StringIO(table)))
    assert len(rows) == 360
    assert max(F(r["support_exact"]) for r in rows) == 1


def test_boundary_files_and_overlay(tmp_path, capsys):
    out = tmp_path / "dep.dat"
    code, _, _ = run(capsys, "boundary", "--theory", "depolarized:29/100", "--axes", "xz", "--out", str(out))
    assert code == 0
    lines = [ln for ln in out.read_text().splitlines() if not ln.startswith("#")]
    assert {ln.split()[3] for ln in lines} == {"71/100"}
    overlay = (tmp_path / "dep.overlay.dat").read_text()
    assert "1 0" in overlay and "0 -1" in overlay


def test_boundary_gbit_json(capsys):
    code, out, _ = run(capsys, "boundary", "--theory", "gbit", "--axes", "xyz", "-n", "6", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and [s["support"] for s in doc["samples"]] == ["1"] * 6
    assert len(doc["noncontextual_overlay"]) == 6


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "boundary", "--theory", "bogus")[0] == 2
    assert run(capsys, "boundary", "--theory", "qubit", "-n", "3")[0] == 2
    assert run(capsys, "nc-bound", "--n", "3", "--route", "fm")[0] == 2
    assert run(capsys, "orbit-check", "--theory", "stabilizer", "--state", "1,1,0")[0] == 2
    assert run(capsys, "saturate", "--u", "1/2")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_orbit_check(capsys):
    code, out, _ = run(capsys, "orbit-check", "--theory", "simplicial", "--state", "1,1,1")
    doc = json.loads(out)
    assert code == 0 and doc["realizable"] is False
    assert doc["failed_condition"] == "rectangle-equality" and doc["residual"] == ["0", "0", "2", "0"]
    code, out, _ = run(capsys, "orbit-check", "--theory", "gbit", "--state", "1,1,1", "--group", "a13")
    assert json.loads(out)["realizable"] is True


def test_nc_bound_json_round_trip(capsys):
    code, out, _ = run(capsys, "nc-bound", "--n", "2", "--route", "fm")
    doc = json.loads(out)
    facets = LinearSystem.from_dict(doc["facets"])
    assert code == 0 and len(facets.rows) == 4 and doc["route"] == "FM"
    assert LinearSystem.from_json(facets.to_json()) == facets


def test_violate_and_forms(capsys):
    code, out, _ = run(capsys, "violate", "--theory", "qubit", "--group", "a12")
    doc = json.loads(out)
    assert doc["max_value"] == {"a": "0", "b": "1", "k": 2, "float": 2 ** 0.5}
    assert doc["verdict"] == "contextual"
    code, out, _ = run(capsys, "forms", "--state", "1,0,0")
    doc = json.loads(out)
    assert doc["variance"] == {"x": "0", "y": "1", "z": "1"}
    assert set(doc["forms"]["xyz"].values()) == {True}


def test_saturate(capsys, tmp_path):
    code, out, _ = run(capsys, "saturate", "--u", "0")
    assert json.loads(out)["expectations"] == {"X": "1/2", "Z": "1/2"}
    path = tmp_path / "fig7.csv"
    assert main(["saturate", "--out", str(path)]) == 0
    rows = list(csv.DictReader(path.open()))
    assert len(rows) == 101 and all(F(r["X"]) + F(r["Z"]) == 1 for r in rows)


def test_commands_are_deterministic(tmp_path):
    for argv in (["report"], ["boundary", "--theory", "qubit", "--axes", "xyz", "-n", "40"],
                 ["nc-bound", "--route", "appendixb"]):
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(argv + ["--out", str(a)]) == 0
        assert main(argv + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()


def test_report_rows():
    doc = json.loads(report_document())
    rows = {(r["theory"], r["group"]): r for r in doc["rows"]}
    assert len(rows) == 10
    assert rows[("qubit", "a12")]["max_predictability_sum"]["k"] == 2
    assert rows[("stabilizer", "a13")]["max_predictability_sum"] == "1"
    assert rows[("stabilizer", "a13")]["verdict"] == "saturates"
    assert rows[("simplicial", "a12")]["max_predictability_sum"] == "1"
    assert rows[("simplicial", "a12")]["has_symmetry"] is False
    assert rows[("depolarized:3/10", "a12")]["verdict"] == "noncontextual-compatible"


def test_selftest_subset_with_fm_skipped(capsys):
    code, out, _ = run(capsys, "selftest", "--skip-fm", "--only", "1,2")
    assert code == 0 and "fm route skipped" in out


def _corrupted_factory(name, eta=None):
    if name == "stabilizer":
        verts = [v for v in OCTAHEDRON if v != (0, 0, -1)]
        return TheorySpec("stabilizer", Polytope.from_vertices(verts, ("sx", "sy", "sz")))
    return make_theory(name, eta) if eta is not None else make_theory(name)


def test_selftest_fails_on_corrupted_octahedron(capsys):
    code = main(["selftest", "--only", "5,8"], theory_factory=_corrupted_factory)
    out = capsys.readouterr().out
    assert code == 1
    assert "has_symmetry(stabilizer, a12) is false" in out
