import json
import subprocess
import sys


from floercurves import __version__
from floercurves.cli import main
from floercurves.complexes import save_complex, staircase_complex, trivial_complex, tensor_all
from floercurves.knotified import knotified_t2_2n
from floercurves.semigroups import counting_function, torus_knot_semigroup
from floercurves.staircases import staircase_from_semigroup


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def torus(p, q):
    return {"type": "torus_knot", "p": p, "q": q}


DEG21_NEG_NODE = {"degree": 21, "genus": 0, "cusps": [torus(8, 55)], "negative_tn": {"1": 1}}
FG27 = {"degree": 27, "genus": 0, "cusps": [torus(10, 73)], "positive_tn": {"1": 1}}
QUINTIC = {"degree": 5, "genus": 6}


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCheck:
    def test_negative_node_degree21(self, tmp_path, capsys):
        code, out, _ = run(["check", write(tmp_path, "c.json", DEG21_NEG_NODE)], capsys)
        assert code == 2
        assert "verdict obstructed (k=3 lower" in out

    def test_smooth_quintic(self, tmp_path, capsys):
        code, out, _ = run(["check", write(tmp_path, "c.json", QUINTIC)], capsys)
        assert code == 0 and "verdict consistent" in out

    def test_fg27_json(self, tmp_path, capsys):
        code, out, _ = run(["check", "--json", write(tmp_path, "c.json", FG27)], capsys)
        doc = json.loads(out)
        assert code == 2 == doc["exit_code"]
        assert doc["report"]["witnesses"][0] == {"k": 12, "side": "upper"}
        assert doc["input"] == FG27 and doc["version"] == __version__
        assert doc["derived"]["g3"] == 324
        row = doc["r_table"][11]
        assert row["k"] == 12 and row["R(kd)"] == 92

    def test_json_is_deterministic(self, tmp_path, capsys):
        path = write(tmp_path, "c.json", DEG21_NEG_NODE)
        _, first, _ = run(["check", "--json", "--validate-with-oracle", path], capsys)
        _, second, _ = run(["check", "--json", "--validate-with-oracle", path], capsys)
        assert first == second
        doc = json.loads(first)
        assert doc["cross_validation"]["agrees"]
        assert doc["cross_validation"]["rows"][2]["d_top"] == {"num": 5, "den": 2}

    def test_validate_with_oracle_text(self, tmp_path, capsys):
        code, out, _ = run(["check", "--validate-with-oracle", write(tmp_path, "c.json", FG27)], capsys)
        assert code == 2 and "agrees" in out and "/" in out

    def test_genus_violation(self, tmp_path, capsys):
        bad = dict(QUINTIC, genus=5)
        code, _, err = run(["check", write(tmp_path, "c.json", bad)], capsys)
        assert code == 1 and "genus" in err
        # with slack the rows are evaluated; genus 5 is too small for a smooth quintic
        code, _, _ = run(["check", "--allow-genus-slack", write(tmp_path, "c.json", bad)], capsys)
        assert code == 2
        slack = dict(bad, options={"allow_genus_slack": True})
        code, _, _ = run(["check", write(tmp_path, "s.json", slack)], capsys)
        assert code == 2

    def test_schema_violation(self, tmp_path, capsys):
        code, _, err = run(["check", write(tmp_path, "c.json", {"degree": 5, "genus": 6, "cusp": []})], capsys)
        assert code == 1 and "schema" in err

    def test_gap_cusp(self, tmp_path, capsys):
        doc = {"degree": 4, "genus": 0, "cusps": [{"type": "gaps", "gaps": [1, 3, 5]}]}
        code, out, _ = run(["check", write(tmp_path, "c.json", doc)], capsys)
        assert code == 0

    def test_missing_file(self, capsys):
        code, _, err = run(["check", "/nonexistent.json"], capsys)
        assert code == 1 and err.startswith("error:")

    def test_mixed_links(self, tmp_path, capsys):
        doc = {"degree": 5, "genus": 2, "cusps": [torus(2, 3)], "positive_tn": {"1": 1}, "negative_tn": {"1": 1}}
        code, _, err = run(["check", write(tmp_path, "c.json", doc)], capsys)
        assert code == 1


class TestSemigroup:
    def rows(self, out):
        return [line.split() for line in out.splitlines()[1:]]

    def test_trefoil(self, capsys):
        code, out, _ = run(["semigroup", "2", "3", "--upto", "5"], capsys)
        assert code == 0
        assert [int(r[1]) for r in self.rows(out)] == [0, 1, 1, 2, 3]
        assert [len(r) == 3 for r in self.rows(out)] == [True, False, True, True, True]

    def test_degree21_row(self, capsys):
        _, out, _ = run(["semigroup", "8", "55", "--upto", "64"], capsys)
        assert self.rows(out)[63][:2] == ["63", "9"]

    def test_json(self, capsys):
        _, out, _ = run(["semigroup", "10", "73", "--upto", "325", "--json"], capsys)
        doc = json.loads(out)
        assert doc["rows"][324] == {"k": 324, "R": 92, "member": False}
        assert doc["genus"] == 324

    def test_non_coprime(self, capsys):
        code, _, err = run(["semigroup", "4", "6"], capsys)
        assert code == 1 and "coprime" in err


class TestVtable:
    def test_unknot(self, tmp_path, capsys):
        code, out, _ = run(["vtable", "--json", "--s-min", "-2", "--s-max", "3", write(tmp_path, "u.json", {"genus": 0})], capsys)
        rows = json.loads(out)["rows"]
        assert code == 0
        assert [r["V"] for r in rows if r["s"] >= 0] == [0, 0, 0, 0]
        assert [r["V"] for r in rows if r["s"] < 0] == [2, 1]

    def test_cusp_only(self, tmp_path, capsys):
        _, out, _ = run(["vtable", "--json", write(tmp_path, "t.json", {"genus": 0, "cusps": [torus(4, 5)]})], capsys)
        R = counting_function(torus_knot_semigroup(4, 5))
        for r in json.loads(out)["rows"]:
            v = R(6 + r["s"]) - r["s"]
            assert r["V"] == v
            assert r["V_top"] == r["V_bot"] == {"num": v, "den": 1}

    def test_hopf_with_oracle(self, tmp_path, capsys):
        code, out, _ = run(["vtable", "--validate-with-oracle", "--s-min", "-2", "--s-max", "2",
                            write(tmp_path, "h.json", {"genus": 0, "positive_tn": {"1": 1}})], capsys)
        assert code == 0
        lines = out.splitlines()[2:]
        assert len(lines) == 5 and all(line.endswith("ok") for line in lines)
        assert lines[2].split()[:4] == ["0", "0", "3/4", "1/4"]

    def test_unsupported_mixed_case(self, tmp_path, capsys):
        spec = {"genus": 0, "cusps": [torus(2, 3), torus(2, 5)], "negative_tn": {"1": 1}}
        path = write(tmp_path, "m.json", spec)
        code, _, err = run(["vtable", "--s-min", "0", "--s-max", "0", path], capsys)
        assert code == 1 and "--validate-with-oracle" in err
        code, out, _ = run(["vtable", "--validate-with-oracle", "--s-min", "0", "--s-max", "0", path], capsys)
        assert code == 0 and "oracle-only" in out and "7/4" in out


class TestOracle:
    def test_trefoil(self, tmp_path, capsys):
        path = tmp_path / "t.json"
        save_complex(path, staircase_complex(staircase_from_semigroup(torus_knot_semigroup(2, 3))))
        code, out, _ = run(["oracle", str(path), "--s", "0"], capsys)
        assert code == 0 and "V=1" in out

    def test_rank_one(self, tmp_path, capsys):
        path = tmp_path / "u.json"
        save_complex(path, trivial_complex())
        _, out, _ = run(["oracle", str(path), "--json", "--s-min", "0", "--s-max", "1", "--stats"], capsys)
        doc = json.loads(out)
        assert [r["V"] for r in doc["rows"]] == [{"num": 0, "den": 1}] * 2
        assert doc["rows"][0]["stats"]["free_rank"] == 1

    def test_actions(self, tmp_path, capsys):
        m = knotified_t2_2n(2)
        path = tmp_path / "k.json"
        save_complex(path, m.complex, m.actions)
        code, out, _ = run(["oracle", str(path), "--s", "0"], capsys)
        assert code == 0 and "V_top=3/4  V_bot=5/4" in out

    def test_half_integer_error(self, tmp_path, capsys):
        path = tmp_path / "t.json"
        save_complex(path, trivial_complex())
        code, _, err = run(["oracle", str(path), "--s", "1/2"], capsys)
        assert code == 1 and "integral" in err

    def test_cap(self, tmp_path, capsys, monkeypatch):
        T = staircase_complex(staircase_from_semigroup(torus_knot_semigroup(2, 3)))
        path = tmp_path / "big.json"
        save_complex(path, tensor_all([T, T, T]))
        monkeypatch.setenv("FLOERCURVES_GENERATOR_CAP", "10")
        code, _, err = run(["oracle", str(path)], capsys)
        assert code == 1 and "cap" in err


class TestRepro:
    def test_negative_node_scenario(self, capsys):
        code, out, _ = run(["repro", "orevkov-neg"], capsys)
        assert code == 0 and out.startswith("[PASS] orevkov-neg")

    def test_counterexample_json(self, capsys):
        code, out, _ = run(["repro", "counterexample53", "--json"], capsys)
        checks = json.loads(out)[0]["checks"]
        assert code == 0
        assert checks[0]["computed"] == "6" and checks[-1]["computed"] == "7"

    def test_unknown(self, capsys):
        code, _, err = run(["repro", "nope"], capsys)
        assert code == 1 and "unknown scenario" in err

    def test_a2n_ratio_is_reported(self, capsys):
        code, out, _ = run(["repro", "a2n-bound"], capsys)
        assert "BAD ratio at d=100: expected 0.75 ± 0.01, computed 0.7350" in out
        assert code == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "floercurves", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and __version__ in res.stdout
