import json

import numpy as np
import pytest

from kissgeo.cli import main

TANGENT_PAIR = {"n": 2, "spheres": [{"t": [0.0], "phi": 1.0}, {"t": [1.0], "phi": 1.0}]}
TANGENT_TRIPLE_MATRIX = {"d2": [[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]]}
FOUR_CYCLE = {
    "vertices": 4,
    "edges": [
        {"u": 0, "v": 1, "len": 1.0},
        {"u": 1, "v": 2, "len": 0.0},
        {"u": 2, "v": 3, "len": 0.0},
        {"u": 0, "v": 3, "len": 0.0},
    ],
}


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDist:
    def test_tangent_pair(self, tmp_path, capsys):
        path = write(tmp_path, "pair.json", TANGENT_PAIR)
        code, out, _ = run(capsys, ["dist", path])
        assert code == 0
        assert json.loads(out) == {"n": 2, "d": [[0.0, 1.0], [1.0, 0.0]]}

    def test_deterministic_output(self, tmp_path, capsys):
        payload = {
            "n": 2,
            "spheres": [{"t": [0.123456789123456789], "phi": 1.7}, {"h": 0.3}],
        }
        path = write(tmp_path, "set.json", payload)
        _, first, _ = run(capsys, ["dist", path])
        _, second, _ = run(capsys, ["dist", path])
        assert first == second

    def test_output_round_trips_losslessly(self, tmp_path, capsys):
        payload = {
            "n": 2,
            "spheres": [{"t": [1.0 / 3.0], "phi": 0.1}, {"t": [-2.0 / 7.0], "phi": 3.7}],
        }
        path = write(tmp_path, "set.json", payload)
        _, out, _ = run(capsys, ["dist", path])
        d = json.loads(out)["d"]
        from kissgeo.kissing import Sphere, distance

        want = distance(Sphere((1.0 / 3.0,), 0.1), Sphere((-2.0 / 7.0,), 3.7))
        assert d[0][1] == want


class TestClassify:
    def test_pair_classes(self, tmp_path, capsys):
        payload = {
            "n": 2,
            "spheres": [
                {"t": [0.0], "phi": 1.0},
                {"t": [1.0], "phi": 1.0},
                {"t": [5.0], "phi": 1.0},
            ],
        }
        path = write(tmp_path, "set.json", payload)
        code, out, _ = run(capsys, ["classify", path])
        assert code == 0
        pairs = {(p["i"], p["j"]): p["class"] for p in json.loads(out)["pairs"]}
        assert pairs[(0, 1)] == "Tangent"
        assert pairs[(0, 2)] == "Disjoint"


class TestCheck:
    def test_kissing_embeddable(self, tmp_path, capsys):
        path = write(tmp_path, "m.json", TANGENT_TRIPLE_MATRIX)
        code, out, _ = run(capsys, ["check", path, "--mode", "kissing", "--n", "2"])
        assert code == 0
        assert json.loads(out)["verdict"] == "Embeddable"

    def test_kissing_rejected_on_the_line(self, tmp_path, capsys):
        path = write(tmp_path, "m.json", TANGENT_TRIPLE_MATRIX)
        code, out, _ = run(
            capsys, ["check", path, "--mode", "kissing", "--n", "1", "--method", "minors"]
        )
        assert code == 1
        payload = json.loads(out)
        assert payload["verdict"] == "NotEmbeddable"
        assert payload["witness"] is not None

    def test_euclidean_triangle(self, tmp_path, capsys):
        triangle = {"d2": [[0.0, 9.0, 25.0], [9.0, 0.0, 16.0], [25.0, 16.0, 0.0]]}
        path = write(tmp_path, "m.json", triangle)
        code, out, _ = run(capsys, ["check", path, "--mode", "euclidean", "--n", "2"])
        assert code == 0
        code, out, _ = run(capsys, ["check", path, "--mode", "euclidean", "--n", "1"])
        assert code == 1

    def test_spheres_mode_needs_marker(self, tmp_path, capsys):
        separations = {"d2": [[-1.0, 1.0], [1.0, -1.0]], "diag": -1}
        path = write(tmp_path, "s.json", separations)
        code, out, _ = run(capsys, ["check", path, "--mode", "spheres", "--n", "2"])
        assert code == 0
        bare = {"d2": [[-1.0, 1.0], [1.0, -1.0]]}
        path = write(tmp_path, "bare.json", bare)
        code, _, err = run(capsys, ["check", path, "--mode", "spheres", "--n", "2"])
        assert code == 2
        assert "diag" in err

    def test_asymmetric_input_is_rejected(self, tmp_path, capsys):
        path = write(tmp_path, "bad.json", {"d2": [[0.0, 1.0], [2.0, 0.0]]})
        code, _, err = run(capsys, ["check", path, "--mode", "kissing", "--n", "2"])
        assert code == 2
        assert "symmetric" in err


class TestEmbed:
    def test_recovers_spheres(self, tmp_path, capsys):
        path = write(tmp_path, "m.json", TANGENT_TRIPLE_MATRIX)
        code, out, _ = run(capsys, ["embed", path, "--n", "2"])
        assert code == 0
        payload = json.loads(out)
        assert payload["n"] == 2
        assert len(payload["spheres"]) == 3

    def test_not_embeddable_exit(self, tmp_path, capsys):
        path = write(tmp_path, "m.json", TANGENT_TRIPLE_MATRIX)
        code, out, _ = run(capsys, ["embed", path, "--n", "1"])
        assert code == 1
        assert json.loads(out)["verdict"] == "NotEmbeddable"

    def test_realization_failure_is_numerical(self, tmp_path, capsys):
        gap = {"d2": [[0.0, 1.0, 0.0, 0.0], [1.0, 0.0, 0.0, 0.0],
                      [0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0]]}
        path = write(tmp_path, "gap.json", gap)
        code, out, err = run(capsys, ["embed", path, "--n", "2"])
        assert code == 3
        assert "error" in json.loads(out)
        assert "zero factor rows" in err


class TestLightcone:
    def test_forward_and_back(self, tmp_path, capsys):
        path = write(tmp_path, "pair.json", TANGENT_PAIR)
        code, out, _ = run(capsys, ["lightcone", path])
        assert code == 0
        vectors = json.loads(out)
        assert vectors["n"] == 2
        vec_path = write(tmp_path, "vec.json", vectors)
        code, out, _ = run(capsys, ["lightcone", vec_path, "--inverse"])
        assert code == 0
        recovered = json.loads(out)["spheres"]
        assert recovered[0]["t"][0] == pytest.approx(0.0, abs=1e-12)
        assert recovered[0]["phi"] == pytest.approx(1.0, rel=1e-12)


class TestSpheresCommand:
    def test_separation_output_feeds_check(self, tmp_path, capsys):
        payload = {"n": 2, "spheres": [{"c": [0.0, 0.0], "r": 1.0}, {"c": [2.0, 0.0], "r": 1.0}]}
        path = write(tmp_path, "s.json", payload)
        code, out, _ = run(capsys, ["spheres", path])
        assert code == 0
        result = json.loads(out)
        assert result["d2"] == [[-1.0, 1.0], [1.0, -1.0]]
        assert result["diag"] == -1
        assert len(result["hyperboloid"]) == 2
        sep_path = write(tmp_path, "sep.json", result)
        code, out, _ = run(capsys, ["check", sep_path, "--mode", "spheres", "--n", "2"])
        assert code == 0


class TestComplete:
    def test_path_graph(self, tmp_path, capsys):
        graph = {
            "vertices": 3,
            "edges": [{"u": 0, "v": 1, "len": 1.0}, {"u": 1, "v": 2, "len": 1.0}],
        }
        path = write(tmp_path, "g.json", graph)
        code, out, _ = run(capsys, ["complete", path, "--n", "2"])
        assert code == 0
        payload = json.loads(out)
        assert payload["verdict"] == "Completed"
        d = np.array(payload["d2"])
        assert d.shape == (3, 3)
        assert d[0, 1] == pytest.approx(1.0, rel=1e-9)
        assert len(payload["embedding"]) == 3

    def test_four_cycle_witness_lengths(self, tmp_path, capsys):
        path = write(tmp_path, "c4.json", FOUR_CYCLE)
        code, out, _ = run(capsys, ["complete", path, "--n", "2"])
        assert code == 1
        payload = json.loads(out)
        assert payload["verdict"] == "NotChordal"
        assert len(payload["witness_cycle"]) == 4


class TestWitness:
    def test_four_cycle(self, tmp_path, capsys):
        path = write(tmp_path, "c4.json", FOUR_CYCLE)
        code, out, _ = run(capsys, ["witness", path])
        assert code == 0
        payload = json.loads(out)
        lengths = sorted(edge["len"] for edge in payload["edges"])
        assert lengths == [0.0, 0.0, 0.0, 1.0]
        assert len(payload["cycle"]) == 4

    def test_chordal_input(self, tmp_path, capsys):
        graph = {"vertices": 3, "edges": [{"u": 0, "v": 1, "len": 1.0}]}
        path = write(tmp_path, "g.json", graph)
        code, out, _ = run(capsys, ["witness", path])
        assert code == 1
        assert "chordal" in json.loads(out)["error"]


class TestInputHandling:
    def test_stdin(self, capsys, monkeypatch):
        import io as stdlib_io

        monkeypatch.setattr("sys.stdin", stdlib_io.StringIO(json.dumps(TANGENT_PAIR)))
        code, out, _ = run(capsys, ["dist", "-"])
        assert code == 0
        assert json.loads(out)["d"][0][1] == 1.0

    def test_malformed_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, _, err = run(capsys, ["dist", str(path)])
        assert code == 2

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, ["dist", "/nonexistent/file.json"])
        assert code == 2

    def test_schema_violation(self, tmp_path, capsys):
        path = write(tmp_path, "bad.json", {"n": 2, "spheres": [{"t": [0.0]}]})
        code, _, err = run(capsys, ["dist", path])
        assert code == 2

    def test_output_file(self, tmp_path, capsys):
        path = write(tmp_path, "pair.json", TANGENT_PAIR)
        out_path = tmp_path / "out.json"
        code, out, _ = run(capsys, ["dist", path, "-o", str(out_path)])
        assert code == 0
        assert out == ""
        assert json.loads(out_path.read_text())["d"][0][1] == 1.0
