import json
from itertools import combinations

import pytest
from conftest import connected_instances, hg
from hypothesis import given, settings
from hypothesis import strategies as st

from berge.cli import main
from berge.extractor import extract, replay
from berge.io import (
    FormatError,
    dump_certificate,
    load_certificate,
    parse_hypergraph,
    serialize_hypergraph,
)

K4 = "3 4 4\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n"


@pytest.fixture
def k4_file(tmp_path):
    p = tmp_path / "k4.txt"
    p.write_text(K4)
    return p


def stderr_json(capsys):
    return json.loads(capsys.readouterr().err.strip().splitlines()[-1])


class TestFormat:
    def test_parse(self):
        h = parse_hypergraph("# K_4^(3)\n" + K4 + "\n")
        assert (h.r, h.n, h.m) == (3, 4, 4)
        assert h.edges[3] == {1, 2, 3}

    def test_non_uniform_header(self):
        h = parse_hypergraph("0 3 2\n0 1\n0 1 2\n")
        assert h.r is None
        assert serialize_hypergraph(h).startswith("0 3 2\n")

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "3 4\n",
            "3 4 2\n0 1 2\n",
            "3 4 1\n0 1\n",
            "2 3 1\n0 0\n",
            "2 3 1\n0 x\n",
            "2 3 2\n0 1\n1 0\n",
            "2 3 1\n0 3\n",
        ],
    )
    def test_rejects(self, text):
        with pytest.raises(FormatError):
            parse_hypergraph(text)

    @settings(max_examples=100)
    @given(st.integers(1, 4), st.integers(0, 7), st.data())
    def test_round_trip(self, r, extra, data):
        n = r + extra
        pool = list(combinations(range(n), r))
        chosen = data.draw(st.lists(st.sampled_from(pool), unique=True, max_size=12))
        h = hg(n, chosen)
        assert parse_hypergraph(serialize_hypergraph(h)) == h


@settings(max_examples=50, deadline=None)
@given(connected_instances())
def test_certificate_round_trip(inst):
    h, v = inst
    res = extract(h, v)
    cert, claims, trace = load_certificate(dump_certificate(h, res))
    assert cert == res.outcome
    assert claims["length"] == cert.length and claims["r"] == h.r
    assert replay(h, v, trace) == res


def test_certificate_bad_json():
    with pytest.raises(FormatError):
        load_certificate("{}")
    with pytest.raises(FormatError):
        load_certificate('{"kind": "walk", "vertices": [], "edge_ids": []}')


class TestExtractCommand:
    def test_k4_cycle(self, k4_file, tmp_path):
        out = tmp_path / "cert.json"
        assert main(["extract", str(k4_file), "--vertex", "0", "-o", str(out)]) == 0
        d = json.loads(out.read_text())
        assert d["kind"] == "cycle" and d["length"] == 4 and 0 in d["vertices"]
        assert d["trace"][0]["kind"] == "Recurse"

    def test_stdout(self, k4_file, capsys):
        assert main(["extract", str(k4_file), "-v", "1"]) == 0
        assert json.loads(capsys.readouterr().out)["kind"] == "cycle"

    def test_disconnected(self, tmp_path, capsys):
        p = tmp_path / "two.txt"
        p.write_text("2 6 6\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n")
        assert main(["extract", str(p), "--vertex", "0"]) == 2
        assert stderr_json(capsys)["error"] == "not connected"

    def test_tree(self, tmp_path, capsys):
        p = tmp_path / "tree.txt"
        p.write_text("2 4 3\n0 1\n1 2\n2 3\n")
        assert main(["extract", str(p), "--vertex", "0"]) == 2
        assert stderr_json(capsys)["error"] == "e < n"

    def test_theorem2_mode(self, tmp_path):
        p = tmp_path / "g.txt"
        assert main(["gen", "glued_blocks", "--r", "3", "--block-size", "4", "--blocks", "2", "-o", str(p)]) == 0
        out = tmp_path / "c.json"
        assert main(["extract", str(p), "--mode", "theorem2", "-o", str(out)]) == 0
        d = json.loads(out.read_text())
        assert d["kind"] == "path" and d["length"] == 4

    def test_missing_file(self, tmp_path, capsys):
        assert main(["extract", str(tmp_path / "nope.txt"), "-v", "0"]) == 1

    def test_malformed(self, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("3 4 9\n0 1 2\n")
        assert main(["extract", str(p), "-v", "0"]) == 1


class TestVerifyCommand:
    @pytest.fixture
    def cert(self, k4_file, tmp_path):
        out = tmp_path / "cert.json"
        main(["extract", str(k4_file), "--vertex", "0", "-o", str(out)])
        return out

    def test_accepts(self, k4_file, cert, capsys):
        assert main(["verify", str(k4_file), str(cert)]) == 0
        assert capsys.readouterr().out.startswith("ok: cycle of length 4")

    def test_tampered_edge_id(self, k4_file, cert, capsys):
        d = json.loads(cert.read_text())
        d["edge_ids"][0], d["edge_ids"][1] = d["edge_ids"][1], d["edge_ids"][0]
        cert.write_text(json.dumps(d))
        assert main(["verify", str(k4_file), str(cert)]) == 2
        assert "rejected" in capsys.readouterr().out

    def test_wrong_length_claim(self, k4_file, cert, capsys):
        d = json.loads(cert.read_text())
        d["length"] = 5
        cert.write_text(json.dumps(d))
        assert main(["verify", str(k4_file), str(cert)]) == 2
        assert "claimed length" in capsys.readouterr().out

    def test_listed_edges_must_match(self, k4_file, cert):
        d = json.loads(cert.read_text())
        d["edges"][0] = [9, 9, 9]
        cert.write_text(json.dumps(d))
        assert main(["verify", str(k4_file), str(cert)]) == 2

    def test_wrong_start_claim(self, tmp_path):
        g = tmp_path / "c4.txt"
        g.write_text("2 4 4\n0 1\n1 2\n2 3\n0 3\n")
        c = tmp_path / "p.json"
        assert main(["extract", str(g), "-v", "0", "-o", str(c)]) == 0
        d = json.loads(c.read_text())
        d["start_vertex"] = 2
        c.write_text(json.dumps(d))
        assert main(["verify", str(g), str(c)]) == 2


class TestOracleCommand:
    def test_longest(self, k4_file, capsys):
        assert main(["oracle", str(k4_file), "--longest"]) == 0
        assert json.loads(capsys.readouterr().out)["longest_path_length"] == 3

    def test_from(self, k4_file, capsys):
        assert main(["oracle", str(k4_file), "--from", "0", "--k", "4"]) == 0
        assert json.loads(capsys.readouterr().out)["exists"] is False

    def test_cycle_through(self, k4_file, capsys):
        assert main(["oracle", str(k4_file), "--cycle-through", "2", "--k", "4"]) == 0
        d = json.loads(capsys.readouterr().out)
        assert d["exists"] and 2 in d["witness"]["vertices"]

    def test_budget(self, tmp_path, capsys):
        p = tmp_path / "big.txt"
        main(["gen", "complete_blocks", "--r", "3", "--block-size", "7", "-o", str(p)])
        assert main(["oracle", str(p), "--longest", "--budget", "2"]) == 4

    def test_missing_query(self, k4_file):
        assert main(["oracle", str(k4_file)]) == 2


class TestGenCommand:
    def test_complete(self, capsys):
        assert main(["gen", "complete_blocks", "--r", "3", "--blocks", "2"]) == 0
        h = parse_hypergraph(capsys.readouterr().out)
        assert (h.n, h.m) == (8, 8)

    def test_random_deterministic(self, capsys):
        args = ["gen", "random_connected", "--r", "3", "--n", "7", "--m", "8", "--seed", "3"]
        main(args)
        a = capsys.readouterr().out
        main(args)
        assert capsys.readouterr().out == a

    def test_infeasible(self, capsys):
        assert main(["gen", "random_connected", "--r", "3", "--n", "9", "--m", "2"]) == 2


def test_experiment_command(capsys):
    assert main(["experiment", "exhaustive-r2", "--max-n", "4", "--json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["failures"] == [] and d["instances"] > 0
