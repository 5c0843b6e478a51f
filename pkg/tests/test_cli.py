import json
import threading

import pytest
import urllib.request
import urllib.error

from arckbench.arck import (
    ArcKPosition,
    Convention,
    Player,
    encode_position,
    solve,
)
from arckbench.cli import main
from arckbench.graphs import build_graph
from arckbench.serve import GameSession, make_server

from oracles import arck_oracle_winner


def brb_position(convention=Convention.MISERE, to_move=Player.BLUE):
    graph = build_graph(
        range(4), [(0, 1, "blue"), (1, 2, "red"), (2, 3, "blue")]
    )
    return ArcKPosition(graph, convention, to_move)


class TestCli:
    def test_solve_poscnf(self, tmp_path, capsys):
        f = tmp_path / "x.poscnf"
        f.write_text("p poscnf 1 1\n1 0\n")
        assert main(["solve-poscnf", "--in", str(f)]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["winner"] == "true"

    def test_solve_arck(self, tmp_path, capsys):
        f = tmp_path / "pos.json"
        f.write_text(encode_position(brb_position()))
        assert main(["solve-arck", "--in", str(f)]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["winner"] == arck_oracle_winner(brb_position()).value

    def test_compile_poscnf_to_b2cl(self, tmp_path, capsys):
        f = tmp_path / "x.poscnf"
        f.write_text("p poscnf 1 1\n1 0\n")
        out_dir = tmp_path / "out"
        code = main([
            "compile", "--from", "poscnf", "--to", "b2cl",
            "--variant", "mpb2cl", "--in", str(f), "--out", str(out_dir),
        ])
        assert code == 0
        instance = json.loads((out_dir / "instance.json").read_text())
        assert instance["variant"] == "mpb2cl"
        trace = json.loads((out_dir / "trace.json").read_text())
        assert trace["k"] >= 2

    def test_compile_poscnf_to_arck_revalidates(self, tmp_path, capsys):
        from arckbench.arck import decode_position

        f = tmp_path / "x.poscnf"
        f.write_text("p poscnf 1 1\n1 0\n")
        out_dir = tmp_path / "out"
        code = main([
            "compile", "--from", "poscnf", "--to", "arck",
            "--backend", "general", "--in", str(f), "--out", str(out_dir),
        ])
        assert code == 0
        position = decode_position((out_dir / "position.json").read_text())
        assert position.convention == Convention.MISERE
        assert (out_dir / "trace.json").exists()

    def test_verify_exits_zero_with_warn(self, capsys):
        assert main(["verify", "--kind", "choice", "--backend", "triangular",
                     "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["status"] == "warn"

    def test_verify_full_matrix(self, capsys):
        assert main(["verify", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["status"] == "warn"  # only the triangular choice note
        assert len(payload["gadgets"]) == 16
        assert len(payload["line_graph_planarity"]) == 27

    def test_export_dot(self, tmp_path, capsys):
        f = tmp_path / "pos.json"
        f.write_text(encode_position(brb_position()))
        assert main(["export", "--dot", "--in", str(f)]) == 0
        assert capsys.readouterr().out.count("--") == 3

    def test_domain_error_exit_code(self, tmp_path):
        f = tmp_path / "bad.json"
        f.write_text("{ not json")
        assert main(["solve-arck", "--in", str(f)]) == 1

    def test_usage_error_exit_code(self):
        with pytest.raises(SystemExit) as err:
            main(["compile", "--from", "poscnf"])
        assert err.value.code == 2


class _Client:
    def __init__(self, port):
        self.base = f"http://127.0.0.1:{port}"

    def get(self, path):
        with urllib.request.urlopen(self.base + path) as resp:
            return resp.status, json.loads(resp.read())

    def post(self, path, payload):
        req = urllib.request.Request(
            self.base + path,
            data=json.dumps(payload).encode(),
            headers={"Content-Type": "application/json"},
            method="POST",
        )
        try:
            with urllib.request.urlopen(req) as resp:
                return resp.status, json.loads(resp.read())
        except urllib.error.HTTPError as err:
            return err.code, json.loads(err.read())


@pytest.fixture
def server():
    session = GameSession(brb_position())
    httpd = make_server("127.0.0.1", 0, session)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    yield _Client(httpd.server_address[1])
    httpd.shutdown()
    httpd.server_close()


class TestServe:
    def test_position_endpoint(self, server):
        status, body = server.get("/position")
        assert status == 200
        assert body["terminal"] is False
        assert len(body["position"]["edges"]) == 3

    def test_wrong_colour_is_400(self, server):
        status, body = server.post("/move", {"edge": 1})
        assert status == 400
        assert body["reason"] == "wrong colour"

    def test_legal_and_hint(self, server):
        status, body = server.get("/legal")
        assert status == 200 and body["edges"] == [0, 2]
        status, body = server.get("/hint")
        assert status == 200
        assert body["edge"] in (0, 2)

    def test_full_game_matches_engine(self, server):
        # play hint-vs-hint to the end; the stuck side must match solve()
        engine_says = solve(brb_position()).winner.value
        status, body = server.get("/position")
        while not body["terminal"]:
            status, hint = server.get("/hint")
            status, body = server.post("/move", {"edge": hint["edge"]})
            assert status == 200
        assert body["winner"] == engine_says

    def test_move_after_game_over_is_409(self, server):
        status, body = server.get("/position")
        while not body["terminal"]:
            status, hint = server.get("/hint")
            status, body = server.post("/move", {"edge": hint["edge"]})
        status, body = server.post("/move", {"edge": 0})
        assert status == 409

    def test_new_position(self, server):
        from arckbench.arck import position_payload

        payload = position_payload(brb_position(Convention.NORMAL, Player.RED))
        status, body = server.post("/new", {"position": payload})
        assert status == 200
        assert body["position"]["convention"] == "normal"

    def test_single_blue_edge_hint(self, server):
        graph = build_graph(range(2), [(0, 1, "blue")])
        payload = json.loads(
            encode_position(ArcKPosition(graph, Convention.NORMAL, Player.BLUE))
        )
        server.post("/new", {"position": payload})
        status, body = server.get("/hint")
        assert body["edge"] == 0
