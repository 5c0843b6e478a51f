"""JSON-over-HTTP wrapper around one in-memory Arc Kayles session.

A thin veneer: every /move response is exactly apply_move on the held
position, and /hint defers to the solver.  Requests are handled sequentially,
so the single session needs no locking.
"""

from __future__ import annotations

import json
from http.server import BaseHTTPRequestHandler, HTTPServer

from .arck import (
    ArcKPosition,
    Convention,
    apply_move,
    best_move,
    legal_moves,
    position_from_payload,
    position_payload,
)
from .errors import BudgetExceeded, IllegalMove, ParseError


class GameSession:
    def __init__(self, position: ArcKPosition | None = None,
                 node_budget: int = 50_000_000):
        self.position = position
        self.node_budget = node_budget

    def envelope(self) -> dict:
        pos = self.position
        moves = legal_moves(pos)
        terminal = not moves
        winner = None
        if terminal:
            mover_wins = pos.convention == Convention.MISERE
            winner = (pos.to_move if mover_wins else pos.to_move.opponent()).value
        return {
            "position": position_payload(pos),
            "legal": moves,
            "terminal": terminal,
            "winner": winner,
        }

    def move(self, edge_id: int) -> dict:
        self.position = apply_move(self.position, edge_id)
        return self.envelope()

    def hint(self) -> int | None:
        return best_move(self.position, self.node_budget)


class _Handler(BaseHTTPRequestHandler):
    session: GameSession = None  # assigned by make_server

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send(self, status: int, payload: dict):
        body = json.dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.end_headers()
        self.wfile.write(body)

    def _require_position(self) -> bool:
        if self.session.position is None:
            self._send(404, {"error": "no position loaded"})
            return False
        return True

    def do_OPTIONS(self):
        self._send(204, {})

    def do_GET(self):
        if self.path == "/position":
            if self._require_position():
                self._send(200, self.session.envelope())
        elif self.path == "/legal":
            if self._require_position():
                self._send(200, {"edges": legal_moves(self.session.position)})
        elif self.path == "/hint":
            if self._require_position():
                try:
                    self._send(200, {"edge": self.session.hint()})
                except BudgetExceeded as exc:
                    self._send(503, {"error": str(exc)})
        else:
            self._send(404, {"error": "unknown endpoint"})

    def _read_body(self):
        length = int(self.headers.get("Content-Length", 0))
        raw = self.rfile.read(length) if length else b"{}"
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            self._send(400, {"error": f"bad JSON: {exc.msg}"})
            return None

    def do_POST(self):
        if self.path == "/move":
            if not self._require_position():
                return
            body = self._read_body()
            if body is None:
                return
            if not legal_moves(self.session.position):
                self._send(409, {"error": "game over"})
                return
            if "edge" not in body:
                self._send(400, {"error": "missing 'edge'"})
                return
            try:
                self._send(200, self.session.move(int(body["edge"])))
            except IllegalMove as exc:
                self._send(400, {"error": str(exc), "reason": exc.reason})
        elif self.path == "/new":
            body = self._read_body()
            if body is None:
                return
            try:
                self.session.position = position_from_payload(body["position"])
            except (KeyError, ParseError) as exc:
                self._send(400, {"error": f"bad position: {exc}"})
                return
            self._send(200, self.session.envelope())
        else:
            self._send(404, {"error": "unknown endpoint"})


def make_server(host: str, port: int, session: GameSession) -> HTTPServer:
    handler = type("BoundHandler", (_Handler,), {"session": session})
    return HTTPServer((host, port), handler)


def serve_forever(host: str, port: int, position: ArcKPosition | None,
                  node_budget: int = 50_000_000) -> None:
    server = make_server(host, port, GameSession(position, node_budget))
    print(f"serving on http://{host}:{port}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
