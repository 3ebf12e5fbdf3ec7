"""Human-baseline study backend.

Each participant session serves 5 articles sampled uniformly without
replacement from the test split; the participant guesses human vs llm
per article.  True labels never leave the server: article payloads and
the event log carry no label field, and a session's score is revealed
only as an aggregate count once its fifth answer lands.

State is an append-only line-delimited JSON event log replayed at
startup; per-process writes go through a single lock.
"""

from __future__ import annotations

import json
import random
import re
import threading
import time
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .corpus import LABELS, NewsArticle
from .errors import (
    AlreadyAnswered,
    ArticleNotInSession,
    InsufficientArticles,
    UnknownSession,
)
from .evaluation import REFERENCE_ACCURACIES

ARTICLES_PER_SESSION = 5

HUMAN_REFERENCE_ACCURACY = dict(REFERENCE_ACCURACIES)["humans"]


@dataclass
class StudySession:
    session_id: str
    article_ids: tuple[str, ...]
    created_at: float
    answers: dict[str, str] = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return len(self.answers) == len(self.article_ids)


@dataclass(frozen=True)
class StudyStats:
    participants: int
    accuracies: tuple[float, ...]
    mean_accuracy: float | None

    def to_payload(self) -> dict:
        payload = {
            "participants": self.participants,
            "accuracies": list(self.accuracies),
            "reference_human_accuracy": HUMAN_REFERENCE_ACCURACY,
        }
        if self.mean_accuracy is not None:
            payload["mean_accuracy"] = self.mean_accuracy
        return payload


class StudyStore:
    """Session state over an append-only event log."""

    def __init__(self, articles: list[NewsArticle], test_ids: list[str],
                 log_path: str | Path, seed: int | None = None):
        by_id = {a.id: a for a in articles}
        missing = [i for i in test_ids if i not in by_id]
        if missing:
            raise InsufficientArticles(f"test ids missing from corpus: {missing[:5]}")
        self._articles = by_id
        self._test_ids = list(test_ids)
        self._log_path = Path(log_path)
        self._rng = random.Random(seed) if seed is not None else random.SystemRandom()
        self._lock = threading.Lock()
        self.sessions: dict[str, StudySession] = {}
        if self._log_path.exists():
            self._replay()

    def _replay(self) -> None:
        with open(self._log_path, encoding="utf-8") as handle:
            for line in handle:
                if not line.strip():
                    continue
                event = json.loads(line)
                if event["event"] == "session_created":
                    self.sessions[event["session_id"]] = StudySession(
                        session_id=event["session_id"],
                        article_ids=tuple(event["article_ids"]),
                        created_at=event["created_at"],
                    )
                elif event["event"] == "answer_submitted":
                    session = self.sessions[event["session_id"]]
                    session.answers[event["article_id"]] = event["guess"]

    def _append(self, event: dict) -> None:
        with open(self._log_path, "a", encoding="utf-8") as handle:
            handle.write(json.dumps(event, sort_keys=True) + "\n")
            handle.flush()

    def create_session(self) -> StudySession:
        if len(self._test_ids) < ARTICLES_PER_SESSION:
            raise InsufficientArticles(
                f"need at least {ARTICLES_PER_SESSION} test articles, "
                f"have {len(self._test_ids)}"
            )
        with self._lock:
            chosen = self._rng.sample(self._test_ids, ARTICLES_PER_SESSION)
            session = StudySession(
                session_id=f"{self._rng.getrandbits(64):016x}",
                article_ids=tuple(chosen),
                created_at=time.time(),
            )
            self.sessions[session.session_id] = session
            self._append({
                "event": "session_created",
                "session_id": session.session_id,
                "article_ids": list(session.article_ids),
                "created_at": session.created_at,
            })
        return session

    def _session(self, session_id: str) -> StudySession:
        session = self.sessions.get(session_id)
        if session is None:
            raise UnknownSession(f"no session {session_id!r}")
        return session

    def session_state(self, session_id: str) -> dict:
        session = self._session(session_id)
        state = {
            "session_id": session.session_id,
            "answered": len(session.answers),
            "total": len(session.article_ids),
            "done": session.complete,
        }
        if session.complete:
            # aggregate count only; per-article labels stay server-side
            state["correct"] = self._correct_count(session)
        return state

    def article_payload(self, session_id: str, index: int) -> dict:
        """Article as served to participants: never includes the label."""
        session = self._session(session_id)
        if not 0 <= index < len(session.article_ids):
            raise ArticleNotInSession(f"index {index} outside 0..{len(session.article_ids) - 1}")
        article = self._articles[session.article_ids[index]]
        return {
            "session_id": session.session_id,
            "index": index,
            "title": article.title,
            "text": article.text,
        }

    def submit_answer(self, session_id: str, article_id: str, guess: str) -> dict:
        if guess not in LABELS:
            raise ValueError(f"guess must be one of {LABELS}")
        with self._lock:
            session = self._session(session_id)
            if article_id not in session.article_ids:
                raise ArticleNotInSession(f"article {article_id!r} not in session")
            if article_id in session.answers:
                raise AlreadyAnswered(f"article {article_id!r} already answered")
            session.answers[article_id] = guess
            self._append({
                "event": "answer_submitted",
                "session_id": session_id,
                "article_id": article_id,
                "guess": guess,
            })
            ack = {"status": "ok", "answered": len(session.answers),
                   "total": len(session.article_ids), "done": session.complete}
            if session.complete:
                ack["correct"] = self._correct_count(session)
            return ack

    def _correct_count(self, session: StudySession) -> int:
        return sum(
            guess == self._articles[article_id].label
            for article_id, guess in session.answers.items()
        )

    def stats(self) -> StudyStats:
        """Unweighted mean of per-participant accuracies over completed sessions."""
        accuracies = tuple(
            self._correct_count(s) / len(s.article_ids)
            for s in self.sessions.values()
            if s.complete
        )
        mean = sum(accuracies) / len(accuracies) if accuracies else None
        return StudyStats(len(accuracies), accuracies, mean)


# ---------------------------------------------------------------------------
# HTTP layer

_ARTICLE_ROUTE = re.compile(r"^/session/([0-9a-f]+)/article/(\d+)$")
_ANSWER_ROUTE = re.compile(r"^/session/([0-9a-f]+)/answer$")
_SESSION_ROUTE = re.compile(r"^/session/([0-9a-f]+)$")

_ERROR_STATUS = {
    UnknownSession: 404,
    ArticleNotInSession: 400,
    AlreadyAnswered: 409,
    InsufficientArticles: 409,
    ValueError: 400,
}


def make_handler(store: StudyStore, ui_dir: str | Path | None = None):
    ui_root = Path(ui_dir).resolve() if ui_dir else None

    class StudyHandler(BaseHTTPRequestHandler):
        def log_message(self, *args):  # keep test output quiet
            pass

        def _send_json(self, payload: dict, status: int = 200) -> None:
            body = json.dumps(payload).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

        def _send_error_json(self, exc: Exception) -> None:
            status = next(
                (code for cls, code in _ERROR_STATUS.items() if isinstance(exc, cls)), 500
            )
            self._send_json({"error": str(exc)}, status=status)

        def _read_body(self) -> dict:
            length = int(self.headers.get("Content-Length", 0))
            if not length:
                return {}
            return json.loads(self.rfile.read(length).decode("utf-8"))

        def do_OPTIONS(self):
            self.send_response(204)
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.end_headers()

        def do_POST(self):
            try:
                if self.path == "/session":
                    session = store.create_session()
                    self._send_json({
                        "session_id": session.session_id,
                        "total": len(session.article_ids),
                    }, status=201)
                    return
                match = _ANSWER_ROUTE.match(self.path)
                if match:
                    body = self._read_body()
                    session_id = match.group(1)
                    index = body.get("index")
                    if not isinstance(index, int):
                        raise ValueError("body must carry an integer 'index'")
                    payload = store.article_payload(session_id, index)
                    article_id = store.sessions[session_id].article_ids[payload["index"]]
                    ack = store.submit_answer(session_id, article_id, body.get("guess"))
                    self._send_json(ack)
                    return
                self._send_json({"error": "not found"}, status=404)
            except Exception as exc:
                self._send_error_json(exc)

        def do_GET(self):
            try:
                if self.path == "/stats":
                    self._send_json(store.stats().to_payload())
                    return
                match = _ARTICLE_ROUTE.match(self.path)
                if match:
                    payload = store.article_payload(match.group(1), int(match.group(2)))
                    self._send_json(payload)
                    return
                match = _SESSION_ROUTE.match(self.path)
                if match:
                    self._send_json(store.session_state(match.group(1)))
                    return
                if ui_root is not None:
                    self._send_static()
                    return
                self._send_json({"error": "not found"}, status=404)
            except Exception as exc:
                self._send_error_json(exc)

        def _send_static(self):
            relative = self.path.lstrip("/") or "index.html"
            target = (ui_root / relative).resolve()
            if not str(target).startswith(str(ui_root)) or not target.is_file():
                self._send_json({"error": "not found"}, status=404)
                return
            content_types = {".html": "text/html", ".js": "text/javascript", ".css": "text/css"}
            body = target.read_bytes()
            self.send_response(200)
            self.send_header("Content-Type", content_types.get(target.suffix, "application/octet-stream"))
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

    return StudyHandler


def serve(store: StudyStore, port: int, ui_dir: str | Path | None = None) -> ThreadingHTTPServer:
    """Create (but do not start) the HTTP server; caller runs serve_forever."""
    return ThreadingHTTPServer(("0.0.0.0", port), make_handler(store, ui_dir))
