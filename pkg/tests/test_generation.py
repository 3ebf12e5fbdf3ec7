import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from newsauth.corpus import NewsArticle
from newsauth.errors import EmptyCompletion, TransportError
from newsauth.generation import (
    ClientConfig,
    build_article_prompt,
    build_summary_prompt,
    generate,
    generate_counterparts,
)


def make_article(text="First fact here. Second point follows. Third one ends it.",
                 article_id="a1", title="Headline"):
    return NewsArticle.build(article_id, "src", "human", title, text)


class TestPrompts:
    def test_summary_prompt_golden(self):
        article = make_article(text="X.")
        assert build_summary_prompt(article) == (
            "Summarize in details the following news article. News: X."
        )

    def test_summary_prompt_ends_with_text(self):
        article = make_article(text="Alpha beta gamma. Delta.")
        assert build_summary_prompt(article).endswith(article.text)

    def test_summary_prompt_requires_text(self):
        article = make_article()
        object.__setattr__(article, "text", "  ")
        with pytest.raises(ValueError):
            build_summary_prompt(article)

    def test_article_prompt_golden(self):
        prompt = build_article_prompt("T", 600, "S")
        assert prompt == (
            "Write a news story based on the following summary containing a "
            "maximum of 650 words and a minimum of 550 words and entitled: T"
            ". Summary: S"
        )

    def test_article_prompt_clamps_minimum(self):
        prompt = build_article_prompt("T", 30, "S")
        assert "a minimum of 1 words" in prompt
        assert "a maximum of 80 words" in prompt

    def test_bound_numbers_appear_once_each(self):
        prompt = build_article_prompt("Title", 400, "Summary words")
        assert prompt.count("450") == 1
        assert prompt.count("350") == 1

    def test_article_prompt_preconditions(self):
        with pytest.raises(ValueError):
            build_article_prompt("T", 0, "S")
        with pytest.raises(ValueError):
            build_article_prompt("T", 10, "  ")

    def test_prompt_builders_are_pure(self):
        article = make_article()
        assert build_summary_prompt(article) == build_summary_prompt(article)
        assert build_article_prompt("T", 9, "s") == build_article_prompt("T", 9, "s")


class TestMockMode:
    CONFIG = ClientConfig(mock=True, seed=11)

    def test_deterministic(self):
        article = make_article()
        first = generate(article, self.CONFIG)
        second = generate(article, self.CONFIG)
        assert first == second

    def test_summary_is_leading_sentences(self):
        result = generate(make_article(), self.CONFIG)
        assert result.summary == "First fact here. Second point follows."

    def test_generated_text_is_sentence_shuffle(self):
        article = make_article()
        result = generate(article, self.CONFIG)
        # same words, possibly different sentence order
        assert sorted(result.generated_text.split(" ")) == sorted(article.text.split(" "))

    def test_word_bounds_flag_not_rejection(self):
        article = make_article(text="Tiny text here.")
        result = generate(article, self.CONFIG)
        assert result.word_bounds == (1, article.word_count + 50)
        # mock output mirrors the source, so it stays within bounds
        assert result.out_of_bounds is False
        assert result.word_count == len(result.generated_text.split(" ")) + 1  # final period splits

    def test_counterparts_labelled_llm(self):
        humans = [make_article(article_id=f"h{k}") for k in range(3)]
        generated, results = generate_counterparts(humans, self.CONFIG)
        assert [g.id for g in generated] == ["h0-llm", "h1-llm", "h2-llm"]
        assert all(g.label == "llm" for g in generated)
        assert len(results) == 3

    def test_concurrent_matches_serial(self):
        humans = [make_article(article_id=f"h{k}") for k in range(4)]
        serial = generate_counterparts(humans, self.CONFIG)
        concurrent = generate_counterparts(
            humans, ClientConfig(mock=True, seed=11, concurrency=3)
        )
        assert serial == concurrent


class _ChatHandler(BaseHTTPRequestHandler):
    """Canned chat-completion endpoint recording request bodies."""

    bodies: list[dict] = []
    behavior = "ok"  # ok | rate-limit-once | server-error | empty

    def log_message(self, *args):
        pass

    def do_POST(self):
        length = int(self.headers.get("Content-Length", 0))
        body = json.loads(self.rfile.read(length))
        type(self).bodies.append(body)
        if type(self).behavior == "rate-limit-once":
            type(self).behavior = "ok"
            self.send_response(429)
            self.send_header("Retry-After", "0")
            self.end_headers()
            return
        if type(self).behavior == "server-error":
            self.send_response(500)
            self.end_headers()
            return
        content = "" if type(self).behavior == "empty" else (
            "echo summary" if body["messages"][0]["content"].startswith("Summarize")
            else "A generated story."
        )
        payload = json.dumps({"choices": [{"message": {"content": content}}]}).encode()
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)


@pytest.fixture
def chat_server():
    _ChatHandler.bodies = []
    _ChatHandler.behavior = "ok"
    server = ThreadingHTTPServer(("127.0.0.1", 0), _ChatHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_address[1]}/chat"
    server.shutdown()


class TestHttpMode:
    def test_two_independent_requests(self, chat_server):
        article = make_article()
        config = ClientConfig(endpoint=chat_server, model="test-model", backoff_base=0.01)
        result = generate(article, config)
        assert result.summary == "echo summary"
        assert result.generated_text == "A generated story."
        assert len(_ChatHandler.bodies) == 2
        for body in _ChatHandler.bodies:
            assert body["model"] == "test-model"
            assert [m["role"] for m in body["messages"]] == ["user"]

    def test_story_request_never_contains_source_text(self, chat_server):
        article = make_article()
        config = ClientConfig(endpoint=chat_server, model="m", backoff_base=0.01)
        generate(article, config)
        story_request = json.dumps(_ChatHandler.bodies[1])
        assert article.text not in story_request
        assert article.title in _ChatHandler.bodies[1]["messages"][0]["content"]

    def test_retry_after_rate_limit(self, chat_server):
        _ChatHandler.behavior = "rate-limit-once"
        config = ClientConfig(endpoint=chat_server, model="m", backoff_base=0.01)
        result = generate(make_article(), config)
        assert result.summary == "echo summary"

    def test_transport_error_after_retries(self, chat_server):
        _ChatHandler.behavior = "server-error"
        config = ClientConfig(endpoint=chat_server, model="m", max_retries=1,
                              backoff_base=0.01)
        with pytest.raises(TransportError):
            generate(make_article(), config)

    def test_empty_completion(self, chat_server):
        _ChatHandler.behavior = "empty"
        config = ClientConfig(endpoint=chat_server, model="m", backoff_base=0.01)
        with pytest.raises(EmptyCompletion):
            generate(make_article(), config)

    def test_unreachable_endpoint(self):
        config = ClientConfig(endpoint="http://127.0.0.1:9/nope", model="m",
                              max_retries=0, backoff_base=0.01, timeout=0.5)
        with pytest.raises(TransportError):
            generate(make_article(), config)
