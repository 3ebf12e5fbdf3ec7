"""Two-query chat-completion protocol that produces the machine half of a corpus.

For every human article the client first requests a detailed summary,
then requests a brand-new story written only from that summary, with a
word budget of the source's token count plus/minus 50.  The two calls
are independent requests (no server-side conversation state), so the
second request never carries the original article text.

A deterministic mock mode replaces the HTTP calls for offline runs: the
summary is the first two sentences of the source and the story is a
seeded sentence shuffle of it.
"""

from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import requests

from .corpus import LLM, NewsArticle
from .errors import EmptyCompletion, RateLimited, TransportError
from .textproc import split_sentences, tokenize

SUMMARY_PROMPT_PREFIX = "Summarize in details the following news article. News: "

API_KEY_ENV = "NEWSAUTH_API_KEY"

WORD_MARGIN = 50


@dataclass(frozen=True)
class ClientConfig:
    endpoint: str = ""
    model: str = ""
    mock: bool = False
    seed: int = 0
    max_retries: int = 3
    timeout: float = 60.0
    backoff_base: float = 0.5
    concurrency: int = 1


@dataclass(frozen=True)
class GenerationResult:
    article_id: str
    summary: str
    generated_text: str
    word_bounds: tuple[int, int]
    word_count: int
    out_of_bounds: bool
    raw_responses: tuple[dict, ...] = field(default_factory=tuple)


def build_summary_prompt(article: NewsArticle) -> str:
    """First query: ask for a detailed summary of the article text."""
    if not article.text.strip():
        raise ValueError("article text must be non-empty")
    return SUMMARY_PROMPT_PREFIX + article.text


def build_article_prompt(title: str, token_count: int, summary: str) -> str:
    """Second query: ask for a story from the summary within the word budget."""
    if token_count < 1:
        raise ValueError("token_count must be >= 1")
    if not summary.strip():
        raise ValueError("summary must be non-empty")
    maximum = token_count + WORD_MARGIN
    minimum = max(1, token_count - WORD_MARGIN)
    return (
        "Write a news story based on the following summary containing a maximum of "
        f"{maximum} words and a minimum of {minimum} words and entitled: {title}"
        f". Summary: {summary}"
    )


def _mock_completion(article: NewsArticle, prompt: str, seed: int) -> str:
    sentences = split_sentences(article.text)
    if prompt.startswith(SUMMARY_PROMPT_PREFIX):
        return " ".join(sentences[:2])
    shuffled = list(sentences)
    random.Random((seed, article.id).__repr__()).shuffle(shuffled)
    return " ".join(shuffled)


def _post_chat(config: ClientConfig, prompt: str) -> tuple[str, dict]:
    """POST one chat request, retrying transient transport failures."""
    body = {"model": config.model, "messages": [{"role": "user", "content": prompt}]}
    headers = {"Content-Type": "application/json"}
    api_key = os.environ.get(API_KEY_ENV)
    if api_key:
        headers["Authorization"] = f"Bearer {api_key}"
    last_error: Exception | None = None
    for attempt in range(config.max_retries + 1):
        if attempt:
            time.sleep(config.backoff_base * (2 ** (attempt - 1)))
        try:
            response = requests.post(config.endpoint, json=body, headers=headers,
                                     timeout=config.timeout)
        except requests.RequestException as exc:
            last_error = exc
            continue
        if response.status_code == 429:
            retry_after = response.headers.get("Retry-After")
            last_error = RateLimited("rate limited by endpoint",
                                     retry_after=float(retry_after) if retry_after else None)
            continue
        if response.status_code >= 500:
            last_error = TransportError(f"server error {response.status_code}")
            continue
        if response.status_code != 200:
            raise TransportError(f"request failed with status {response.status_code}")
        payload = response.json()
        try:
            content = payload["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise EmptyCompletion(f"malformed completion payload: {payload!r}") from exc
        if not content or not content.strip():
            raise EmptyCompletion("endpoint returned an empty completion")
        return content, payload
    if isinstance(last_error, (RateLimited, TransportError)):
        raise last_error
    raise TransportError(f"transport failed after {config.max_retries + 1} attempts: {last_error}")


def generate(article: NewsArticle, config: ClientConfig) -> GenerationResult:
    """Run the summary call then the story call for one article."""
    token_count = article.word_count
    summary_prompt = build_summary_prompt(article)
    if config.mock:
        summary = _mock_completion(article, summary_prompt, config.seed)
        raw: list[dict] = []
    else:
        summary, payload = _post_chat(config, summary_prompt)
        raw = [payload]
    story_prompt = build_article_prompt(article.title, token_count, summary)
    if config.mock:
        story = _mock_completion(article, story_prompt, config.seed)
    else:
        story, payload = _post_chat(config, story_prompt)
        raw.append(payload)
    bounds = (max(1, token_count - WORD_MARGIN), token_count + WORD_MARGIN)
    count = len(tokenize(story))
    return GenerationResult(
        article_id=article.id,
        summary=summary,
        generated_text=story,
        word_bounds=bounds,
        word_count=count,
        out_of_bounds=not bounds[0] <= count <= bounds[1],
        raw_responses=tuple(raw),
    )


def generate_counterparts(
    articles: list[NewsArticle], config: ClientConfig
) -> tuple[list[NewsArticle], list[GenerationResult]]:
    """Generate one machine-written counterpart per human article.

    Distinct articles run concurrently up to config.concurrency; the two
    calls for one article stay sequential.  Output order follows input
    order regardless of completion order.
    """
    if config.concurrency > 1:
        with ThreadPoolExecutor(max_workers=config.concurrency) as pool:
            results = list(pool.map(lambda a: generate(a, config), articles))
    else:
        results = [generate(a, config) for a in articles]
    generated = [
        NewsArticle.build(
            id=f"{a.id}-llm",
            source=config.model or "mock",
            label=LLM,
            title=a.title,
            text=r.generated_text,
        )
        for a, r in zip(articles, results)
    ]
    return generated, results


def write_generation_log(results: list[GenerationResult], path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for r in results:
            handle.write(json.dumps({
                "id": r.article_id,
                "word_bounds": list(r.word_bounds),
                "word_count": r.word_count,
                "out_of_bounds": r.out_of_bounds,
            }) + "\n")
