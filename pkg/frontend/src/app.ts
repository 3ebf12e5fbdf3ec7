// DOM wiring for the five-article study flow.

import { BackendError, StudyApi } from "./api.js";
import type { ArticlePayload, Guess, StudyStats } from "./api.js";
import { afterAnswer, freshSession, resumedSession } from "./state.js";
import type { UiSessionState } from "./state.js";

const STORAGE_KEY = "study-session-id";

export class StudyApp {
  state: UiSessionState | null = null;
  busy = false;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: StudyApi,
    private readonly storage: Storage,
  ) {}

  async start(): Promise<void> {
    this.busy = true;
    try {
      const stored = this.storage.getItem(STORAGE_KEY);
      if (stored) {
        try {
          this.state = resumedSession(await this.api.sessionState(stored));
        } catch (error) {
          if (!(error instanceof BackendError)) throw error;
          this.storage.removeItem(STORAGE_KEY); // stale id: start over
        }
      }
      if (!this.state) {
        const created = await this.api.createSession();
        this.storage.setItem(STORAGE_KEY, created.session_id);
        this.state = freshSession(created.session_id, created.total);
      }
      await this.render();
    } catch (error) {
      this.renderError(error, () => void this.start());
    } finally {
      this.busy = false;
    }
  }

  async submitGuess(guess: Guess): Promise<void> {
    if (this.busy || !this.state || this.state.phase !== "reading") {
      return; // duplicate clicks and stray submissions are dropped
    }
    this.busy = true;
    try {
      const ack = await this.api.answer(this.state.sessionId, this.state.index, guess);
      if (ack.alreadyAnswered) {
        // an earlier attempt landed; re-sync from the backend
        this.state = resumedSession(await this.api.sessionState(this.state.sessionId));
      } else {
        this.state = afterAnswer(this.state, ack);
      }
      await this.render();
    } catch (error) {
      this.renderError(error, () => void this.retryRender());
    } finally {
      this.busy = false;
    }
  }

  private async retryRender(): Promise<void> {
    this.busy = true;
    try {
      if (this.state) {
        this.state = resumedSession(await this.api.sessionState(this.state.sessionId));
      }
      await this.render();
    } catch (error) {
      this.renderError(error, () => void this.retryRender());
    } finally {
      this.busy = false;
    }
  }

  async whenIdle(): Promise<void> {
    while (this.busy) {
      await new Promise((resolve) => setTimeout(resolve, 5));
    }
  }

  private async render(): Promise<void> {
    if (!this.state) return;
    if (this.state.phase === "finished") {
      const stats = await this.api.stats();
      this.renderFinished(stats);
    } else {
      const article = await this.api.article(this.state.sessionId, this.state.index);
      this.renderArticle(article);
    }
  }

  private renderArticle(article: ArticlePayload): void {
    if (!this.state) return;
    this.root.innerHTML = "";
    const progress = element("p", "progress",
      `Article ${this.state.index + 1} of ${this.state.total}`);
    const title = element("h2", "article-title", article.title);
    const body = element("article", "article-text", article.text);
    const question = element("p", "question", "Who wrote this article?");
    const choices = element("div", "choices", "");
    for (const [guess, caption] of [["human", "A human"], ["llm", "An AI system"]] as const) {
      const button = document.createElement("button");
      button.textContent = caption;
      button.dataset.guess = guess;
      button.addEventListener("click", () => void this.submitGuess(guess));
      choices.appendChild(button);
    }
    this.root.append(progress, title, body, question, choices);
  }

  private renderFinished(stats: StudyStats): void {
    if (!this.state) return;
    this.root.innerHTML = "";
    const heading = element("h2", "finished-title", "Thanks for participating!");
    this.root.appendChild(heading);
    if (this.state.correct !== undefined) {
      const accuracy = this.state.correct / this.state.total;
      this.root.appendChild(element(
        "p", "score",
        `You identified ${this.state.correct} of ${this.state.total} articles ` +
        `correctly (accuracy ${(accuracy * 100).toFixed(0)}%).`,
      ));
    }
    const aggregate = element("div", "aggregate", "");
    aggregate.appendChild(element("h3", "", "How everyone is doing"));
    if (stats.mean_accuracy !== undefined) {
      aggregate.appendChild(element(
        "p", "aggregate-mean",
        `${stats.participants} participants so far, mean accuracy ` +
        `${(stats.mean_accuracy * 100).toFixed(1)}%.`,
      ));
    } else {
      aggregate.appendChild(element("p", "aggregate-mean", "No completed sessions yet."));
    }
    aggregate.appendChild(element(
      "p", "aggregate-reference",
      `Published human baseline: ${(stats.reference_human_accuracy * 100).toFixed(2)}%.`,
    ));
    this.root.appendChild(aggregate);
  }

  private renderError(error: unknown, retry: () => void): void {
    this.root.innerHTML = "";
    const banner = element("div", "error-banner",
      "The study service is unreachable. Please try again.");
    const detail = element("p", "error-detail",
      error instanceof Error ? error.message : String(error));
    const button = document.createElement("button");
    button.textContent = "Retry";
    button.addEventListener("click", retry);
    banner.append(detail, button);
    this.root.appendChild(banner);
  }
}

function element(tag: string, className: string, text: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}
