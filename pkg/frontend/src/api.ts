// Typed client for the study backend. Answer submission is idempotent
// on (session, index): a 409 means the answer already landed (e.g. a
// retried request), which callers treat as success.

export type Guess = "human" | "llm";

export interface SessionCreated {
  session_id: string;
  total: number;
}

export interface SessionState {
  session_id: string;
  answered: number;
  total: number;
  done: boolean;
  correct?: number;
}

export interface ArticlePayload {
  session_id: string;
  index: number;
  title: string;
  text: string;
}

export interface AnswerAck {
  status: string;
  answered: number;
  total: number;
  done: boolean;
  correct?: number;
  alreadyAnswered?: boolean;
}

export interface StudyStats {
  participants: number;
  accuracies: number[];
  mean_accuracy?: number;
  reference_human_accuracy: number;
}

export class BackendError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

async function parseJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail = `${response.status}`;
    try {
      const body = (await response.json()) as { error?: string };
      if (body.error) detail = body.error;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new BackendError(detail, response.status);
  }
  return (await response.json()) as T;
}

export class StudyApi {
  constructor(
    private readonly baseUrl: string,
    private readonly retries = 2,
  ) {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  async createSession(): Promise<SessionCreated> {
    const response = await fetch(this.url("/session"), { method: "POST" });
    return parseJson<SessionCreated>(response);
  }

  async sessionState(sessionId: string): Promise<SessionState> {
    const response = await fetch(this.url(`/session/${sessionId}`));
    return parseJson<SessionState>(response);
  }

  async article(sessionId: string, index: number): Promise<ArticlePayload> {
    const response = await fetch(this.url(`/session/${sessionId}/article/${index}`));
    return parseJson<ArticlePayload>(response);
  }

  async answer(sessionId: string, index: number, guess: Guess): Promise<AnswerAck> {
    // retry transport failures with the same idempotent (session, index)
    // key; a 409 on a retry means the first attempt actually landed
    let lastError: unknown;
    for (let attempt = 0; attempt <= this.retries; attempt++) {
      try {
        const response = await fetch(this.url(`/session/${sessionId}/answer`), {
          method: "POST",
          headers: { "Content-Type": "application/json" },
          body: JSON.stringify({ index, guess }),
        });
        if (response.status === 409) {
          return {
            status: "ok",
            answered: -1,
            total: -1,
            done: false,
            alreadyAnswered: true,
          };
        }
        return await parseJson<AnswerAck>(response);
      } catch (error) {
        if (error instanceof BackendError) throw error;
        lastError = error; // network failure: retry
      }
    }
    throw lastError instanceof Error ? lastError : new Error("network failure");
  }

  async stats(): Promise<StudyStats> {
    const response = await fetch(this.url("/stats"));
    return parseJson<StudyStats>(response);
  }
}
