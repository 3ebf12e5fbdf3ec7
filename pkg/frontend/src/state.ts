// Pure session state machine: reading -> reading (x4) -> finished.
// The index only advances after a successful answer submission, and no
// label information ever enters this state.

import type { AnswerAck, SessionState } from "./api.js";

export type Phase = "reading" | "finished";

export interface UiSessionState {
  sessionId: string;
  index: number; // 0-based article position
  total: number;
  phase: Phase;
  correct?: number; // revealed by the backend once the session completes
}

export function freshSession(sessionId: string, total: number): UiSessionState {
  return { sessionId, index: 0, total, phase: "reading" };
}

export function resumedSession(state: SessionState): UiSessionState {
  if (state.done) {
    return {
      sessionId: state.session_id,
      index: state.total,
      total: state.total,
      phase: "finished",
      correct: state.correct,
    };
  }
  return {
    sessionId: state.session_id,
    index: state.answered,
    total: state.total,
    phase: "reading",
  };
}

export function afterAnswer(state: UiSessionState, ack: AnswerAck): UiSessionState {
  if (state.phase !== "reading") {
    throw new Error("answer submitted outside the reading phase");
  }
  const nextIndex = state.index + 1;
  if (ack.done || nextIndex >= state.total) {
    return { ...state, index: state.total, phase: "finished", correct: ack.correct };
  }
  return { ...state, index: nextIndex };
}
