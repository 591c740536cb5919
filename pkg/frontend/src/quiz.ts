/** Pure quiz-session state machine.
 *
 * One trial is live at a time; a trial accepts exactly one answer (buttons
 * are disabled after the first click), then the result card is shown until
 * the user advances. */

import type { AnswerOutcome, PlanTrial } from "./api";

export type QuizPhase = "answering" | "feedback" | "finished";

export interface QuizResultRow {
  index: number;
  videoId: number;
  correctWord: string;
  chosenWord: string;
  correct: boolean;
}

export class QuizSession {
  private answered = new Map<number, QuizResultRow>();
  private position = 0;
  private phase_: QuizPhase;

  constructor(public readonly trials: PlanTrial[]) {
    this.phase_ = trials.length ? "answering" : "finished";
  }

  get phase(): QuizPhase {
    return this.phase_;
  }

  get total(): number {
    return this.trials.length;
  }

  /** 1-based number of the trial on screen, for the progress indicator. */
  get trialNumber(): number {
    return Math.min(this.position + 1, this.total);
  }

  get answeredCount(): number {
    return this.answered.size;
  }

  current(): PlanTrial {
    if (this.phase_ === "finished") {
      throw new Error("session is finished");
    }
    return this.trials[this.position];
  }

  /** Whether answer buttons are live; false once the first click landed. */
  canAnswer(): boolean {
    return this.phase_ === "answering";
  }

  recordAnswer(outcome: AnswerOutcome, chosenWord: string): QuizResultRow {
    if (!this.canAnswer()) {
      throw new Error("trial already answered");
    }
    const trial = this.current();
    if (outcome.index !== trial.index) {
      throw new Error(`answer is for trial ${outcome.index}, not ${trial.index}`);
    }
    const row: QuizResultRow = {
      index: trial.index,
      videoId: trial.video_id,
      correctWord: outcome.correct_word,
      chosenWord,
      correct: outcome.correct,
    };
    this.answered.set(trial.index, row);
    this.phase_ = "feedback";
    return row;
  }

  /** Leave the result card; moves to the next trial or finishes. */
  advance(): void {
    if (this.phase_ !== "feedback") {
      throw new Error("nothing to advance from");
    }
    this.position += 1;
    this.phase_ = this.position >= this.total ? "finished" : "answering";
  }

  lastResult(): QuizResultRow | null {
    if (this.phase_ !== "feedback") return null;
    return this.answered.get(this.trials[this.position].index) ?? null;
  }

  results(): QuizResultRow[] {
    return [...this.answered.values()].sort((a, b) => a.index - b.index);
  }

  correctCount(): number {
    return this.results().filter((r) => r.correct).length;
  }
}
