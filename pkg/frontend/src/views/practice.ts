/** Practice tab: lipshape quiz setup and session, word drill playlist,
 * and the statistics table. */

import { ApiClient, ApiError, SessionPlan, WordRow } from "../api";
import { clear, el, option } from "../dom";
import { audioLabel, dateLabel, resultLabel } from "../format";
import { QuizSession } from "../quiz";

export class PracticeView {
  constructor(
    private api: ApiClient,
    private root: HTMLElement,
  ) {}

  async show(): Promise<void> {
    clear(this.root);
    this.root.append(
      el("h2", { text: "Practice" }),
      el("div", { class: "cards" },
        el("section", { class: "card" },
          el("h3", { text: "Lipshape Practice" }),
          el("p", {
            class: "hint",
            text: "Watch a video and pick which of three words was spoken.",
          }),
          el("div", { class: "toolbar" },
            el("button", { onclick: () => void this.showQuizSetup(), text: "Set up" }),
            el("button", { onclick: () => void this.showStats(), text: "View Stats" }),
          ),
        ),
        el("section", { class: "card" },
          el("h3", { text: "Word Practice" }),
          el("p", {
            class: "hint",
            text: "Play every clip of one word in sequence.",
          }),
          el("button", { onclick: () => void this.showDrillSetup(), text: "Set up" }),
        ),
      ),
    );
  }

  // -- lipshape quiz -----------------------------------------------------------

  private async showQuizSetup(): Promise<void> {
    clear(this.root);
    const [shapes, speakers] = await Promise.all([
      this.api.lipshapes(),
      this.api.speakers(),
    ]);

    const shapeSelect = el("select", {});
    for (const shape of shapes) shapeSelect.append(option(shape.name, shape.name));
    const allShapes = el("input", {
      type: "checkbox",
      onchange: () => (shapeSelect.disabled = allShapes.checked),
    });

    const speakerSelect = el("select", {});
    for (const speaker of speakers) {
      speakerSelect.append(option(String(speaker.id), speaker.name));
    }
    const allSpeakers = el("input", {
      type: "checkbox",
      checked: true,
      onchange: () => (speakerSelect.disabled = allSpeakers.checked),
    });
    speakerSelect.disabled = true;

    const audioSlider = el("input", { type: "range", min: "0", max: "1", value: "1" });
    const audioText = el("span", { text: audioLabel(true) });
    audioSlider.addEventListener("input", () => {
      audioText.textContent = audioLabel(audioSlider.value === "1");
    });

    const trialsInput = el("input", {
      type: "number",
      min: "1",
      max: "10",
      value: "10",
    });
    const feedback = el("div", { class: "error", role: "alert" });

    this.root.append(
      el("div", { class: "title-strip" },
        el("button", { class: "back", onclick: () => void this.show(), text: "←" }),
        el("h2", { text: "Lipshape Practice Setup" }),
      ),
      el("div", { class: "form-grid" },
        el("label", { text: "Lipshape " }, shapeSelect),
        el("label", {}, allShapes, " All Lipshapes"),
        el("label", { text: "Speaker " }, speakerSelect),
        el("label", {}, allSpeakers, " All Speakers"),
        el("label", { text: "Audio " }, audioSlider, audioText),
        el("label", { text: "Trials (1–10) " }, trialsInput),
      ),
      el("button", {
        class: "primary",
        onclick: async () => {
          feedback.textContent = "";
          try {
            const plan = await this.api.startLipshapeSession({
              lipshape: allShapes.checked ? null : shapeSelect.value,
              speaker: allSpeakers.checked ? null : Number(speakerSelect.value),
              audio: audioSlider.value === "1",
              trials: Number(trialsInput.value),
            });
            this.runQuiz(plan);
          } catch (error) {
            feedback.textContent =
              error instanceof ApiError
                ? `${error.message} [${error.code}]`
                : String(error);
          }
        },
        text: "▶ Play",
      }),
      feedback,
    );
  }

  private runQuiz(plan: SessionPlan): void {
    const quiz = new QuizSession(plan.trials);
    this.renderTrial(plan, quiz);
  }

  private renderTrial(plan: SessionPlan, quiz: QuizSession): void {
    clear(this.root);
    if (quiz.phase === "finished") {
      void this.finishQuiz(plan, quiz);
      return;
    }
    const trial = quiz.current();
    const video = el("video", {
      src: this.api.mediaUrl(trial.video_id),
      autoplay: true,
      playsinline: true,
    });
    video.muted = !plan.audio; // audio-off mutes playback client-side

    const progress = el("progress", {
      max: String(quiz.total),
      value: String(quiz.trialNumber - 1),
    });
    const indicator = el("span", {
      class: "progress-text",
      text: `Trial ${quiz.trialNumber} of ${quiz.total}`,
    });

    const feedback = el("div", { class: "error", role: "alert" });
    const buttons = trial.choices.map((choice) =>
      el("button", { class: "choice", text: choice }),
    );
    for (const button of buttons) {
      button.addEventListener("click", async () => {
        if (!quiz.canAnswer()) return;
        buttons.forEach((b) => (b.disabled = true)); // one answer per trial
        try {
          const outcome = await this.api.answer(
            plan.session_id,
            trial.index,
            button.textContent ?? "",
          );
          quiz.recordAnswer(outcome, button.textContent ?? "");
          this.renderResultCard(plan, quiz);
        } catch (error) {
          feedback.textContent =
            error instanceof ApiError
              ? `${error.message} [${error.code}]`
              : String(error);
          buttons.forEach((b) => (b.disabled = false));
        }
      });
    }

    this.root.append(
      el("h2", { text: `Lipshape Practice — ${plan.lipshapes}` }),
      el("div", { class: "progress-row" }, progress, indicator),
      el("div", { class: "player" },
        video,
        el("button", { onclick: () => void video.play(), text: "▶ Replay" }),
      ),
      el("div", { class: "choices" }, ...buttons),
      feedback,
    );
  }

  private renderResultCard(plan: SessionPlan, quiz: QuizSession): void {
    clear(this.root);
    const result = quiz.lastResult();
    if (!result) return;
    this.root.append(
      el("div", { class: `result-card ${result.correct ? "correct" : "incorrect"}` },
        el("h2", { text: result.correct ? "Correct!" : "Incorrect" }),
        result.correct
          ? el("p", { text: `"${result.chosenWord}" was right.` })
          : el("p", {
              text: `You chose "${result.chosenWord}" — the word was "${result.correctWord}".`,
            }),
        el("button", {
          class: "primary",
          onclick: () => {
            quiz.advance();
            this.renderTrial(plan, quiz);
          },
          text: quiz.answeredCount < quiz.total ? "Next video" : "See results",
        }),
      ),
    );
  }

  private async finishQuiz(plan: SessionPlan, quiz: QuizSession): Promise<void> {
    clear(this.root);
    try {
      const record = await this.api.finish(plan.session_id);
      const table = el("table", { class: "results" },
        el("thead", {},
          el("tr", {},
            el("th", { text: "#" }),
            el("th", { text: "Correct answer" }),
            el("th", { text: "Your answer" }),
            el("th", { text: "Result" }),
          ),
        ),
      );
      const body = el("tbody", {});
      for (const trial of record.trials) {
        body.append(
          el("tr", {},
            el("td", { text: String(trial.index + 1) }),
            el("td", { text: trial.correct_word }),
            el("td", { text: trial.chosen_word }),
            el("td", { text: trial.correct ? "✓" : "✕" }),
          ),
        );
      }
      table.append(body);
      this.root.append(
        el("h2", { text: "Session results" }),
        el("p", {
          text: `${resultLabel(record.n_correct, record.n_correct + record.n_incorrect)} correct · ${record.lipshapes} · ${record.speakers} · ${audioLabel(record.audio)}`,
        }),
        table,
        el("div", { class: "toolbar" },
          el("button", { onclick: () => void this.show(), text: "Done" }),
          el("button", { onclick: () => void this.showStats(), text: "View Stats" }),
        ),
      );
    } catch (error) {
      this.root.append(
        el("div", { class: "error", text: String(error) }),
        el("button", { onclick: () => void this.show(), text: "Back" }),
      );
    }
  }

  // -- statistics ---------------------------------------------------------------

  private async showStats(): Promise<void> {
    clear(this.root);
    const stats = await this.api.stats();
    const table = el("table", { class: "results" },
      el("thead", {},
        el("tr", {},
          el("th", { text: "Date" }),
          el("th", { text: "Speakers" }),
          el("th", { text: "Lipshapes" }),
          el("th", { text: "Audio" }),
          el("th", { text: "Result" }),
        ),
      ),
    );
    const body = el("tbody", {});
    for (const row of stats.rows) {
      body.append(
        el("tr", {},
          el("td", { text: dateLabel(row.date) }),
          el("td", { text: row.speakers }),
          el("td", { text: row.lipshapes }),
          el("td", { text: row.audio ? "on" : "off" }),
          el("td", {
            text: resultLabel(row.n_correct, row.n_correct + row.n_incorrect),
          }),
        ),
      );
    }
    table.append(body);
    this.root.append(
      el("div", { class: "title-strip" },
        el("button", { class: "back", onclick: () => void this.show(), text: "←" }),
        el("h2", { text: "Statistics" }),
      ),
      table,
      el("p", {
        text:
          `${stats.totals.n_sessions} sessions · ${stats.totals.n_trials} trials · ` +
          `${stats.totals.n_correct} correct · ${stats.totals.n_incorrect} incorrect`,
      }),
    );
  }

  // -- word drill ----------------------------------------------------------------

  private async showDrillSetup(): Promise<void> {
    clear(this.root);
    const shapes = await this.api.lipshapes();
    const words: WordRow[] = [];
    for (const shape of shapes) words.push(...(await this.api.words(shape.id)));
    const speakers = await this.api.speakers();

    const wordSelect = el("select", {});
    for (const word of words) {
      wordSelect.append(option(word.text, `${word.text} (${word.lipshape})`));
    }
    const speakerSelect = el("select", {});
    for (const speaker of speakers) {
      speakerSelect.append(option(String(speaker.id), speaker.name));
    }
    const allSpeakers = el("input", {
      type: "checkbox",
      checked: true,
      onchange: () => (speakerSelect.disabled = allSpeakers.checked),
    });
    speakerSelect.disabled = true;
    const audioSlider = el("input", { type: "range", min: "0", max: "1", value: "1" });
    const audioText = el("span", { text: audioLabel(true) });
    audioSlider.addEventListener("input", () => {
      audioText.textContent = audioLabel(audioSlider.value === "1");
    });
    const feedback = el("div", { class: "error", role: "alert" });

    this.root.append(
      el("div", { class: "title-strip" },
        el("button", { class: "back", onclick: () => void this.show(), text: "←" }),
        el("h2", { text: "Word Practice Setup" }),
      ),
      el("div", { class: "form-grid" },
        el("label", { text: "Word " }, wordSelect),
        el("label", { text: "Speaker " }, speakerSelect),
        el("label", {}, allSpeakers, " All Speakers"),
        el("label", { text: "Audio " }, audioSlider, audioText),
      ),
      el("button", {
        class: "primary",
        onclick: async () => {
          feedback.textContent = "";
          try {
            const playlist = await this.api.wordSession(
              wordSelect.value,
              allSpeakers.checked ? null : Number(speakerSelect.value),
              audioSlider.value === "1",
            );
            this.runDrill(playlist.word, playlist.video_ids, playlist.audio);
          } catch (error) {
            feedback.textContent =
              error instanceof ApiError
                ? `${error.message} [${error.code}]`
                : String(error);
          }
        },
        text: "▶ Play",
      }),
      feedback,
    );
  }

  private runDrill(word: string, videoIds: number[], audio: boolean, at = 0): void {
    clear(this.root);
    const video = el("video", {
      src: this.api.mediaUrl(videoIds[at]),
      autoplay: true,
      playsinline: true,
    });
    video.muted = !audio;
    const last = at + 1 >= videoIds.length;
    this.root.append(
      el("h2", { text: `Word Practice — ${word}` }),
      el("div", { class: "progress-row" },
        el("progress", { max: String(videoIds.length), value: String(at) }),
        el("span", { class: "progress-text", text: `Video ${at + 1} of ${videoIds.length}` }),
      ),
      el("div", { class: "player" },
        video,
        el("button", { onclick: () => void video.play(), text: "▶ Replay" }),
      ),
      el("button", {
        class: "primary",
        onclick: () =>
          last ? void this.show() : this.runDrill(word, videoIds, audio, at + 1),
        text: last ? "Done" : "Next video",
      }),
    );
  }
}
