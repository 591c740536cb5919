/** Library tab: lipshape list -> word list -> word videos, the add-word
 * form with inline validation messages, cascade-warned deletes, the
 * recorder flow, and the full video library with retagging. */

import { ApiClient, ApiError, LipshapeRow, SpeakerRow, WordRow } from "../api";
import { clear, el, option } from "../dom";
import { countLabel, violationText } from "../format";
import { CameraRecorder } from "../recorder";

export class LibraryView {
  constructor(
    private api: ApiClient,
    private root: HTMLElement,
  ) {}

  async show(): Promise<void> {
    clear(this.root);
    const shapes = await this.api.lipshapes();
    const list = el("ul", { class: "rows" });
    for (const shape of shapes) {
      list.append(
        el(
          "li",
          {
            class: "row clickable",
            onclick: () => void this.showWords(shape),
          },
          el("div", { class: "row-title", text: shape.name }),
          el("div", {
            class: "row-subtitle",
            text: countLabel(shape.word_count, "word"),
          }),
        ),
      );
    }
    this.root.append(
      el("h2", { text: "Lipshapes" }),
      list,
      el("div", { class: "toolbar" },
        el("button", {
          "data-mutates": true,
          onclick: () => void this.showRecorder(),
          text: "Record Video",
        }),
        el("button", {
          onclick: () => void this.showVideoLibrary(),
          text: "Video Library",
        }),
      ),
    );
  }

  private async showWords(shape: LipshapeRow): Promise<void> {
    clear(this.root);
    const words = await this.api.words(shape.id);
    const list = el("ul", { class: "rows" });
    for (const word of words) {
      list.append(this.wordRow(shape, word));
    }

    const input = el("input", {
      type: "text",
      placeholder: `Add a word starting with ${shape.phonemes.join(", ")}`,
    });
    const feedback = el("div", { class: "error", role: "alert" });
    const form = el(
      "form",
      {
        class: "inline-form",
        onsubmit: (event: Event) => {
          event.preventDefault();
          void submit();
        },
      },
      input,
      el("button", { type: "submit", "data-mutates": true, text: "+" }),
    );
    const submit = async () => {
      feedback.textContent = "";
      try {
        await this.api.addWord(shape.name, input.value);
        await this.showWords(shape);
      } catch (error) {
        if (error instanceof ApiError && error.details?.length) {
          feedback.textContent = error.details.map(violationText).join("; ");
        } else {
          feedback.textContent = describe(error);
        }
      }
    };

    this.root.append(
      el("div", { class: "title-strip" },
        el("button", { class: "back", onclick: () => void this.show(), text: "←" }),
        el("h2", { text: shape.name }),
      ),
      list,
      form,
      feedback,
    );
  }

  private wordRow(shape: LipshapeRow, word: WordRow): HTMLElement {
    return el(
      "li",
      { class: "row" },
      el(
        "div",
        { class: "row-main clickable", onclick: () => void this.showWordVideos(shape, word) },
        el("div", { class: "row-title", text: word.text }),
        el("div", {
          class: "row-subtitle",
          text: countLabel(word.video_count, "video"),
        }),
      ),
      el("button", {
        class: "danger",
        "data-mutates": true,
        onclick: () => void this.deleteWord(shape, word),
        text: "Delete",
      }),
    );
  }

  private async deleteWord(shape: LipshapeRow, word: WordRow): Promise<void> {
    const ok = window.confirm(
      `Delete "${word.text}"? All ${word.video_count} video(s) of this word will be deleted as well.`,
    );
    if (!ok) return;
    await this.api.deleteWord(word.id);
    await this.showWords(shape);
  }

  private async showWordVideos(shape: LipshapeRow, word: WordRow): Promise<void> {
    clear(this.root);
    const videos = await this.api.videos({ word: word.id });
    const container = el("div", { class: "video-grid" });
    for (const video of videos) {
      container.append(
        el("figure", { class: "video-card" },
          el("video", {
            src: this.api.mediaUrl(video.id),
            controls: true,
            preload: "metadata",
          }),
          el("figcaption", {
            text: `${video.word} · ${video.lipshape} · ${video.speaker}`,
          }),
        ),
      );
    }
    if (!videos.length) {
      container.append(el("p", { class: "hint", text: "No videos recorded yet." }));
    }
    this.root.append(
      el("div", { class: "title-strip" },
        el("button", {
          class: "back",
          onclick: () => void this.showWords(shape),
          text: "←",
        }),
        el("h2", { text: word.text }),
      ),
      container,
    );
  }

  // -- recorder flow ---------------------------------------------------------

  private async showRecorder(): Promise<void> {
    clear(this.root);
    const [shapes, speakers] = await Promise.all([
      this.api.lipshapes(),
      this.api.speakers(),
    ]);
    if (!speakers.length) {
      this.root.append(
        el("p", { class: "hint", text: "Add a speaker first (Speakers tab)." }),
        el("button", { onclick: () => void this.show(), text: "Back" }),
      );
      return;
    }

    const wordSelect = el("select", { class: "word-select" });
    const refreshWords = async (lipshapeId: number) => {
      clear(wordSelect);
      for (const word of await this.api.words(lipshapeId)) {
        wordSelect.append(option(String(word.id), word.text));
      }
    };
    const shapeSelect = el("select", {
      onchange: () => void refreshWords(Number(shapeSelect.value)),
    });
    for (const shape of shapes) {
      shapeSelect.append(option(String(shape.id), shape.name));
    }
    await refreshWords(shapes[0].id);

    const speakerSelect = el("select", {});
    for (const speaker of speakers as SpeakerRow[]) {
      speakerSelect.append(option(String(speaker.id), speaker.name));
    }

    const preview = el("video", { class: "preview", playsinline: true });
    const wordOverlay = el("div", { class: "word-overlay" });
    const status = el("div", { class: "hint" });
    const feedback = el("div", { class: "error", role: "alert" });

    const recorder = new CameraRecorder();
    let clip: Blob | null = null;

    const recordButton = el("button", { "data-mutates": true, text: "● Record" });
    const acceptButton = el("button", { "data-mutates": true, text: "✓ Save", disabled: true });
    const rejectButton = el("button", { text: "✕ Discard", disabled: true });

    recordButton.addEventListener("click", async () => {
      feedback.textContent = "";
      try {
        if (!recorder.recording) {
          recorder.record();
          const selected = wordSelect.selectedOptions[0];
          wordOverlay.textContent = selected ? selected.textContent : "";
          recordButton.textContent = "■ Stop";
          status.textContent = "Recording…";
        } else {
          clip = await recorder.stop();
          wordOverlay.textContent = "";
          recordButton.textContent = "● Record";
          status.textContent = "Review the clip, then save or discard.";
          acceptButton.disabled = false;
          rejectButton.disabled = false;
        }
      } catch (error) {
        feedback.textContent = describe(error);
      }
    });

    acceptButton.addEventListener("click", async () => {
      if (!clip) return;
      feedback.textContent = "";
      try {
        await this.api.uploadVideo(
          Number(wordSelect.value),
          Number(speakerSelect.value),
          clip,
          true,
        );
        clip = null;
        acceptButton.disabled = true;
        rejectButton.disabled = true;
        status.textContent = "Saved. Record another or go back.";
      } catch (error) {
        feedback.textContent = describe(error);
      }
    });

    rejectButton.addEventListener("click", () => {
      clip = null;
      acceptButton.disabled = true;
      rejectButton.disabled = true;
      status.textContent = "Discarded.";
    });

    this.root.append(
      el("div", { class: "title-strip" },
        el("button", {
          class: "back",
          onclick: () => {
            recorder.dispose();
            void this.show();
          },
          text: "←",
        }),
        el("h2", { text: "Record Video" }),
      ),
      el("p", {
        class: "hint",
        text:
          "Hold the camera at the speaker's head height, face on. " +
          "Ask the speaker to start with their mouth closed, then say the word naturally.",
      }),
      el("div", { class: "form-grid" },
        el("label", { text: "Lipshape " }, shapeSelect),
        el("label", { text: "Word " }, wordSelect),
        el("label", { text: "Speaker " }, speakerSelect),
      ),
      el("div", { class: "preview-frame" }, preview, wordOverlay),
      el("div", { class: "toolbar" }, recordButton, acceptButton, rejectButton),
      status,
      feedback,
    );

    if (!CameraRecorder.isSupported()) {
      status.textContent = "Camera capture is not supported in this browser.";
      recordButton.disabled = true;
      return;
    }
    try {
      await recorder.start(preview);
      status.textContent = "Camera ready.";
    } catch (error) {
      status.textContent = `Camera unavailable: ${describe(error)}`;
      recordButton.disabled = true;
    }
  }

  // -- video library ----------------------------------------------------------

  private async showVideoLibrary(): Promise<void> {
    clear(this.root);
    const [videos, words, speakers] = await Promise.all([
      this.api.videos(),
      this.api.lipshapes().then(async (shapes) => {
        const all: WordRow[] = [];
        for (const shape of shapes) all.push(...(await this.api.words(shape.id)));
        return all;
      }),
      this.api.speakers(),
    ]);
    const container = el("div", { class: "video-grid" });
    for (const video of videos) {
      const wordSelect = el("select", {});
      for (const word of words) {
        const opt = option(String(word.id), `${word.text} (${word.lipshape})`);
        if (word.id === video.word_id) opt.selected = true;
        wordSelect.append(opt);
      }
      const speakerSelect = el("select", {});
      for (const speaker of speakers) {
        const opt = option(String(speaker.id), speaker.name);
        if (speaker.id === video.speaker_id) opt.selected = true;
        speakerSelect.append(opt);
      }
      const feedback = el("div", { class: "error" });
      container.append(
        el("figure", { class: "video-card" },
          el("video", {
            src: this.api.mediaUrl(video.id),
            controls: true,
            preload: "metadata",
          }),
          el("figcaption", {
            text: `${video.word} · ${video.lipshape} · ${video.speaker}`,
          }),
          el("div", { class: "toolbar" },
            wordSelect,
            speakerSelect,
            el("button", {
              "data-mutates": true,
              onclick: async () => {
                feedback.textContent = "";
                try {
                  await this.api.retagVideo(video.id, {
                    word_id: Number(wordSelect.value),
                    speaker_id: Number(speakerSelect.value),
                  });
                  await this.showVideoLibrary();
                } catch (error) {
                  feedback.textContent = describe(error);
                }
              },
              text: "Save tags",
            }),
            el("button", {
              class: "danger",
              "data-mutates": true,
              onclick: async () => {
                if (!window.confirm("Delete this video?")) return;
                await this.api.deleteVideo(video.id);
                await this.showVideoLibrary();
              },
              text: "Delete",
            }),
          ),
          feedback,
        ),
      );
    }
    if (!videos.length) {
      container.append(el("p", { class: "hint", text: "No videos in the library." }));
    }
    this.root.append(
      el("div", { class: "title-strip" },
        el("button", { class: "back", onclick: () => void this.show(), text: "←" }),
        el("h2", { text: "Video Library" }),
      ),
      container,
    );
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiError) return `${error.message} [${error.code}]`;
  return error instanceof Error ? error.message : String(error);
}
