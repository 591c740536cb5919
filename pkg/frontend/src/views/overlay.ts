/** Overlay preview: render the consonant semicircle for a timed
 * transcript, optionally on top of an uploaded video. */

import { ApiClient, ApiError, OverlayDocument } from "../api";
import { clear, el } from "../dom";

const EXAMPLE_TRANSCRIPT = [
  "# start_ms\tend_ms\tword\tphonemes",
  "0\t600\tBat\tB AE T",
  "800\t1400\tFan\tF AE N",
  "1600\t2200\tVan\tV AE N",
  "2400\t3000\tAt\tAE T",
].join("\n");

export class OverlayView {
  private documents: OverlayDocument[] = [];
  private at = 0;
  private videoUrl: string | null = null;

  constructor(
    private api: ApiClient,
    private root: HTMLElement,
  ) {}

  async show(): Promise<void> {
    clear(this.root);
    const transcript = el("textarea", { rows: "6", spellcheck: "false" });
    transcript.value = EXAMPLE_TRANSCRIPT;
    const side = el("select", {});
    side.append(new Option("left of the face", "left", true, true));
    side.append(new Option("right of the face", "right"));
    const fileInput = el("input", { type: "file", accept: "video/*" });
    const feedback = el("div", { class: "error", role: "alert" });
    const stage = el("div", { class: "overlay-stage" });

    fileInput.addEventListener("change", () => {
      const file = fileInput.files?.[0];
      if (this.videoUrl) URL.revokeObjectURL(this.videoUrl);
      this.videoUrl = file ? URL.createObjectURL(file) : null;
      this.renderStage(stage);
    });

    this.root.append(
      el("h2", { text: "Overlay Preview" }),
      el("p", {
        class: "hint",
        text:
          "Paste a timed transcript (tab-separated) and render the consonant " +
          "display. The arrow follows each word's initial consonant and " +
          "persists until the next word.",
      }),
      el("div", { class: "form-grid" },
        el("label", { text: "Transcript " }, transcript),
        el("label", { text: "Placement " }, side),
        el("label", { text: "Video (optional) " }, fileInput),
      ),
      el("button", {
        class: "primary",
        onclick: async () => {
          feedback.textContent = "";
          try {
            const response = await this.api.overlayRender(
              transcript.value,
              { x: 0, y: 0, width: 480, height: 360 },
              side.value as "left" | "right",
            );
            this.documents = response.documents;
            this.at = 0;
            this.renderStage(stage);
          } catch (error) {
            feedback.textContent =
              error instanceof ApiError
                ? `${error.message} [${error.code}]`
                : String(error);
          }
        },
        text: "Render",
      }),
      feedback,
      stage,
    );
    this.renderStage(stage);
  }

  private renderStage(stage: HTMLElement): void {
    clear(stage);
    if (!this.documents.length) {
      stage.append(el("p", { class: "hint", text: "Nothing rendered yet." }));
      return;
    }
    const doc = this.documents[this.at];
    const frame = el("div", { class: "overlay-frame" });
    if (this.videoUrl) {
      const video = el("video", { src: this.videoUrl, playsinline: true });
      video.currentTime = doc.start_ms / 1000;
      frame.append(video);
    }
    const svgHost = el("div", { class: "overlay-svg" });
    svgHost.innerHTML = doc.svg;
    frame.append(svgHost);

    stage.append(
      el("div", { class: "progress-row" },
        el("button", {
          onclick: () => {
            this.at = Math.max(0, this.at - 1);
            this.renderStage(stage);
          },
          disabled: this.at === 0,
          text: "← Prev",
        }),
        el("span", {
          class: "progress-text",
          text:
            `${this.at + 1}/${this.documents.length} · "${doc.word}" ` +
            `(${doc.start_ms}–${doc.end_ms} ms) → ` +
            (doc.target ?? "neutral"),
        }),
        el("button", {
          onclick: () => {
            this.at = Math.min(this.documents.length - 1, this.at + 1);
            this.renderStage(stage);
          },
          disabled: this.at === this.documents.length - 1,
          text: "Next →",
        }),
      ),
      frame,
    );
  }
}
