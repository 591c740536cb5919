/** Speakers tab: list with video counts, the consent-gated add dialog,
 * and speaker detail with cascade delete. */

import { ApiClient, ApiError, SpeakerRow } from "../api";
import { clear, el } from "../dom";
import { countLabel } from "../format";

const CONSENT_ITEMS: Array<{ key: keyof ConsentFlags; label: string }> = [
  {
    key: "informed_about_project",
    label: "The speaker has been informed about this practice project.",
  },
  {
    key: "data_use",
    label: "The speaker consents to their data being stored on this device.",
  },
  {
    key: "video_use",
    label: "The speaker consents to their videos being used for practice.",
  },
];

interface ConsentFlags {
  informed_about_project: boolean;
  data_use: boolean;
  video_use: boolean;
}

export class SpeakersView {
  constructor(
    private api: ApiClient,
    private root: HTMLElement,
  ) {}

  async show(): Promise<void> {
    clear(this.root);
    const speakers = await this.api.speakers();
    const list = el("ul", { class: "rows" });
    for (const speaker of speakers) {
      list.append(
        el(
          "li",
          { class: "row clickable", onclick: () => void this.showDetail(speaker) },
          el("div", { class: "row-title", text: speaker.name }),
          el("div", {
            class: "row-subtitle",
            text: countLabel(speaker.video_count, "video"),
          }),
        ),
      );
    }
    if (!speakers.length) {
      list.append(el("p", { class: "hint", text: "No speakers yet." }));
    }
    this.root.append(
      el("h2", { text: "Speakers" }),
      list,
      el("button", {
        "data-mutates": true,
        onclick: () => this.showAddForm(),
        text: "+ Add Speaker",
      }),
    );
  }

  private showAddForm(): void {
    clear(this.root);
    const first = el("input", { type: "text", placeholder: "First name" });
    const last = el("input", { type: "text", placeholder: "Last name" });
    const feedback = el("div", { class: "error", role: "alert" });

    this.root.append(
      el("div", { class: "title-strip" },
        el("button", { class: "back", onclick: () => void this.show(), text: "←" }),
        el("h2", { text: "Add Speaker" }),
      ),
      el("div", { class: "form-grid" },
        el("label", { text: "First name " }, first),
        el("label", { text: "Last name " }, last),
      ),
      el("button", {
        "data-mutates": true,
        onclick: () => {
          if (!first.value.trim() || !last.value.trim()) {
            feedback.textContent = "Both names are required.";
            return;
          }
          this.showConsentDialog(first.value.trim(), last.value.trim());
        },
        text: "Submit",
      }),
      feedback,
    );
  }

  /** All boxes must be checked; otherwise adding the speaker is cancelled. */
  private showConsentDialog(firstName: string, lastName: string): void {
    clear(this.root);
    const boxes = new Map<keyof ConsentFlags, HTMLInputElement>();
    const items = el("div", { class: "consent-list" });
    for (const item of CONSENT_ITEMS) {
      const box = el("input", { type: "checkbox" });
      boxes.set(item.key, box);
      items.append(el("label", { class: "consent-item" }, box, item.label));
    }
    const feedback = el("div", { class: "error", role: "alert" });

    this.root.append(
      el("h2", { text: `Consent — ${firstName} ${lastName}` }),
      el("p", {
        class: "hint",
        text: "This device records videos of the speaker for speechreading practice.",
      }),
      items,
      el("div", { class: "toolbar" },
        el("button", {
          "data-mutates": true,
          onclick: async () => {
            feedback.textContent = "";
            const consent = {
              informed_about_project: boxes.get("informed_about_project")!.checked,
              data_use: boxes.get("data_use")!.checked,
              video_use: boxes.get("video_use")!.checked,
            };
            try {
              await this.api.addSpeaker(firstName, lastName, consent);
              await this.show();
            } catch (error) {
              if (error instanceof ApiError && error.code === "consent-incomplete") {
                feedback.textContent =
                  "Adding the speaker is cancelled: all boxes must be accepted.";
              } else {
                feedback.textContent =
                  error instanceof Error ? error.message : String(error);
              }
            }
          },
          text: "Accept",
        }),
        el("button", {
          onclick: () => void this.show(),
          text: "Cancel",
        }),
      ),
      feedback,
    );
  }

  private async showDetail(speaker: SpeakerRow): Promise<void> {
    clear(this.root);
    const videos = await this.api.videos({ speaker: speaker.id });
    const grid = el("div", { class: "video-grid" });
    for (const video of videos) {
      grid.append(
        el("figure", { class: "video-card" },
          el("video", {
            src: this.api.mediaUrl(video.id),
            controls: true,
            preload: "metadata",
          }),
          el("figcaption", { text: `${video.word} · ${video.lipshape}` }),
        ),
      );
    }
    this.root.append(
      el("div", { class: "title-strip" },
        el("button", { class: "back", onclick: () => void this.show(), text: "←" }),
        el("h2", { text: speaker.name }),
      ),
      el("p", { text: countLabel(videos.length, "video") }),
      el("button", {
        class: "danger",
        "data-mutates": true,
        onclick: async () => {
          const ok = window.confirm(
            `Delete ${speaker.name}? All ${videos.length} video(s) of this speaker will be deleted as well.`,
          );
          if (!ok) return;
          await this.api.deleteSpeaker(speaker.id);
          await this.show();
        },
        text: "Delete Speaker",
      }),
      grid,
    );
  }
}
