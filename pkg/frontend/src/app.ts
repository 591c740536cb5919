/** Application shell: tab navigation and online/offline handling.
 *
 * Mutating actions are disabled while offline; every count shown anywhere
 * is fetched from the server, never incremented locally. */

import { ApiClient } from "./api";
import { clear, el } from "./dom";
import { LibraryView } from "./views/library";
import { OverlayView } from "./views/overlay";
import { PracticeView } from "./views/practice";
import { SpeakersView } from "./views/speakers";

type TabName = "Library" | "Speakers" | "Practice" | "Overlay";

const API_BASE =
  new URLSearchParams(window.location.search).get("api") ?? "";

export function startApp(root: HTMLElement): void {
  const api = new ApiClient(API_BASE);
  const content = el("main", { id: "content" });
  const offlineBanner = el("div", {
    class: "offline-banner",
    text: "Offline — changes are disabled until the connection returns.",
  });
  offlineBanner.hidden = true;

  const views: Record<TabName, { show(): Promise<void> }> = {
    Library: new LibraryView(api, content),
    Speakers: new SpeakersView(api, content),
    Practice: new PracticeView(api, content),
    Overlay: new OverlayView(api, content),
  };

  const tabs = el("nav", { class: "tabs" });
  const buttons = new Map<TabName, HTMLButtonElement>();
  for (const name of Object.keys(views) as TabName[]) {
    const button = el("button", {
      class: "tab",
      onclick: () => void activate(name),
      text: name,
    });
    buttons.set(name, button);
    tabs.append(button);
  }

  async function activate(name: TabName): Promise<void> {
    for (const [tab, button] of buttons) {
      button.classList.toggle("active", tab === name);
    }
    clear(content);
    try {
      await views[name].show();
    } catch (error) {
      content.append(
        el("div", { class: "error", text: `Failed to load: ${String(error)}` }),
        el("button", { onclick: () => void activate(name), text: "Retry" }),
      );
    }
    applyOnlineState();
  }

  function applyOnlineState(): void {
    const offline = !navigator.onLine;
    offlineBanner.hidden = !offline;
    for (const node of document.querySelectorAll<HTMLButtonElement>(
      "[data-mutates]",
    )) {
      node.disabled = offline;
    }
  }

  window.addEventListener("online", applyOnlineState);
  window.addEventListener("offline", applyOnlineState);

  clear(root);
  root.append(
    el("header", { class: "app-header" },
      el("h1", { text: "Speechreading Practice" }),
      tabs,
    ),
    offlineBanner,
    content,
  );
  void activate("Library");
}

const rootElement = document.getElementById("app");
if (rootElement) {
  startApp(rootElement);
}
