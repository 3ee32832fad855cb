/** Transient notifications; conflict toasts carry a retry button so a
 * 409 (another writer holds the twin) is one click to resubmit. */

import { el } from "./dom.js";

export class ToastHost {
  readonly root: HTMLElement;

  constructor() {
    this.root = el("div", { class: "toast-host" });
  }

  show(message: string, timeoutMs = 4000): void {
    const toast = el("div", { class: "toast" }, [message]);
    this.root.append(toast);
    setTimeout(() => toast.remove(), timeoutMs);
  }

  showRetry(message: string, retry: () => void, timeoutMs = 8000): void {
    const button = el("button", { class: "toast-retry" }, ["Retry"]);
    const toast = el("div", { class: "toast toast-conflict" }, [message, button]);
    button.addEventListener("click", () => {
      toast.remove();
      retry();
    });
    this.root.append(toast);
    setTimeout(() => toast.remove(), timeoutMs);
  }
}
