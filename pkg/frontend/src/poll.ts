/** Fixed-interval poller that never overlaps requests: the next tick is
 * scheduled only after the previous refresh settles. */

export class Poller {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private stopped = true;

  constructor(
    private readonly refresh: () => Promise<void>,
    private readonly intervalMs = 2000,
  ) {}

  start(): void {
    this.stopped = false;
    void this.tick();
  }

  stop(): void {
    this.stopped = true;
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
  }

  private async tick(): Promise<void> {
    if (this.stopped) return;
    try {
      await this.refresh();
    } catch {
      // Transient fetch failures just wait for the next tick.
    }
    if (!this.stopped) {
      this.timer = setTimeout(() => void this.tick(), this.intervalMs);
    }
  }
}
