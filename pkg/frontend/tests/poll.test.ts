import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { Poller } from "../src/poll.js";

describe("Poller", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("refreshes immediately and then on the interval", async () => {
    let calls = 0;
    const poller = new Poller(async () => {
      calls += 1;
    }, 2000);
    poller.start();
    await vi.advanceTimersByTimeAsync(0);
    expect(calls).toBe(1);
    await vi.advanceTimersByTimeAsync(4100);
    expect(calls).toBe(3);
    poller.stop();
  });

  it("never overlaps slow refreshes", async () => {
    let inFlight = 0;
    let maxInFlight = 0;
    const poller = new Poller(async () => {
      inFlight += 1;
      maxInFlight = Math.max(maxInFlight, inFlight);
      await new Promise((resolve) => setTimeout(resolve, 5000)); // slower than interval
      inFlight -= 1;
    }, 2000);
    poller.start();
    await vi.advanceTimersByTimeAsync(20000);
    poller.stop();
    expect(maxInFlight).toBe(1);
  });

  it("keeps polling through refresh failures", async () => {
    let calls = 0;
    const poller = new Poller(async () => {
      calls += 1;
      throw new Error("transient");
    }, 2000);
    poller.start();
    await vi.advanceTimersByTimeAsync(4100);
    poller.stop();
    expect(calls).toBe(3);
  });

  it("stops cleanly", async () => {
    let calls = 0;
    const poller = new Poller(async () => {
      calls += 1;
    }, 2000);
    poller.start();
    await vi.advanceTimersByTimeAsync(0);
    poller.stop();
    await vi.advanceTimersByTimeAsync(10000);
    expect(calls).toBe(1);
  });
});
