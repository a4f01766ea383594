// User actions (utterances, nav clicks, history replays) run one at a time.
// An action issued while another is in flight waits its turn, FIFO.

export class ActionQueue {
  private tail: Promise<unknown> = Promise.resolve();
  private depth = 0;

  get pending(): number {
    return this.depth;
  }

  enqueue<T>(action: () => Promise<T>): Promise<T> {
    this.depth += 1;
    const run = () => action();
    const result = this.tail.then(run, run);
    this.tail = result
      .catch(() => undefined)
      .finally(() => {
        this.depth -= 1;
      });
    return result;
  }
}
