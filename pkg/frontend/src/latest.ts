/**
 * Newest-wins gate for async responses. Each request takes a ticket;
 * a response is applied only while its ticket is still the latest issued,
 * so out-of-order replies can never overwrite fresher content.
 */
export class LatestGate {
  private latest = 0;

  issue(): number {
    return ++this.latest;
  }

  isCurrent(ticket: number): boolean {
    return ticket === this.latest;
  }
}
