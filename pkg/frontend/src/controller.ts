/**
 * Orchestration between the panel and the gateway.
 *
 * At most one request is in flight per session: Run and the other
 * mutating actions are no-ops while `panel.pending` is set, which is
 * also what disables the buttons in the view.  After every mutation
 * the trajectory buffer is re-fetched from the gateway, so the
 * display always reproduces exactly what the server recorded —
 * re-fetching an untouched session changes nothing.  A 404 marks the
 * session lost and the view offers to create a fresh one.
 */

import type { CycleReport, GatewayClient } from "./api.js";
import { GatewayError, SessionLostError, restPoint } from "./api.js";
import type { PanelState } from "./panel.js";
import { buildCycleRequest, initialPanel } from "./panel.js";

export class PanelController {
  readonly panel: PanelState;
  private readonly client: GatewayClient;
  private readonly onChange: () => void;

  constructor(client: GatewayClient, onChange: () => void = () => {}) {
    this.client = client;
    this.onChange = onChange;
    this.panel = initialPanel();
  }

  /** Create a fresh session, dropping all local buffers. */
  async newSession(): Promise<void> {
    if (this.panel.pending) return;
    await this.guarded(async () => {
      const { sessionId, state } = await this.client.createSession();
      this.panel.sessionId = sessionId;
      this.panel.sessionLost = false;
      this.panel.state = state;
      this.panel.reports = [];
      this.panel.trajectory = [restPoint()];
    });
  }

  /** Run `cycleCount` cycles under the current panel inputs.
   * Appends exactly that many reports and trajectory points. */
  async run(): Promise<CycleReport[] | null> {
    const sessionId = this.panel.sessionId;
    if (this.panel.pending || sessionId === null) return null;
    let reports: CycleReport[] | null = null;
    await this.guarded(async () => {
      reports = await this.client.runCycles(sessionId, buildCycleRequest(this.panel));
      this.panel.reports.push(...reports);
      await this.pull(sessionId);
    });
    return reports;
  }

  /** Flip one thruster between working and broken. */
  async toggleFault(thruster: string): Promise<void> {
    const sessionId = this.panel.sessionId;
    if (this.panel.pending || sessionId === null) return;
    const broken = !(this.panel.state?.failed ?? []).includes(thruster);
    await this.guarded(async () => {
      this.panel.state = await this.client.setFault(sessionId, thruster, broken);
    });
  }

  /** Back to rest: clears the recorded history on both sides. */
  async reset(): Promise<void> {
    const sessionId = this.panel.sessionId;
    if (this.panel.pending || sessionId === null) return;
    await this.guarded(async () => {
      this.panel.state = await this.client.reset(sessionId);
      this.panel.reports = [];
      this.panel.trajectory = [restPoint()];
    });
  }

  /** Re-fetch state and trajectory; the display must come out
   * identical when nothing ran in between. */
  async refresh(): Promise<void> {
    const sessionId = this.panel.sessionId;
    if (this.panel.pending || sessionId === null) return;
    await this.guarded(() => this.pull(sessionId));
  }

  private async pull(sessionId: string): Promise<void> {
    this.panel.state = await this.client.getState(sessionId);
    this.panel.trajectory = [restPoint(), ...(await this.client.getTrajectory(sessionId))];
  }

  private async guarded(body: () => Promise<void>): Promise<void> {
    this.panel.pending = true;
    this.panel.lastError = null;
    this.onChange();
    try {
      await body();
    } catch (err) {
      if (err instanceof SessionLostError) {
        this.panel.sessionLost = true;
      } else if (err instanceof GatewayError) {
        this.panel.lastError = err.message;
      } else {
        throw err;
      }
    } finally {
      this.panel.pending = false;
      this.onChange();
    }
  }
}
