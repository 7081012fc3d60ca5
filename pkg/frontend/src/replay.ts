// Step through a recorded event range, rebuilding the view with the same
// reducers the live path uses.

import { applyEvent, connectScene, ViewState } from "./state.js";
import type { EventRecord, Mode, SceneDoc } from "./types.js";

export class ReplayController {
  private position = 0;

  constructor(
    private readonly scene: SceneDoc,
    private readonly mode: Mode,
    private readonly events: EventRecord[],
  ) {}

  get length(): number {
    return this.events.length;
  }

  get index(): number {
    return this.position;
  }

  /** View after applying events[0 .. n). */
  viewAt(n: number): ViewState {
    const upto = Math.max(0, Math.min(n, this.events.length));
    let view = connectScene(this.scene, "replay", this.mode);
    for (const event of this.events.slice(0, upto)) {
      view = applyEvent(view, event);
    }
    this.position = upto;
    return view;
  }

  step(delta: number): ViewState {
    return this.viewAt(this.position + delta);
  }
}
