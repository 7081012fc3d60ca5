"""Batch experiment harness: efficiency timing, intersection accuracy, and
SAME/DIFF success-rate simulations.

Every run is driven by a ScenarioSpec and is deterministic under its seed:
each trial derives its RNG stream from (seed, trial-index), so serial and
parallel execution agree and reports rerun byte-identically (timing values in
the efficiency report are wall-clock and necessarily vary run to run; the
stochastic outputs do not).

Reports embed the generating spec, render as CSV and aligned text, and carry
pass/fail assertions that the CLI turns into a nonzero exit code.
"""

from __future__ import annotations

import io
import json
import os
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import geometry, kernels, world
from .errors import AimTooClose, SpecInvalid, VgpnError
from .language import description_of, load_lexicon, load_templates, parse_command, requires_gesture
from .pipeline import MODE_POINTING_ONLY, MODE_VGPN, Pipeline, timing_summary

KINDS = ("efficiency", "accuracy", "samediff")
PRESET_SCENES = ("unique_door", "diff_pair", "same_pair", "accuracy_room",
                 "playground")
DEFAULT_BINS = (2.0, 3.0)  # near <= 2 < middle <= 3 < far

#: default aim offsets (relative to the user) covering the three bins:
#: two near, two middle, one far
DEFAULT_TARGET_OFFSETS = ((1.2, 0.0), (0.0, 1.8), (2.5, 0.0), (2.0, 1.5),
                          (4.5, 0.0))


def resolve_scene_ref(ref: str) -> str:
    """A scene reference is a file path or a packaged preset name."""
    if os.path.exists(ref):
        return ref
    if ref in PRESET_SCENES:
        return str(resources.files("vgpn.data").joinpath(f"scenes/{ref}.json"))
    raise SpecInvalid(f"scene {ref!r} is neither a file nor a preset "
                      f"(presets: {', '.join(PRESET_SCENES)})")


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent per-trial stream derived from (seed, trial-index)."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed,
                                                        spawn_key=(trial,)))


@dataclass(frozen=True)
class ScenarioSpec:
    kind: str
    scene: str
    trials: int = 100
    seed: int = 2024
    command: str = "go to that door"
    sigma: float = 0.01          # keypoint noise, meters
    aim_sigma: float = 0.25      # aim-bias spread, meters (samediff)
    bins: tuple[float, float] = DEFAULT_BINS
    targets: tuple[tuple[float, float], ...] = ()   # accuracy aim points
    target_object_id: str = ""       # samediff: intended object
    distractor_object_id: str = ""   # samediff: aim bias center

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpecInvalid(f"unknown scenario kind {self.kind!r}")
        if self.trials < 1:
            raise SpecInvalid("trials must be >= 1")
        if self.sigma < 0 or self.aim_sigma < 0:
            raise SpecInvalid("noise sigmas must be >= 0")
        if not (0 < self.bins[0] < self.bins[1]):
            raise SpecInvalid("bins must satisfy 0 < near < middle")

    def to_doc(self) -> dict:
        return {
            "kind": self.kind,
            "scene": self.scene,
            "trials": self.trials,
            "seed": self.seed,
            "command": self.command,
            "sigma": self.sigma,
            "aim_sigma": self.aim_sigma,
            "bins": list(self.bins),
            "targets": [list(t) for t in self.targets],
            "target_object_id": self.target_object_id,
            "distractor_object_id": self.distractor_object_id,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "ScenarioSpec":
        if not isinstance(doc, dict) or "kind" not in doc or "scene" not in doc:
            raise SpecInvalid("scenario document needs 'kind' and 'scene'")
        known = {"kind", "scene", "trials", "seed", "command", "sigma",
                 "aim_sigma", "bins", "targets", "target_object_id",
                 "distractor_object_id"}
        unknown = set(doc) - known
        if unknown:
            raise SpecInvalid(f"unknown scenario keys: {sorted(unknown)}")
        kwargs = dict(doc)
        if "bins" in kwargs:
            kwargs["bins"] = tuple(float(b) for b in kwargs["bins"])
        if "targets" in kwargs:
            kwargs["targets"] = tuple((float(x), float(y))
                                      for x, y in kwargs["targets"])
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise SpecInvalid(str(exc)) from None


def load_scenario(path: str) -> ScenarioSpec:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecInvalid(f"invalid scenario JSON: {exc}") from None
    return ScenarioSpec.from_doc(doc)


# --- reports -------------------------------------------------------------------

@dataclass(frozen=True)
class Assertion:
    name: str
    ok: bool
    detail: str


@dataclass
class Report:
    kind: str
    spec: ScenarioSpec
    header: list[str] = field(default_factory=list)
    rows: list[list[str]] = field(default_factory=list)
    assertions: list[Assertion] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(a.ok for a in self.assertions)

    def provenance(self) -> str:
        return json.dumps(self.spec.to_doc(), sort_keys=True,
                          separators=(",", ":"))

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# vgpn {self.kind} report\n")
        buf.write(f"# spec: {self.provenance()}\n")
        buf.write(",".join(self.header) + "\n")
        for row in self.rows:
            buf.write(",".join(row) + "\n")
        return buf.getvalue()

    def to_text(self) -> str:
        widths = [len(h) for h in self.header]
        for row in self.rows:
            widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
        lines = [f"vgpn {self.kind} report",
                 f"spec: {self.provenance()}", ""]
        fmt = "  ".join(f"{{:<{w}}}" for w in widths)
        lines.append(fmt.format(*self.header))
        lines.append("  ".join("-" * w for w in widths))
        for row in self.rows:
            lines.append(fmt.format(*row))
        if self.assertions:
            lines.append("")
            for a in self.assertions:
                lines.append(f"[{'PASS' if a.ok else 'FAIL'}] {a.name}: {a.detail}")
        return "\n".join(lines) + "\n"

    def write(self, out_dir: str) -> list[str]:
        os.makedirs(out_dir, exist_ok=True)
        paths = []
        for ext, text in (("csv", self.to_csv()), ("txt", self.to_text())):
            path = os.path.join(out_dir, f"{self.kind}.{ext}")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
            paths.append(path)
        return paths


def _fmt(value: float) -> str:
    return f"{value:.6f}"


# --- efficiency ------------------------------------------------------------------

def run_efficiency(spec: ScenarioSpec) -> Report:
    """Time both modes on a command whose gesture is skippable.

    The command must not require a gesture in the scene; the vgpn rows then
    show t2 identically zero, and mean total time below the forced-gesture
    (pointing-only) mode on the same machine.
    """
    if spec.kind != "efficiency":
        raise SpecInvalid("spec kind must be 'efficiency'")
    scene = world.load_scene(resolve_scene_ref(spec.scene))
    lexicon = load_lexicon()
    registry = load_templates()
    try:
        instr = parse_command(spec.command, lexicon, registry)
    except VgpnError as exc:
        raise SpecInvalid(f"command does not parse: {exc}") from None
    decision = requires_gesture(instr, scene, lexicon.demonstratives)
    if decision.required:
        raise SpecInvalid("efficiency command must not require a gesture "
                          f"({spec.command!r} does in scene {spec.scene!r})")
    desc = description_of(instr)
    aim = scene.objects[0].position
    if desc is not None:
        matches = world.match_objects(scene, desc[0], desc[1])
        if matches:
            aim = matches[0].position
    base = geometry.synthesize_frame(scene.user.position, scene.user.height,
                                     aim, transform_inverse=scene.camera.inverse(),
                                     ground_height=scene.ground_height)

    records = {}
    pipelines = {}
    for mode in (MODE_POINTING_ONLY, MODE_VGPN):
        pipe = Pipeline(scene, lexicon, registry)
        pipelines[mode] = pipe
        pipe.handle(spec.command, base, mode)  # warmup, excluded from stats
        if mode == MODE_VGPN:
            pipe.phase2_invocations = 0
        recs = []
        for i in range(spec.trials):
            frame = base
            if spec.sigma > 0:
                frame = geometry.perturb_frame(base, spec.sigma, trial_rng(spec.seed, i))
            recs.append(pipe.handle(spec.command, frame, mode).timing)
        records[mode] = recs

    summaries = {mode: timing_summary(recs) for mode, recs in records.items()}
    report = Report("efficiency", spec)
    report.header = ["part", "pointing_only_mean_us", "pointing_only_sd_us",
                     "vgpn_mean_us", "vgpn_sd_us"]
    for part in ("t1", "t2", "t3", "total"):
        po = summaries[MODE_POINTING_ONLY]
        vg = summaries[MODE_VGPN]
        report.rows.append([part, _fmt(po.mean[part]), _fmt(po.sd[part]),
                            _fmt(vg.mean[part]), _fmt(vg.sd[part])])

    vg = summaries[MODE_VGPN]
    po = summaries[MODE_POINTING_ONLY]
    report.assertions.append(Assertion(
        "vgpn-t2-zero", vg.mean["t2"] == 0.0 and vg.sd["t2"] == 0.0,
        f"vgpn t2 mean {vg.mean['t2']} sd {vg.sd['t2']}"))
    report.assertions.append(Assertion(
        "vgpn-phase2-never-invoked",
        pipelines[MODE_VGPN].phase2_invocations == 0,
        f"invocation counter {pipelines[MODE_VGPN].phase2_invocations}"))
    report.assertions.append(Assertion(
        "pointing-only-t1-zero", po.mean["t1"] == 0.0 and po.sd["t1"] == 0.0,
        f"pointing-only t1 mean {po.mean['t1']}"))
    report.assertions.append(Assertion(
        "skip-mode-faster", vg.mean["total"] < po.mean["total"],
        f"vgpn mean total {vg.mean['total']:.1f}us < "
        f"pointing-only {po.mean['total']:.1f}us"))
    return report


# --- accuracy ----------------------------------------------------------------------

def _accuracy_targets(spec: ScenarioSpec, scene: world.Scene) -> list[np.ndarray]:
    if spec.targets:
        targets = [np.array(t, dtype=np.float64) for t in spec.targets]
    else:
        targets = [scene.user.position + np.array(off)
                   for off in DEFAULT_TARGET_OFFSETS]
    near, middle = spec.bins
    seen = set()
    for t in targets:
        if not scene.grid.contains_point(t):
            raise SpecInvalid(f"target {t.tolist()} outside the scene grid")
        d = float(np.linalg.norm(t - scene.user.position))
        seen.add("near" if d <= near else "middle" if d <= middle else "far")
    if seen != {"near", "middle", "far"}:
        raise SpecInvalid(f"targets must cover all three bins, got {sorted(seen)}")
    return targets


def _bin_of(distance: float, bins: tuple[float, float]) -> str:
    if distance <= bins[0]:
        return "near"
    if distance <= bins[1]:
        return "middle"
    return "far"


def run_accuracy(spec: ScenarioSpec) -> Report:
    """Monte-Carlo intersection accuracy by distance bin.

    For each target, noiseless pointing frames are perturbed with the
    keypoint sigma and intersected with the ground in batch; offsets are
    means of |dx|, |dy| and planar distance from the true aim point.
    """
    if spec.kind != "accuracy":
        raise SpecInvalid("spec kind must be 'accuracy'")
    scene = world.load_scene(resolve_scene_ref(spec.scene))
    targets = _accuracy_targets(spec, scene)
    t_inv = scene.camera.inverse()

    eye_idx = geometry.KEYPOINT_NAMES.index("right_eye")
    wrist_idx = geometry.KEYPOINT_NAMES.index("right_wrist")
    bases = []
    for target in targets:
        frame = geometry.synthesize_frame(scene.user.position, scene.user.height,
                                          target, transform_inverse=t_inv,
                                          ground_height=scene.ground_height)
        bases.append((frame.right_eye, frame.right_wrist))

    n_targets = len(targets)
    n = spec.trials * n_targets
    eyes = np.empty((n, 3))
    wrists = np.empty((n, 3))
    # per-trial streams; each target consumes one (6, 3) block, matching the
    # draw order of perturb_frame on a fully-present frame
    for i in range(spec.trials):
        rng = trial_rng(spec.seed, i)
        for j, (eye, wrist) in enumerate(bases):
            noise = rng.normal(0.0, spec.sigma, (len(geometry.KEYPOINT_NAMES), 3))
            row = i * n_targets + j
            eyes[row] = eye + noise[eye_idx]
            wrists[row] = wrist + noise[wrist_idx]

    pts, ok = kernels.batch_ray_ground(eyes, wrists, scene.camera.rotation,
                                       scene.camera.translation,
                                       scene.ground_height)

    per_bin: dict[str, dict[str, list]] = {}
    for j, target in enumerate(targets):
        d = float(np.linalg.norm(target - scene.user.position))
        name = _bin_of(d, spec.bins)
        rows = np.arange(spec.trials) * n_targets + j
        valid = ok[rows].astype(bool)
        delta = pts[rows][valid] - target
        bucket = per_bin.setdefault(name, {"dx": [], "dy": [], "dist": [],
                                           "failed": 0, "targets": 0})
        bucket["dx"].append(np.abs(delta[:, 0]))
        bucket["dy"].append(np.abs(delta[:, 1]))
        bucket["dist"].append(np.linalg.norm(delta, axis=1))
        bucket["failed"] += int((~valid).sum())
        bucket["targets"] += 1

    report = Report("accuracy", spec)
    report.header = ["bin", "targets", "trials", "mean_abs_dx_m", "mean_abs_dy_m",
                     "mean_dist_m", "sd_abs_dx_m", "sd_abs_dy_m", "sd_dist_m",
                     "failed"]
    means = {}
    for name in ("near", "middle", "far"):
        bucket = per_bin[name]
        dx = np.concatenate(bucket["dx"])
        dy = np.concatenate(bucket["dy"])
        dist = np.concatenate(bucket["dist"])
        means[name] = float(dist.mean())
        report.rows.append([
            name, str(bucket["targets"]), str(bucket["targets"] * spec.trials),
            _fmt(dx.mean()), _fmt(dy.mean()), _fmt(dist.mean()),
            _fmt(dx.std()), _fmt(dy.std()), _fmt(dist.std()),
            str(bucket["failed"]),
        ])

    if spec.sigma > 0:
        report.assertions.append(Assertion(
            "offset-grows-with-distance",
            means["near"] < means["middle"] < means["far"],
            f"near {means['near']:.4f} < middle {means['middle']:.4f} "
            f"< far {means['far']:.4f}"))
    else:
        worst = max(means.values())
        report.assertions.append(Assertion(
            "noiseless-roundtrip", worst < 1e-6,
            f"max mean offset {worst:.2e} m"))
    return report


# --- SAME / DIFF -----------------------------------------------------------------

def run_same_diff(spec: ScenarioSpec) -> Report:
    """Success-rate comparison with the aim biased at a distractor object.

    Per trial, the aim point is drawn from a Gaussian centered on the
    distractor, a pointing frame is synthesized (plus keypoint noise), and
    both modes run on the same frame.  vgpn succeeds when its goal matches
    the intended object; pointing-only when the nearest object to its raw
    goal is the intended one.
    """
    if spec.kind != "samediff":
        raise SpecInvalid("spec kind must be 'samediff'")
    scene = world.load_scene(resolve_scene_ref(spec.scene))
    target = scene.object_by_id(spec.target_object_id)
    distractor = scene.object_by_id(spec.distractor_object_id)
    if target is None or distractor is None:
        raise SpecInvalid("target_object_id and distractor_object_id must name "
                          "scene objects")
    gap = float(np.linalg.norm(target.position - distractor.position))
    if not 0.05 <= gap <= 0.5:
        raise SpecInvalid(f"object pair is {gap:.2f} m apart; expected ~0.2 m")
    midpoint = (target.position + distractor.position) / 2.0
    user_dist = float(np.linalg.norm(scene.user.position - midpoint))
    if not 1.0 <= user_dist <= 3.0:
        raise SpecInvalid(f"user is {user_dist:.2f} m from the pair; expected ~2 m")

    lexicon = load_lexicon()
    registry = load_templates()
    try:
        instr = parse_command(spec.command, lexicon, registry)
    except VgpnError as exc:
        raise SpecInvalid(f"command does not parse: {exc}") from None
    desc = description_of(instr)
    if desc is None or desc[0] != target.category:
        raise SpecInvalid("command must describe the intended object's category")

    t_inv = scene.camera.inverse()
    pipes = {MODE_VGPN: Pipeline(scene, lexicon, registry),
             MODE_POINTING_ONLY: Pipeline(scene, lexicon, registry)}
    successes = {MODE_VGPN: 0, MODE_POINTING_ONLY: 0}
    no_frame_failures = 0

    for i in range(spec.trials):
        rng = trial_rng(spec.seed, i)
        aim = distractor.position + rng.normal(0.0, spec.aim_sigma, 2)
        try:
            frame = geometry.synthesize_frame(
                scene.user.position, scene.user.height, aim,
                transform_inverse=t_inv, ground_height=scene.ground_height)
        except AimTooClose:
            no_frame_failures += 1
            continue
        if spec.sigma > 0:
            frame = geometry.perturb_frame(frame, spec.sigma, rng)
        for mode, pipe in pipes.items():
            outcome = pipe.handle(spec.command, frame, mode)
            if outcome.goal is None:
                continue
            if mode == MODE_VGPN:
                hit = outcome.goal.matched_object_id == target.id
            else:
                nearest = world.nearest_object(scene, outcome.goal.position)
                hit = nearest is not None and nearest.id == target.id
            if hit:
                successes[mode] += 1

    variant = "SAME" if target.category == distractor.category else "DIFF"
    rates = {mode: successes[mode] / spec.trials for mode in successes}
    report = Report("samediff", spec)
    report.header = ["variant", "mode", "trials", "successes", "success_rate"]
    for mode in (MODE_VGPN, MODE_POINTING_ONLY):
        report.rows.append([variant, mode, str(spec.trials),
                            str(successes[mode]), _fmt(rates[mode])])
    report.assertions.append(Assertion(
        "voice-guidance-no-worse",
        rates[MODE_VGPN] >= rates[MODE_POINTING_ONLY],
        f"vgpn {rates[MODE_VGPN]:.3f} >= pointing-only "
        f"{rates[MODE_POINTING_ONLY]:.3f} ({variant})"))
    if no_frame_failures:
        report.assertions.append(Assertion(
            "degenerate-aims", True,
            f"{no_frame_failures} trials aimed on top of the user"))
    return report


def run_scenario(spec: ScenarioSpec) -> Report:
    runner = {"efficiency": run_efficiency, "accuracy": run_accuracy,
              "samediff": run_same_diff}[spec.kind]
    return runner(spec)
