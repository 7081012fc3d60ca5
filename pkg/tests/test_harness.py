import numpy as np
import pytest

from vgpn.errors import SpecInvalid
from vgpn.geometry import ground_intersection, perturb_frame, pointing_ray, synthesize_frame
from vgpn.harness import (
    ScenarioSpec,
    load_scenario,
    resolve_scene_ref,
    run_accuracy,
    run_efficiency,
    run_same_diff,
    run_scenario,
    trial_rng,
)


class TestSpec:
    def test_unknown_kind(self):
        with pytest.raises(SpecInvalid):
            ScenarioSpec(kind="speed", scene="unique_door")

    def test_bad_trials(self):
        with pytest.raises(SpecInvalid):
            ScenarioSpec(kind="accuracy", scene="accuracy_room", trials=0)

    def test_unknown_key(self):
        with pytest.raises(SpecInvalid):
            ScenarioSpec.from_doc({"kind": "accuracy", "scene": "x", "boost": 1})

    def test_doc_roundtrip(self):
        spec = ScenarioSpec(kind="samediff", scene="same_pair", trials=10,
                            target_object_id="chair_a",
                            distractor_object_id="chair_b")
        assert ScenarioSpec.from_doc(spec.to_doc()) == spec

    def test_scenario_file(self, tmp_path):
        path = tmp_path / "spec.json"
        path.write_text('{"kind": "accuracy", "scene": "accuracy_room", '
                        '"trials": 5, "seed": 1}')
        spec = load_scenario(str(path))
        assert spec.kind == "accuracy" and spec.trials == 5

    def test_scene_ref(self):
        assert resolve_scene_ref("unique_door").endswith("unique_door.json")
        with pytest.raises(SpecInvalid):
            resolve_scene_ref("no_such_scene")


class TestEfficiency:
    def test_report_and_assertions(self):
        spec = ScenarioSpec(kind="efficiency", scene="unique_door", trials=30,
                            seed=3, command="go to that door")
        report = run_efficiency(spec)
        assert report.ok, report.to_text()
        by_part = {row[0]: row for row in report.rows}
        assert float(by_part["t2"][3]) == 0.0  # vgpn mean
        assert float(by_part["t2"][4]) == 0.0  # vgpn sd
        assert float(by_part["t1"][1]) == 0.0  # pointing-only mean
        assert float(by_part["total"][3]) < float(by_part["total"][1])

    def test_rejects_gesture_command(self):
        spec = ScenarioSpec(kind="efficiency", scene="unique_door", trials=5,
                            command="go there")
        with pytest.raises(SpecInvalid):
            run_efficiency(spec)

    def test_rejects_unparseable_command(self):
        spec = ScenarioSpec(kind="efficiency", scene="unique_door", trials=5,
                            command="warp somewhere")
        with pytest.raises(SpecInvalid):
            run_efficiency(spec)


class TestAccuracy:
    def test_noiseless_roundtrip(self):
        spec = ScenarioSpec(kind="accuracy", scene="accuracy_room", trials=20,
                            seed=1, sigma=0.0)
        report = run_accuracy(spec)
        assert report.ok, report.to_text()
        for row in report.rows:
            assert float(row[5]) < 1e-6  # mean_dist_m

    def test_trend_and_determinism(self):
        spec = ScenarioSpec(kind="accuracy", scene="accuracy_room",
                            trials=300, seed=17, sigma=0.01)
        first = run_accuracy(spec)
        second = run_accuracy(spec)
        assert first.ok
        assert first.to_csv() == second.to_csv()
        assert first.to_text() == second.to_text()

    def test_targets_must_cover_bins(self):
        spec = ScenarioSpec(kind="accuracy", scene="accuracy_room", trials=5,
                            targets=((2.0, 3.0),))
        with pytest.raises(SpecInvalid):
            run_accuracy(spec)

    def test_batch_path_matches_scalar_pipeline(self, accuracy_scene):
        # the vectorized kernel run must reproduce synthesize->perturb->
        # intersect done one trial at a time with the same streams
        scene = accuracy_scene
        spec = ScenarioSpec(kind="accuracy", scene="accuracy_room", trials=5,
                            seed=23, sigma=0.01)
        from vgpn.harness import _accuracy_targets
        targets = _accuracy_targets(spec, scene)
        report_rows = {}
        t_inv = scene.camera.inverse()
        scalar_hits = {}
        for i in range(spec.trials):
            rng = trial_rng(spec.seed, i)
            for j, target in enumerate(targets):
                base = synthesize_frame(scene.user.position, scene.user.height,
                                        target, transform_inverse=t_inv,
                                        ground_height=scene.ground_height)
                noisy = perturb_frame(base, spec.sigma, rng)
                ray = pointing_ray(noisy, "REW", scene.camera)
                hit = ground_intersection(ray, scene.ground_height)
                scalar_hits[(i, j)] = hit[:2]

        from vgpn import kernels
        eyes = np.empty((spec.trials * len(targets), 3))
        wrists = np.empty_like(eyes)
        bases = [synthesize_frame(scene.user.position, scene.user.height, t,
                                  transform_inverse=t_inv,
                                  ground_height=scene.ground_height)
                 for t in targets]
        for i in range(spec.trials):
            rng = trial_rng(spec.seed, i)
            for j, base in enumerate(bases):
                noise = rng.normal(0.0, spec.sigma, (6, 3))
                row = i * len(targets) + j
                eyes[row] = base.right_eye + noise[0]
                wrists[row] = base.right_wrist + noise[2]
        pts, ok = kernels.batch_ray_ground(eyes, wrists, scene.camera.rotation,
                                           scene.camera.translation,
                                           scene.ground_height)
        assert ok.all()
        for (i, j), hit in scalar_hits.items():
            assert np.allclose(pts[i * len(targets) + j], hit, atol=1e-9)


class TestSameDiff:
    def test_diff_rates(self):
        spec = ScenarioSpec(kind="samediff", scene="diff_pair", trials=300,
                            seed=5, command="go to that chair",
                            target_object_id="chair1",
                            distractor_object_id="bed1")
        report = run_same_diff(spec)
        assert report.ok
        rates = {row[1]: float(row[4]) for row in report.rows}
        assert rates["vgpn"] == 1.0
        assert rates["pointing-only"] < 0.9
        assert report.rows[0][0] == "DIFF"

    def test_same_rates(self):
        spec = ScenarioSpec(kind="samediff", scene="same_pair", trials=300,
                            seed=5, command="go to that chair",
                            target_object_id="chair_a",
                            distractor_object_id="chair_b")
        report = run_same_diff(spec)
        rates = {row[1]: float(row[4]) for row in report.rows}
        assert 0.0 < rates["vgpn"] < 1.0
        assert rates["vgpn"] > rates["pointing-only"]
        assert report.rows[0][0] == "SAME"

    def test_determinism(self):
        spec = ScenarioSpec(kind="samediff", scene="same_pair", trials=100,
                            seed=9, command="go to that chair",
                            target_object_id="chair_a",
                            distractor_object_id="chair_b")
        assert run_same_diff(spec).to_csv() == run_same_diff(spec).to_csv()

    def test_requires_real_objects(self):
        spec = ScenarioSpec(kind="samediff", scene="diff_pair", trials=5,
                            target_object_id="ghost",
                            distractor_object_id="bed1")
        with pytest.raises(SpecInvalid):
            run_same_diff(spec)

    def test_command_must_describe_target(self):
        spec = ScenarioSpec(kind="samediff", scene="diff_pair", trials=5,
                            command="go there", target_object_id="chair1",
                            distractor_object_id="bed1")
        with pytest.raises(SpecInvalid):
            run_same_diff(spec)


class TestRunScenario:
    def test_dispatch(self):
        spec = ScenarioSpec(kind="accuracy", scene="accuracy_room", trials=5,
                            sigma=0.0)
        report = run_scenario(spec)
        assert report.kind == "accuracy"

    def test_csv_provenance(self, tmp_path):
        spec = ScenarioSpec(kind="accuracy", scene="accuracy_room", trials=5,
                            sigma=0.0)
        report = run_scenario(spec)
        csv = report.to_csv()
        assert csv.splitlines()[1].startswith("# spec: ")
        assert '"kind":"accuracy"' in csv
        paths = report.write(str(tmp_path))
        assert all(tmp_path.joinpath(p.split("/")[-1]).exists() for p in paths)
