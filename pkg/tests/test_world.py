import json

import numpy as np
import pytest

from oracles import nearest_by_scan

from vgpn.errors import MissingIntersection, NoSuchObject, SceneInvalid
from vgpn.language import Instruction
from vgpn.nav import OccupancyGrid, RobotState
from vgpn.world import (
    GOAL_INTERSECTION,
    GOAL_OBJECT,
    Scene,
    SceneObject,
    UserModel,
    is_unique,
    load_scene,
    match_objects,
    nearest_object,
    resolve_target,
    scene_from_doc,
    standoff_point,
)
from vgpn.geometry import RigidTransform

from conftest import preset_path


def make_scene(objects, robot_pos=(0.5, 0.5)):
    grid = OccupancyGrid.empty(200, 200, 0.05)
    return Scene(tuple(objects), grid, 0.0, RigidTransform.identity(),
                 UserModel(np.array([0.5, 1.0]), 1.75),
                 RobotState(np.array(robot_pos, dtype=float), 0.0))


def obj(oid, category, pos, props=(), fp=0.25):
    return SceneObject(oid, category, frozenset(props),
                       np.asarray(pos, dtype=float), fp)


CHAIRS_AND_BED = [
    obj("chair1", "chair", (2.5, 1.2)),
    obj("chair2", "chair", (4.0, 3.0), props=("black",)),
    obj("bed1", "bed", (4.0, 1.0), fp=0.4),
]


class TestMatching:
    def test_category_filter(self):
        scene = make_scene(CHAIRS_AND_BED)
        assert [o.id for o in match_objects(scene, "chair")] == ["chair1", "chair2"]

    def test_property_filter(self):
        scene = make_scene(CHAIRS_AND_BED)
        assert [o.id for o in match_objects(scene, "chair", {"black"})] == ["chair2"]

    def test_no_match(self):
        scene = make_scene(CHAIRS_AND_BED)
        assert match_objects(scene, "sofa") == []

    def test_is_unique(self):
        scene = make_scene(CHAIRS_AND_BED)
        assert is_unique(scene, "bed")
        assert not is_unique(scene, "chair")
        assert not is_unique(scene, "sofa")

    def test_ordering_by_id(self):
        scene = make_scene([obj("z", "chair", (1, 1)), obj("a", "chair", (2, 2))])
        assert [o.id for o in match_objects(scene, "chair")] == ["a", "z"]


class TestResolveTarget:
    def test_intersection_goal(self):
        scene = make_scene(CHAIRS_AND_BED)
        instr = Instruction("goto", ("there",), ("r",))
        goal = resolve_target(instr, np.array([3.0, 1.0, 0.0]), scene)
        assert goal.source == GOAL_INTERSECTION
        assert np.allclose(goal.position, [3.0, 1.0])
        assert goal.matched_object_id is None

    def test_nearest_candidate(self):
        scene = make_scene(CHAIRS_AND_BED)
        instr = Instruction("goto", ("chair", "that"), ("n", "r"))
        goal = resolve_target(instr, np.array([2.0, 1.0]), scene)
        assert goal.matched_object_id == "chair1"

    def test_voice_guidance_beats_raw_pointing(self):
        # intersection lands on a bed next to the desired chair; the chair
        # still wins because only chairs are candidates
        scene = make_scene([obj("chair1", "chair", (2.5, 1.2)),
                            obj("chair2", "chair", (4.0, 3.0)),
                            obj("bed1", "bed", (4.0, 2.8), fp=0.4)])
        instr = Instruction("goto", ("chair", "that"), ("n", "r"))
        goal = resolve_target(instr, np.array([4.0, 2.75]), scene)
        assert goal.matched_object_id == "chair2"
        assert goal.source == GOAL_OBJECT

    def test_no_such_object(self):
        scene = make_scene(CHAIRS_AND_BED)
        instr = Instruction("goto", ("sofa", "that"), ("n", "r"))
        with pytest.raises(NoSuchObject):
            resolve_target(instr, np.array([1.0, 1.0]), scene)

    def test_missing_intersection_without_description(self):
        scene = make_scene(CHAIRS_AND_BED)
        with pytest.raises(MissingIntersection):
            resolve_target(Instruction("goto", ("there",), ("r",)), None, scene)

    def test_missing_intersection_ambiguous(self):
        scene = make_scene(CHAIRS_AND_BED)
        instr = Instruction("goto", ("chair",), ("n",))
        with pytest.raises(MissingIntersection):
            resolve_target(instr, None, scene)

    def test_unique_ignores_intersection(self):
        scene = make_scene(CHAIRS_AND_BED)
        instr = Instruction("goto", ("bed", "that"), ("n", "r"))
        rng = np.random.default_rng(1)
        goals = {tuple(resolve_target(instr, rng.uniform(0, 5, 2), scene).position)
                 for _ in range(100)}
        assert len(goals) == 1
        assert resolve_target(instr, None, scene).matched_object_id == "bed1"

    def test_standoff_geometry(self):
        scene = make_scene([obj("bed1", "bed", (4.0, 0.5), fp=0.4)],
                           robot_pos=(1.0, 0.5))
        goal = resolve_target(Instruction("goto", ("bed",), ("n",)), None, scene)
        # offset by footprint + robot radius toward the robot start
        assert np.allclose(goal.position, [4.0 - 0.4 - 0.18, 0.5], atol=1e-12)

    def test_tie_breaks_by_id(self):
        scene = make_scene([obj("b", "chair", (2.0, 1.0)),
                            obj("a", "chair", (2.0, 3.0))])
        instr = Instruction("goto", ("chair", "that"), ("n", "r"))
        goal = resolve_target(instr, np.array([2.0, 2.0]), scene)
        assert goal.matched_object_id == "a"


class TestOracleEquivalence:
    def test_500_random_scenes(self):
        rng = np.random.default_rng(2024)
        instr = Instruction("goto", ("chair", "that"), ("n", "r"))
        for _ in range(500):
            n = rng.integers(2, 21)
            objects = [obj(f"chair{i:02d}", "chair",
                           rng.uniform(0.5, 9.5, 2), fp=0.2)
                       for i in range(n)]
            scene = make_scene(objects)
            p = rng.uniform(0.5, 9.5, 2)
            goal = resolve_target(instr, p, scene)
            expected = nearest_by_scan(((o.id, o.position) for o in objects), p)
            assert goal.matched_object_id == expected

    def test_monotone_robustness(self):
        # decisions survive any intersection perturbation below half the
        # distance-gap between the two candidates
        rng = np.random.default_rng(77)
        instr = Instruction("goto", ("chair", "that"), ("n", "r"))
        for _ in range(100):
            a = obj("a", "chair", rng.uniform(1, 9, 2))
            b = obj("b", "chair", rng.uniform(1, 9, 2))
            scene = make_scene([a, b])
            p = rng.uniform(1, 9, 2)
            da = np.linalg.norm(a.position - p)
            db = np.linalg.norm(b.position - p)
            gap = abs(da - db)
            if gap < 1e-3:
                continue
            base = resolve_target(instr, p, scene).matched_object_id
            for _ in range(10):
                angle = rng.uniform(0, 2 * np.pi)
                radius = rng.uniform(0, gap / 2 * 0.999)
                p2 = p + radius * np.array([np.cos(angle), np.sin(angle)])
                assert resolve_target(instr, p2, scene).matched_object_id == base


class TestNearestObject:
    def test_nearest(self):
        scene = make_scene(CHAIRS_AND_BED)
        assert nearest_object(scene, [4.0, 1.1]).id == "bed1"

    def test_empty_scene(self):
        scene = make_scene([])
        assert nearest_object(scene, [1, 1]) is None


class TestSceneFile:
    def test_presets_load(self):
        for name in ("unique_door", "diff_pair", "same_pair", "accuracy_room",
                     "playground"):
            scene = load_scene(preset_path(name))
            assert scene.grid.cells.shape == (scene.grid.height, scene.grid.width)

    def test_diff_scene_layout(self, diff_scene):
        chair = diff_scene.object_by_id("chair1")
        bed = diff_scene.object_by_id("bed1")
        assert abs(np.linalg.norm(chair.position - bed.position) - 0.2) < 1e-9
        mid = (chair.position + bed.position) / 2
        assert abs(np.linalg.norm(diff_scene.user.position - mid) - 2.0) < 1e-9

    def test_missing_key(self):
        with pytest.raises(SceneInvalid) as err:
            scene_from_doc({"schema_version": 1})
        assert "camera" in str(err.value)

    def test_bad_rotation(self, unique_door_scene):
        doc = json.load(open(preset_path("unique_door")))
        doc["camera"] = {"rotation": [[2, 0, 0], [0, 1, 0], [0, 0, 1]],
                        "translation": [0, 0, 0]}
        with pytest.raises(SceneInvalid) as err:
            scene_from_doc(doc)
        assert "camera" in str(err.value)

    def test_bits_encoding_roundtrip(self):
        doc = json.load(open(preset_path("diff_pair")))
        grid = doc["grid"]
        runs = grid["occupancy"]["data"]
        bits = "".join(str(bit) * count for bit, count in runs)
        grid["occupancy"] = {"encoding": "bits", "data": bits}
        scene = scene_from_doc(doc)
        reference = load_scene(preset_path("diff_pair"))
        assert np.array_equal(scene.grid.cells, reference.grid.cells)

    def test_bits_length_error(self):
        doc = json.load(open(preset_path("diff_pair")))
        doc["grid"]["occupancy"] = {"encoding": "bits", "data": "0101"}
        with pytest.raises(SceneInvalid) as err:
            scene_from_doc(doc)
        assert "length" in str(err.value)

    def test_rle_sum_error(self):
        doc = json.load(open(preset_path("diff_pair")))
        doc["grid"]["occupancy"] = {"encoding": "rle", "data": [[0, 7]]}
        with pytest.raises(SceneInvalid) as err:
            scene_from_doc(doc)
        assert "run lengths" in str(err.value)

    def test_duplicate_object_id(self):
        doc = json.load(open(preset_path("diff_pair")))
        doc["objects"].append(dict(doc["objects"][0]))
        with pytest.raises(SceneInvalid) as err:
            scene_from_doc(doc)
        assert "duplicate" in str(err.value)

    def test_object_outside_grid(self):
        doc = json.load(open(preset_path("diff_pair")))
        doc["objects"][0]["position"] = [50.0, 50.0]
        with pytest.raises(SceneInvalid) as err:
            scene_from_doc(doc)
        assert "outside" in str(err.value)

    def test_robot_start_in_wall(self):
        doc = json.load(open(preset_path("diff_pair")))
        doc["robot_start"]["position"] = [0.05, 0.05]
        with pytest.raises(SceneInvalid) as err:
            scene_from_doc(doc)
        assert "free space" in str(err.value)
