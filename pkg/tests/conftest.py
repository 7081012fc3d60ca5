import sys
from importlib import resources
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from vgpn.language import load_lexicon, load_templates
from vgpn.world import load_scene


def preset_path(name: str) -> str:
    return str(resources.files("vgpn.data").joinpath(f"scenes/{name}.json"))


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon()


@pytest.fixture(scope="session")
def registry():
    return load_templates()


@pytest.fixture(scope="session")
def unique_door_scene():
    return load_scene(preset_path("unique_door"))


@pytest.fixture(scope="session")
def diff_scene():
    return load_scene(preset_path("diff_pair"))


@pytest.fixture(scope="session")
def same_scene():
    return load_scene(preset_path("same_pair"))


@pytest.fixture(scope="session")
def accuracy_scene():
    return load_scene(preset_path("accuracy_room"))
