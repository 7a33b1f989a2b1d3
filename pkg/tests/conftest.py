import json
import os

import numpy as np
import pytest
from ansible.module_utils import basic
from ansible.module_utils.common.text.converters import to_bytes

from hilbert_lab.module_utils import presets
from hilbert_lab.module_utils.config import load_domain_config

PRESET_DIR = os.path.join(os.path.dirname(__file__), "presets")


def preset_path(name):
    return os.path.join(PRESET_DIR, name + ".cfg")


def build_preset(name):
    return load_domain_config(preset_path(name)).build()


@pytest.fixture(scope="session")
def unit_disk():
    return presets.unit_disk()


@pytest.fixture(scope="session")
def reference_ellipse():
    return presets.reference_ellipse()


@pytest.fixture(scope="session")
def bump():
    return presets.bump()


@pytest.fixture(scope="session")
def disk2():
    """Radius-2 disk built from its config; ``o = (0, 1)`` and ``p = (0, 0)``."""
    return build_preset("disk2")


@pytest.fixture(scope="session")
def ellipse_built():
    return build_preset("ellipse")


@pytest.fixture(scope="session")
def bump_built():
    return build_preset("bump")


@pytest.fixture(scope="session")
def ellipsoid_built():
    return build_preset("ellipsoid3")


@pytest.fixture
def origin():
    return np.zeros(2)


@pytest.fixture
def preset_file():
    return preset_path


@pytest.fixture
def set_module_args(monkeypatch):
    """Feed ``ANSIBLE_MODULE_ARGS`` to the next ``AnsibleModule`` built in the test."""

    def _set(args):
        payload = json.dumps({"ANSIBLE_MODULE_ARGS": args})
        monkeypatch.setattr(basic, "_ANSIBLE_ARGS", to_bytes(payload))

    return _set
