"""Helpers shared by the ``hilbert_*`` modules on top of ``AnsibleModule``.

Every module that reads a domain takes ``DOMAIN_ARGS``; ``load_domain`` merges them with the
config file the way a provider dict is merged with local params. Results go through
``exit_results`` so that numpy values leave as plain JSON.
"""
from __future__ import annotations

import dataclasses
import logging
import sys

import numpy as np

from hilbert_lab.module_utils.config import load_domain_config
from hilbert_lab.module_utils.errors import HilbertLabError, InputError
from hilbert_lab.module_utils.report import plain

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
LOG_LEVELS = {0: logging.WARNING, 1: logging.INFO, 2: logging.DEBUG}

RC_OK = 0
RC_FAILED_CHECKS = 1
RC_INVALID = 2

DOMAIN_ARGS = dict(
    config=dict(type="path", required=True),
    o=dict(type="list", elements="float", required=False),
    phi_p=dict(type="float", required=False, aliases=["phi"]),
)


def setup_logging(module):
    """Log to stderr at the level of the ansible verbosity, capped at DEBUG."""
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(LOG_LEVELS[min(max(module._verbosity, 0), 2)])


def point_param(module, name, default=None):
    value = module.params.get(name)
    if value is None:
        value = default
    if value is None or len(value) != 2:
        module.fail_json(msg=str(name) + " needs 2 components")
    return np.array(value, dtype=float)


def load_domain(module):
    setup_logging(module)
    try:
        config = load_domain_config(module.params["config"])
    except (OSError, InputError) as e:
        module.fail_json(msg="cannot load config: " + str(e))

    # allow local params to override the config file
    overrides = {}
    if module.params.get("o") is not None:
        overrides["o"] = tuple(float(v) for v in point_param(module, "o"))
    if module.params.get("phi_p") is not None:
        overrides["phi_p"] = module.params["phi_p"]
    config = dataclasses.replace(config, **overrides)

    try:
        return config.build()
    except HilbertLabError as e:
        module.fail_json(msg="cannot build domain: " + str(e))


def exit_results(module, changed=False, **results):
    module.exit_json(changed=changed, **plain(results))
