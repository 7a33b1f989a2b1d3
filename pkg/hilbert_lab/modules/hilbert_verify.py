"""
(c) 2026 hilbert-lab contributors

This file is part of hilbert-lab.
hilbert-lab is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.
hilbert-lab is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU General Public License for more details.
"""
from __future__ import annotations

from ansible.module_utils.basic import AnsibleModule, env_fallback

from hilbert_lab.module_utils import settings
from hilbert_lab.module_utils.errors import InputError
from hilbert_lab.module_utils.report import plain
from hilbert_lab.module_utils.runtime import (
    DOMAIN_ARGS,
    RC_FAILED_CHECKS,
    exit_results,
    load_domain,
)
from hilbert_lab.module_utils.spheres import radius_grid
from hilbert_lab.module_utils.suite import run_suite

DOCUMENTATION = """
---
module: hilbert_verify
author: "hilbert-lab contributors"
version_added: "0.1.0"
short_description: "Run the verification suite on a domain config"
description:
    - "Runs the selected checks (all by default) of the GEOM, NORM, METRIC, CONN, SPHERE and
      EXP groups and returns one record per check. The module fails with rc 1 when
      at least one assertion failed; diagnostics and skipped checks never fail it."
    - "With out set, writes report.txt, report.jsonl and, when a check needed the radius sweep,
      sweep.csv. Identical config and seed give byte-identical files."
requirements:
    - numpy
    - scipy
    - sympy
options:
    config:
        description:
          - Path of the domain config file (flat key=value format).
        required: True
    o:
        description:
          - Interior point overriding the o of the config file, comma separated list of 2 floats.
        required: False
    phi_p:
        description:
          - Angle of the distinguished boundary point; overrides the config file. Alias phi.
        required: False
        aliases: [phi]
    checks:
        description:
          - Comma separated check ids or group names. An empty value selects no check.
        required: False
    seed:
        description:
          - Seed of the per-check Philox streams. Falls back to HILBERT_LAB_SEED.
        required: False
        default: 42
    r_min:
        description:
          - Smallest radius of the sphere sweep.
        required: False
        default: 1.0
    r_max:
        description:
          - Largest radius of the sphere sweep.
        required: False
        default: 5.0
    steps:
        description:
          - Number of radii of the sphere sweep.
        required: False
        default: 9
    workers:
        description:
          - Threads evaluating sweep rows.
        required: False
    out:
        description:
          - Output directory for the report files. Falls back to HILBERT_LAB_OUT.
        required: False
"""

EXAMPLES = """
- hilbert_verify:
    config: tests/presets/disk2.cfg
    out: out/disk2

- hilbert_verify:
    config: tests/presets/bump.cfg
    checks: "GEOM,METRIC_OKADA,EXP"
    seed: 7
"""

RETURN = """
changed:
    description: True when out is set and the files were written, or would be in check mode
    returned: always
    type: bool
    sample: False

summary:
    description: number of checks per status and in total
    returned: always
    type: dict
    sample: '{"pass": 40, "fail": 0, "diagnostic": 5, "skipped": 1, "total": 46}'

failed_checks:
    description: ids of the failed assertions
    returned: always
    type: list
    sample: '[]'

checks:
    description: one record per executed check with id, status, measured, expected,
      tolerance, message and detail
    returned: always
    type: list
    sample: '[{"id": "METRIC_KLEIN", "status": "pass", "measured": 2.2e-16,
             "expected": 0.0, "tolerance": 1e-09, "message": "", "detail": {}}]'

files:
    description: paths of the written report files
    returned: when out is set
    type: list
    sample: '["out/disk2/report.txt", "out/disk2/report.jsonl", "out/disk2/sweep.csv"]'
"""


def main():
    module = AnsibleModule(
        argument_spec=dict(
            DOMAIN_ARGS,
            checks=dict(type="list", elements="str", required=False),
            seed=dict(
                type="int",
                required=False,
                default=settings.DEFAULT_SEED,
                fallback=(env_fallback, ["HILBERT_LAB_SEED"]),
            ),
            r_min=dict(type="float", required=False, default=settings.DEFAULT_R_MIN),
            r_max=dict(type="float", required=False, default=settings.DEFAULT_R_MAX),
            steps=dict(type="int", required=False, default=settings.DEFAULT_STEPS),
            workers=dict(type="int", required=False),
            out=dict(type="path", required=False, fallback=(env_fallback, ["HILBERT_LAB_OUT"])),
        ),
        supports_check_mode=True,
    )
    built = load_domain(module)
    params = module.params
    checks = params["checks"]
    if checks is not None:
        checks = [c for c in checks if c]
    out_dir = None if module.check_mode else params["out"]

    try:
        grid = radius_grid(params["r_min"], params["r_max"], params["steps"])
        report = run_suite(
            built,
            checks=checks,
            out_dir=out_dir,
            seed=params["seed"],
            r_grid=grid,
            workers=params["workers"],
        )
    except InputError as e:
        module.fail_json(msg="cannot run suite: " + str(e))
    except OSError as e:
        module.fail_json(msg="cannot write report: " + str(e))

    results = report.as_dict()
    if out_dir:
        results["files"] = report.files
    changed = bool(params["out"])

    if report.failed_checks:
        msg = "{0} of {1} checks failed".format(len(report.failed_checks), len(report.records))
        module.fail_json(msg=msg, rc=RC_FAILED_CHECKS, changed=changed, **plain(results))

    exit_results(module, changed=changed, **results)


if __name__ == "__main__":
    main()
