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

import dataclasses
import os

from ansible.module_utils.basic import AnsibleModule, env_fallback

from hilbert_lab.module_utils import settings
from hilbert_lab.module_utils.errors import FitError, HilbertLabError
from hilbert_lab.module_utils.runtime import DOMAIN_ARGS, exit_results, load_domain
from hilbert_lab.module_utils.spheres import (
    FIT_COLUMNS,
    curvature_sweep,
    fit_exponential_approach,
    radius_grid,
    sphere_frame,
)

DOCUMENTATION = """
---
module: hilbert_sweep
author: "hilbert-lab contributors"
version_added: "0.1.0"
short_description: "Curvatures of metric circles about o over a radius grid"
description:
    - "For each radius of the grid, builds the metric circle of that radius about o, takes the
      point at the given angle from the direction of p, and evaluates its normal, Rund and Finsler
      curvatures, the Euclidean gap x2 to the boundary and the distance-consistency error."
    - "With out set, writes the table as sweep.csv (header r,x2,k_n,k_R,k_F,gap_err, 17
      significant digits). With fit set, fits k = 1 + A*exp(-rho*r) on the window [2, 5]."
requirements:
    - numpy
    - scipy
options:
    config:
        description:
          - Path of the domain config file (flat key=value format).
        required: True
    o:
        description:
          - Center of the circles, overriding the o of the config file, comma separated.
        required: False
    phi_p:
        description:
          - Angle of the distinguished boundary point; overrides the config file. Alias phi.
        required: False
        aliases: [phi]
    angle:
        description:
          - Angle on the circles, measured from the direction of p.
        required: False
        default: 0.0
    r_min:
        description:
          - Smallest radius of the grid.
        required: False
        default: 1.0
    r_max:
        description:
          - Largest radius of the grid.
        required: False
        default: 5.0
    steps:
        description:
          - Number of radii, evenly spaced.
        required: False
        default: 9
    workers:
        description:
          - Threads evaluating rows; rows are assembled in radius order.
        required: False
    fit:
        description:
          - Fit the exponential approach of every curvature column.
        required: False
        default: False
    out:
        description:
          - Output directory for sweep.csv. Falls back to HILBERT_LAB_OUT.
        required: False
"""

EXAMPLES = """
- hilbert_sweep:
    config: tests/presets/disk2.cfg
    r_min: 1
    r_max: 5
    steps: 9
    out: out/disk2

- hilbert_sweep:
    config: tests/presets/bump.cfg
    r_min: 2
    r_max: 5
    steps: 13
    fit: True
    workers: 4
"""

RETURN = """
changed:
    description: True when out is set and the files were written, or would be in check mode
    returned: always
    type: bool
    sample: False

frame:
    description: distances from o to the boundary towards and away from p, and C
    returned: always
    type: dict
    sample: '{"omega0": 1.0, "omega_pi": 3.0, "C": 1.3333333333333333}'

rows:
    description: one record per radius, NaN where the row failed
    returned: always
    type: list
    sample: '[{"r": 1.0, "k_n": 1.3130352854993312, "k_R": 1.3130352854993312,
             "k_F": 1.3130352854993312, "gap_err": 0.0}]'

errors:
    description: radius to message for the rows that failed
    returned: always
    type: dict

fits:
    description: fitted limit, coefficient and rate per column, or the reason the fit failed
    returned: when fit is True
    type: dict
    sample: '{"k_n": {"limit": 1.0, "coefficient": 2.0, "rate": 2.0, "rms": 1e-09}}'

csv:
    description: path of the written table
    returned: when out is set
    type: str
    sample: out/disk2/sweep.csv
"""


def main():
    module = AnsibleModule(
        argument_spec=dict(
            DOMAIN_ARGS,
            angle=dict(type="float", required=False, default=0.0),
            r_min=dict(type="float", required=False, default=settings.DEFAULT_R_MIN),
            r_max=dict(type="float", required=False, default=settings.DEFAULT_R_MAX),
            steps=dict(type="int", required=False, default=settings.DEFAULT_STEPS),
            workers=dict(type="int", required=False),
            fit=dict(type="bool", required=False, default=False),
            out=dict(type="path", required=False, fallback=(env_fallback, ["HILBERT_LAB_OUT"])),
        ),
        supports_check_mode=True,
    )
    built = load_domain(module)
    params = module.params

    try:
        grid = radius_grid(params["r_min"], params["r_max"], params["steps"])
        frame = sphere_frame(built.domain, built.o, built.phi_p)
        table = curvature_sweep(built.domain, frame, grid, params["angle"], params["workers"])
    except HilbertLabError as e:
        module.fail_json(msg="cannot sweep circles: " + str(e))

    results = dict(
        frame=dict(omega0=frame.omega0, omega_pi=frame.omega_pi, C=frame.C),
        rows=[row._asdict() for row in table.rows],
        errors=dict((format(r, "g"), msg) for r, msg in table.errors.items()),
    )

    if params["fit"]:
        fits = {}
        for column in FIT_COLUMNS:
            try:
                fits[column] = dataclasses.asdict(fit_exponential_approach(table, column))
            except FitError as e:
                fits[column] = dict(error=str(e))
        results["fits"] = fits

    changed = False
    if params["out"]:
        path = os.path.join(params["out"], "sweep.csv")
        if not module.check_mode:
            try:
                os.makedirs(params["out"], exist_ok=True)
                with open(path, "w", newline="") as f:
                    table.write_csv(f)
            except OSError as e:
                module.fail_json(msg="cannot write sweep: " + str(e))
        results["csv"] = path
        changed = True

    exit_results(module, changed=changed, **results)


if __name__ == "__main__":
    main()
