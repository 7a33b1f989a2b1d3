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

import numpy as np

from ansible.module_utils.basic import AnsibleModule

from hilbert_lab.module_utils.convex_geometry import angle_cosine_bound, cross2
from hilbert_lab.module_utils.errors import HilbertLabError
from hilbert_lab.module_utils.runtime import DOMAIN_ARGS, exit_results, load_domain
from hilbert_lab.module_utils.spheres import sphere_frame

DOCUMENTATION = """
---
module: hilbert_check
author: "hilbert-lab contributors"
version_added: "0.1.0"
short_description: "Validate a domain config and report its boundary geometry"
description:
    - "Parses the domain config, builds the domain (which runs the convexity check on a dense
      angle grid) and reports curvature extremes, the angle-cosine bound at o and the
      distances from o to the boundary towards and away from the distinguished point."
    - "A non-convex config is rejected with the offending angle and exit code 2."
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
          - Angle of the distinguished boundary point seen from the base point; overrides the
            config file. Alias phi.
        required: False
        aliases: [phi]
"""

EXAMPLES = """
- hilbert_check:
    config: tests/presets/bump.cfg

- hilbert_check:
    config: tests/presets/disk2.cfg
    o: "0,0.5"
"""

RETURN = """
changed:
    description: ALWAYS RETURNS FALSE
    returned: always
    type: bool
    sample: False

domain:
    description: kind, preset tag and embedding of the built domain
    returned: always
    type: dict
    sample: '{"kind": "disk", "preset_tag": "disk", "spatial": false}'

curvature:
    description: minimum and maximum boundary curvature over the convexity grid
    returned: always
    type: dict
    sample: '{"min": 0.5, "max": 0.5}'

angle_bound:
    description: minimum cosine between radial and outward normal directions, and its bound
    returned: always
    type: dict
    sample: '{"min_cos": 1.0, "bound": 0.5, "omega0": 1.0, "k_min": 0.5, "holds": true}'

frame:
    description: distances from o to the boundary towards p and away from p
    returned: always
    type: dict
    sample: '{"omega0": 1.0, "omega_pi": 3.0, "C": 1.3333333333333333}'
"""


def main():
    module = AnsibleModule(argument_spec=dict(DOMAIN_ARGS), supports_check_mode=True)
    built = load_domain(module)
    domain = built.domain

    try:
        jets = domain.sample_boundary(order=2)
        kappa = cross2(jets[1], jets[2]) / np.linalg.norm(jets[1], axis=-1) ** 3
        bound = angle_cosine_bound(domain, built.o)
        frame = sphere_frame(domain, built.o, built.phi_p)
    except HilbertLabError as e:
        module.fail_json(msg="cannot check domain: " + str(e))

    exit_results(
        module,
        domain=dict(
            kind=built.config.kind,
            preset_tag=domain.preset_tag,
            spatial=built.body is not None,
            diameter=domain.diameter,
            o=built.o,
            p=frame.p,
        ),
        curvature=dict(min=float(np.min(kappa)), max=float(np.max(kappa))),
        angle_bound=dict(
            min_cos=bound.min_cos,
            phi_at_min=bound.phi_at_min,
            omega0=bound.omega0,
            k_min=bound.k_min,
            bound=bound.bound,
            holds=bound.holds,
        ),
        frame=dict(omega0=frame.omega0, omega_pi=frame.omega_pi, C=frame.C),
    )


if __name__ == "__main__":
    main()
