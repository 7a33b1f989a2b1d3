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

from hilbert_lab.module_utils.errors import HilbertLabError
from hilbert_lab.module_utils.finsler import distance_by_quadrature, funk, hilbert_distance
from hilbert_lab.module_utils.runtime import DOMAIN_ARGS, exit_results, load_domain, point_param

DOCUMENTATION = """
---
module: hilbert_dist
author: "hilbert-lab contributors"
version_added: "0.1.0"
short_description: "Hilbert distance between two interior points"
description:
    - "Computes the Hilbert distance from the cross-ratio of the chord through a and b, and
      optionally the length of the segment from a to b by quadrature of the Hilbert norm."
    - "For 3D configs the points are coordinates in the planar section through o."
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
          - Interior point overriding the o of the config file, comma separated list of 2 floats.
        required: False
    phi_p:
        description:
          - Angle of the distinguished boundary point; overrides the config file. Alias phi.
        required: False
        aliases: [phi]
    a:
        description:
          - First interior point, comma separated. Defaults to o.
        required: False
    b:
        description:
          - Second interior point, comma separated.
        required: True
    quadrature:
        description:
          - Also integrate the Hilbert norm along the segment and report the difference.
        required: False
        default: False
"""

EXAMPLES = """
- hilbert_dist:
    config: tests/presets/unit_disk.cfg
    b: "0.5,0"

- hilbert_dist:
    config: tests/presets/disk2.cfg
    a: "0,1"
    b: "0,3.5"
    quadrature: True
"""

RETURN = """
changed:
    description: ALWAYS RETURNS FALSE
    returned: always
    type: bool
    sample: False

distance:
    description: Hilbert distance between a and b
    returned: always
    type: float
    sample: 0.5493061443340549

funk:
    description: forward and backward Funk norms of b - a at a
    returned: always
    type: dict
    sample: '{"forward": 0.5, "backward": 0.5}'

quadrature:
    description: integrated segment length and its deviation from the distance
    returned: when quadrature is True
    type: dict
    sample: '{"distance": 0.5493061443340549, "error": 1.1102230246251565e-16}'
"""


def main():
    module = AnsibleModule(
        argument_spec=dict(
            DOMAIN_ARGS,
            a=dict(type="list", elements="float", required=False),
            b=dict(type="list", elements="float", required=True),
            quadrature=dict(type="bool", required=False, default=False),
        ),
        supports_check_mode=True,
    )
    built = load_domain(module)
    a = point_param(module, "a", default=built.o)
    b = point_param(module, "b")

    results = {}
    try:
        results["distance"] = hilbert_distance(built.domain, a, b)
        if np.any(b - a):
            results["funk"] = dict(
                forward=funk(built.domain, a, b - a), backward=funk(built.domain, a, a - b)
            )
        if module.params["quadrature"]:
            integrated = distance_by_quadrature(built.domain, a, b)
            results["quadrature"] = dict(
                distance=integrated, error=abs(integrated - results["distance"])
            )
    except HilbertLabError as e:
        module.fail_json(msg="cannot compute distance: " + str(e))

    exit_results(module, a=a, b=b, **results)


if __name__ == "__main__":
    main()
