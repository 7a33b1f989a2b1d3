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
from hilbert_lab.module_utils.finsler import (
    fundamental_tensor,
    fundamental_tensor_fd,
    funk_jet,
    hilbert_norm,
    okada_residual,
)
from hilbert_lab.module_utils.runtime import DOMAIN_ARGS, exit_results, load_domain, point_param

DOCUMENTATION = """
---
module: hilbert_tensor
author: "hilbert-lab contributors"
version_added: "0.1.0"
short_description: "Funk jets and the fundamental tensor at (x, y)"
description:
    - "Evaluates the forward and backward Funk metrics with their first and second spatial
      derivatives, the Hilbert norm, and the fundamental tensor from the implicit boundary
      formula next to its finite-difference oracle."
    - "Points closer to the boundary than 1e-6 of the diameter along the chord are refused."
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
    x:
        description:
          - Interior base point, comma separated. Defaults to o.
        required: False
    y:
        description:
          - Nonzero tangent vector, comma separated.
        required: True
"""

EXAMPLES = """
- hilbert_tensor:
    config: tests/presets/ellipse.cfg
    x: "0,0.5"
    y: "0,1"

- hilbert_tensor:
    config: tests/presets/bump.cfg
    y: "0.3,-1"
"""

RETURN = """
changed:
    description: ALWAYS RETURNS FALSE
    returned: always
    type: bool
    sample: False

funk_forward:
    description: Funk metric at (x, y) with gradient and Hessian in x, and the exit parameter
    returned: always
    type: dict
    sample: '{"theta": 0.6666666666666666, "d_theta": [0.0, 0.4444444444444444], "t_plus": 1.5}'

funk_backward:
    description: the same quantities at (x, -y)
    returned: always
    type: dict

hilbert_norm:
    description: F(x, y), the mean of the two Funk norms
    returned: always
    type: float

tensor:
    description: fundamental tensor from the implicit formula
    returned: always
    type: dict
    sample: '{"g12": 0.0, "g22": 1.7777777777777777, "positive_definite": true}'

tensor_fd:
    description: Hessian of F^2/2 in y by central differences, and its relative deviation
    returned: always
    type: dict

okada_residual:
    description: Theta_x - Theta * Theta_y at (x, y), relative to max(1, |Theta_x|)
    returned: always
    type: list
"""


def _funk_dict(jet):
    return dict(
        theta=jet.theta,
        d_theta=jet.d_theta,
        dd_theta=jet.dd_theta,
        t_plus=jet.t_plus,
    )


def _tensor_dict(g):
    return dict(
        g11=g.g11,
        g12=g.g12,
        g22=g.g22,
        det=g.det,
        eigenvalues=g.eigenvalues(),
        positive_definite=g.is_positive_definite(),
    )


def main():
    module = AnsibleModule(
        argument_spec=dict(
            DOMAIN_ARGS,
            x=dict(type="list", elements="float", required=False),
            y=dict(type="list", elements="float", required=True),
        ),
        supports_check_mode=True,
    )
    built = load_domain(module)
    domain = built.domain
    x = point_param(module, "x", default=built.o)
    y = point_param(module, "y")

    try:
        forward = funk_jet(domain, x, y)
        backward = funk_jet(domain, x, -y)
        g = fundamental_tensor(domain, x, y)
        g_fd = fundamental_tensor_fd(domain, x, y)
        residual = okada_residual(domain, x, y)
        F = hilbert_norm(domain, x, y)
    except HilbertLabError as e:
        module.fail_json(msg="cannot evaluate tensor: " + str(e))

    deviation = np.max(np.abs(g.as_array() - g_fd.as_array())) / np.max(np.abs(g.as_array()))
    exit_results(
        module,
        x=x,
        y=y,
        funk_forward=_funk_dict(forward),
        funk_backward=_funk_dict(backward),
        hilbert_norm=F,
        tensor=_tensor_dict(g),
        tensor_fd=dict(_tensor_dict(g_fd), relative_deviation=float(deviation)),
        okada_residual=residual,
    )


if __name__ == "__main__":
    main()
