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

from ansible.module_utils.basic import AnsibleModule

from hilbert_lab.module_utils.errors import HilbertLabError
from hilbert_lab.module_utils.expansions import EXPANSION_CHECKS, expansion_check, normalized_jet
from hilbert_lab.module_utils.projective import normalize
from hilbert_lab.module_utils.runtime import DOMAIN_ARGS, exit_results, load_domain

DOCUMENTATION = """
---
module: hilbert_normalize
author: "hilbert-lab contributors"
version_added: "0.1.0"
short_description: "Projective normalization at the distinguished boundary point"
description:
    - "Composes the Euclidean frame at p, the shear moving o onto the normal at p, the
      projective map making the boundary tangent at the opposite exit point vertical, and the
      scaling to boundary curvature 1/2 at the origin, and reports every intermediate quantity."
    - "With expansions set, also evaluates the small-x2 expansion checks at (0, x2) on the
      normalized domain."
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
    expansions:
        description:
          - Evaluate the expansion checks on the normalized domain.
        required: False
        default: False
"""

EXAMPLES = """
- hilbert_normalize:
    config: tests/presets/ellipse.cfg

- hilbert_normalize:
    config: tests/presets/bump.cfg
    phi_p: 0.5
    expansions: True
"""

RETURN = """
changed:
    description: ALWAYS RETURNS FALSE
    returned: always
    type: bool
    sample: False

normalization:
    description: parameters of the three steps, jets of the normalized boundary at the origin
      and the bound and fixed-point diagnostics
    returned: always
    type: dict
    sample: '{"alpha": 0.0, "tan_beta": 0.0, "f1_normalized": 0.0, "f2_normalized": 0.5,
             "fixed_point_error": 0.0}'

matrix:
    description: homogeneous 3x3 matrix of the composed map and its inverse
    returned: always
    type: dict

o_normalized:
    description: image of o under the composed map
    returned: always
    type: list

expansions:
    description: per check id, the extrapolated limit, expected value, residual and status
    returned: when expansions is True
    type: dict
    sample: '{"T_LEAD": {"limit": 1.0, "expected": 1.0, "status": "pass"}}'
"""


def main():
    module = AnsibleModule(
        argument_spec=dict(
            DOMAIN_ARGS, expansions=dict(type="bool", required=False, default=False)
        ),
        supports_check_mode=True,
    )
    built = load_domain(module)

    try:
        P, image, report = normalize(built.domain, built.o, built.phi_p)
    except HilbertLabError as e:
        module.fail_json(msg="cannot normalize domain: " + str(e))

    results = dict(
        normalization=report.as_dict(),
        matrix=dict(forward=P.matrix, inverse=P.inverse),
        o_normalized=P.apply(built.o),
    )

    if module.params["expansions"]:
        expansions = {}
        try:
            jet = normalized_jet(image)
            for check_id in EXPANSION_CHECKS:
                result = expansion_check(image, check_id, jet=jet)
                expansions[check_id] = dict(
                    x2=result.x2,
                    values=result.values,
                    limit=result.limit,
                    order=result.order,
                    expected=result.expected,
                    residual=result.residual,
                    tolerance=result.tolerance,
                    status=result.status,
                    detail=result.detail,
                )
        except HilbertLabError as e:
            module.fail_json(msg="cannot evaluate expansions: " + str(e))
        results["expansions"] = expansions

    exit_results(module, **results)


if __name__ == "__main__":
    main()
