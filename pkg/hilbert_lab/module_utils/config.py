"""Domain configuration files.

Flat ``key=value`` tokens separated by whitespace or newlines; ``#`` starts a comment and
tuples are comma separated::

    # radius-2 disk seen from (0, 1)
    kind=disk radius=2 center=0,2
    o=0,1 reference_angle=-1.5707963267948966
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from hilbert_lab.module_utils import presets
from hilbert_lab.module_utils.convex_geometry import planar_section
from hilbert_lab.module_utils.errors import ConfigError, HilbertLabError

log = logging.getLogger(__name__)

COMMON_KEYS = ("o", "phi_p", "reference_angle")
KIND_KEYS = {
    "disk": ("radius", "center"),
    "ellipse": ("semi_axes", "center", "rotation"),
    "radial_fourier": ("a0", "center"),
    "ball3": ("radius", "center", "plane_u", "plane_v"),
    "ellipsoid3": ("semi_axes", "center", "plane_u", "plane_v"),
}
REQUIRED_KEYS = {
    "disk": (),
    "ellipse": ("semi_axes",),
    "radial_fourier": ("a0",),
    "ball3": (),
    "ellipsoid3": ("semi_axes",),
}
SPATIAL_KINDS = ("ball3", "ellipsoid3")
TUPLE_KEYS = ("center", "semi_axes", "plane_u", "plane_v", "o")
FOURIER_KEY = re.compile(r"^(cos|sin)([1-9][0-9]*)$")
KEY_ORDER = ("kind", "radius", "semi_axes", "a0", "center", "rotation", "plane_u", "plane_v")


@dataclass(frozen=True)
class DomainConfig:
    kind: str
    params: dict
    o: tuple
    phi_p: float = 0.0
    reference_angle: float = 0.0
    lines: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def spatial(self):
        return self.kind in SPATIAL_KINDS

    def fourier_terms(self, prefix):
        out = {}
        for key, value in self.params.items():
            m = FOURIER_KEY.match(key)
            if m and m.group(1) == prefix:
                out[int(m.group(2))] = value
        return out

    def render(self):
        """Canonical text; parsing it yields an equal config."""
        tokens = ["kind={0}".format(self.kind)]
        keys = sorted(self.params, key=_render_rank)
        for key in keys:
            tokens.append("{0}={1}".format(key, _format_value(self.params[key])))
        tokens.append("o={0}".format(_format_value(self.o)))
        tokens.append("phi_p={0}".format(_format_value(self.phi_p)))
        tokens.append("reference_angle={0}".format(_format_value(self.reference_angle)))
        return "\n".join(tokens) + "\n"

    def build(self):
        """Construct the planar domain; raises ``ConfigError`` pointing at the bad line."""
        try:
            built = _build(self)
        except HilbertLabError as e:
            raise ConfigError([(self.lines.get("kind", 0), str(e))])
        if built.body is None and not built.domain.contains(built.o):
            raise ConfigError(
                [(self.lines.get("o", 0), "o={0} is not strictly interior".format(list(self.o)))]
            )
        return built


class BuiltDomain(NamedTuple):
    config: DomainConfig
    domain: object
    o: np.ndarray
    phi_p: float
    body: Optional[object] = None


def _render_rank(key):
    m = FOURIER_KEY.match(key)
    if m:
        return (len(KEY_ORDER), m.group(1), int(m.group(2)))
    return (KEY_ORDER.index(key) if key in KEY_ORDER else len(KEY_ORDER) + 1, key, 0)


def _format_value(value):
    if isinstance(value, tuple):
        return ",".join(format(v, ".17g") for v in value)
    return format(value, ".17g")


def _tokens(text):
    for lineno, line in enumerate(text.splitlines(), 1):
        for token in line.split("#", 1)[0].split():
            yield lineno, token


def parse_domain_config(text):
    errors = []
    raw = {}
    lines = {}
    for lineno, token in _tokens(text):
        key, sep, value = token.partition("=")
        if not sep or not key or not value:
            errors.append((lineno, "expected key=value, got {0!r}".format(token)))
            continue
        if key in raw:
            errors.append((lineno, "duplicate key {0!r}".format(key)))
            continue
        raw[key] = value
        lines[key] = lineno

    kind = raw.pop("kind", None)
    if kind is None:
        errors.append((0, "missing key 'kind'"))
        raise ConfigError(errors)
    if kind not in KIND_KEYS:
        errors.append((lines["kind"], "unknown kind {0!r}".format(kind)))
        raise ConfigError(errors)

    allowed = KIND_KEYS[kind] + COMMON_KEYS
    values = {}
    for key, value in raw.items():
        if key not in allowed and not (kind == "radial_fourier" and FOURIER_KEY.match(key)):
            errors.append((lines[key], "unexpected key {0!r} for kind {1}".format(key, kind)))
            continue
        try:
            if key in TUPLE_KEYS:
                values[key] = tuple(float(v) for v in value.split(","))
            else:
                values[key] = float(value)
        except ValueError:
            errors.append((lines[key], "malformed number in {0}={1}".format(key, value)))

    for key in REQUIRED_KEYS[kind] + ("o",):
        if key not in raw:
            errors.append((lines.get("kind", 0), "missing key {0!r}".format(key)))
    dim = 3 if kind in SPATIAL_KINDS else 2
    for key in ("center", "o", "plane_u", "plane_v"):
        if key in values and len(values[key]) != dim:
            errors.append((lines[key], "{0} needs {1} components".format(key, dim)))
    if "semi_axes" in values and len(values["semi_axes"]) != dim:
        errors.append((lines["semi_axes"], "semi_axes needs {0} components".format(dim)))
    if errors:
        raise ConfigError(sorted(errors))

    o = values.pop("o")
    phi_p = values.pop("phi_p", 0.0)
    reference_angle = values.pop("reference_angle", 0.0)
    config = DomainConfig(kind, values, o, phi_p, reference_angle, lines)
    log.debug("parsed %s config: %s", kind, config)
    return config


def load_domain_config(path):
    with open(path, "r", encoding="utf-8") as f:
        return parse_domain_config(f.read())


def _build(config):
    p = config.params
    ref = config.reference_angle
    if config.kind == "disk":
        domain = presets.disk(p.get("radius", 1.0), p.get("center", (0.0, 0.0)), ref)
    elif config.kind == "ellipse":
        domain = presets.ellipse(
            p["semi_axes"], p.get("center", (0.0, 0.0)), p.get("rotation", 0.0), ref
        )
    elif config.kind == "radial_fourier":
        domain = presets.radial_fourier(
            p["a0"],
            config.fourier_terms("cos"),
            config.fourier_terms("sin"),
            p.get("center", (0.0, 0.0)),
            ref,
        )
    else:
        center = p.get("center", (0.0, 0.0, 0.0))
        if config.kind == "ball3":
            body = presets.ball3(p.get("radius", 1.0), center)
        else:
            body = presets.ellipsoid3(p["semi_axes"], center)
        section = planar_section(
            body, config.o, p.get("plane_u", (1.0, 0.0, 0.0)), p.get("plane_v", (0.0, 1.0, 0.0))
        )
        if ref:
            embedding = section.embedding
            section = section.rebased(ref)
            section.embedding = embedding
        return BuiltDomain(config, section, np.zeros(2), config.phi_p, body)
    return BuiltDomain(config, domain, np.array(config.o, dtype=float), config.phi_p)
