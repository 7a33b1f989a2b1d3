"""Domain presets: disk, ellipse, radial Fourier, ball and ellipsoid."""
import numpy as np

from hilbert_lab.module_utils.convex_geometry import ConvexDomain2, quadric_body
from hilbert_lab.module_utils.errors import InputError
from hilbert_lab.module_utils.profiles import ConicShape, FourierShape


def _positive(name, value):
    value = float(value)
    if not value > 0:
        raise InputError("{0} must be positive, got {1}".format(name, value))
    return value


def ellipse_matrix(semi_axes, rotation=0.0):
    a, b = (_positive("semi-axis", s) for s in semi_axes)
    c, s = np.cos(rotation), np.sin(rotation)
    R = np.array([[c, -s], [s, c]])
    return R @ np.diag([1.0 / a ** 2, 1.0 / b ** 2]) @ R.T


def disk(radius=1.0, center=(0.0, 0.0), reference_angle=0.0, base_point=None):
    radius = _positive("radius", radius)
    shape = ConicShape(np.eye(2) / radius ** 2, center)
    base = shape.center if base_point is None else base_point
    return ConvexDomain2(base, shape.profile_about(base), reference_angle, "disk")


def ellipse(semi_axes, center=(0.0, 0.0), rotation=0.0, reference_angle=0.0, base_point=None):
    shape = ConicShape(ellipse_matrix(semi_axes, rotation), center)
    base = shape.center if base_point is None else base_point
    return ConvexDomain2(base, shape.profile_about(base), reference_angle, "ellipse")


def radial_fourier(a0, cos_terms=None, sin_terms=None, center=(0.0, 0.0), reference_angle=0.0):
    shape = FourierShape(_positive("a0", a0), cos_terms, sin_terms, center)
    return ConvexDomain2(
        shape.center, shape.profile_about(shape.center), reference_angle, "radial_fourier"
    )


def ball3(radius=1.0, center=(0.0, 0.0, 0.0)):
    radius = _positive("radius", radius)
    return quadric_body(np.eye(3) / radius ** 2, center, preset_tag="ball3")


def ellipsoid3(semi_axes, center=(0.0, 0.0, 0.0)):
    axes = [_positive("semi-axis", s) for s in semi_axes]
    if len(axes) != 3:
        raise InputError("ellipsoid needs three semi-axes")
    return quadric_body(np.diag([1.0 / s ** 2 for s in axes]), center, preset_tag="ellipsoid3")


def unit_disk():
    return disk(1.0)


def bump(amplitude=0.05, frequency=3):
    """omega = 1 + amplitude*cos(frequency*theta) about the origin."""
    return radial_fourier(1.0, {frequency: amplitude})


def reference_ellipse():
    """x1^2/2 + (x2 - 1)^2 < 1 described from its center, phi = 0 pointing at (0, 0)."""
    return ellipse((np.sqrt(2.0), 1.0), center=(0.0, 1.0), reference_angle=-np.pi / 2)
