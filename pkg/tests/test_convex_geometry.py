import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hilbert_lab.module_utils import presets
from hilbert_lab.module_utils.convex_geometry import (
    angle_cosine_bound,
    boundary_curvature,
    boundary_point,
    chord,
    graph_jet_at,
    planar_section,
    ray_exit,
    recenter,
)
from hilbert_lab.module_utils.errors import DomainError, InputError, NonConvexDomainError

angles = st.floats(min_value=0.0, max_value=2 * np.pi, allow_nan=False)


def test_boundary_point_follows_reference_direction():
    domain = presets.disk(1.0, reference_angle=-np.pi / 2)
    assert boundary_point(domain, 0.0) == pytest.approx([0.0, -1.0], abs=1e-15)
    assert boundary_point(domain, np.pi) == pytest.approx([0.0, 1.0], abs=1e-15)


def test_bump_boundary_point(bump):
    assert np.linalg.norm(boundary_point(bump, 0.0)) == pytest.approx(1.05, abs=1e-14)


@given(phi=angles)
@settings(max_examples=25, deadline=None)
def test_disk_curvature_is_inverse_radius(phi):
    assert boundary_curvature(presets.unit_disk(), phi) == pytest.approx(1.0, abs=1e-12)
    assert boundary_curvature(presets.disk(2.0), phi) == pytest.approx(0.5, abs=1e-12)


def test_bump_curvature(bump):
    assert boundary_curvature(bump, 0.0) == pytest.approx(1.360546, abs=1e-6)


def test_ray_exit(unit_disk, reference_ellipse):
    hit = ray_exit(unit_disk, (0.0, 0.0), (0.0, 1.0))
    assert hit.t_plus == pytest.approx(1.0, abs=1e-13)
    assert hit.exit == pytest.approx([0.0, 1.0], abs=1e-13)
    assert ray_exit(unit_disk, (0.5, 0.0), (1.0, 0.0)).t_plus == pytest.approx(0.5, abs=1e-13)
    assert ray_exit(reference_ellipse, (0.0, 0.5), (1.0, 0.0)).t_plus == pytest.approx(
        np.sqrt(1.5), abs=1e-12
    )


def test_ray_exit_scales_with_direction(unit_disk):
    t = ray_exit(unit_disk, (0.2, -0.1), (0.3, 0.4)).t_plus
    assert ray_exit(unit_disk, (0.2, -0.1), (3.0, 4.0)).t_plus == pytest.approx(t / 10, rel=1e-12)


def test_ray_exit_rejects_bad_input(unit_disk):
    with pytest.raises(DomainError):
        ray_exit(unit_disk, (1.0, 0.0), (1.0, 0.0))
    with pytest.raises(DomainError):
        ray_exit(unit_disk, (2.0, 0.0), (1.0, 0.0))
    with pytest.raises(InputError):
        ray_exit(unit_disk, (0.0, 0.0), (0.0, 0.0))


def test_chord(unit_disk, reference_ellipse):
    info = chord(unit_disk, (0.5, 0.0), (1.0, 0.0))
    assert info.r_plus == pytest.approx(0.5, abs=1e-13)
    assert info.r_minus == pytest.approx(1.5, abs=1e-13)
    assert info.length == pytest.approx(2.0, abs=1e-13)

    info = chord(reference_ellipse, (0.0, 0.5), (0.0, 1.0))
    assert (info.r_plus, info.r_minus) == pytest.approx((1.5, 0.5), abs=1e-12)


@given(phi=angles)
@settings(max_examples=20, deadline=None)
def test_center_chords_of_unit_disk(phi):
    info = chord(presets.unit_disk(), (0.0, 0.0), (np.cos(phi), np.sin(phi)))
    assert (info.r_plus, info.r_minus) == pytest.approx((1.0, 1.0), abs=1e-12)


@pytest.mark.parametrize(
    "domain,point,expected",
    [
        (presets.disk(2.0), (0.0, -2.0), (0.5, 0.0, 0.375)),
        (presets.disk(2.0), (np.sqrt(2.0), np.sqrt(2.0)), (0.5, 0.0, 0.375)),
        (presets.reference_ellipse(), (0.0, 0.0), (0.5, 0.0, 0.75)),
        (presets.unit_disk(), (1.0, 0.0), (1.0, 0.0, 3.0)),
    ],
)
def test_graph_jet(domain, point, expected):
    jet = graph_jet_at(domain, point)
    assert jet.point == pytest.approx(point, abs=1e-12)
    assert (jet.f2, jet.f3, jet.f4) == pytest.approx(expected, abs=1e-8)


def test_graph_jet_frame_points_inside(reference_ellipse):
    jet = graph_jet_at(reference_ellipse, (0.0, 0.0))
    assert jet.tangent == pytest.approx([1.0, 0.0], abs=1e-12)
    assert jet.normal == pytest.approx([0.0, 1.0], abs=1e-12)


def test_angle_bound_unit_disk(unit_disk):
    report = angle_cosine_bound(unit_disk, (0.0, 0.0))
    assert report.min_cos == pytest.approx(1.0, abs=1e-12)
    assert report.bound == pytest.approx(1.0, abs=1e-9)
    assert report.holds


def test_angle_bound_off_center_disk():
    report = angle_cosine_bound(presets.disk(2.0, (0.0, 2.0)), (0.0, 1.0))
    assert report.omega0 == pytest.approx(1.0, abs=1e-9)
    assert report.bound == pytest.approx(0.5, abs=1e-9)
    assert report.min_cos >= 0.5
    assert report.holds


def test_angle_bound_bump(bump):
    report = angle_cosine_bound(bump, (0.0, 0.0))
    assert report.omega0 == pytest.approx(0.95, abs=1e-9)
    assert report.holds


def test_nonconvex_fourier_is_rejected():
    with pytest.raises(NonConvexDomainError) as err:
        presets.radial_fourier(1.0, {3: 0.2})
    assert 0.0 <= err.value.phi < 2 * np.pi


def test_recenter_keeps_the_boundary(disk2):
    centered = recenter(disk2.domain, (0.0, 1.0), -np.pi / 2)
    assert centered.radial(0.0)[0] == pytest.approx(1.0, abs=1e-12)
    assert centered.radial(np.pi)[0] == pytest.approx(3.0, abs=1e-12)
    assert centered.boundary_point(0.3) == pytest.approx(
        ray_exit(disk2.domain, (0.0, 1.0), centered.direction(0.3)).exit, abs=1e-10
    )


def test_recenter_fourier_domain(bump):
    o = np.array([0.1, -0.05])
    centered = recenter(bump, o, 0.0)
    for phi in (0.0, 1.0, 2.5):
        point = centered.boundary_point(phi)
        expected = bump.radial(bump.angle_of(point))[0]
        assert np.linalg.norm(point) == pytest.approx(expected, abs=1e-9)


def test_recenter_rejects_exterior_point(unit_disk):
    with pytest.raises(DomainError):
        recenter(unit_disk, (1.5, 0.0), 0.0)


def test_ball_section_is_unit_disk():
    section = planar_section(presets.ball3(), (0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0))
    assert section.radial(np.linspace(0, 2 * np.pi, 7))[0] == pytest.approx(np.ones(7), abs=1e-12)


def test_ellipsoid_sections():
    body = presets.ellipsoid3((1.0, 1.0, 2.0))
    flat = planar_section(body, (0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0))
    assert flat.radial(np.array([0.0, 1.0, 2.0]))[0] == pytest.approx([1.0, 1.0, 1.0], abs=1e-12)

    tall = planar_section(body, (0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 0.0, 1.0))
    assert tall.boundary_point(0.0) == pytest.approx([1.0, 0.0], abs=1e-12)
    assert tall.boundary_point(np.pi / 2) == pytest.approx([0.0, 2.0], abs=1e-12)
    o, E = tall.embedding
    assert E.T @ E == pytest.approx(np.eye(2), abs=1e-15)


def test_degenerate_section_plane():
    with pytest.raises(InputError):
        planar_section(presets.ball3(), (0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (2.0, 0.0, 0.0))
