import numpy as np
import pytest

from hilbert_lab.module_utils.convex_geometry import graph_jet_at
from hilbert_lab.module_utils.errors import HorizonError, InputError
from hilbert_lab.module_utils.finsler import hilbert_distance
from hilbert_lab.module_utils.projective import (
    ProjectiveMap2,
    apply_map,
    normalize,
    step1_shear,
    step2_projective,
    step3_scale,
    third_derivative_shift,
)


def test_identity_steps():
    assert step1_shear(0.0).matrix == pytest.approx(np.eye(3))
    assert step2_projective(0.0, 3.0).apply((0.4, -0.2)) == pytest.approx([0.4, -0.2])
    assert apply_map(ProjectiveMap2.identity(), (1.5, 2.5)) == pytest.approx([1.5, 2.5])


def test_step1_shear():
    assert apply_map(step1_shear(np.pi / 4), (0.0, 1.0)) == pytest.approx([-1.0, np.sqrt(2.0)])
    linear = step1_shear(np.pi / 3).matrix[:2, :2]
    assert sorted(np.linalg.eigvals(linear).real) == pytest.approx([1.0, 2.0])


@pytest.mark.parametrize("alpha", [np.pi / 2, -np.pi / 2, 2.0])
def test_step1_shear_range(alpha):
    with pytest.raises(InputError):
        step1_shear(alpha)


def test_step2_projective():
    assert step2_projective(1.0, 2.0).apply((1.0, 1.0)) == pytest.approx([2.0, 2.0])
    for tan_beta in (-0.7, 0.3, 1.9):
        assert step2_projective(tan_beta, 3.0).apply((0.0, 3.0)) == pytest.approx([0.0, 3.0])
        assert step2_projective(tan_beta, 3.0).apply((0.0, 0.0)) == pytest.approx([0.0, 0.0])
    with pytest.raises(InputError):
        step2_projective(0.5, 0.0)


def test_step2_horizon():
    with pytest.raises(HorizonError):
        step2_projective(1.0, 1.0).apply((1.0, 0.0))


def test_step3_scale():
    assert step3_scale(1.0, 1.0).apply((1.0, 1.0)) == pytest.approx([1.0, 0.5])
    assert step3_scale(2.0, 0.5).apply((2.0, 4.0)) == pytest.approx([1.0, 1.0])
    assert step3_scale(1.0, 0.5).apply((0.3, 0.7)) == pytest.approx([0.3, 0.7])
    with pytest.raises(InputError):
        step3_scale(0.0, 1.0)


def test_exact_inverses():
    composed = step3_scale(1.3, 0.8).compose(step2_projective(0.4, 2.5)).compose(step1_shear(0.3))
    assert composed.matrix @ composed.inverse == pytest.approx(np.eye(3), abs=1e-12)
    x = np.array([0.25, 0.6])
    assert composed.apply_inverse(composed.apply(x)) == pytest.approx(x, abs=1e-12)
    assert composed.inverted().apply(composed.apply(x)) == pytest.approx(x, abs=1e-12)


def test_jacobian_matches_differences():
    pmap = step2_projective(0.8, 2.0).compose(step1_shear(-0.4))
    x = np.array([0.3, 0.9])
    h = 1e-6
    numeric = np.column_stack(
        [(pmap.apply(x + h * e) - pmap.apply(x - h * e)) / (2 * h) for e in np.eye(2)]
    )
    assert pmap.jacobian(x) == pytest.approx(numeric, abs=1e-8)


def test_push_curve_jet_of_affine_map():
    jet = np.array([[1.0, 1.0], [1.0, 0.0], [0.0, 1.0]])
    pushed = step3_scale(1.0, 1.0).push_curve_jet(jet)
    assert pushed == pytest.approx(np.array([[1.0, 0.5], [1.0, 0.0], [0.0, 0.5]]))


def test_push_curve_jet_of_projective_map():
    pmap = step2_projective(0.6, 2.0)

    def curve(s):
        return np.array([np.cos(s) * 0.5, 1.0 + np.sin(s) * 0.5])

    s0, h = 0.4, 1e-4
    jet = np.array([curve(s0), [-0.5 * np.sin(s0), 0.5 * np.cos(s0)],
                    [-0.5 * np.cos(s0), -0.5 * np.sin(s0)]])
    pushed = pmap.push_curve_jet(jet)
    image = [pmap.apply(curve(s0 + k * h)) for k in (-1, 0, 1)]
    assert pushed[0] == pytest.approx(image[1], abs=1e-14)
    assert pushed[1] == pytest.approx((image[2] - image[0]) / (2 * h), abs=1e-7)
    assert pushed[2] == pytest.approx((image[2] - 2 * image[1] + image[0]) / h ** 2, abs=1e-5)


@pytest.mark.parametrize(
    "args,expected", [((1.0, 0.5, 1.0, 2.0), 0.75), ((0.0, 1.0, -1.0, 1.0), 1.0),
                      ((0.3, 0.7, 0.0, 5.0), 0.3)]
)
def test_third_derivative_shift(args, expected):
    assert third_derivative_shift(*args) == pytest.approx(expected)


def test_third_derivative_shift_needs_positive_chord():
    with pytest.raises(InputError):
        third_derivative_shift(1.0, 0.5, 1.0, 0.0)


def test_normalize_unit_disk(unit_disk):
    P, image, report = normalize(unit_disk, (0.0, 0.0), 0.7)
    assert report.alpha == pytest.approx(0.0, abs=1e-12)
    assert report.tan_beta == pytest.approx(0.0, abs=1e-10)
    assert (report.omega_u, report.H, report.kbar0) == pytest.approx((1.0, 2.0, 1.0), abs=1e-10)
    assert report.f2_normalized == pytest.approx(0.5, abs=1e-10)
    assert report.omega_hat0 == pytest.approx(0.5, abs=1e-10)
    assert P.apply((0.0, 0.0)) == pytest.approx([0.0, 0.5], abs=1e-12)
    # image is x1^2 + (2 x2 - 1)^2 < 1
    assert image.exit_parameter((0.0, 0.5), (1.0, 0.0)) == pytest.approx(1.0, abs=1e-10)
    assert image.exit_parameter((0.0, 0.5), (0.0, 1.0)) == pytest.approx(0.5, abs=1e-10)


def test_normalize_reference_ellipse(reference_ellipse):
    P, image, report = normalize(reference_ellipse, (0.0, 1.0), 0.0)
    assert report.alpha == pytest.approx(0.0, abs=1e-12)
    assert report.tan_beta == pytest.approx(0.0, abs=1e-10)
    assert report.H == pytest.approx(2.0, abs=1e-12)
    assert report.kbar0 == pytest.approx(0.5, abs=1e-10)
    assert report.f3_normalized == pytest.approx(0.0, abs=1e-8)
    assert report.f4_normalized == pytest.approx(0.75, abs=1e-8)
    assert report.omega_hat0 == pytest.approx(1.0, abs=1e-10)
    # step 2 is homogeneous scaling by H here
    assert P.matrix / P.matrix[2, 2] == pytest.approx(np.eye(3), abs=1e-10)


def test_normalize_bump_tan_beta_bound(bump):
    _, image, report = normalize(bump, (0.0, 0.0), 0.0)
    assert abs(report.tan_beta) <= report.tan_beta_bound + 1e-8
    assert report.fixed_point_error <= 1e-10
    assert report.ktilde0 == pytest.approx(report.kbar0, abs=1e-8)
    assert report.curvature_min > 0
    assert np.isfinite(report.curvature_max)
    assert np.isfinite(report.f3_normalized)


def test_normalized_jets_off_center(disk2):
    P, image, report = normalize(disk2.domain, disk2.o, 0.3)
    assert report.alpha != pytest.approx(0.0, abs=1e-3)
    jet = graph_jet_at(image, (0.0, 0.0))
    assert jet.tangent == pytest.approx([1.0, 0.0], abs=1e-8)
    assert jet.f2 == pytest.approx(0.5, abs=1e-8)
    assert report.opposite_tangent_angle <= 1e-8


def test_normalization_preserves_distances(disk2):
    P, image, _ = normalize(disk2.domain, disk2.o, 0.3)
    pairs = [((0.0, 1.0), (0.5, 2.0)), ((-1.0, 2.5), (0.3, 0.4)), ((0.2, 3.1), (-1.2, 1.0))]
    for a, b in pairs:
        before = hilbert_distance(disk2.domain, a, b)
        after = hilbert_distance(image, P.apply(a), P.apply(b))
        assert after == pytest.approx(before, abs=1e-8)


def test_report_as_dict(reference_ellipse):
    _, _, report = normalize(reference_ellipse, (0.0, 1.0), 0.0)
    data = report.as_dict()
    assert set(data["steps"]) == {"frame", "step1", "step2", "step3", "composed"}
    assert data["H"] == pytest.approx(2.0)
