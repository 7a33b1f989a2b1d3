import io

import numpy as np
import pytest

from hilbert_lab.module_utils import presets
from hilbert_lab.module_utils.errors import FitError, InputError, NormalizationError
from hilbert_lab.module_utils.finsler import hilbert_distance
from hilbert_lab.module_utils.projective import normalize
from hilbert_lab.module_utils.spheres import (
    CSV_HEADER,
    SweepRow,
    SweepTable,
    circle_jet,
    curvature_sweep,
    fit_exponential_approach,
    predicted_coefficients,
    radius_grid,
    sphere_frame,
    sphere_radial,
)


def synthetic_table(radii, column_values):
    rows = [SweepRow(r, 0.0, k, k, k, 0.0) for r, k in zip(radii, column_values)]
    return SweepTable(rows)


@pytest.fixture(scope="module")
def disk2_frame(disk2):
    return sphere_frame(disk2.domain, disk2.o, disk2.phi_p)


def test_disk2_frame(disk2_frame):
    assert disk2_frame.p == pytest.approx([0.0, 0.0], abs=1e-12)
    assert disk2_frame.omega0 == pytest.approx(1.0, abs=1e-12)
    assert disk2_frame.omega_pi == pytest.approx(3.0, abs=1e-12)
    assert disk2_frame.C == pytest.approx(4.0 / 3.0, abs=1e-12)
    assert disk2_frame.gap_coefficient == pytest.approx(4.0 / 3.0, abs=1e-12)


def test_sphere_radial(unit_disk, disk2, disk2_frame):
    frame = sphere_frame(unit_disk, (0.0, 0.0))
    assert sphere_radial(unit_disk, frame, 1.0, 0.7) == pytest.approx(np.tanh(1.0), abs=1e-14)
    assert sphere_radial(disk2.domain, disk2_frame, 1.0, 0.0) == pytest.approx(0.82734, abs=1e-5)
    radii = sphere_radial(unit_disk, frame, 2.0, np.linspace(0.0, np.pi, 5))
    assert radii == pytest.approx(np.full(5, np.tanh(2.0)), abs=1e-14)


@pytest.mark.parametrize("r,phi", [(0.5, 0.0), (1.0, 1.3), (3.0, 4.0), (5.0, 2.2)])
def test_circles_are_at_their_radius(bump, r, phi):
    frame = sphere_frame(bump, (0.1, 0.05), 0.3)
    point = frame.o + sphere_radial(bump, frame, r, phi) * frame.direction(phi)
    assert hilbert_distance(bump, frame.o, point) == pytest.approx(r, abs=1e-9)


def test_circle_jet(unit_disk, bump):
    frame = sphere_frame(unit_disk, (0.0, 0.0))
    jet = circle_jet(unit_disk, frame, 1.0, 0.8)
    assert np.linalg.norm(jet.c) == pytest.approx(np.tanh(1.0), abs=1e-14)
    assert np.linalg.norm(jet.c1) == pytest.approx(np.tanh(1.0), abs=1e-14)
    assert jet.c2 == pytest.approx(-jet.c, abs=1e-14)

    frame = sphere_frame(bump, (0.0, 0.0), 0.0)
    phi, h = 0.9, 1e-5
    jet = circle_jet(bump, frame, 1.5, phi)

    def point(s):
        return frame.o + sphere_radial(bump, frame, 1.5, s) * frame.direction(s)

    assert jet.c == pytest.approx(point(phi), abs=1e-14)
    assert jet.c1 == pytest.approx((point(phi + h) - point(phi - h)) / (2 * h), abs=1e-8)


def test_bad_radius(unit_disk):
    frame = sphere_frame(unit_disk, (0.0, 0.0))
    with pytest.raises(InputError):
        sphere_radial(unit_disk, frame, 0.0, 0.0)
    with pytest.raises(InputError):
        circle_jet(unit_disk, frame, -1.0, 0.0)


def test_radius_grid():
    assert radius_grid(1.0, 5.0, 9) == pytest.approx(np.linspace(1.0, 5.0, 9))
    assert radius_grid(2.0, 3.0, 1) == pytest.approx([2.0])
    for args in ((0.0, 1.0, 3), (2.0, 1.0, 3), (1.0, 2.0, 0)):
        with pytest.raises(InputError):
            radius_grid(*args)


def test_disk2_sweep_follows_coth(disk2, disk2_frame):
    table = curvature_sweep(disk2.domain, disk2_frame, [1.0, 2.0, 3.0])
    assert not table.errors
    expected = 1.0 / np.tanh(table.radii)
    for column in ("k_n", "k_R", "k_F"):
        assert table.column(column) == pytest.approx(expected, rel=1e-5)
    assert np.all(table.column("gap_err") < 1e-8)
    assert np.all(np.diff(table.column("x2")) < 0)


def test_normalized_ellipse_sweep_follows_coth():
    domain = presets.ellipse((1.3, 1.0), center=(0.3, -0.2), rotation=0.4, base_point=(0.4, -0.1))
    _, image, _ = normalize(domain, (0.4, -0.1), 0.7)
    frame = sphere_frame(image, image.base_point, 0.0)
    table = curvature_sweep(image, frame, [1.0, 2.0, 3.0, 4.0])
    assert not table.errors
    expected = 1.0 / np.tanh(table.radii)
    for column in ("k_n", "k_R", "k_F"):
        assert table.column(column) == pytest.approx(expected, rel=1e-5)


def test_sweep_is_deterministic(disk2, disk2_frame):
    grid = [1.0, 1.5, 2.0]
    serial = curvature_sweep(disk2.domain, disk2_frame, grid)
    threaded = curvature_sweep(disk2.domain, disk2_frame, grid, workers=3)
    assert serial.rows == threaded.rows

    first, second = io.StringIO(), io.StringIO()
    serial.write_csv(first)
    threaded.write_csv(second)
    assert first.getvalue() == second.getvalue()
    lines = first.getvalue().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 4
    assert float(lines[1].split(",")[0]) == 1.0


def test_sweep_rejects_bad_grids(disk2, disk2_frame):
    for grid in ([], [2.0, 1.0], [0.0, 1.0], [[1.0, 2.0]]):
        with pytest.raises(InputError):
            curvature_sweep(disk2.domain, disk2_frame, grid)


def test_fit_recovers_synthetic_approach():
    r = np.linspace(2.0, 5.0, 7)
    table = synthetic_table(r, 1.0 + 3.0 * np.exp(-2.0 * r))
    fit = fit_exponential_approach(table, "k_n")
    assert (fit.limit, fit.coefficient, fit.rate) == pytest.approx((1.0, 3.0, 2.0), rel=1e-9)
    assert fit.points == 7
    assert fit.rms < 1e-12
    assert not fit.free_limit


def test_fit_from_below():
    r = np.linspace(2.0, 5.0, 7)
    table = synthetic_table(r, 1.0 - 0.5 * np.exp(-1.5 * r))
    fit = fit_exponential_approach(table, "k_F")
    assert (fit.coefficient, fit.rate) == pytest.approx((-0.5, 1.5), rel=1e-9)


def test_fit_with_free_limit():
    r = np.linspace(2.0, 5.0, 10)
    table = synthetic_table(r, 1.2 + 2.0 * np.exp(-1.5 * r))
    fit = fit_exponential_approach(table, "k_n", limit=1.19, free_limit=True)
    assert (fit.limit, fit.coefficient, fit.rate) == pytest.approx((1.2, 2.0, 1.5), rel=1e-5)
    assert fit.free_limit


def test_fit_errors():
    with pytest.raises(FitError):
        fit_exponential_approach(synthetic_table([1.0, 2.0, 3.0], [1.1, 1.01, 1.001]), "k_n")
    with pytest.raises(FitError):
        fit_exponential_approach(synthetic_table(np.linspace(2.0, 5.0, 5), np.ones(5)), "k_n")
    with pytest.raises(InputError):
        fit_exponential_approach(synthetic_table([2.0], [1.5]), "x2")


def test_predictions_for_the_reference_ellipse(reference_ellipse):
    frame = sphere_frame(reference_ellipse, (0.0, 1.0), 0.0)
    predictions = predicted_coefficients(reference_ellipse, frame)
    assert (predictions.C, predictions.H, predictions.L_chord) == pytest.approx(
        (2.0, 2.0, 2.0), abs=1e-9
    )
    assert predictions.A_normal == pytest.approx(1.0, abs=1e-8)
    assert predictions.A_rund_sq == pytest.approx(2.0, abs=1e-8)
    assert predictions.A_finsler_sq == pytest.approx(6.0, abs=1e-7)
    assert predictions.for_column("k_R_sq") == predictions.A_rund_sq
    assert predictions.for_column("k_R") is None


def test_predictions_for_disk2(disk2, disk2_frame):
    predictions = predicted_coefficients(disk2.domain, disk2_frame)
    assert predictions.A_normal == pytest.approx(1.0 / 3.0, abs=1e-8)


def test_predictions_need_normalized_curvature(unit_disk):
    with pytest.raises(NormalizationError):
        predicted_coefficients(unit_disk, sphere_frame(unit_disk, (0.0, 0.0)))
