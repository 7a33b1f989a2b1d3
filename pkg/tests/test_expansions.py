import numpy as np
import pytest

from hilbert_lab.module_utils.errors import InputError, NormalizationError, UnknownCheckError
from hilbert_lab.module_utils.expansions import (
    EXPANSION_CHECKS,
    expansion_check,
    extrapolate,
    normalized_jet,
)
from hilbert_lab.module_utils.projective import normalize
from hilbert_lab.module_utils.report import DIAGNOSTIC, PASS, SKIPPED


@pytest.fixture(scope="module")
def tilted_bump(bump):
    _, image, _ = normalize(bump, (0.0, 0.0), 0.3)
    return image


def test_normalized_jet_of_reference_ellipse(reference_ellipse):
    jet = normalized_jet(reference_ellipse)
    assert (jet.H, jet.f3, jet.f4) == pytest.approx((2.0, 0.0, 0.75), abs=1e-8)


def test_normalized_jet_needs_normalized_domain(unit_disk):
    with pytest.raises(NormalizationError):
        normalized_jet(unit_disk)


@pytest.mark.parametrize("check_id", ["F2_EXACT", "GARB_EXACT"])
def test_vertical_direction_is_exact(reference_ellipse, check_id):
    result = expansion_check(reference_ellipse, check_id)
    assert result.status == PASS
    assert result.residual <= 1e-9
    assert len(result.values) == 3


@pytest.mark.parametrize("check_id", ["T_LEAD", "F_LEAD", "G11_LEAD", "G22_LEAD", "THRAZN"])
def test_ellipse_leading_terms(reference_ellipse, check_id):
    result = expansion_check(reference_ellipse, check_id)
    assert result.status == PASS, result
    assert result.passed


def test_t_lead_values_approach_one(reference_ellipse):
    result = expansion_check(reference_ellipse, "T_LEAD")
    # t_plus = 2 sqrt(x2) sqrt(1 - x2/2) on this ellipse
    expected = [np.sqrt(1.0 - x2 / 2.0) for x2 in result.x2]
    assert result.values == pytest.approx(expected, abs=1e-10)
    assert result.limit == pytest.approx(1.0, abs=1e-3)


def test_g12_is_skipped_without_third_derivative(reference_ellipse):
    result = expansion_check(reference_ellipse, "G12_LEAD")
    assert result.status == SKIPPED
    assert result.passed
    assert result.values == ()


def test_tilted_bump_leading_terms(tilted_bump):
    jet = normalized_jet(tilted_bump)
    for check_id in ("T_LEAD", "F_LEAD", "G11_LEAD"):
        result = expansion_check(tilted_bump, check_id, jet=jet)
        assert result.limit == pytest.approx(1.0, abs=0.01)
    result = expansion_check(tilted_bump, "THRAZN", jet=jet)
    assert result.expected == pytest.approx(2.0 * jet.f3 / 3.0)
    assert result.limit == pytest.approx(result.expected, abs=5e-3)


def test_sqrt_coefficient_is_a_diagnostic(tilted_bump):
    result = expansion_check(tilted_bump, "F_SQRT_COEF")
    assert result.status == DIAGNOSTIC
    assert result.passed
    assert "derived" in result.detail


def test_extrapolate():
    limit, order = extrapolate([1.1, 1.01, 1.001])
    assert limit == pytest.approx(1.0, abs=1e-12)
    assert order == pytest.approx(1.0)
    limit, order = extrapolate([2.0, 3.0])
    assert limit == 3.0 and np.isnan(order)
    limit, order = extrapolate([0.5, 0.5, 0.5])
    assert limit == 0.5 and np.isnan(order)


def test_unknown_check(reference_ellipse):
    assert "T_LEAD" in EXPANSION_CHECKS
    with pytest.raises(UnknownCheckError):
        expansion_check(reference_ellipse, "T_LEADING")


@pytest.mark.parametrize("sequence", [(), (0.2,), (1e-3, 1e-2), (1e-2, 0.0), (1e-2, 1e-2)])
def test_bad_height_sequence(reference_ellipse, sequence):
    with pytest.raises(InputError):
        expansion_check(reference_ellipse, "T_LEAD", x2_sequence=sequence)


@pytest.mark.parametrize("check_id", [c for c in EXPANSION_CHECKS if c != "F_SQRT_COEF"])
def test_tilted_bump_passes_every_check(tilted_bump, check_id):
    result = expansion_check(tilted_bump, check_id)
    assert result.status == PASS, result


def test_tilted_bump_has_a_third_derivative(tilted_bump):
    jet = normalized_jet(tilted_bump)
    assert abs(jet.f3) > 0.1
    assert expansion_check(tilted_bump, "G12_LEAD", jet=jet).status == PASS
    for check_id, factor in (("T_X2COEF", -4.0 / 3.0), ("THRAZN", 2.0 / 3.0)):
        result = expansion_check(tilted_bump, check_id, jet=jet)
        assert result.limit == pytest.approx(factor * jet.f3, rel=0.02)


def test_x2_coefficient_tolerates_the_sqrt_remainder(bump):
    _, image, _ = normalize(bump, (0.0, 0.0), 0.0)
    result = expansion_check(image, "T_X2COEF")
    assert result.expected == pytest.approx(0.0, abs=1e-6)
    assert result.tolerance > 1e-4
    assert result.status == PASS, result
