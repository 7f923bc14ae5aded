"""The bundled reference systems and their catalog."""

import numpy as np
import pytest

from biframekit import BiframeSystem, biframe_form, errors, frame_operator, verify_bounds
from biframekit.app.fixtures import Fixture, fixture, fixture_names, fixture_record

ALL_NAMES = (
    "example-3-3",
    "example-3-4",
    "example-3-5",
    "example-3-11",
    "example-5-3-left",
    "example-5-3-right",
)


def test_catalog_names():
    assert fixture_names() == ALL_NAMES


def test_unknown_name_lists_catalog():
    with pytest.raises(errors.UnknownFixtureError, match="example-3-11"):
        fixture_record("example-9-9")


@pytest.mark.parametrize("name", ALL_NAMES)
def test_records_are_complete(name):
    rec = fixture_record(name)
    assert isinstance(rec, Fixture)
    assert rec.name == name
    assert rec.description
    lo, hi = rec.claimed_bounds
    assert 0 < lo <= hi
    assert isinstance(rec.system, BiframeSystem)
    assert isinstance(fixture(name), BiframeSystem)


@pytest.mark.parametrize("name", ALL_NAMES)
def test_claims_verify_exactly_when_expected(name):
    rec = fixture_record(name)
    assert verify_bounds(rec.system, *rec.claimed_bounds) == rec.expect_valid


def test_only_the_refuted_fixture_expects_failure():
    flags = {name: fixture_record(name).expect_valid for name in ALL_NAMES}
    assert [n for n, ok in flags.items() if not ok] == ["example-3-4"]


def test_quad_nodes_controls_the_quadrature_fixture():
    assert len(fixture("example-3-4").measure) == 8
    assert len(fixture("example-3-4", quad_nodes=3).measure) == 3


def test_quad_nodes_ignored_elsewhere():
    assert len(fixture("example-3-3", quad_nodes=5).measure) == 3


def test_quadrature_fixture_form_is_resolution_independent():
    # the sampled families are polynomials of degree <= 1, so the form's
    # matrix is integrated exactly by any rule with two or more nodes
    base = frame_operator(fixture("example-3-4", quad_nodes=2))
    for n in (3, 8, 20):
        refined = frame_operator(fixture("example-3-4", quad_nodes=n))
        np.testing.assert_allclose(refined, base, atol=1e-12)


def test_refuted_fixture_has_the_documented_negative_direction():
    sys_ = fixture("example-3-4")
    bad = np.array([1.0, -1.0, 0.0]) / np.sqrt(2.0)
    assert biframe_form(sys_, bad) == pytest.approx(-1.0 / 6.0, abs=1e-12)


def test_tensor_factors_share_the_truncation_system():
    left = fixture_record("example-5-3-left")
    plain = fixture_record("example-3-5")
    np.testing.assert_array_equal(frame_operator(left.system),
                                  frame_operator(plain.system))
    assert left.claimed_bounds == plain.claimed_bounds
