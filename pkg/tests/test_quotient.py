"""Operator quotients and the validity cross-checks built on them."""

import numpy as np
import pytest

import biframekit as bk
from biframekit import errors, linalg, quotient
from biframekit.app.fixtures import fixture
from helpers import random_matrix, random_valid_system


class TestQuotientNorm:
    def test_diagonal_ratio(self):
        res = quotient.quotient_norm(np.diag([1.0, 1.0]), np.diag([2.0, 1.0]))
        assert res.exists
        assert res.norm == pytest.approx(1.0, abs=1e-12)  # max(1/2, 1/1)

    def test_shared_kernel(self):
        res = quotient.quotient_norm(np.diag([1.0, 0.0]), np.diag([1.0, 0.0]))
        assert res.exists
        assert res.norm == pytest.approx(1.0, abs=1e-12)

    def test_kernel_violation_puts_witness_in_gap(self):
        res = quotient.quotient_norm(np.eye(2), np.diag([1.0, 0.0]))
        assert not res.exists
        assert res.norm is None
        assert np.abs(res.violation_witness) == pytest.approx([0.0, 1.0], abs=1e-12)
        # the witness is the defining counterexample: Vw = 0 but Uw != 0
        assert np.linalg.norm(np.diag([1.0, 0.0]) @ res.violation_witness) < 1e-12
        assert np.linalg.norm(np.eye(2) @ res.violation_witness) > 0.9

    def test_invertible_denominator_reduces_to_operator_norm(self):
        rng = np.random.default_rng(8)
        for trial in range(20):
            n = int(rng.integers(1, 7))
            complex_ = trial % 2 == 0
            u = random_matrix(rng, n, n, complex_)
            v = random_matrix(rng, n, n, complex_) + 3.0 * np.eye(n)
            res = quotient.quotient_norm(u, v)
            assert res.exists
            want = linalg.spectral_norm(u @ np.linalg.inv(v))
            assert res.norm == pytest.approx(want, rel=1e-10)

    def test_achiever_attains_the_norm(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            u = random_matrix(rng, 4, 4)
            v = random_matrix(rng, 4, 4) + 3.0 * np.eye(4)
            res = quotient.quotient_norm(u, v)
            f = res.achiever
            ratio = np.linalg.norm(u @ f) / np.linalg.norm(v @ f)
            assert ratio == pytest.approx(res.norm, rel=1e-8)

    def test_zero_numerator(self):
        res = quotient.quotient_norm(np.zeros((3, 3)), np.eye(3))
        assert res.exists
        assert res.norm == 0.0

    def test_zero_denominator_nonzero_numerator(self):
        res = quotient.quotient_norm(np.eye(2), np.zeros((2, 2)))
        assert not res.exists

    def test_both_zero(self):
        res = quotient.quotient_norm(np.zeros((2, 2)), np.zeros((2, 2)))
        assert res.exists
        assert res.norm == 0.0

    def test_shape_mismatch(self):
        with pytest.raises(errors.DimensionMismatchError):
            quotient.quotient_norm(np.eye(2), np.eye(3))


class TestValidityCrossCheck:
    def test_golden_system_agrees_both_ways(self):
        out = quotient.validity_cross_check(fixture("example-3-11"))
        assert out.pencil_valid and out.quotient_bounded
        assert out.verdict is True
        assert not out.indeterminate
        # norm of [K* / sqrt(Herm S)] = 2/sqrt(5); its square inverts the
        # optimal lower bound
        assert out.quotient_norm == pytest.approx(2.0 / np.sqrt(5.0), rel=1e-9)
        assert out.lower_opt * out.quotient_norm**2 == pytest.approx(1.0, abs=1e-8)

    def test_invalid_psd_system_agrees_negatively(self):
        m = bk.DiscreteMeasure(("a", "b"), np.ones(2))
        f = np.diag([1.0, 0.0])
        sys_ = bk.BiframeSystem.from_samples(m, f, f, np.eye(2))
        out = quotient.validity_cross_check(sys_)
        assert not out.pencil_valid
        assert not out.quotient_bounded
        assert out.verdict is False

    def test_indefinite_form_is_rejected(self):
        with pytest.raises(errors.NotPSDError):
            quotient.validity_cross_check(fixture("example-3-4"))

    def test_norm_inverts_lower_bound_on_random_systems(self):
        rng = np.random.default_rng(55)
        for trial in range(25):
            sys_ = random_valid_system(rng, int(rng.integers(1, 6)),
                                       complex_=trial % 2 == 1)
            out = quotient.validity_cross_check(sys_)
            assert out.verdict is True
            assert out.lower_opt * out.quotient_norm**2 == pytest.approx(1.0, rel=1e-6)


class TestTransformEquivalences:
    def test_identity_transform(self):
        out = quotient.transform_equivalences(fixture("example-3-11"), np.eye(3))
        assert out.all_agree
        assert out.pushed_valid is True
        assert not out.degenerate

    def test_invertible_transform_random(self):
        rng = np.random.default_rng(21)
        for _ in range(10):
            sys_ = random_valid_system(rng, 4)
            t = random_matrix(rng, 4, 4)
            t = t @ t.T + 0.5 * np.eye(4)  # PSD and invertible
            out = quotient.transform_equivalences(sys_, t)
            assert out.all_agree
            assert out.pushed_valid

    def test_rank_deficient_transform_random(self):
        rng = np.random.default_rng(22)
        agree = 0
        for _ in range(10):
            sys_ = random_valid_system(rng, 4)
            half = random_matrix(rng, 4, 2)
            out = quotient.transform_equivalences(sys_, half @ half.T)
            agree += out.all_agree
        assert agree == 10

    def test_zero_transform_is_degenerate(self):
        out = quotient.transform_equivalences(fixture("example-3-11"), np.zeros((3, 3)))
        assert out.degenerate
        assert out.all_agree  # everything collapses to the zero system

    def test_transform_may_be_indefinite(self):
        # the transform is arbitrary; only the system's form must be PSD
        out = quotient.transform_equivalences(fixture("example-3-11"), -np.eye(3))
        assert out.all_agree and out.pushed_valid

    def test_indefinite_system_form_rejected(self):
        with pytest.raises(errors.NotPSDError):
            quotient.transform_equivalences(fixture("example-3-4"), np.eye(3))

    def test_dimension_mismatch(self):
        with pytest.raises(errors.DimensionMismatchError):
            quotient.transform_equivalences(fixture("example-3-11"), np.eye(2))
