import math

import pytest

from gnumsd.codes import GnuParams
from gnumsd.engine import InputEnsemble, distilled_state
from gnumsd.errors import NoCrossoverError, OutOfRangeError
from gnumsd.protocols import (
    ErrorCurve,
    bk_h_curve,
    bk_h_error,
    bk_h_error_ps_consistent,
    bk_h_ps,
    bk_t_curve,
    bk_t_error,
    bk_t_ps,
    canonical_params,
    combined_curve,
    compose_total_error,
    find_crossover,
    find_threshold,
    gnu_error_curve,
    repetition_error_curve,
    repetition_reference_params,
)
from gnumsd.qmath import h_state, t_state, trace_distance

U2 = GnuParams(1, 1, 2)


class TestReferenceFormulas:
    def test_t_at_zero(self):
        assert bk_t_error(0.0) == 0.0
        assert bk_t_ps(0.0) == pytest.approx(1 / 6, abs=1e-15)

    def test_t_fixed_point_region(self):
        assert bk_t_error(0.173) == pytest.approx(0.173, abs=1e-3)

    def test_t_small_noise_expansion(self):
        # leading order is 5 eps^2
        assert bk_t_error(0.01) == pytest.approx(5e-4, abs=5e-5)

    def test_t_domain(self):
        with pytest.raises(OutOfRangeError):
            bk_t_error(1.0)
        with pytest.raises(OutOfRangeError):
            bk_t_ps(1.0)

    def test_h_at_zero(self):
        assert bk_h_error(0.0) == 0.0
        assert bk_h_ps(0.0) == pytest.approx(1.0, abs=1e-15)

    def test_h_at_half(self):
        assert bk_h_error(0.5) == pytest.approx(0.5, abs=1e-15)
        assert bk_h_ps(0.5) == pytest.approx(1 / 16, abs=1e-15)

    def test_h_variants_fixed_points(self):
        # the as-given error map and the ps-matched variant bracket the
        # quoted 0.141: only the matched denominator reproduces it
        printed = find_threshold(bk_h_curve())
        assert printed.threshold == pytest.approx(0.13334, abs=5e-4)
        matched = find_threshold(
            ErrorCurve("bk-H-ps-matched", bk_h_error_ps_consistent)
        )
        assert matched.threshold == pytest.approx(0.141, abs=1e-3)

    def test_curves_vanish_at_zero_and_stay_finite(self):
        for fn in (bk_t_error, bk_h_error, bk_h_error_ps_consistent):
            assert fn(0.0) == 0.0
            for k in range(1, 5001):
                value = fn(k * 1e-4)
                assert math.isfinite(value)
                assert 0.0 <= value <= 1.0


class TestFindThreshold:
    def test_bk_t_fixed_point(self):
        result = find_threshold(bk_t_curve())
        assert result.kind == "fixed_point"
        assert result.threshold == pytest.approx(0.173, abs=1e-3)
        assert abs(bk_t_error(result.threshold) - result.threshold) < 1e-8
        assert result.bracket_width <= 1e-8

    def test_bk_h_fixed_point_is_refined(self):
        result = find_threshold(bk_h_curve())
        assert abs(bk_h_error(result.threshold) - result.threshold) < 1e-8

    def test_identity_curve_is_degenerate(self):
        result = find_threshold(ErrorCurve("identity", lambda e: e))
        assert result.kind == "degenerate_grid"
        assert result.threshold == pytest.approx(1e-3)

    def test_two_qubit_curve_certified_at_half(self):
        result = find_threshold(gnu_error_curve(U2, "XT"))
        assert result.kind == "certified_half"
        assert result.certified_at_half
        assert result.threshold == 0.5

    def test_no_suppression_curve(self):
        result = find_threshold(ErrorCurve("amp", lambda e: min(1.0, 2 * e + 1e-3)))
        assert result.kind == "no_suppression"


class TestFindCrossover:
    def test_t_crossover(self):
        value = find_crossover(gnu_error_curve(U2, "XT"), bk_t_curve())
        assert value == pytest.approx(0.114, abs=2e-3)

    def test_h_crossover(self):
        value = find_crossover(gnu_error_curve(U2, "XH"), bk_h_curve())
        assert value == pytest.approx(0.112, abs=2e-3)

    def test_identical_curves_raise(self):
        with pytest.raises(NoCrossoverError):
            find_crossover(bk_t_curve(), bk_t_curve())

    def test_disjoint_curves_raise(self):
        low = ErrorCurve("low", lambda e: 0.25 * e)
        high = ErrorCurve("high", lambda e: 0.5 * e + 1e-4)
        with pytest.raises(NoCrossoverError):
            find_crossover(low, high)


class TestComposition:
    def test_vanishes_at_zero_noise(self):
        for kind in ("T", "H"):
            assert compose_total_error(1e-6, kind) < 1e-6

    def test_combined_t_threshold(self):
        result = find_threshold(combined_curve("T"))
        assert result.threshold == pytest.approx(0.279, abs=3e-3)

    def test_combined_h_threshold(self):
        result = find_threshold(combined_curve("H"))
        assert result.threshold == pytest.approx(0.198, abs=3e-3)

    def test_composition_beats_standalone(self):
        for kind, standalone in (("T", bk_t_curve()), ("H", bk_h_curve())):
            combined = find_threshold(combined_curve(kind)).threshold
            single = find_threshold(standalone).threshold
            assert combined > single

    def test_rejects_unknown_kind(self):
        with pytest.raises(OutOfRangeError):
            compose_total_error(0.1, "XT")


class TestRepetitionCode:
    def test_reference_parameters_distil_exactly(self):
        code = GnuParams(2, 1, 1)
        targets = {"T": t_state().density(), "H": h_state().density()}
        for kind, target in targets.items():
            v, theta = repetition_reference_params(kind)
            state = distilled_state(code, InputEnsemble(v, theta, 0.0))
            assert trace_distance(state, target) <= 1e-10

    def test_no_error_suppression_on_grid(self):
        for kind in ("T", "H"):
            curve = repetition_error_curve(kind)
            for k in range(1, 501):
                eps = k * 1e-3
                assert curve(eps) >= eps - 1e-10

    def test_unknown_kind(self):
        with pytest.raises(OutOfRangeError):
            repetition_reference_params("XT")


class TestCanonicalParams:
    def test_known_two_qubit_solutions(self):
        v, theta = canonical_params(U2, "XT")
        assert v == pytest.approx(math.atan((1 + math.sqrt(3)) / 2), abs=1e-8)
        assert theta == pytest.approx(-math.pi / 4, abs=1e-8)
        v, theta = canonical_params(U2, "XH")
        assert v == pytest.approx(math.atan((1 + math.sqrt(2)) / math.sqrt(2)), abs=1e-8)
        assert theta == pytest.approx(0.0, abs=1e-8)

    def test_curve_labels(self):
        assert gnu_error_curve(U2, "XT").label == "gnu(1,1,2)-XT"
        assert combined_curve("H").label == "combined-H"
