import math

import numpy as np
import pytest

from llmroi import (
    DegenerateModelError,
    NonFiniteOutputError,
    SobolSpec,
    ValidationError,
    saltelli_sample,
    sobol_analyze,
)

UNIT_2D = {"x1": (0.0, 1.0), "x2": (0.0, 1.0)}
PI_BOX_3D = {"x1": (-math.pi, math.pi), "x2": (-math.pi, math.pi),
             "x3": (-math.pi, math.pi)}


def additive(x):
    # f = x1 + 2*x2 on the unit square: V = 1/12 + 4/12, S1 = 0.2, S2 = 0.8
    return x[:, 0] + 2.0 * x[:, 1]


def ishigami(x):
    a, b = 7.0, 0.1
    return (np.sin(x[:, 0]) + a * np.sin(x[:, 1]) ** 2
            + b * x[:, 2] ** 4 * np.sin(x[:, 0]))


def ishigami_analytic(a=7.0, b=0.1):
    pi4 = math.pi ** 4
    v1 = 0.5 * (1.0 + b * pi4 / 5.0) ** 2
    v2 = a * a / 8.0
    v13 = 8.0 * b * b * math.pi ** 8 / 225.0
    v = v1 + v2 + v13
    first = (v1 / v, v2 / v, 0.0)
    total = ((v1 + v13) / v, v2 / v, v13 / v)
    second = {(0, 2): v13 / v, (0, 1): 0.0, (1, 2): 0.0}
    return v, first, total, second


class TestAdditiveOracle:
    def test_first_order(self):
        spec = SobolSpec(model=additive, ranges=UNIT_2D, base_samples=2 ** 12,
                         seed=5)
        indices = sobol_analyze(spec)
        assert indices.variables == ("x1", "x2")
        assert indices.first_order[0] == pytest.approx(0.2, abs=0.01)
        assert indices.first_order[1] == pytest.approx(0.8, abs=0.01)
        assert indices.total_order[0] == pytest.approx(0.2, abs=0.01)
        assert indices.total_order[1] == pytest.approx(0.8, abs=0.01)
        assert indices.output_variance == pytest.approx(5.0 / 12.0, abs=0.01)

    def test_no_interaction(self):
        spec = SobolSpec(model=additive, ranges=UNIT_2D, base_samples=2 ** 12,
                         second_order=True, seed=5)
        indices = sobol_analyze(spec)
        assert abs(indices.second_order[0][1]) <= 0.01
        assert indices.second_order[0][1] == indices.second_order[1][0]
        assert indices.second_order[0][0] == 0.0

    def test_error_shrinks_with_sample_size(self):
        def max_error(exponent):
            spec = SobolSpec(model=additive, ranges=UNIT_2D,
                             base_samples=2 ** exponent, seed=9)
            indices = sobol_analyze(spec)
            return max(abs(indices.first_order[0] - 0.2),
                       abs(indices.first_order[1] - 0.8))
        assert max_error(14) < max_error(6)


class TestIshigamiOracle:
    def test_all_indices(self):
        spec = SobolSpec(model=ishigami, ranges=PI_BOX_3D,
                         base_samples=2 ** 14, second_order=True, seed=2)
        indices = sobol_analyze(spec)
        _, first, total, second = ishigami_analytic()
        for i in range(3):
            assert indices.first_order[i] == pytest.approx(first[i], abs=0.05)
            assert indices.total_order[i] == pytest.approx(total[i], abs=0.05)
        for (i, j), value in second.items():
            assert indices.second_order[i][j] == pytest.approx(value, abs=0.05)

    def test_variance(self):
        spec = SobolSpec(model=ishigami, ranges=PI_BOX_3D,
                         base_samples=2 ** 14, seed=2)
        v, *_ = ishigami_analytic()
        assert sobol_analyze(spec).output_variance == pytest.approx(v, rel=0.02)


class TestDesign:
    def test_budget_shapes(self):
        spec = SobolSpec(model=additive, ranges=UNIT_2D, base_samples=64)
        assert spec.evaluation_budget == 64 * 4
        assert sobol_analyze(spec).evaluations_used == 64 * 4
        spec2 = SobolSpec(model=additive, ranges=UNIT_2D, base_samples=64,
                          second_order=True)
        assert spec2.evaluation_budget == 64 * 6
        assert sobol_analyze(spec2).evaluations_used == 64 * 6

    def test_sample_respects_bounds(self):
        design = saltelli_sample({"u": (2.0, 3.0), "v": (-1.0, 0.0)},
                                 256, True, seed=4)
        for matrix in (design.a, design.b):
            assert matrix.shape == (256, 2)
            assert np.all((matrix[:, 0] >= 2.0) & (matrix[:, 0] <= 3.0))
            assert np.all((matrix[:, 1] >= -1.0) & (matrix[:, 1] <= 0.0))
        assert not np.array_equal(design.a, design.b)

    def test_cross_matrix_chunks(self):
        design = saltelli_sample(UNIT_2D, 128, True, seed=6)
        ab0 = design.chunk(2, 10, 20)
        assert np.array_equal(ab0[:, 0], design.b[10:20, 0])
        assert np.array_equal(ab0[:, 1], design.a[10:20, 1])
        ba1 = design.chunk(2 + design.dimension + 1, 0, 5)
        assert np.array_equal(ba1[:, 1], design.a[0:5, 1])
        assert np.array_equal(ba1[:, 0], design.b[0:5, 0])
        with pytest.raises(IndexError):
            design.chunk(99, 0, 5)

    def test_matrix_labels(self):
        design = saltelli_sample(UNIT_2D, 64, True, seed=1)
        labels = [design.matrix_label(i) for i in range(design.matrix_count)]
        assert labels == ["A", "B", "AB0", "AB1", "BA0", "BA1"]


class TestDeterminism:
    def test_worker_count_invariance(self):
        spec = SobolSpec(model="single-earnings", base_samples=2 ** 13,
                         second_order=True, seed=11)
        base = sobol_analyze(spec, workers=1)
        for workers in (2, 5):
            other = sobol_analyze(spec, workers=workers)
            assert other.first_order == base.first_order
            assert other.total_order == base.total_order
            assert other.second_order == base.second_order
            assert other.output_variance == base.output_variance

    def test_multi_chunk_parallel_parity(self):
        # base sample above the chunk size forces several blocks per matrix
        spec = SobolSpec(model=additive, ranges=UNIT_2D, base_samples=2 ** 16,
                         seed=3)
        assert sobol_analyze(spec, workers=4) == sobol_analyze(spec, workers=1)

    def test_seed_changes_estimates(self):
        a = sobol_analyze(SobolSpec(model=additive, ranges=UNIT_2D,
                                    base_samples=256, seed=1))
        b = sobol_analyze(SobolSpec(model=additive, ranges=UNIT_2D,
                                    base_samples=256, seed=2))
        assert a.first_order != b.first_order

    def test_progress_monotone_and_complete(self):
        fractions = []
        spec = SobolSpec(model=additive, ranges=UNIT_2D, base_samples=2 ** 16,
                         seed=1)
        sobol_analyze(spec, workers=3, on_progress=fractions.append)
        assert fractions == sorted(fractions)
        assert fractions[-1] == pytest.approx(1.0, abs=1e-12)
        assert len(fractions) >= 4


class TestInvariants:
    @pytest.mark.parametrize("model", ["single-earnings", "binary-earnings"])
    def test_total_dominates_first_order(self, model):
        spec = SobolSpec(model=model, base_samples=2 ** 12, seed=8)
        indices = sobol_analyze(spec)
        for s_i, s_ti in zip(indices.first_order, indices.total_order):
            assert s_ti >= s_i - indices.noise_bound

    def test_first_order_sums_near_one_for_additive(self):
        spec = SobolSpec(model=additive, ranges=UNIT_2D, base_samples=2 ** 12,
                         seed=5)
        indices = sobol_analyze(spec)
        assert sum(indices.first_order) == pytest.approx(1.0, abs=0.01)

    def test_noise_bound_shrinks_with_sample_size(self):
        def bound(exponent):
            spec = SobolSpec(model=additive, ranges=UNIT_2D,
                             base_samples=2 ** exponent, seed=5)
            return sobol_analyze(spec).noise_bound
        small, large = bound(8), bound(14)
        assert small > 0.0 and large > 0.0
        assert large < small


class TestBootstrap:
    def test_intervals_bracket_estimates(self):
        spec = SobolSpec(model=additive, ranges=UNIT_2D, base_samples=2 ** 10,
                         second_order=True, seed=5, bootstrap_resamples=200)
        indices = sobol_analyze(spec)
        ci = indices.confidence_intervals
        assert ci is not None
        for i in range(2):
            lo, hi = ci["first_order"][i]
            assert lo <= indices.first_order[i] <= hi
            lo, hi = ci["total_order"][i]
            assert lo <= indices.total_order[i] <= hi
        pair = ci["second_order"][0]
        assert pair["i"] == 0 and pair["j"] == 1
        assert pair["low"] <= indices.second_order[0][1] <= pair["high"]

    def test_interval_determinism(self):
        spec = SobolSpec(model=additive, ranges=UNIT_2D, base_samples=2 ** 9,
                         seed=5, bootstrap_resamples=100)
        assert sobol_analyze(spec).confidence_intervals == \
            sobol_analyze(spec).confidence_intervals

    def test_disabled_by_default(self):
        spec = SobolSpec(model=additive, ranges=UNIT_2D, base_samples=256)
        assert sobol_analyze(spec).confidence_intervals is None


class TestFailureModes:
    def test_constant_model_degenerate(self):
        spec = SobolSpec(model=lambda x: np.ones(x.shape[0]),
                         ranges=UNIT_2D, base_samples=256)
        with pytest.raises(DegenerateModelError):
            sobol_analyze(spec)

    def test_non_finite_output_names_row(self):
        def exploding(x):
            out = x[:, 0].copy()
            out[x[:, 1] > 0.5] = np.inf
            return out
        spec = SobolSpec(model=exploding, ranges=UNIT_2D, base_samples=256)
        with pytest.raises(NonFiniteOutputError) as err:
            sobol_analyze(spec)
        assert err.value.row is not None
        assert "matrix" in str(err.value)

    def test_wrong_output_shape(self):
        spec = SobolSpec(model=lambda x: x, ranges=UNIT_2D, base_samples=256)
        with pytest.raises(ValidationError):
            sobol_analyze(spec)


class TestSpecValidation:
    def test_callable_needs_ranges(self):
        with pytest.raises(ValidationError):
            SobolSpec(model=additive)

    def test_named_model_default_ranges(self):
        spec = SobolSpec(model="single-earnings", base_samples=64)
        assert tuple(spec.resolved_ranges()) == ("G", "L", "C", "P", "T")

    def test_range_reordering(self):
        ranges = {"T": (1.0, 2.0), "P": (0.1, 0.9), "C": (0.1, 1.0),
                  "L": (0.0, 1.0), "G": (1.0, 2.0)}
        spec = SobolSpec(model="single-earnings", ranges=ranges,
                         base_samples=64)
        assert tuple(spec.resolved_ranges()) == ("G", "L", "C", "P", "T")

    def test_wrong_variable_set(self):
        with pytest.raises(ValidationError):
            SobolSpec(model="single-earnings", ranges={"G": (0.0, 1.0)},
                      base_samples=64)

    def test_degenerate_range(self):
        with pytest.raises(ValidationError):
            SobolSpec(model=additive, ranges={"x1": (1.0, 1.0),
                                              "x2": (0.0, 1.0)},
                      base_samples=64)

    def test_binary_probability_box_guard(self):
        ranges = {"G": (1.0, 2.0), "L_FP": (0.0, 1.0), "L_FN": (0.0, 1.0),
                  "C": (0.1, 1.0), "P_FP": (0.0, 0.5), "P_FN": (0.0, 0.5),
                  "P_TP": (0.0, 0.5), "T": (10.0, 100.0)}
        with pytest.raises(ValidationError):
            SobolSpec(model="binary-earnings", ranges=ranges, base_samples=64)

    def test_seed_and_samples_validation(self):
        with pytest.raises(ValidationError):
            SobolSpec(model=additive, ranges=UNIT_2D, base_samples=4)
        with pytest.raises(ValidationError):
            SobolSpec(model=additive, ranges=UNIT_2D, base_samples=64, seed=-1)
        with pytest.raises(ValidationError):
            SobolSpec(model="quadratic")

    def test_bad_worker_env(self, monkeypatch):
        monkeypatch.setenv("LLM_ROI_THREADS", "many")
        spec = SobolSpec(model=additive, ranges=UNIT_2D, base_samples=64)
        with pytest.raises(ValidationError):
            sobol_analyze(spec)
