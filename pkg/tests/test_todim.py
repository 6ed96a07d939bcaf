import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from buitodim import (
    Bui,
    DecisionMatrix,
    ExtendedBui,
    TodimParams,
    ValidationError,
    ValueFunctions,
    criterion_dominance,
    dominance_matrix,
    normalize,
    overall_performance,
    pair_dominance,
    rank,
    relative_weights,
)
from buitodim.todim import GAIN, LOSS, ZERO, classify_pair

from oracles import naive_dominance, naive_performance

CASE_STUDY = [
    [(0.337, 0.726), (0.357, 0.815), (0.736, 0.624), (0.573, 0.699)],
    [(0.336, 0.721), (0.275, 0.682), (0.719, 0.720), (0.546, 0.733)],
    [(0.341, 0.737), (0.315, 0.745), (0.744, 0.673), (0.528, 0.750)],
]
CASE_WEIGHTS = (0.2453, 0.2571, 0.2523, 0.2453)

unit = st.floats(0.0, 1.0, allow_nan=False)
buis = st.builds(Bui, unit, unit)


def random_matrix(rng, n, m):
    return DecisionMatrix.from_array(rng.uniform(size=(n, m, 2)), weights=rng.dirichlet(np.ones(m)))


@pytest.fixture
def case_matrix():
    return DecisionMatrix.from_array(CASE_STUDY, weights=CASE_WEIGHTS)


class TestParams:
    @pytest.mark.parametrize(
        "kwargs", [{"alpha": 0}, {"beta": -1}, {"theta": 0.5}, {"profile": "other"}, {"alpha": math.nan}]
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValidationError):
            TodimParams(**kwargs)

    def test_profiles_differ_only_in_loss_weight(self):
        paper = ValueFunctions.power(TodimParams(beta=2, profile="paper"))
        consistent = ValueFunctions.power(TodimParams(beta=2, profile="consistent"))
        assert paper.g1(0.5) == consistent.g1(0.5) == consistent.g2(0.5) == 0.25
        assert paper.g2(0.5) == 4.0


class TestDecisionMatrix:
    def test_shape_checks(self):
        with pytest.raises(ValidationError):
            DecisionMatrix.from_array(np.zeros((2, 2)))
        with pytest.raises(ValidationError, match=r"cell \(1, 0\)"):
            DecisionMatrix.from_array([[(0.1, 0.2)], [(1.5, 0.2)]])
        with pytest.raises(ValidationError):
            DecisionMatrix.from_array([[(0.1, 0.2)]], weights=(0.5, 0.5))
        with pytest.raises(ValidationError):
            DecisionMatrix.from_array([[(0.1, 0.2)]], directions=("sideways",))

    def test_cost_orientation(self):
        m = DecisionMatrix.from_array([[(0.2, 0.7), (0.4, 0.3)]], weights=(0.5, 0.5), directions=("cost", "benefit"))
        oriented = m.benefit_oriented()
        assert oriented.assessments[0][0] == Bui(0.8, 0.7)
        assert oriented.assessments[0][1] == Bui(0.4, 0.3)


class TestRelativeWeights:
    def test_case_study(self):
        w, r = relative_weights(CASE_WEIGHTS)
        assert r == 1
        assert w == pytest.approx(CASE_WEIGHTS, abs=1e-12)

    def test_uniform(self):
        w, r = relative_weights([0.25] * 4)
        assert r == 0 and w == pytest.approx([0.25] * 4)

    def test_concentrated(self):
        assert relative_weights([1, 0, 0]) == ((1.0, 0.0, 0.0), 0)


class TestCriterionDominance:
    def test_identical_inputs(self):
        params = TodimParams()
        vf = ValueFunctions.power(params)
        z = Bui(0.4, 0.8)
        out = criterion_dominance(z, z, 0.3, vf, params)
        assert out.x == 0.0 and out.c == pytest.approx(0.6, abs=1e-12)

    def test_gain(self):
        params = TodimParams(profile="consistent")
        out = criterion_dominance(Bui(0.7, 1), Bui(0.2, 1), 0.5, ValueFunctions.power(params), params)
        assert out.x == pytest.approx(0.25, abs=1e-12) and out.c == 1.0

    def test_inverse_weight_loss(self):
        params = TodimParams(theta=2, profile="paper")
        out = criterion_dominance(Bui(0.2, 1), Bui(0.7, 1), 0.5, ValueFunctions.power(params), params)
        assert out.x == pytest.approx(-0.5, abs=1e-12) and out.c == 1.0

    @given(buis, buis)
    def test_classification_antisymmetric(self, a, b):
        swap = {GAIN: LOSS, LOSS: GAIN, ZERO: ZERO}
        assert classify_pair(b, a) == swap[classify_pair(a, b)]

    @given(buis, buis, st.floats(0.01, 1.0), st.floats(1.0, 10.0), st.floats(1.0, 10.0))
    def test_theta_only_shrinks_losses(self, a, b, w, t1, t2):
        lo, hi = sorted((t1, t2))
        p_lo, p_hi = TodimParams(theta=lo), TodimParams(theta=hi)
        vf = ValueFunctions.power(p_lo)
        d_lo = criterion_dominance(a, b, w, vf, p_lo)
        d_hi = criterion_dominance(a, b, w, vf, p_hi)
        if d_lo.x > 0:
            assert d_hi.x == d_lo.x
        else:
            assert abs(d_hi.x) <= abs(d_lo.x) + 1e-15

    def test_gain_grows_with_difference(self):
        params = TodimParams(alpha=0.7, profile="consistent")
        vf = ValueFunctions.power(params)
        values = [criterion_dominance(Bui(x, 1), Bui(0.1, 1), 0.4, vf, params).x for x in np.linspace(0.15, 1, 30)]
        assert all(b >= a for a, b in zip(values, values[1:]))


class TestPairDominance:
    def test_self(self, case_matrix):
        assert pair_dominance(1, 1, case_matrix) == ExtendedBui(0.0, 1.0)

    def test_index_range(self, case_matrix):
        with pytest.raises(IndexError):
            pair_dominance(0, 3, case_matrix)

    def test_single_criterion_collapses(self):
        params = TodimParams(alpha=0.8, theta=1.5)
        m = DecisionMatrix.from_array([[(0.6, 0.9)], [(0.3, 0.7)]], weights=(1.0,))
        vf = ValueFunctions.power(params)
        expected = criterion_dominance(Bui(0.6, 0.9), Bui(0.3, 0.7), 1.0, vf, params)
        got = pair_dominance(0, 1, m, vf, params)
        assert got.x == pytest.approx(expected.x, abs=1e-15) and got.c == pytest.approx(expected.c, abs=1e-15)

    @pytest.mark.parametrize("profile", ["paper", "consistent"])
    def test_case_study_against_naive(self, case_matrix, profile):
        params = TodimParams(profile=profile)
        naive = naive_dominance(CASE_STUDY, CASE_WEIGHTS, profile=profile)
        for i in range(3):
            for j in range(3):
                got = pair_dominance(i, j, case_matrix, params=params)
                assert got.x == pytest.approx(naive[i][j][0], abs=1e-10)
                assert got.c == pytest.approx(naive[i][j][1], abs=1e-10)


class TestDominanceMatrix:
    def test_zero_diagonal(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            dom = dominance_matrix(random_matrix(rng, 4, 3))
            assert all(dom[i][i] == ExtendedBui(0.0, 1.0) for i in range(4))
            assert all(0.0 <= d.c <= 1.0 for row in dom for d in row)

    @pytest.mark.parametrize("profile", ["paper", "consistent"])
    def test_random_against_naive(self, profile):
        rng = np.random.default_rng(11)
        params = TodimParams(alpha=0.88, beta=0.7, theta=2.25, profile=profile)
        for _ in range(50):
            n, m = int(rng.integers(1, 5)), int(rng.integers(1, 4))
            matrix = random_matrix(rng, n, m)
            dom = dominance_matrix(matrix, params=params)
            rows = matrix.to_array().tolist()
            naive = naive_dominance(rows, matrix.weights, 0.88, 0.7, 2.25, profile)
            for i in range(n):
                for j in range(n):
                    assert dom[i][j].x == pytest.approx(naive[i][j][0], abs=1e-10)
                    assert dom[i][j].c == pytest.approx(naive[i][j][1], abs=1e-10)
                perf = overall_performance(i, dom)
                expected = naive_performance(naive[i])
                assert perf.x == pytest.approx(expected[0], abs=1e-10)
                assert perf.c == pytest.approx(expected[1], abs=1e-10)


class TestOverallPerformance:
    def test_single_alternative(self):
        dom = [[ExtendedBui(0.0, 1.0)]]
        assert overall_performance(0, dom) == ExtendedBui(0.0, 1.0)

    def test_zero_row(self):
        dom = [[ExtendedBui(0.0, 1.0), ExtendedBui(0.0, 0.4)], [ExtendedBui(0.0, 0.4), ExtendedBui(0.0, 1.0)]]
        out = overall_performance(0, dom)
        assert out.x == 0.0 and out.c == pytest.approx(0.7, abs=1e-12)


class TestNormalize:
    def test_min_max(self):
        xi, flat = normalize([ExtendedBui(0.2, 0.3), ExtendedBui(0.8, 0.4), ExtendedBui(0.5, 0.5)])
        assert [z.x for z in xi] == pytest.approx([0.0, 1.0, 0.5])
        assert [z.c for z in xi] == [0.3, 0.4, 0.5]
        assert not flat

    def test_flat(self):
        xi, flat = normalize([ExtendedBui(0.3, 0.1)] * 3)
        assert flat and all(z.x == 0.5 for z in xi)

    def test_signed(self):
        xi, _ = normalize([ExtendedBui(-0.4, 1), ExtendedBui(0.0, 1), ExtendedBui(0.6, 1)])
        assert [z.x for z in xi] == pytest.approx([0.0, 0.4, 1.0])

    def test_empty(self):
        with pytest.raises(ValidationError):
            normalize([])

    @given(st.lists(st.floats(-5, 5), min_size=2, max_size=6), st.floats(-10, 10))
    def test_shift_invariance(self, data, shift):
        base = [ExtendedBui(x, 0.5) for x in data]
        moved = [ExtendedBui(x + shift, 0.5) for x in data]
        xi_a, flat_a = normalize(base)
        xi_b, flat_b = normalize(moved)
        if not flat_a and not flat_b and max(data) - min(data) > 1e-6:
            assert [z.x for z in xi_a] == pytest.approx([z.x for z in xi_b], abs=1e-9)


class TestRank:
    @pytest.mark.parametrize("profile", ["paper", "consistent"])
    def test_case_study(self, case_matrix, profile):
        report = rank(case_matrix, params=TodimParams(profile=profile))
        assert report.order == ["A3", "A2", "A1"]
        assert report.reference_criterion == "C2"
        assert all(0.0 <= z.x <= 1.0 for z in report.normalized)

    def test_single_alternative(self):
        report = rank(DecisionMatrix.from_array([[(0.3, 0.3), (0.9, 0.2)]], weights=(0.5, 0.5)))
        assert report.order == ["A1"]
        assert report.diagnostics.degenerate_spread

    def test_identical_rows_tie(self):
        row = [(0.3, 0.6), (0.7, 0.9)]
        report = rank(DecisionMatrix.from_array([row, row], weights=(0.4, 0.6)))
        assert report.order == ["A1", "A2"]
        assert report.performances[0] == report.performances[1]
        assert report.diagnostics.ties

    def test_cost_direction_flips(self):
        arr = [[(0.9, 1.0)], [(0.1, 1.0)]]
        assert rank(DecisionMatrix.from_array(arr, weights=(1.0,))).order == ["A1", "A2"]
        assert rank(DecisionMatrix.from_array(arr, weights=(1.0,), directions=("cost",))).order == ["A2", "A1"]

    def test_deterministic(self, case_matrix):
        assert rank(case_matrix).to_dict() == rank(case_matrix).to_dict()

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_criterion_permutation_invariance(self, seed):
        rng = np.random.default_rng(seed)
        n, m = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        matrix = random_matrix(rng, n, m)
        perm = rng.permutation(m)
        arr = matrix.to_array()[:, perm, :]
        permuted = DecisionMatrix.from_array(arr, weights=np.array(matrix.weights)[perm])
        a, b = rank(matrix), rank(permuted)
        for pa, pb in zip(a.performances, b.performances):
            assert pa.x == pytest.approx(pb.x, abs=1e-12) and pa.c == pytest.approx(pb.c, abs=1e-12)
        if not a.diagnostics.ties:
            assert a.order == b.order

    def test_report_serializes(self, case_matrix):
        d = rank(case_matrix).to_dict()
        assert d["order"] == ["A3", "A2", "A1"]
        assert d["params"]["profile"] == "paper"
        assert len(d["possibility"]["matrix"]) == 3
