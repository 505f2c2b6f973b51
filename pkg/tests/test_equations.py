import itertools
import random
from fractions import Fraction as F

import pytest

from sigmak.analysis import midpoint_convexity_test
from sigmak.equations import (
    SigmaKPolynomial,
    StabilityVerdict,
    certify_stable,
    cone_membership,
    diagonal_restriction,
    dominates,
    elementary_symmetric,
    evaluate,
    graph_lambda_n,
    partial_restriction,
    sample_region,
    translate,
)
from sigmak.errors import (
    BadSubsetSize,
    DenominatorNotPositive,
    DimensionMismatch,
    NotStableEquation,
    SamplingExhausted,
)
from sigmak.poly import Poly, taylor_shift
from sigmak.realroots import Order, compare

EXAMPLE_11 = SigmaKPolynomial(5, (F(-20), F(9), F(-64), F(19), F(0)))
EXAMPLE_12 = SigmaKPolynomial(5, (F(-24), F(-2), F(65), F(19), F(0)))
MONGE_2 = SigmaKPolynomial(2, (F(1), F(0)))


def random_equation(rng, n, span=6):
    return SigmaKPolynomial(
        n, tuple(F(rng.randint(-span, span), rng.randint(1, 3)) for _ in range(n))
    )


def random_stable_equation(rng, n, require_strict=True, max_tries=500):
    for _ in range(max_tries):
        f = random_equation(rng, n)
        report = certify_stable(f)
        if report.is_strict or (report.is_stable and not require_strict):
            return f
    raise AssertionError("could not draw a stable equation")


class TestEvaluate:
    def test_monge_ampere_boundary(self):
        assert evaluate(MONGE_2, [F(1), F(1)]) == 0

    def test_example11_at_12(self):
        value = evaluate(EXAMPLE_11, [F(12)] * 5)
        assert value == 12**5 - 190 * 12**3 + 640 * 12**2 - 45 * 12 + 20
        assert value > 0  # 12 sits above the largest chain root

    def test_split_through_one_coordinate(self):
        # f = lam_i * (one-variable-down restriction at the rest) - weighted sum
        rng = random.Random(41)
        for _ in range(20):
            n = rng.randint(2, 5)
            f = random_equation(rng, n)
            point = [F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n)]
            rest = point[1:]
            e = elementary_symmetric(rest)
            numerator = sum(f.c[k] * e[k] for k in range(n))
            denominator = e[n - 1] - sum(f.c[k] * e[k - 1] for k in range(1, n))
            assert evaluate(f, point) == point[0] * denominator - numerator

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            evaluate(MONGE_2, [F(1)])

    def test_symmetry(self):
        rng = random.Random(42)
        for _ in range(15):
            n = rng.randint(2, 5)
            f = random_equation(rng, n)
            point = [F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)]
            value = evaluate(f, point)
            for _ in range(4):
                rng.shuffle(point)
                assert evaluate(f, point) == value


class TestPartialRestriction:
    def test_index_shift(self):
        g = partial_restriction(EXAMPLE_11, 1)
        assert g.n == 4 and g.c == (F(9), F(-64), F(19), F(0))

    def test_top_level_is_linear(self):
        g = partial_restriction(EXAMPLE_11, 4)
        assert g.n == 1 and g.c == (F(0),)
        shifted = SigmaKPolynomial(3, (F(1), F(2), F(5)))
        assert partial_restriction(shifted, 2).c == (F(5),)

    def test_monge_ampere(self):
        g = partial_restriction(SigmaKPolynomial(4, (F(3), F(0), F(0), F(0))), 1)
        assert g.c == (F(0), F(0), F(0))

    def test_subset_size_validation(self):
        with pytest.raises(BadSubsetSize):
            partial_restriction(EXAMPLE_11, 5)
        with pytest.raises(BadSubsetSize):
            partial_restriction(EXAMPLE_11, 0)
        assert partial_restriction(EXAMPLE_11, {0, 3}).n == 3


class TestDiagonalRestriction:
    def test_example11(self):
        assert diagonal_restriction(EXAMPLE_11) == Poly([20, -45, 640, -190, 0, 1])

    def test_example12(self):
        assert diagonal_restriction(EXAMPLE_12) == Poly([24, 10, -650, -190, 0, 1])

    def test_monge_ampere(self):
        assert diagonal_restriction(SigmaKPolynomial(3, (F(7), F(0), F(0)))) == Poly(
            [-7, 0, 0, 1]
        )


class TestTranslate:
    def test_degree_two_formula(self):
        rng = random.Random(43)
        for _ in range(10):
            c0 = F(rng.randint(-9, 9), rng.randint(1, 3))
            c1 = F(rng.randint(-9, 9), rng.randint(1, 3))
            g, shift = translate(SigmaKPolynomial(2, (c0, c1)))
            assert shift == c1
            assert g.c == (c0 + c1 * c1, F(0))

    def test_identity_when_top_zero(self):
        g, shift = translate(EXAMPLE_11)
        assert shift == 0 and g == EXAMPLE_11

    def test_diagonal_consistency(self):
        rng = random.Random(44)
        for _ in range(20):
            n = rng.randint(2, 6)
            f = random_equation(rng, n)
            g, shift = translate(f)
            assert diagonal_restriction(g) == taylor_shift(diagonal_restriction(f), shift)

    def test_verdict_invariant_and_chain_shifts(self):
        rng = random.Random(45)
        for n in (3, 4, 5):
            f = random_stable_equation(rng, n, require_strict=False)
            g, shift = translate(f)
            rf, rg = certify_stable(f), certify_stable(g)
            assert rf.verdict == rg.verdict
            for a, b in zip(rf.certificate.chain, rg.certificate.chain):
                assert compare(a.shift(-shift), b) is Order.EQUAL


class TestCertifyStable:
    def test_example11_strict(self):
        assert certify_stable(EXAMPLE_11).verdict is StabilityVerdict.STRICTLY_STABLE

    def test_example12_strict(self):
        assert certify_stable(EXAMPLE_12).verdict is StabilityVerdict.STRICTLY_STABLE

    def test_negative_constant_unstable(self):
        f = SigmaKPolynomial(2, (F(-1), F(0)))
        assert certify_stable(f).verdict is StabilityVerdict.NOT_STABLE


class TestMembership:
    def test_monge_ampere_inside(self):
        for n in (2, 3, 4):
            f = SigmaKPolynomial(n, (F(1),) + (F(0),) * (n - 1))
            report = cone_membership(f, [F(2)] * n)
            assert report.member_level == 0

    def test_example11_deep_point(self):
        assert cone_membership(EXAMPLE_11, [F(12)] * 5).member_level == 0

    def test_example11_level_flip(self):
        report = cone_membership(EXAMPLE_11, [F(5)] * 5)
        assert report.member_level == 3
        assert report.failing_level == 2

    def test_not_stable_rejected(self):
        with pytest.raises(NotStableEquation):
            cone_membership(SigmaKPolynomial(2, (F(-1), F(0))), [F(1), F(1)])

    def test_sorted_shortcut_matches_exhaustive(self):
        rng = random.Random(46)
        for n in (3, 4, 5):
            f = random_stable_equation(rng, n, require_strict=False)
            for _ in range(30):
                point = [F(rng.randint(-15, 25), rng.randint(1, 3)) for _ in range(n)]
                fast = cone_membership(f, point)
                full = cone_membership(f, point, exhaustive=True)
                assert fast.member_level == full.member_level

    def test_nesting_verified_exhaustively(self):
        rng = random.Random(47)
        f = EXAMPLE_11
        n = f.n
        for _ in range(40):
            point = [F(rng.randint(0, 16)) for _ in range(n)]
            report = cone_membership(f, point)
            if report.member_level is None:
                continue
            for level in range(max(report.member_level, 1), n):
                g = partial_restriction(f, level)
                for dropped in itertools.combinations(range(n), level):
                    kept = [point[i] for i in range(n) if i not in dropped]
                    assert evaluate(g, kept) > 0

    def test_monotone_under_positive_shift(self):
        rng = random.Random(48)
        f = EXAMPLE_11
        for _ in range(25):
            point = [F(rng.randint(0, 16)) for _ in range(f.n)]
            report = cone_membership(f, point)
            if report.member_level is None:
                continue
            bump = [F(rng.randint(0, 5)) for _ in range(f.n)]
            bumped = [a + b for a, b in zip(point, bump)]
            after = cone_membership(f, bumped)
            assert after.member_level is not None
            assert after.member_level <= report.member_level


class TestDominance:
    def test_example_pair(self):
        result = dominates(EXAMPLE_12, EXAMPLE_11)
        assert result.dominates
        assert [c.name for c in result.comparisons] == [
            "GREATER",
            "GREATER",
            "GREATER",
            "EQUAL",
            "EQUAL",
        ]

    def test_reflexive(self):
        result = dominates(EXAMPLE_11, EXAMPLE_11)
        assert result.dominates
        assert all(c is Order.EQUAL for c in result.comparisons)

    def test_reversed_pair_fails(self):
        assert not dominates(EXAMPLE_11, EXAMPLE_12).dominates

    def test_small_top_root_does_not_dominate(self):
        g = SigmaKPolynomial(5, (F(1), F(0), F(0), F(0), F(0)))
        assert not dominates(g, EXAMPLE_11).dominates

    def test_set_inclusion_on_samples(self):
        points = sample_region(EXAMPLE_12, 40, 7)
        for point in points:
            assert evaluate(EXAMPLE_11, point) > 0
            assert cone_membership(EXAMPLE_11, point).member_level == 0

    def test_pointwise_comparison_on_samples(self):
        # a dominating equation is pointwise below the dominated one on its region
        points = sample_region(EXAMPLE_12, 40, 8)
        for point in points:
            assert evaluate(EXAMPLE_11, point) >= evaluate(EXAMPLE_12, point)


class TestGraph:
    def test_monge_ampere(self):
        assert graph_lambda_n(MONGE_2, [F(2)]) == F(1, 2)

    def test_diagonal_self_consistency(self):
        t = F(11632, 1000)
        value = graph_lambda_n(EXAMPLE_11, [t] * 4)
        assert abs(float(value) - 11.632) < 2e-2

    def test_exact_level_set_membership(self):
        rng = random.Random(49)
        for n in (3, 4):
            f = random_stable_equation(rng, n)
            top = certify_stable(f).certificate.chain[0]
            base_value = F(round(float(top) * 100 + 150), 100)
            base = [base_value + F(i, 7) for i in range(n - 1)]
            lam = graph_lambda_n(f, base)
            assert evaluate(f, list(base) + [lam]) == 0

    def test_denominator_guard(self):
        with pytest.raises(DenominatorNotPositive):
            graph_lambda_n(MONGE_2, [F(0)])


class TestSampling:
    def test_monge_ampere_samples(self):
        points = sample_region(SigmaKPolynomial(2, (F(1), F(0))), 3, 42)
        assert len(points) == 3
        for a, b in points:
            assert a > 0 and b > 0 and a * b > 1

    def test_example11_membership(self):
        for point in sample_region(EXAMPLE_11, 5, 0):
            assert cone_membership(EXAMPLE_11, point).member_level == 0

    def test_zero_count(self):
        assert sample_region(EXAMPLE_11, 0, 1) == []

    def test_deterministic(self):
        assert sample_region(EXAMPLE_11, 4, 9) == sample_region(EXAMPLE_11, 4, 9)

    def test_requires_strict(self):
        with pytest.raises(NotStableEquation):
            sample_region(SigmaKPolynomial(2, (F(0), F(0))), 1, 0)

    def test_exhausted_budget(self):
        with pytest.raises(SamplingExhausted):
            sample_region(EXAMPLE_11, 3, 0, retry_factor=0)

    def test_float_mode_points(self):
        points = sample_region(EXAMPLE_11, 4, 3, mode="float")
        assert all(isinstance(v, float) for p in points for v in p)
        for p in points:
            assert cone_membership(EXAMPLE_11, p).member_level == 0


class TestMembershipFloatMode:
    def test_float_agrees_with_exact_away_from_boundary(self):
        rng = random.Random(50)
        for _ in range(20):
            point = [F(rng.randint(0, 16)) for _ in range(5)]
            exact = cone_membership(EXAMPLE_11, point)
            floaty = cone_membership(EXAMPLE_11, [float(v) for v in point])
            assert exact.member_level == floaty.member_level

    def test_margin_rejects_boundary_point(self):
        # (1, 1) sits exactly on the product-equation level set: exact mode
        # rejects level 0 (value is 0, not > 0), float mode likewise via margin
        exact = cone_membership(MONGE_2, [F(1), F(1)])
        floaty = cone_membership(MONGE_2, [1.0, 1.0])
        assert exact.member_level == 1
        assert floaty.member_level == 1


class TestMidpointProperty:
    def test_monge_ampere(self):
        report = midpoint_convexity_test(MONGE_2, 300, 0)
        assert report.failures == 0

    def test_example11(self):
        report = midpoint_convexity_test(EXAMPLE_11, 300, 1)
        assert report.failures == 0

    def test_refuses_non_strict(self):
        with pytest.raises(NotStableEquation):
            midpoint_convexity_test(SigmaKPolynomial(2, (F(0), F(0))), 10, 0)
