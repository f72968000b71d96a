import math
from fractions import Fraction

import pytest

from kommute import formulas, oracle
from kommute.perm import CycleType


def T(*parts):
    return CycleType.from_parts(parts)


class TestSuccessorFreeCycles:
    def test_matches_brute_force(self):
        for k in range(1, 10):
            assert formulas.successor_free_cycles(k) == oracle.successor_free_cycles(k)

    def test_k_zero(self):
        assert formulas.successor_free_cycles(0) == 1

    def test_known_values(self):
        got = [formulas.successor_free_cycles(k) for k in range(8)]
        assert got == [1, 0, 0, 1, 1, 8, 36, 229]


class TestDerangedMatchings:
    def test_matches_brute_force(self):
        for j in range(8):
            assert formulas.deranged_matchings(j) == oracle.deranged_matchings(j)

    def test_known_values(self):
        got = [formulas.deranged_matchings(j) for j in range(6)]
        assert got == [1, 0, 2, 8, 60, 544]


class TestSmallDistances:
    def test_k0_identity(self):
        assert formulas.count_k0(T(1, 1, 1, 1)) == 24

    def test_k0_mixed(self):
        assert formulas.count_k0(T(3, 2)) == 6

    def test_k1_k2_zero(self):
        for t in CycleType.all_types(6):
            assert formulas.count_k1(t) == 0
            assert formulas.count_k2(t) == 0

    def test_k3_mixed_example(self):
        assert formulas.count_k3(T(3, 2)) == 42

    def test_k3_identity(self):
        assert formulas.count_k3(T(1, 1, 1, 1)) == 0

    def test_k3_transposition_closed_form(self):
        for n in range(2, 9):
            t = CycleType.from_parts([2] + [1] * (n - 2))
            assert formulas.count_k3(t) == 4 * (n - 2) * math.factorial(n - 2)

    def test_k4_transposition_s4(self):
        parts = formulas.count_k4_parts(T(2, 1, 1))
        assert parts[(2, 1, 1)] == 4
        assert formulas.count_k4(T(2, 1, 1)) == 4

    def test_k4_double_transposition(self):
        parts = formulas.count_k4_parts(T(2, 2))
        assert parts[(2, 2)] == 16
        assert formulas.count_k4(T(2, 2)) == 16
        assert formulas.fpf_involution_count(4, 2) == 16

    def test_k4_five_cycle(self):
        parts = formulas.count_k4_parts(T(5))
        assert parts[(4,)] == 25
        assert formulas.count_k4(T(5)) == 25 == formulas.count_for_ncycle(4, 5)


class TestSingleCycleCount:
    def test_five_cycle(self):
        assert formulas.single_cycle_count(T(5), 3) == 50

    def test_mixed(self):
        assert formulas.single_cycle_count(T(3, 2), 3) == 6

    def test_no_long_cycle(self):
        assert formulas.single_cycle_count(T(2, 1, 1), 3) == 0

    def test_k_below_three(self):
        with pytest.raises(ValueError, match="k >= 3"):
            formulas.single_cycle_count(T(5), 2)

    def test_ncycle_case_matches_tkn(self):
        for n in range(3, 9):
            for k in range(3, n + 1):
                assert formulas.single_cycle_count(T(n), k) == formulas.count_for_ncycle(k, n)


class TestTouchedCyclesCount:
    def test_zero_core(self):
        assert formulas.touched_cycles_count(0, T(3, 2), {3: 1}) == 0

    def test_empty_touched(self):
        t = T(3, 2)
        assert formulas.touched_cycles_count(7, t, {}) == 7 * t.centralizer_order()

    def test_reproduces_single_cycle_count(self):
        # summing the one-cycle core over lengths rebuilds the closed form
        for t in CycleType.all_types(7):
            for k in (3, 4):
                total = 0
                for length in range(k, 8):
                    if not t.count(length):
                        continue
                    core = (
                        length
                        * math.comb(length, k)
                        * formulas.successor_free_cycles(k)
                    )
                    total += formulas.touched_cycles_count(core, t, {length: 1})
                assert total == formulas.single_cycle_count(t, k)

    def test_too_many_touched(self):
        with pytest.raises(ValueError, match="cannot touch"):
            formulas.touched_cycles_count(1, T(3, 2), {3: 2})

    def test_always_exact_for_integer_cores(self):
        # the scaling factor times the centralizer order is an integer for
        # any integer core, so the result equals the rational computation
        for t in CycleType.all_types(6):
            for length in range(1, 7):
                for h in range(t.count(length) + 1):
                    got = formulas.touched_cycles_count(5, t, {length: h})
                    want = (
                        5
                        * t.centralizer_order()
                        * math.comb(t.count(length), h)
                        * Fraction(1, math.factorial(h) * length**h)
                    )
                    assert got == want


class TestNCycleCounts:
    def test_examples(self):
        assert formulas.count_for_ncycle(3, 3) == 3
        assert formulas.count_for_ncycle(5, 5) == 40
        assert formulas.count_for_ncycle(4, 5) == 25

    def test_low_k(self):
        for n in range(1, 10):
            assert formulas.count_for_ncycle(0, n) == n
            if n >= 2:
                assert formulas.count_for_ncycle(1, n) == 0
                assert formulas.count_for_ncycle(2, n) == 0

    def test_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            formulas.count_for_ncycle(6, 5)

    def test_rows_sum_to_factorial(self):
        for n in range(1, 13):
            assert sum(formulas.count_for_ncycle(k, n) for k in range(n + 1)) == math.factorial(n)

    def test_binomial_transform_is_shifted_factorial(self):
        for n in range(1, 13):
            total = sum(
                math.comb(n, k) * formulas.successor_free_cycles(k)
                for k in range(n + 1)
            )
            assert total == math.factorial(n - 1)


class TestTranspositionCounts:
    def test_example(self):
        assert formulas.transposition_count(3, 4) == 16

    def test_high_distances_vanish(self):
        for n in range(5, 10):
            for k in range(5, n + 1):
                assert formulas.transposition_count(k, n) == 0

    def test_distribution_sums_to_factorial(self):
        for n in range(2, 9):
            total = sum(formulas.transposition_count(k, n) for k in range(n + 1))
            assert total == math.factorial(n)

    def test_degree_too_small(self):
        with pytest.raises(ValueError):
            formulas.transposition_count(0, 1)


class TestFpfInvolutionCounts:
    def test_centralizer(self):
        assert formulas.fpf_involution_count(0, 2) == 8

    def test_example(self):
        assert formulas.fpf_involution_count(4, 2) == 16

    def test_distance_two_vanishes(self):
        for m in range(2, 8):
            assert formulas.fpf_involution_count(2, m) == 0

    def test_odd_vanishes(self):
        for m in range(2, 6):
            for k in range(1, 2 * m, 2):
                assert formulas.fpf_involution_count(k, m) == 0

    def test_m_too_small(self):
        with pytest.raises(ValueError):
            formulas.fpf_involution_count(0, 1)


class TestSupportBound:
    def test_identity(self):
        assert formulas.support_bound(T(1, 1, 1)) == 0

    def test_transposition(self):
        assert formulas.support_bound(T(2, 1, 1, 1)) == 4

    def test_fixed_point_free(self):
        assert formulas.support_bound(T(3, 3)) == 12


class TestTailRatio:
    def test_values(self):
        assert formulas.tail_ratio(5, 0) == Fraction(1, 3)
        assert formulas.tail_ratio(5, 2) == Fraction(5, 12)

    def test_m_must_be_below_n(self):
        with pytest.raises(ValueError):
            formulas.tail_ratio(5, 5)

    def test_inv_e_precision(self):
        # consecutive partial sums bracket the limit within 1/(terms+1)!
        a, b = formulas.inv_e(60), formulas.inv_e(61)
        assert abs(a - b) < Fraction(1, math.factorial(60))


class TestDispatch:
    def test_low_distance(self):
        r = formulas.count(T(3, 2), 1)
        assert (r.value, r.provenance) == (0, "low_distance_zero")

    def test_transposition_any_k(self):
        r = formulas.count(T(2, 1, 1), 3)
        assert (r.value, r.provenance) == (16, "transposition")
        assert formulas.count(T(2, 1, 1, 1, 1), 6).value == 0

    def test_fpf_involution(self):
        r = formulas.count(T(2, 2, 2), 6)
        assert r.provenance == "fpf_involution"
        assert r.value == formulas.fpf_involution_count(6, 3)

    def test_ncycle(self):
        r = formulas.count(T(6), 5)
        assert (r.value, r.provenance) == (formulas.count_for_ncycle(5, 6), "n_cycle")

    def test_generic_small_k(self):
        assert formulas.count(T(3, 2), 0).provenance == "centralizer"
        assert formulas.count(T(3, 2), 3).provenance == "distance_3"
        assert formulas.count(T(3, 2), 4).provenance == "distance_4"

    def test_beyond_reach_is_zero(self):
        # distance above the metric/support range needs no formula
        assert formulas.count(T(3, 2), 6).value == 0

    def test_no_closed_form(self):
        with pytest.raises(formulas.NoClosedFormError, match="method=brute"):
            formulas.count(T(4, 3), 5)

    def test_dispatch_agrees_with_brute_force(self):
        for n in range(2, 7):
            for t in CycleType.all_types(n):
                d = oracle.distribution(t.representative())
                for k in range(n + 1):
                    try:
                        got = formulas.count(t, k).value
                    except formulas.NoClosedFormError:
                        continue
                    assert got == d[k], (t.parts(), k)
