"""Error profiles, summary statistics, breakdown ordering."""

import math

import numpy as np
import pytest

from cssnet import (
    CellScope,
    CssArray,
    actor_errors,
    derive_truth,
    error_breakdown_table,
    error_summary,
)
from cssnet.errors import ActorErrorProfile, pearson

from oracles import oracle_actor_errors, oracle_pearson, oracle_truth
from conftest import make_random_css


def _profile(actor_id, rate1, rate2):
    return ActorErrorProfile(
        actor_id=actor_id,
        type1_count=0,
        type2_count=0,
        possible_type1=10,
        possible_type2=10,
        type1_rate=rate1,
        type2_rate=rate2,
    )


class TestActorErrors:
    def test_perfect_perceiver(self, rng):
        css = make_random_css(rng, 5)
        truth = derive_truth(css)
        # overwrite perceiver 3's slice with the truth itself
        css.cells[:, :, 2] = truth.adjacency
        p = actor_errors(css, truth, 3)
        assert (p.type1_count, p.type2_count) == (0, 0)
        assert p.type1_rate == 0.0 and p.type2_rate == 0.0

    def test_complement_perceiver_maxes_both_rates(self, rng):
        css = make_random_css(rng, 5, density=0.4)
        truth = derive_truth(css)
        comp = (1 - truth.adjacency).astype(np.uint8)
        np.fill_diagonal(comp, 0)
        css.cells[:, :, 1] = comp
        p = actor_errors(css, truth, 2)
        assert p.type1_count == p.possible_type1
        assert p.type2_count == p.possible_type2
        assert p.type1_rate == 1.0 and p.type2_rate == 1.0

    def test_four_actor_bruteforce(self, rng):
        for _ in range(30):
            css = make_random_css(rng, 4)
            truth = derive_truth(css)
            for m in range(1, 5):
                got = actor_errors(css, truth, m)
                want = oracle_actor_errors(
                    css.cells, 4, oracle_truth(css.cells, 4), m - 1, True
                )
                assert got.type1_count == want["type1"]
                assert got.type2_count == want["type2"]
                assert got.possible_type1 == want["possible1"]
                assert got.possible_type2 == want["possible2"]
                assert got.type1_rate == pytest.approx(want["rate1"], abs=1e-15)
                assert got.type2_rate == pytest.approx(want["rate2"], abs=1e-15)

    def test_all_cells_scope_adds_diagonal_to_possible1_only(self, rng):
        css = make_random_css(rng, 6)
        truth = derive_truth(css)
        off = actor_errors(css, truth, 1, CellScope.ALL_OFF_DIAGONAL)
        full = actor_errors(css, truth, 1, CellScope.ALL_CELLS)
        assert full.possible_type1 == off.possible_type1 + 6
        assert full.possible_type2 == off.possible_type2
        assert full.type1_count == off.type1_count  # slices have zero diagonals
        assert full.type2_count == off.type2_count

    def test_possible_counts_partition_scope(self, rng):
        css = make_random_css(rng, 7)
        truth = derive_truth(css)
        ones = truth.tie_count()
        p = actor_errors(css, truth, 4, CellScope.ALL_OFF_DIAGONAL)
        assert p.possible_type1 == 7 * 7 - 7 - ones
        assert p.possible_type2 == ones
        q = actor_errors(css, truth, 4, CellScope.ALL_CELLS)
        assert q.possible_type1 == 7 * 7 - ones

    def test_degenerate_flag_when_truth_is_empty(self):
        cells = np.zeros((3, 3, 3), dtype=np.uint8)
        css = CssArray(3, "advice", cells)
        truth = derive_truth(css)
        p = actor_errors(css, truth, 1)
        assert p.possible_type2 == 0
        assert p.type2_rate == 0.0
        assert p.degenerate_type2 and not p.degenerate_type1

    def test_relabeling_invariance(self, rng):
        for _ in range(20):
            n = int(rng.integers(3, 7))
            css = make_random_css(rng, n)
            truth = derive_truth(css)
            perm = rng.permutation(n)
            permuted = CssArray(
                n,
                css.relation_name,
                css.cells[np.ix_(perm, perm, perm)],
            )
            truth_p = derive_truth(permuted)
            for m0 in range(n):
                a = actor_errors(css, truth, int(perm[m0]) + 1)
                b = actor_errors(permuted, truth_p, m0 + 1)
                assert (a.type1_rate, a.type2_rate) == (b.type1_rate, b.type2_rate)


class TestErrorSummary:
    def test_identical_profiles_zero_sd_missing_correlation(self):
        profiles = [_profile(i, 0.2, 0.5) for i in range(1, 5)]
        s = error_summary(profiles)
        assert s.sd_type1 == 0.0 and s.sd_type2 == 0.0
        assert math.isnan(s.correlation)

    def test_two_opposite_slopes_give_minus_one(self):
        s = error_summary([_profile(1, 0.1, 0.9), _profile(2, 0.3, 0.7)])
        assert s.correlation == pytest.approx(-1.0, abs=1e-12)

    def test_single_profile_missing_sd_and_correlation(self):
        s = error_summary([_profile(1, 0.1, 0.9)])
        assert math.isnan(s.sd_type1) and math.isnan(s.correlation)
        assert s.mean_type1 == pytest.approx(0.1)

    def test_pearson_matches_bruteforce(self, rng):
        for _ in range(50):
            x = rng.random(12)
            y = rng.random(12)
            assert pearson(x, y) == pytest.approx(
                oracle_pearson(list(x), list(y)), abs=1e-12
            )

    def test_sd_uses_sample_denominator(self):
        profiles = [_profile(1, 0.0, 0.0), _profile(2, 1.0, 1.0)]
        s = error_summary(profiles)
        # two points 0 and 1: sample sd = sqrt(0.5)
        assert s.sd_type1 == pytest.approx(math.sqrt(0.5), abs=1e-12)


class TestBreakdownTable:
    def test_perfect_dataset_all_zero(self):
        # every slice equals the truth: build slices all equal to one matrix
        n = 4
        base = np.zeros((n, n), dtype=np.uint8)
        base[0, 1] = base[1, 0] = base[2, 3] = 1
        cells = np.repeat(base[:, :, None], n, axis=2)
        css = CssArray(n, "advice", cells)
        table = error_breakdown_table(css)
        assert all(p.total == 0 for p in table)

    def test_sorted_by_total_then_actor_id(self, rng):
        css = make_random_css(rng, 6)
        table = error_breakdown_table(css)
        keys = [(p.total, p.actor_id) for p in table]
        assert keys == sorted(keys)

    def test_matches_bruteforce_counts(self, rng):
        css = make_random_css(rng, 4)
        truth = derive_truth(css)
        table = {p.actor_id: p for p in error_breakdown_table(css, truth)}
        for m in range(1, 5):
            want = oracle_actor_errors(
                css.cells, 4, oracle_truth(css.cells, 4), m - 1, True
            )
            assert table[m].type1_count == want["type1"]
            assert table[m].type2_count == want["type2"]

    def test_equal_totals_preserve_actor_order(self):
        n = 4
        cells = np.zeros((n, n, n), dtype=np.uint8)
        css = CssArray(n, "advice", cells)  # all totals zero
        table = error_breakdown_table(css)
        assert [p.actor_id for p in table] == [1, 2, 3, 4]
