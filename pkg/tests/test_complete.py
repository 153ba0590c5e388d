"""Complete games: desirability, suffix sizes, ranked payoff, corpora."""

import itertools
from fractions import Fraction as F

import pytest

from simplegames import (
    BudgetExceededError,
    alpha_of_payoff,
    complete_order,
    compute_alpha_exact,
    csg_bound_corpus,
    csg_payoff,
    cycle_game,
    desirability_ge,
    is_winning,
    new_game,
    random_weighted_voting_game,
    suffix_sizes,
)
from simplegames.complete import greedy_losing_bound, sized_weighted_game
from simplegames.games import maximal_losing
from simplegames.lp import LE, make_lp, solve_lp

WEIGHTED_2111 = new_game(4, [[1, 2], [1, 3], [1, 4], [2, 3, 4]])  # weights (2,1,1,1), quota 3
MAJ3 = new_game(3, [[1, 2], [1, 3], [2, 3]])
DICT3 = new_game(3, [[1]])


def weighted_minimal_winning(weights, quota):
    n = len(weights)
    out = []
    for mask in range(1, 1 << n):
        total = sum(weights[i] for i in range(n) if mask >> i & 1)
        if total < quota:
            continue
        if all(
            total - weights[i] < quota for i in range(n) if mask >> i & 1
        ):
            out.append([i + 1 for i in range(n) if mask >> i & 1])
    return out


def brute_desirability_ge(game, i, j):
    others = [p for p in range(1, game.n + 1) if p not in (i, j)]
    for r in range(len(others) + 1):
        for s in itertools.combinations(others, r):
            if is_winning(game, set(s) | {j}) and not is_winning(game, set(s) | {i}):
                return False
    return True


class TestDesirability:
    def test_symmetric_players(self):
        assert desirability_ge(MAJ3, 1, 2) and desirability_ge(MAJ3, 2, 1)

    def test_dictator_dominates(self):
        assert desirability_ge(DICT3, 1, 2)
        assert not desirability_ge(DICT3, 2, 1)

    def test_weighted_game(self):
        assert desirability_ge(WEIGHTED_2111, 1, 2)
        assert not desirability_ge(WEIGHTED_2111, 2, 1)  # S = {3} separates

    def test_input_validation(self):
        with pytest.raises(ValueError):
            desirability_ge(MAJ3, 1, 1)

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_brute_force(self, seed):
        from simplegames import random_game

        g = random_game(3 + seed % 5, seed, 4)
        for i in range(1, g.n + 1):
            for j in range(1, g.n + 1):
                if i != j:
                    assert desirability_ge(g, i, j) == brute_desirability_ge(g, i, j)


class TestCompleteOrder:
    def test_weighted_sorted_identity(self):
        cg = complete_order(WEIGHTED_2111)
        assert cg.ordering == (1, 2, 3, 4)

    def test_cycle6_is_not_complete(self):
        # hand witnesses: {2,3} wins while {1,3} loses, and {1,6} wins while
        # {2,6} loses, so players 1 and 2 are incomparable
        g = cycle_game(6)
        assert is_winning(g, [2, 3]) and not is_winning(g, [1, 3])
        assert is_winning(g, [1, 6]) and not is_winning(g, [2, 6])
        assert complete_order(g) is None

    def test_incomparable_pair(self):
        g = new_game(6, [[1, 2], [3, 4, 5, 6]])
        assert complete_order(g) is None

    def test_ordering_soundness(self):
        for seed in range(10):
            wvg = random_weighted_voting_game(6, seed)
            cg = complete_order(wvg.game)
            assert cg is not None
            for r in range(wvg.game.n - 1):
                assert desirability_ge(wvg.game, cg.ordering[r], cg.ordering[r + 1])


class TestSuffixSizes:
    def test_weighted_2111(self):
        assert suffix_sizes(complete_order(WEIGHTED_2111)) == (2, (2, 3))

    def test_majority(self):
        assert suffix_sizes(complete_order(MAJ3)) == (2, (2, 2))

    def test_dictator(self):
        assert suffix_sizes(complete_order(DICT3)) == (1, (1,))

    @pytest.mark.parametrize("seed", range(10))
    def test_s_vector_non_decreasing(self, seed):
        wvg = random_weighted_voting_game(4 + seed % 8, seed)
        k, s = suffix_sizes(complete_order(wvg.game))
        assert len(s) == k
        assert all(a <= b for a, b in zip(s, s[1:]))


class TestCsgPayoff:
    def test_weighted_2111(self):
        rep = csg_payoff(complete_order(WEIGHTED_2111))
        assert rep.payoff == (F(1, 2), F(1, 3), F(1, 3), F(1, 3))
        assert rep.min_winning == F(5, 6)
        assert rep.max_losing == F(2, 3)
        assert rep.ratio == F(4, 5)
        assert rep.greedy_bound == F(5, 6)
        assert rep.ratio_within_bound

    def test_majority(self):
        rep = csg_payoff(complete_order(MAJ3))
        assert rep.payoff == (F(1, 2),) * 3
        assert rep.ratio == F(1, 2)

    def test_dictator_uses_full_cap(self):
        # ranks beyond k carry payoff 1 each; the prefix bound alone is 0
        rep = csg_payoff(complete_order(DICT3))
        assert rep.payoff == (F(1),) * 3
        assert rep.max_losing == 2
        assert rep.greedy_bound == 0
        assert rep.losing_cap == 2
        assert rep.losing_prefix_ok and rep.losing_cap_ok
        assert not rep.ratio_within_bound  # 2 > sqrt(3) ln 3

    @pytest.mark.parametrize("seed", range(15))
    def test_payoff_monotone_along_order(self, seed):
        wvg = random_weighted_voting_game(4 + seed % 10, seed)
        cg = complete_order(wvg.game)
        rep = csg_payoff(cg)
        ranked = [rep.payoff[p - 1] for p in cg.ordering]
        assert all(a >= b for a, b in zip(ranked, ranked[1:]))

    @pytest.mark.parametrize("seed", range(15))
    def test_provable_inequalities(self, seed):
        wvg = random_weighted_voting_game(4 + seed % 9, 100 + seed)
        rep = csg_payoff(complete_order(wvg.game))
        assert rep.winning_floor_ok
        assert rep.losing_prefix_ok
        assert rep.losing_cap_ok
        assert rep.greedy_le_harmonic

    @pytest.mark.parametrize("seed", range(10))
    def test_losing_prefix_count_bound(self, seed):
        # every losing coalition has at most s_i - 1 members in the top i ranks
        wvg = random_weighted_voting_game(4 + seed % 7, 40 + seed)
        cg = complete_order(wvg.game)
        k, s = suffix_sizes(cg)
        rank = {p: r for r, p in enumerate(cg.ordering, start=1)}
        for losing in maximal_losing(wvg.game):
            ranks = sorted(rank[p] for p in losing.players())
            for i in range(1, k + 1):
                assert sum(1 for r in ranks if r <= i) <= s[i - 1] - 1


class TestGreedyLpEquivalence:
    @pytest.mark.parametrize("seed", range(12))
    def test_prefix_lp_optimum_matches_greedy(self, seed):
        wvg = random_weighted_voting_game(4 + seed % 9, seed)
        k, s = suffix_sizes(complete_order(wvg.game))
        objective = [F(1, si) for si in s]
        rows = [([1] * i + [0] * (k - i), LE, s[i - 1] - 1) for i in range(1, k + 1)]
        sol = solve_lp(make_lp(objective, rows, sense="max"))
        assert sol.status == "optimal"
        assert sol.objective == greedy_losing_bound(s)
        # the stated greedy point is feasible and attains it
        xs = [s[0] - 1] + [s[i] - s[i - 1] for i in range(1, k)]
        assert sum(F(x, si) for x, si in zip(xs, s)) == sol.objective
        for i in range(1, k + 1):
            assert sum(xs[:i]) <= s[i - 1] - 1


class TestCorpus:
    def test_winning_floor_exercises_both_size_classes(self):
        # the floor argument splits on coalition size vs sqrt(n); between flat
        # and skewed weight profiles both sides of the split must occur, and
        # the floor holds on each game either way
        import math

        # geometric weights concentrate power: the top pair alone wins
        heavy = new_game(
            9, weighted_minimal_winning([256, 128, 64, 32, 16, 8, 4, 2, 1], 300)
        )
        games = [heavy] + [random_weighted_voting_game(9, seed).game for seed in range(6)]
        small = large = 0
        for g in games:
            rep = csg_payoff(complete_order(g))
            assert rep.winning_floor_ok
            root = math.sqrt(g.n)
            for w in g.minimal_winning:
                if len(w) <= root:
                    small += 1
                else:
                    large += 1
        assert small > 0 and large > 0

    def test_csg_bound_corpus(self):
        report = csg_bound_corpus(8, range(8))
        assert report.all_alpha_le_ratio
        assert report.all_ratio_within_bound
        assert all(e.alpha < 1 for e in report.entries)  # weighted games

    def test_alpha_le_ratio_end_to_end(self):
        for seed in range(6):
            wvg = sized_weighted_game(10, seed)
            cg = complete_order(wvg.game)
            rep = csg_payoff(cg)
            assert rep.ratio == alpha_of_payoff(wvg.game, rep.payoff)
            assert compute_alpha_exact(wvg.game).alpha <= rep.ratio

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            csg_bound_corpus(18, [0])
