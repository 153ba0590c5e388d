"""Game core: construction, classification, maximal losing sets, blocker."""

import itertools

import pytest

from simplegames import (
    BudgetExceededError,
    Coalition,
    SimpleGame,
    blocker,
    cycle_game,
    game_from_json,
    game_stats,
    game_to_json,
    is_winning,
    maximal_losing,
    new_game,
    random_game,
)


# Independent oracle: plain frozenset arithmetic, no bit tables.

def brute_is_winning(game, members):
    s = frozenset(members)
    return any(set(w.players()) <= s for w in game.minimal_winning)


def brute_maximal_losing(game):
    players = range(1, game.n + 1)
    losing = [
        frozenset(s)
        for r in range(game.n + 1)
        for s in itertools.combinations(players, r)
        if not brute_is_winning(game, s)
    ]
    out = [l for l in losing if not any(l < other for other in losing)]
    return sorted(tuple(sorted(l)) for l in out)


def brute_blocker(game):
    players = range(1, game.n + 1)
    covers = [
        frozenset(c)
        for r in range(game.n + 1)
        for c in itertools.combinations(players, r)
        if all(set(c) & set(w.players()) for w in game.minimal_winning)
    ]
    out = [c for c in covers if not any(other < c for other in covers)]
    return sorted(tuple(sorted(c)) for c in out)


def as_tuples(coalitions):
    return sorted(c.players() for c in coalitions)


MAJ3 = new_game(3, [[1, 2], [1, 3], [2, 3]])
DICT3 = new_game(3, [[1]])


class TestConstruction:
    def test_cycle_game_example(self):
        g = cycle_game(4)
        assert as_tuples(g.minimal_winning) == [(1, 2), (1, 4), (2, 3), (3, 4)]
        assert new_game(4, [[1, 2], [2, 3], [3, 4], [1, 4]]) == g

    def test_pruning(self):
        g = new_game(3, [[1], [1, 2]])
        assert as_tuples(g.minimal_winning) == [(1,)]

    def test_empty_coalition_rejected(self):
        with pytest.raises(ValueError):
            new_game(3, [[]])

    def test_empty_list_rejected(self):
        with pytest.raises(ValueError):
            new_game(3, [])

    def test_out_of_range_player(self):
        with pytest.raises(ValueError):
            new_game(3, [[1, 4]])

    def test_direct_constructor_enforces_antichain(self):
        with pytest.raises(ValueError):
            SimpleGame(3, (Coalition.of(1), Coalition.of(1, 2)))

    def test_cycle_game_domain(self):
        with pytest.raises(ValueError):
            cycle_game(5)
        with pytest.raises(ValueError):
            cycle_game(2)
        assert cycle_game(6).n == 6
        assert len(cycle_game(6).minimal_winning) == 6


class TestClassification:
    def test_superset_of_edge_wins(self):
        assert is_winning(cycle_game(4), [1, 2, 3])

    def test_alternating_set_loses(self):
        assert not is_winning(cycle_game(4), [1, 3])

    def test_grand_coalition_wins(self):
        for g in (cycle_game(4), MAJ3, DICT3):
            assert is_winning(g, range(1, g.n + 1))

    def test_empty_coalition_loses(self):
        assert not is_winning(MAJ3, [])

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            is_winning(MAJ3, [4])


class TestMaximalLosing:
    def test_cycle4(self):
        assert as_tuples(maximal_losing(cycle_game(4))) == [(1, 3), (2, 4)]

    def test_dictator(self):
        assert as_tuples(maximal_losing(DICT3)) == [(2, 3)]

    def test_majority(self):
        assert as_tuples(maximal_losing(MAJ3)) == [(1,), (2,), (3,)]

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            maximal_losing(new_game(30, [[1]]))

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_brute_force(self, seed):
        g = random_game(2 + seed % 7, seed, 2 + seed % 5)
        assert as_tuples(maximal_losing(g)) == brute_maximal_losing(g)


class TestBlocker:
    def test_cycle4(self):
        assert as_tuples(blocker(cycle_game(4))) == [(1, 3), (2, 4)]

    def test_dictator(self):
        assert as_tuples(blocker(DICT3)) == [(1,)]

    def test_majority(self):
        assert as_tuples(blocker(MAJ3)) == [(1, 2), (1, 3), (2, 3)]

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_brute_force(self, seed):
        g = random_game(2 + seed % 7, 1000 + seed, 2 + seed % 5)
        assert as_tuples(blocker(g)) == brute_blocker(g)

    @pytest.mark.parametrize("seed", range(25))
    def test_complement_identity(self, seed):
        g = random_game(3 + seed % 10, seed, 3 + seed % 7)
        complements = sorted(c.complement(g.n).players() for c in blocker(g))
        assert complements == as_tuples(maximal_losing(g))


class TestInvariants:
    @pytest.mark.parametrize("seed", range(15))
    def test_antichain(self, seed):
        g = random_game(4 + seed % 9, seed, 4 + seed % 9)
        for a in g.minimal_winning:
            for b in g.minimal_winning:
                assert a is b or not a.issubset(b)

    @pytest.mark.parametrize("seed", range(8))
    def test_monotonicity_exhaustive(self, seed):
        g = random_game(4 + seed % 5, 50 + seed, 5)
        n = g.n
        for mask in range(1 << n):
            if is_winning(g, Coalition(mask)):
                for i in range(n):
                    assert is_winning(g, Coalition(mask | 1 << i))

    @pytest.mark.parametrize("seed", range(10))
    def test_partition_count(self, seed):
        g = random_game(4 + seed, seed, 6)
        stats = game_stats(g)
        assert stats.winning + stats.losing == 1 << g.n
        assert stats.winning == sum(
            1 for m in range(1 << g.n) if is_winning(g, Coalition(m))
        )


class TestRandomGame:
    def test_deterministic(self):
        assert random_game(6, 1, 5) == random_game(6, 1, 5)

    def test_two_player_antichains(self):
        g = random_game(2, 7, 1)
        assert as_tuples(g.minimal_winning) in ([(1,)], [(2,)], [(1, 2)])

    def test_validates(self):
        g = random_game(10, 42, 8)
        assert new_game(g.n, g.minimal_winning) == g

    def test_domain(self):
        with pytest.raises(ValueError):
            random_game(1, 0, 1)
        with pytest.raises(ValueError):
            random_game(30, 0, 1)


class TestBudgetBoundaries:
    def test_enumeration_at_the_cap(self):
        # n = 24 is the largest size the subset-table operations accept
        g = random_game(24, 1, 12)
        ml = maximal_losing(g)
        bl = blocker(g)
        assert sorted(c.complement(24).players() for c in bl) == as_tuples(ml)

    def test_mask_limit_game(self):
        g = cycle_game(64)
        assert is_winning(g, [63, 64])
        assert not is_winning(g, list(range(1, 64, 2)))
        with pytest.raises(ValueError):
            new_game(64, [[65]])


class TestJson:
    def test_round_trip_is_canonical(self):
        g = cycle_game(4)
        text = game_to_json(g)
        assert game_to_json(game_from_json(text)) == text
        assert '"n": 4' in text

    def test_parse_canonicalizes(self):
        raw = '{"n": 3, "minimal_winning": [[2, 1], [3, 1], [1, 2, 3]]}'
        g = game_from_json(raw)
        assert as_tuples(g.minimal_winning) == [(1, 2), (1, 3)]

    def test_bad_payload(self):
        with pytest.raises(ValueError):
            game_from_json('{"n": 3}')

    @pytest.mark.parametrize("seed", range(6))
    def test_random_round_trip(self, seed):
        g = random_game(8, seed, 8)
        assert game_from_json(game_to_json(g)) == g
