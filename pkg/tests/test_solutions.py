import itertools

import pytest

from fifo_stackup import (
    BinSolution,
    BudgetError,
    Instance,
    PalletSolution,
    SplitMix64,
    TransformStuckError,
    brute_force_bin_orders,
    brute_force_pallet_orders,
    open_set_trace,
    opening_order,
    replay,
    solve_min_places,
    transform,
)

from conftest import TWO_QUEUE_PROCESSING, THREE_QUEUE_PROCESSING, random_fifo_order, tiny_instance


def all_fifo_orders(inst):
    """Every valid bin solution of a small instance."""
    lengths = [len(seq) for seq in inst.sequences]
    queue_ids = [j for j, length in enumerate(lengths) for _ in range(length)]
    seen = set()
    for perm in itertools.permutations(queue_ids):
        if perm in seen:
            continue
        seen.add(perm)
        positions = [0] * inst.k
        moves = []
        for j in perm:
            positions[j] += 1
            moves.append((j, positions[j]))
        yield BinSolution(tuple(moves))


class TestTransform:
    def test_two_queue_instance_exact_moves(self, two_queue_instance):
        t_sol = PalletSolution.from_symbols(two_queue_instance, ["c", "d", "e", "a", "b"])
        b_sol = transform(two_queue_instance, t_sol)
        assert b_sol.moves == (
            (1, 1), (1, 2), (1, 3), (1, 4), (0, 1), (0, 2),
            (1, 5), (1, 6), (0, 3), (0, 4), (1, 7), (1, 8))
        assert replay(two_queue_instance, b_sol).max_open == 3

    def test_three_queue_reference_processing(self, three_queue_instance):
        t_sol = PalletSolution.from_symbols(three_queue_instance, list("abcde"))
        b_sol = transform(three_queue_instance, t_sol)
        assert b_sol.moves == THREE_QUEUE_PROCESSING
        assert replay(three_queue_instance, b_sol).max_open == 2

    def test_single_sequence(self):
        inst = Instance.from_pallet_lists([list("aabb")])
        b_sol = transform(inst, PalletSolution.from_symbols(inst, ["a", "b"]))
        assert b_sol.moves == ((0, 1), (0, 2), (0, 3), (0, 4))
        assert replay(inst, b_sol).max_open == 1

    def test_incomplete_order_stalls(self, two_queue_instance):
        with pytest.raises(TransformStuckError, match="stuck"):
            transform(two_queue_instance, PalletSolution.from_symbols(two_queue_instance, ["a", "b"]))

    def test_duplicate_order_rejected(self, two_queue_instance):
        with pytest.raises(ValueError):
            PalletSolution.from_symbols(two_queue_instance, ["a", "a", "b", "c", "d"])

    @pytest.mark.parametrize("seed", range(30))
    def test_replay_valid_and_opening_order_matches(self, seed):
        """For realizable pallet orders, transform opens pallets in that order."""
        inst = tiny_instance(seed, min_bins=1)
        rng = SplitMix64(seed + 99)
        counts = inst.bin_counts()
        b_random = BinSolution(random_fifo_order(inst, rng))
        t_sol = opening_order(inst, b_random)
        b_sol = transform(inst, t_sol)
        report = replay(inst, b_sol)
        assert report.valid
        induced = opening_order(inst, b_sol)
        keep = [t for t in t_sol.order if counts[t] >= 2]
        assert [t for t in induced.order if counts[t] >= 2] == keep


class TestReplay:
    def test_reference_processing(self, two_queue_instance):
        report = replay(two_queue_instance, BinSolution(TWO_QUEUE_PROCESSING))
        assert report.valid
        assert report.max_open == 3
        assert report.open_trace == (0, 1, 2, 3, 2, 3, 3, 2, 1, 2, 2, 1, 0)

    def test_fifo_violation(self, two_queue_instance):
        moves = ((0, 2), (0, 1)) + tuple((1, p) for p in range(1, 9)) + ((0, 3), (0, 4))
        report = replay(two_queue_instance, BinSolution(moves))
        assert not report.valid
        assert report.first_violation == 0

    def test_incomplete_processing(self, two_queue_instance):
        report = replay(two_queue_instance, BinSolution(((0, 1), (0, 2))))
        assert not report.valid
        assert report.first_violation == 2

    def test_three_queue_processing(self, three_queue_instance):
        report = replay(three_queue_instance, BinSolution(THREE_QUEUE_PROCESSING))
        assert report.valid and report.max_open == 2

    def test_open_set_trace_matches_counts(self, two_queue_instance):
        trace = open_set_trace(two_queue_instance, BinSolution(TWO_QUEUE_PROCESSING))
        report = replay(two_queue_instance, BinSolution(TWO_QUEUE_PROCESSING))
        assert tuple(len(s) for s in trace) == report.open_trace
        assert trace[0] == trace[-1] == frozenset()

    def test_open_set_trace_rejects_invalid(self, two_queue_instance):
        with pytest.raises(ValueError):
            open_set_trace(two_queue_instance, BinSolution(((1, 2),)))


class TestBruteForcePalletOrders:
    def test_two_queue_instance(self, two_queue_instance):
        places, best = brute_force_pallet_orders(two_queue_instance)
        assert places == 3
        assert replay(two_queue_instance, transform(two_queue_instance, best)).max_open == 3

    def test_three_queue_instance(self, three_queue_instance):
        assert brute_force_pallet_orders(three_queue_instance)[0] == 2

    def test_single_pallet(self):
        inst = Instance.from_pallet_lists([["a", "a", "a"]])
        places, best = brute_force_pallet_orders(inst)
        assert places == 1
        assert best.order == (0,)

    def test_guard(self, two_queue_instance):
        with pytest.raises(BudgetError, match="factorial"):
            brute_force_pallet_orders(two_queue_instance, max_pallets=3)


class TestBruteForceBinOrders:
    def test_single_sequence_has_one_order(self):
        inst = Instance.from_pallet_lists([list("abab")])
        assert brute_force_bin_orders(inst) == 2

    def test_two_disjoint_queues(self):
        inst = Instance.from_pallet_lists([["a", "a"], ["b", "b"]])
        assert brute_force_bin_orders(inst) == 1

    def test_guard(self, two_queue_instance):
        with pytest.raises(BudgetError, match="bin-order"):
            brute_force_bin_orders(two_queue_instance, max_bins=5)

    @pytest.mark.parametrize("seed", range(20))
    def test_oracle_chain(self, seed):
        inst = tiny_instance(seed, min_bins=1)
        by_bins = brute_force_bin_orders(inst)
        by_pallets, _ = brute_force_pallet_orders(inst)
        by_dp, _, _ = solve_min_places(inst)
        assert by_bins == by_pallets == by_dp


class TestTransformMinimality:
    @pytest.mark.parametrize("seed", range(10))
    def test_no_better_order_with_same_openings(self, seed):
        """Among FIFO orders inducing the same pallet order, transform is optimal."""
        rng = SplitMix64(seed * 31 + 7)
        inst = tiny_instance(seed, min_bins=1)
        if inst.n > 8:
            inst = Instance.from_pallet_lists(
                [[inst.symbols[t] for t in seq[:3]] for seq in inst.sequences])
        t_sol = opening_order(inst, BinSolution(random_fifo_order(inst, rng)))
        target = replay(inst, transform(inst, t_sol)).max_open
        competitors = [
            replay(inst, b_sol).max_open
            for b_sol in all_fifo_orders(inst)
            if opening_order(inst, b_sol).order == t_sol.order
        ]
        assert competitors and min(competitors) == target


class TestAutoRemovalIndifference:
    @pytest.mark.parametrize("seed", range(15))
    def test_swapping_adjacent_auto_moves_keeps_peak(self, seed):
        inst = tiny_instance(seed, min_bins=1)
        rng = SplitMix64(seed + 321)
        t_sol = opening_order(inst, BinSolution(random_fifo_order(inst, rng)))
        b_sol = transform(inst, t_sol)
        trace = open_set_trace(inst, b_sol)
        moves = list(b_sol.moves)
        positions = [0] * inst.k
        pallet_of = []
        for j, _ in moves:
            pallet_of.append(inst.sequences[j][positions[j]])
            positions[j] += 1
        baseline = replay(inst, b_sol).max_open
        for i in range(len(moves) - 1):
            if moves[i][0] == moves[i + 1][0]:
                continue  # swapping within one queue breaks FIFO
            if pallet_of[i] in trace[i] and pallet_of[i + 1] in trace[i]:
                swapped = moves.copy()
                swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
                report = replay(inst, BinSolution(tuple(swapped)))
                assert report.valid
                assert report.max_open == baseline
