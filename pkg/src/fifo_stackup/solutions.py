"""Pallet and bin solutions, replay verification, and brute-force baselines."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import BudgetError, TransformStuckError
from .instance import Instance

DEFAULT_MAX_PALLETS = 8
DEFAULT_MAX_BINS = 10


@dataclass(frozen=True)
class PalletSolution:
    """Order in which pallets are opened, as interned pallet ids."""

    order: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(set(self.order)) != len(self.order):
            raise ValueError("pallet order contains duplicates")

    @classmethod
    def from_symbols(cls, inst: Instance, symbols: Iterable[str]) -> "PalletSolution":
        return cls(inst.symbol_ids(symbols))

    def to_symbols(self, inst: Instance) -> tuple[str, ...]:
        return tuple(inst.symbols[t] for t in self.order)


@dataclass(frozen=True)
class BinSolution:
    """Bin removal order as (sequence index, 1-based position) moves."""

    moves: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ReplayReport:
    """Outcome of simulating a bin solution.

    ``open_trace`` holds the open-pallet count after each step, starting with
    the initial configuration; ``max_open`` is its maximum.  For an invalid
    solution ``first_violation`` is the index of the offending move (or the
    move count when bins were left unconsumed) and the trace covers only the
    prefix before it.
    """

    max_open: int
    open_trace: tuple[int, ...]
    valid: bool
    first_violation: int | None = None


def _open_step(counts, removed, t) -> int:
    """Open-count change when one more bin of pallet t is removed."""
    if counts[t] == 1:
        return 0
    if removed[t] == 1:
        return 1
    if removed[t] == counts[t]:
        return -1
    return 0


def replay(inst: Instance, b_sol: BinSolution) -> ReplayReport:
    """Simulate a bin solution and report validity and the peak open count."""
    counts = inst.bin_counts()
    positions = [0] * inst.k
    removed = [0] * inst.m
    open_count = 0
    trace = [0]
    for step, (j, pos) in enumerate(b_sol.moves):
        if not 0 <= j < inst.k:
            return ReplayReport(max(trace), tuple(trace), False, step)
        seq = inst.sequences[j]
        if positions[j] >= len(seq) or pos != positions[j] + 1:
            return ReplayReport(max(trace), tuple(trace), False, step)
        t = seq[positions[j]]
        positions[j] += 1
        removed[t] += 1
        open_count += _open_step(counts, removed, t)
        trace.append(open_count)
    if any(p != len(seq) for p, seq in zip(positions, inst.sequences)):
        return ReplayReport(max(trace), tuple(trace), False, len(b_sol.moves))
    return ReplayReport(max(trace), tuple(trace), True, None)


def open_set_trace(inst: Instance, b_sol: BinSolution) -> tuple[frozenset[int], ...]:
    """Open-pallet sets along a valid processing, initial configuration included."""
    report = replay(inst, b_sol)
    if not report.valid:
        raise ValueError(f"invalid bin solution at move {report.first_violation}")
    counts = inst.bin_counts()
    positions = [0] * inst.k
    removed = [0] * inst.m
    open_set: set[int] = set()
    trace = [frozenset()]
    for j, _ in b_sol.moves:
        t = inst.sequences[j][positions[j]]
        positions[j] += 1
        removed[t] += 1
        delta = _open_step(counts, removed, t)
        if delta > 0:
            open_set.add(t)
        elif delta < 0:
            open_set.discard(t)
        trace.append(frozenset(open_set))
    return tuple(trace)


def opening_order(inst: Instance, b_sol: BinSolution) -> PalletSolution:
    """Pallet solution induced by a bin solution: pallets by first removal."""
    positions = [0] * inst.k
    seen: set[int] = set()
    order = []
    for j, _ in b_sol.moves:
        t = inst.sequences[j][positions[j]]
        positions[j] += 1
        if t not in seen:
            seen.add(t)
            order.append(t)
    return PalletSolution(tuple(order))


def transform(inst: Instance, t_sol: PalletSolution) -> BinSolution:
    """Turn a pallet order into a bin solution.

    Repeatedly removes the front bin of the lowest-indexed sequence whose
    front is destined for an already-opened pallet; when no front qualifies,
    the next pallet of the order is opened.  Runs in O(n * k).
    """
    for t in t_sol.order:
        if not 0 <= t < inst.m:
            raise ValueError(f"pallet id {t} out of range")
    positions = [0] * inst.k
    opened = set(t_sol.order[:1])
    cursor = 1
    moves: list[tuple[int, int]] = []
    while len(moves) < inst.n:
        progressed = False
        for j, seq in enumerate(inst.sequences):
            p = positions[j]
            if p < len(seq) and seq[p] in opened:
                moves.append((j, p + 1))
                positions[j] = p + 1
                progressed = True
                break
        if progressed:
            continue
        if cursor >= len(t_sol.order):
            raise TransformStuckError(
                "stuck: no front bin matches the opened prefix and no pallets remain")
        opened.add(t_sol.order[cursor])
        cursor += 1
    return BinSolution(tuple(moves))


def brute_force_pallet_orders(
    inst: Instance, *, max_pallets: int = DEFAULT_MAX_PALLETS
) -> tuple[int, PalletSolution]:
    """Minimum places over all pallet orders, by exhaustive search.

    Enumerates pallet permutations depth-first in ascending id order and
    prunes any prefix whose partial peak already matches the incumbent; the
    witness is therefore the lexicographically first optimal order.
    """
    m = inst.m
    if m > max_pallets:
        raise BudgetError(f"factorial budget exceeded: {m} pallets > limit {max_pallets}")
    counts = inst.bin_counts()
    sequences = inst.sequences
    best = m + 2  # above any achievable peak
    best_order: tuple[int, ...] | None = None

    def consume(positions, removed, opened, open_count, peak):
        # drain front bins of opened pallets, lowest sequence first
        progressed = True
        while progressed:
            progressed = False
            for j, seq in enumerate(sequences):
                p = positions[j]
                if p < len(seq) and seq[p] in opened:
                    t = seq[p]
                    positions[j] = p + 1
                    removed[t] += 1
                    open_count += _open_step(counts, removed, t)
                    if open_count > peak:
                        peak = open_count
                    progressed = True
                    break
        return open_count, peak

    def search(positions, removed, opened, order, open_count, peak):
        nonlocal best, best_order
        if peak >= best:
            return
        if len(order) == m:
            best = peak
            best_order = tuple(order)
            return
        for t in range(m):
            if t in opened:
                continue
            next_positions = positions.copy()
            next_removed = removed.copy()
            opened.add(t)
            order.append(t)
            oc, pk = consume(next_positions, next_removed, opened, open_count, peak)
            search(next_positions, next_removed, opened, order, oc, pk)
            opened.discard(t)
            order.pop()

    search([0] * inst.k, [0] * m, set(), [], 0, 0)
    assert best_order is not None
    return best, PalletSolution(best_order)


def brute_force_bin_orders(inst: Instance, *, max_bins: int = DEFAULT_MAX_BINS) -> int:
    """Minimum places over all FIFO bin orders, by exhaustive enumeration.

    This is the ground-truth oracle: it explores every interleaving of the
    queues, tracking open counts directly, with no shared machinery beyond
    the instance itself.
    """
    if inst.n > max_bins:
        raise BudgetError(f"bin-order budget exceeded: {inst.n} bins > limit {max_bins}")
    counts = inst.bin_counts()
    sequences = inst.sequences
    lengths = [len(seq) for seq in sequences]
    positions = [0] * inst.k
    removed = [0] * inst.m
    n = inst.n
    best = inst.m + 2

    def search(done, open_count, peak):
        nonlocal best
        if peak >= best:
            return
        if done == n:
            best = peak
            return
        for j in range(inst.k):
            p = positions[j]
            if p == lengths[j]:
                continue
            t = sequences[j][p]
            positions[j] = p + 1
            removed[t] += 1
            oc = open_count + _open_step(counts, removed, t)
            search(done + 1, oc, oc if oc > peak else peak)
            positions[j] = p
            removed[t] -= 1

    search(0, 0, 0)
    return best
